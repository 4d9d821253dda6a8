use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Hard cap on the number of lines a circuit may have.
pub const MAX_LINES: usize = 63;

/// Mask selecting `line` in a packed pattern of `width` lines.
///
/// Line 0 is the most significant bit, so the packed integer reads the same
/// way as a truth-table row written left to right.
#[inline]
pub fn line_mask(width: usize, line: usize) -> u64 {
    debug_assert!(line < width);
    1u64 << (width - 1 - line)
}

#[inline]
pub fn full_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// An assignment of boolean values to the lines of a circuit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitPattern {
    width: usize,
    value: u64,
}

impl BitPattern {
    pub fn new(width: usize, value: u64) -> Result<Self> {
        check_width(width)?;
        if value & !full_mask(width) != 0 {
            return Err(Error::Dimension(format!(
                "value {value:#x} does not fit in {width} lines"
            )));
        }
        Ok(Self { width, value })
    }

    pub fn zeros(width: usize) -> Result<Self> {
        Self::new(width, 0)
    }

    /// The All-1 pattern.
    pub fn ones(width: usize) -> Result<Self> {
        check_width(width)?;
        Ok(Self {
            width,
            value: full_mask(width),
        })
    }

    /// All lines 1 except `line`, which is 0.
    pub fn one_cold(width: usize, line: usize) -> Result<Self> {
        check_width(width)?;
        if line >= width {
            return Err(Error::Dimension(format!(
                "line {line} out of range for width {width}"
            )));
        }
        Ok(Self {
            width,
            value: full_mask(width) & !line_mask(width, line),
        })
    }

    /// Builds a pattern from line values, line 0 first.
    pub fn from_lines(lines: &[bool]) -> Result<Self> {
        check_width(lines.len())?;
        let value = lines.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Ok(Self {
            width: lines.len(),
            value,
        })
    }

    pub(crate) fn from_raw(width: usize, value: u64) -> Self {
        Self { width, value }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Packed value; line 0 is the most significant bit.
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn line(&self, line: usize) -> bool {
        self.value & line_mask(self.width, line) != 0
    }

    pub fn lines(&self) -> Vec<bool> {
        (0..self.width).map(|i| self.line(i)).collect()
    }

    pub fn with_line(mut self, line: usize, bit: bool) -> Self {
        let m = line_mask(self.width, line);
        if bit {
            self.value |= m;
        } else {
            self.value &= !m;
        }
        self
    }

    pub fn count_ones(&self) -> u32 {
        self.value.count_ones()
    }
}

fn check_width(width: usize) -> Result<()> {
    if width == 0 || width > MAX_LINES {
        return Err(Error::Dimension(format!(
            "pattern width must be in 1..={MAX_LINES}, got {width}"
        )));
    }
    Ok(())
}

impl fmt::Display for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            f.write_str(if self.line(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPattern({self})")
    }
}

impl FromStr for BitPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse {
                    line: 0,
                    message: format!("invalid bit character {other:?} in {s:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_lines(&bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_is_line_zero_first() {
        let p: BitPattern = "110".parse().unwrap();
        assert!(p.line(0) && p.line(1) && !p.line(2));
        assert_eq!(p.value(), 0b110);
        assert_eq!(p.to_string(), "110");
    }

    #[test]
    fn one_cold_has_single_zero() {
        let p = BitPattern::one_cold(4, 2).unwrap();
        assert_eq!(p.to_string(), "1101");
        assert_eq!(p.count_ones(), 3);
    }

    #[test]
    fn width_bounds() {
        assert!(BitPattern::zeros(0).is_err());
        assert!(BitPattern::zeros(64).is_err());
        assert!(BitPattern::ones(63).is_ok());
        assert!(BitPattern::new(3, 8).is_err());
        assert!("10x".parse::<BitPattern>().is_err());
    }
}
