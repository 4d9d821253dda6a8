//! Positive-control Toffoli cascades and their simulation.
//!
//! Gate positions are the `m + 1` slots between gates: slot `i` sits just
//! before gate `i`, slot `m` after the last gate. Ranges passed to
//! [`simulate`] and [`simulate_inverse`] use the same numbering.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bits::{full_mask, line_mask, BitPattern, MAX_LINES};
use crate::error::{Error, Result};

/// Default cap on lines for operations that enumerate all `2^n` patterns.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;

/// Environment variable overriding [`DEFAULT_EXHAUSTIVE_LIMIT`].
pub const EXHAUSTIVE_LIMIT_ENV: &str = "REVGUARD_EXHAUSTIVE_LIMIT";

static LIMIT_OVERRIDE: AtomicUsize = AtomicUsize::new(0);

/// The exhaustive limit in effect for this process: an explicit override,
/// else the environment variable, else the default.
pub fn exhaustive_limit() -> usize {
    static FROM_ENV: OnceLock<usize> = OnceLock::new();
    match LIMIT_OVERRIDE.load(Ordering::Relaxed) {
        0 => *FROM_ENV.get_or_init(|| {
            std::env::var(EXHAUSTIVE_LIMIT_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .map(|v| v.min(MAX_LINES))
                .unwrap_or(DEFAULT_EXHAUSTIVE_LIMIT)
        }),
        n => n,
    }
}

/// Overrides the exhaustive limit for the whole process.
pub fn set_exhaustive_limit(limit: usize) {
    LIMIT_OVERRIDE.store(limit.clamp(1, MAX_LINES), Ordering::Relaxed);
}

pub(crate) fn check_exhaustive(lines: usize, limit: usize) -> Result<()> {
    if lines > limit {
        Err(Error::Capacity { lines, limit })
    } else {
        Ok(())
    }
}

/// A Toffoli gate with positive controls. An empty control set is a NOT.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGate")]
pub struct ToffoliGate {
    controls: Vec<usize>,
    target: usize,
}

#[derive(Deserialize)]
struct RawGate {
    #[serde(default)]
    controls: Vec<usize>,
    target: usize,
}

impl TryFrom<RawGate> for ToffoliGate {
    type Error = Error;

    fn try_from(raw: RawGate) -> Result<Self> {
        ToffoliGate::new(raw.controls, raw.target)
    }
}

impl ToffoliGate {
    pub fn new(controls: impl IntoIterator<Item = usize>, target: usize) -> Result<Self> {
        let mut controls: Vec<usize> = controls.into_iter().collect();
        controls.sort_unstable();
        controls.dedup();
        if controls.contains(&target) {
            return Err(Error::MalformedGate(format!(
                "target line {target} is also a control"
            )));
        }
        if target >= MAX_LINES || controls.iter().any(|&c| c >= MAX_LINES) {
            return Err(Error::MalformedGate(format!(
                "line index above the {MAX_LINES}-line cap"
            )));
        }
        Ok(Self { controls, target })
    }

    pub fn not(target: usize) -> Self {
        Self {
            controls: Vec::new(),
            target,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        Self::new([control], target)
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Number of lines the gate touches (`k` in TOFk).
    pub fn size(&self) -> usize {
        self.controls.len() + 1
    }

    pub fn max_line(&self) -> usize {
        self.controls.iter().copied().fold(self.target, usize::max)
    }

    pub fn check_width(&self, width: usize) -> Result<()> {
        if self.max_line() >= width {
            return Err(Error::MalformedGate(format!(
                "gate {self:?} references line {} but only {width} lines exist",
                self.max_line()
            )));
        }
        Ok(())
    }

    /// `(control mask, target mask)` in the packed layout of a `width`-line pattern.
    pub fn masks(&self, width: usize) -> (u64, u64) {
        let ctrl = self
            .controls
            .iter()
            .fold(0u64, |m, &c| m | line_mask(width, c));
        (ctrl, line_mask(width, self.target))
    }
}

impl fmt::Debug for ToffoliGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TOF{}({:?} -> {})",
            self.size(),
            self.controls,
            self.target
        )
    }
}

#[inline]
pub(crate) fn apply_masks(ctrl: u64, tgt: u64, value: u64) -> u64 {
    if value & ctrl == ctrl {
        value ^ tgt
    } else {
        value
    }
}

/// Applies a single gate to a pattern.
pub fn apply_gate(gate: &ToffoliGate, p: BitPattern) -> Result<BitPattern> {
    gate.check_width(p.width())?;
    let (ctrl, tgt) = gate.masks(p.width());
    Ok(BitPattern::from_raw(
        p.width(),
        apply_masks(ctrl, tgt, p.value()),
    ))
}

/// An ordered cascade of Toffoli gates over a fixed number of lines, with
/// the RevLib-style I/O metadata.
#[derive(Clone, PartialEq, Eq)]
pub struct Circuit {
    lines: usize,
    gates: Vec<ToffoliGate>,
    line_names: Vec<String>,
    constants: Vec<Option<bool>>,
    garbage: Vec<bool>,
    masks: Vec<(u64, u64)>,
}

/// Default variable name for a line: `a`..`z`, then `x26`, `x27`, ...
pub fn default_line_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

impl Circuit {
    pub fn new(lines: usize, gates: Vec<ToffoliGate>) -> Result<Self> {
        if lines == 0 || lines > MAX_LINES {
            return Err(Error::Dimension(format!(
                "circuit must have 1..={MAX_LINES} lines, got {lines}"
            )));
        }
        for g in &gates {
            g.check_width(lines)?;
        }
        let masks = gates.iter().map(|g| g.masks(lines)).collect();
        Ok(Self {
            lines,
            gates,
            line_names: (0..lines).map(default_line_name).collect(),
            constants: vec![None; lines],
            garbage: vec![false; lines],
            masks,
        })
    }

    pub fn empty(lines: usize) -> Result<Self> {
        Self::new(lines, Vec::new())
    }

    pub fn with_line_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.lines {
            return Err(Error::Dimension(format!(
                "{} names for {} lines",
                names.len(),
                self.lines
            )));
        }
        self.line_names = names;
        Ok(self)
    }

    pub fn with_constants(mut self, constants: Vec<Option<bool>>) -> Result<Self> {
        if constants.len() != self.lines {
            return Err(Error::Dimension(format!(
                "{} constant entries for {} lines",
                constants.len(),
                self.lines
            )));
        }
        self.constants = constants;
        Ok(self)
    }

    pub fn with_garbage(mut self, garbage: Vec<bool>) -> Result<Self> {
        if garbage.len() != self.lines {
            return Err(Error::Dimension(format!(
                "{} garbage entries for {} lines",
                garbage.len(),
                self.lines
            )));
        }
        self.garbage = garbage;
        Ok(self)
    }

    /// Same lines and metadata, different gate list.
    pub fn with_gates(&self, gates: Vec<ToffoliGate>) -> Result<Self> {
        let fresh = Self::new(self.lines, gates)?;
        Ok(Self {
            line_names: self.line_names.clone(),
            constants: self.constants.clone(),
            garbage: self.garbage.clone(),
            ..fresh
        })
    }

    /// Appends the gates of `other` (same width) after this circuit's gates.
    pub fn concat(&self, other: &Circuit) -> Result<Self> {
        if other.lines != self.lines {
            return Err(Error::Dimension(format!(
                "cannot concatenate {}-line and {}-line circuits",
                self.lines, other.lines
            )));
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        self.with_gates(gates)
    }

    pub fn lines(&self) -> usize {
        self.lines
    }

    pub fn gates(&self) -> &[ToffoliGate] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn line_names(&self) -> &[String] {
        &self.line_names
    }

    pub fn constants(&self) -> &[Option<bool>] {
        &self.constants
    }

    pub fn garbage(&self) -> &[bool] {
        &self.garbage
    }

    /// Number of ancillary (constant) inputs.
    pub fn ancillary_count(&self) -> usize {
        self.constants.iter().filter(|c| c.is_some()).count()
    }

    pub fn garbage_count(&self) -> usize {
        self.garbage.iter().filter(|&&g| g).count()
    }

    fn check_range(&self, p: &BitPattern, from: usize, to: usize) -> Result<()> {
        if p.width() != self.lines {
            return Err(Error::Dimension(format!(
                "pattern has {} lines, circuit has {}",
                p.width(),
                self.lines
            )));
        }
        if from > to || to > self.gates.len() {
            return Err(Error::Dimension(format!(
                "slot range {from}..{to} invalid for {} gates",
                self.gates.len()
            )));
        }
        Ok(())
    }

    /// Forward evaluation of gates `from..to` on a packed value. No checks.
    #[inline]
    pub(crate) fn run(&self, value: u64, from: usize, to: usize) -> u64 {
        self.masks[from..to]
            .iter()
            .fold(value, |v, &(c, t)| apply_masks(c, t, v))
    }

    /// Reverse evaluation of gates `from..to` on a packed value. No checks.
    #[inline]
    pub(crate) fn run_inverse(&self, value: u64, from: usize, to: usize) -> u64 {
        self.masks[from..to]
            .iter()
            .rev()
            .fold(value, |v, &(c, t)| apply_masks(c, t, v))
    }

    /// Full forward function on a packed value.
    #[inline]
    pub(crate) fn eval(&self, value: u64) -> u64 {
        self.run(value, 0, self.gates.len())
    }
}

impl fmt::Debug for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Circuit")
            .field("lines", &self.lines)
            .field("gates", &self.gates)
            .finish()
    }
}

/// Applies gates `from..to` of `c` to `p`.
pub fn simulate(c: &Circuit, p: BitPattern, from: usize, to: usize) -> Result<BitPattern> {
    c.check_range(&p, from, to)?;
    Ok(BitPattern::from_raw(p.width(), c.run(p.value(), from, to)))
}

/// Inverts gates `from..to` of `c`: the pattern that `simulate` over the
/// same range maps onto `p`.
pub fn simulate_inverse(c: &Circuit, p: BitPattern, from: usize, to: usize) -> Result<BitPattern> {
    c.check_range(&p, from, to)?;
    Ok(BitPattern::from_raw(
        p.width(),
        c.run_inverse(p.value(), from, to),
    ))
}

/// A bijection on `0..2^width`, indexed by packed input pattern.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    width: usize,
    map: Vec<u64>,
}

impl Permutation {
    pub fn new(width: usize, map: Vec<u64>) -> Result<Self> {
        if width == 0 || width > MAX_LINES {
            return Err(Error::Dimension(format!("invalid width {width}")));
        }
        let size = 1usize.checked_shl(width as u32).ok_or(Error::Capacity {
            lines: width,
            limit: usize::BITS as usize - 1,
        })?;
        if map.len() != size {
            return Err(Error::Dimension(format!(
                "map has {} entries, expected {size}",
                map.len()
            )));
        }
        let mut seen = vec![false; size];
        for (x, &y) in map.iter().enumerate() {
            let slot = seen
                .get_mut(y as usize)
                .ok_or_else(|| Error::Domain(format!("entry {x} maps outside the range: {y}")))?;
            if *slot {
                return Err(Error::Domain(format!(
                    "not a bijection: output {y} is produced twice"
                )));
            }
            *slot = true;
        }
        Ok(Self { width, map })
    }

    pub fn identity(width: usize) -> Result<Self> {
        check_exhaustive(width, exhaustive_limit())?;
        Self::new(width, (0..1u64 << width).collect())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn map(&self) -> &[u64] {
        &self.map
    }

    pub fn apply(&self, x: u64) -> u64 {
        self.map[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x as u64 == y)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u64; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as u64;
        }
        Self {
            width: self.width,
            map: inv,
        }
    }

    /// Inputs whose image differs from themselves.
    pub fn moved_points(&self) -> impl Iterator<Item = u64> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter(|(x, &y)| *x as u64 != y)
            .map(|(x, _)| x as u64)
    }
}

/// The full function of a circuit as a permutation of `0..2^n`.
pub fn permutation(c: &Circuit) -> Result<Permutation> {
    permutation_with_limit(c, exhaustive_limit())
}

pub fn permutation_with_limit(c: &Circuit, limit: usize) -> Result<Permutation> {
    check_exhaustive(c.lines(), limit)?;
    let map = (0..1u64 << c.lines()).map(|x| c.eval(x)).collect();
    Ok(Permutation {
        width: c.lines(),
        map,
    })
}

/// True iff both circuits compute the same permutation.
pub fn equivalent(a: &Circuit, b: &Circuit) -> Result<bool> {
    if a.lines() != b.lines() {
        return Err(Error::Dimension(format!(
            "comparing {}-line and {}-line circuits",
            a.lines(),
            b.lines()
        )));
    }
    check_exhaustive(a.lines(), exhaustive_limit())?;
    Ok((0..1u64 << a.lines()).all(|x| a.eval(x) == b.eval(x)))
}

/// Mask of all lines of an `n`-line pattern.
pub fn all_ones(lines: usize) -> u64 {
    full_mask(lines)
}
