//! Benchmark metadata and generators for a few small RevLib functions.

use crate::defense::BenchmarkShape;
use crate::embedding::TruthTable;
use crate::error::{Error, Result};

/// Name, total input count and constant count of the 29 RevLib benchmarks
/// used for the disable-probability table.
pub const TABLE2_CSV: &str = include_str!("../data/table2_benchmarks.csv");

/// Parses `name,total_inputs,constants` lines; `#` starts a comment.
pub fn parse_shapes(text: &str) -> Result<Vec<BenchmarkShape>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |m: &str| Error::Parse {
            line: idx + 1,
            message: m.to_string(),
        };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [name, total, constants] = fields.as_slice() else {
            return Err(bad("expected name,total_inputs,constants"));
        };
        if *name == "name" || *name == "benchmark" {
            continue;
        }
        out.push(BenchmarkShape {
            name: name.to_string(),
            total_inputs: total.parse().map_err(|_| bad("bad total_inputs"))?,
            constants: constants.parse().map_err(|_| bad("bad constants"))?,
        });
    }
    Ok(out)
}

pub fn table2_shapes() -> Vec<BenchmarkShape> {
    parse_shapes(TABLE2_CSV).expect("bundled benchmark list parses")
}

/// 2-to-4 decoder (`decod24`).
pub fn decod24() -> TruthTable {
    TruthTable::from_fn(2, 4, |x| 1 << x).expect("fits")
}

/// 1 iff the 4-bit input exceeds 12 (`4gt12`).
pub fn gt12() -> TruthTable {
    TruthTable::from_fn(4, 1, |x| (x > 12) as u64).expect("fits")
}

/// Population count of `inputs` bits on `outputs` bits (`rd53`, `rd73`, `rd84`).
pub fn rd(inputs: usize, outputs: usize) -> TruthTable {
    TruthTable::from_fn(inputs, outputs, |x| x.count_ones() as u64).expect("fits")
}

pub fn half_adder() -> TruthTable {
    TruthTable::from_fn(2, 2, |x| {
        let (a, b) = (x >> 1, x & 1);
        ((a & b) << 1) | (a ^ b)
    })
    .expect("fits")
}

/// Inputs `a b cin`, outputs `cout sum`.
pub fn full_adder() -> TruthTable {
    TruthTable::from_fn(3, 2, |x| x.count_ones() as u64).expect("fits")
}

/// Generated functions whose embeddings match a bundled benchmark shape.
pub fn generated() -> Vec<(&'static str, TruthTable)> {
    vec![
        ("decod24_10", decod24()),
        ("4gt12_24", gt12()),
        ("rd53_68", rd(5, 3)),
        ("rd73_69", rd(7, 3)),
        ("rd84_70", rd(8, 4)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{embed, Completion};

    #[test]
    fn bundled_list() {
        let shapes = table2_shapes();
        assert_eq!(shapes.len(), 29);
        assert_eq!(shapes[0].name, "decod24_10");
        assert_eq!(shapes[28].constants, 1);
        assert!(parse_shapes("a,1\n").is_err());
        assert!(parse_shapes("a,x,1\n").is_err());
    }

    #[test]
    fn generated_functions_match_listed_shapes() {
        let shapes = table2_shapes();
        for (name, tt) in generated() {
            let e = embed(&tt, Completion::LexSmallest).unwrap();
            let shape = shapes.iter().find(|s| s.name == name).unwrap();
            assert_eq!(e.width() as u32, shape.total_inputs, "{name}");
            assert_eq!(e.ancillary() as u32, shape.constants, "{name}");
        }
    }
}
