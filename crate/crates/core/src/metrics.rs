//! Line, gate and quantum cost of cascades, and overheads between them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Quantum cost per gate size. Sizes without an explicit entry use the
/// no-ancilla decomposition count `2^k - 3` (1 for NOT and CNOT).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumCostTable {
    #[serde(default)]
    pub overrides: BTreeMap<usize, u64>,
}

impl QuantumCostTable {
    pub fn gate_cost(&self, size: usize) -> u64 {
        if let Some(&c) = self.overrides.get(&size) {
            return c;
        }
        if size <= 2 {
            1
        } else {
            (1u64 << size.min(63)) - 3
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCost {
    pub size: usize,
    pub count: usize,
    pub quantum_cost: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub line_cost: usize,
    pub gate_cost: usize,
    pub quantum_cost: u64,
    /// Gate counts and quantum cost grouped by gate size.
    pub breakdown: Vec<SizeCost>,
}

pub fn cost(c: &Circuit) -> CostReport {
    cost_with(c, &QuantumCostTable::default())
}

pub fn cost_with(c: &Circuit, table: &QuantumCostTable) -> CostReport {
    let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
    for g in c.gates() {
        *by_size.entry(g.size()).or_default() += 1;
    }
    let breakdown: Vec<SizeCost> = by_size
        .into_iter()
        .map(|(size, count)| SizeCost {
            size,
            count,
            quantum_cost: table.gate_cost(size).saturating_mul(count as u64),
        })
        .collect();
    CostReport {
        line_cost: c.lines(),
        gate_cost: c.gate_count(),
        quantum_cost: breakdown
            .iter()
            .fold(0u64, |acc, s| acc.saturating_add(s.quantum_cost)),
        breakdown,
    }
}

/// Percentage change of each cost relative to a base design.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Overhead {
    pub line: f64,
    pub gate: f64,
    pub quantum: f64,
}

fn pct(base: f64, variant: f64) -> f64 {
    100.0 * (variant - base) / base
}

pub fn overhead(base: &CostReport, variant: &CostReport) -> Result<Overhead> {
    if base.gate_cost == 0 {
        return Err(Error::UndefinedRatio("gate"));
    }
    if base.quantum_cost == 0 {
        return Err(Error::UndefinedRatio("quantum"));
    }
    Ok(Overhead {
        line: pct(base.line_cost as f64, variant.line_cost as f64),
        gate: pct(base.gate_cost as f64, variant.gate_cost as f64),
        quantum: pct(base.quantum_cost as f64, variant.quantum_cost as f64),
    })
}

/// One row of the scrambling overhead table. `None` marks a level that
/// does not apply to the benchmark.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverheadRow {
    pub benchmark: String,
    pub lv1: Option<Overhead>,
    pub lv2: Option<Overhead>,
    pub lv3: Option<Overhead>,
}

fn cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.1}"),
        None => "N/A".into(),
    }
}

/// CSV with line, gate and quantum overheads for Lv1..Lv3 in that column order.
pub fn overhead_csv(rows: &[OverheadRow]) -> String {
    let mut out = String::from(
        "benchmark,line_lv1,line_lv2,line_lv3,gate_lv1,gate_lv2,gate_lv3,quantum_lv1,quantum_lv2,quantum_lv3\n",
    );
    for r in rows {
        let levels = [r.lv1, r.lv2, r.lv3];
        let mut fields = vec![r.benchmark.clone()];
        for pick in [
            |o: Overhead| o.line,
            |o: Overhead| o.gate,
            |o: Overhead| o.quantum,
        ] {
            fields.extend(levels.iter().map(|l| cell(l.map(pick))));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
