//! All-1 and One-Cold test suites and golden-versus-infected detection.
//!
//! A suite is built from the golden netlist: for every slot the canonical
//! pattern at the slot is pulled back through the gate prefix to the
//! primary inputs.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{full_mask, line_mask, BitPattern};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::trojan::{insert, TrojanSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    All1,
    Onecold,
    Random,
    Custom,
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteKind::All1 => "all1",
            SuiteKind::Onecold => "onecold",
            SuiteKind::Random => "random",
            SuiteKind::Custom => "custom",
        })
    }
}

/// Primary input patterns to apply, with the count before deduplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestSuite {
    pub kind: SuiteKind,
    pub patterns: Vec<BitPattern>,
    /// Number of (slot, pattern) pairs the suite was generated from.
    pub bound: usize,
}

impl TestSuite {
    pub fn custom(patterns: Vec<BitPattern>) -> Self {
        let bound = patterns.len();
        Self {
            kind: SuiteKind::Custom,
            patterns,
            bound,
        }
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// One bit string per line.
    pub fn to_text(&self) -> String {
        self.patterns.iter().map(|p| format!("{p}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut patterns = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let p: BitPattern = line.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("bad pattern {line:?}"),
            })?;
            if let Some(first) = patterns.first() {
                let first: &BitPattern = first;
                if first.width() != p.width() {
                    return Err(Error::Parse {
                        line: idx + 1,
                        message: "patterns of different widths".into(),
                    });
                }
            }
            patterns.push(p);
        }
        Ok(Self::custom(patterns))
    }
}

fn pull_back(host: &Circuit, kind: SuiteKind, at_slot: &[u64]) -> TestSuite {
    let n = host.lines();
    let mut seen = HashSet::new();
    let mut patterns = Vec::new();
    let mut bound = 0;
    for slot in 0..=host.gate_count() {
        for &a in at_slot {
            bound += 1;
            let x = host.run_inverse(a, 0, slot);
            if seen.insert(x) {
                patterns.push(BitPattern::from_raw(n, x));
            }
        }
    }
    TestSuite {
        kind,
        patterns,
        bound,
    }
}

/// The All-1 pattern at every slot, pulled back to the primary inputs.
pub fn all1_suite(host: &Circuit) -> TestSuite {
    pull_back(host, SuiteKind::All1, &[full_mask(host.lines())])
}

/// Every One-Cold pattern at every slot, pulled back to the primary inputs.
pub fn onecold_suite(host: &Circuit) -> TestSuite {
    let n = host.lines();
    let cold: Vec<u64> = (0..n).map(|j| full_mask(n) & !line_mask(n, j)).collect();
    pull_back(host, SuiteKind::Onecold, &cold)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub input: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub schema: String,
    pub detected: bool,
    pub witness: Option<Witness>,
    pub patterns_applied: usize,
    pub suite: SuiteKind,
}

fn run_detection(
    host: &Circuit,
    t: &TrojanSpec,
    kind: SuiteKind,
    patterns: impl Iterator<Item = u64>,
) -> Result<DetectionReport> {
    let infected = insert(host, t)?;
    let n = host.lines();
    let mut applied = 0;
    for x in patterns {
        applied += 1;
        let expected = host.eval(x);
        let observed = infected.eval(x);
        if expected != observed {
            return Ok(DetectionReport {
                schema: "revguard/detection/v1".into(),
                detected: true,
                witness: Some(Witness {
                    input: BitPattern::from_raw(n, x).to_string(),
                    expected: BitPattern::from_raw(n, expected).to_string(),
                    observed: BitPattern::from_raw(n, observed).to_string(),
                }),
                patterns_applied: applied,
                suite: kind,
            });
        }
    }
    Ok(DetectionReport {
        schema: "revguard/detection/v1".into(),
        detected: false,
        witness: None,
        patterns_applied: applied,
        suite: kind,
    })
}

/// Applies `suite` to the golden and the infected circuit and reports the
/// first pattern whose outputs differ.
pub fn detect(host: &Circuit, t: &TrojanSpec, suite: &TestSuite) -> Result<DetectionReport> {
    if let Some(p) = suite.patterns.iter().find(|p| p.width() != host.lines()) {
        return Err(Error::Dimension(format!(
            "{}-line pattern for a {}-line host",
            p.width(),
            host.lines()
        )));
    }
    run_detection(
        host,
        t,
        suite.kind,
        suite.patterns.iter().map(|p| p.value()),
    )
}

/// Applies `k` uniformly random patterns drawn from a seeded generator.
pub fn random_detect(
    host: &Circuit,
    t: &TrojanSpec,
    k: usize,
    seed: u64,
) -> Result<DetectionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = full_mask(host.lines());
    let draws = (0..k).map(move |_| rng.gen::<u64>() & mask);
    run_detection(host, t, SuiteKind::Random, draws)
}

/// True iff some One-Cold pattern at the Trojan input changes under the
/// payload. Because the host suffix is a bijection this is exactly the
/// condition for the One-Cold suite to expose the Trojan at any slot.
pub fn onecold_triggers(t: &TrojanSpec) -> bool {
    let n = t.width();
    (0..n).any(|j| {
        let a = full_mask(n) & !line_mask(n, j);
        t.eval(a) != a
    })
}

/// As [`onecold_triggers`] for the All-1 pattern.
pub fn all1_triggers(t: &TrojanSpec) -> bool {
    let a = full_mask(t.width());
    t.eval(a) != a
}
