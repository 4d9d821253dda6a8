//! Ancillary-input scrambling and the combinatorics of disabled Trojans.
//!
//! A Trojan with `t` triggering rows, placed uniformly among the `2^(p+c)`
//! rows of an embedding, is hit in functional mode only through the `2^p`
//! rows the ancillae actually visit. The number of visited triggering rows
//! is hypergeometric; everything here is computed exactly with big
//! integers and only converted to floating point for presentation.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::embedding::{embed_with_ancillae, Completion, EmbeddingResult};
use crate::error::{Error, Result};

/// Scrambling level applied to the ancillary inputs in functional mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// All ancillae 0.
    Baseline,
    /// Half of the ancillae 1, the rest 0.
    Lv1,
    /// A random ancillary value per primary input pattern.
    Lv2,
    /// One extra ancillary line, then per-pattern random values.
    Lv3,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Baseline, Level::Lv1, Level::Lv2, Level::Lv3];

    pub fn is_randomized(self) -> bool {
        matches!(self, Level::Lv2 | Level::Lv3)
    }

    pub fn extra_lines(self) -> usize {
        match self {
            Level::Lv3 => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Baseline => "baseline",
            Level::Lv1 => "lv1",
            Level::Lv2 => "lv2",
            Level::Lv3 => "lv3",
        })
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "baseline" | "lv0" => Ok(Level::Baseline),
            "lv1" => Ok(Level::Lv1),
            "lv2" => Ok(Level::Lv2),
            "lv3" => Ok(Level::Lv3),
            other => Err(Error::UnsupportedLevel(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AncillaValues {
    Constant(u64),
    PerPattern(Vec<u64>),
}

/// The secret ancillary assignment used in functional mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScramblingAssignment {
    level: Level,
    primary_inputs: usize,
    ancillae: usize,
    values: AncillaValues,
    seed: Option<u64>,
}

impl ScramblingAssignment {
    pub fn level(&self) -> Level {
        self.level
    }

    pub fn primary_inputs(&self) -> usize {
        self.primary_inputs
    }

    /// Ancillary line count after the level is applied (`c` or `c + 1`).
    pub fn ancillae(&self) -> usize {
        self.ancillae
    }

    pub fn values(&self) -> &AncillaValues {
        &self.values
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Ancillary value used with primary input `x`.
    pub fn value_for(&self, x: u64) -> u64 {
        match &self.values {
            AncillaValues::Constant(v) => *v,
            AncillaValues::PerPattern(vs) => vs[x as usize],
        }
    }

    pub fn per_pattern_values(&self) -> Vec<u64> {
        (0..1u64 << self.primary_inputs)
            .map(|x| self.value_for(x))
            .collect()
    }

    /// Number of candidate assignments an attacker has to consider.
    pub fn guess_space(&self) -> BigUint {
        match self.level {
            Level::Baseline => BigUint::from(2u32),
            Level::Lv1 => BigUint::one() << self.ancillae,
            Level::Lv2 | Level::Lv3 => BigUint::one() << (self.primary_inputs + self.ancillae),
        }
    }
}

/// Builds the ancillary assignment for `level`.
pub fn scramble(e: &EmbeddingResult, level: Level, seed: u64) -> Result<ScramblingAssignment> {
    let p = e.primary_inputs();
    let c = e.ancillary();
    let (ancillae, values, seed) = match level {
        Level::Baseline => (c, AncillaValues::Constant(0), None),
        Level::Lv1 => {
            if c < 2 {
                return Err(Error::UnsupportedLevel(format!(
                    "lv1 needs at least 2 ancillary inputs, embedding has {c}"
                )));
            }
            // ones on the first floor(c/2) ancillae, zeros on the remaining ceil(c/2)
            let ones = c / 2;
            let zeros = c - ones;
            (
                c,
                AncillaValues::Constant(((1u64 << ones) - 1) << zeros),
                None,
            )
        }
        Level::Lv2 | Level::Lv3 => {
            let ancillae = c + level.extra_lines();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values = (0..1u64 << p)
                .map(|_| rng.gen_range(0..1u64 << ancillae))
                .collect();
            (ancillae, AncillaValues::PerPattern(values), Some(seed))
        }
    };
    Ok(ScramblingAssignment {
        level,
        primary_inputs: p,
        ancillae,
        values,
        seed,
    })
}

/// Re-embeds the truth table of `e` so that the functional rows follow
/// `assignment`; adds the extra ancillary line for Lv3.
pub fn scrambled_embedding(
    e: &EmbeddingResult,
    assignment: &ScramblingAssignment,
) -> Result<EmbeddingResult> {
    if assignment.primary_inputs() != e.primary_inputs() || assignment.ancillae() < e.ancillary() {
        return Err(Error::Dimension(format!(
            "assignment for {}+{} lines does not fit a {}+{} embedding",
            assignment.primary_inputs(),
            assignment.ancillae(),
            e.primary_inputs(),
            e.ancillary()
        )));
    }
    embed_with_ancillae(
        e.table(),
        assignment.ancillae() - e.ancillary(),
        &assignment.per_pattern_values(),
        Completion::LexSmallest,
    )
}

/// Exact binomial coefficient.
pub fn binomial(n: &BigUint, k: u64) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

/// Largest `min(t, N - t)` we are willing to expand term by term.
const MAX_BINOMIAL_TERMS: u64 = 1 << 16;

fn check_domain(p: u32, c: u32, t: u64) -> Result<()> {
    if p + c > 64 {
        return Err(Error::Domain(format!("p + c = {} exceeds 64 lines", p + c)));
    }
    let total = 1u128 << (p + c);
    if t as u128 > total {
        return Err(Error::Domain(format!(
            "t = {t} exceeds the 2^{} rows of the table",
            p + c
        )));
    }
    if t > MAX_BINOMIAL_TERMS && (total - t as u128) > MAX_BINOMIAL_TERMS as u128 {
        return Err(Error::Domain(format!(
            "t = {t} is too large to expand exactly"
        )));
    }
    Ok(())
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Probability that exactly `i` of the `t` triggering rows are visited in
/// functional mode, for every `i` in `0..=t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriggerDistribution {
    pub p: u32,
    pub c: u32,
    pub t: u64,
    pub probs: Vec<BigRational>,
}

impl TriggerDistribution {
    pub fn total(&self) -> BigRational {
        self.probs.iter().fold(BigRational::zero(), |a, b| a + b)
    }
}

pub fn trigger_count_distribution(p: u32, c: u32, t: u64) -> Result<TriggerDistribution> {
    check_domain(p, c, t)?;
    let all = BigUint::one() << (p + c);
    let reached = BigUint::one() << p;
    let unreached = &all - &reached;
    let den = binomial(&all, t);
    let probs = (0..=t)
        .map(|i| {
            let num = binomial(&reached, i) * binomial(&unreached, t - i);
            ratio(num, den.clone())
        })
        .collect();
    Ok(TriggerDistribution { p, c, t, probs })
}

/// Probability that none of the `t` triggering rows is visited.
pub fn disabled_probability(p: u32, c: u32, t: u64) -> Result<BigRational> {
    check_domain(p, c, t)?;
    let all = BigUint::one() << (p + c);
    let unreached = &all - (BigUint::one() << p);
    Ok(ratio(binomial(&unreached, t), binomial(&all, t)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceCell {
    pub p: u32,
    pub c: u32,
    pub t: u64,
    pub prob: BigRational,
}

/// Never-triggered probability over a grid of primary and ancillary counts.
pub fn never_triggered_surface(
    t: u64,
    p_range: std::ops::RangeInclusive<u32>,
    c_range: std::ops::RangeInclusive<u32>,
) -> Result<Vec<SurfaceCell>> {
    let mut cells = Vec::new();
    for p in p_range {
        for c in c_range.clone() {
            cells.push(SurfaceCell {
                p,
                c,
                t,
                prob: disabled_probability(p, c, t)?,
            });
        }
    }
    Ok(cells)
}

pub fn surface_csv(cells: &[SurfaceCell]) -> String {
    let mut out = String::from("p,c,t,prob\n");
    for cell in cells {
        out.push_str(&format!(
            "{},{},{},{}\n",
            cell.p,
            cell.c,
            cell.t,
            to_f64(&cell.prob)
        ));
    }
    out
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Percentage of an exact probability rounded half-up to one decimal, as text.
pub fn percent_1dp(prob: &BigRational) -> String {
    let tenths = prob * BigRational::from_integer(BigInt::from(1000));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = (tenths + half).floor().to_integer();
    let ten = BigInt::from(10);
    format!("{}.{}", &rounded / &ten, &rounded % &ten)
}

/// One benchmark's shape as listed in the disable-probability table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkShape {
    pub name: String,
    pub total_inputs: u32,
    pub constants: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table2Row {
    pub name: String,
    pub total_inputs: u32,
    pub constants: u32,
    /// Disable probability (%) shared by baseline, Lv1 and Lv2.
    pub baseline_lv2: String,
    pub lv3: String,
    #[serde(skip)]
    pub baseline_lv2_exact: BigRational,
    #[serde(skip)]
    pub lv3_exact: BigRational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table2Report {
    pub schema: &'static str,
    pub trigger_patterns: u64,
    pub rows: Vec<Table2Row>,
    pub average_baseline_lv2: String,
    pub average_lv3: String,
}

/// Disable probabilities for Trojans with a single triggering pattern.
pub fn table2_report(benches: &[BenchmarkShape]) -> Result<Table2Report> {
    let mut rows = Vec::with_capacity(benches.len());
    for b in benches {
        if b.constants > b.total_inputs {
            return Err(Error::Domain(format!(
                "{}: {} constants for {} inputs",
                b.name, b.constants, b.total_inputs
            )));
        }
        let p = b.total_inputs - b.constants;
        let base = disabled_probability(p, b.constants, 1)?;
        let lv3 = disabled_probability(p, b.constants + 1, 1)?;
        rows.push(Table2Row {
            name: b.name.clone(),
            total_inputs: b.total_inputs,
            constants: b.constants,
            baseline_lv2: percent_1dp(&base),
            lv3: percent_1dp(&lv3),
            baseline_lv2_exact: base,
            lv3_exact: lv3,
        });
    }
    let mean = |f: fn(&Table2Row) -> &BigRational| {
        if rows.is_empty() {
            return BigRational::zero();
        }
        let sum = rows.iter().map(f).fold(BigRational::zero(), |a, b| a + b);
        sum / BigRational::from_integer(BigInt::from(rows.len()))
    };
    let average_baseline_lv2 = percent_1dp(&mean(|r| &r.baseline_lv2_exact));
    let average_lv3 = percent_1dp(&mean(|r| &r.lv3_exact));
    Ok(Table2Report {
        schema: "revguard/table2/v1",
        trigger_patterns: 1,
        rows,
        average_baseline_lv2,
        average_lv3,
    })
}

impl Table2Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("benchmark,total_inputs,constants,baseline_lv2,lv3\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.name, r.total_inputs, r.constants, r.baseline_lv2, r.lv3
            ));
        }
        out.push_str(&format!(
            "average,,,{},{}\n",
            self.average_baseline_lv2, self.average_lv3
        ));
        out
    }

    pub fn to_text(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(0)
            .max("Benchmark".len());
        let mut out = format!(
            "{:<width$}  {:>6}  {:>9}  {:>12}  {:>6}\n",
            "Benchmark", "Inputs", "Constants", "Baseline-Lv2", "Lv3"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:<width$}  {:>6}  {:>9}  {:>12}  {:>6}\n",
                r.name, r.total_inputs, r.constants, r.baseline_lv2, r.lv3
            ));
        }
        out.push_str(&format!(
            "{:<width$}  {:>6}  {:>9}  {:>12}  {:>6}\n",
            "Average", "", "", self.average_baseline_lv2, self.average_lv3
        ));
        out
    }
}
