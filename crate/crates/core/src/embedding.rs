//! Embedding irreversible functions into reversible specifications.
//!
//! Layout: primary inputs occupy lines `0..p`, ancillary inputs the
//! trailing (least significant) lines `p..n`. On the output side the `q`
//! function outputs come first and the garbage outputs trail.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::MAX_LINES;
use crate::circuit::{check_exhaustive, exhaustive_limit, Permutation};
use crate::defense::ScramblingAssignment;
use crate::error::{Error, Result};

/// A (possibly irreversible) function from `inputs` bits to `outputs` bits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruthTable {
    inputs: usize,
    outputs: usize,
    rows: Vec<u64>,
}

impl TruthTable {
    pub fn new(inputs: usize, outputs: usize, rows: Vec<u64>) -> Result<Self> {
        if inputs == 0 || outputs == 0 || inputs > MAX_LINES || outputs > MAX_LINES {
            return Err(Error::Dimension(format!(
                "truth table needs 1..={MAX_LINES} inputs and outputs, got {inputs}/{outputs}"
            )));
        }
        if rows.len() as u64 != 1u64 << inputs {
            return Err(Error::Dimension(format!(
                "{} rows for {inputs} inputs",
                rows.len()
            )));
        }
        if let Some(bad) = rows.iter().find(|&&r| r >> outputs != 0) {
            return Err(Error::Dimension(format!(
                "row value {bad} does not fit in {outputs} outputs"
            )));
        }
        Ok(Self {
            inputs,
            outputs,
            rows,
        })
    }

    pub fn from_fn(inputs: usize, outputs: usize, f: impl Fn(u64) -> u64) -> Result<Self> {
        Self::new(inputs, outputs, (0..1u64 << inputs).map(f).collect())
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, x: u64) -> u64 {
        self.rows[x as usize]
    }

    /// Largest number of inputs sharing one output value.
    pub fn max_multiplicity(&self) -> usize {
        let mut counts: HashMap<u64, usize> = HashMap::new();
        for &r in &self.rows {
            *counts.entry(r).or_default() += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }
}

fn bit_string(value: u64, width: usize) -> String {
    (0..width)
        .map(|i| {
            if value >> (width - 1 - i) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

fn parse_bits(token: &str, line: usize) -> Result<(usize, u64)> {
    if token.is_empty() || token.len() > MAX_LINES {
        return Err(Error::Parse {
            line,
            message: format!("bad bit string {token:?}"),
        });
    }
    let mut value = 0u64;
    for c in token.chars() {
        value = (value << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: format!("bad bit string {token:?}"),
                    })
                }
            };
    }
    Ok((token.len(), value))
}

/// Text format: one `input -> output` row per line, `#` starts a comment.
impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut widths: Option<(usize, usize)> = None;
        let mut entries: Vec<(u64, u64, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected `inputs -> outputs`".into(),
            })?;
            let (p, x) = parse_bits(lhs.trim(), lineno)?;
            let (q, y) = parse_bits(rhs.trim(), lineno)?;
            match widths {
                None => widths = Some((p, q)),
                Some(w) if w != (p, q) => {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("row widths {p}/{q} differ from {}/{}", w.0, w.1),
                    })
                }
                _ => {}
            }
            entries.push((x, y, lineno));
        }
        let (p, q) = widths.ok_or(Error::Parse {
            line: 0,
            message: "truth table has no rows".into(),
        })?;
        if p > 24 {
            return Err(Error::Capacity {
                lines: p,
                limit: 24,
            });
        }
        let mut rows: Vec<Option<u64>> = vec![None; 1usize << p];
        for (x, y, lineno) in entries {
            if rows[x as usize].replace(y).is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("duplicate row for input {}", bit_string(x, p)),
                });
            }
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(x, r)| {
                r.ok_or_else(|| Error::Parse {
                    line: 0,
                    message: format!("missing row for input {}", bit_string(x as u64, p)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TruthTable::new(p, q, rows)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, &y) in self.rows.iter().enumerate() {
            writeln!(
                f,
                "{} -> {}",
                bit_string(x as u64, self.inputs),
                bit_string(y, self.outputs)
            )?;
        }
        Ok(())
    }
}

/// Number of garbage outputs needed to make `tt` injective.
pub fn min_garbage(tt: &TruthTable) -> usize {
    ceil_log2(tt.max_multiplicity())
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// How rows outside the functional set get their outputs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Completion {
    /// Each remaining row, in increasing order, takes the smallest unused output.
    #[default]
    LexSmallest,
    /// Remaining outputs are shuffled with a seeded generator.
    Shuffled { seed: u64 },
}

/// A reversible specification that realizes a truth table on its functional rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmbeddingResult {
    table: TruthTable,
    ancillary: usize,
    garbage: usize,
    spec: Permutation,
    functional_rows: Vec<u64>,
    ancilla_values: Vec<u64>,
}

impl EmbeddingResult {
    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    pub fn width(&self) -> usize {
        self.table.inputs + self.ancillary
    }

    pub fn primary_inputs(&self) -> usize {
        self.table.inputs
    }

    pub fn ancillary(&self) -> usize {
        self.ancillary
    }

    pub fn garbage(&self) -> usize {
        self.garbage
    }

    pub fn spec(&self) -> &Permutation {
        &self.spec
    }

    /// Functional row for each primary input, indexed by the primary input.
    pub fn functional_rows(&self) -> &[u64] {
        &self.functional_rows
    }

    pub fn ancilla_values(&self) -> &[u64] {
        &self.ancilla_values
    }

    /// Row index for primary input `x` with ancillary value `anc`.
    pub fn row_index(&self, x: u64, anc: u64) -> u64 {
        (x << self.ancillary) | anc
    }

    /// Drops the garbage bits of an output pattern.
    pub fn project(&self, output: u64) -> u64 {
        output >> self.garbage
    }

    /// Per-line constant markers for the ancillary lines. Lines carrying a
    /// per-pattern assignment are marked 0.
    pub fn constant_markers(&self) -> Vec<Option<bool>> {
        let p = self.primary_inputs();
        let constant = self
            .ancilla_values
            .iter()
            .all(|&v| v == self.ancilla_values[0]);
        (0..self.width())
            .map(|line| {
                if line < p {
                    None
                } else if constant {
                    let bit = self.width() - 1 - line;
                    Some(self.ancilla_values[0] >> bit & 1 == 1)
                } else {
                    Some(false)
                }
            })
            .collect()
    }

    pub fn garbage_markers(&self) -> Vec<bool> {
        let q = self.width() - self.garbage;
        (0..self.width()).map(|line| line >= q).collect()
    }
}

/// Embeds `tt` with all ancillary inputs held at 0.
///
/// Fails only when the embedding is wider than the exhaustive limit.
pub fn embed(tt: &TruthTable, completion: Completion) -> Result<EmbeddingResult> {
    embed_with_ancillae(tt, 0, &vec![0; tt.rows.len()], completion)
}

/// `(ancillary, garbage)` counts for `tt` with `extra` additional ancillae.
pub fn embedding_shape(tt: &TruthTable, extra: usize) -> (usize, usize) {
    let mut g = min_garbage(tt);
    if tt.outputs + g < tt.inputs {
        g = tt.inputs - tt.outputs;
    }
    let a = tt.outputs + g - tt.inputs;
    (a + extra, g + extra)
}

/// Embeds `tt` with `extra` ancillae beyond the minimum and the given
/// ancillary value for each primary input.
pub fn embed_with_ancillae(
    tt: &TruthTable,
    extra: usize,
    ancilla_values: &[u64],
    completion: Completion,
) -> Result<EmbeddingResult> {
    let (a, g) = embedding_shape(tt, extra);
    let p = tt.inputs;
    let n = p + a;
    if n > MAX_LINES {
        return Err(Error::Dimension(format!("embedding needs {n} lines")));
    }
    check_exhaustive(n, exhaustive_limit())?;
    if ancilla_values.len() != tt.rows.len() {
        return Err(Error::Dimension(format!(
            "{} ancilla values for {} primary patterns",
            ancilla_values.len(),
            tt.rows.len()
        )));
    }
    if let Some(bad) = ancilla_values.iter().find(|&&v| a < 64 && v >> a != 0) {
        return Err(Error::Dimension(format!(
            "ancilla value {bad} does not fit in {a} ancillary lines"
        )));
    }

    let size = 1usize << n;
    let mut map: Vec<Option<u64>> = vec![None; size];
    let mut used = vec![false; size];
    let mut group_fill: HashMap<u64, u64> = HashMap::new();
    let mut functional_rows = Vec::with_capacity(tt.rows.len());
    for (x, &y) in tt.rows.iter().enumerate() {
        let row = ((x as u64) << a) | ancilla_values[x];
        let code = group_fill.entry(y).or_insert(0);
        let out = (y << g) | *code;
        *code += 1;
        map[row as usize] = Some(out);
        used[out as usize] = true;
        functional_rows.push(row);
    }

    let mut free: Vec<u64> = (0..size as u64).filter(|&o| !used[o as usize]).collect();
    if let Completion::Shuffled { seed } = completion {
        free.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut free = free.into_iter();
    let map = map
        .into_iter()
        .map(|o| o.unwrap_or_else(|| free.next().expect("as many free outputs as free rows")))
        .collect();

    Ok(EmbeddingResult {
        table: tt.clone(),
        ancillary: a,
        garbage: g,
        spec: Permutation::new(n, map)?,
        functional_rows,
        ancilla_values: ancilla_values.to_vec(),
    })
}

/// Rows visited in functional mode when the ancillae follow `assignment`.
pub fn functional_reachable(
    e: &EmbeddingResult,
    assignment: &ScramblingAssignment,
) -> Result<BTreeSet<u64>> {
    if assignment.ancillae() != e.ancillary() || assignment.primary_inputs() != e.primary_inputs() {
        return Err(Error::Dimension(format!(
            "assignment for {}+{} lines applied to a {}+{} embedding",
            assignment.primary_inputs(),
            assignment.ancillae(),
            e.primary_inputs(),
            e.ancillary()
        )));
    }
    Ok((0..1u64 << e.primary_inputs())
        .map(|x| e.row_index(x, assignment.value_for(x)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defense::{scramble, Level};
    use crate::random::random_truth_table;
    use proptest::prelude::*;

    pub(crate) fn half_adder() -> TruthTable {
        TruthTable::from_fn(2, 2, |x| {
            let (a, b) = (x >> 1, x & 1);
            ((a & b) << 1) | (a ^ b)
        })
        .unwrap()
    }

    fn decoder24() -> TruthTable {
        TruthTable::from_fn(2, 4, |x| 1 << x).unwrap()
    }

    /// Multiplicity by direct enumeration.
    fn brute_min_garbage(tt: &TruthTable) -> usize {
        let mu = tt
            .rows()
            .iter()
            .map(|r| tt.rows().iter().filter(|s| *s == r).count())
            .max()
            .unwrap();
        (0..).find(|g| 1usize << g >= mu).unwrap()
    }

    #[test]
    fn min_garbage_examples() {
        assert_eq!(min_garbage(&half_adder()), 1);
        assert_eq!(
            min_garbage(&TruthTable::from_fn(3, 3, |x| x ^ 5).unwrap()),
            0
        );
        let and3 = TruthTable::from_fn(3, 1, |x| (x == 7) as u64).unwrap();
        assert_eq!(brute_min_garbage(&and3), 3);
        assert_eq!(min_garbage(&and3), 3);
    }

    #[test]
    fn half_adder_embedding_shape() {
        let e = embed(&half_adder(), Completion::LexSmallest).unwrap();
        assert_eq!((e.ancillary(), e.garbage(), e.width()), (1, 1, 3));
        assert_eq!(e.functional_rows(), &[0b000, 0b010, 0b100, 0b110]);
        let outs: Vec<u64> = e
            .functional_rows()
            .iter()
            .map(|&r| e.spec().apply(r))
            .collect();
        assert_eq!(
            outs.iter().map(|&o| e.project(o)).collect::<Vec<_>>(),
            vec![0, 1, 1, 2]
        );
        // the two rows producing 01 carry different garbage bits
        assert_ne!(outs[1] & 1, outs[2] & 1);
    }

    #[test]
    fn identity_embeds_to_identity() {
        let id = TruthTable::from_fn(3, 3, |x| x).unwrap();
        let e = embed(&id, Completion::LexSmallest).unwrap();
        assert_eq!((e.ancillary(), e.garbage()), (0, 0));
        assert!(e.spec().is_identity());
    }

    #[test]
    fn or2_embedding_is_sound() {
        let or2 = TruthTable::from_fn(2, 1, |x| (x != 0) as u64).unwrap();
        let e = embed(&or2, Completion::LexSmallest).unwrap();
        // mu = 3 -> g = 2, a = 1 + 2 - 2 = 1
        assert_eq!((e.ancillary(), e.garbage()), (1, 2));
        for x in 0..4u64 {
            assert_eq!(e.project(e.spec().apply(e.row_index(x, 0))), or2.row(x));
        }
    }

    #[test]
    fn more_inputs_than_outputs_gets_extra_garbage() {
        // mu = 8 -> g = 3, a = 0
        let parity = TruthTable::from_fn(4, 1, |x| (x.count_ones() & 1) as u64).unwrap();
        let e = embed(&parity, Completion::LexSmallest).unwrap();
        assert_eq!((e.ancillary(), e.garbage()), (0, 3));
        let xor_proj = TruthTable::from_fn(4, 1, |x| x & 1).unwrap();
        let e = embed(&xor_proj, Completion::LexSmallest).unwrap();
        assert_eq!(e.width(), 4);
        assert_eq!(e.ancillary(), 0);
    }

    #[test]
    fn baseline_reachable_rows_for_decoder() {
        let e = embed(&decoder24(), Completion::LexSmallest).unwrap();
        assert_eq!(e.ancillary(), 2);
        let baseline = scramble(&e, Level::Baseline, 0).unwrap();
        let rows = functional_reachable(&e, &baseline).unwrap();
        assert_eq!(
            rows.into_iter().collect::<Vec<_>>(),
            vec![0b0000, 0b0100, 0b1000, 0b1100]
        );
    }

    #[test]
    fn no_ancillae_reaches_everything() {
        let id = TruthTable::from_fn(3, 3, |x| x).unwrap();
        let e = embed(&id, Completion::LexSmallest).unwrap();
        let a = scramble(&e, Level::Baseline, 0).unwrap();
        assert_eq!(functional_reachable(&e, &a).unwrap().len(), 8);
    }

    #[test]
    fn lv2_reachable_rows_are_one_per_primary_pattern() {
        let e = embed(&decoder24(), Completion::LexSmallest).unwrap();
        let a = scramble(&e, Level::Lv2, 42).unwrap();
        let rows = functional_reachable(&e, &a).unwrap();
        assert_eq!(rows.len(), 4);
        let primaries: BTreeSet<u64> = rows.iter().map(|r| r >> 2).collect();
        assert_eq!(primaries.len(), 4);
        let other = embed(&half_adder(), Completion::LexSmallest).unwrap();
        assert!(functional_reachable(&other, &a).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let text = "# half adder\n00 -> 00\n01 -> 01\n10 -> 01  # collision\n11 -> 10\n";
        let tt: TruthTable = text.parse().unwrap();
        assert_eq!(tt, half_adder());
        assert_eq!(tt.to_string().parse::<TruthTable>().unwrap(), tt);
        assert!("00 -> 0\n".parse::<TruthTable>().is_err());
        assert!("00 -> 0\n01 -> 00\n10 -> 1\n11 -> 1"
            .parse::<TruthTable>()
            .is_err());
        assert!("0 => 1\n1 -> 0".parse::<TruthTable>().is_err());
        assert!("0 -> 1\n0 -> 0".parse::<TruthTable>().is_err());
    }

    #[test]
    fn shuffled_completion_keeps_functional_rows() {
        let e = embed(&half_adder(), Completion::Shuffled { seed: 3 }).unwrap();
        for x in 0..4u64 {
            assert_eq!(
                e.project(e.spec().apply(e.row_index(x, 0))),
                half_adder().row(x)
            );
        }
    }

    proptest! {
        #[test]
        fn embedding_is_bijective_and_projects(seed in any::<u64>(), p in 1usize..=6, q in 1usize..=6) {
            use rand::SeedableRng;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let tt = random_truth_table(&mut rng, p, q);
            let e = embed(&tt, Completion::LexSmallest).unwrap();
            prop_assert_eq!(e.width(), p + e.ancillary());
            prop_assert_eq!(e.width(), q + e.garbage());
            // Permutation::new already rejected non-bijections; re-check by counting
            let distinct: BTreeSet<u64> = e.spec().map().iter().copied().collect();
            prop_assert_eq!(distinct.len(), 1usize << e.width());
            for x in 0..1u64 << p {
                let out = e.spec().apply(e.row_index(x, e.ancilla_values()[x as usize]));
                prop_assert_eq!(e.project(out), tt.row(x));
            }
        }
    }
}
