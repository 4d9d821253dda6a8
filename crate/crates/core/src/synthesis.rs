//! Transformation-based synthesis of Toffoli cascades.
//!
//! Codes are processed in increasing order. For each code `i` whose current
//! image `f(i)` differs from `i`, gates are applied on the output side:
//! first the bits missing from `f(i)` are set (controlled on the ones of the
//! current image), then the surplus bits are cleared (controlled on the ones
//! of `i`). Every gate leaves all smaller codes fixed. The gates, read in
//! reverse, realize the original permutation.

use crate::bits::line_mask;
use crate::circuit::{
    apply_masks, check_exhaustive, exhaustive_limit, Circuit, Permutation, ToffoliGate,
};
use crate::defense::{scramble, scrambled_embedding, Level, ScramblingAssignment};
use crate::embedding::EmbeddingResult;
use crate::error::Result;

struct Step {
    // the code being fixed and its Hamming distance before the gate; only
    // inspected by tests
    #[cfg_attr(not(test), allow(dead_code))]
    code: u64,
    #[cfg_attr(not(test), allow(dead_code))]
    distance_before: u32,
    ctrl: u64,
    tgt: u64,
}

fn steps(spec: &Permutation) -> Vec<Step> {
    let mut f = spec.map().to_vec();
    let mut out = Vec::new();
    let width = spec.width();
    for i in 0..f.len() as u64 {
        let mut y = f[i as usize];
        if y == i {
            continue;
        }
        let mut push = |f: &mut Vec<u64>, y: &mut u64, ctrl: u64, tgt: u64| {
            out.push(Step {
                code: i,
                distance_before: (*y ^ i).count_ones(),
                ctrl,
                tgt,
            });
            for v in f.iter_mut() {
                *v = apply_masks(ctrl, tgt, *v);
            }
            *y = apply_masks(ctrl, tgt, *y);
        };
        for line in 0..width {
            let bit = line_mask(width, line);
            if i & bit != 0 && y & bit == 0 {
                let ctrl = y;
                push(&mut f, &mut y, ctrl, bit);
            }
        }
        for line in 0..width {
            let bit = line_mask(width, line);
            if y & bit != 0 && i & bit == 0 {
                push(&mut f, &mut y, i, bit);
            }
        }
        debug_assert_eq!(y, i);
    }
    out
}

fn mask_to_gate(width: usize, ctrl: u64, tgt: u64) -> ToffoliGate {
    let controls = (0..width).filter(|&l| ctrl & line_mask(width, l) != 0);
    let target = (0..width)
        .find(|&l| tgt == line_mask(width, l))
        .expect("single target bit");
    ToffoliGate::new(controls, target).expect("synthesized gate is well formed")
}

/// A Toffoli cascade whose permutation equals `spec`.
pub fn synthesize(spec: &Permutation) -> Result<Circuit> {
    check_exhaustive(spec.width(), exhaustive_limit())?;
    let width = spec.width();
    let gates = steps(spec)
        .iter()
        .rev()
        .map(|s| mask_to_gate(width, s.ctrl, s.tgt))
        .collect();
    Circuit::new(width, gates)
}

/// Synthesizes an embedding and attaches its constant/garbage metadata.
pub fn synthesize_embedding(e: &EmbeddingResult) -> Result<Circuit> {
    synthesize(e.spec())?
        .with_constants(e.constant_markers())?
        .with_garbage(e.garbage_markers())
}

/// Everything produced when a scrambling level is applied to an embedding.
#[derive(Clone, Debug)]
pub struct LevelBuild {
    pub assignment: ScramblingAssignment,
    pub embedding: EmbeddingResult,
    pub circuit: Circuit,
}

pub fn build_level(e: &EmbeddingResult, level: Level, seed: u64) -> Result<LevelBuild> {
    let assignment = scramble(e, level, seed)?;
    let embedding = scrambled_embedding(e, &assignment)?;
    let circuit = synthesize_embedding(&embedding)?;
    Ok(LevelBuild {
        assignment,
        embedding,
        circuit,
    })
}

/// The circuit realizing `e` under the scrambling of `level`.
pub fn resynthesize_for_level(e: &EmbeddingResult, level: Level, seed: u64) -> Result<Circuit> {
    build_level(e, level, seed).map(|b| b.circuit)
}
