//! Seeded generators for circuits, gates and functions.
//!
//! Everything here takes a caller-owned RNG so sweeps stay reproducible.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{Circuit, Permutation, ToffoliGate};
use crate::embedding::TruthTable;

/// A gate with a uniform target and each other line a control with probability 1/2.
pub fn random_gate<R: Rng + ?Sized>(rng: &mut R, lines: usize) -> ToffoliGate {
    let target = rng.gen_range(0..lines);
    let controls: Vec<usize> = (0..lines)
        .filter(|&l| l != target && rng.gen_bool(0.5))
        .collect();
    ToffoliGate::new(controls, target).expect("generated gate is well formed")
}

pub fn random_gates<R: Rng + ?Sized>(rng: &mut R, lines: usize, count: usize) -> Vec<ToffoliGate> {
    (0..count).map(|_| random_gate(rng, lines)).collect()
}

pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, lines: usize, gates: usize) -> Circuit {
    Circuit::new(lines, random_gates(rng, lines, gates)).expect("generated circuit is well formed")
}

/// Uniform random bijection on `0..2^width`.
pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, width: usize) -> Permutation {
    let mut map: Vec<u64> = (0..1u64 << width).collect();
    map.shuffle(rng);
    Permutation::new(width, map).expect("shuffle is a bijection")
}

pub fn random_truth_table<R: Rng + ?Sized>(
    rng: &mut R,
    inputs: usize,
    outputs: usize,
) -> TruthTable {
    let rows = (0..1usize << inputs)
        .map(|_| rng.gen_range(0..1u64 << outputs))
        .collect();
    TruthTable::new(inputs, outputs, rows).expect("rows fit the output width")
}
