//! Hardware-Trojan workbench for reversible circuits built from
//! positive-control Toffoli gates.
//!
//! The crate covers the whole loop: simulate cascades, embed irreversible
//! functions with ancillary inputs and garbage outputs, synthesize
//! cascades from permutations, insert Trojans, generate the All-1 and
//! One-Cold test suites, scramble ancillary inputs and compute exact
//! disable probabilities and cost overheads.

pub mod benchmarks;
pub mod bits;
pub mod circuit;
pub mod cli;
pub mod defense;
pub mod embedding;
pub mod error;
pub mod metrics;
pub mod patterns;
pub mod random;
pub mod realfmt;
pub mod synthesis;
pub mod trojan;

pub use bits::BitPattern;
pub use circuit::{
    apply_gate, equivalent, permutation, simulate, simulate_inverse, Circuit, Permutation,
    ToffoliGate,
};
pub use defense::{Level, ScramblingAssignment};
pub use embedding::{embed, EmbeddingResult, TruthTable};
pub use error::{Error, Result};
pub use metrics::CostReport;
pub use patterns::{DetectionReport, TestSuite};
pub use realfmt::{parse_real, write_real};
pub use synthesis::synthesize;
pub use trojan::{TrojanClass, TrojanSpec};
