//! Majority from bounded majorities.
//!
//! Two related problems around the majority function MAJ_n (1 iff at least
//! half the bits are 1, ties inclusive), both parameterized by a fan-in
//! budget k:
//!
//! * **Circuits.** [`synthesize`] builds a depth-two circuit of majority-style
//!   threshold gates computing MAJ_n in which every gate has fan-in at most
//!   floor(2n/3) + 4; [`verify_exhaustive`] checks any [`DepthTwoCircuit`]
//!   against MAJ_n on all 2^n inputs.
//!
//! * **Adaptive queries.** Given an oracle answering majority queries about
//!   sets of at most k indices, [`solve_adjustable`] (thresholds may be
//!   chosen per query) and [`solve_fixed`] (plain majority only) both recover
//!   MAJ_n with provably few queries, while [`AdversaryOracle`] realizes the
//!   matching lower bound: any solver needs at least ceil(n/k) queries.
//!
//! Query accounting is exact: every oracle counts answered queries, and
//! solver reports carry the count plus the applicable bound.

pub mod adaptive;
pub mod bits;
pub mod circuit;
pub mod engine;
mod error;
pub mod json;
pub mod oracle;
pub mod rng;
pub mod synth;

pub use adaptive::{
    adjustable_query_bound, block_partition, ceil_log2, find_balanced_set, fixed_query_bound,
    solve_adjustable, solve_adjustable_traced, SolveReport,
};
pub use bits::{BitVector, IndexSet};
pub use circuit::{DepthTwoCircuit, GateWeights, ThresholdGate};
pub use engine::{solve_fixed, solve_fixed_traced, Block, EngineState};
pub use error::{Error, Result};
pub use json::{circuit_from_json, circuit_to_json};
pub use oracle::{AdversaryOracle, HonestOracle, Oracle, OracleStats, QueryRecord};
pub use rng::SplitMix64;
pub use synth::{
    boundary_edges, majority_truth_table, synthesize, trivial_circuit, verify_exhaustive,
    VerifyOutcome, DEFAULT_VERIFY_LIMIT,
};
