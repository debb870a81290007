//! Separability thresholds for N-qubit GHZ states mixed with white noise.
//!
//! The crate is organised around the permutation symmetry of the noisy GHZ
//! state: partitions are multisets of party sizes ([`partitions`]), states
//! are stored per Hamming weight ([`symstate`]), and every threshold is an
//! exact rational ([`exactmath::Rat`]).
//!
//! * [`thresholds`] holds the closed-form criteria and the classification API.
//! * [`witness`] evaluates the stabilizer witness family without building
//!   `2^n` matrices.
//! * [`lpsolve`] mixes same-`k` partition states with an exact simplex.
//! * [`oracle`] re-derives the same objects by brute force for cross-checks.

pub mod dense;
pub mod error;
pub mod exactmath;
pub mod lpsolve;
pub mod oracle;
pub mod partitions;
pub mod report;
pub mod symstate;
pub mod thresholds;
pub mod witness;

pub use error::{Error, Result};
pub use exactmath::Rat;
pub use lpsolve::{LpProblem, LpSolution};
pub use partitions::{PartitionType, Profile};
pub use symstate::SymState;
pub use thresholds::{SeparabilityVerdict, Status};
pub use witness::WitnessSpec;
