//! Brute-force re-derivations used to cross-check the closed forms:
//! exact phase averaging, the Pauli characteristic function, the dense
//! witness, and numerical maximization over product states.

pub mod charfn;
pub mod dense_q;
pub mod gauss;
pub mod phase;
pub mod product;

pub use charfn::{characteristic_check, expected_correlation, pauli_expectation};
pub use dense_q::{dense_witness, dense_witness_check};
pub use gauss::GaussRat;
pub use phase::{phase_average_dense, phase_average_oracle};
pub use product::{
    maximize_for_partition, maximize_over_product_states, sample_product_states,
    split_monotonicity_check, MaximizationReport, ProductStateSpec, SparseWitness,
};
