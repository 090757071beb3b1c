//! Matrix realizations of su(2)⊗su(2) and the invariant operators D₀–D₃.

mod operators;
mod spin;
mod verify;

use thiserror::Error;

pub use operators::{
    build_operator_set, chi, invariant_subspace, InvariantBasisVector, IrrepPair, OperatorSet, VectorLabel,
};
pub use spin::{spin_matrices, SpinLabel, SpinMatrices};
pub use verify::{
    common_eigenspaces, series_vectors, verify_commutators, verify_eigen_series, verify_eigen_series_with,
    verify_series_completeness, CheckRecord, CommonEigenspace, CommutatorReport, CompletenessReport,
    EigenSeriesReport, Operator, SeriesVector, CLUSTER_TOL, RESIDUAL_TOL,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("invalid spin label {0:?}: expected a nonnegative integer or half-integer")]
    BadSpin(String),
    #[error("labels {ell1} and {ell2} must both be integer or both half-integer")]
    MixedParity { ell1: SpinLabel, ell2: SpinLabel },
}
