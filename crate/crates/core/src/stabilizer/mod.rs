//! Stabilizer groups of open subsets of ℝⁿ and their Lie algebras.

pub mod algebra;
pub mod domain;
pub mod experiment;
pub mod infinitesimal;
pub mod membership;

pub use algebra::{
    algebra_dimension_table, flow_of, is_closed_under_matrix_product, is_lie_subalgebra, stabilizer_algebra,
    AffineField, StabilizerAlgebra,
};
pub use domain::{DomainSpec, Stratum};
pub use experiment::{membership_experiment, membership_experiment_all, ExperimentOutcome};
pub use infinitesimal::{solve_infinitesimal, RationalChristoffel};
pub use membership::{is_complete_on, oracle_preserves, preserves_boundary, preserves_open_set};
