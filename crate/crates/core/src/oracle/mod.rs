//! An independent dense state-vector pipeline and its comparison with the
//! analytic results.
//!
//! [`pipeline`] and [`montecarlo`] only use binary codes, CSS codes, states
//! and gate phases; a test keeps them free of the analytic modules.
//! [`crosscheck`] is where the two sides meet.

pub mod crosscheck;
pub mod montecarlo;
pub mod pipeline;

pub use crosscheck::{builtin_pairs, corrupted, crosscheck, crosscheck_table, probe_states, CrosscheckReport};
pub use montecarlo::{distillation_monte_carlo, MonteCarloEstimate};
pub use pipeline::{
    logical_matrices, output_density, preserves, simulate_pipeline, stabilizer_projector_leak, syndrome_leaders,
    LogicalMatrix, SyndromeBranch,
};
