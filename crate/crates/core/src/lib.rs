//! Generator-coefficient analysis of diagonal physical gates on CSS and
//! general stabilizer codes.
//!
//! The crate is organised bottom-up:
//!
//! * [`f2codes`]: binary vectors, linear codes, cosets, weight enumerators,
//!   Reed-Muller codes.
//! * [`css`]: Pauli operators, CSS codes with signs, encoding and logical
//!   Paulis.
//! * [`gates`]: diagonal gates and their Pauli-Z expansions.
//! * [`coeffs`]: generator coefficient tables, logical operators and angles.
//! * [`conditions`]: exact-integer and trigonometric preservation criteria.
//! * [`channel`]: Kraus operators, syndrome probabilities, logical channels.
//! * [`msd`]: magic state distillation curves.
//! * [`stabilizer`]: the extension to general stabilizer codes.
//! * [`oracle`]: an independent dense state-vector pipeline used to validate
//!   the analytic results.

pub mod channel;
pub mod coeffs;
pub mod conditions;
pub mod css;
mod error;
pub mod f2codes;
pub mod gates;
pub mod msd;
pub mod oracle;
pub mod stabilizer;

pub use error::{Error, Result};

/// Numerical tolerance used for all floating point comparisons.
pub const TOL: f64 = 1e-9;
