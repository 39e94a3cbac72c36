//! CSS codes with arbitrary stabilizer signs, Pauli operators and dense
//! state vectors.

mod builtins;
mod code;
mod parse;
mod pauli;
mod random;
mod state;

pub use builtins::{builtin, four_two_two, qrm, rm15, rm_css, steane, BUILTIN_NAMES};
pub use code::CssCode;
pub(crate) use code::{canonical_rep, default_logicals};
pub use parse::{parse_catalog, parse_code_spec};
pub use pauli::{i_pow, pauli_weight, PauliOp};
pub use random::{random_code, random_css, random_vector};
pub use state::{StateVector, MAX_DENSE_QUBITS};
