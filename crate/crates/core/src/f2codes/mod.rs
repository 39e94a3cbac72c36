//! Binary linear algebra: packed vectors, linear codes, cosets with canonical
//! leaders, weight enumerators and Reed-Muller constructions.

mod bitvec;
mod code;
mod cosets;
mod enumerator;
mod rm;

pub use bitvec::{BitVec, MAX_LEN};
pub use code::{
    check_cap, enumeration_cap, invert_square, solve_dot_system, set_enumeration_cap, BinaryCode, CodewordIter,
    DEFAULT_ENUMERATION_CAP,
};
pub use cosets::{coset_leader, fixed_weight_in_lex_order, CosetFamily};
pub use enumerator::{theta_enumerator_of_dual, WeightEnumerator};
pub use rm::{binom, binomial_sum, drop_allones_row, monomial, puncture_first, reed_muller};
