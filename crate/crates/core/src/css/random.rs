use rand::Rng;

use super::code::CssCode;
use crate::f2codes::{BinaryCode, BitVec};
use crate::Result;

/// A uniformly random vector of length `n`.
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BitVec {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    BitVec::from_bits(rng.gen::<u64>() & mask, n).expect("length checked by caller")
}

/// A random code of length `n` spanned by `gens` random vectors.
pub fn random_code<R: Rng + ?Sized>(rng: &mut R, n: usize, gens: usize) -> Result<BinaryCode> {
    let rows: Vec<BitVec> = (0..gens).map(|_| random_vector(rng, n)).collect();
    BinaryCode::from_generators(n, &rows)
}

/// A random CSS code of length `n` with `k >= 1` and random signs.
///
/// `C1` has a random dimension in `1..=n`; `C2` is spanned by random
/// combinations of `C1` and is forced to be a proper subcode.
pub fn random_css<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<CssCode> {
    loop {
        let target = rng.gen_range(1..=n);
        let c1 = random_code(rng, n, target)?;
        if c1.dim() == 0 {
            continue;
        }
        let gens = rng.gen_range(0..c1.dim());
        let rows: Vec<BitVec> = (0..gens)
            .map(|_| {
                c1.basis().iter().filter(|_| rng.gen_bool(0.5)).fold(BitVec::zeros(n).expect("valid length"), |a, b| a ^ *b)
            })
            .collect();
        let c2 = BinaryCode::from_generators(n, &rows)?;
        if c2.dim() >= c1.dim() {
            continue;
        }
        let (r, y) = (random_vector(rng, n), random_vector(rng, n));
        return CssCode::from_codes(c2, c1.dual(), r, y);
    }
}
