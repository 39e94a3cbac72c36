use std::fmt;

use num_complex::Complex64;

use crate::f2codes::BitVec;
use crate::{Error, Result};

/// The Pauli operator `i^phase E(a, b)`, where `E(a, b) = i^{a.b} X^a Z^b`.
///
/// `E(a, b)` is Hermitian and squares to the identity; the phase exponent is
/// kept exactly as an integer mod 4.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PauliOp {
    pub a: BitVec,
    pub b: BitVec,
    phase: u8,
}

impl PauliOp {
    pub fn new(a: BitVec, b: BitVec, phase: u8) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch { expected: a.len(), found: b.len() });
        }
        Ok(Self { a, b, phase: phase % 4 })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let z = BitVec::zeros(n)?;
        Self::new(z, z, 0)
    }

    /// `(-1)^{negative} E(a, 0)`.
    pub fn x_type(a: BitVec, negative: bool) -> Self {
        Self { a, b: BitVec::raw(0, a.len()), phase: if negative { 2 } else { 0 } }
    }

    /// `(-1)^{negative} E(0, b)`.
    pub fn z_type(b: BitVec, negative: bool) -> Self {
        Self { a: BitVec::raw(0, b.len()), b, phase: if negative { 2 } else { 0 } }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Exponent `e` in `i^e E(a, b)`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// Sign of a Hermitian operator: `-1` when the phase is 2.
    pub fn is_negative(&self) -> bool {
        self.phase == 2
    }

    pub fn negate(&self) -> Self {
        Self { phase: (self.phase + 2) % 4, ..*self }
    }

    /// Number of tensor factors that are not the identity.
    pub fn weight(&self) -> u32 {
        pauli_weight(&self.a, &self.b)
    }

    /// Symplectic product `a.d + b.c mod 2`; zero iff the operators commute.
    pub fn symplectic(&self, other: &PauliOp) -> bool {
        self.a.dot(&other.b) ^ self.b.dot(&other.a)
    }

    pub fn commutes_with(&self, other: &PauliOp) -> bool {
        !self.symplectic(other)
    }

    /// Operator product `self * other` with exact phase.
    pub fn mul(&self, other: &PauliOp) -> PauliOp {
        // Work in the D(a, b) = X^a Z^b basis where Z^b X^c = (-1)^{b.c} X^c Z^b.
        let d1 = self.phase as u32 + self.a.overlap(&self.b);
        let d2 = other.phase as u32 + other.a.overlap(&other.b);
        let swap = 2 * self.b.overlap(&other.a);
        let a = self.a ^ other.a;
        let b = self.b ^ other.b;
        let e = (d1 + d2 + swap + 4 * 64 - a.overlap(&b)) % 4;
        PauliOp { a, b, phase: e as u8 }
    }

    /// Action on a computational basis state: `i^phase E(a,b) |v> = c |v ^ a>`.
    #[inline]
    pub fn act_on_basis(&self, v: BitVec) -> (BitVec, Complex64) {
        let e = self.phase as u32 + self.a.overlap(&self.b) + 2 * self.b.overlap(&v);
        (v ^ self.a, I_POWERS[(e % 4) as usize])
    }

    /// Parses `[+|-|+i|-i]` followed by one of `I X Y Z` per qubit, e.g. `-XZZX`.
    ///
    /// `Y` denotes `E(1, 1) = iXZ`.
    pub fn parse_letters(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = split_phase(s);
        let mut a = Vec::new();
        let mut b = Vec::new();
        for c in body.chars() {
            let (x, z) = match c {
                'I' => (false, false),
                'X' => (true, false),
                'Z' => (false, true),
                'Y' => (true, true),
                _ => return Err(Error::Parse(format!("unexpected Pauli letter {c:?} in {s:?}"))),
            };
            a.push(x);
            b.push(z);
        }
        Self::new(BitVec::from_slice(&a)?, BitVec::from_slice(&b)?, phase)
    }

    /// Parses a symplectic row `x-part|z-part` with an optional leading `-`.
    pub fn parse_symplectic(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = split_phase(s);
        let (x, z) = body
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("symplectic row {s:?} needs an x|z separator")))?;
        Self::new(BitVec::parse(x)?, BitVec::parse(z)?, phase)
    }
}

const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

/// `i^e` as a complex number.
pub fn i_pow(e: u32) -> Complex64 {
    I_POWERS[(e % 4) as usize]
}

fn split_phase(s: &str) -> (u8, &str) {
    for (prefix, phase) in [("+i", 1), ("-i", 3), ("+", 0), ("-", 2)] {
        if let Some(rest) = s.strip_prefix(prefix) {
            // "+i" / "-i" are phases only when followed by a Pauli body.
            if phase % 2 == 1 && rest.is_empty() {
                continue;
            }
            return (phase, rest);
        }
    }
    (0, s)
}

/// Number of non-identity factors of `E(s, t)`: `w(s) + w(t) - w(s*t)`.
pub fn pauli_weight(s: &BitVec, t: &BitVec) -> u32 {
    s.weight() + t.weight() - s.overlap(t)
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.phase as usize])?;
        for i in 0..self.len() {
            let c = match (self.a.get(i), self.b.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        PauliOp::parse_letters(s).unwrap()
    }

    /// Dense 2^n matrix of an operator, built from single-qubit matrices.
    fn dense(op: &PauliOp) -> Vec<Vec<Complex64>> {
        let n = op.len();
        let dim = 1usize << n;
        let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for col in 0..dim {
            let v = BitVec::from_bits(col as u64, n).unwrap();
            let (w, c) = op.act_on_basis(v);
            m[w.bits() as usize][col] += c;
        }
        m
    }

    fn matmul(x: &[Vec<Complex64>], y: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let d = x.len();
        let mut out = vec![vec![Complex64::new(0.0, 0.0); d]; d];
        for i in 0..d {
            for k in 0..d {
                for j in 0..d {
                    out[i][j] += x[i][k] * y[k][j];
                }
            }
        }
        out
    }

    #[test]
    fn y_is_hermitian_and_squares_to_identity() {
        let y = dense(&p("Y"));
        assert!((y[0][1] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((y[1][0] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let sq = p("Y").mul(&p("Y"));
        assert_eq!(sq, PauliOp::identity(1).unwrap());
    }

    #[test]
    fn product_phase_matches_dense_multiplication() {
        let ops = ["XZ", "ZY", "-YY", "+iXI", "ZZ", "YX", "-iIZ"];
        for s in ops {
            for t in ops {
                let (a, b) = (p(s), p(t));
                let lhs = dense(&a.mul(&b));
                let rhs = matmul(&dense(&a), &dense(&b));
                for i in 0..4 {
                    for j in 0..4 {
                        assert!((lhs[i][j] - rhs[i][j]).norm() < 1e-12, "{s} * {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn symplectic_product_detects_anticommutation() {
        assert!(!p("XX").commutes_with(&p("ZI")));
        assert!(p("XX").commutes_with(&p("ZZ")));
        assert!(p("Y").symplectic(&p("X")));
    }

    #[test]
    fn parse_formats() {
        let op = PauliOp::parse_symplectic("-110|011").unwrap();
        assert_eq!(op.to_string(), "-XYZ");
        assert_eq!(op.weight(), 3);
        assert_eq!(p("-iXZ").phase(), 3);
        assert!(PauliOp::parse_symplectic("110").is_err());
    }

    #[test]
    fn pauli_weight_examples() {
        let v = |s| BitVec::parse(s).unwrap();
        assert_eq!(pauli_weight(&v("110"), &v("011")), 3);
        assert_eq!(pauli_weight(&v("000"), &v("101")), 2);
    }
}
