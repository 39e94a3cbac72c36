use num_complex::Complex64;

use super::bitvec::BitVec;
use super::code::BinaryCode;
use crate::{Error, Result};

/// Homogeneous weight enumerator `sum_w counts[w] x^{n-w} y^w` of a set of
/// length-`n` vectors.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WeightEnumerator {
    pub n: usize,
    pub counts: Vec<u64>,
}

impl WeightEnumerator {
    pub fn of_code(code: &BinaryCode) -> Result<Self> {
        Ok(Self { n: code.len(), counts: code.weight_distribution()? })
    }

    pub fn of_coset(code: &BinaryCode, shift: &BitVec) -> Result<Self> {
        Ok(Self { n: code.len(), counts: code.coset_weight_distribution(*shift)? })
    }

    pub fn size(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Enumerator of the dual code, `P_{C^perp}(x, y) = P_C(x + y, x - y) / |C|`.
    ///
    /// Computed with Krawtchouk polynomials in exact integer arithmetic;
    /// fails if `self` is not the enumerator of a linear code.
    pub fn macwilliams(&self) -> Result<Self> {
        let n = self.n;
        let size = self.size() as i128;
        if size == 0 || !(size as u128).is_power_of_two() {
            return Err(Error::Precondition("MacWilliams transform needs a linear code".into()));
        }
        let binom = binomials(n);
        let mut counts = Vec::with_capacity(n + 1);
        for w in 0..=n {
            let mut acc: i128 = 0;
            for (j, &a) in self.counts.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                acc += a as i128 * krawtchouk(n, w, j, &binom);
            }
            if acc % size != 0 || acc < 0 {
                return Err(Error::Precondition("weight distribution is not that of a linear code".into()));
            }
            counts.push((acc / size) as u64);
        }
        Ok(Self { n, counts })
    }

    /// Evaluates the enumerator at `(x, y)`.
    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(w, &c)| c as f64 * x.powu((self.n - w) as u32) * y.powu(w as u32))
            .sum()
    }

    /// `sum_v cos(theta/2)^{n-w(v)} (-i sin(theta/2))^{w(v)}`, the sum of the
    /// transversal `R_Z(theta)` Pauli-Z coefficients over the set.
    pub fn theta_enumerator(&self, theta: f64) -> Complex64 {
        let (s, c) = (theta / 2.0).sin_cos();
        self.evaluate(Complex64::new(c, 0.0), Complex64::new(0.0, -s))
    }
}

/// `K_w(j) = sum_i (-1)^i C(j, i) C(n - j, w - i)`.
fn krawtchouk(n: usize, w: usize, j: usize, binom: &[Vec<i128>]) -> i128 {
    let mut acc = 0i128;
    for i in 0..=w.min(j) {
        if w - i > n - j {
            continue;
        }
        let term = binom[j][i] * binom[n - j][w - i];
        acc += if i % 2 == 0 { term } else { -term };
    }
    acc
}

pub(crate) fn binomials(n: usize) -> Vec<Vec<i128>> {
    let mut b = vec![vec![0i128; n + 1]; n + 1];
    for i in 0..=n {
        b[i][0] = 1;
        for j in 1..=i {
            b[i][j] = b[i - 1][j - 1] + if j < i { b[i - 1][j] } else { 0 };
        }
    }
    b
}

/// `theta`-enumerator of the dual code evaluated through the MacWilliams
/// identity: `(1/|C|) sum_{z in C} e^{-i theta (n - 2 w(z)) / 2}`.
pub fn theta_enumerator_of_dual(code_enum: &WeightEnumerator, theta: f64) -> Complex64 {
    let n = code_enum.n as f64;
    let size = code_enum.size() as f64;
    code_enum
        .counts
        .iter()
        .enumerate()
        .map(|(w, &c)| c as f64 * Complex64::from_polar(1.0, -theta * (n - 2.0 * w as f64) / 2.0))
        .sum::<Complex64>()
        / size
}

#[cfg(test)]
mod tests {
    use super::*;

    fn steane_c2() -> BinaryCode {
        let v = |s| BitVec::parse(s).unwrap();
        BinaryCode::from_generators(7, &[v("1111000"), v("1100110"), v("1010101")]).unwrap()
    }

    #[test]
    fn macwilliams_maps_simplex_to_hamming() {
        let e = WeightEnumerator::of_code(&steane_c2()).unwrap();
        let d = e.macwilliams().unwrap();
        assert_eq!(d.counts, vec![1, 0, 0, 7, 7, 0, 0, 1]);
        assert_eq!(d.macwilliams().unwrap(), e);
    }

    #[test]
    fn theta_enumerator_identity() {
        let e = WeightEnumerator::of_code(&steane_c2()).unwrap();
        let d = e.macwilliams().unwrap();
        for &t in &[0.1, 0.7, 1.9, -2.4] {
            let lhs = d.theta_enumerator(t);
            let rhs = theta_enumerator_of_dual(&e, t);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_nonlinear_distribution() {
        let bad = WeightEnumerator { n: 3, counts: vec![1, 2, 0, 0] };
        assert!(bad.macwilliams().is_err());
    }
}
