use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::gates::walsh_hadamard;
use crate::{Error, Result, TOL};

/// A diagonal operator on `k` logical qubits, `sum_alpha c[alpha] Z^alpha`.
///
/// Bit `i` of `alpha` selects `Z` on logical qubit `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogicalDiagonalOp {
    k: usize,
    coeffs: Vec<Complex64>,
}

impl LogicalDiagonalOp {
    pub fn new(k: usize, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), 1 << k, "need 2^k Pauli-Z coefficients");
        Self { k, coeffs }
    }

    /// From the diagonal `d[beta] = <beta|U|beta>`.
    pub fn from_diagonal(k: usize, diagonal: &[Complex64]) -> Self {
        assert_eq!(diagonal.len(), 1 << k, "need 2^k diagonal entries");
        let mut c = diagonal.to_vec();
        walsh_hadamard(&mut c);
        let scale = 1.0 / c.len() as f64;
        c.iter_mut().for_each(|x| *x *= scale);
        Self { k, coeffs: c }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coefficient(&self, alpha: usize) -> Complex64 {
        self.coeffs[alpha]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `d[beta] = sum_alpha c[alpha] (-1)^{alpha.beta}`.
    pub fn diagonal(&self) -> Vec<Complex64> {
        let mut d = self.coeffs.clone();
        walsh_hadamard(&mut d);
        d
    }

    pub fn is_unitary(&self) -> bool {
        self.diagonal().iter().all(|d| (d.norm() - 1.0).abs() <= TOL)
    }

    /// Same operator rescaled so the largest-modulus coefficient (first
    /// one on ties) is positive real.
    pub fn canonical(&self) -> Self {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let Some(pivot) = self.coeffs.iter().find(|c| c.norm() >= max - 1e-12) else {
            return self.clone();
        };
        if pivot.norm() == 0.0 {
            return self.clone();
        }
        let phase = pivot.conj() / pivot.norm();
        Self { k: self.k, coeffs: self.coeffs.iter().map(|c| c * phase).collect() }
    }

    /// Smallest `max_alpha |c[alpha] - e^{i phi} c'[alpha]|` over the phase
    /// aligning the two operators.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        if self.k != other.k {
            return f64::INFINITY;
        }
        let overlap: Complex64 = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| b.conj() * a).sum();
        let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b * phase).norm()).fold(0.0, f64::max)
    }

    pub fn equals_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        self.distance_up_to_phase(other) <= tol
    }

    /// Relabels logical qubits: qubit `i` of `self` becomes qubit `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.k, "permutation length must equal k");
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len()];
        for (alpha, c) in self.coeffs.iter().enumerate() {
            let image = (0..self.k).filter(|&i| alpha >> i & 1 == 1).fold(0, |acc, i| acc | 1 << perm[i]);
            coeffs[image] = *c;
        }
        Self { k: self.k, coeffs }
    }

    /// A qubit permutation carrying `self` onto `other` up to global phase,
    /// trying the identity first. Only tried for `k <= 8`.
    pub fn matching_permutation(&self, other: &Self, tol: f64) -> Option<Vec<usize>> {
        if self.k != other.k || self.k > 8 {
            return None;
        }
        let mut perm: Vec<usize> = (0..self.k).collect();
        loop {
            if self.permuted(&perm).equals_up_to_phase(other, tol) {
                return Some(perm);
            }
            if !next_permutation(&mut perm) {
                return None;
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A single-qubit logical operator `a0 I + a1 Z` read as a Z-rotation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogicalAngle {
    /// `theta` with the operator proportional to `R_Z(theta)` or `Z R_Z(theta)`.
    pub theta: f64,
    /// The operator carries an extra logical `Z`.
    pub residual_pauli: bool,
    /// `a0` vanished, so `theta` is `pi` and `-pi` equally well.
    pub ambiguous_sign: bool,
}

impl LogicalAngle {
    /// Reads `a0 I + a1 Z` as `R_Z(theta) = cos(theta/2) I - i sin(theta/2) Z`
    /// when `a0` is real and `a1` imaginary, or as `Z R_Z(theta)` when `a1` is
    /// real and `a0` imaginary.
    pub fn from_pair(a0: Complex64, a1: Complex64) -> Result<Self> {
        if a0.norm() <= TOL && a1.norm() <= TOL {
            return Err(Error::Precondition("both logical coefficients vanish".into()));
        }
        let real = |z: Complex64| z.im.abs() <= TOL;
        let imag = |z: Complex64| z.re.abs() <= TOL;
        if a0.norm() <= TOL {
            return Ok(Self { theta: PI, residual_pauli: false, ambiguous_sign: true });
        }
        if a1.norm() <= TOL {
            return Ok(Self { theta: 0.0, residual_pauli: false, ambiguous_sign: false });
        }
        if real(a0) && imag(a1) {
            let ratio = Complex64::i() * a1 / a0;
            return Ok(Self { theta: 2.0 * ratio.re.atan(), residual_pauli: false, ambiguous_sign: false });
        }
        if real(a1) && imag(a0) {
            let ratio = Complex64::i() * a0 / a1;
            return Ok(Self { theta: 2.0 * ratio.re.atan(), residual_pauli: true, ambiguous_sign: false });
        }
        Err(Error::Precondition(format!(
            "coefficients {a0} and {a1} are not one real and one purely imaginary"
        )))
    }

    /// Conventional name up to global phase, e.g. `T†` for `R_Z(-pi/4)` and
    /// `Z·S` for `Z R_Z(pi/2)`; `R_Z(theta)` otherwise.
    pub fn gate_name(&self) -> String {
        let eighths = self.theta / (PI / 4.0);
        let base = if (eighths - eighths.round()).abs() <= 1e-9 {
            match (eighths.round() as i64).rem_euclid(8) {
                0 => "I",
                1 => "T",
                2 => "S",
                3 => "S·T",
                4 => "Z",
                5 => "Z·T",
                6 => "S†",
                _ => "T†",
            }
            .to_string()
        } else {
            format!("R_Z({})", self.theta)
        };
        if !self.residual_pauli {
            return base;
        }
        match base.as_str() {
            "I" => "Z".into(),
            "Z" => "I".into(),
            _ => format!("Z·{base}"),
        }
    }
}
