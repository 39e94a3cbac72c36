use num_complex::Complex64;

use super::pauli::PauliOp;
use crate::f2codes::BitVec;
use crate::{Error, Result};

/// Largest qubit count for dense state vectors.
pub const MAX_DENSE_QUBITS: usize = 20;

/// Dense state vector over `n` qubits, indexed by the packed word of the
/// basis vector (see [`BitVec`]).
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero_vector(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_QUBITS {
            return Err(Error::Unsupported(format!("dense state vectors support 1..={MAX_DENSE_QUBITS} qubits, got {n}")));
        }
        Ok(Self { n, amps: vec![Complex64::new(0.0, 0.0); 1 << n] })
    }

    pub fn basis(v: BitVec) -> Result<Self> {
        let mut s = Self::zero_vector(v.len())?;
        s.amps[v.bits() as usize] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        let s = Self::zero_vector(n)?;
        if amps.len() != s.amps.len() {
            return Err(Error::LengthMismatch { expected: s.amps.len(), found: amps.len() });
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn amplitude(&self, v: &BitVec) -> Complex64 {
        self.amps[v.bits() as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) -> f64 {
        let norm = self.norm_sqr().sqrt();
        if norm > 0.0 {
            self.amps.iter_mut().for_each(|a| *a /= norm);
        }
        norm
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scale(&mut self, c: Complex64) {
        self.amps.iter_mut().for_each(|a| *a *= c);
    }

    pub fn add_scaled(&mut self, c: Complex64, other: &StateVector) {
        self.amps.iter_mut().zip(&other.amps).for_each(|(a, b)| *a += c * b);
    }

    /// `P |self>` for a Pauli operator `P`.
    pub fn apply_pauli(&self, op: &PauliOp) -> StateVector {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (idx, amp) in self.amps.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let (w, c) = op.act_on_basis(BitVec::raw(idx as u64, self.n));
            out[w.bits() as usize] += c * amp;
        }
        StateVector { n: self.n, amps: out }
    }

    /// Multiplies each amplitude by `phase(v)`.
    pub fn apply_diagonal(&mut self, phase: impl Fn(BitVec) -> Complex64) {
        let n = self.n;
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            *amp *= phase(BitVec::raw(idx as u64, n));
        }
    }

    /// Largest amplitude difference to another state.
    pub fn max_diff(&self, other: &StateVector) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}
