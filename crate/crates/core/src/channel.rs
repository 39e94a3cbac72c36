//! The average logical channel of a diagonal gate: Kraus operators under a
//! correction policy, syndrome probabilities and logical density matrices.

use std::fmt::Write;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::coeffs::{round12, GenCoeffTable, LogicalDiagonalOp};
use crate::css::{CssCode, StateVector};
use crate::f2codes::BitVec;
use crate::{Error, Result, TOL};

/// Eigenvalues above this are accepted as nonnegative.
pub const PSD_TOLERANCE: f64 = -1e-10;

/// Logical Z-correction applied after each syndrome, on top of returning to
/// the code space with the syndrome leader.
#[derive(Clone, Debug, PartialEq)]
pub enum CorrectionPolicy {
    /// No logical correction.
    None,
    /// For one logical qubit: apply the logical Z after every nontrivial
    /// syndrome.
    ZCorrect,
    /// Explicit `(syndrome representative, Z-logical vector)` pairs. Syndromes
    /// not listed get no correction.
    Explicit(Vec<(BitVec, BitVec)>),
}

impl FromStr for CorrectionPolicy {
    type Err = Error;

    /// `none`, `z-correct`, or `mu:gamma` pairs separated by commas.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "none" => Ok(Self::None),
            "z-correct" => Ok(Self::ZCorrect),
            text => text
                .split(',')
                .map(|pair| {
                    let (mu, gamma) = pair
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("expected mu:gamma, found '{pair}'")))?;
                    Ok((BitVec::parse(mu.trim())?, BitVec::parse(gamma.trim())?))
                })
                .collect::<Result<Vec<_>>>()
                .map(Self::Explicit),
        }
    }
}

impl CorrectionPolicy {
    /// Correction vector for every row of the table, by row index.
    pub fn resolve(&self, table: &GenCoeffTable) -> Result<Vec<BitVec>> {
        let frame = table.frame();
        let zero = BitVec::zeros(frame.n())?;
        let mut out = vec![zero; table.rows()];
        match self {
            Self::None => {}
            Self::ZCorrect => {
                if table.k() != 1 {
                    return Err(Error::Precondition(format!("z-correct needs one logical qubit, code has {}", table.k())));
                }
                let z = frame.z_string(1);
                out.iter_mut().skip(1).for_each(|g| *g = z);
            }
            Self::Explicit(pairs) => {
                for (mu, gamma) in pairs {
                    let row = table
                        .syndromes()
                        .index_of(mu)
                        .ok_or_else(|| Error::LengthMismatch { expected: frame.n(), found: mu.len() })?;
                    if gamma.len() != frame.n() || !frame.logical_space().contains(gamma) {
                        return Err(Error::Precondition(format!("{gamma} is not a Z-logical vector")));
                    }
                    if row == 0 && frame.label(gamma) != 0 {
                        return Err(Error::Precondition("the trivial syndrome must not be corrected".into()));
                    }
                    out[row] = *gamma;
                }
            }
        }
        Ok(out)
    }
}

/// Kraus operator of one syndrome.
#[derive(Clone, Debug, PartialEq)]
pub struct SyndromeKraus {
    pub mu: BitVec,
    pub correction: BitVec,
    pub op: LogicalDiagonalOp,
}

/// The logical channel `rho -> sum_mu B_mu rho B_mu^dagger`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogicalChannel {
    k: usize,
    kraus: Vec<SyndromeKraus>,
}

/// Kraus operators of the table under `policy`.
///
/// After syndrome `mu` the Z-string `mu_leader + gamma_mu` is applied, so
/// `B_mu = (-1)^{(mu + gamma_mu).y} sum_gamma A[mu][gamma] Zbar(gamma + gamma_mu)`.
pub fn kraus_operators(table: &GenCoeffTable, policy: &CorrectionPolicy) -> Result<LogicalChannel> {
    let frame = table.frame();
    let corrections = policy.resolve(table)?;
    let kraus = corrections
        .into_iter()
        .enumerate()
        .map(|(row, correction)| {
            let mu = table.syndromes().leader(row);
            let base = table.row_operator(&mu)?;
            let shift = frame.label(&correction);
            let sign = if (mu ^ correction).dot(&frame.y()) { -1.0 } else { 1.0 };
            let coeffs = (0..base.coeffs().len()).map(|alpha| sign * base.coefficient(alpha ^ shift)).collect();
            Ok(SyndromeKraus { mu, correction, op: LogicalDiagonalOp::new(table.k(), coeffs) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LogicalChannel { k: table.k(), kraus })
}

impl LogicalChannel {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kraus(&self) -> &[SyndromeKraus] {
        &self.kraus
    }

    /// `max_beta |sum_mu |B_mu(beta)|^2 - 1|`; the operators are diagonal.
    pub fn completeness_deviation(&self) -> f64 {
        let mut total = vec![0.0; 1 << self.k];
        for b in &self.kraus {
            for (t, d) in total.iter_mut().zip(b.op.diagonal()) {
                *t += d.norm_sqr();
            }
        }
        total.iter().map(|t| (t - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Probability of each syndrome, in row order.
    pub fn probabilities(&self, state: &LogicalState) -> Result<Vec<f64>> {
        self.check_k(state.k())?;
        Ok(self.kraus.iter().map(|b| kraus_probability(&b.op, state)).collect())
    }

    /// `sum_mu B_mu rho B_mu^dagger`.
    pub fn apply(&self, rho: &LogicalDensity) -> Result<LogicalDensity> {
        self.check_k(rho.k())?;
        let dim = 1 << self.k;
        let mut out = DMatrix::<Complex64>::zeros(dim, dim);
        for b in &self.kraus {
            let d = b.op.diagonal();
            for i in 0..dim {
                for j in 0..dim {
                    out[(i, j)] += d[i] * rho.matrix[(i, j)] * d[j].conj();
                }
            }
        }
        Ok(LogicalDensity { k: self.k, matrix: out })
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == self.k {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: self.k, found: k })
        }
    }
}

fn kraus_probability(op: &LogicalDiagonalOp, state: &LogicalState) -> f64 {
    op.diagonal().iter().zip(&state.amps).map(|(d, a)| d.norm_sqr() * a.norm_sqr()).sum()
}

/// A normalized logical state on `k` qubits; bit `i` of the amplitude index
/// is logical qubit `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogicalState {
    k: usize,
    amps: Vec<Complex64>,
}

impl LogicalState {
    /// Normalizes `amps`, which must have length `2^k`.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let k = amps.len().trailing_zeros() as usize;
        if amps.is_empty() || amps.len() != 1 << k {
            return Err(Error::Precondition(format!("{} amplitudes is not a power of two", amps.len())));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm <= TOL {
            return Err(Error::Precondition("zero logical state".into()));
        }
        Ok(Self { k, amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    /// The basis state `|alpha>`.
    pub fn basis(k: usize, alpha: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << k];
        amps[alpha] = Complex64::new(1.0, 0.0);
        Self { k, amps }
    }

    /// Logical amplitudes of a physical state, which must lie in the code
    /// space.
    pub fn from_codespace(code: &CssCode, psi: &StateVector) -> Result<Self> {
        let projected = code.codespace_projection(psi)?;
        let leak = projected.max_diff(psi);
        if leak > TOL {
            return Err(Error::Precondition(format!("state is outside the code space (distance {leak:.3e})")));
        }
        let amps = (0..1usize << code.k())
            .map(|alpha| Ok(code.encode(&BitVec::raw(alpha as u64, code.k()))?.inner(psi)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_amplitudes(amps)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Expectation of `Zbar^alpha`.
    pub fn z_expectation(&self, alpha: usize) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(beta, a)| if (alpha & beta).count_ones() % 2 == 1 { -a.norm_sqr() } else { a.norm_sqr() })
            .sum()
    }
}

impl FromStr for LogicalState {
    type Err = Error;

    /// Product states over `0`, `1`, `+`, `-` and `A = (|0> + e^{i pi/4}|1>)/sqrt 2`;
    /// character `i` is logical qubit `i`.
    fn from_str(s: &str) -> Result<Self> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let factors = s
            .chars()
            .map(|c| match c {
                '0' => Ok([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]),
                '1' => Ok([Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]),
                '+' => Ok([Complex64::new(h, 0.0), Complex64::new(h, 0.0)]),
                '-' | '\u{2212}' => Ok([Complex64::new(h, 0.0), Complex64::new(-h, 0.0)]),
                'A' => Ok([Complex64::new(h, 0.0), Complex64::from_polar(h, std::f64::consts::FRAC_PI_4)]),
                other => Err(Error::Parse(format!("unknown logical state symbol '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if factors.is_empty() {
            return Err(Error::Parse("empty logical state".into()));
        }
        let amps = (0..1usize << factors.len())
            .map(|beta| factors.iter().enumerate().map(|(i, f)| f[beta >> i & 1]).product())
            .collect();
        Ok(Self { k: factors.len(), amps })
    }
}

/// Probability of the syndrome containing `mu` for a logical state.
pub fn syndrome_probability(table: &GenCoeffTable, state: &LogicalState, mu: &BitVec) -> Result<f64> {
    if state.k() != table.k() {
        return Err(Error::LengthMismatch { expected: table.k(), found: state.k() });
    }
    Ok(kraus_probability(&table.row_operator(mu)?, state))
}

/// `(sum_gamma |A[mu][gamma]|^2, cross term)` whose sum is the syndrome
/// probability; only the cross term depends on the state.
pub fn syndrome_probability_parts(table: &GenCoeffTable, state: &LogicalState, mu: &BitVec) -> Result<(f64, f64)> {
    let op = table.row_operator(mu)?;
    let diagonal: f64 = op.coeffs().iter().map(Complex64::norm_sqr).sum();
    Ok((diagonal, syndrome_probability(table, state, mu)? - diagonal))
}

/// Logical basis states whose trivial-syndrome probability is one for every
/// table in the family.
pub fn dfs_scan(family: &[GenCoeffTable]) -> Result<Vec<usize>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let k = first.k();
    let zero = BitVec::zeros(first.frame().n())?;
    let mut out = Vec::new();
    'states: for alpha in 0..1usize << k {
        let state = LogicalState::basis(k, alpha);
        for table in family {
            if (syndrome_probability(table, &state, &zero)? - 1.0).abs() > TOL {
                continue 'states;
            }
        }
        out.push(alpha);
    }
    Ok(out)
}

/// Logical basis label with character `i` for qubit `i`.
pub fn basis_label(alpha: usize, k: usize) -> String {
    (0..k).map(|i| if alpha >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// One line of the probability CSV.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbabilityRecord {
    pub theta: f64,
    pub mu: String,
    pub state: String,
    pub p: f64,
}

/// Syndrome probabilities of `Rz(theta)^{otimes n}` for every angle, state
/// and syndrome.
pub fn rz_probability_grid(code: &CssCode, thetas: &[f64], states: &[(String, LogicalState)]) -> Result<Vec<ProbabilityRecord>> {
    let mut out = Vec::new();
    for &theta in thetas {
        let table = crate::coeffs::gencoeffs_rz(code, theta)?;
        let channel = kraus_operators(&table, &CorrectionPolicy::None)?;
        for (name, state) in states {
            for (b, p) in channel.kraus().iter().zip(channel.probabilities(state)?) {
                out.push(ProbabilityRecord { theta, mu: b.mu.to_string(), state: name.clone(), p: round12(p) });
            }
        }
    }
    Ok(out)
}

/// CSV with header `theta,mu,state,p`.
pub fn probability_csv(records: &[ProbabilityRecord]) -> String {
    let mut out = String::from("theta,mu,state,p\n");
    for r in records {
        writeln!(out, "{},{},{},{}", r.theta, r.mu, r.state, r.p).expect("writing to a String");
    }
    out
}

/// A logical density matrix: Hermitian, positive semidefinite, trace one.
#[derive(Clone, Debug, PartialEq)]
pub struct LogicalDensity {
    k: usize,
    matrix: DMatrix<Complex64>,
}

impl LogicalDensity {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = matrix.nrows();
        let k = dim.trailing_zeros() as usize;
        if dim == 0 || dim != 1 << k || matrix.ncols() != dim {
            return Err(Error::Precondition(format!("{}x{} is not a 2^k square matrix", dim, matrix.ncols())));
        }
        let rho = Self { k, matrix };
        rho.validate()?;
        Ok(rho)
    }

    pub fn pure(state: &LogicalState) -> Self {
        let v = nalgebra::DVector::from_column_slice(state.amplitudes());
        Self { k: state.k(), matrix: &v * v.adjoint() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        SymmetricEigen::new(self.matrix.clone()).eigenvalues.iter().copied().collect()
    }

    /// Checks Hermiticity, positivity and unit trace.
    pub fn validate(&self) -> Result<()> {
        let asym = (&self.matrix - self.matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if asym > TOL {
            return Err(Error::Precondition(format!("density matrix is not Hermitian (deviation {asym:.3e})")));
        }
        if (self.trace() - 1.0).abs() > TOL {
            return Err(Error::Precondition(format!("density matrix has trace {}", self.trace())));
        }
        if let Some(low) = self.eigenvalues().into_iter().find(|&e| e < PSD_TOLERANCE) {
            return Err(Error::Precondition(format!("density matrix has eigenvalue {low:.3e}")));
        }
        Ok(())
    }

    /// `<phi|rho|phi>`.
    pub fn overlap(&self, state: &LogicalState) -> f64 {
        let v = nalgebra::DVector::from_column_slice(state.amplitudes());
        (v.adjoint() * &self.matrix * &v)[(0, 0)].re
    }

    /// Uhlmann fidelity `(tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        if other.k != self.k {
            return Err(Error::LengthMismatch { expected: self.k, found: other.k });
        }
        let root = psd_sqrt(&self.matrix);
        let inner = &root * &other.matrix * &root;
        let eig = SymmetricEigen::new((&inner + inner.adjoint()) * Complex64::new(0.5, 0.0)).eigenvalues;
        Ok(eig.iter().map(|&e| clamped_sqrt(e)).sum::<f64>().powi(2))
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

// Roundoff eigenvalues would otherwise contribute ~1e-8 after the root.
fn clamped_sqrt(e: f64) -> f64 {
    if e > 1e-12 {
        e.sqrt()
    } else {
        0.0
    }
}

fn psd_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(m.clone());
    let roots = eig.eigenvalues.map(|e| Complex64::new(clamped_sqrt(e), 0.0));
    &eig.eigenvectors * DMatrix::from_diagonal(&roots) * eig.eigenvectors.adjoint()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::coeffs::{gencoeffs, gencoeffs_rz};
    use crate::css::{builtin, random_css};
    use crate::gates::DiagonalGate;

    fn t_dagger() -> LogicalDiagonalOp {
        LogicalDiagonalOp::from_diagonal(1, &[Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, -PI / 4.0)])
    }

    fn z_t_dagger() -> LogicalDiagonalOp {
        LogicalDiagonalOp::from_diagonal(1, &[Complex64::new(1.0, 0.0), -Complex64::from_polar(1.0, -PI / 4.0)])
    }

    fn norm_of(op: &LogicalDiagonalOp) -> f64 {
        op.diagonal()[0].norm()
    }

    fn proportional(op: &LogicalDiagonalOp, target: &LogicalDiagonalOp) -> bool {
        let scale = norm_of(op);
        let unit = LogicalDiagonalOp::new(op.k(), op.coeffs().iter().map(|c| c / scale).collect());
        unit.equals_up_to_phase(target, 1e-9)
    }

    #[test]
    fn steane_kraus_without_correction() {
        let table = gencoeffs_rz(&builtin("steane").unwrap(), PI / 4.0).unwrap();
        let ch = kraus_operators(&table, &CorrectionPolicy::None).unwrap();
        assert_eq!(ch.kraus().len(), 8);
        let b0 = &ch.kraus()[0].op;
        assert!((norm_of(b0) - 0.75).abs() < 1e-12);
        assert!(proportional(b0, &t_dagger()));
        for b in &ch.kraus()[1..] {
            assert!((norm_of(&b.op) - 0.25).abs() < 1e-12);
            assert!(proportional(&b.op, &z_t_dagger()));
        }
        assert!(ch.completeness_deviation() < 1e-12);
    }

    #[test]
    fn steane_z_correct_gives_t_dagger_everywhere() {
        let table = gencoeffs_rz(&builtin("steane").unwrap(), PI / 4.0).unwrap();
        let ch = kraus_operators(&table, &CorrectionPolicy::ZCorrect).unwrap();
        for b in ch.kraus() {
            assert!(proportional(&b.op, &t_dagger()));
        }
        let plus: LogicalState = "+".parse().unwrap();
        let out = ch.apply(&LogicalDensity::pure(&plus)).unwrap();
        let expected = LogicalState::from_amplitudes(t_dagger().diagonal().iter().map(|d| d * plus.amplitudes()[0]).collect()).unwrap();
        assert!(out.max_diff(&LogicalDensity::pure(&expected)) < 1e-12);
        out.validate().unwrap();
    }

    #[test]
    fn steane_plus_state_mixture() {
        let table = gencoeffs_rz(&builtin("steane").unwrap(), PI / 4.0).unwrap();
        let ch = kraus_operators(&table, &CorrectionPolicy::None).unwrap();
        let plus: LogicalState = "+".parse().unwrap();
        let out = ch.apply(&LogicalDensity::pure(&plus)).unwrap();
        let branch = |op: LogicalDiagonalOp| {
            let amps = op.diagonal().iter().zip(plus.amplitudes()).map(|(d, a)| d * a).collect();
            LogicalDensity::pure(&LogicalState::from_amplitudes(amps).unwrap()).matrix().clone()
        };
        let expected = branch(t_dagger()) * Complex64::new(9.0 / 16.0, 0.0) + branch(z_t_dagger()) * Complex64::new(7.0 / 16.0, 0.0);
        assert!((out.matrix() - expected).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn identity_gate_channel_is_identity() {
        let code = builtin("422").unwrap();
        let table = gencoeffs(&code, &DiagonalGate::identity(4).unwrap()).unwrap();
        let ch = kraus_operators(&table, &CorrectionPolicy::None).unwrap();
        assert!(ch.kraus()[0].op.equals_up_to_phase(&LogicalDiagonalOp::new(2, vec![1.0.into(), 0.0.into(), 0.0.into(), 0.0.into()]), 1e-12));
        assert!(ch.kraus()[1..].iter().all(|b| norm_of(&b.op) < 1e-12));
        let rho = LogicalDensity::pure(&"+A".parse().unwrap());
        assert!(ch.apply(&rho).unwrap().max_diff(&rho) < 1e-12);
    }

    #[test]
    fn steane_trivial_syndrome_probability() {
        let code = builtin("steane").unwrap();
        let zero = BitVec::zeros(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for step in 0..20 {
            let theta = step as f64 * 0.17;
            let table = gencoeffs_rz(&code, theta).unwrap();
            let expected = (7.0 * (4.0 * theta).cos() + 25.0) / 32.0;
            for s in ["0", "1", "+", "-", "A"] {
                let p = syndrome_probability(&table, &s.parse().unwrap(), &zero).unwrap();
                assert!((p - expected).abs() < 1e-12, "theta {theta} state {s}");
            }
            let amps = vec![Complex64::new(rng.gen(), rng.gen()), Complex64::new(rng.gen(), rng.gen())];
            let p = syndrome_probability(&table, &LogicalState::from_amplitudes(amps).unwrap(), &zero).unwrap();
            assert!((p - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn four_two_two_decoherence_free_subspace() {
        let code = builtin("422").unwrap();
        let zero = BitVec::zeros(4).unwrap();
        let thetas: Vec<f64> = (0..24).map(|i| i as f64 * 0.13).collect();
        let family: Vec<_> = thetas.iter().map(|&t| gencoeffs_rz(&code, t).unwrap()).collect();
        for (theta, table) in thetas.iter().zip(&family) {
            let p = syndrome_probability(table, &"00".parse().unwrap(), &zero).unwrap();
            assert!((p - ((4.0 * theta).cos() + 1.0) / 2.0).abs() < 1e-12);
        }
        assert_eq!(dfs_scan(&family).unwrap(), vec![1, 2, 3]);

        let shifted = code.with_y(BitVec::parse("0001").unwrap()).unwrap();
        let family: Vec<_> = thetas.iter().map(|&t| gencoeffs_rz(&shifted, t).unwrap()).collect();
        for (theta, table) in thetas.iter().zip(&family) {
            for alpha in 0..4 {
                let p = syndrome_probability(table, &LogicalState::basis(2, alpha), &zero).unwrap();
                assert!((p - theta.cos().powi(2)).abs() < 1e-12);
            }
        }
        assert!(dfs_scan(&family).unwrap().is_empty());

        let steane = builtin("steane").unwrap();
        let family: Vec<_> = thetas.iter().map(|&t| gencoeffs_rz(&steane, t).unwrap()).collect();
        assert!(dfs_scan(&family).unwrap().is_empty());
    }

    #[test]
    fn cross_terms_sum_to_zero_and_vanish_on_x_basis_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let n = rng.gen_range(3..=8);
            let code = random_css(&mut rng, n).unwrap();
            let table = gencoeffs_rz(&code, rng.gen_range(0.0..PI)).unwrap();
            let k = code.k();
            let amps = (0..1 << k).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let state = LogicalState::from_amplitudes(amps).unwrap();
            let mut total_p = 0.0;
            let mut total_cross = 0.0;
            for mu in table.syndromes().leaders() {
                let (diag, cross) = syndrome_probability_parts(&table, &state, mu).unwrap();
                total_p += diag + cross;
                total_cross += cross;
            }
            assert!((total_p - 1.0).abs() < 1e-9);
            assert!(total_cross.abs() < 1e-9);

            let spec: String = (0..k).map(|_| ['+', '-'][rng.gen_range(0..2)]).collect();
            let plus_state: LogicalState = spec.parse().unwrap();
            for mu in table.syndromes().leaders() {
                let (_, cross) = syndrome_probability_parts(&table, &plus_state, mu).unwrap();
                assert!(cross.abs() < 1e-12, "state {spec}");
            }
        }
    }

    #[test]
    fn random_channels_are_complete_and_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let n = rng.gen_range(3..=8);
            let code = random_css(&mut rng, n).unwrap();
            let table = gencoeffs_rz(&code, rng.gen_range(0.0..PI)).unwrap();
            let pairs = table
                .syndromes()
                .leaders()
                .iter()
                .skip(1)
                .map(|mu| (*mu, table.frame().z_string(rng.gen_range(0..1 << code.k()))))
                .collect();
            for policy in [CorrectionPolicy::None, CorrectionPolicy::Explicit(pairs)] {
                let ch = kraus_operators(&table, &policy).unwrap();
                assert!(ch.completeness_deviation() < 1e-9);
                let amps = (0..1 << code.k()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                let out = ch.apply(&LogicalDensity::pure(&LogicalState::from_amplitudes(amps).unwrap())).unwrap();
                out.validate().unwrap();
            }
        }
    }

    #[test]
    fn physical_states_decode_and_leaks_are_rejected() {
        let code = builtin("steane").unwrap();
        let a: LogicalState = "A".parse().unwrap();
        let psi = code.encode_superposition(a.amplitudes()).unwrap();
        let back = LogicalState::from_codespace(&code, &psi).unwrap();
        assert!(back.amplitudes().iter().zip(a.amplitudes()).all(|(x, y)| (x - y).norm() < 1e-12));
        let outside = StateVector::basis(BitVec::parse("1000000").unwrap()).unwrap();
        assert!(matches!(LogicalState::from_codespace(&code, &outside), Err(Error::Precondition(_))));
    }

    #[test]
    fn policies_parse_and_validate() {
        assert_eq!("none".parse::<CorrectionPolicy>().unwrap(), CorrectionPolicy::None);
        assert_eq!("z-correct".parse::<CorrectionPolicy>().unwrap(), CorrectionPolicy::ZCorrect);
        let code = builtin("422").unwrap();
        let table = gencoeffs_rz(&code, 0.3).unwrap();
        assert!(CorrectionPolicy::ZCorrect.resolve(&table).is_err());
        let bad: CorrectionPolicy = "0000:0011".parse().unwrap();
        assert!(bad.resolve(&table).is_err());
        assert!("0000".parse::<CorrectionPolicy>().is_err());
    }

    #[test]
    fn densities_are_validated() {
        let bad = DMatrix::from_row_slice(2, 2, &[Complex64::new(1.5, 0.0), 0.0.into(), 0.0.into(), Complex64::new(-0.5, 0.0)]);
        assert!(LogicalDensity::new(bad).is_err());
        let rho = LogicalDensity::pure(&"A".parse().unwrap());
        assert!((rho.fidelity(&rho).unwrap() - 1.0).abs() < 1e-9);
        let mixed = LogicalDensity::new(DMatrix::identity(2, 2) * Complex64::new(0.5, 0.0)).unwrap();
        assert!((mixed.fidelity(&rho).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn probability_csv_lines() {
        let code = builtin("steane").unwrap();
        let records = rz_probability_grid(&code, &[0.0, PI / 4.0], &[("0".into(), "0".parse().unwrap())]).unwrap();
        let csv = probability_csv(&records);
        assert_eq!(csv.lines().count(), 1 + 2 * 8);
        assert!(csv.starts_with("theta,mu,state,p\n0,0000000,0,1\n"));
    }
}
