//! Prepare an encoded state, apply the diagonal gate, project onto each
//! X-syndrome, apply the Z-string correction and decode.

use num_complex::Complex64;

use crate::css::{CssCode, PauliOp, StateVector};
use crate::f2codes::{BinaryCode, BitVec, CosetFamily};
use crate::gates::DiagonalGate;
use crate::{Error, Result, TOL};

/// `M[row][col] = <row| E(0, c) P_mu U |col>` on encoded basis states.
pub type LogicalMatrix = Vec<Vec<Complex64>>;

/// One measurement outcome of the pipeline.
#[derive(Clone, Debug)]
pub struct SyndromeBranch {
    pub mu: BitVec,
    pub probability: f64,
    /// Normalized corrected state; `None` for outcomes of probability zero.
    pub post_state: Option<StateVector>,
}

/// Canonical leaders of the X-syndrome cosets `F2^n / C2^perp`.
pub fn syndrome_leaders(code: &CssCode) -> Result<Vec<BitVec>> {
    Ok(CosetFamily::new(code.c2_perp(), &BinaryCode::full(code.n())?)?.leaders().to_vec())
}

fn apply_gate(psi: &mut StateVector, gate: &DiagonalGate) {
    psi.apply_diagonal(|v| gate.phase_at(&v));
}

fn apply_z_string(psi: &mut StateVector, z: &BitVec) {
    psi.apply_diagonal(|v| if v.dot(z) { Complex64::new(-1.0, 0.0) } else { Complex64::new(1.0, 0.0) });
}

fn check_inputs(code: &CssCode, gate: &DiagonalGate, corrections: &[BitVec], rows: usize) -> Result<()> {
    if gate.n() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), found: gate.n() });
    }
    if corrections.len() != rows {
        return Err(Error::LengthMismatch { expected: rows, found: corrections.len() });
    }
    Ok(())
}

/// `E(0, leader + correction) P_mu U |psi>` for every syndrome, unnormalized.
fn branches(code: &CssCode, gate: &DiagonalGate, psi: &StateVector, corrections: &[BitVec]) -> Result<Vec<(BitVec, StateVector)>> {
    let leaders = syndrome_leaders(code)?;
    check_inputs(code, gate, corrections, leaders.len())?;
    let mut rotated = psi.clone();
    apply_gate(&mut rotated, gate);
    leaders
        .into_iter()
        .zip(corrections)
        .map(|(mu, c)| {
            let mut branch = code.x_syndrome_projector_action(&mu, &rotated)?;
            apply_z_string(&mut branch, &(mu ^ *c));
            Ok((mu, branch))
        })
        .collect()
}

/// Runs the pipeline on `sum_alpha logical[alpha] |alpha>`. `corrections`
/// holds the extra Z-logical vector applied after each syndrome, in the
/// order of [`syndrome_leaders`].
pub fn simulate_pipeline(
    code: &CssCode,
    gate: &DiagonalGate,
    logical: &[Complex64],
    corrections: &[BitVec],
) -> Result<Vec<SyndromeBranch>> {
    let psi = code.encode_superposition(logical)?;
    let norm = psi.norm_sqr();
    if (norm - 1.0).abs() > TOL {
        return Err(Error::Precondition(format!("logical state has squared norm {norm}")));
    }
    Ok(branches(code, gate, &psi, corrections)?
        .into_iter()
        .map(|(mu, mut state)| {
            let probability = state.norm_sqr();
            let post_state = (probability > TOL * TOL).then(|| {
                state.normalize();
                state
            });
            SyndromeBranch { mu, probability, post_state }
        })
        .collect())
}

/// Per-syndrome logical matrices from the pipeline applied to every encoded
/// basis state.
pub fn logical_matrices(code: &CssCode, gate: &DiagonalGate, corrections: &[BitVec]) -> Result<Vec<LogicalMatrix>> {
    let k = code.k();
    let basis = (0..1u64 << k).map(|a| code.encode(&BitVec::from_bits(a, k)?)).collect::<Result<Vec<_>>>()?;
    let rows = syndrome_leaders(code)?.len();
    let mut out = vec![vec![vec![Complex64::new(0.0, 0.0); basis.len()]; basis.len()]; rows];
    for (col, psi) in basis.iter().enumerate() {
        for (m, (_, branch)) in branches(code, gate, psi, corrections)?.into_iter().enumerate() {
            for (row, target) in basis.iter().enumerate() {
                out[m][row][col] = target.inner(&branch);
            }
        }
    }
    Ok(out)
}

/// `sum_mu M_mu rho M_mu^dagger` for `rho = |logical><logical|`.
pub fn output_density(matrices: &[LogicalMatrix], logical: &[Complex64]) -> LogicalMatrix {
    let dim = logical.len();
    let mut rho = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for m in matrices {
        let out: Vec<Complex64> = (0..dim).map(|i| (0..dim).map(|j| m[i][j] * logical[j]).sum()).collect();
        for i in 0..dim {
            for j in 0..dim {
                rho[i][j] += out[i] * out[j].conj();
            }
        }
    }
    rho
}

/// Whether the trivial-syndrome logical matrix is unitary, i.e. the gate
/// maps the code space onto itself.
pub fn preserves(code: &CssCode, gate: &DiagonalGate) -> Result<bool> {
    let zero = BitVec::zeros(code.n())?;
    let rows = syndrome_leaders(code)?.len();
    let m = &logical_matrices(code, gate, &vec![zero; rows])?[0];
    let dim = m.len();
    for i in 0..dim {
        for j in 0..dim {
            let g: Complex64 = (0..dim).map(|r| m[r][i].conj() * m[r][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            if (g - target).norm() > 1e-9 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn apply_projector(generators: &[PauliOp], psi: &StateVector) -> StateVector {
    let mut out = psi.clone();
    for g in generators {
        let mut flipped = out.apply_pauli(g);
        flipped.add_scaled(Complex64::new(1.0, 0.0), &out);
        flipped.scale(Complex64::new(0.5, 0.0));
        out = flipped;
    }
    out
}

/// `max_j |(I - P) U P e_j|` over computational basis states, with `P` the
/// code-space projector of a stabilizer group. Zero iff the gate preserves
/// the code space.
pub fn stabilizer_projector_leak(generators: &[PauliOp], gate: &DiagonalGate) -> Result<f64> {
    let n = gate.n();
    if let Some(g) = generators.iter().find(|g| g.len() != n) {
        return Err(Error::LengthMismatch { expected: n, found: g.len() });
    }
    let mut worst: f64 = 0.0;
    for j in 0..1u64 << n {
        let mut v = apply_projector(generators, &StateVector::basis(BitVec::from_bits(j, n)?)?);
        if v.norm_sqr() <= TOL * TOL {
            continue;
        }
        apply_gate(&mut v, gate);
        let back = apply_projector(generators, &v);
        worst = worst.max(back.max_diff(&v));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    use super::*;
    use crate::css::builtin;

    fn zeros(code: &CssCode) -> Vec<BitVec> {
        vec![BitVec::zeros(code.n()).unwrap(); syndrome_leaders(code).unwrap().len()]
    }

    #[test]
    fn steane_plus_state_distribution() {
        let code = builtin("steane").unwrap();
        let gate = DiagonalGate::rz(7, PI / 4.0).unwrap();
        let plus = [Complex64::new(FRAC_1_SQRT_2, 0.0); 2];
        let out = simulate_pipeline(&code, &gate, &plus, &zeros(&code)).unwrap();
        assert_eq!(out.len(), 8);
        assert!((out[0].probability - 9.0 / 16.0).abs() < 1e-12);
        assert!(out[1..].iter().all(|b| (b.probability - 1.0 / 16.0).abs() < 1e-12));
        let total: f64 = out.iter().map(|b| b.probability).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn identity_gate_keeps_the_state() {
        let code = builtin("422").unwrap();
        let gate = DiagonalGate::identity(4).unwrap();
        let logical = [0.5, 0.5, 0.5, -0.5].map(|x| Complex64::new(x, 0.0));
        let out = simulate_pipeline(&code, &gate, &logical, &zeros(&code)).unwrap();
        assert!((out[0].probability - 1.0).abs() < 1e-12);
        let input = code.encode_superposition(&logical).unwrap();
        assert!(out[0].post_state.as_ref().unwrap().max_diff(&input) < 1e-12);
        assert!(out[1..].iter().all(|b| b.post_state.is_none()));
    }

    #[test]
    fn four_two_two_zero_state() {
        let code = builtin("422").unwrap();
        let gate = DiagonalGate::rz(4, PI / 8.0).unwrap();
        let mut logical = vec![Complex64::new(0.0, 0.0); 4];
        logical[0] = Complex64::new(1.0, 0.0);
        let out = simulate_pipeline(&code, &gate, &logical, &zeros(&code)).unwrap();
        assert!((out[0].probability - 0.5).abs() < 1e-12);
    }

    #[test]
    fn matrices_are_diagonal_and_preservation_is_detected() {
        for (name, preserved) in [("steane", false), ("rm15", true), ("832", true)] {
            let code = builtin(name).unwrap();
            let gate = DiagonalGate::rz(code.n(), PI / 4.0).unwrap();
            for m in logical_matrices(&code, &gate, &zeros(&code)).unwrap() {
                for (i, row) in m.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        assert!(i == j || x.norm() < 1e-10);
                    }
                }
            }
            assert_eq!(preserves(&code, &gate).unwrap(), preserved, "{name}");
        }
    }

    #[test]
    fn projector_leak() {
        let code = builtin("832").unwrap();
        let gens = code.stabilizer_generators();
        assert!(stabilizer_projector_leak(&gens, &DiagonalGate::rz(8, PI / 4.0).unwrap()).unwrap() < 1e-10);
        let steane = builtin("steane").unwrap();
        assert!(stabilizer_projector_leak(&steane.stabilizer_generators(), &DiagonalGate::rz(7, PI / 4.0).unwrap()).unwrap() > 0.1);
    }

    #[test]
    fn stays_independent_of_the_analytic_modules() {
        for source in [include_str!("pipeline.rs"), include_str!("montecarlo.rs")] {
            let code: String = source.lines().take_while(|l| !l.starts_with("#[cfg(test)]")).collect::<Vec<_>>().join("\n");
            for forbidden in ["coeffs", "GenCoeff", "channel", "conditions", "msd", "stabilizer::", "super::super"] {
                assert!(!code.contains(forbidden), "mentions {forbidden}");
            }
        }
    }
}
