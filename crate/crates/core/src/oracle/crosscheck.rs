//! Comparison of the analytic tables, Kraus operators and syndrome
//! probabilities with the dense pipeline.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::pipeline::{logical_matrices, output_density, preserves, simulate_pipeline, syndrome_leaders};
use crate::channel::{kraus_operators, CorrectionPolicy, LogicalDensity, LogicalState};
use crate::coeffs::{gencoeffs, GenCoeffTable};
use crate::css::{builtin, CssCode};
use crate::f2codes::BitVec;
use crate::gates::{block_diagonal, DiagonalGate};
use crate::{Error, Result};

/// Largest deviations between the analytic side and the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrosscheckReport {
    /// Syndrome probabilities over all supplied states.
    pub probability_deviation: f64,
    /// Oracle probabilities summed over syndromes, against one.
    pub probability_sum_deviation: f64,
    /// Diagonal of each oracle logical matrix against the Kraus diagonal.
    pub kraus_deviation: f64,
    /// Largest off-diagonal entry of any oracle logical matrix.
    pub off_diagonal: f64,
    /// `1 - fidelity` of the output density matrices.
    pub density_infidelity: f64,
    pub analytic_preserves: bool,
    pub oracle_preserves: bool,
}

impl CrosscheckReport {
    pub fn max_deviation(&self) -> f64 {
        [
            self.probability_deviation,
            self.probability_sum_deviation,
            self.kraus_deviation,
            self.off_diagonal,
            self.density_infidelity,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation() < tol && self.analytic_preserves == self.oracle_preserves
    }
}

/// Builds the table and compares it with the pipeline.
pub fn crosscheck(code: &CssCode, gate: &DiagonalGate, states: &[LogicalState], policy: &CorrectionPolicy) -> Result<CrosscheckReport> {
    crosscheck_table(code, &gencoeffs(code, gate)?, gate, states, policy)
}

/// Compares a given (possibly corrupted) table with the pipeline.
pub fn crosscheck_table(
    code: &CssCode,
    table: &GenCoeffTable,
    gate: &DiagonalGate,
    states: &[LogicalState],
    policy: &CorrectionPolicy,
) -> Result<CrosscheckReport> {
    if syndrome_leaders(code)? != table.syndromes().leaders() {
        return Err(Error::Precondition("table and code index syndromes differently".into()));
    }
    let channel = kraus_operators(table, policy)?;
    let corrections = policy.resolve(table)?;
    let matrices = logical_matrices(code, gate, &corrections)?;
    let mut report = CrosscheckReport {
        probability_deviation: 0.0,
        probability_sum_deviation: 0.0,
        kraus_deviation: 0.0,
        off_diagonal: 0.0,
        density_infidelity: 0.0,
        analytic_preserves: table.preserves(),
        oracle_preserves: preserves(code, gate)?,
    };
    for (m, b) in matrices.iter().zip(channel.kraus()) {
        for (i, d) in b.op.diagonal().iter().enumerate() {
            report.kraus_deviation = report.kraus_deviation.max((m[i][i] - d).norm());
            for (j, x) in m[i].iter().enumerate() {
                if i != j {
                    report.off_diagonal = report.off_diagonal.max(x.norm());
                }
            }
        }
    }
    for state in states {
        let branches = simulate_pipeline(code, gate, state.amplitudes(), &corrections)?;
        let analytic = channel.probabilities(state)?;
        let total: f64 = branches.iter().map(|b| b.probability).sum();
        report.probability_sum_deviation = report.probability_sum_deviation.max((total - 1.0).abs());
        for (b, p) in branches.iter().zip(analytic) {
            report.probability_deviation = report.probability_deviation.max((b.probability - p).abs());
        }
        let rho = output_density(&matrices, state.amplitudes());
        let dim = rho.len();
        let oracle = LogicalDensity::new(nalgebra::DMatrix::from_fn(dim, dim, |i, j| rho[i][j]))?;
        let predicted = channel.apply(&LogicalDensity::pure(state))?;
        report.density_infidelity = report.density_infidelity.max((1.0 - oracle.fidelity(&predicted)?).abs());
    }
    Ok(report)
}

/// The named (code, gate) pairs used throughout the examples.
pub fn builtin_pairs() -> Result<Vec<(String, CssCode, DiagonalGate)>> {
    let cz = vec![vec![0, 1], vec![1, 0]];
    let cz_pair = block_diagonal(&cz, 2);
    let four = builtin("422")?;
    let four_shifted = four.with_y(BitVec::parse("0001")?)?;
    let mut out = vec![
        ("steane rz(pi/4)".to_string(), builtin("steane")?, DiagonalGate::rz(7, PI / 4.0)?),
        ("steane rz(0.3)".to_string(), builtin("steane")?, DiagonalGate::rz(7, 0.3)?),
        ("422 rz(pi/4)".to_string(), four.clone(), DiagonalGate::rz(4, PI / 4.0)?),
        ("422 y=0001 rz(pi/4)".to_string(), four_shifted, DiagonalGate::rz(4, PI / 4.0)?),
        ("422 cz-pair".to_string(), four.clone(), DiagonalGate::qfd(&cz_pair, 2)?),
        ("422 cp-pair".to_string(), four, DiagonalGate::qfd(&cz_pair, 3)?),
        ("832 rz(pi/4)".to_string(), builtin("832")?, DiagonalGate::rz(8, PI / 4.0)?),
        ("rm15 rz(pi/4)".to_string(), builtin("rm15")?, DiagonalGate::rz(15, PI / 4.0)?),
    ];
    out.push(("steane identity".to_string(), builtin("steane")?, DiagonalGate::identity(7)?));
    Ok(out)
}

/// Logical states for a crosscheck: every basis state plus `|+...+>` and
/// `|A...A>`.
pub fn probe_states(k: usize) -> Vec<LogicalState> {
    let mut out: Vec<LogicalState> = (0..1usize << k).map(|a| LogicalState::basis(k, a)).collect();
    for c in ["+", "A"] {
        out.push(c.repeat(k).parse().expect("valid logical state"));
    }
    out
}

/// A corrupted copy of `table`: one trivial-syndrome cell shifted by `delta`.
pub fn corrupted(table: &GenCoeffTable, delta: f64) -> GenCoeffTable {
    let mut bad = table.clone();
    let v = bad.get(0, 0);
    bad.set(0, 0, v + Complex64::new(delta, 0.0));
    bad
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::css::random_css;

    #[test]
    fn builtin_pairs_agree() {
        for (name, code, gate) in builtin_pairs().unwrap() {
            let states = probe_states(code.k());
            let report = crosscheck(&code, &gate, &states, &CorrectionPolicy::None).unwrap();
            assert!(report.passes(1e-9), "{name}: {report:?}");
            if code.k() == 1 {
                let report = crosscheck(&code, &gate, &states, &CorrectionPolicy::ZCorrect).unwrap();
                assert!(report.passes(1e-9), "{name} corrected: {report:?}");
            }
        }
    }

    #[test]
    fn random_phase_tables_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..15 {
            let n = rng.gen_range(3..=7);
            let code = random_css(&mut rng, n).unwrap();
            let phases = (0..1 << n).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))).collect();
            let gate = DiagonalGate::phase_table(n, phases).unwrap();
            let table = gencoeffs(&code, &gate).unwrap();
            let pairs = table.syndromes().leaders().iter().skip(1).map(|mu| (*mu, table.frame().z_string(rng.gen_range(0..1 << code.k())))).collect();
            let report = crosscheck(&code, &gate, &probe_states(code.k()), &CorrectionPolicy::Explicit(pairs)).unwrap();
            assert!(report.passes(1e-9), "{report:?}");
        }
    }

    #[test]
    fn corrupted_tables_are_flagged() {
        let code = builtin("steane").unwrap();
        let gate = DiagonalGate::rz(7, PI / 4.0).unwrap();
        let bad = corrupted(&gencoeffs(&code, &gate).unwrap(), 0.05);
        let report = crosscheck_table(&code, &bad, &gate, &probe_states(1), &CorrectionPolicy::None);
        let flagged = match report {
            Ok(r) => r.max_deviation() > 1e-3,
            Err(_) => true,
        };
        assert!(flagged);
    }
}
