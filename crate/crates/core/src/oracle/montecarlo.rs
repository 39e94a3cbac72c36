//! Sampled distillation runs: i.i.d. dephasing errors followed by the dense
//! pipeline, with a seeded random stream.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::pipeline::syndrome_leaders;
use crate::css::{CssCode, StateVector};
use crate::f2codes::BitVec;
use crate::gates::DiagonalGate;
use crate::{Error, Result};

/// Sample counts and the resulting estimates with one-sigma binomial errors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub samples: u64,
    pub accepted: u64,
    pub correct: u64,
    pub p_success: f64,
    pub p_success_sigma: f64,
    pub q: f64,
    pub q_sigma: f64,
}

/// Per accepted syndrome: outcome probability and fidelity with the target.
type BranchStats = Vec<(f64, f64)>;

fn branch_stats(
    code: &CssCode,
    gate: &DiagonalGate,
    input: &StateVector,
    error: &BitVec,
    accepted: &[(BitVec, BitVec)],
    target: &StateVector,
) -> Result<BranchStats> {
    let mut psi = input.clone();
    psi.apply_diagonal(|v| {
        let negative = v.dot(error);
        gate.phase_at(&v) * if negative { -1.0 } else { 1.0 }
    });
    accepted
        .iter()
        .map(|(leader, correction)| {
            let mut branch = code.x_syndrome_projector_action(leader, &psi)?;
            let z = *leader ^ *correction;
            branch.apply_diagonal(|v| if v.dot(&z) { Complex64::new(-1.0, 0.0) } else { Complex64::new(1.0, 0.0) });
            let p = branch.norm_sqr();
            let fidelity = if p > 0.0 { target.inner(&branch).norm_sqr() / p } else { 0.0 };
            Ok((p, fidelity))
        })
        .collect()
}

/// Samples `samples` runs of the protocol on logical `|+>` of a one-qubit
/// code. `accepted` lists `(syndrome representative, extra Z-logical
/// correction)`; a run succeeds when its syndrome is listed and is correct
/// when its output is the error-free trivial-syndrome output.
pub fn distillation_monte_carlo(
    code: &CssCode,
    gate: &DiagonalGate,
    accepted: &[(BitVec, BitVec)],
    p: f64,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if code.k() != 1 {
        return Err(Error::Precondition(format!("distillation needs one logical qubit, code has {}", code.k())));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("error rate {p} is not a probability")));
    }
    let n = code.n();
    let leaders = syndrome_leaders(code)?;
    let accepted = accepted
        .iter()
        .map(|(mu, c)| {
            let leader = leaders
                .iter()
                .find(|l| code.c2_perp().contains(&(**l ^ *mu)))
                .ok_or_else(|| Error::LengthMismatch { expected: n, found: mu.len() })?;
            Ok((*leader, *c))
        })
        .collect::<Result<Vec<_>>>()?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let input = code.encode_superposition(&[Complex64::new(h, 0.0), Complex64::new(h, 0.0)])?;
    let zero = BitVec::zeros(n)?;
    let mut target = input.clone();
    target.apply_diagonal(|v| gate.phase_at(&v));
    let mut target = code.x_syndrome_projector_action(&zero, &target)?;
    if target.normalize() == 0.0 {
        return Err(Error::Precondition("the error-free trivial-syndrome branch vanishes".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache: HashMap<BitVec, BranchStats> = HashMap::new();
    let (mut accepted_runs, mut correct_runs) = (0u64, 0u64);
    for _ in 0..samples {
        let mut error = zero;
        for i in 0..n {
            if rng.gen_bool(p) {
                error.flip(i);
            }
        }
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(error) {
            let stats = branch_stats(code, gate, &input, &error, &accepted, &target)?;
            e.insert(stats);
        }
        let stats = &cache[&error];
        let mut u: f64 = rng.gen();
        let outcome = stats.iter().find(|(prob, _)| {
            if u < *prob {
                true
            } else {
                u -= prob;
                false
            }
        });
        if let Some((_, fidelity)) = outcome {
            accepted_runs += 1;
            if rng.gen::<f64>() < *fidelity {
                correct_runs += 1;
            }
        }
    }
    let p_success = accepted_runs as f64 / samples as f64;
    let q = if accepted_runs > 0 { 1.0 - correct_runs as f64 / accepted_runs as f64 } else { f64::NAN };
    Ok(MonteCarloEstimate {
        samples,
        accepted: accepted_runs,
        correct: correct_runs,
        p_success,
        p_success_sigma: (p_success * (1.0 - p_success) / samples as f64).sqrt(),
        q,
        q_sigma: (q * (1.0 - q) / accepted_runs.max(1) as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::css::builtin;

    #[test]
    fn error_free_runs_match_the_trivial_syndrome_weight() {
        let code = builtin("steane").unwrap();
        let gate = DiagonalGate::rz(7, PI / 4.0).unwrap();
        let zero = BitVec::zeros(7).unwrap();
        let est = distillation_monte_carlo(&code, &gate, &[(zero, zero)], 0.0, 20_000, 1).unwrap();
        assert!((est.p_success - 9.0 / 16.0).abs() < 4.0 * est.p_success_sigma.max(1e-3));
        assert_eq!(est.accepted, est.correct);
    }

    #[test]
    fn seeds_reproduce() {
        let code = builtin("steane").unwrap();
        let gate = DiagonalGate::rz(7, PI / 4.0).unwrap();
        let zero = BitVec::zeros(7).unwrap();
        let a = distillation_monte_carlo(&code, &gate, &[(zero, zero)], 0.05, 2_000, 9).unwrap();
        let b = distillation_monte_carlo(&code, &gate, &[(zero, zero)], 0.05, 2_000, 9).unwrap();
        assert_eq!(a, b);
    }
}
