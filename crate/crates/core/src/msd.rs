//! Magic state distillation under i.i.d. dephasing: success probability,
//! output error rate and threshold for syndrome-based policies.
//!
//! Each physical qubit suffers `Z` with probability `p` before the gate. An
//! error `e` followed by the measured syndrome `nu` yields the logical Kraus
//! operator of row `e + nu_leader`, shifted by the policy's correction. All
//! curves are exact polynomials in `t = 1 - 2p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coeffs::{GenCoeffTable, LogicalDiagonalOp};
use crate::f2codes::{BinaryCode, BitVec};
use crate::{Error, Result, TOL};

/// A polynomial `sum_i c_i t^i` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly {
    coeffs: Vec<BigRational>,
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl TPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    /// From integer numerators over a common denominator.
    pub fn from_integers(numerators: &[i64], denominator: i64) -> Self {
        Self::from_coeffs(numerators.iter().map(|&c| rational(c, denominator)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::from_coeffs(
            (0..len).map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)).collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Value at `t`.
    pub fn eval_t(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Value at dephasing probability `p`.
    pub fn eval(&self, p: f64) -> f64 {
        self.eval_t(1.0 - 2.0 * p)
    }

    /// Coefficients of the same polynomial in `p`.
    pub fn in_p(&self) -> Vec<BigRational> {
        let t = Self::from_integers(&[1, -2], 1);
        let mut power = Self::constant(BigRational::one());
        let mut out = Self::zero();
        for c in &self.coeffs {
            out = out.add(&power.scale(c));
            power = power.mul(&t);
        }
        out.coeffs
    }
}

impl fmt::Display for TPoly {
    /// `(2 + 7t^4)/16` style: integer numerators over the common denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| num_integer_lcm(&acc, c.denom()));
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let num = (c * BigRational::from_integer(den.clone())).to_integer();
            if num.is_zero() {
                continue;
            }
            let mag = num.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "t".to_string(),
                (1, false) => format!("{mag}t"),
                (_, true) => format!("t^{i}"),
                (_, false) => format!("{mag}t^{i}"),
            };
            terms.push((num.is_negative(), body));
        }
        let mut text = String::new();
        for (idx, (neg, body)) in terms.iter().enumerate() {
            match (idx, neg) {
                (0, true) => text.push('-'),
                (0, false) => {}
                (_, true) => text.push_str(" - "),
                (_, false) => text.push_str(" + "),
            }
            text.push_str(body);
        }
        if den.is_one() {
            write!(f, "{text}")
        } else {
            write!(f, "({text})/{den}")
        }
    }
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    a / x * b
}

/// Probability that the dephasing error lies in `shift + code`, as a
/// polynomial in `t`. Enumerates the code or its dual, whichever is smaller.
pub fn dephasing_coset_polynomial(code: &BinaryCode, shift: &BitVec) -> Result<TPoly> {
    let n = code.len();
    if shift.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: shift.len() });
    }
    if code.dim() <= n - code.dim() {
        // 2^-n sum_w N_w (1 - t)^w (1 + t)^{n - w}
        let counts = code.coset_weight_distribution(*shift)?;
        let minus = TPoly::from_integers(&[1, -1], 1);
        let plus = TPoly::from_integers(&[1, 1], 1);
        let mut total = TPoly::zero();
        for (w, &count) in counts.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let mut term = TPoly::constant(BigRational::from_integer(BigInt::from(count)));
            for _ in 0..w {
                term = term.mul(&minus);
            }
            for _ in w..n {
                term = term.mul(&plus);
            }
            total = total.add(&term);
        }
        Ok(total.scale(&BigRational::new(BigInt::one(), BigInt::one() << n)))
    } else {
        // |C^perp|^-1 sum_{u in C^perp} (-1)^{u.s} t^{w(u)}
        let dual = code.dual();
        let mut signed = vec![0i64; n + 1];
        for u in dual.codewords()? {
            signed[u.weight() as usize] += if u.dot(shift) { -1 } else { 1 };
        }
        let den = BigInt::one() << dual.dim();
        Ok(TPoly::from_coeffs(signed.iter().map(|&c| BigRational::new(BigInt::from(c), den.clone())).collect()))
    }
}

/// `sum_{v in shift + code} (1 - p)^{n - w(v)} p^{w(v)}`.
pub fn dephasing_coset_sum(code: &BinaryCode, shift: &BitVec, p: f64) -> Result<f64> {
    Ok(dephasing_coset_polynomial(code, shift)?.eval(p))
}

/// Which syndromes are accepted and which receive the logical Z correction.
#[derive(Clone, Debug, PartialEq)]
pub enum DistillationPolicy {
    /// Keep only the trivial syndrome.
    Postselect,
    /// Keep every syndrome and apply logical Z after nontrivial ones.
    CorrectAll,
    /// Keep the trivial syndrome and the listed ones, correcting the latter.
    CorrectSubset(Vec<BitVec>),
}

impl FromStr for DistillationPolicy {
    type Err = Error;

    /// `postselect`, `correct-all` or `correct-subset:mu1;mu2;...`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "postselect" => Ok(Self::Postselect),
            "correct-all" => Ok(Self::CorrectAll),
            other => {
                let list = other
                    .strip_prefix("correct-subset:")
                    .ok_or_else(|| Error::Parse(format!("unknown distillation policy '{other}'")))?;
                list.split(';').map(|m| BitVec::parse(m.trim())).collect::<Result<Vec<_>>>().map(Self::CorrectSubset)
            }
        }
    }
}

impl fmt::Display for DistillationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Postselect => write!(f, "postselect"),
            Self::CorrectAll => write!(f, "correct-all"),
            Self::CorrectSubset(list) => {
                let names: Vec<String> = list.iter().map(ToString::to_string).collect();
                write!(f, "correct-subset:{}", names.join(";"))
            }
        }
    }
}

/// Exact curves of one protocol. The input is logical `|+>`; the target is
/// the output of the error-free, trivial-syndrome branch.
#[derive(Clone, Debug, PartialEq)]
pub struct DistillationAnalysis {
    policy: DistillationPolicy,
    p_success: TPoly,
    p_correct: TPoly,
}

/// Largest power of two tried when recognizing branch weights as exact.
const MAX_DYADIC_EXPONENT: u32 = 24;

fn dyadic(x: f64) -> Option<BigRational> {
    (0..=MAX_DYADIC_EXPONENT).find_map(|m| {
        let scaled = x * f64::from(1u32 << m);
        let rounded = scaled.round();
        ((x - rounded / f64::from(1u32 << m)).abs() <= 1e-12)
            .then(|| BigRational::new(BigInt::from(rounded as i64), BigInt::one() << m))
    })
}

fn shifted(op: &LogicalDiagonalOp, shift: usize) -> LogicalDiagonalOp {
    LogicalDiagonalOp::new(op.k(), (0..op.coeffs().len()).map(|a| op.coefficient(a ^ shift)).collect())
}

fn normalized(op: &LogicalDiagonalOp) -> Option<LogicalDiagonalOp> {
    let norm = op.coeffs().iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    (norm > TOL).then(|| LogicalDiagonalOp::new(op.k(), op.coeffs().iter().map(|c| c / norm).collect()))
}

/// Syndrome leaders accepted by `policy` in table order, each with whether
/// the logical `Z` correction is applied.
pub fn accepted_syndromes(table: &GenCoeffTable, policy: &DistillationPolicy) -> Result<Vec<(BitVec, bool)>> {
    let n = table.frame().n();
    let zero = BitVec::zeros(n)?;
    Ok(match policy {
        DistillationPolicy::Postselect => vec![(zero, false)],
        DistillationPolicy::CorrectAll => {
            table.syndromes().leaders().iter().enumerate().map(|(i, l)| (*l, i != 0)).collect()
        }
        DistillationPolicy::CorrectSubset(list) => {
            let mut rows = vec![(zero, false)];
            for mu in list {
                let row = table
                    .syndromes()
                    .index_of(mu)
                    .ok_or_else(|| Error::LengthMismatch { expected: n, found: mu.len() })?;
                if row == 0 {
                    return Err(Error::Precondition(format!("{mu} is the trivial syndrome")));
                }
                let leader = table.syndromes().leader(row);
                if !rows.iter().any(|(l, _)| *l == leader) {
                    rows.push((leader, true));
                }
            }
            rows
        }
    })
}

/// Analysis of a one-logical-qubit code under `policy`.
///
/// Every branch operator must be proportional to the ideal output operator
/// `R` or to `Zbar R`, and its weight must be an exact dyadic rational;
/// otherwise the code is rejected.
pub fn steane_like_analysis(table: &GenCoeffTable, policy: &DistillationPolicy) -> Result<DistillationAnalysis> {
    let frame = table.frame();
    if table.k() != 1 {
        return Err(Error::Precondition(format!("distillation analysis needs one logical qubit, code has {}", table.k())));
    }
    let n = frame.n();
    let zero = BitVec::zeros(n)?;
    let z_logical = frame.z_string(1);
    let accepted = accepted_syndromes(table, policy)?;
    let ideal = normalized(&table.row_operator(&zero)?)
        .ok_or_else(|| Error::Precondition("the error-free trivial-syndrome branch vanishes".into()))?;
    let ideal_z = shifted(&ideal, 1);
    let mut p_success = TPoly::zero();
    let mut p_correct = TPoly::zero();
    // Error classes are the cosets of the Z-stabilizers.
    for error_row in table.syndromes().leaders() {
        for alpha in 0..2 {
            let error = *error_row ^ if alpha == 1 { z_logical } else { zero };
            let probability = dephasing_coset_polynomial(frame.z_stabilizers(), &error)?;
            for (leader, correction) in &accepted {
                let op = shifted(&table.row_operator(&(error ^ *leader))?, usize::from(*correction));
                let weight: f64 = op.diagonal().iter().map(|d| d.norm_sqr() / 2.0).sum();
                if weight <= TOL {
                    continue;
                }
                let unit = normalized(&op).expect("nonzero weight");
                let correct = if unit.equals_up_to_phase(&ideal, 1e-9) {
                    true
                } else if unit.equals_up_to_phase(&ideal_z, 1e-9) {
                    false
                } else {
                    return Err(Error::Unsupported(format!(
                        "branch (error {error}, syndrome {leader}) is neither the ideal operator nor its Z-flip"
                    )));
                };
                let exact = dyadic(weight)
                    .ok_or_else(|| Error::Unsupported(format!("branch weight {weight} is not an exact dyadic rational")))?;
                let term = probability.scale(&exact);
                if correct {
                    p_correct = p_correct.add(&term);
                }
                p_success = p_success.add(&term);
            }
        }
    }
    Ok(DistillationAnalysis { policy: policy.clone(), p_success, p_correct })
}

impl DistillationAnalysis {
    pub fn policy(&self) -> &DistillationPolicy {
        &self.policy
    }

    /// Probability that the protocol accepts.
    pub fn p_success(&self) -> &TPoly {
        &self.p_success
    }

    /// Probability that the protocol accepts with the ideal output.
    pub fn p_correct(&self) -> &TPoly {
        &self.p_correct
    }

    /// Output error rate `1 - p_correct / p_success`.
    pub fn q(&self, p: f64) -> f64 {
        1.0 - self.p_correct.eval(p) / self.p_success.eval(p)
    }

    /// Exact Taylor coefficients of `q` at `p = 0`, up to `p^order`.
    pub fn q_series(&self, order: usize) -> Result<Vec<BigRational>> {
        let num = padded(self.p_correct.in_p(), order + 1);
        let den = padded(self.p_success.in_p(), order + 1);
        if den[0].is_zero() {
            return Err(Error::Precondition("the protocol never succeeds without errors".into()));
        }
        // num / den as a power series.
        let mut ratio: Vec<BigRational> = Vec::with_capacity(order + 1);
        for i in 0..=order {
            let mut acc = num[i].clone();
            for j in 0..i {
                acc -= &ratio[j] * &den[i - j];
            }
            ratio.push(acc / &den[0]);
        }
        Ok(ratio.into_iter().enumerate().map(|(i, r)| if i == 0 { BigRational::one() - r } else { -r }).collect())
    }

    pub fn threshold(&self) -> Threshold {
        find_threshold(|p| self.q(p))
    }

    pub fn report(&self, code: &str, gate: &str, p_grid: &[f64]) -> Result<DistillationReport> {
        let series = self.q_series(2)?;
        let threshold = self.threshold();
        Ok(DistillationReport {
            code: code.to_string(),
            gate: gate.to_string(),
            policy: self.policy.to_string(),
            p_success: self.p_success.to_string(),
            p_correct: self.p_correct.to_string(),
            q_linear: series[1].to_string(),
            q_quadratic: series[2].to_string(),
            threshold: threshold.fixed_point,
            converges: threshold.converges,
            curve: p_grid
                .iter()
                .map(|&p| CurvePoint { p, p_success: self.p_success.eval(p), q: self.q(p) })
                .collect(),
        })
    }
}

fn padded(mut v: Vec<BigRational>, len: usize) -> Vec<BigRational> {
    v.resize(len.max(v.len()), BigRational::zero());
    v
}

/// Interior fixed point of `q(p) = p`, and whether iterating from small `p`
/// drives the error to zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Threshold {
    pub fixed_point: Option<f64>,
    pub converges: bool,
}

/// Search interval for fixed points.
pub const THRESHOLD_INTERVAL: (f64, f64) = (1e-6, 0.5 - 1e-6);

/// Bisection on `q(p) - p` over [`THRESHOLD_INTERVAL`] to `1e-12`.
pub fn find_threshold(q: impl Fn(f64) -> f64) -> Threshold {
    let (mut lo, mut hi) = THRESHOLD_INTERVAL;
    let g = |p: f64| q(p) - p;
    let converges = g(lo) < 0.0;
    let (glo, ghi) = (g(lo), g(hi));
    if glo.signum() == ghi.signum() || glo.is_nan() || ghi.is_nan() {
        return Threshold { fixed_point: None, converges };
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if g(mid).signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Threshold { fixed_point: Some(0.5 * (lo + hi)), converges }
}

/// First and second Taylor coefficients at `0` from one-sided finite
/// differences, Richardson-extrapolated over `levels` step halvings.
pub fn richardson_taylor(f: impl Fn(f64) -> f64, h: f64, levels: usize) -> (f64, f64) {
    let f0 = f(0.0);
    let first = |s: f64| (-3.0 * f0 + 4.0 * f(s) - f(2.0 * s)) / (2.0 * s);
    let second = |s: f64| (2.0 * f0 - 5.0 * f(s) + 4.0 * f(2.0 * s) - f(3.0 * s)) / (2.0 * s * s);
    let extrapolate = |d: &dyn Fn(f64) -> f64, order: i32| {
        let mut table: Vec<f64> = (0..levels).map(|i| d(h / f64::from(1u32 << i))).collect();
        for level in 0..levels.saturating_sub(1) {
            let factor = f64::from(2i32.pow((order + level as i32) as u32));
            table = table.windows(2).map(|w| (factor * w[1] - w[0]) / (factor - 1.0)).collect();
        }
        table[0]
    };
    (extrapolate(&first, 2), extrapolate(&second, 2))
}

/// One sampled point of the curves.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub p: f64,
    pub p_success: f64,
    pub q: f64,
}

/// Serializable summary of a distillation analysis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistillationReport {
    pub code: String,
    pub gate: String,
    pub policy: String,
    pub p_success: String,
    pub p_correct: String,
    pub q_linear: String,
    pub q_quadratic: String,
    pub threshold: Option<f64>,
    pub converges: bool,
    pub curve: Vec<CurvePoint>,
}

impl DistillationReport {
    /// CSV with header `p,p_success,q`.
    pub fn curve_csv(&self) -> String {
        let mut out = String::from("p,p_success,q\n");
        for c in &self.curve {
            out.push_str(&format!("{},{},{}\n", c.p, c.p_success, c.q));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::coeffs::gencoeffs_rz;
    use crate::css::builtin;

    fn steane_table() -> GenCoeffTable {
        gencoeffs_rz(&builtin("steane").unwrap(), PI / 4.0).unwrap()
    }

    #[test]
    fn coset_sums() {
        let steane = builtin("steane").unwrap();
        let full = BinaryCode::full(5).unwrap();
        let z5 = BitVec::zeros(5).unwrap();
        for p in [0.0f64, 0.1, 0.37] {
            assert!((dephasing_coset_sum(&full, &z5, p).unwrap() - 1.0).abs() < 1e-12);
            let zero = BinaryCode::zero(5).unwrap();
            assert!((dephasing_coset_sum(&zero, &z5, p).unwrap() - (1.0 - p).powi(5)).abs() < 1e-12);
            let t: f64 = 1.0 - 2.0 * p;
            let z7 = BitVec::zeros(7).unwrap();
            let s = dephasing_coset_sum(steane.c2_perp(), &z7, p).unwrap();
            assert!((s - (1.0 + 7.0 * t.powi(4)) / 8.0).abs() < 1e-12);
        }
        let z7 = BitVec::zeros(7).unwrap();
        assert_eq!(dephasing_coset_polynomial(steane.c2_perp(), &z7).unwrap(), TPoly::from_integers(&[1, 0, 0, 0, 7], 8));
        // Both enumeration routes agree.
        let small = steane.c2().clone();
        let shift = BitVec::parse("1100000").unwrap();
        let direct = dephasing_coset_polynomial(&small, &shift).unwrap();
        let via_dual = dephasing_coset_polynomial(steane.c2_perp(), &shift).unwrap();
        for p in [0.05f64, 0.2] {
            let brute: f64 = small.coset(shift).unwrap().map(|v| p.powi(v.weight() as i32) * (1.0 - p).powi(7 - v.weight() as i32)).sum();
            assert!((direct.eval(p) - brute).abs() < 1e-12);
            let brute: f64 = steane.c2_perp().coset(shift).unwrap().map(|v| p.powi(v.weight() as i32) * (1.0 - p).powi(7 - v.weight() as i32)).sum();
            assert!((via_dual.eval(p) - brute).abs() < 1e-12);
        }
    }

    #[test]
    fn steane_postselect_curves() {
        let a = steane_like_analysis(&steane_table(), &DistillationPolicy::Postselect).unwrap();
        assert_eq!(a.p_success(), &TPoly::from_integers(&[2, 0, 0, 0, 7], 16));
        assert_eq!(a.p_correct(), &TPoly::from_integers(&[2, 0, 0, 7, 7, 0, 0, 2], 32));
        assert_eq!(a.p_success().to_string(), "(2 + 7t^4)/16");
        let series = a.q_series(2).unwrap();
        assert!(series[0].is_zero());
        assert_eq!(series[1], rational(7, 9));
        assert_eq!(series[2], rational(14, 81));
        let (lin, quad) = richardson_taylor(|p| a.q(p), 1e-3, 4);
        assert!((lin - 7.0 / 9.0).abs() < 1e-6, "{lin}");
        assert!((quad - 14.0 / 81.0).abs() < 1e-4, "{quad}");
        let th = a.threshold();
        assert!(th.converges);
        let p = th.fixed_point.unwrap();
        assert!((p - 0.1464).abs() < 5e-4, "{p}");
        assert!((a.q(p) - p).abs() < 1e-10);
        assert!((a.p_success().eval(0.0) - steane_table().trivial_row_weight()).abs() < 1e-12);
    }

    #[test]
    fn steane_correct_all() {
        let a = steane_like_analysis(&steane_table(), &DistillationPolicy::CorrectAll).unwrap();
        assert_eq!(a.p_success(), &TPoly::from_integers(&[1], 1));
        assert_eq!(a.p_correct(), &TPoly::from_integers(&[1, 0, 0, 0, 0, 0, 0, 1], 2));
        let th = a.threshold();
        assert!(!th.converges);
        assert!(a.q_series(1).unwrap()[1] > BigRational::one());
    }

    #[test]
    fn steane_correct_subset() {
        let policy: DistillationPolicy = "correct-subset:1000000".parse().unwrap();
        let a = steane_like_analysis(&steane_table(), &policy).unwrap();
        assert_eq!(a.p_success(), &TPoly::from_integers(&[2, 0, 0, 0, 3], 8));
        assert_eq!(a.q_series(1).unwrap()[1], rational(11, 5));
        assert!(a.q_series(1).unwrap()[1] > BigRational::one());
        assert!(!a.threshold().converges);
    }

    #[test]
    fn thresholds_of_synthetic_curves() {
        let half = find_threshold(|p| p / 2.0);
        assert_eq!(half, Threshold { fixed_point: None, converges: true });
        let square = find_threshold(|p| 4.0 * p * p);
        assert!((square.fixed_point.unwrap() - 0.25).abs() < 1e-10);
        assert!(square.converges);
    }

    #[test]
    fn polynomial_arithmetic_and_display() {
        let p = TPoly::from_integers(&[1, -2, 0, 3], 4);
        assert_eq!(p.to_string(), "(1 - 2t + 3t^3)/4");
        assert!((p.eval_t(0.5) - (1.0 - 1.0 + 3.0 / 8.0) / 4.0).abs() < 1e-15);
        let sq = p.mul(&p);
        assert!((sq.eval_t(0.3) - p.eval_t(0.3).powi(2)).abs() < 1e-15);
        let in_p = TPoly::from_integers(&[0, 1], 1).in_p();
        assert_eq!(in_p, vec![rational(1, 1), rational(-2, 1)]);
        assert_eq!(TPoly::zero().to_string(), "0");
        assert!(dyadic(0.5625).is_some());
        assert!(dyadic((PI / 8.0).cos().powi(2)).is_none());
    }

    #[test]
    fn policies_parse() {
        for s in ["postselect", "correct-all", "correct-subset:1000000;0100000"] {
            assert_eq!(s.parse::<DistillationPolicy>().unwrap().to_string(), s);
        }
        assert!("bogus".parse::<DistillationPolicy>().is_err());
    }

    #[test]
    fn non_rotation_codes_are_rejected() {
        let code = builtin("422").unwrap();
        let table = gencoeffs_rz(&code, PI / 4.0).unwrap();
        assert!(matches!(steane_like_analysis(&table, &DistillationPolicy::Postselect), Err(Error::Precondition(_))));
    }
}
