//! Exact preservation criteria: quadratic-form and rotation divisibility,
//! the positive-sign Reed-Muller conditions and the trigonometric identity.

use num_complex::Complex64;
use serde::Serialize;

use crate::css::{rm_css, CssCode};
use crate::f2codes::{check_cap, BinaryCode, BitVec, CosetFamily};
use crate::gates::{DiagonalGate, GateKind};
use crate::{Error, Result, TOL};

/// A violating pair found by a divisibility check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub first: BitVec,
    pub second: BitVec,
    /// The quantity that should vanish, reduced mod the modulus (nonzero).
    pub residue: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub holds: bool,
    pub modulus: u64,
    pub witness: Option<Witness>,
}

impl DivisibilityReport {
    fn from_search(modulus: u64, witness: Option<Witness>) -> Self {
        Self { holds: witness.is_none(), modulus, witness }
    }
}

fn qfd_gate(code: &CssCode, matrix: &[Vec<i64>], level: u32) -> Result<DiagonalGate> {
    let gate = DiagonalGate::qfd(matrix, level)?;
    if gate.n() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), found: gate.n() });
    }
    Ok(gate)
}

/// Quadratic-form preservation: `2^l | vRv^T - v'Rv'^T` for every `v` in
/// `C1 + y` and `v' = v + w`, `w` in `C2`.
///
/// The witness holds `(v, v')`; the first violation in Gray-code order over
/// `C1 + y`, then over `C2`, is reported.
pub fn qfd_divisibility(code: &CssCode, matrix: &[Vec<i64>], level: u32) -> Result<DivisibilityReport> {
    let gate = qfd_gate(code, matrix, level)?;
    check_cap((code.c1().dim() + code.c2().dim()) as u32)?;
    let modulus = 1u64 << level;
    let form = |v: &BitVec| gate.quadratic_form(v).expect("quadratic-form gate");
    for v1 in code.c1().coset(code.y())? {
        let q1 = form(&v1);
        for w in code.c2().codewords()? {
            let v2 = v1 ^ w;
            let residue = q1.wrapping_sub(form(&v2)) & (modulus - 1);
            if residue != 0 {
                return Ok(DivisibilityReport::from_search(modulus, Some(Witness { first: v1, second: v2, residue })));
            }
        }
    }
    Ok(DivisibilityReport::from_search(modulus, None))
}

/// The two halves of the split quadratic-form condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    /// `vRv^T` is constant mod `2^l` on `C2 + y`.
    pub coset_forms_agree: bool,
    /// `2^{l-1} | (u1 - u2) R w^T` for `u1, u2` in `C2` and `w` a canonical
    /// leader of `C1 / C2`, all lifted to integer vectors.
    pub cross_terms_divisible: bool,
}

impl SplitReport {
    pub fn holds(&self) -> bool {
        self.coset_forms_agree && self.cross_terms_divisible
    }
}

/// Evaluates the split form of [`qfd_divisibility`]: a sign-dependent part
/// on `C2 + y` and a sign-free cross-term part.
///
/// The split drops carries from mod-2 additions, so its conjunction can
/// disagree with [`qfd_divisibility`] from level 3 on.
pub fn qfd_divisibility_split(code: &CssCode, matrix: &[Vec<i64>], level: u32) -> Result<SplitReport> {
    let gate = qfd_gate(code, matrix, level)?;
    let reduced = match gate.kind() {
        GateKind::Qfd { matrix, .. } => matrix.clone(),
        _ => unreachable!("constructed as a quadratic-form gate"),
    };
    let modulus = 1u64 << level;
    let form = |v: &BitVec| gate.quadratic_form(v).expect("quadratic-form gate");

    let mut coset = code.c2().coset(code.y())?;
    let first = coset.next().map(|v| form(&v)).unwrap_or(0);
    let coset_forms_agree = coset.all(|v| form(&v) == first);

    // (u1 - u2) R w^T ranges over differences of u R w^T, and u = 0 is in C2,
    // so it suffices that 2^{l-1} divides u R w^T for every u.
    let leaders = CosetFamily::new(code.c2(), code.c1())?;
    check_cap((code.c2().dim() + leaders.len().trailing_zeros() as usize) as u32)?;
    let half = modulus >> 1;
    let bilinear = |u: &BitVec, w: &BitVec| -> u64 {
        let mut acc = 0u64;
        for i in u.support() {
            for j in w.support() {
                acc = acc.wrapping_add(reduced[i][j]);
            }
        }
        acc
    };
    let mut cross_terms_divisible = true;
    'outer: for w in leaders.leaders() {
        for u in code.c2().codewords()? {
            if half > 1 && bilinear(&u, w) % half != 0 {
                cross_terms_divisible = false;
                break 'outer;
            }
        }
    }
    Ok(SplitReport { coset_forms_agree, cross_terms_divisible })
}

/// Rotation preservation for `R_Z(pi / p)`: `2p | w(w) - 2 w(w * z)` for
/// every `w` in `C2` and `z` in `C1 + y`. The witness holds `(w, z)`.
pub fn rz_divisibility(code: &CssCode, p: u64) -> Result<DivisibilityReport> {
    if p == 0 {
        return Err(Error::Precondition("rotation denominator must be positive".into()));
    }
    check_cap((code.c1().dim() + code.c2().dim()) as u32)?;
    let modulus = 2 * p;
    for w in code.c2().codewords()? {
        let ww = w.weight() as i64;
        for z in code.c1().coset(code.y())? {
            let value = ww - 2 * w.overlap(&z) as i64;
            let residue = value.rem_euclid(modulus as i64) as u64;
            if residue != 0 {
                return Ok(DivisibilityReport::from_search(modulus, Some(Witness { first: w, second: z, residue })));
            }
        }
    }
    Ok(DivisibilityReport::from_search(modulus, None))
}

/// The two positive-sign conditions for `R_Z(pi / 2^{l-1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PositiveSignReport {
    /// `2^l | w(w)` for every `w` in `C2`.
    pub weights_divisible: bool,
    /// `2^{l-1} | w(w * z)` for every `w` in `C2`, `z` in `C1`.
    pub overlaps_divisible: bool,
}

impl PositiveSignReport {
    pub fn holds(&self) -> bool {
        self.weights_divisible && self.overlaps_divisible
    }
}

/// Positive-sign conditions, decided without enumerating codewords.
///
/// Expanding `w = sum_S a` and `z = sum_T b` over basis rows by
/// inclusion-exclusion, `w(w * z)` is a sum of `(-2)^{|S'|+|T'|-2}` times
/// overlaps of row products, and Moebius inversion shows the converse, so
/// `2^e | w(w * z)` everywhere iff `2^{e-|S|-|T|+2}` divides the weight of
/// `prod_S a * prod_T b` for all nonempty `S`, `T`.
pub fn positive_sign_pi2l(code: &CssCode, level: u32) -> Result<PositiveSignReport> {
    if !code.y().is_zero() {
        return Err(Error::Precondition("positive-sign conditions need y = 0".into()));
    }
    if level == 0 {
        return Err(Error::Precondition("level must be at least 1".into()));
    }
    let weights_divisible = code.c2().weights_divisible_by_pow2(level);
    let overlaps_divisible = overlaps_divisible_by_pow2(code.c2(), code.c1(), level - 1);
    Ok(PositiveSignReport { weights_divisible, overlaps_divisible })
}

/// `2^e | w(a * b)` for every `a` in `left` and `b` in `right`.
pub fn overlaps_divisible_by_pow2(left: &BinaryCode, right: &BinaryCode, e: u32) -> bool {
    if e == 0 || left.dim() == 0 || right.dim() == 0 {
        return true;
    }
    // Rows tagged by side; a product is checked once both sides are present.
    let rows: Vec<(u64, bool)> = left
        .basis()
        .iter()
        .map(|r| (r.bits(), true))
        .chain(right.basis().iter().map(|r| (r.bits(), false)))
        .collect();
    fn rec(rows: &[(u64, bool)], start: usize, taken: u32, prod: u64, sides: (bool, bool), e: u32) -> bool {
        for (i, &(bits, is_left)) in rows.iter().enumerate().skip(start) {
            let p = prod & bits;
            let t = taken + 1;
            let sides = (sides.0 || is_left, sides.1 || !is_left);
            if sides.0 && sides.1 {
                // need 2^{e - t + 2} | weight
                let need = e + 2 - t;
                let weight = p.count_ones() as u64;
                let bad = match 1u64.checked_shl(need) {
                    Some(m) => !weight.is_multiple_of(m),
                    None => weight != 0,
                };
                if bad {
                    return false;
                }
            }
            if t < e + 1 && p != 0 && !rec(rows, i + 1, t, p, sides, e) {
                return false;
            }
        }
        true
    }
    rec(&rows, 0, 0, u64::MAX, (false, false), e)
}

/// Largest `l` such that the Reed-Muller CSS code with `C1 = RM(r1, m)`,
/// `C2 = RM(r2, m)` is preserved by `R_Z(pi / 2^{l-1})`.
pub fn rm_max_level(r1: usize, r2: usize, m: usize) -> Result<u32> {
    if r1 == 0 || r2 >= r1 || r1 > m {
        return Err(Error::Precondition(format!("need 0 <= r2 < r1 <= m, got ({r1}, {r2}, {m})")));
    }
    let first = (m - r2 - 1) / r1 + 1;
    let level = if r2 == 0 { (m - 1) / r1 + 1 } else { first.min((m - r1) / r2 + 1) };
    Ok(level as u32)
}

/// The Reed-Muller CSS code `C1 = RM(r1, m)`, `C2 = RM(r2, m)` with trivial
/// signs, optionally punctured.
pub fn build_rm_css(r1: usize, r2: usize, m: usize, punctured: bool) -> Result<CssCode> {
    rm_css(r1, r2, m, punctured)
}

/// Per-word outcome of the trigonometric check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrigReport {
    pub holds: bool,
    /// First X-stabilizer word whose identity fails.
    pub failing_word: Option<BitVec>,
    pub max_relative_error: f64,
}

/// Trigonometric criterion for `R_Z(theta)`: for every nonzero `w` in `C2`,
/// `sum_z eps_z (i tan theta)^{w(z)} = (sec theta)^{w(w)}` where `z` runs
/// over the Z-stabilizers supported inside `w` and `eps_z = (-1)^{z.y}`.
///
/// Compared with relative tolerance `1e-9`. Angles where `cos theta`
/// vanishes are unsupported.
pub fn trig_condition(code: &CssCode, theta: f64) -> Result<TrigReport> {
    let cos = theta.cos();
    if cos.abs() < 1e-12 {
        return Err(Error::Unsupported(format!(
            "theta = {theta} is a pole of sec; use the generator-coefficient check instead"
        )));
    }
    check_cap(code.c2().dim() as u32)?;
    let it = Complex64::new(0.0, theta.tan());
    let sec = 1.0 / cos;
    let y = code.y();
    let mut report = TrigReport { holds: true, failing_word: None, max_relative_error: 0.0 };
    for w in code.c2().codewords()?.filter(|w| !w.is_zero()) {
        let inside = code.c1_perp().supported_within(&w)?;
        let mut lhs = Complex64::new(0.0, 0.0);
        for z in inside.codewords()? {
            let sign = if z.dot(&y) { -1.0 } else { 1.0 };
            lhs += it.powu(z.weight()) * sign;
        }
        let rhs = sec.powi(w.weight() as i32);
        let err = (lhs - rhs).norm() / rhs.abs().max(1.0);
        report.max_relative_error = report.max_relative_error.max(err);
        if err > TOL && report.holds {
            report.holds = false;
            report.failing_word = Some(w);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::coeffs::{gencoeffs_qfd, gencoeffs_rz};
    use crate::css::{builtin, four_two_two, random_css, rm15, steane};
    use crate::gates::block_diagonal;

    fn v(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    fn cz_pair() -> Vec<Vec<i64>> {
        block_diagonal(&[vec![0, 1], vec![1, 0]], 2)
    }

    #[test]
    fn quadratic_form_examples() {
        let code = four_two_two(v("0000")).unwrap();
        assert!(qfd_divisibility(&code, &cz_pair(), 2).unwrap().holds);
        let cp = qfd_divisibility(&code, &cz_pair(), 3).unwrap();
        let w = cp.witness.unwrap();
        let gate = DiagonalGate::qfd(&cz_pair(), 3).unwrap();
        let diff = gate.quadratic_form(&w.first).unwrap() as i64 - gate.quadratic_form(&w.second).unwrap() as i64;
        assert_ne!(diff.rem_euclid(8), 0);
        assert!(code.c2().contains(&(w.first ^ w.second)));
        assert!(qfd_divisibility(&code, &vec![vec![0; 4]; 4], 4).unwrap().holds);
        let split = qfd_divisibility_split(&code, &cz_pair(), 2).unwrap();
        assert_eq!((split.coset_forms_agree, split.cross_terms_divisible), (true, true));
    }

    #[test]
    fn cross_terms_ignore_signs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let code = random_css(&mut rng, 6).unwrap();
            let m: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| ((i * 7 + j * 7 + i * j) % 8) as i64).collect()).collect();
            let a = qfd_divisibility_split(&code, &m, 3).unwrap();
            let b = qfd_divisibility_split(&code.with_y(BitVec::zeros(6).unwrap()).unwrap(), &m, 3).unwrap();
            assert_eq!(a.cross_terms_divisible, b.cross_terms_divisible);
        }
    }

    #[test]
    fn rotation_divisibility_examples() {
        assert!(rz_divisibility(&steane(), 2).unwrap().holds);
        let r = rz_divisibility(&steane(), 4).unwrap();
        let w = r.witness.unwrap();
        assert_ne!((w.first.weight() as i64 - 2 * w.first.overlap(&w.second) as i64).rem_euclid(8), 0);
        assert!(rz_divisibility(&rm15(), 4).unwrap().holds);
        assert!(rz_divisibility(&builtin("832").unwrap(), 4).unwrap().holds);
        assert!(rz_divisibility(&steane(), 0).is_err());
    }

    #[test]
    fn positive_sign_examples() {
        let c832 = builtin("832").unwrap();
        assert!(positive_sign_pi2l(&c832, 3).unwrap().holds());
        assert!(!positive_sign_pi2l(&c832, 4).unwrap().holds());
        let s = positive_sign_pi2l(&steane(), 3).unwrap();
        assert!(!s.weights_divisible);
        assert!(positive_sign_pi2l(&four_two_two(v("0001")).unwrap(), 2).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let code = random_css(&mut rng, 8).unwrap().with_y(BitVec::zeros(8).unwrap()).unwrap();
            // Level 1 only asks for even X-stabilizer weights.
            let even = code.c2().codewords().unwrap().all(|w| w.weight() % 2 == 0);
            assert_eq!(positive_sign_pi2l(&code, 1).unwrap().holds(), even);
            for l in 1..=4 {
                let exact = positive_sign_pi2l(&code, l).unwrap().holds();
                assert_eq!(exact, rz_divisibility(&code, 1 << (l - 1)).unwrap().holds, "l = {l}");
            }
        }
    }

    #[test]
    fn overlap_criterion_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let n = rng.gen_range(2..=12);
            let (ga, gb) = (rng.gen_range(1..4), rng.gen_range(1..5));
            let a = crate::css::random_code(&mut rng, n, ga).unwrap();
            let b = crate::css::random_code(&mut rng, n, gb).unwrap();
            for e in 0..4u32 {
                let brute = a
                    .codewords()
                    .unwrap()
                    .all(|x| b.codewords().unwrap().all(|z| x.overlap(&z) % (1 << e) == 0));
                assert_eq!(overlaps_divisible_by_pow2(&a, &b, e), brute);
            }
        }
    }

    #[test]
    fn reed_muller_levels() {
        assert_eq!(rm_max_level(1, 0, 3).unwrap(), 3);
        assert_eq!(rm_max_level(2, 1, 4).unwrap(), 2);
        for (r, m) in [(1, 2), (1, 4), (2, 4), (1, 5)] {
            assert_eq!(rm_max_level(r, r - 1, m).unwrap() as usize, m / r);
        }
        assert!(rm_max_level(1, 1, 3).is_err());
        assert!(rm_max_level(0, 0, 3).is_err());
        let code = build_rm_css(1, 0, 2, false).unwrap();
        assert_eq!((code.n(), code.k()), (4, 2));
        for m in 2..=4 {
            for r1 in 1..=m {
                for r2 in 0..r1 {
                    let code = build_rm_css(r1, r2, m, false).unwrap();
                    let top = rm_max_level(r1, r2, m).unwrap();
                    for l in 1..=top + 1 {
                        let table = gencoeffs_rz(&code, PI / (1u64 << (l - 1)) as f64).unwrap();
                        assert_eq!(table.preserves(), l <= top, "({r1},{r2},{m}) l={l}");
                        assert_eq!(positive_sign_pi2l(&code, l).unwrap().holds(), l <= top);
                    }
                }
            }
        }
    }

    #[test]
    fn trig_examples() {
        assert!(trig_condition(&rm15(), PI / 4.0).unwrap().holds);
        assert!(!trig_condition(&steane(), PI / 4.0).unwrap().holds);
        assert!(matches!(trig_condition(&steane(), PI / 2.0), Err(Error::Unsupported(_))));
        assert!(trig_condition(&steane(), 0.0).unwrap().holds);
        // Approaching the pole, the Steane identity error shrinks to zero.
        let e1 = trig_condition(&steane(), PI / 2.0 - 1e-2).unwrap().max_relative_error;
        let e2 = trig_condition(&steane(), PI / 2.0 - 1e-3).unwrap().max_relative_error;
        assert!(e2 < e1);
    }

    #[test]
    fn criteria_agree_with_sum_of_squares() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let n = rng.gen_range(2..=8);
            let code = random_css(&mut rng, n).unwrap();
            let p = [1u64, 2, 4, 8][rng.gen_range(0..4)];
            let theta = PI / p as f64;
            let verdict = gencoeffs_rz(&code, theta).unwrap().preserves();
            assert_eq!(rz_divisibility(&code, p).unwrap().holds, verdict);
            if p != 2 {
                assert_eq!(trig_condition(&code, theta).unwrap().holds, verdict);
            }
            let theta = rng.gen_range(0.1..1.4);
            assert_eq!(trig_condition(&code, theta).unwrap().holds, gencoeffs_rz(&code, theta).unwrap().preserves());
            let level = rng.gen_range(1..=4);
            let mut m = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in i..n {
                    let x = rng.gen_range(0..1i64 << level);
                    m[i][j] = x;
                    m[j][i] = x;
                }
            }
            let table = gencoeffs_qfd(&code, &m, level).unwrap();
            assert_eq!(qfd_divisibility(&code, &m, level).unwrap().holds, table.preserves());
            if level <= 2 {
                assert_eq!(qfd_divisibility_split(&code, &m, level).unwrap().holds(), table.preserves());
            }
        }
    }

    #[test]
    fn split_misses_carries_from_level_three() {
        // XOR is not integer addition: the dropped terms carry a factor 4.
        let code = CssCode::new(3, &[v("101")], &[v("010")], v("000"), v("010")).unwrap();
        let m = vec![vec![4, 1, 0], vec![1, 0, 1], vec![0, 1, 0]];
        assert!(!qfd_divisibility(&code, &m, 3).unwrap().holds);
        assert!(qfd_divisibility_split(&code, &m, 3).unwrap().holds());
        assert!(!gencoeffs_qfd(&code, &m, 3).unwrap().preserves());
        for low in [1, 2] {
            assert_eq!(
                qfd_divisibility(&code, &m, low).unwrap().holds,
                qfd_divisibility_split(&code, &m, low).unwrap().holds()
            );
        }
    }
}
