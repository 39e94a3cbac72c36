use num_complex::Complex64;

use super::pauli::PauliOp;
use super::state::StateVector;
use crate::f2codes::{
    check_cap, coset_leader, invert_square, solve_dot_system, BinaryCode, BitVec, CosetFamily,
};
use crate::{Error, Result};

/// A CSS code with arbitrary stabilizer signs.
///
/// X-stabilizers are `(-1)^{a.r} E(a, 0)` for `a` in `C2`, Z-stabilizers are
/// `(-1)^{b.y} E(0, b)` for `b` in `C1^perp`. Encoded basis states are
/// `|alpha> ~ sum_{x in C2} (-1)^{x.r} |alpha W + x + y>`, where the rows `w_i`
/// of `W` span `C1/C2` and the Z-logical rows `gamma_i` span `C2^perp/C1^perp`
/// with `W Gamma^T = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct CssCode {
    n: usize,
    c2: BinaryCode,
    c1_perp: BinaryCode,
    c1: BinaryCode,
    c2_perp: BinaryCode,
    r: BitVec,
    y: BitVec,
    x_logicals: Vec<BitVec>,
    z_logicals: Vec<BitVec>,
}

impl CssCode {
    /// Builds a code from X-generators (spanning `C2`), Z-generators (spanning
    /// `C1^perp`) and the two character vectors.
    pub fn new(n: usize, x_generators: &[BitVec], z_generators: &[BitVec], r: BitVec, y: BitVec) -> Result<Self> {
        for a in x_generators {
            for b in z_generators {
                if a.dot(b) {
                    return Err(Error::InvalidCode(format!("X generator {a} and Z generator {b} anticommute")));
                }
            }
        }
        let c2 = BinaryCode::from_generators(n, x_generators)?;
        let c1_perp = BinaryCode::from_generators(n, z_generators)?;
        Self::from_codes(c2, c1_perp, r, y)
    }

    pub fn from_codes(c2: BinaryCode, c1_perp: BinaryCode, r: BitVec, y: BitVec) -> Result<Self> {
        let n = c2.len();
        if c1_perp.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: c1_perp.len() });
        }
        for v in [&r, &y] {
            if v.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: v.len() });
            }
        }
        let c1 = c1_perp.dual();
        if !c2.is_subcode_of(&c1) {
            let (a, b) = first_anticommuting(&c2, &c1_perp);
            return Err(Error::InvalidCode(format!("X generator {a} and Z generator {b} anticommute")));
        }
        if c1.dim() == c2.dim() {
            return Err(Error::InvalidCode("code encodes no logical qubits".into()));
        }
        let c2_perp = c2.dual();
        let r = canonical_rep(&c2_perp, r);
        let y = canonical_rep(&c1, y);
        let (x_logicals, z_logicals) = default_logicals(&c1, &c2, &c2_perp, &c1_perp);
        Ok(Self { n, c2, c1_perp, c1, c2_perp, r, y, x_logicals, z_logicals })
    }

    /// Replaces the logical generator rows. `x_rows` must lie in `C1`,
    /// `z_rows` in `C2^perp`, and `x_rows . z_rows^T` must be the identity.
    pub fn with_logicals(mut self, x_rows: Vec<BitVec>, z_rows: Vec<BitVec>) -> Result<Self> {
        let k = self.k();
        if x_rows.len() != k || z_rows.len() != k {
            return Err(Error::InvalidCode(format!(
                "need {k} logical rows of each type, got {} and {}",
                x_rows.len(),
                z_rows.len()
            )));
        }
        for (i, w) in x_rows.iter().enumerate() {
            if !self.c1.contains(w) {
                return Err(Error::InvalidCode(format!("X-logical row {w} is not in C1")));
            }
            for (j, g) in z_rows.iter().enumerate() {
                if !self.c2_perp.contains(g) {
                    return Err(Error::InvalidCode(format!("Z-logical row {g} is not in C2^perp")));
                }
                if w.dot(g) != (i == j) {
                    return Err(Error::InvalidCode(format!(
                        "logical rows {w} and {g} violate the pairing W Gamma^T = I"
                    )));
                }
            }
        }
        self.x_logicals = x_rows;
        self.z_logicals = z_rows;
        Ok(self)
    }

    /// Solves for the character vectors from a list of signed pure-X and
    /// pure-Z generators such as `-ZZI`.
    pub fn from_signed_generators(n: usize, generators: &[PauliOp]) -> Result<Self> {
        let mut xs = Vec::new();
        let mut zs = Vec::new();
        for g in generators {
            if g.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: g.len() });
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidCode(format!("generator {g} is not Hermitian")));
            }
            match (g.a.is_zero(), g.b.is_zero()) {
                (false, true) => xs.push((g.a, g.is_negative())),
                (true, false) => zs.push((g.b, g.is_negative())),
                _ => return Err(Error::InvalidCode(format!("generator {g} is neither pure X nor pure Z"))),
            }
        }
        let solve = |rows: &[(BitVec, bool)], kind: &str| -> Result<BitVec> {
            let vecs: Vec<BitVec> = rows.iter().map(|r| r.0).collect();
            let rhs: Vec<bool> = rows.iter().map(|r| r.1).collect();
            solve_dot_system(n, &vecs, &rhs)?
                .ok_or_else(|| Error::InvalidCode(format!("{kind} generator signs are inconsistent (-I in the group)")))
        };
        let r = solve(&xs, "X")?;
        let y = solve(&zs, "Z")?;
        let xg: Vec<BitVec> = xs.iter().map(|r| r.0).collect();
        let zg: Vec<BitVec> = zs.iter().map(|r| r.0).collect();
        Self::new(n, &xg, &zg, r, y)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of logical qubits, `dim C1 - dim C2`.
    #[inline]
    pub fn k(&self) -> usize {
        self.c1.dim() - self.c2.dim()
    }

    pub fn c1(&self) -> &BinaryCode {
        &self.c1
    }

    pub fn c2(&self) -> &BinaryCode {
        &self.c2
    }

    pub fn c1_perp(&self) -> &BinaryCode {
        &self.c1_perp
    }

    pub fn c2_perp(&self) -> &BinaryCode {
        &self.c2_perp
    }

    /// X character vector, canonical leader of its coset of `C2^perp`.
    pub fn r(&self) -> BitVec {
        self.r
    }

    /// Z character vector, canonical leader of its coset of `C1`.
    pub fn y(&self) -> BitVec {
        self.y
    }

    /// Rows `w_i` of the `C1/C2` coset generator matrix.
    pub fn x_logical_rows(&self) -> &[BitVec] {
        &self.x_logicals
    }

    /// Rows `gamma_i` of the `C2^perp/C1^perp` coset generator matrix.
    pub fn z_logical_rows(&self) -> &[BitVec] {
        &self.z_logicals
    }

    /// Same code with a different Z character vector.
    pub fn with_y(&self, y: BitVec) -> Result<Self> {
        if y.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: y.len() });
        }
        Ok(Self { y: canonical_rep(&self.c1, y), ..self.clone() })
    }

    /// Same code with a different X character vector.
    pub fn with_r(&self, r: BitVec) -> Result<Self> {
        if r.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: r.len() });
        }
        Ok(Self { r: canonical_rep(&self.c2_perp, r), ..self.clone() })
    }

    /// X-syndrome cosets `F2^n / C2^perp`.
    pub fn syndrome_cosets(&self) -> Result<CosetFamily> {
        CosetFamily::new(&self.c2_perp, &BinaryCode::full(self.n)?)
    }

    /// Z-logical cosets `C2^perp / C1^perp`.
    pub fn logical_cosets(&self) -> Result<CosetFamily> {
        CosetFamily::new(&self.c1_perp, &self.c2_perp)
    }

    /// Logical label `alpha` of a vector `gamma` in `C2^perp`: `alpha_i = w_i . gamma`.
    pub fn logical_label(&self, gamma: &BitVec) -> BitVec {
        let mut alpha = BitVec::raw(0, self.k());
        for (i, w) in self.x_logicals.iter().enumerate() {
            alpha.set(i, w.dot(gamma));
        }
        alpha
    }

    /// `alpha Gamma`, the Z-logical vector of the label `alpha`.
    pub fn z_logical_vector(&self, alpha: &BitVec) -> BitVec {
        combine(&self.z_logicals, alpha, self.n)
    }

    /// `alpha W`, the X-logical vector of the label `alpha`.
    pub fn x_logical_vector(&self, alpha: &BitVec) -> BitVec {
        combine(&self.x_logicals, alpha, self.n)
    }

    /// Sign of `E(a, 0)` in the stabilizer group: `true` means `-1`.
    pub fn x_sign(&self, a: &BitVec) -> bool {
        a.dot(&self.r)
    }

    /// Sign attached to `E(0, b)`: `true` means `-1`.
    pub fn z_sign(&self, b: &BitVec) -> bool {
        b.dot(&self.y)
    }

    /// Signed generators: the X rows of `C2` then the Z rows of `C1^perp`.
    pub fn stabilizer_generators(&self) -> Vec<PauliOp> {
        let xs = self.c2.basis().iter().map(|a| PauliOp::x_type(*a, self.x_sign(a)));
        let zs = self.c1_perp.basis().iter().map(|b| PauliOp::z_type(*b, self.z_sign(b)));
        xs.chain(zs).collect()
    }

    /// Pairs `(Xbar_i, Zbar_i)` with `Xbar_i = E(w_i, 0)` and
    /// `Zbar_i = (-1)^{gamma_i . y} E(0, gamma_i)`.
    pub fn logical_paulis(&self) -> Vec<(PauliOp, PauliOp)> {
        self.x_logicals
            .iter()
            .zip(&self.z_logicals)
            .map(|(w, g)| (PauliOp::x_type(*w, false), PauliOp::z_type(*g, self.z_sign(g))))
            .collect()
    }

    /// Support of `|alpha>` as `(basis vector, amplitude)` pairs.
    pub fn encode_sparse(&self, alpha: &BitVec) -> Result<Vec<(BitVec, f64)>> {
        self.check_label(alpha)?;
        let shift = self.x_logical_vector(alpha) ^ self.y;
        let norm = (self.c2.dim() as f64 * -0.5).exp2();
        let out = self
            .c2
            .codewords()?
            .map(|x| (x ^ shift, if self.x_sign(&x) { -norm } else { norm }))
            .collect();
        Ok(out)
    }

    /// Dense encoded basis state `|alpha>`.
    pub fn encode(&self, alpha: &BitVec) -> Result<StateVector> {
        let mut s = StateVector::zero_vector(self.n)?;
        for (v, amp) in self.encode_sparse(alpha)? {
            s.amplitudes_mut()[v.bits() as usize] = Complex64::new(amp, 0.0);
        }
        Ok(s)
    }

    /// `sum_alpha c_alpha |alpha>` for `2^k` logical amplitudes.
    pub fn encode_superposition(&self, logical: &[Complex64]) -> Result<StateVector> {
        let k = self.k();
        if logical.len() != 1 << k {
            return Err(Error::LengthMismatch { expected: 1 << k, found: logical.len() });
        }
        let mut s = StateVector::zero_vector(self.n)?;
        for (idx, c) in logical.iter().enumerate() {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            for (v, amp) in self.encode_sparse(&BitVec::raw(idx as u64, k))? {
                s.amplitudes_mut()[v.bits() as usize] += c * amp;
            }
        }
        Ok(s)
    }

    /// `(1/|C2|) sum_{a in C2} (-1)^{a.mu} (-1)^{a.r} E(a, 0) |psi>`, the
    /// projector onto X-syndrome `mu` applied to `psi` (unnormalized).
    pub fn x_syndrome_projector_action(&self, mu: &BitVec, psi: &StateVector) -> Result<StateVector> {
        if mu.len() != self.n || psi.n() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: mu.len().max(psi.n()) });
        }
        check_cap(self.c2.dim() as u32)?;
        let mut out = StateVector::zero_vector(self.n)?;
        let scale = (self.c2.dim() as f64).exp2().recip();
        let amps = psi.amplitudes();
        for a in self.c2.codewords()? {
            let negative = a.dot(mu) ^ self.x_sign(&a);
            let c = if negative { -scale } else { scale };
            let out_amps = out.amplitudes_mut();
            for (idx, amp) in amps.iter().enumerate() {
                out_amps[idx ^ a.bits() as usize] += c * amp;
            }
        }
        Ok(out)
    }

    /// Projection onto the codespace (all stabilizers `+1`).
    pub fn codespace_projection(&self, psi: &StateVector) -> Result<StateVector> {
        let zero = BitVec::raw(0, self.n);
        let mut out = self.x_syndrome_projector_action(&zero, psi)?;
        let (c1, y) = (&self.c1, self.y);
        // Z-stabilizers fix exactly the basis vectors in C1 + y.
        out.apply_diagonal(|v| {
            if c1.contains(&(v ^ y)) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Ok(out)
    }

    /// Minimum weight of an X-logical operator (a word of `C1` outside `C2`).
    pub fn x_distance(&self) -> Result<u32> {
        min_weight_outside(&self.c1, &self.c2)
    }

    /// Minimum weight of a Z-logical operator (a word of `C2^perp` outside `C1^perp`).
    pub fn z_distance(&self) -> Result<u32> {
        min_weight_outside(&self.c2_perp, &self.c1_perp)
    }

    pub fn distance(&self) -> Result<u32> {
        Ok(self.x_distance()?.min(self.z_distance()?))
    }

    fn check_label(&self, alpha: &BitVec) -> Result<()> {
        if alpha.len() != self.k() {
            return Err(Error::LengthMismatch { expected: self.k(), found: alpha.len() });
        }
        Ok(())
    }
}

fn combine(rows: &[BitVec], alpha: &BitVec, n: usize) -> BitVec {
    rows.iter()
        .enumerate()
        .filter(|(i, _)| alpha.get(*i))
        .fold(BitVec::raw(0, n), |acc, (_, r)| acc ^ *r)
}

/// Canonical coset leader when the coset is enumerable, otherwise the
/// reduced-echelon representative.
pub(crate) fn canonical_rep(code: &BinaryCode, v: BitVec) -> BitVec {
    coset_leader(code, &v).unwrap_or_else(|_| code.reduce(v))
}

fn first_anticommuting(c2: &BinaryCode, c1_perp: &BinaryCode) -> (BitVec, BitVec) {
    for a in c2.basis() {
        for b in c1_perp.basis() {
            if a.dot(b) {
                return (*a, *b);
            }
        }
    }
    unreachable!("called only when some pair anticommutes")
}

/// Rows of `sup` independent modulo `sub`, each reduced modulo `sub`.
fn complement_rows(sup: &BinaryCode, sub: &BinaryCode) -> Vec<BitVec> {
    let mut span = sub.clone();
    let mut out = Vec::new();
    for row in sup.basis() {
        if !span.contains(row) {
            out.push(sub.reduce(*row));
            span = span.sum(&BinaryCode::from_generators(sup.len(), &[*row]).expect("same length")).expect("same length");
        }
    }
    out
}

/// Deterministic `W` and `Gamma` with `W Gamma^T = I`: `W` from the echelon
/// rows of `C1` outside `C2`, and `Gamma` obtained from a complement of
/// `C1^perp` in `C2^perp` by the inverse pairing matrix.
pub(crate) fn default_logicals(
    c1: &BinaryCode,
    c2: &BinaryCode,
    c2_perp: &BinaryCode,
    c1_perp: &BinaryCode,
) -> (Vec<BitVec>, Vec<BitVec>) {
    let w = complement_rows(c1, c2);
    let g0 = complement_rows(c2_perp, c1_perp);
    let k = w.len();
    let n = c1.len();
    let pairing: Vec<BitVec> = w
        .iter()
        .map(|wi| {
            let mut row = BitVec::raw(0, k);
            for (j, gj) in g0.iter().enumerate() {
                row.set(j, wi.dot(gj));
            }
            row
        })
        .collect();
    let inv = invert_square(&pairing).expect("pairing between C1/C2 and C2^perp/C1^perp is nondegenerate");
    // gamma_i = sum_j inv[j][i] g0_j
    let gamma = (0..k)
        .map(|i| {
            let v = (0..k).filter(|&j| inv[j].get(i)).fold(BitVec::raw(0, n), |acc, j| acc ^ g0[j]);
            c1_perp.reduce(v)
        })
        .collect();
    (w, gamma)
}

fn min_weight_outside(sup: &BinaryCode, sub: &BinaryCode) -> Result<u32> {
    let mut best = u32::MAX;
    for v in sup.codewords()? {
        if v.weight() < best && !sub.contains(&v) {
            best = v.weight();
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    fn steane() -> CssCode {
        let h = [v("1111000"), v("1100110"), v("1010101")];
        CssCode::new(7, &h, &h, BitVec::zeros(7).unwrap(), BitVec::zeros(7).unwrap()).unwrap()
    }

    fn four_two_two(y: &str) -> CssCode {
        let ones = [v("1111")];
        CssCode::new(4, &ones, &ones, v("0000"), v(y))
            .unwrap()
            .with_logicals(vec![v("0110"), v("0011")], vec![v("0011"), v("0110")])
            .unwrap()
    }

    #[test]
    fn steane_parameters() {
        let c = steane();
        assert_eq!((c.n(), c.k()), (7, 1));
        assert_eq!(c.distance().unwrap(), 3);
        assert!(c.x_logical_rows()[0].dot(&c.z_logical_rows()[0]));
    }

    #[test]
    fn anticommuting_generators_are_rejected() {
        let err = CssCode::new(3, &[v("110")], &[v("101")], v("000"), v("000")).unwrap_err();
        assert!(matches!(err, Error::InvalidCode(m) if m.contains("110") && m.contains("101")));
    }

    #[test]
    fn encoding_of_four_two_two() {
        let s = 0.5f64.sqrt();
        let c = four_two_two("0000");
        let zero = c.encode_sparse(&v("00")).unwrap();
        let mut got: Vec<(String, f64)> = zero.iter().map(|(b, a)| (b.to_string(), *a)).collect();
        got.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(got, vec![("0000".into(), s), ("1111".into(), s)]);

        let c = four_two_two("0001");
        assert_eq!(c.y(), v("0001"));
        let ten = c.encode(&v("10")).unwrap();
        assert!((ten.amplitude(&v("0111")).re - s).abs() < 1e-15);
        assert!((ten.amplitude(&v("1000")).re - s).abs() < 1e-15);
        assert!((ten.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn logical_operators_of_four_two_two() {
        let (x1, z1) = c_logical(&four_two_two("0000"), 0);
        assert_eq!(x1.to_string(), "+IXXI");
        assert_eq!(z1.to_string(), "+IIZZ");
        let (_, z1) = c_logical(&four_two_two("0001"), 0);
        assert_eq!(z1.to_string(), "-IIZZ");
    }

    fn c_logical(c: &CssCode, i: usize) -> (PauliOp, PauliOp) {
        c.logical_paulis()[i]
    }

    #[test]
    fn signed_generators_fix_character_vectors() {
        let gens = [PauliOp::parse_letters("-ZZI").unwrap(), PauliOp::parse_letters("IZZ").unwrap()];
        let c = CssCode::from_signed_generators(3, &gens).unwrap();
        assert_eq!(c.y(), v("100"));
        let zero = c.encode(&v("0")).unwrap();
        assert!((zero.amplitude(&v("100")).re - 1.0).abs() < 1e-15);
        // Zbar acts as -Z1 on the code space.
        let (_, zbar) = c.logical_paulis()[0];
        let z1 = PauliOp::parse_letters("-ZII").unwrap();
        for alpha in ["0", "1"] {
            let s = c.encode(&v(alpha)).unwrap();
            assert!(s.apply_pauli(&zbar).max_diff(&s.apply_pauli(&z1)) < 1e-15);
        }
        let bad = [PauliOp::parse_letters("-ZZ").unwrap(), PauliOp::parse_letters("ZZ").unwrap()];
        assert!(CssCode::from_signed_generators(2, &bad).is_err());
    }

    #[test]
    fn stabilizers_fix_encoded_states_and_logicals_act() {
        let h = [v("1111000"), v("1100110"), v("1010101")];
        let c = CssCode::new(7, &h, &h, v("1000000"), v("0000001")).unwrap();
        for alpha in ["0", "1"] {
            let s = c.encode(&v(alpha)).unwrap();
            for g in c.stabilizer_generators() {
                assert!(s.apply_pauli(&g).max_diff(&s) < 1e-14, "{g} on {alpha}");
            }
            let (xb, zb) = c.logical_paulis()[0];
            let flipped = c.encode(&(v(alpha) ^ v("1"))).unwrap();
            assert!(s.apply_pauli(&xb).max_diff(&flipped) < 1e-14);
            let mut expect = s.clone();
            if alpha == "1" {
                expect.scale(Complex64::new(-1.0, 0.0));
            }
            assert!(s.apply_pauli(&zb).max_diff(&expect) < 1e-14);
        }
    }

    #[test]
    fn syndrome_projectors_resolve_identity() {
        let c = four_two_two("0001");
        let amps: Vec<Complex64> = (0..16).map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.3).cos())).collect();
        let mut psi = StateVector::from_amplitudes(4, amps).unwrap();
        psi.normalize();
        let fam = c.syndrome_cosets().unwrap();
        assert_eq!(fam.len(), 2);
        let total: f64 = fam
            .leaders()
            .iter()
            .map(|mu| psi.inner(&c.x_syndrome_projector_action(mu, &psi).unwrap()).re)
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
        let code_state = c.encode(&v("11")).unwrap();
        let kept = c.x_syndrome_projector_action(&v("0000"), &code_state).unwrap();
        assert!(kept.max_diff(&code_state) < 1e-15);
        assert!(c.codespace_projection(&code_state).unwrap().max_diff(&code_state) < 1e-15);
    }
}
