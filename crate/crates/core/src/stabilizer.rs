//! General stabilizer codes: generator coefficients over `T^perp / J`,
//! preservation, and conversion of codes with heavy Z-stabilizers to CSS
//! codes with identical tables.

use rand::Rng;

use crate::coeffs::{Frame, GenCoeffTable, Route};
use crate::css::{canonical_rep, random_vector, CssCode, PauliOp};
use crate::f2codes::{check_cap, solve_dot_system, BinaryCode, BitVec};
use crate::gates::DiagonalGate;
use crate::{Error, Result};

/// A stabilizer code split into pure-X rows `K`, pure-Z rows `J` and mixed
/// rows `D` whose span contains no pure element.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliOp>,
    pure_x: Vec<PauliOp>,
    pure_z: Vec<PauliOp>,
    mixed: Vec<PauliOp>,
    y: BitVec,
    logical_rows: Option<(Vec<BitVec>, Vec<BitVec>)>,
}

fn symplectic_vector(op: &PauliOp) -> Result<BitVec> {
    op.a.concat(&op.b)
}

/// Row-reduces `rows` on the part selected by `key`; rows whose key part
/// vanishes span the subgroup where that part is zero.
fn vanishing_part(rows: &[PauliOp], key: impl Fn(&PauliOp) -> BitVec) -> Vec<PauliOp> {
    let mut rows = rows.to_vec();
    let mut rank = 0;
    let n = rows.first().map_or(0, PauliOp::len);
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| key(&rows[i]).get(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && key(row).get(col) {
                *row = row.mul(&pivot);
            }
        }
        rank += 1;
    }
    rows.split_off(rank)
}

impl StabilizerCode {
    /// Validates Hermiticity, commutation and independence, then splits the
    /// group into `K`, `J` and `D`.
    pub fn from_generators(n: usize, generators: &[PauliOp]) -> Result<Self> {
        for g in generators {
            if g.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: g.len() });
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidCode(format!("generator {g} is not Hermitian")));
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if let Some(h) = generators[i + 1..].iter().find(|h| !g.commutes_with(h)) {
                return Err(Error::InvalidCode(format!("generators {g} and {h} anticommute")));
            }
        }
        let vectors = generators.iter().map(symplectic_vector).collect::<Result<Vec<_>>>()?;
        let group = BinaryCode::from_generators(2 * n, &vectors)?;
        if group.dim() != generators.len() {
            return Err(Error::InvalidCode("generators are not independent".into()));
        }
        if group.dim() >= n {
            return Err(Error::InvalidCode("code encodes no logical qubits".into()));
        }
        let pure_z = vanishing_part(generators, |g| g.a);
        let pure_x = vanishing_part(generators, |g| g.b);
        let mut span: Vec<BitVec> =
            pure_x.iter().chain(&pure_z).map(symplectic_vector).collect::<Result<Vec<_>>>()?;
        let mut mixed = Vec::new();
        for (g, v) in generators.iter().zip(&vectors) {
            if !BinaryCode::from_generators(2 * n, &span)?.contains(v) {
                span.push(*v);
                mixed.push(*g);
            }
        }
        let z_rows: Vec<BitVec> = pure_z.iter().map(|g| g.b).collect();
        let signs: Vec<bool> = pure_z.iter().map(PauliOp::is_negative).collect();
        let y = solve_dot_system(n, &z_rows, &signs)?
            .ok_or_else(|| Error::InvalidCode("Z-stabilizer signs are inconsistent".into()))?;
        let support = BinaryCode::from_generators(n, &z_rows)?.dual();
        let y = canonical_rep(&support, y);
        Ok(Self { n, generators: generators.to_vec(), pure_x, pure_z, mixed, y, logical_rows: None })
    }

    /// One generator per line as `x-part|z-part` with an optional leading `-`;
    /// blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let gens = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(PauliOp::parse_symplectic)
            .collect::<Result<Vec<_>>>()?;
        let n = gens.first().map(PauliOp::len).ok_or_else(|| Error::Parse("no stabilizer generators".into()))?;
        Self::from_generators(n, &gens)
    }

    /// The same code viewed as a stabilizer code, keeping its logical rows.
    pub fn from_css(code: &CssCode) -> Result<Self> {
        let mut out = Self::from_generators(code.n(), &code.stabilizer_generators())?;
        out.logical_rows = Some((code.x_logical_rows().to_vec(), code.z_logical_rows().to_vec()));
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    /// Signed basis of the pure-X stabilizers `K`.
    pub fn pure_x(&self) -> &[PauliOp] {
        &self.pure_x
    }

    /// Signed basis of the pure-Z stabilizers `J`.
    pub fn pure_z(&self) -> &[PauliOp] {
        &self.pure_z
    }

    /// Mixed rows `D`.
    pub fn mixed(&self) -> &[PauliOp] {
        &self.mixed
    }

    pub fn is_css(&self) -> bool {
        self.mixed.is_empty()
    }

    /// Sign vector of the Z-stabilizers, reduced modulo `J^perp`.
    pub fn y(&self) -> BitVec {
        self.y
    }

    /// `J`.
    pub fn z_stabilizer_code(&self) -> Result<BinaryCode> {
        BinaryCode::from_generators(self.n, &self.pure_z.iter().map(|g| g.b).collect::<Vec<_>>())
    }

    /// `T = <K, D_x>`, the X-parts of the stabilizer group.
    pub fn x_part_code(&self) -> Result<BinaryCode> {
        BinaryCode::from_generators(self.n, &self.pure_x.iter().chain(&self.mixed).map(|g| g.a).collect::<Vec<_>>())
    }

    /// Frame indexing rows by `F2^n / T^perp` and columns by `T^perp / J`.
    pub fn frame(&self) -> Result<Frame> {
        let frame = Frame::new(self.z_stabilizer_code()?, self.x_part_code()?.dual(), self.y)?;
        Ok(match &self.logical_rows {
            Some((x, z)) => frame.with_logical_rows(x.clone(), z.clone()),
            None => frame,
        })
    }

    /// Minimum Pauli weight of a logical operator: an element of the
    /// normalizer outside the group.
    pub fn distance(&self) -> Result<u32> {
        let n = self.n;
        let swapped: Vec<BitVec> = self
            .generators
            .iter()
            .map(|g| g.b.concat(&g.a))
            .collect::<Result<Vec<_>>>()?;
        let normalizer = BinaryCode::from_generators(2 * n, &swapped)?.dual();
        let group =
            BinaryCode::from_generators(2 * n, &self.generators.iter().map(symplectic_vector).collect::<Result<Vec<_>>>()?)?;
        check_cap(normalizer.dim() as u32)?;
        let low = (1u64 << n) - 1;
        normalizer
            .codewords()?
            .filter(|v| !group.contains(v))
            .map(|v| {
                let a = BitVec::from_bits(v.bits() & low, n).expect("valid length");
                let b = BitVec::from_bits(v.bits() >> n, n).expect("valid length");
                crate::css::pauli_weight(&a, &b)
            })
            .min()
            .ok_or_else(|| Error::InvalidCode("code has no logical operators".into()))
    }

    /// Converts to the CSS code whose X-stabilizers are `<K, D_x>` and
    /// whose Z-stabilizers are `J`, after checking that every nonzero
    /// element of `J` has weight at least `d`.
    pub fn to_css(&self, d: u32) -> Result<CssCode> {
        let j = self.z_stabilizer_code()?;
        if let Some(light) = j.lightest_word()? {
            if light.weight() < d {
                return Err(Error::Precondition(format!(
                    "Z-stabilizer {light} has weight {} below the distance {d}",
                    light.weight()
                )));
            }
        }
        let x_rows: Vec<BitVec> = self.pure_x.iter().chain(&self.mixed).map(|g| g.a).collect();
        let x_signs: Vec<bool> = self.pure_x.iter().map(PauliOp::is_negative).chain(self.mixed.iter().map(|_| false)).collect();
        let r = solve_dot_system(self.n, &x_rows, &x_signs)?
            .ok_or_else(|| Error::InvalidCode("X-stabilizer signs are inconsistent".into()))?;
        let z_rows: Vec<BitVec> = self.pure_z.iter().map(|g| g.b).collect();
        let code = CssCode::new(self.n, &x_rows, &z_rows, r, self.y)?;
        match &self.logical_rows {
            Some((x, z)) => code.with_logicals(x.clone(), z.clone()),
            None => Ok(code),
        }
    }
}

/// Generator-coefficient table of a stabilizer code.
pub fn stab_gencoeffs(code: &StabilizerCode, gate: &DiagonalGate) -> Result<GenCoeffTable> {
    GenCoeffTable::build(&code.frame()?, gate, Route::for_gate(gate))
}

/// Whether the gate preserves the code space.
pub fn stab_preserves(table: &GenCoeffTable) -> bool {
    table.preserves()
}

fn random_pauli<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PauliOp {
    let phase = if rng.gen_bool(0.5) { 2 } else { 0 };
    PauliOp::new(random_vector(rng, n), random_vector(rng, n), phase).expect("equal lengths")
}

/// A random stabilizer code with `m < n` independent commuting generators
/// and random signs.
pub fn random_stabilizer_code<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Result<StabilizerCode> {
    if m >= n {
        return Err(Error::Precondition(format!("need fewer than {n} generators, got {m}")));
    }
    let mut gens: Vec<PauliOp> = Vec::with_capacity(m);
    let mut span: Vec<BitVec> = Vec::with_capacity(m);
    while gens.len() < m {
        let g = random_pauli(rng, n);
        let v = symplectic_vector(&g)?;
        if v.is_zero() || !gens.iter().all(|h| h.commutes_with(&g)) {
            continue;
        }
        if BinaryCode::from_generators(2 * n, &span)?.contains(&v) {
            continue;
        }
        span.push(v);
        gens.push(g);
    }
    StabilizerCode::from_generators(n, &gens)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::coeffs::{gencoeffs, gencoeffs_direct};
    use crate::css::{builtin, pauli_weight, random_css};

    const FIVE_QUBIT: &str = "10010|01100\n01001|00110\n10100|00011\n01010|10001";

    fn random_gate<R: Rng>(rng: &mut R, n: usize) -> DiagonalGate {
        if rng.gen_bool(0.5) {
            DiagonalGate::rz(n, rng.gen_range(0.0..2.0 * PI)).unwrap()
        } else {
            let phases = (0..1 << n).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))).collect();
            DiagonalGate::phase_table(n, phases).unwrap()
        }
    }

    #[test]
    fn css_codes_reduce_to_css_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut codes: Vec<CssCode> = ["steane", "422", "832", "rm15"].iter().map(|s| builtin(s).unwrap()).collect();
        codes.push(builtin("422").unwrap().with_y(BitVec::parse("0001").unwrap()).unwrap());
        for _ in 0..10 {
            let n = rng.gen_range(3..=8);
            codes.push(random_css(&mut rng, n).unwrap());
        }
        for code in codes {
            let stab = StabilizerCode::from_css(&code).unwrap();
            assert!(stab.is_css());
            assert_eq!(stab.y(), code.y());
            let gate = random_gate(&mut rng, code.n());
            let a = stab_gencoeffs(&stab, &gate).unwrap();
            let b = gencoeffs(&code, &gate).unwrap();
            assert_eq!(a.values(), b.values());
            assert_eq!(stab_preserves(&a), b.preserves());
            assert_eq!(stab.to_css(1).unwrap(), code);
        }
    }

    #[test]
    fn five_qubit_code() {
        let code = StabilizerCode::parse(FIVE_QUBIT).unwrap();
        assert_eq!((code.k(), code.mixed().len(), code.pure_x().len(), code.pure_z().len()), (1, 4, 0, 0));
        assert_eq!(code.distance().unwrap(), 3);
        let table = stab_gencoeffs(&code, &DiagonalGate::identity(5).unwrap()).unwrap();
        assert!((table.get(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(table.values().iter().skip(1).all(|v| v.norm() < 1e-12));
        let css = code.to_css(3).unwrap();
        assert!(css.z_distance().unwrap() >= 3);
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gate = random_gate(&mut rng, 5);
            let a = stab_gencoeffs(&code, &gate).unwrap();
            assert!(a.sum_rule().holds());
            assert!(a.max_diff(&gencoeffs_direct(&css, &gate).unwrap()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn six_qubit_code_with_one_mixed_row() {
        // A [[6,1,2]] code with two pure-X rows, two pure-Z rows and one mixed row.
        let text = "001011|100011\n001011|101001\n011111|101001\n-101010|011101\n-011111|001010";
        let code = StabilizerCode::parse(text).unwrap();
        assert_eq!(code.mixed().len(), 1);
        let d = code.distance().unwrap();
        assert_eq!(d, 2);
        let css = code.to_css(d).unwrap();
        assert!(css.z_distance().unwrap() >= d);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let gate = random_gate(&mut rng, 6);
            let a = stab_gencoeffs(&code, &gate).unwrap();
            assert!(a.max_diff(&gencoeffs_direct(&css, &gate).unwrap()).unwrap() < 1e-9);
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(StabilizerCode::parse("10|00\n00|10").is_err());
        assert!(StabilizerCode::parse("10|00\n10|00").is_err());
        assert!(StabilizerCode::parse("100|000\n000|011\n010|000").is_err());
        let light = StabilizerCode::parse("000|110").unwrap();
        assert!(matches!(light.to_css(3), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_codes_keep_the_sum_rule_and_convert() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut converted = 0;
        for _ in 0..40 {
            let n = rng.gen_range(3..=7);
            let m = rng.gen_range(1..n);
            let code = random_stabilizer_code(&mut rng, n, m).unwrap();
            let gate = random_gate(&mut rng, n);
            let table = stab_gencoeffs(&code, &gate).unwrap();
            assert!(table.sum_rule().holds());
            let d = code.distance().unwrap();
            if let Ok(css) = code.to_css(d) {
                converted += 1;
                assert!(css.z_distance().unwrap() >= d);
                assert_eq!(css.k(), code.k());
                assert!(table.max_diff(&gencoeffs_direct(&css, &gate).unwrap()).unwrap() < 1e-9);
            }
        }
        assert!(converted > 10);
    }

    #[test]
    fn pauli_weight_matches_factor_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let (s, t) = (random_vector(&mut rng, n), random_vector(&mut rng, n));
            let count = (0..n).filter(|&i| s.get(i) || t.get(i)).count() as u32;
            assert_eq!(pauli_weight(&s, &t), count);
        }
    }
}

