use std::sync::atomic::{AtomicU64, Ordering};

use super::bitvec::{check_len, BitVec};
use crate::{Error, Result};

/// Default limit on the number of elements any single enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 22;

static ENUMERATION_CAP: AtomicU64 = AtomicU64::new(DEFAULT_ENUMERATION_CAP);

/// Current enumeration cap.
pub fn enumeration_cap() -> u64 {
    ENUMERATION_CAP.load(Ordering::Relaxed)
}

/// Overrides the enumeration cap for the whole process.
pub fn set_enumeration_cap(cap: u64) {
    ENUMERATION_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// Fails when a set of `2^log2_size` elements may not be enumerated.
pub fn check_cap(log2_size: u32) -> Result<()> {
    let cap = enumeration_cap();
    if log2_size >= 64 || (1u64 << log2_size) > cap {
        Err(Error::CapExceeded { log2_size, cap })
    } else {
        Ok(())
    }
}

/// A binary linear code stored by its reduced row echelon generator matrix.
///
/// The pivot of a row is its left-most nonzero coordinate. Rows are sorted by
/// pivot and every pivot column is zero outside its own row, which makes the
/// representation unique for a given subspace.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryCode {
    n: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl BinaryCode {
    /// Row space of the given generators (dependent rows are allowed).
    pub fn from_generators(n: usize, generators: &[BitVec]) -> Result<Self> {
        check_len(n)?;
        let mut basis: Vec<BitVec> = Vec::new();
        for g in generators {
            if g.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: g.len() });
            }
            let mut v = *g;
            for b in &basis {
                let p = b.bits().trailing_zeros() as usize;
                if v.get(p) {
                    v ^= *b;
                }
            }
            if v.is_zero() {
                continue;
            }
            let p = v.bits().trailing_zeros() as usize;
            for b in basis.iter_mut() {
                if b.get(p) {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
        basis.sort_by_key(|b| b.bits().trailing_zeros());
        let pivots = basis.iter().map(|b| b.bits().trailing_zeros() as usize).collect();
        Ok(Self { n, rows: basis, pivots })
    }

    /// Parses one generator per non-empty line.
    pub fn parse_rows(n: usize, text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(BitVec::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(n, &rows)
    }

    /// Parses the text format: a header line `n k`, then `k` rows of `0`/`1`
    /// characters. Lines starting with `#` are comments.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty code file".into()))?;
        let mut nums = header.split_whitespace().map(|t| t.parse::<usize>());
        let (n, k) = match (nums.next(), nums.next(), nums.next()) {
            (Some(Ok(n)), Some(Ok(k)), None) => (n, k),
            _ => return Err(Error::Parse(format!("expected header `n k`, got {header:?}"))),
        };
        let rows = lines.map(BitVec::parse).collect::<Result<Vec<_>>>()?;
        if rows.len() != k {
            return Err(Error::Parse(format!("header announces {k} rows, found {}", rows.len())));
        }
        Self::from_generators(n, &rows)
    }

    /// Writes the text format read by [`BinaryCode::parse_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.dim());
        for r in &self.rows {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_generators(n, &[])
    }

    pub fn full(n: usize) -> Result<Self> {
        let units = (0..n).map(|i| BitVec::unit(n, i)).collect::<Result<Vec<_>>>()?;
        Self::from_generators(n, &units)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The reduced row echelon basis.
    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Canonical representative of `v + C`: `v` with every pivot column cleared.
    #[inline]
    pub fn reduce(&self, v: BitVec) -> BitVec {
        let mut v = v;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v ^= *row;
            }
        }
        v
    }

    #[inline]
    pub fn contains(&self, v: &BitVec) -> bool {
        v.len() == self.n && self.reduce(*v).is_zero()
    }

    pub fn is_subcode_of(&self, other: &BinaryCode) -> bool {
        self.n == other.n && self.rows.iter().all(|r| other.contains(r))
    }

    /// Orthogonal complement under the standard inner product.
    pub fn dual(&self) -> BinaryCode {
        let mut out = Vec::with_capacity(self.n - self.dim());
        let is_pivot = |j: usize| self.pivots.contains(&j);
        for f in (0..self.n).filter(|&j| !is_pivot(j)) {
            let mut u = BitVec::raw(1 << f, self.n);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if row.get(f) {
                    u.set(p, true);
                }
            }
            out.push(u);
        }
        Self::from_generators(self.n, &out).expect("dual of a valid code")
    }

    /// Smallest code containing both.
    pub fn sum(&self, other: &BinaryCode) -> Result<BinaryCode> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { expected: self.n, found: other.n });
        }
        let gens: Vec<BitVec> = self.rows.iter().chain(&other.rows).copied().collect();
        Self::from_generators(self.n, &gens)
    }

    pub fn intersection(&self, other: &BinaryCode) -> Result<BinaryCode> {
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Codewords whose support lies inside `support`.
    pub fn supported_within(&self, support: &BitVec) -> Result<BinaryCode> {
        let outside: Vec<BitVec> = (0..self.n)
            .filter(|&j| !support.get(j))
            .map(|j| BitVec::raw(1 << j, self.n))
            .collect();
        let coord = Self::from_generators(self.n, &outside)?.dual();
        self.intersection(&coord)
    }

    /// Iterates over all codewords in Gray-code order starting from zero.
    pub fn codewords(&self) -> Result<CodewordIter> {
        self.coset(BitVec::raw(0, self.n))
    }

    /// Iterates over `shift + C`.
    pub fn coset(&self, shift: BitVec) -> Result<CodewordIter> {
        check_cap(self.dim() as u32)?;
        Ok(self.coset_unchecked(shift))
    }

    /// Iterates without consulting the cap. Callers that stop early on a
    /// witness use this and count visited elements themselves.
    pub(crate) fn coset_unchecked(&self, shift: BitVec) -> CodewordIter {
        CodewordIter { basis: self.rows.clone(), current: shift, index: 0, total: 1u128 << self.dim() }
    }

    /// Number of codewords of each weight `0..=n`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        self.coset_weight_distribution(BitVec::raw(0, self.n))
    }

    pub fn coset_weight_distribution(&self, shift: BitVec) -> Result<Vec<u64>> {
        let mut counts = vec![0u64; self.n + 1];
        for v in self.coset(shift)? {
            counts[v.weight() as usize] += 1;
        }
        Ok(counts)
    }

    /// Minimum weight of a nonzero codeword, `None` for the zero code.
    pub fn min_weight(&self) -> Result<Option<u32>> {
        let mut best: Option<(u32, BitVec)> = None;
        for v in self.codewords()?.filter(|v| !v.is_zero()) {
            if best.is_none_or(|(w, _)| v.weight() < w) {
                best = Some((v.weight(), v));
            }
        }
        Ok(best.map(|(w, _)| w))
    }

    /// A nonzero codeword of minimum weight, smallest in leader order.
    pub fn lightest_word(&self) -> Result<Option<BitVec>> {
        let mut best: Option<BitVec> = None;
        for v in self.codewords()?.filter(|v| !v.is_zero()) {
            if best.is_none_or(|b| v.leader_cmp(&b).is_lt()) {
                best = Some(v);
            }
        }
        Ok(best)
    }

    /// True when every codeword weight is divisible by `2^e`.
    ///
    /// Exact, and needs no enumeration of the code: writing a codeword as a
    /// sum of basis rows, inclusion-exclusion gives
    /// `w(sum_S g) = sum_{T subset S} (-2)^{|T|-1} w(prod_T g)`, so the code is
    /// `2^e`-divisible iff `2^{e-|T|+1}` divides `w(prod_T g)` for every
    /// nonempty set `T` of at most `e` basis rows.
    pub fn weights_divisible_by_pow2(&self, e: u32) -> bool {
        if e == 0 {
            return true;
        }
        fn rec(rows: &[BitVec], start: usize, depth: u32, prod: u64, e: u32) -> bool {
            for i in start..rows.len() {
                let p = prod & rows[i].bits();
                let t = depth + 1;
                let need = e - t + 1;
                let modulus = 1u64.checked_shl(need).unwrap_or(0);
                let count = p.count_ones() as u64;
                if (modulus == 0 && count != 0) || (modulus != 0 && !count.is_multiple_of(modulus)) {
                    return false;
                }
                if t < e && p != 0 && !rec(rows, i + 1, t, p, e) {
                    return false;
                }
            }
            true
        }
        rec(&self.rows, 0, 0, u64::MAX, e)
    }

    /// Largest `e` such that all weights are divisible by `2^e`; `None` for
    /// the zero code.
    pub fn weight_divisibility_exponent(&self) -> Option<u32> {
        if self.dim() == 0 {
            return None;
        }
        let mut e = 0;
        while e < 64 && self.weights_divisible_by_pow2(e + 1) {
            e += 1;
        }
        Some(e)
    }
}

/// Gray-code walk over `shift + span(basis)`.
pub struct CodewordIter {
    basis: Vec<BitVec>,
    current: BitVec,
    index: u128,
    total: u128,
}

impl Iterator for CodewordIter {
    type Item = BitVec;

    #[inline]
    fn next(&mut self) -> Option<BitVec> {
        if self.index >= self.total {
            return None;
        }
        if self.index > 0 {
            let j = self.index.trailing_zeros() as usize;
            self.current ^= self.basis[j];
        }
        self.index += 1;
        Some(self.current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index).min(usize::MAX as u128) as usize;
        (left, Some(left))
    }
}

/// A solution `x` of the system `rows[i] . x = rhs[i]`, with every free
/// coordinate set to zero, or `None` when the system is inconsistent.
pub fn solve_dot_system(n: usize, rows: &[BitVec], rhs: &[bool]) -> Result<Option<BitVec>> {
    check_len(n)?;
    if rows.len() != rhs.len() {
        return Err(Error::LengthMismatch { expected: rows.len(), found: rhs.len() });
    }
    let mut reduced: Vec<(BitVec, bool, usize)> = Vec::new();
    for (row, &b) in rows.iter().zip(rhs) {
        if row.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: row.len() });
        }
        let (mut v, mut b) = (*row, b);
        for &(r, rb, p) in &reduced {
            if v.get(p) {
                v ^= r;
                b ^= rb;
            }
        }
        if v.is_zero() {
            if b {
                return Ok(None);
            }
            continue;
        }
        let p = v.bits().trailing_zeros() as usize;
        for (r, rb, _) in reduced.iter_mut() {
            if r.get(p) {
                *r ^= v;
                *rb ^= b;
            }
        }
        reduced.push((v, b, p));
    }
    let mut x = BitVec::raw(0, n);
    for &(_, b, p) in &reduced {
        x.set(p, b);
    }
    Ok(Some(x))
}

/// Inverse of a square matrix over F2 given by rows, if invertible.
pub fn invert_square(rows: &[BitVec]) -> Option<Vec<BitVec>> {
    let k = rows.len();
    if k == 0 {
        return Some(Vec::new());
    }
    if rows.iter().any(|r| r.len() != k) {
        return None;
    }
    let mut a: Vec<BitVec> = rows.to_vec();
    let mut inv: Vec<BitVec> = (0..k).map(|i| BitVec::raw(1 << i, k)).collect();
    for col in 0..k {
        let pivot = (col..k).find(|&r| a[r].get(col))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..k {
            if r != col && a[r].get(col) {
                let (ar, ir) = (a[col], inv[col]);
                a[r] ^= ar;
                inv[r] ^= ir;
            }
        }
    }
    Some(inv)
}
