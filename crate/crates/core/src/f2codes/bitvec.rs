use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};

use crate::{Error, Result};

/// Largest supported vector length.
pub const MAX_LEN: usize = 64;

/// A vector in F2^n packed into one machine word.
///
/// Coordinate `i` (the `i`-th character of the 0/1 string form, counting from
/// the left) lives in bit `i` of the word. The packed word doubles as the
/// index of the basis state `|v>` in dense state vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVec {
    bits: u64,
    len: u8,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn check_len(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LEN {
        Err(Error::UnsupportedLength(n))
    } else {
        Ok(())
    }
}

impl BitVec {
    pub fn zeros(n: usize) -> Result<Self> {
        check_len(n)?;
        Ok(Self { bits: 0, len: n as u8 })
    }

    pub fn ones(n: usize) -> Result<Self> {
        check_len(n)?;
        Ok(Self { bits: mask(n), len: n as u8 })
    }

    /// Unit vector with a single 1 at coordinate `i`.
    pub fn unit(n: usize, i: usize) -> Result<Self> {
        let mut v = Self::zeros(n)?;
        if i >= n {
            return Err(Error::LengthMismatch { expected: n, found: i + 1 });
        }
        v.set(i, true);
        Ok(v)
    }

    /// Builds a vector from a packed word; bits above `n` must be clear.
    pub fn from_bits(bits: u64, n: usize) -> Result<Self> {
        check_len(n)?;
        if bits & !mask(n) != 0 {
            return Err(Error::Parse(format!("word {bits:#x} has bits beyond length {n}")));
        }
        Ok(Self { bits, len: n as u8 })
    }

    /// Unchecked constructor for internal hot loops.
    #[inline]
    pub(crate) fn raw(bits: u64, n: usize) -> Self {
        debug_assert!((1..=MAX_LEN).contains(&n) && bits & !mask(n) == 0);
        Self { bits, len: n as u8 }
    }

    pub fn from_slice(values: &[bool]) -> Result<Self> {
        let mut v = Self::zeros(values.len())?;
        for (i, &b) in values.iter().enumerate() {
            v.set(i, b);
        }
        Ok(v)
    }

    /// Parses a string of `0`/`1` characters. Spaces, commas and brackets are
    /// ignored so `[1,0,0,1]` and `1001` are both accepted.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                ' ' | ',' | '[' | ']' | '_' => {}
                other => return Err(Error::Parse(format!("unexpected character {other:?} in bit string {s:?}"))),
            }
        }
        Self::from_slice(&bits)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        (self.bits >> i) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len(), "coordinate {i} out of range for length {}", self.len);
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len(), "coordinate {i} out of range for length {}", self.len);
        self.bits ^= 1 << i;
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Standard inner product over F2.
    #[inline]
    pub fn dot(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    /// Integer inner product, i.e. the size of the common support.
    #[inline]
    pub fn overlap(&self, other: &Self) -> u32 {
        (self.bits & other.bits).count_ones()
    }

    /// True when the support of `self` is contained in the support of `other`.
    #[inline]
    pub fn precedes(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// Indices of the nonzero coordinates in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        let mut w = self.bits;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let i = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i)
            }
        })
    }

    /// Order on equal-length vectors by their 0/1 string, left to right.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let diff = self.bits ^ other.bits;
        if diff == 0 {
            Ordering::Equal
        } else if (self.bits >> diff.trailing_zeros()) & 1 == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Coset leader order: smaller weight first, then lexicographic.
    pub fn leader_cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.lex_cmp(other))
    }

    /// Restriction to the coordinates in `support`, packed in order.
    pub fn restrict(&self, support: &BitVec) -> BitVec {
        let mut out = 0u64;
        for (j, i) in support.support().enumerate() {
            if self.get(i) {
                out |= 1 << j;
            }
        }
        BitVec::raw(out, (support.weight() as usize).max(1))
    }

    /// Drops coordinate 0 and shifts the rest left.
    pub fn drop_first(&self) -> Result<BitVec> {
        check_len(self.len() - 1)?;
        Ok(BitVec::raw(self.bits >> 1, self.len() - 1))
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &BitVec) -> Result<BitVec> {
        let n = self.len() + other.len();
        check_len(n)?;
        Ok(BitVec::raw(self.bits | (other.bits << self.len()), n))
    }
}

impl BitXor for BitVec {
    type Output = BitVec;
    #[inline]
    fn bitxor(self, rhs: BitVec) -> BitVec {
        debug_assert_eq!(self.len, rhs.len);
        BitVec { bits: self.bits ^ rhs.bits, len: self.len }
    }
}

impl BitXorAssign for BitVec {
    #[inline]
    fn bitxor_assign(&mut self, rhs: BitVec) {
        debug_assert_eq!(self.len, rhs.len);
        self.bits ^= rhs.bits;
    }
}

/// Coordinate-wise product `v * w`.
impl BitAnd for BitVec {
    type Output = BitVec;
    #[inline]
    fn bitand(self, rhs: BitVec) -> BitVec {
        debug_assert_eq!(self.len, rhs.len);
        BitVec { bits: self.bits & rhs.bits, len: self.len }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl serde::Serialize for BitVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let v = BitVec::parse("0110").unwrap();
        assert_eq!(v.to_string(), "0110");
        assert_eq!(BitVec::parse("[0,1,1,0]").unwrap(), v);
        assert_eq!(v.weight(), 2);
        assert!(v.get(1) && v.get(2) && !v.get(0));
        assert!(BitVec::parse("01x").is_err());
        assert!(BitVec::parse("").is_err());
    }

    #[test]
    fn dot_and_overlap() {
        let a = BitVec::parse("1101").unwrap();
        let b = BitVec::parse("0111").unwrap();
        assert_eq!(a.overlap(&b), 2);
        assert!(!a.dot(&b));
        assert_eq!((a & b).to_string(), "0101");
        assert_eq!((a ^ b).to_string(), "1010");
    }

    #[test]
    fn lexicographic_order_reads_left_to_right() {
        let v = |s| BitVec::parse(s).unwrap();
        assert_eq!(v("0001").lex_cmp(&v("1000")), Ordering::Less);
        assert_eq!(v("0110").lex_cmp(&v("0101")), Ordering::Greater);
        assert_eq!(v("1000").leader_cmp(&v("0011")), Ordering::Less);
    }

    #[test]
    fn restrict_packs_support() {
        let v = BitVec::parse("101101").unwrap();
        let s = BitVec::parse("111010").unwrap();
        assert_eq!(v.restrict(&s).to_string(), "1010");
    }

    #[test]
    fn length_limits() {
        assert!(BitVec::zeros(64).is_ok());
        assert!(BitVec::zeros(65).is_err());
        assert!(BitVec::from_bits(0b100, 2).is_err());
    }
}
