use std::collections::HashMap;

use super::bitvec::BitVec;
use super::code::{check_cap, enumeration_cap, BinaryCode};
use crate::{Error, Result};

/// The cosets of `sub` inside `sup`, each with a canonical leader.
///
/// A leader is the minimal-weight element of its coset, ties broken by the
/// lexicographic order of [`BitVec::lex_cmp`]. Leaders are stored sorted in
/// the same order, so the zero coset comes first.
#[derive(Clone, Debug)]
pub struct CosetFamily {
    sub: BinaryCode,
    sup: BinaryCode,
    leaders: Vec<BitVec>,
    index: HashMap<BitVec, usize>,
}

impl CosetFamily {
    pub fn new(sub: &BinaryCode, sup: &BinaryCode) -> Result<Self> {
        if !sub.is_subcode_of(sup) {
            return Err(Error::InvalidCode("coset family needs sub to be a subcode of sup".into()));
        }
        let count = 1u64
            .checked_shl((sup.dim() - sub.dim()) as u32)
            .filter(|&c| c <= enumeration_cap())
            .ok_or(Error::CapExceeded { log2_size: (sup.dim() - sub.dim()) as u32, cap: enumeration_cap() })?;
        let mut best: HashMap<BitVec, BitVec> = HashMap::with_capacity(count as usize);
        if sup.is_full() || check_cap(sup.dim() as u32).is_err() {
            weight_ordered_leaders(sub, sup, count as usize, &mut best)?;
        } else {
            for v in sup.codewords()? {
                let key = sub.reduce(v);
                best.entry(key)
                    .and_modify(|b| {
                        if v.leader_cmp(b).is_lt() {
                            *b = v
                        }
                    })
                    .or_insert(v);
            }
        }
        let mut leaders: Vec<BitVec> = best.into_values().collect();
        leaders.sort_by(|a, b| a.leader_cmp(b));
        let index = leaders.iter().enumerate().map(|(i, l)| (sub.reduce(*l), i)).collect();
        Ok(Self { sub: sub.clone(), sup: sup.clone(), leaders, index })
    }

    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    pub fn leaders(&self) -> &[BitVec] {
        &self.leaders
    }

    pub fn leader(&self, i: usize) -> BitVec {
        self.leaders[i]
    }

    pub fn sub(&self) -> &BinaryCode {
        &self.sub
    }

    pub fn sup(&self) -> &BinaryCode {
        &self.sup
    }

    /// Index of the coset containing `v`, or `None` when `v` is not in `sup`.
    pub fn index_of(&self, v: &BitVec) -> Option<usize> {
        if v.len() != self.sub.len() {
            return None;
        }
        self.index.get(&self.sub.reduce(*v)).copied()
    }

    /// Canonical leader of the coset containing `v`.
    pub fn leader_of(&self, v: &BitVec) -> Option<BitVec> {
        self.index_of(v).map(|i| self.leaders[i])
    }
}

/// Scans F2^n in leader order until every coset of `sub` in `sup` has been hit.
fn weight_ordered_leaders(
    sub: &BinaryCode,
    sup: &BinaryCode,
    count: usize,
    best: &mut HashMap<BitVec, BitVec>,
) -> Result<()> {
    let check_membership = !sup.is_full();
    let n = sub.len();
    let cap = enumeration_cap();
    let mut visited: u64 = 0;
    for w in 0..=n {
        for v in fixed_weight_in_lex_order(n, w) {
            visited += 1;
            if visited > cap {
                return Err(Error::CapExceeded { log2_size: 64 - cap.leading_zeros(), cap });
            }
            if check_membership && !sup.contains(&v) {
                continue;
            }
            best.entry(sub.reduce(v)).or_insert(v);
            if best.len() == count {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// All weight-`w` vectors of length `n`, lexicographically increasing.
///
/// Reading the string left to right as a binary number (coordinate 0 most
/// significant), lexicographic order is numeric order; Gosper's hack walks the
/// numbers with a fixed popcount and the bits are then reversed into the
/// packed layout.
pub fn fixed_weight_in_lex_order(n: usize, w: usize) -> impl Iterator<Item = BitVec> {
    let limit: u128 = 1u128 << n;
    let mut x: u128 = if w == 0 { 0 } else { (1u128 << w) - 1 };
    let mut done = w > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = x;
        if w == 0 {
            done = true;
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
            if x >= limit {
                done = true;
            }
        }
        let packed = (cur as u64).reverse_bits() >> (64 - n);
        Some(BitVec::raw(packed, n))
    })
}

/// Canonical leader of the single coset `v + code`.
pub fn coset_leader(code: &BinaryCode, v: &BitVec) -> Result<BitVec> {
    let target = code.reduce(*v);
    if check_cap(code.dim() as u32).is_ok() {
        let mut best = *v;
        for u in code.coset(*v)? {
            if u.leader_cmp(&best).is_lt() {
                best = u;
            }
        }
        return Ok(best);
    }
    let cap = enumeration_cap();
    let mut visited = 0u64;
    for w in 0..=code.len() {
        for u in fixed_weight_in_lex_order(code.len(), w) {
            visited += 1;
            if visited > cap {
                return Err(Error::CapExceeded { log2_size: code.dim() as u32, cap });
            }
            if code.reduce(u) == target {
                return Ok(u);
            }
        }
    }
    unreachable!("every coset has an element")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    #[test]
    fn fixed_weight_order() {
        let all: Vec<String> = fixed_weight_in_lex_order(4, 2).map(|b| b.to_string()).collect();
        assert_eq!(all, ["0011", "0101", "0110", "1001", "1010", "1100"]);
        assert_eq!(fixed_weight_in_lex_order(3, 0).count(), 1);
        assert_eq!(fixed_weight_in_lex_order(3, 3).count(), 1);
        assert_eq!(fixed_weight_in_lex_order(64, 1).count(), 64);
    }

    #[test]
    fn hamming_cosets_have_weight_one_leaders() {
        let h = BinaryCode::from_generators(7, &[v("1111000"), v("1100110"), v("1010101")]).unwrap();
        let ham = h.dual();
        let full = BinaryCode::full(7).unwrap();
        let fam = CosetFamily::new(&ham, &full).unwrap();
        assert_eq!(fam.len(), 8);
        assert!(fam.leader(0).is_zero());
        assert!(fam.leaders()[1..].iter().all(|l| l.weight() == 1));
        assert_eq!(fam.leader_of(&v("1000000")), Some(v("1000000")));
    }

    #[test]
    fn leaders_of_subcode_family() {
        let h = BinaryCode::from_generators(7, &[v("1111000"), v("1100110"), v("1010101")]).unwrap();
        let fam = CosetFamily::new(&h, &h.dual()).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.leader(1).weight(), 3);
        assert_eq!(fam.index_of(&v("1111111")), Some(1));
        assert_eq!(fam.index_of(&v("1000000")), None);
    }

    #[test]
    fn single_coset_leader() {
        let c = BinaryCode::from_generators(3, &[v("111")]).unwrap();
        assert_eq!(coset_leader(&c, &v("011")).unwrap(), v("100"));
    }
}
