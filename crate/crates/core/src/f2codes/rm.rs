use super::bitvec::{check_len, BitVec};
use super::code::BinaryCode;
use crate::{Error, Result};

/// Evaluation vector of the monomial `prod_{i in vars} x_i` on F2^m.
///
/// Coordinate `j` is the point whose binary expansion, most significant bit
/// first, is `(x_1, ..., x_m)`; coordinate 0 is the all-zero point.
pub fn monomial(m: usize, vars: &[usize]) -> Result<BitVec> {
    let n = 1usize << m;
    check_len(n)?;
    let mut bits = 0u64;
    for j in 0..n {
        if vars.iter().all(|&i| (j >> (m - 1 - i)) & 1 == 1) {
            bits |= 1 << j;
        }
    }
    Ok(BitVec::raw(bits, n))
}

/// The Reed-Muller code RM(r, m): evaluations of polynomials of degree <= r.
pub fn reed_muller(r: usize, m: usize) -> Result<BinaryCode> {
    if m == 0 || m > 6 {
        return Err(Error::Unsupported(format!("RM codes need 1 <= m <= 6, got m = {m}")));
    }
    if r > m {
        return Err(Error::Precondition(format!("RM(r, m) needs r <= m, got r = {r}, m = {m}")));
    }
    let mut gens = Vec::new();
    for d in 0..=r {
        for vars in combinations(m, d) {
            gens.push(monomial(m, &vars)?);
        }
    }
    BinaryCode::from_generators(1 << m, &gens)
}

/// Removes coordinate 0 from every codeword.
pub fn puncture_first(code: &BinaryCode) -> Result<BinaryCode> {
    let gens = code.basis().iter().map(|g| g.drop_first()).collect::<Result<Vec<_>>>()?;
    BinaryCode::from_generators(code.len() - 1, &gens)
}

/// The subcode `{c in C : c_0 = 0}` of a code containing the all-ones word.
///
/// For an RM code this is the span of the non-constant monomials, i.e. the
/// generator matrix with its all-ones row removed.
pub fn drop_allones_row(code: &BinaryCode) -> Result<BinaryCode> {
    let ones = BitVec::ones(code.len())?;
    if !code.contains(&ones) {
        return Err(Error::Precondition("code does not contain the all-ones word".into()));
    }
    let e0 = BitVec::unit(code.len(), 0)?;
    let mut coord_hyperplane = BinaryCode::from_generators(code.len(), &[e0])?.dual();
    coord_hyperplane = code.intersection(&coord_hyperplane)?;
    Ok(coord_hyperplane)
}

/// Sum of `C(m, j)` for `j` in `lo..=hi`.
pub fn binomial_sum(m: usize, lo: usize, hi: usize) -> usize {
    (lo..=hi).map(|j| binom(m, j)).sum()
}

pub fn binom(m: usize, j: usize) -> usize {
    if j > m {
        return 0;
    }
    (0..j).fold(1usize, |acc, i| acc * (m - i) / (i + 1))
}

fn combinations(m: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(start: usize, m: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, d, cur, out);
            cur.pop();
        }
    }
    rec(0, m, d, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rm13_generators_and_weights() {
        let c = reed_muller(1, 3).unwrap();
        assert_eq!(c.dim(), 4);
        for s in ["11111111", "00001111", "00110011", "01010101"] {
            assert!(c.contains(&BitVec::parse(s).unwrap()));
        }
        assert_eq!(c.weight_distribution().unwrap(), vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
    }

    #[test]
    fn dimensions_and_distance() {
        for m in 1..=5 {
            for r in 0..=m {
                let c = reed_muller(r, m).unwrap();
                assert_eq!(c.dim(), binomial_sum(m, 0, r));
                if m <= 4 {
                    assert_eq!(c.min_weight().unwrap(), Some(1 << (m - r)));
                }
            }
        }
    }

    #[test]
    fn punctured_codes() {
        let c = reed_muller(1, 4).unwrap();
        let p = puncture_first(&c).unwrap();
        assert_eq!((p.len(), p.dim()), (15, 5));
        let d = drop_allones_row(&c).unwrap();
        assert_eq!(d.dim(), 4);
        assert!(d.weight_distribution().unwrap().iter().enumerate().all(|(w, &n)| n == 0 || w == 0 || w == 8));
        let r13 = drop_allones_row(&reed_muller(1, 3).unwrap()).unwrap();
        assert_eq!(r13.weight_distribution().unwrap(), vec![1, 0, 0, 0, 7, 0, 0, 0, 0]);
    }
}
