use super::code::CssCode;
use crate::f2codes::{drop_allones_row, puncture_first, reed_muller, BitVec};
use crate::{Error, Result};

/// Names accepted by [`builtin`]; `qrm(r,m)` and `rm(r1,r2,m[,punctured])`
/// are parameterized.
pub const BUILTIN_NAMES: &[&str] = &["steane", "422", "832", "rm15", "qrm(r,m)", "rm(r1,r2,m[,punctured])"];

fn v(s: &str) -> BitVec {
    BitVec::parse(s).expect("literal bit string")
}

/// The [[7,1,3]] Steane code: `C2 = C1^perp` spanned by the Hamming parity checks.
pub fn steane() -> CssCode {
    let h = [v("1111000"), v("1100110"), v("1010101")];
    CssCode::new(7, &h, &h, v("0000000"), v("0000000")).expect("Steane code is valid")
}

/// The [[4,2,2]] code with Z character vector `y`, using the logical rows
/// `Xbar_1 = X2X3`, `Xbar_2 = X3X4`, `Zbar_1 = Z3Z4`, `Zbar_2 = Z2Z3`.
pub fn four_two_two(y: BitVec) -> Result<CssCode> {
    let ones = [v("1111")];
    CssCode::new(4, &ones, &ones, v("0000"), y)?
        .with_logicals(vec![v("0110"), v("0011")], vec![v("0011"), v("0110")])
}

/// The punctured [[15,1,3]] quantum Reed-Muller code.
pub fn rm15() -> CssCode {
    rm_css(1, 1, 4, true).expect("valid parameters")
}

/// QRM(r, m): `C1 = RM(r, m)`, `C2 = RM(r - 1, m)`.
pub fn qrm(r: usize, m: usize) -> Result<CssCode> {
    if r == 0 {
        return Err(Error::Precondition("QRM(r, m) needs r >= 1".into()));
    }
    rm_css(r, r - 1, m, false)
}

/// CSS code with `C1 = RM(r1, m)` and `C2 = RM(r2, m)`, signs trivial.
///
/// The punctured variant deletes coordinate 0 from `C1` and shortens `C2`
/// (keeps the words vanishing at coordinate 0, then deletes it), giving
/// length `2^m - 1` and `k = sum_{j=r2+1}^{r1} C(m, j) + 1`.
pub fn rm_css(r1: usize, r2: usize, m: usize, punctured: bool) -> Result<CssCode> {
    if r2 > r1 || r1 > m {
        return Err(Error::Precondition(format!("RM CSS construction needs r2 <= r1 <= m, got ({r1}, {r2}, {m})")));
    }
    if !punctured && r2 == r1 {
        return Err(Error::Precondition("unpunctured RM CSS construction needs r2 < r1".into()));
    }
    let big = reed_muller(r1, m)?;
    let small = reed_muller(r2, m)?;
    let (c1, c2) = if punctured {
        if m < 2 {
            return Err(Error::Precondition("punctured RM CSS construction needs m >= 2".into()));
        }
        (puncture_first(&big)?, puncture_first(&drop_allones_row(&small)?)?)
    } else {
        (big, small)
    };
    let n = c1.len();
    let zero = BitVec::zeros(n)?;
    CssCode::from_codes(c2, c1.dual(), zero, zero)
}

/// Looks up a built-in code by name, e.g. `steane`, `qrm(1,3)`, `rm(1,1,4,punctured)`.
pub fn builtin(name: &str) -> Result<CssCode> {
    let key: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    match key.as_str() {
        "steane" | "713" => return Ok(steane()),
        "422" => return four_two_two(v("0000")),
        "832" => return rm_css(1, 0, 3, false),
        "rm15" | "15" => return Ok(rm15()),
        _ => {}
    }
    let args = |prefix: &str| -> Option<Vec<String>> {
        key.strip_prefix(prefix)?
            .strip_prefix('(')?
            .strip_suffix(')')
            .map(|inner| inner.split(',').map(str::to_string).collect())
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad integer {s:?} in code name {name:?}")));
    if let Some(a) = args("qrm") {
        if a.len() == 2 {
            return qrm(num(&a[0])?, num(&a[1])?);
        }
    }
    if let Some(a) = args("rm") {
        let punctured = match a.get(3).map(String::as_str) {
            None => false,
            Some("punctured" | "p" | "true" | "1") => true,
            Some("false" | "0") => false,
            Some(other) => return Err(Error::Parse(format!("bad puncture flag {other:?}"))),
        };
        if a.len() == 3 || a.len() == 4 {
            return rm_css(num(&a[0])?, num(&a[1])?, num(&a[2])?, punctured);
        }
    }
    Err(Error::Parse(format!("unknown built-in code {name:?}; known: {}", BUILTIN_NAMES.join(", "))))
}
