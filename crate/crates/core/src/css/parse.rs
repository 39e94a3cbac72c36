use std::path::Path;

use super::builtins::builtin;
use super::code::CssCode;
use super::pauli::PauliOp;
use crate::f2codes::BitVec;
use crate::{Error, Result};

/// Parses a code catalog.
///
/// ```text
/// # [[4,2,2]] with one negative Z sign
/// [X]
/// 1111
/// [Z]
/// 1111
/// [y]
/// 0001
/// ```
///
/// Sections: `[X]` and `[Z]` generator rows, optional `[r]` and `[y]` lines,
/// optional `[logical-x]`/`[logical-z]` rows, or `[S]` with signed Pauli
/// generators (`-ZZI` or `-000|110`) in place of `[X]`/`[Z]`/`[r]`/`[y]`.
/// An `n = N` line is required only when no row fixes the length.
pub fn parse_catalog(text: &str) -> Result<CssCode> {
    let mut section = String::new();
    let mut n: Option<usize> = None;
    let (mut xs, mut zs, mut lx, mut lz, mut signed) = (vec![], vec![], vec![], vec![], vec![]);
    let (mut r, mut y) = (None, None);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ctx = |e: Error| Error::Parse(format!("line {}: {e}", lineno + 1));
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            section = name.trim().to_ascii_lowercase();
            continue;
        }
        if let Some(rest) = line.strip_prefix("n").and_then(|l| l.trim_start().strip_prefix('=')) {
            n = Some(rest.trim().parse().map_err(|_| Error::Parse(format!("line {}: bad length", lineno + 1)))?);
            continue;
        }
        match section.as_str() {
            "x" => xs.push(BitVec::parse(line).map_err(ctx)?),
            "z" => zs.push(BitVec::parse(line).map_err(ctx)?),
            "r" => r = Some(BitVec::parse(line).map_err(ctx)?),
            "y" => y = Some(BitVec::parse(line).map_err(ctx)?),
            "logical-x" => lx.push(BitVec::parse(line).map_err(ctx)?),
            "logical-z" => lz.push(BitVec::parse(line).map_err(ctx)?),
            "s" => {
                let op = if line.contains('|') { PauliOp::parse_symplectic(line) } else { PauliOp::parse_letters(line) };
                signed.push(op.map_err(ctx)?);
            }
            "" => return Err(Error::Parse(format!("line {}: data outside any section", lineno + 1))),
            other => return Err(Error::Parse(format!("line {}: unknown section [{other}]", lineno + 1))),
        }
    }
    let len = n
        .or_else(|| xs.iter().chain(&zs).chain(r.iter()).chain(y.iter()).map(BitVec::len).next())
        .or_else(|| signed.first().map(PauliOp::len))
        .ok_or_else(|| Error::Parse("cannot determine the code length; add `n = N`".into()))?;
    let code = if signed.is_empty() {
        let zero = BitVec::zeros(len)?;
        CssCode::new(len, &xs, &zs, r.unwrap_or(zero), y.unwrap_or(zero))?
    } else {
        if !xs.is_empty() || !zs.is_empty() || r.is_some() || y.is_some() {
            return Err(Error::Parse("[S] cannot be combined with [X], [Z], [r] or [y]".into()));
        }
        CssCode::from_signed_generators(len, &signed)?
    };
    if lx.is_empty() && lz.is_empty() {
        Ok(code)
    } else {
        code.with_logicals(lx, lz)
    }
}

impl CssCode {
    /// Catalog text accepted by [`parse_catalog`], reproducing the code,
    /// its signs and its logical rows.
    pub fn to_catalog(&self) -> String {
        let mut out = String::from("[X]\n");
        let mut rows = |title: &str, rows: &[BitVec]| {
            if !title.is_empty() {
                out.push_str(title);
                out.push('\n');
            }
            for r in rows {
                out.push_str(&r.to_string());
                out.push('\n');
            }
        };
        rows("", self.c2().basis());
        rows("[Z]", self.c1_perp().basis());
        rows("[r]", &[self.r()]);
        rows("[y]", &[self.y()]);
        rows("[logical-x]", self.x_logical_rows());
        rows("[logical-z]", self.z_logical_rows());
        out
    }
}

/// A built-in name (see [`super::BUILTIN_NAMES`]) or a path to a catalog file.
pub fn parse_code_spec(spec: &str) -> Result<CssCode> {
    match builtin(spec) {
        Ok(code) => Ok(code),
        Err(builtin_err) => {
            let path = Path::new(spec);
            if path.is_file() {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
                parse_catalog(&text)
            } else {
                Err(builtin_err)
            }
        }
    }
}
