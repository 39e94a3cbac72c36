//! Diagonal physical gates: transversal Z-rotations, quadratic-form diagonal
//! gates and arbitrary phase tables.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::css::MAX_DENSE_QUBITS;
use crate::f2codes::{check_cap, BitVec, MAX_LEN};
use crate::{Error, Result};

/// Largest supported level of a quadratic-form gate.
pub const MAX_QFD_LEVEL: u32 = 62;

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    /// `exp(-i theta Z / 2)` on every qubit.
    RotZ { theta: f64 },
    /// Phase `xi^{v R v^T mod 2^level}` with `xi = exp(i pi / 2^{level-1})`.
    Qfd { matrix: Vec<Vec<u64>>, level: u32 },
    /// Explicit diagonal, indexed by the packed basis word.
    PhaseTable(Vec<Complex64>),
}

/// A diagonal unitary on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalGate {
    n: usize,
    kind: GateKind,
}

impl DiagonalGate {
    pub fn rz(n: usize, theta: f64) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n, kind: GateKind::RotZ { theta } })
    }

    /// Quadratic-form diagonal gate. Entries are reduced mod `2^level`;
    /// negative entries are taken mod `2^level` too.
    pub fn qfd(matrix: &[Vec<i64>], level: u32) -> Result<Self> {
        let n = matrix.len();
        check_n(n)?;
        if level == 0 || level > MAX_QFD_LEVEL {
            return Err(Error::InvalidGate(format!("QFD level must be in 1..={MAX_QFD_LEVEL}, got {level}")));
        }
        let modulus = 1i64 << level;
        let mut reduced = vec![vec![0u64; n]; n];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGate(format!("QFD matrix row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                reduced[i][j] = x.rem_euclid(modulus) as u64;
            }
        }
        for i in 0..n {
            for j in 0..i {
                if reduced[i][j] != reduced[j][i] {
                    return Err(Error::InvalidGate(format!("QFD matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { n, kind: GateKind::Qfd { matrix: reduced, level } })
    }

    /// Diagonal given explicitly; every entry must have modulus 1 within 1e-12.
    pub fn phase_table(n: usize, phases: Vec<Complex64>) -> Result<Self> {
        check_n(n)?;
        if n > MAX_DENSE_QUBITS {
            return Err(Error::Unsupported(format!("phase tables support at most {MAX_DENSE_QUBITS} qubits")));
        }
        if phases.len() != 1 << n {
            return Err(Error::LengthMismatch { expected: 1 << n, found: phases.len() });
        }
        if let Some((i, p)) = phases.iter().enumerate().find(|(_, p)| (p.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::InvalidGate(format!("phase table entry {i} has modulus {}", p.norm())));
        }
        Ok(Self { n, kind: GateKind::PhaseTable(phases) })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::rz(n, 0.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    /// Exact value of `v R v^T mod 2^level` for a quadratic-form gate.
    pub fn quadratic_form(&self, v: &BitVec) -> Option<u64> {
        match &self.kind {
            GateKind::Qfd { matrix, level } => Some(quadratic_form(matrix, *level, v)),
            _ => None,
        }
    }

    /// Diagonal entry `<v|U|v>`.
    pub fn phase_at(&self, v: &BitVec) -> Complex64 {
        match &self.kind {
            GateKind::RotZ { theta } => {
                let w = v.weight() as f64;
                Complex64::from_polar(1.0, -theta * (self.n as f64 - 2.0 * w) / 2.0)
            }
            GateKind::Qfd { matrix, level } => {
                let q = quadratic_form(matrix, *level, v);
                root_of_unity(q, *level)
            }
            GateKind::PhaseTable(t) => t[v.bits() as usize],
        }
    }

    /// All diagonal entries, indexed by packed basis word.
    pub fn phases(&self) -> Result<Vec<Complex64>> {
        check_cap(self.n as u32)?;
        if let GateKind::PhaseTable(t) = &self.kind {
            return Ok(t.clone());
        }
        Ok((0..1u64 << self.n).map(|i| self.phase_at(&BitVec::from_bits(i, self.n).expect("in range"))).collect())
    }

    /// Pauli-Z coefficient `f(u)` in `U = sum_u f(u) E(0, u)`, when a closed
    /// form exists (transversal rotations).
    pub fn closed_form_coefficient(&self, u: &BitVec) -> Option<Complex64> {
        match &self.kind {
            GateKind::RotZ { theta } => Some(rz_coefficient(self.n, *theta, u.weight())),
            _ => None,
        }
    }

    /// All Pauli-Z coefficients `f(u) = 2^{-n} sum_v phase(v) (-1)^{u.v}`,
    /// indexed by packed word. Rotations use the closed form.
    pub fn pauli_z_coefficients(&self) -> Result<Vec<Complex64>> {
        check_cap(self.n as u32)?;
        if let GateKind::RotZ { theta } = self.kind {
            return Ok((0..1u64 << self.n)
                .map(|i| rz_coefficient(self.n, theta, i.count_ones()))
                .collect());
        }
        let mut f = self.phases()?;
        walsh_hadamard(&mut f);
        let scale = (self.n as f64).exp2().recip();
        f.iter_mut().for_each(|c| *c *= scale);
        Ok(f)
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for DiagonalGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GateKind::RotZ { theta } => write!(f, "rz({theta}) on {} qubits", self.n),
            GateKind::Qfd { level, .. } => write!(f, "qfd(level {level}) on {} qubits", self.n),
            GateKind::PhaseTable(_) => write!(f, "phase table on {} qubits", self.n),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LEN {
        return Err(Error::UnsupportedLength(n));
    }
    Ok(())
}

/// `(cos theta/2)^{n-w} (-i sin theta/2)^w`.
pub fn rz_coefficient(n: usize, theta: f64, w: u32) -> Complex64 {
    let (s, c) = (theta / 2.0).sin_cos();
    Complex64::new(c, 0.0).powu(n as u32 - w) * Complex64::new(0.0, -s).powu(w)
}

/// `v R v^T` over the integers, reduced mod `2^level`: diagonal terms once,
/// off-diagonal pairs twice.
pub fn quadratic_form(matrix: &[Vec<u64>], level: u32, v: &BitVec) -> u64 {
    let mask = if level >= 64 { u64::MAX } else { (1u64 << level) - 1 };
    let support: Vec<usize> = v.support().collect();
    let mut acc: u64 = 0;
    for (a, &i) in support.iter().enumerate() {
        acc = acc.wrapping_add(matrix[i][i]);
        for &j in &support[a + 1..] {
            acc = acc.wrapping_add(matrix[i][j].wrapping_mul(2));
        }
    }
    acc & mask
}

/// `exp(i pi q / 2^{level-1})`, with the angle reduced exactly first.
pub fn root_of_unity(q: u64, level: u32) -> Complex64 {
    let modulus = 1u128 << level.min(127);
    let q = u128::from(q) % modulus;
    if (q * 4).is_multiple_of(modulus) {
        return crate::css::i_pow(((q * 4) / modulus) as u32);
    }
    Complex64::from_polar(1.0, 2.0 * PI * (q as f64 / modulus as f64))
}

/// In-place unnormalized Walsh-Hadamard transform:
/// `a[u] <- sum_v a[v] (-1)^{popcount(u & v)}`.
pub fn walsh_hadamard(a: &mut [Complex64]) {
    let len = a.len();
    assert!(len.is_power_of_two(), "Walsh-Hadamard transform needs a power-of-two length");
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let (x, y) = (a[i], a[i + h]);
                a[i] = x + y;
                a[i + h] = x - y;
            }
        }
        h *= 2;
    }
}

/// An angle parsed from text, remembering an exact rational multiple of pi.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    pub radians: f64,
    /// `(num, den)` with `radians = num * pi / den`, in lowest terms.
    pub pi_fraction: Option<(i64, u64)>,
}

impl Angle {
    pub fn from_radians(radians: f64) -> Self {
        Self { radians, pi_fraction: None }
    }

    /// `pi / p` for the divisibility routes.
    pub fn pi_over(p: u64) -> Self {
        Self { radians: PI / p as f64, pi_fraction: Some((1, p)) }
    }

    /// Parses `0.785`, `pi`, `-pi/4`, `3pi/8`, `3*pi/8` or `2pi`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
        let bad = || Error::Parse(format!("cannot parse angle {s:?}"));
        if let Some(pos) = t.find("pi") {
            let (head, tail) = (&t[..pos], &t[pos + 2..]);
            let head = head.strip_suffix('*').unwrap_or(head);
            let num: i64 = match head {
                "" | "+" => 1,
                "-" => -1,
                h => h.parse().map_err(|_| bad())?,
            };
            let den: u64 = match tail {
                "" => 1,
                d => d.strip_prefix('/').ok_or_else(bad)?.parse().map_err(|_| bad())?,
            };
            if den == 0 {
                return Err(bad());
            }
            let g = gcd(num.unsigned_abs(), den).max(1);
            let (num, den) = (num / g as i64, den / g);
            return Ok(Self { radians: num as f64 * PI / den as f64, pi_fraction: Some((num, den)) });
        }
        let radians: f64 = t.parse().map_err(|_| bad())?;
        if !radians.is_finite() {
            return Err(bad());
        }
        Ok(Self::from_radians(radians))
    }

    /// `p` when the angle is exactly `pi / p` for a positive integer `p`.
    pub fn as_pi_over(&self) -> Option<u64> {
        match self.pi_fraction {
            Some((1, den)) => Some(den),
            _ => None,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parses a gate spec for `n` qubits: `rz:THETA`, `qfd:l=L:R=<file or rows>`
/// or `table:<file>`. Inline QFD rows are separated by `;`, entries by `,`.
pub fn parse_gate_spec(spec: &str, n: usize) -> Result<DiagonalGate> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match kind.trim().to_ascii_lowercase().as_str() {
        "rz" => DiagonalGate::rz(n, Angle::parse(rest)?.radians),
        "id" | "identity" => DiagonalGate::identity(n),
        "qfd" => {
            let mut level = None;
            let mut matrix = None;
            for part in rest.split(':') {
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected key=value in gate spec, got {part:?}")))?;
                match key.trim() {
                    "l" | "L" => level = Some(value.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad level {value:?}")))?),
                    "R" | "r" => matrix = Some(parse_matrix(value)?),
                    other => return Err(Error::Parse(format!("unknown QFD parameter {other:?}"))),
                }
            }
            let level = level.ok_or_else(|| Error::Parse("QFD spec needs l=L".into()))?;
            let matrix = matrix.ok_or_else(|| Error::Parse("QFD spec needs R=...".into()))?;
            if matrix.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: matrix.len() });
            }
            DiagonalGate::qfd(&matrix, level)
        }
        "table" => {
            let text = std::fs::read_to_string(rest.trim()).map_err(|e| Error::Parse(format!("{rest}: {e}")))?;
            let phases = parse_phase_table(&text)?;
            DiagonalGate::phase_table(n, phases)
        }
        other => Err(Error::Parse(format!("unknown gate kind {other:?}; expected rz, qfd, table or id"))),
    }
}

fn parse_matrix(value: &str) -> Result<Vec<Vec<i64>>> {
    let text = if std::path::Path::new(value.trim()).is_file() {
        std::fs::read_to_string(value.trim()).map_err(|e| Error::Parse(format!("{value}: {e}")))?
    } else {
        value.replace(';', "\n")
    };
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad matrix entry {t:?}"))))
                .collect()
        })
        .collect()
}

/// One `re im` pair per line.
pub fn parse_phase_table(text: &str) -> Result<Vec<Complex64>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let nums: Vec<f64> = l
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {t:?}"))))
                .collect::<Result<_>>()?;
            match nums.as_slice() {
                [re, im] => Ok(Complex64::new(*re, *im)),
                _ => Err(Error::Parse(format!("expected `re im`, got {l:?}"))),
            }
        })
        .collect()
}

/// Block-diagonal QFD matrix placing `block` on consecutive qubit groups.
pub fn block_diagonal(block: &[Vec<i64>], copies: usize) -> Vec<Vec<i64>> {
    let b = block.len();
    let n = b * copies;
    let mut m = vec![vec![0i64; n]; n];
    for c in 0..copies {
        for i in 0..b {
            for j in 0..b {
                m[c * b + i][c * b + j] = block[i][j];
            }
        }
    }
    m
}
