use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use serde::Serialize;

use super::frame::Frame;
use super::logical::{LogicalAngle, LogicalDiagonalOp};
use crate::css::CssCode;
use crate::f2codes::{check_cap, BinaryCode, BitVec, CosetFamily};
use crate::gates::{walsh_hadamard, DiagonalGate, GateKind};
use crate::{Error, Result, TOL};

/// How a table was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Pauli-Z expansion of the gate summed over cosets of the Z-stabilizers.
    Definition,
    /// Walsh transform of the gate phases over the support coset `C1 + y`.
    CosetSum,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Definition => "definition",
            Route::CosetSum => "coset-sum",
        })
    }
}

/// Worst deviation from the unitarity sum rule over a table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SumRuleReport {
    pub max_deviation: f64,
    /// Logical label of the shift where the worst deviation occurs.
    pub worst_shift: usize,
    pub total_weight: f64,
}

impl SumRuleReport {
    pub fn holds(&self) -> bool {
        self.max_deviation < TOL
    }
}

static TABLES_BUILT: AtomicU64 = AtomicU64::new(0);
static WORST_DEVIATION_BITS: AtomicU64 = AtomicU64::new(0);

/// Running audit of the sum rule over every table built in this process.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SumRuleAudit {
    pub tables: u64,
    pub worst_deviation: f64,
}

pub fn sum_rule_audit() -> SumRuleAudit {
    SumRuleAudit {
        tables: TABLES_BUILT.load(Ordering::SeqCst),
        worst_deviation: f64::from_bits(WORST_DEVIATION_BITS.load(Ordering::SeqCst)),
    }
}

fn record(report: &SumRuleReport) {
    debug_assert!(report.holds(), "sum rule violated by a freshly built table: {report:?}");
    TABLES_BUILT.fetch_add(1, Ordering::SeqCst);
    // Non-negative floats order like their bit patterns; NaN sorts above everything.
    let bits = if report.max_deviation.is_nan() { f64::INFINITY.to_bits() } else { report.max_deviation.to_bits() };
    WORST_DEVIATION_BITS.fetch_max(bits, Ordering::SeqCst);
}

/// Generator coefficients `A[mu][gamma]` of a diagonal gate on a code.
///
/// Rows are X-syndrome cosets, columns are Z-logical cosets, both in
/// canonical leader order. Entry `(mu, gamma)` is
/// `sum_{z in J + mu + gamma} (-1)^{z.y} f(z)` with `f` the Pauli-Z
/// expansion of the gate and `J` the Z-stabilizer space.
#[derive(Clone, Debug)]
pub struct GenCoeffTable {
    frame: Frame,
    syndromes: CosetFamily,
    logicals: CosetFamily,
    labels: Vec<usize>,
    column_of_label: Vec<usize>,
    values: Vec<Complex64>,
    gate: String,
    route: Route,
    sum_rule: SumRuleReport,
}

impl Route {
    /// The cheaper route: coset sums for rotations and quadratic-form gates,
    /// the definition for phase tables.
    pub fn for_gate(gate: &DiagonalGate) -> Self {
        match gate.kind() {
            GateKind::PhaseTable(_) => Route::Definition,
            _ => Route::CosetSum,
        }
    }
}

/// Table for a CSS code, picking the cheaper route: coset sums for
/// rotations and quadratic-form gates, the definition for phase tables.
pub fn gencoeffs(code: &CssCode, gate: &DiagonalGate) -> Result<GenCoeffTable> {
    GenCoeffTable::build(&Frame::css(code), gate, Route::for_gate(gate))
}

pub fn gencoeffs_direct(code: &CssCode, gate: &DiagonalGate) -> Result<GenCoeffTable> {
    GenCoeffTable::build(&Frame::css(code), gate, Route::Definition)
}

/// Transversal `R_Z(theta)` by the coset-sum closed form.
pub fn gencoeffs_rz(code: &CssCode, theta: f64) -> Result<GenCoeffTable> {
    GenCoeffTable::build(&Frame::css(code), &DiagonalGate::rz(code.n(), theta)?, Route::CosetSum)
}

/// Quadratic-form gate by the coset-sum closed form.
pub fn gencoeffs_qfd(code: &CssCode, matrix: &[Vec<i64>], level: u32) -> Result<GenCoeffTable> {
    let gate = DiagonalGate::qfd(matrix, level)?;
    if gate.n() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), found: gate.n() });
    }
    GenCoeffTable::build(&Frame::css(code), &gate, Route::CosetSum)
}

impl GenCoeffTable {
    pub fn build(frame: &Frame, gate: &DiagonalGate, route: Route) -> Result<Self> {
        let n = frame.n();
        if gate.n() != n {
            return Err(Error::LengthMismatch { expected: n, found: gate.n() });
        }
        let syndromes = CosetFamily::new(frame.logical_space(), &BinaryCode::full(n)?)?;
        let logicals = CosetFamily::new(frame.z_stabilizers(), frame.logical_space())?;
        let labels: Vec<usize> = logicals.leaders().iter().map(|g| frame.label(g)).collect();
        let mut column_of_label = vec![usize::MAX; labels.len()];
        for (col, &l) in labels.iter().enumerate() {
            column_of_label[l] = col;
        }
        let values = match route {
            Route::Definition => definition_values(frame, gate, &syndromes, &logicals)?,
            Route::CosetSum => coset_sum_values(frame, gate, &syndromes, &logicals)?,
        };
        let mut table = Self {
            frame: frame.clone(),
            syndromes,
            logicals,
            labels,
            column_of_label,
            values,
            gate: gate.describe(),
            route,
            sum_rule: SumRuleReport { max_deviation: 0.0, worst_shift: 0, total_weight: 0.0 },
        };
        table.sum_rule = table.verify_sum_rule();
        record(&table.sum_rule);
        Ok(table)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn k(&self) -> usize {
        self.frame.k()
    }

    pub fn gate_description(&self) -> &str {
        &self.gate
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn syndromes(&self) -> &CosetFamily {
        &self.syndromes
    }

    pub fn logicals(&self) -> &CosetFamily {
        &self.logicals
    }

    pub fn rows(&self) -> usize {
        self.syndromes.len()
    }

    pub fn cols(&self) -> usize {
        self.logicals.len()
    }

    /// Logical label of each column.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn column_of_label(&self, alpha: usize) -> usize {
        self.column_of_label[alpha]
    }

    /// Entry by row and column index.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.values[row * self.cols() + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        let c = self.cols();
        &self.values[row * c..(row + 1) * c]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Overwrites one cell. The stored sum-rule report is left untouched, so
    /// this is only useful for building deliberately corrupted tables.
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        let c = self.cols();
        self.values[row * c + col] = value;
    }

    /// Sum over `J + mu + gamma` for arbitrary representatives: `mu` any
    /// vector, `gamma` in the logical space. Different representatives of the
    /// same syndrome coset can permute the columns, so this is the lookup to
    /// use when a row is named by a specific vector.
    pub fn value_at(&self, mu: &BitVec, gamma: &BitVec) -> Option<Complex64> {
        if !self.frame.logical_space().contains(gamma) {
            return None;
        }
        let s = *mu ^ *gamma;
        let row = self.syndromes.index_of(&s)?;
        let col = self.logicals.index_of(&(s ^ self.syndromes.leader(row)))?;
        Some(self.get(row, col))
    }

    /// Sum rule report computed at construction time.
    pub fn sum_rule(&self) -> SumRuleReport {
        self.sum_rule
    }

    /// `max_eta |sum_{mu,gamma} conj(A[mu][gamma]) A[mu][gamma + eta] - delta_eta|`,
    /// computed from per-row autocorrelations via Walsh transforms over labels.
    pub fn verify_sum_rule(&self) -> SumRuleReport {
        let size = self.cols();
        let mut power = vec![Complex64::new(0.0, 0.0); size];
        let mut buf = vec![Complex64::new(0.0, 0.0); size];
        for row in 0..self.rows() {
            for (col, v) in self.row(row).iter().enumerate() {
                buf[self.labels[col]] = *v;
            }
            walsh_hadamard(&mut buf);
            for (p, b) in power.iter_mut().zip(&buf) {
                *p += b.norm_sqr();
            }
        }
        walsh_hadamard(&mut power);
        let scale = 1.0 / size as f64;
        let mut report = SumRuleReport { max_deviation: 0.0, worst_shift: 0, total_weight: power[0].re * scale };
        for (eta, p) in power.iter().enumerate() {
            let target = if eta == 0 { 1.0 } else { 0.0 };
            let dev = (p * scale - target).norm();
            if dev > report.max_deviation || dev.is_nan() {
                report.max_deviation = dev;
                report.worst_shift = eta;
            }
        }
        report
    }

    /// `sum_gamma |A[0][gamma]|^2`, the probability of the trivial syndrome.
    pub fn trivial_row_weight(&self) -> f64 {
        self.row(0).iter().map(Complex64::norm_sqr).sum()
    }

    /// Whether the gate maps the code space to itself.
    pub fn preserves(&self) -> bool {
        (self.trivial_row_weight() - 1.0).abs() <= TOL
    }

    /// Largest modulus outside the trivial-syndrome row.
    pub fn max_off_row_modulus(&self) -> f64 {
        self.values[self.cols()..].iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Logical operator `sum_alpha A[mu][alpha Gamma] Z^alpha` of the row
    /// containing `mu`, using `mu` as the representative.
    pub fn row_operator(&self, mu: &BitVec) -> Result<LogicalDiagonalOp> {
        let k = self.k();
        let coeffs = (0..1usize << k)
            .map(|alpha| {
                self.value_at(mu, &self.frame.z_string(alpha))
                    .ok_or_else(|| Error::LengthMismatch { expected: self.frame.n(), found: mu.len() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LogicalDiagonalOp::new(k, coeffs))
    }

    /// The induced logical operator on the code space.
    pub fn induced_logical(&self) -> Result<LogicalDiagonalOp> {
        if !self.preserves() {
            return Err(Error::Precondition(format!(
                "gate does not preserve the code space (trivial-syndrome weight {:.12})",
                self.trivial_row_weight()
            )));
        }
        let coeffs = (0..self.cols()).map(|alpha| self.get(0, self.column_of_label[alpha])).collect();
        Ok(LogicalDiagonalOp::new(self.k(), coeffs))
    }

    /// Rotation angle of the single-qubit logical operator for syndrome `mu`.
    pub fn logical_rotation_angle(&self, mu: &BitVec) -> Result<LogicalAngle> {
        if self.k() != 1 {
            return Err(Error::Precondition(format!("logical angle needs one logical qubit, code has {}", self.k())));
        }
        let op = self.row_operator(mu)?;
        LogicalAngle::from_pair(op.coefficient(0), op.coefficient(1))
    }

    /// Whether every nontrivial row equals the first nontrivial row within `TOL`.
    pub fn nontrivial_rows_equal(&self) -> bool {
        if self.rows() <= 2 {
            return true;
        }
        let first = self.row(1);
        (2..self.rows()).all(|r| self.row(r).iter().zip(first).all(|(a, b)| (a - b).norm() <= TOL))
    }

    /// Largest entrywise difference to another table over the same cosets.
    pub fn max_diff(&self, other: &GenCoeffTable) -> Result<f64> {
        if self.syndromes.leaders() != other.syndromes.leaders() || self.logicals.leaders() != other.logicals.leaders() {
            return Err(Error::Precondition("tables are indexed by different cosets".into()));
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

fn definition_values(
    frame: &Frame,
    gate: &DiagonalGate,
    syndromes: &CosetFamily,
    logicals: &CosetFamily,
) -> Result<Vec<Complex64>> {
    let n = frame.n();
    check_cap(n as u32)?;
    let f = gate.pauli_z_coefficients()?;
    let cols = logicals.len();
    let mut values = vec![Complex64::new(0.0, 0.0); syndromes.len() * cols];
    let y = frame.y();
    for (bits, coeff) in f.iter().enumerate() {
        let z = BitVec::from_bits(bits as u64, n)?;
        let row = syndromes.index_of(&z).expect("every vector lies in some syndrome coset");
        let col = logicals.index_of(&(z ^ syndromes.leader(row))).expect("shifted vector lies in the logical space");
        let sign = if z.dot(&y) { -1.0 } else { 1.0 };
        values[row * cols + col] += coeff * sign;
    }
    Ok(values)
}

fn coset_sum_values(
    frame: &Frame,
    gate: &DiagonalGate,
    syndromes: &CosetFamily,
    logicals: &CosetFamily,
) -> Result<Vec<Complex64>> {
    let basis = frame.support_space().basis();
    let dim = basis.len();
    check_cap(dim as u32)?;
    // h[b] = phase(y + b G), visited in Gray-code order.
    let mut h = vec![Complex64::new(0.0, 0.0); 1 << dim];
    let mut v = frame.y();
    h[0] = gate.phase_at(&v);
    for idx in 1usize..1 << dim {
        v ^= basis[idx.trailing_zeros() as usize];
        h[idx ^ (idx >> 1)] = gate.phase_at(&v);
    }
    walsh_hadamard(&mut h);
    let scale = 1.0 / (1u64 << dim) as f64;
    let cols = logicals.len();
    let mut values = Vec::with_capacity(syndromes.len() * cols);
    for mu in syndromes.leaders() {
        for gamma in logicals.leaders() {
            let s = *mu ^ *gamma;
            let t = basis.iter().enumerate().fold(0usize, |acc, (i, g)| acc | (usize::from(s.dot(g)) << i));
            values.push(h[t] * scale);
        }
    }
    Ok(values)
}
