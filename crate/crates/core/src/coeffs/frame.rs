use crate::css::{default_logicals, CssCode};
use crate::f2codes::{BinaryCode, BitVec};
use crate::{Error, Result};

/// The binary data a generator-coefficient table is built from.
///
/// For a CSS code the Z-stabilizer space is `C1^perp` and the logical space
/// is `C2^perp`. For a general stabilizer code they are the Z-only
/// stabilizer space `J` and the space `T^perp` of Z-strings commuting with
/// every stabilizer. Rows run over `F2^n / logical_space`, columns over
/// `logical_space / z_stabilizers`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    n: usize,
    z_stabilizers: BinaryCode,
    logical_space: BinaryCode,
    support_space: BinaryCode,
    y: BitVec,
    x_rows: Vec<BitVec>,
    z_rows: Vec<BitVec>,
}

impl Frame {
    pub fn css(code: &CssCode) -> Self {
        Self {
            n: code.n(),
            z_stabilizers: code.c1_perp().clone(),
            logical_space: code.c2_perp().clone(),
            support_space: code.c1().clone(),
            y: code.y(),
            x_rows: code.x_logical_rows().to_vec(),
            z_rows: code.z_logical_rows().to_vec(),
        }
    }

    /// A frame from the Z-only stabilizer space, the space of Z-strings
    /// commuting with the stabilizer group, and a sign vector `y`.
    pub fn new(z_stabilizers: BinaryCode, logical_space: BinaryCode, y: BitVec) -> Result<Self> {
        let n = logical_space.len();
        for len in [z_stabilizers.len(), y.len()] {
            if len != n {
                return Err(Error::LengthMismatch { expected: n, found: len });
            }
        }
        if !z_stabilizers.is_subcode_of(&logical_space) {
            return Err(Error::InvalidCode("Z-stabilizer space is not inside the logical space".into()));
        }
        let support_space = z_stabilizers.dual();
        let t = logical_space.dual();
        let (x_rows, z_rows) = default_logicals(&support_space, &t, &logical_space, &z_stabilizers);
        Ok(Self { n, z_stabilizers, logical_space, support_space, y, x_rows, z_rows })
    }

    /// Replaces the logical rows; callers guarantee the pairing.
    pub(crate) fn with_logical_rows(mut self, x_rows: Vec<BitVec>, z_rows: Vec<BitVec>) -> Self {
        self.x_rows = x_rows;
        self.z_rows = z_rows;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.logical_space.dim() - self.z_stabilizers.dim()
    }

    pub fn z_stabilizers(&self) -> &BinaryCode {
        &self.z_stabilizers
    }

    pub fn logical_space(&self) -> &BinaryCode {
        &self.logical_space
    }

    /// Dual of the Z-stabilizer space (`C1` for CSS codes).
    pub fn support_space(&self) -> &BinaryCode {
        &self.support_space
    }

    pub fn y(&self) -> BitVec {
        self.y
    }

    pub fn x_rows(&self) -> &[BitVec] {
        &self.x_rows
    }

    pub fn z_rows(&self) -> &[BitVec] {
        &self.z_rows
    }

    /// Logical label of a Z-string in the logical space: bit `i` is `w_i . gamma`.
    pub fn label(&self, gamma: &BitVec) -> usize {
        self.x_rows.iter().enumerate().fold(0, |acc, (i, w)| acc | (usize::from(w.dot(gamma)) << i))
    }

    /// The Z-string `sum_i alpha_i gamma_i` with logical label `alpha`.
    pub fn z_string(&self, alpha: usize) -> BitVec {
        self.z_rows
            .iter()
            .enumerate()
            .filter(|(i, _)| alpha >> i & 1 == 1)
            .fold(BitVec::zeros(self.n).expect("valid length"), |acc, (_, g)| acc ^ *g)
    }
}
