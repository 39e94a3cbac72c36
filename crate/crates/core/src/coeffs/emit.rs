use std::fmt::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::table::{GenCoeffTable, Route, SumRuleReport};

/// Rounds to 12 decimals and clears negative zero.
pub fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Row label used for the merged nontrivial rows of a collapsed table.
pub const MERGED_ROW: &str = "*";

/// One printed row: its syndrome label and the cells in column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowReport {
    pub mu: String,
    pub cells: Vec<[f64; 2]>,
}

/// Serializable view of a table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableReport {
    pub n: usize,
    pub k: usize,
    pub gate: String,
    pub route: Route,
    pub collapsed: bool,
    pub gamma: Vec<String>,
    pub labels: Vec<String>,
    pub rows: Vec<RowReport>,
    pub sum_rule: SumRuleReport,
    pub trivial_row_weight: f64,
    pub preserves: bool,
}

fn label_string(alpha: usize, k: usize) -> String {
    (0..k).map(|i| if alpha >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn cell(v: Complex64) -> [f64; 2] {
    [round12(v.re), round12(v.im)]
}

impl GenCoeffTable {
    /// Collapsing merges the nontrivial rows when they are all equal; it is
    /// ignored otherwise.
    pub fn report(&self, collapse: bool) -> TableReport {
        let collapsed = collapse && self.rows() > 2 && self.nontrivial_rows_equal();
        let shown = if collapsed { 2 } else { self.rows() };
        let rows = (0..shown)
            .map(|r| RowReport {
                mu: if collapsed && r == 1 { MERGED_ROW.to_string() } else { self.syndromes().leader(r).to_string() },
                cells: self.row(r).iter().map(|v| cell(*v)).collect(),
            })
            .collect();
        TableReport {
            n: self.frame().n(),
            k: self.k(),
            gate: self.gate_description().to_string(),
            route: self.route(),
            collapsed,
            gamma: self.logicals().leaders().iter().map(ToString::to_string).collect(),
            labels: self.labels().iter().map(|&a| label_string(a, self.k())).collect(),
            rows,
            sum_rule: self.sum_rule(),
            trivial_row_weight: self.trivial_row_weight(),
            preserves: self.preserves(),
        }
    }

    /// CSV with header `mu,gamma,re,im`.
    pub fn to_csv(&self, collapse: bool) -> String {
        let report = self.report(collapse);
        let mut out = String::from("mu,gamma,re,im\n");
        for row in &report.rows {
            for (gamma, [re, im]) in report.gamma.iter().zip(&row.cells) {
                writeln!(out, "{},{},{},{}", row.mu, gamma, re, im).expect("writing to a String");
            }
        }
        out
    }
}
