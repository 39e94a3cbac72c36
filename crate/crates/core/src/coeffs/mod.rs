//! Generator-coefficient tables, the unitarity sum rule, preservation and
//! induced logical operators.

mod emit;
mod frame;
mod logical;
mod table;

pub use emit::{round12, RowReport, TableReport, MERGED_ROW};
pub use frame::Frame;
pub use logical::{LogicalAngle, LogicalDiagonalOp};
pub use table::{
    gencoeffs, gencoeffs_direct, gencoeffs_qfd, gencoeffs_rz, sum_rule_audit, GenCoeffTable, Route, SumRuleAudit,
    SumRuleReport,
};
