//! Front end for `qbl-core`: a small expression language for functions on
//! partitions, q-bracket reports and the verification suites behind the
//! `qbl` binary.

pub mod eval;
pub mod expr;
pub mod report;
pub mod suites;

pub use eval::{eval, Ctx, Value};
pub use expr::{parse, Expr, ParseError};
