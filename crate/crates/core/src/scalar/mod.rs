//! Exact arithmetic over rational functions in chart symbols, plus exact
//! linear algebra over that field.
//!
//! All values are immutable after construction and safe to share across
//! threads; every operation is a pure function.

pub mod chart;
pub mod expr;
pub mod matrix;
pub mod parse;
pub mod poly;

pub use chart::{Chart, ChartError, ExpGenerator};
pub use expr::{EvalError, ExprError, ScalarExpr};
pub use matrix::ExactMatrix;
pub use parse::{parse_expression, parse_rational, ParseError};
