//! Command-line front end for the `krein-osc` laboratory and its operator language.

pub mod commands;
pub mod expr;

pub use commands::{run_command, Cli, CliError};
pub use expr::{eval_1d, eval_2d, parse_operator_expr, ExprError, OpExpr, Space};
