//! Identity registry, expression language, relation finder and CLI.

pub mod cli;
pub mod eval;
pub mod expr;
pub mod registry;
pub mod relation;

pub use eval::{eval_expr, EvalError};
pub use expr::{parse_expr, Expr, Mono, ParseError};
pub use registry::{registry, run_all, run_check, CheckReport, IdentityCheck, Status, Summary};
pub use relation::find_relation;
