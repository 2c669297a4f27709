//! Front end: Brieskorn ingestion, plumbing graphs, the expression language and reports.

pub mod brieskorn;
pub mod expr;
pub mod plumbing;
pub mod report;

pub use brieskorn::{brieskorn_class, BrieskornError, BrieskornParams, BrieskornRoot};
pub use expr::{parse_expr, Atom, Expr, ParseError, Term};
pub use plumbing::{ArVerdict, PlumbingError, PlumbingGraph, DEFAULT_AR_BOUND};
pub use report::{evaluate, EvalError, EvalOptions, OracleStatus, Report, TermReport};
