//! A small expression language for curve coordinates.
//!
//! Expressions are functions of the single variable `t` with optional named
//! parameters, e.g. the ellipse radius
//! `(cos(t)^2/a^2 + sin(t)^2/b^2)^(-1/2)`. See `docs/grammar.md` in the
//! repository for the grammar.

mod ast;
mod diff;
mod eval;
mod parser;

pub use ast::{Expr, Func};
pub use eval::Params;
pub use parser::parse;
