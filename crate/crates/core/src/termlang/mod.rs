//! Terms over `{0, 1, ∧, ∨, ¬, s_f}`, equations and quasi-equations.

mod ast;
mod check;
mod eval;
mod gen;
mod parse;

pub use ast::{Equation, PermSpec, QuasiEquation, Term};
pub use check::{
    check_equation, check_quasi, falsifiers, revalidate, sigma, sigma_pairs, Verdict, MAX_ALL_PAIRS_DIM,
};
pub use eval::{eval_reference, eval_term, Assignment, CompiledTerm};
pub use gen::random_term;
pub use parse::{parse_equation, parse_quasi, parse_term};
