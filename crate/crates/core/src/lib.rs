//! A workbench for finite transposition set algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`seqspace`]: sequences of `^n u`, permutations and the action `s ↦ s∘f`.
//! * [`algebra`]: carriers `D ⊆ ^n u`, the powerset algebra `℘(D)` with its
//!   substitution operators `S_f`, products, subalgebras and relativization.
//! * [`search`]: interchangeable strategies for searching assignment spaces,
//!   registered by name.
//! * [`termlang`]: terms over `{0, 1, ∧, ∨, ¬, s_f}`, equations and
//!   quasi-equations, with a parser, printer and checkers.
//! * [`theorems`]: executable verifiers for relativization, subdirect
//!   decomposition into small algebras, the quasi-equation `σ` and the
//!   principal ultraproduct embedding.

pub mod algebra;
pub mod bits;
pub mod error;
pub mod limits;
pub mod search;
pub mod seqspace;
pub mod termlang;
pub mod theorems;

pub use error::{Error, Result};
