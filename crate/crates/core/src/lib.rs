//! Exact computations with singular holomorphic foliations of the plane and
//! of ℙ², given by polynomial 1-forms with rational coefficients.
//!
//! Everything is computed over ℚ without rounding. Questions that depend on
//! non-rational algebraic numbers are reported as undecided rather than
//! guessed.

pub mod blowup;
pub mod exactalg;
pub mod foliation;
pub mod forms;
pub mod logcalc;
pub mod parse;

#[cfg(feature = "testkit")]
pub mod testkit;
