//! Exact-arithmetic workbench for biperfect bases of the coordinate ring C[N].
//!
//! The crate covers the combinatorial side (root data, the crystal B(∞) via
//! Lusztig data, MV polytopes, multiplicity counts), the algebraic side
//! (explicit representations, C[N] for SL_n with its left and right
//! Chevalley derivations, biperfect-basis verification and uniqueness
//! search), the shuffle measures D and D̄ with exact symbolic Fourier
//! transforms, and preprojective-algebra modules with their ξ_M functions
//! and Harder–Narasimhan polytopes.
//!
//! All arithmetic is exact: rationals are [`Rational`] (big-integer backed),
//! finite fields are handled in [`field`].

pub mod cli;
pub mod coordring;
pub mod crystal;
pub mod error;
pub mod field;
pub mod linalg;
pub mod measures;
pub mod polytope;
pub mod preproj;
pub mod repcheck;
pub mod rootdata;
pub mod symbolic;

pub use error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for building the rational `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
