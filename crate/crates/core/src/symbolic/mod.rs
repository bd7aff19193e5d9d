//! Exact symbolic layer: multivariate polynomials over Q, rational
//! functions whose denominators are products of linear forms, finite
//! exponential sums, and the Fourier transform of simplex measures.
//!
//! Rational functions only ever need root-hyperplane denominators here
//! (D̄, Fourier transforms of D, the entries of n_x), so [`RationalFn`]
//! keeps its denominator factored into normalized linear forms. Because
//! linear forms are irreducible, cancelling every factor that divides the
//! numerator is an exact gcd reduction and gives a canonical form.

mod expsum;
mod poly;
mod ratfn;
mod simplex;

pub use expsum::{ChartKind, ExpSum, ExpValue, TorusChart};
pub use poly::{CommRing, MultiPoly};
pub use ratfn::{LinearForm, RationalFn};
pub use simplex::{distinct_node_formula, ft_simplex, linear_form, simplex_mass, SIMPLEX_MASS_NUMERATOR};

use crate::Rational;

impl CommRing for Rational {
    fn zero_like(&self) -> Self {
        crate::rat(0)
    }
    fn one_like(&self) -> Self {
        crate::rat(1)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn is_zero_elem(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}
