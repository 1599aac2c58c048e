//! Exact set calculus for adversarial binary classification.
//!
//! The crate manipulates classifier sets `A` together with the norm-ball
//! perturbation operations `A^eps` (dilation) and `A^{-eps}` (erosion), the
//! fringe `F(A)` of points that cannot sit inside a same-class ball, and the
//! risk-decreasing mollifier `((A^{-eps})^{2eps})^{-eps}`. Sets live either on
//! the rational line ([`geometry::IntervalSet`]) or on an integer lattice
//! ([`geometry::GridSet`]); every operation on them is exact.
//!
//! On top of the set calculus sit exact risk evaluation over finite labeled
//! distributions ([`risk`]), exhaustive and greedy search for minimum
//! adversarial-risk classifiers ([`optimize`]), a floating-point gauge
//! function on convex bodies ([`gauge`]), and a discrete string-swap
//! perturbation model ([`strings`]). The [`suite`] module packages the
//! property checks behind the `advcalc` command line tool.

pub mod error;
pub mod gauge;
pub mod geometry;
pub mod io;
pub mod morphology;
pub mod optimize;
pub mod render;
pub mod risk;
pub mod strings;
pub mod suite;

pub use error::Error;

/// Exact rational scalar used throughout the interval and grid paths.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a `Rational` from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    use num_bigint::BigInt;
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer `Rational`.
pub fn rint(n: i64) -> Rational {
    rat(n, 1)
}
