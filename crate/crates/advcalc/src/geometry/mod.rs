//! Exact set representations and the norms that define perturbation balls.

mod grid;
mod interval;
mod norm;

pub use grid::GridSet;
pub use interval::{Interval, IntervalSet};
pub use norm::{ball_membership, Halfspace, Norm, Point};

use crate::error::{Error, Result};
use crate::Rational;
use num_traits::Zero;

/// A nonnegative perturbation radius.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Radius(Rational);

impl Radius {
    pub fn new(value: Rational) -> Result<Self> {
        if value < Rational::zero() {
            return Err(Error::InvalidRadius(value.to_string()));
        }
        Ok(Radius(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn zero() -> Self {
        Radius(Rational::zero())
    }
}

impl std::fmt::Display for Radius {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
