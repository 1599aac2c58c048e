use crate::error::{Error, Result};
use crate::Rational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// A point with exact rational coordinates.
pub type Point = Vec<Rational>;

/// One closed half-space `a . z <= b` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

/// A norm descriptor. The closed ball `{v : |v| <= eps}` it induces is the
/// structuring element of every dilation and erosion.
///
/// All membership tests are exact: the Euclidean case compares squared
/// quantities so no square root is ever taken.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Norm {
    L1 { dimension: usize },
    L2 { dimension: usize },
    LInf { dimension: usize },
    WeightedLInf { weights: Vec<Rational> },
    PolytopeGauge { dimension: usize, halfspaces: Vec<Halfspace> },
}

impl Norm {
    pub fn l1(dimension: usize) -> Self {
        Norm::L1 { dimension }
    }

    pub fn l2(dimension: usize) -> Self {
        Norm::L2 { dimension }
    }

    pub fn linf(dimension: usize) -> Self {
        Norm::LInf { dimension }
    }

    pub fn weighted_linf(weights: Vec<Rational>) -> Result<Self> {
        if weights.iter().any(|w| *w <= Rational::zero()) {
            return Err(Error::InvalidRadius(
                "weighted-LInf weights must be positive".into(),
            ));
        }
        Ok(Norm::WeightedLInf { weights })
    }

    /// Builds a polytope-gauge norm. The half-space family is symmetrized
    /// (each `a . z <= b` gains its mirror `-a . z <= b`) so the unit ball
    /// satisfies `v in ball <=> -v in ball`; offsets must be positive so the
    /// origin is interior.
    pub fn polytope_gauge(dimension: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        if halfspaces.is_empty() {
            return Err(Error::InvalidRadius("polytope gauge needs half-spaces".into()));
        }
        let mut sym = Vec::with_capacity(halfspaces.len() * 2);
        for h in halfspaces {
            if h.normal.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: h.normal.len(),
                });
            }
            if h.offset <= Rational::zero() {
                return Err(Error::InvalidRadius(
                    "polytope gauge offsets must be positive".into(),
                ));
            }
            let mirror = Halfspace {
                normal: h.normal.iter().map(|a| -a.clone()).collect(),
                offset: h.offset.clone(),
            };
            sym.push(h);
            if !sym.contains(&mirror) {
                sym.push(mirror);
            }
        }
        Ok(Norm::PolytopeGauge {
            dimension,
            halfspaces: sym,
        })
    }

    pub fn dimension(&self) -> usize {
        match self {
            Norm::L1 { dimension }
            | Norm::L2 { dimension }
            | Norm::LInf { dimension }
            | Norm::PolytopeGauge { dimension, .. } => *dimension,
            Norm::WeightedLInf { weights } => weights.len(),
        }
    }

    fn check_dim(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Exact test `|v| <= eps`.
    pub fn within(&self, v: &[Rational], eps: &Rational) -> Result<bool> {
        self.check_dim(v)?;
        Ok(match self {
            Norm::L1 { .. } => {
                let sum: Rational = v.iter().map(|c| c.abs()).sum();
                sum <= *eps
            }
            Norm::L2 { .. } => {
                let sq: Rational = v.iter().map(|c| c * c).sum();
                sq <= eps * eps
            }
            Norm::LInf { .. } => v.iter().all(|c| c.abs() <= *eps),
            Norm::WeightedLInf { weights } => v
                .iter()
                .zip(weights)
                .all(|(c, w)| c.abs() * w <= *eps),
            Norm::PolytopeGauge { halfspaces, .. } => halfspaces.iter().all(|h| {
                let dot: Rational = h.normal.iter().zip(v).map(|(a, c)| a * c).sum();
                dot <= eps * &h.offset
            }),
        })
    }
}

/// Exact membership of `x` in the closed ball of radius `eps` around `c`.
pub fn ball_membership(c: &[Rational], eps: &Rational, norm: &Norm, x: &[Rational]) -> Result<bool> {
    if c.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: c.len(),
            got: x.len(),
        });
    }
    if *eps < Rational::zero() {
        return Err(Error::InvalidRadius(eps.to_string()));
    }
    let diff: Vec<Rational> = x.iter().zip(c).map(|(a, b)| a - b).collect();
    norm.within(&diff, eps)
}
