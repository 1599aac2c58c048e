//! The gauge function `lambda_C(x, v) = sup { t : x + t v in C }` on convex
//! bodies, its concavity and semicontinuity probes, and the circumscribing
//! polytope construction.
//!
//! This module works in doubles: the gauge involves square roots, so the
//! properties here are analytic rather than combinatorial. Probe tolerance is
//! 1e-9; algebraic covariances hold to 1e-12.

use crate::error::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Tolerance for sampled analytic properties.
pub const PROBE_TOL: f64 = 1e-9;
/// Tolerance for algebraic identities.
pub const ALGEBRA_TOL: f64 = 1e-12;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_scaled(x: &[f64], t: f64, v: &[f64]) -> Vec<f64> {
    x.iter().zip(v).map(|(a, b)| a + t * b).collect()
}

/// A bounded intersection of half-spaces `a_i . z <= b_i` with a stored
/// strictly interior point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HalfspacePolytope {
    pub constraints: Vec<(Vec<f64>, f64)>,
    pub interior: Vec<f64>,
}

impl HalfspacePolytope {
    pub fn new(constraints: Vec<(Vec<f64>, f64)>, interior: Vec<f64>) -> Result<Self> {
        let dim = interior.len();
        if !(2..=3).contains(&dim) {
            return Err(Error::InvalidBody(format!("dimension {dim} not in 2..=3")));
        }
        if constraints.is_empty() {
            return Err(Error::InvalidBody("no constraints".into()));
        }
        for (a, b) in &constraints {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.len(),
                });
            }
            if dot(a, &interior) >= *b {
                return Err(Error::InvalidBody(format!(
                    "stored point not strictly interior: {a:?} . {interior:?} >= {b}"
                )));
            }
        }
        let body = HalfspacePolytope {
            constraints,
            interior,
        };
        // bounded iff every axis ray from the interior leaves the body
        for axis in 0..dim {
            for sign in [1.0, -1.0] {
                let mut v = vec![0.0; dim];
                v[axis] = sign;
                let t = body.ray_exit(&body.interior.clone(), &v)?;
                if !t.is_finite() {
                    return Err(Error::InvalidBody(format!(
                        "unbounded along axis {axis} (sign {sign})"
                    )));
                }
            }
        }
        Ok(body)
    }

    pub fn dim(&self) -> usize {
        self.interior.len()
    }

    /// The square `[-r, r]^2`.
    pub fn square(r: f64) -> Result<Self> {
        HalfspacePolytope::new(
            vec![
                (vec![1.0, 0.0], r),
                (vec![-1.0, 0.0], r),
                (vec![0.0, 1.0], r),
                (vec![0.0, -1.0], r),
            ],
            vec![0.0, 0.0],
        )
    }

    /// Regular `k`-gon of tangent half-spaces circumscribing the disc of
    /// radius `r` around `center`; contains the disc by construction.
    pub fn circumscribing_ngon(center: &[f64], r: f64, k: usize) -> Result<Self> {
        if center.len() != 2 || k < 3 {
            return Err(Error::InvalidBody("ngon needs dimension 2 and k >= 3".into()));
        }
        let mut constraints = Vec::with_capacity(k);
        for i in 0..k {
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / (k as f64);
            let a = vec![theta.cos(), theta.sin()];
            let b = r + dot(&a, center);
            constraints.push((a, b));
        }
        HalfspacePolytope::new(constraints, center.to_vec())
    }

    fn ray_exit(&self, x: &[f64], v: &[f64]) -> Result<f64> {
        let mut t_max = f64::INFINITY;
        let mut t_min = f64::NEG_INFINITY;
        for (a, b) in &self.constraints {
            let av = dot(a, v);
            let slack = b - dot(a, x);
            if av > 0.0 {
                t_max = t_max.min(slack / av);
            } else if av < 0.0 {
                t_min = t_min.max(slack / av);
            } else if slack < 0.0 {
                return Err(Error::LineMissesBody);
            }
        }
        if t_min > t_max + PROBE_TOL {
            return Err(Error::LineMissesBody);
        }
        Ok(t_max)
    }
}

/// A closed bounded convex body: an L2 ball (dimension 2 or 3) or a polytope.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum ConvexBody {
    Ball { center: Vec<f64>, radius: f64 },
    Polytope(HalfspacePolytope),
}

impl ConvexBody {
    pub fn unit_disc() -> Self {
        ConvexBody::Ball {
            center: vec![0.0, 0.0],
            radius: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Ball { center, .. } => center.len(),
            ConvexBody::Polytope(p) => p.dim(),
        }
    }

    pub fn translated(&self, w: &[f64]) -> ConvexBody {
        match self {
            ConvexBody::Ball { center, radius } => ConvexBody::Ball {
                center: center.iter().zip(w).map(|(c, d)| c + d).collect(),
                radius: *radius,
            },
            ConvexBody::Polytope(p) => ConvexBody::Polytope(HalfspacePolytope {
                constraints: p
                    .constraints
                    .iter()
                    .map(|(a, b)| (a.clone(), b + dot(a, w)))
                    .collect(),
                interior: p.interior.iter().zip(w).map(|(c, d)| c + d).collect(),
            }),
        }
    }

    pub fn scaled(&self, s: f64) -> Result<ConvexBody> {
        if s <= 0.0 {
            return Err(Error::InvalidBody(format!("scale {s} not positive")));
        }
        Ok(match self {
            ConvexBody::Ball { center, radius } => ConvexBody::Ball {
                center: center.iter().map(|c| c * s).collect(),
                radius: radius * s,
            },
            ConvexBody::Polytope(p) => ConvexBody::Polytope(HalfspacePolytope {
                constraints: p
                    .constraints
                    .iter()
                    .map(|(a, b)| (a.clone(), b * s))
                    .collect(),
                interior: p.interior.iter().map(|c| c * s).collect(),
            }),
        })
    }

    /// Membership up to `PROBE_TOL`.
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            ConvexBody::Ball { center, radius } => {
                norm2(&sub(x, center)) <= radius + PROBE_TOL
            }
            ConvexBody::Polytope(p) => p
                .constraints
                .iter()
                .all(|(a, b)| dot(a, x) <= b + PROBE_TOL),
        }
    }

    /// A uniform-ish sample point of the body.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        match self {
            ConvexBody::Ball { center, radius } => loop {
                let v: Vec<f64> = center.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
                if norm2(&v) <= 1.0 {
                    return center.iter().zip(&v).map(|(c, d)| c + radius * d).collect();
                }
            },
            ConvexBody::Polytope(p) => {
                // random direction from the interior point, random fraction of
                // the exit distance
                loop {
                    let v: Vec<f64> = p.interior.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
                    if norm2(&v) < 1e-6 {
                        continue;
                    }
                    let t_max = p.ray_exit(&p.interior, &v).unwrap_or(0.0);
                    let f: f64 = rng.gen_range(0.0..1.0);
                    return add_scaled(&p.interior, f * t_max, &v);
                }
            }
        }
    }
}

/// `lambda_C(x, v) = sup { t : x + t v in C }`.
///
/// Polytope: a ray cast over the active constraints. Ball: the larger root of
/// the quadratic `|x + t v - c|^2 = r^2`. Errors when `v = 0` or the line
/// misses the body.
pub fn lambda(body: &ConvexBody, x: &[f64], v: &[f64]) -> Result<f64> {
    if x.len() != body.dim() || v.len() != body.dim() {
        return Err(Error::DimensionMismatch {
            expected: body.dim(),
            got: x.len().max(v.len()),
        });
    }
    if norm2(v) == 0.0 {
        return Err(Error::ZeroDirection);
    }
    match body {
        ConvexBody::Ball { center, radius } => {
            let d = sub(x, center);
            let a = dot(v, v);
            let b = 2.0 * dot(&d, v);
            let c = dot(&d, &d) - radius * radius;
            let disc = b * b - 4.0 * a * c;
            if disc < -PROBE_TOL * a.max(1.0) {
                return Err(Error::LineMissesBody);
            }
            Ok((-b + disc.max(0.0).sqrt()) / (2.0 * a))
        }
        ConvexBody::Polytope(p) => p.ray_exit(x, v),
    }
}

/// True iff `x in C`, decided through the gauge along `v` in both directions.
pub fn member_via_lambda(body: &ConvexBody, x: &[f64], v: &[f64]) -> Result<bool> {
    let forward = lambda(body, x, v);
    let backward = lambda(body, x, &v.iter().map(|c| -c).collect::<Vec<_>>());
    Ok(match (forward, backward) {
        (Ok(f), Ok(b)) => f >= -PROBE_TOL && b >= -PROBE_TOL,
        (Err(Error::LineMissesBody), _) | (_, Err(Error::LineMissesBody)) => false,
        (Err(e), _) | (_, Err(e)) => return Err(e),
    })
}

/// Report of a sampled probe: worst observed violation and sample count.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub samples: usize,
    pub max_violation: f64,
    pub holds: bool,
}

/// Samples `lambda(t x + (1-t) y, v) >= t lambda(x,v) + (1-t) lambda(y,v)`
/// for random body points and a fixed random direction; also checks
/// `lambda >= 0` on the body.
pub fn concavity_probe(body: &ConvexBody, samples: usize, seed: u64) -> Result<ProbeReport> {
    if samples == 0 {
        return Err(Error::Config("concavity_probe needs samples >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<f64> = loop {
        let cand: Vec<f64> = (0..body.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if norm2(&cand) > 1e-3 {
            break cand;
        }
    };
    let mut max_violation: f64 = 0.0;
    for _ in 0..samples {
        let x = body.sample(&mut rng);
        let y = body.sample(&mut rng);
        let t: f64 = rng.gen_range(0.0..1.0);
        let mid: Vec<f64> = x
            .iter()
            .zip(&y)
            .map(|(a, b)| t * a + (1.0 - t) * b)
            .collect();
        let lx = lambda(body, &x, &v)?;
        let ly = lambda(body, &y, &v)?;
        let lm = lambda(body, &mid, &v)?;
        max_violation = max_violation.max(t * lx + (1.0 - t) * ly - lm);
        max_violation = max_violation.max(-lx).max(-ly).max(-lm);
    }
    Ok(ProbeReport {
        samples,
        max_violation,
        holds: max_violation <= PROBE_TOL,
    })
}

/// Circumscribing polygon whose gauge exceeds the disc's by less than
/// `delta` at sampled points: starts with a regular 8-gon and doubles `k`
/// until a 10^4-point sampled maximum of `lambda_P - lambda_C` is below
/// `delta / 2`.
pub fn approximate_by_polytope(
    center: &[f64],
    radius: f64,
    delta: f64,
    seed: u64,
) -> Result<HalfspacePolytope> {
    if delta <= 0.0 {
        return Err(Error::InvalidBody(format!("delta {delta} not positive")));
    }
    if center.len() != 2 || radius <= 0.0 {
        return Err(Error::InvalidBody("needs a planar disc".into()));
    }
    let ball = ConvexBody::Ball {
        center: center.to_vec(),
        radius,
    };
    let mut k = 8;
    loop {
        let poly = HalfspacePolytope::circumscribing_ngon(center, radius, k)?;
        let body = ConvexBody::Polytope(poly.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<f64> = loop {
            let cand: Vec<f64> = (0..2).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if norm2(&cand) > 1e-3 {
                break cand;
            }
        };
        let mut max_gap: f64 = 0.0;
        let mut min_gap: f64 = f64::INFINITY;
        for _ in 0..10_000 {
            let x = ball.sample(&mut rng);
            let gap = lambda(&body, &x, &v)? - lambda(&ball, &x, &v)?;
            max_gap = max_gap.max(gap);
            min_gap = min_gap.min(gap);
        }
        if min_gap < -ALGEBRA_TOL {
            return Err(Error::InvalidBody(format!(
                "containment violated: gap {min_gap}"
            )));
        }
        if max_gap < delta / 2.0 {
            return Ok(poly);
        }
        k *= 2;
        if k > 1 << 20 {
            return Err(Error::InvalidBody("polygon refinement diverged".into()));
        }
    }
}

/// Compares `limsup lambda(x_i, v)` against `lambda(x, v)` along a path
/// `x_i -> x` inside the body; for polytopes additionally reports whether the
/// values converge (continuity).
pub fn semicontinuity_probe(
    body: &ConvexBody,
    path: &[Vec<f64>],
    limit: &[f64],
    v: &[f64],
) -> Result<ProbeReport> {
    if path.is_empty() {
        return Err(Error::Config("semicontinuity_probe needs a path".into()));
    }
    let at_limit = lambda(body, limit, v)?;
    let mut first_gap = 0.0;
    let mut last_gap = 0.0;
    let mut first_over = 0.0;
    let mut last_over = 0.0;
    for (i, x) in path.iter().enumerate() {
        let l = lambda(body, x, v)?;
        let gap = (l - at_limit).abs();
        let over = (l - at_limit).max(0.0);
        if i == 0 {
            first_gap = gap;
            first_over = over;
        }
        last_gap = gap;
        last_over = over;
    }
    // Upper semicontinuity, finite analogue: the overshoot above the limit
    // value must have decayed along the path. An exact limsup bound is out of
    // reach on a finite path because the gauge can approach its limit as
    // slowly as a square root (disc, tangent direction).
    let mut max_violation: f64 = last_over - (first_over / 4.0 + PROBE_TOL);
    if matches!(body, ConvexBody::Polytope(_)) {
        // continuity on polytopes: the two-sided gap must shrink as well
        max_violation = max_violation.max(last_gap - (first_gap / 4.0 + PROBE_TOL));
    }
    Ok(ProbeReport {
        samples: path.len(),
        max_violation,
        holds: max_violation <= PROBE_TOL,
    })
}
