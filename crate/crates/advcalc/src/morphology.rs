//! The epsilon calculus: dilation `A^eps`, erosion `A^{-eps}`, opening,
//! closing, the fringe `F(A)`, the risk-decreasing mollifier, robustness
//! predicates, and finite-family identity checks.
//!
//! Every operation is generic over the two set representations through
//! [`MorphOps`]: closed rational interval unions on the line and lattice
//! masks on a grid. A [`MorphContext`] carries the norm, the radius, and the
//! bounded domain used for complements.

use crate::error::{Error, Result};
use crate::geometry::{GridSet, Interval, IntervalSet, Norm, Radius};
use crate::Rational;
use num_traits::{Signed, Zero};

/// Bounded region used for complements: an interval window on the line or an
/// index box on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Line(Interval),
    Box { lo: Vec<i64>, hi: Vec<i64> },
}

/// Norm, radius, and complement domain for one morphological computation.
#[derive(Debug, Clone)]
pub struct MorphContext {
    pub norm: Norm,
    pub eps: Radius,
    pub domain: Domain,
}

impl MorphContext {
    /// Context for interval sets. The norm must be one-dimensional.
    pub fn line(norm: Norm, eps: Radius, domain: Interval) -> Result<Self> {
        if norm.dimension() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: norm.dimension(),
            });
        }
        Ok(MorphContext {
            norm,
            eps,
            domain: Domain::Line(domain),
        })
    }

    /// Context for interval sets with the window padded `2 eps` beyond the
    /// bounding interval of the inputs, enough slack for every chained
    /// operation in this module.
    pub fn line_padded(norm: Norm, eps: Radius, inputs: &[&IntervalSet]) -> Result<Self> {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for s in inputs {
            if let Some(bb) = s.bounding_interval() {
                lo = Some(match lo {
                    Some(l) if l <= bb.lo => l,
                    _ => bb.lo.clone(),
                });
                hi = Some(match hi {
                    Some(h) if h >= bb.hi => h,
                    _ => bb.hi.clone(),
                });
            }
        }
        let (lo, hi) = match (lo, hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => (Rational::zero(), Rational::zero()),
        };
        let pad = eps.value() * crate::rint(2);
        let domain = Interval::new(lo - &pad - crate::rint(1), hi + pad + crate::rint(1))?;
        MorphContext::line(norm, eps, domain)
    }

    /// Context for grid sets with an explicit complement box.
    pub fn grid(norm: Norm, eps: Radius, lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != norm.dimension() || hi.len() != norm.dimension() {
            return Err(Error::DimensionMismatch {
                expected: norm.dimension(),
                got: lo.len(),
            });
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::Config("grid box has lo > hi".into()));
        }
        Ok(MorphContext {
            norm,
            eps,
            domain: Domain::Box { lo, hi },
        })
    }

    /// Same context at a different radius.
    pub fn with_eps(&self, eps: Radius) -> Self {
        MorphContext {
            norm: self.norm.clone(),
            eps,
            domain: self.domain.clone(),
        }
    }

    pub fn line_domain(&self) -> Result<&Interval> {
        match &self.domain {
            Domain::Line(iv) => Ok(iv),
            Domain::Box { .. } => Err(Error::Config(
                "interval operation needs a line domain".into(),
            )),
        }
    }

    pub fn box_domain(&self) -> Result<(&[i64], &[i64])> {
        match &self.domain {
            Domain::Box { lo, hi } => Ok((lo, hi)),
            Domain::Line(_) => Err(Error::Config("grid operation needs a box domain".into())),
        }
    }

    /// Half-width of the one-dimensional ball `{v : |v| <= eps}` under this
    /// context's norm.
    pub fn halfwidth(&self) -> Result<Rational> {
        ball_halfwidth_1d(&self.norm, self.eps.value())
    }
}

/// Half-width of the 1-D norm ball of radius `eps`: the ball is the interval
/// `[-h, h]` and every 1-D norm reduces to a positive scale factor.
pub fn ball_halfwidth_1d(norm: &Norm, eps: &Rational) -> Result<Rational> {
    if norm.dimension() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: norm.dimension(),
        });
    }
    Ok(match norm {
        Norm::L1 { .. } | Norm::L2 { .. } | Norm::LInf { .. } => eps.clone(),
        Norm::WeightedLInf { weights } => eps / &weights[0],
        Norm::PolytopeGauge { halfspaces, .. } => {
            let mut h: Option<Rational> = None;
            for hs in halfspaces {
                let a = hs.normal[0].abs();
                if a.is_zero() {
                    continue;
                }
                let cand = eps * &hs.offset / a;
                h = Some(match h {
                    Some(cur) if cur <= cand => cur,
                    _ => cand,
                });
            }
            h.ok_or_else(|| Error::InvalidRadius("gauge ball is unbounded".into()))?
        }
    })
}

/// The primitive set operations each representation supplies; everything else
/// in this module is derived from them.
pub trait MorphOps: Sized + Clone {
    fn dilate(&self, ctx: &MorphContext) -> Result<Self>;
    /// Direct erosion: the points whose whole ball stays inside the set.
    fn erode(&self, ctx: &MorphContext) -> Result<Self>;
    /// Erosion through the duality `A^{-eps} = ((A^C)^eps)^C`, used as a
    /// cross-check of [`MorphOps::erode`].
    fn erode_via_complement(&self, ctx: &MorphContext) -> Result<Self>;
    fn complement(&self, ctx: &MorphContext) -> Result<Self>;
    fn union(&self, other: &Self) -> Result<Self>;
    fn intersection(&self, other: &Self) -> Result<Self>;
    fn difference(&self, other: &Self) -> Result<Self>;
    fn is_empty(&self) -> bool;
    /// Bit-exact equality of canonical representations.
    fn eq_exact(&self, other: &Self) -> bool;
    /// Equality up to measure zero (exact mask equality on grids).
    fn eq_closure(&self, other: &Self) -> bool;
    fn subset(&self, other: &Self) -> Result<bool>;
    /// A printable sample point, used for witnesses.
    fn sample_point(&self) -> Option<String>;
}

impl MorphOps for IntervalSet {
    fn dilate(&self, ctx: &MorphContext) -> Result<Self> {
        self.dilate_by(&ctx.halfwidth()?, ctx.line_domain()?)
    }

    fn erode(&self, ctx: &MorphContext) -> Result<Self> {
        self.erode_by(&ctx.halfwidth()?, ctx.line_domain()?)
    }

    fn erode_via_complement(&self, ctx: &MorphContext) -> Result<Self> {
        let dom = ctx.line_domain()?;
        self.complement_within(dom)?
            .dilate_by(&ctx.halfwidth()?, dom)?
            .complement_within(dom)
    }

    fn complement(&self, ctx: &MorphContext) -> Result<Self> {
        self.complement_within(ctx.line_domain()?)
    }

    fn union(&self, other: &Self) -> Result<Self> {
        Ok(IntervalSet::union(self, other))
    }

    fn intersection(&self, other: &Self) -> Result<Self> {
        Ok(IntervalSet::intersection(self, other))
    }

    fn difference(&self, other: &Self) -> Result<Self> {
        Ok(IntervalSet::difference(self, other))
    }

    fn is_empty(&self) -> bool {
        IntervalSet::is_empty(self)
    }

    fn eq_exact(&self, other: &Self) -> bool {
        self == other
    }

    fn eq_closure(&self, other: &Self) -> bool {
        self.essentially_eq(other)
    }

    fn subset(&self, other: &Self) -> Result<bool> {
        Ok(self.is_subset(other))
    }

    fn sample_point(&self) -> Option<String> {
        self.intervals().first().map(|iv| iv.lo.to_string())
    }
}

impl MorphOps for GridSet {
    fn dilate(&self, ctx: &MorphContext) -> Result<Self> {
        GridSet::dilate(self, &ctx.norm, ctx.eps.value())
    }

    fn erode(&self, ctx: &MorphContext) -> Result<Self> {
        GridSet::erode(self, &ctx.norm, ctx.eps.value())
    }

    fn erode_via_complement(&self, ctx: &MorphContext) -> Result<Self> {
        let (lo, hi) = ctx.box_domain()?;
        // The intermediate complement needs room for one dilation; expand the
        // box by the per-axis reach of the structuring element, then clip the
        // dilated background back to the original box before complementing.
        let se = GridSet::structuring_element(&ctx.norm, ctx.eps.value(), self.cell_size())?;
        let mut reach = vec![0i64; lo.len()];
        for v in &se {
            for (axis, c) in v.iter().enumerate() {
                if c.abs() > reach[axis] {
                    reach[axis] = c.abs();
                }
            }
        }
        let lo2: Vec<i64> = lo.iter().zip(&reach).map(|(l, r)| l - r).collect();
        let hi2: Vec<i64> = hi.iter().zip(&reach).map(|(h, r)| h + r).collect();
        let background = self.complement_within(&lo2, &hi2)?;
        let grown = background.dilate(&ctx.norm, ctx.eps.value())?;
        let keep: Vec<Vec<i64>> = grown
            .cells()
            .iter()
            .filter(|idx| {
                idx.iter().zip(lo).all(|(i, l)| i >= l) && idx.iter().zip(hi).all(|(i, h)| i <= h)
            })
            .cloned()
            .collect();
        let clipped = GridSet::new(self.origin().to_vec(), self.cell_size().clone())?
            .with_cells(keep)?;
        clipped.complement_within(lo, hi)
    }

    fn complement(&self, _ctx: &MorphContext) -> Result<Self> {
        // the inverted representation keeps the complement unbounded, so no
        // box ever truncates a later dilation or erosion
        Ok(self.inverse())
    }

    fn union(&self, other: &Self) -> Result<Self> {
        GridSet::union(self, other)
    }

    fn intersection(&self, other: &Self) -> Result<Self> {
        GridSet::intersection(self, other)
    }

    fn difference(&self, other: &Self) -> Result<Self> {
        GridSet::difference(self, other)
    }

    fn is_empty(&self) -> bool {
        GridSet::is_empty(self)
    }

    fn eq_exact(&self, other: &Self) -> bool {
        self.set_eq(other)
    }

    fn eq_closure(&self, other: &Self) -> bool {
        self.set_eq(other)
    }

    fn subset(&self, other: &Self) -> Result<bool> {
        self.is_subset(other)
    }

    fn sample_point(&self) -> Option<String> {
        self.witness_cell().map(|idx| format!("{idx:?}"))
    }
}

/// Opening `(A^{-eps})^eps`: erase every piece too thin to hold a ball.
pub fn opening<S: MorphOps>(a: &S, ctx: &MorphContext) -> Result<S> {
    a.erode(ctx)?.dilate(ctx)
}

/// Closing `(A^eps)^{-eps}`: fill every gap too thin to hold a ball.
pub fn closing<S: MorphOps>(a: &S, ctx: &MorphContext) -> Result<S> {
    a.dilate(ctx)?.erode(ctx)
}

/// The fringe `F(A) = A \ (A^{-eps})^eps`: points of `A` that no same-class
/// ball can contain.
pub fn fringe<S: MorphOps>(a: &S, ctx: &MorphContext) -> Result<S> {
    a.difference(&opening(a, ctx)?)
}

/// The risk-decreasing mollifier `((A^{-eps})^{2 eps})^{-eps}`, computed as
/// four single-radius passes so it stays exact on lattices where radius
/// addition fails.
pub fn mollify<S: MorphOps>(a: &S, ctx: &MorphContext) -> Result<S> {
    a.erode(ctx)?.dilate(ctx)?.dilate(ctx)?.erode(ctx)
}

/// Checks `(A^{eps1})^{eps2} = A^{eps1+eps2}` and the erosion counterpart.
///
/// On grids this is only attempted for L1/LInf norms with integer radii;
/// other combinations error with [`Error::CompositionNotExact`] because the
/// discrete ball of the summed radius can strictly exceed the two-step sum
/// (see [`structuring_composition_witness`]).
pub fn compose_radii_check<S: MorphOps>(
    a: &S,
    ctx: &MorphContext,
    eps1: &Radius,
    eps2: &Radius,
) -> Result<bool> {
    if let Domain::Box { .. } = ctx.domain {
        let integer = eps1.value().is_integer() && eps2.value().is_integer();
        let polyhedral = matches!(ctx.norm, Norm::L1 { .. } | Norm::LInf { .. });
        if !integer || !polyhedral {
            return Err(Error::CompositionNotExact);
        }
    }
    let c1 = ctx.with_eps(eps1.clone());
    let c2 = ctx.with_eps(eps2.clone());
    let c12 = ctx.with_eps(Radius::new(eps1.value() + eps2.value())?);
    let two_step = a.dilate(&c1)?.dilate(&c2)?;
    let one_step = a.dilate(&c12)?;
    if !two_step.eq_closure(&one_step) {
        return Ok(false);
    }
    let two_step_e = a.erode(&c1)?.erode(&c2)?;
    let one_step_e = a.erode(&c12)?;
    Ok(two_step_e.eq_closure(&one_step_e))
}

/// First lattice vector in the summed-radius ball missed by the two-step
/// Minkowski sum, if any. For the Euclidean norm with radii 1 and 2 the
/// witness is `(2, 2)`.
pub fn structuring_composition_witness(
    norm: &Norm,
    eps1: &Rational,
    eps2: &Rational,
    cell: &Rational,
) -> Result<Option<Vec<i64>>> {
    let se1 = GridSet::structuring_element(norm, eps1, cell)?;
    let se2 = GridSet::structuring_element(norm, eps2, cell)?;
    let se12 = GridSet::structuring_element(norm, &(eps1 + eps2), cell)?;
    let mut sum: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
    for a in &se1 {
        for b in &se2 {
            sum.insert(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    for v in se12 {
        if !sum.contains(&v) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Outcome of [`is_pseudo_certifiably_robust`].
#[derive(Debug, Clone)]
pub struct RobustnessVerdict {
    pub robust: bool,
    /// A point in whichever fringe is nonempty, when not robust.
    pub witness: Option<String>,
}

/// True iff both `F(A)` and `F(A^C)` are empty: every point of either class
/// sits inside some ball of its own class.
pub fn is_pseudo_certifiably_robust<S: MorphOps>(
    a: &S,
    ctx: &MorphContext,
) -> Result<RobustnessVerdict> {
    let f = fringe(a, ctx)?;
    if !f.is_empty() {
        return Ok(RobustnessVerdict {
            robust: false,
            witness: f.sample_point(),
        });
    }
    let fc = fringe(&a.complement(ctx)?, ctx)?;
    if !fc.is_empty() {
        return Ok(RobustnessVerdict {
            robust: false,
            witness: fc.sample_point(),
        });
    }
    Ok(RobustnessVerdict {
        robust: true,
        witness: None,
    })
}

/// True iff the ball around `x` lies entirely on `x`'s side of the
/// classifier: `x in A^{-eps}` or `x in (A^C)^{-eps}`.
pub fn is_certifiably_robust_at(
    a: &IntervalSet,
    ctx: &MorphContext,
    x: &Rational,
) -> Result<bool> {
    let dom = ctx.line_domain()?;
    if !dom.contains(x) {
        return Err(Error::AtomOutsideDomain(x.to_string()));
    }
    if a.contains(x) {
        Ok(a.erode(ctx)?.contains(x))
    } else {
        Ok(a.complement(ctx)?.erode(ctx)?.contains(x))
    }
}

/// One named identity outcome inside an [`IdentityReport`].
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

/// Result of [`finite_family_identities`].
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn check<S: MorphOps>(name: &'static str, holds: bool, on_fail: &S) -> IdentityCheck {
    IdentityCheck {
        name,
        holds,
        witness: if holds { None } else { on_fail.sample_point() },
    }
}

/// The four finite-family relations: dilation distributes over unions,
/// erosion over intersections, and the two one-sided containments.
pub fn finite_family_identities<S: MorphOps>(
    sets: &[S],
    ctx: &MorphContext,
) -> Result<IdentityReport> {
    if sets.is_empty() || sets.len() > 8 {
        return Err(Error::Config(format!(
            "family size must be 1..=8, got {}",
            sets.len()
        )));
    }
    let mut union = sets[0].clone();
    let mut inter = sets[0].clone();
    for s in &sets[1..] {
        union = union.union(s)?;
        inter = inter.intersection(s)?;
    }
    let mut dil_union = sets[0].dilate(ctx)?;
    let mut ero_inter = sets[0].erode(ctx)?;
    let mut dil_inter = sets[0].dilate(ctx)?;
    let mut ero_union = sets[0].erode(ctx)?;
    for s in &sets[1..] {
        dil_union = dil_union.union(&s.dilate(ctx)?)?;
        ero_inter = ero_inter.intersection(&s.erode(ctx)?)?;
        dil_inter = dil_inter.intersection(&s.dilate(ctx)?)?;
        ero_union = ero_union.union(&s.erode(ctx)?)?;
    }
    let union_dilated = union.dilate(ctx)?;
    let inter_eroded = inter.erode(ctx)?;
    let inter_dilated = inter.dilate(ctx)?;
    let union_eroded = union.erode(ctx)?;
    let checks = vec![
        check(
            "union_dilation_distributes",
            union_dilated.eq_exact(&dil_union),
            &union_dilated.difference(&dil_union)?.union(&dil_union.difference(&union_dilated)?)?,
        ),
        check(
            "intersection_erosion_distributes",
            inter_eroded.eq_exact(&ero_inter),
            &inter_eroded.difference(&ero_inter)?.union(&ero_inter.difference(&inter_eroded)?)?,
        ),
        check(
            "intersection_dilation_contained",
            inter_dilated.subset(&dil_inter)?,
            &inter_dilated.difference(&dil_inter)?,
        ),
        check(
            "erosion_union_contains",
            ero_union.subset(&union_eroded)?,
            &ero_union.difference(&union_eroded)?,
        ),
    ];
    Ok(IdentityReport { checks })
}

/// Per-set identities from the single-set lemmas.
///
/// The `closing_adds_complement_fringe` check evaluates the complement
/// fringe on the closed closure of the complement. That convention
/// misclassifies complement components of width exactly `2h`; for 1-D sets,
/// [`complement_fringe_line`] evaluates the same identity exactly.
pub fn single_set_identities<S: MorphOps>(a: &S, ctx: &MorphContext) -> Result<IdentityReport> {
    let dil = a.dilate(ctx)?;
    let ero = a.erode(ctx)?;
    let open = opening(a, ctx)?;
    let close = closing(a, ctx)?;
    let fr = fringe(a, ctx)?;
    let comp = a.complement(ctx)?;
    let checks = vec![
        check("erosion_anti_extensive", ero.subset(a)?, &ero.difference(a)?),
        check("dilation_extensive", a.subset(&dil)?, &a.difference(&dil)?),
        check(
            "opening_plus_fringe_decomposes",
            open.union(&fr)?.eq_closure(a) && open.intersection(&fr)?.is_empty(),
            a,
        ),
        check(
            "closing_adds_complement_fringe",
            close.eq_closure(&a.union(&fringe(&comp, ctx)?)?),
            &close,
        ),
        check(
            "opening_erosion_idempotent",
            opening(a, ctx)?.erode(ctx)?.eq_closure(&ero),
            &ero,
        ),
        check(
            "closing_dilation_idempotent",
            closing(a, ctx)?.dilate(ctx)?.eq_closure(&dil),
            &dil,
        ),
        check(
            "dilation_fringe_empty",
            fringe(&dil, ctx)?.is_empty(),
            &fringe(&dil, ctx)?,
        ),
        check(
            "eroded_complement_fringe_empty",
            fringe(&ero.complement(ctx)?, ctx)?.is_empty(),
            &fringe(&ero.complement(ctx)?, ctx)?,
        ),
        check("fringe_too_thin_to_erode", fr.erode(ctx)?.is_empty(), &fr.erode(ctx)?),
        check(
            "erosion_matches_complement_route",
            ero.eq_closure(&a.erode_via_complement(ctx)?),
            &ero,
        ),
    ];
    Ok(IdentityReport { checks })
}

/// The fringe of the complement of `a`, evaluated with the complement's own
/// open-set semantics.
///
/// The closed-closure complement used elsewhere misclassifies two boundary
/// situations: a gap of width exactly `2h` survives closed opening (it erodes
/// to its midpoint) although no closed ball fits inside the open gap, and the
/// closure swallows degenerate components of `a`, merging the gaps on either
/// side. Enumerating the true complement components directly avoids both:
/// every interior component of width at most `2h` is entirely fringe, wider
/// ones and window-flush ones contribute nothing. This makes the identity
/// `closing(a) = a ∪ F(a^C)` exact on the closed representation.
pub fn complement_fringe_line(a: &IntervalSet, ctx: &MorphContext) -> Result<IntervalSet> {
    let dom = ctx.line_domain()?;
    let two_h = crate::rint(2) * ctx.halfwidth()?;
    let mut raw = Vec::new();
    let mut prev_hi: Option<Rational> = None;
    for iv in a.intervals() {
        if iv.hi < dom.lo || iv.lo > dom.hi {
            continue;
        }
        // the leading piece down to dom.lo (prev_hi still None) is flush with
        // the window and behaves as unbounded, so it is never fringe; same
        // for the trailing piece up to dom.hi, which the loop never emits
        if let Some(p) = &prev_hi {
            if &iv.lo - p <= two_h {
                raw.push((p.clone(), iv.lo.clone()));
            }
        }
        prev_hi = Some(iv.hi.clone());
    }
    IntervalSet::canonicalize(raw)
}

/// Suffix unions `B_n = union of A_k for k >= n`; the result is a decreasing
/// chain.
pub fn tail_unions<S: MorphOps>(seq: &[S]) -> Result<Vec<S>> {
    if seq.is_empty() {
        return Err(Error::Config("tail_unions needs a nonempty sequence".into()));
    }
    let mut out: Vec<S> = Vec::with_capacity(seq.len());
    let mut acc: Option<S> = None;
    for a in seq.iter().rev() {
        let next = match acc {
            Some(b) => a.union(&b)?,
            None => a.clone(),
        };
        out.push(next.clone());
        acc = Some(next);
    }
    out.reverse();
    for (i, w) in out.windows(2).enumerate() {
        if !w[1].subset(&w[0])? {
            return Err(Error::NotDecreasing(i));
        }
    }
    Ok(out)
}

/// Outcome of [`midpoint_condition_probe`].
#[derive(Debug, Clone)]
pub struct MidpointReport {
    pub holds: bool,
    /// Largest index from which containment held, across samples.
    pub worst_n: usize,
    pub samples: usize,
}

/// Strictly-convex midpoint property under the Euclidean norm: for
/// `b_n -> b` with `x` in every `B_2eps(b_n)` and `c = (b + x) / 2`, each
/// sampled `y` in `B_eps(c)` must lie in `B_2eps(b_n)` for all `n >= N` with
/// some `N` at most `steps`. Memberships are decided through the gauge
/// function of the balls.
pub fn midpoint_condition_probe(
    eps: f64,
    b: &[f64],
    x: &[f64],
    steps: usize,
    samples: usize,
    seed: u64,
) -> Result<MidpointReport> {
    use crate::gauge::{member_via_lambda, ConvexBody};
    use rand::Rng;
    use rand::SeedableRng;

    if b.len() != x.len() || !(1..=3).contains(&b.len()) {
        return Err(Error::Config("midpoint probe needs matching dims 1..=3".into()));
    }
    if eps <= 0.0 || steps == 0 || samples == 0 {
        return Err(Error::Config("midpoint probe needs eps > 0 and counts >= 1".into()));
    }
    // the gauge works in the plane and space; lift 1-D configurations
    let lift = |p: &[f64]| -> Vec<f64> {
        if p.len() == 1 {
            vec![p[0], 0.0]
        } else {
            p.to_vec()
        }
    };
    let b = lift(b);
    let x = lift(x);
    let dist: f64 = b
        .iter()
        .zip(&x)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt();
    if dist > 2.0 * eps + 1e-12 {
        return Err(Error::Config(format!(
            "x must start inside B_2eps(b): dist {dist} > {}",
            2.0 * eps
        )));
    }
    let c: Vec<f64> = b.iter().zip(&x).map(|(p, q)| (p + q) / 2.0).collect();
    let centers: Vec<Vec<f64>> = (1..=steps)
        .map(|n| {
            let w = 1.0 - 0.5f64.powi(n as i32);
            x.iter().zip(&b).map(|(q, p)| q + w * (p - q)).collect()
        })
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<f64> = (0..b.len()).map(|_| rng.gen_range(0.1..1.0)).collect();
    let sample_ball = ConvexBody::Ball {
        center: c.clone(),
        radius: eps,
    };
    let mut worst_n = 0usize;
    for _ in 0..samples {
        let y = sample_ball.sample(&mut rng);
        let mut first_bad: Option<usize> = None;
        for (n, bn) in centers.iter().enumerate().rev() {
            let ball = ConvexBody::Ball {
                center: bn.clone(),
                radius: 2.0 * eps,
            };
            if !member_via_lambda(&ball, &y, &v)? {
                first_bad = Some(n);
                break;
            }
        }
        match first_bad {
            Some(n) if n + 1 >= steps => {
                return Ok(MidpointReport {
                    holds: false,
                    worst_n: n + 1,
                    samples,
                })
            }
            Some(n) => worst_n = worst_n.max(n + 2),
            None => worst_n = worst_n.max(1),
        }
    }
    Ok(MidpointReport {
        holds: true,
        worst_n,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    fn iset(pairs: &[(i64, i64)]) -> IntervalSet {
        IntervalSet::canonicalize(pairs.iter().map(|(a, b)| (rint(*a), rint(*b))).collect())
            .unwrap()
    }

    #[test]
    fn complement_fringe_catches_exact_width_gaps() {
        // gap of width exactly 2*eps between a degenerate point and a block:
        // closing fills it, and the open-semantics complement fringe must
        // report it even though the closed-closure complement merges across
        // the point
        let a = IntervalSet::canonicalize(vec![
            (rat(-11, 3), rat(-11, 3)),
            (rint(-3), rint(3)),
        ])
        .unwrap();
        let ctx =
            MorphContext::line_padded(Norm::l2(1), Radius::new(rat(1, 3)).unwrap(), &[&a]).unwrap();
        let close = closing(&a, &ctx).unwrap();
        let expected = a.union(&complement_fringe_line(&a, &ctx).unwrap());
        assert!(close.eq_closure(&expected));
        assert_eq!(
            close,
            IntervalSet::from_interval(rat(-11, 3), rint(3)).unwrap()
        );

        // same width-2*eps boundary case without a degenerate component
        let b = IntervalSet::canonicalize(vec![
            (rint(-4), rat(-11, 3)),
            (rint(-3), rint(3)),
        ])
        .unwrap();
        let ctx_b =
            MorphContext::line_padded(Norm::l2(1), Radius::new(rat(1, 3)).unwrap(), &[&b]).unwrap();
        let close_b = closing(&b, &ctx_b).unwrap();
        let expected_b = b.union(&complement_fringe_line(&b, &ctx_b).unwrap());
        assert!(close_b.eq_closure(&expected_b));

        // a wide gap is not fringe and stays open after closing
        let c = iset(&[(0, 1), (4, 5)]);
        let ctx_c =
            MorphContext::line_padded(Norm::l2(1), Radius::new(rat(1, 2)).unwrap(), &[&c]).unwrap();
        assert!(complement_fringe_line(&c, &ctx_c).unwrap().is_empty());
        assert!(closing(&c, &ctx_c).unwrap().eq_closure(&c));
    }

    fn rset(pairs: &[((i64, i64), (i64, i64))]) -> IntervalSet {
        IntervalSet::canonicalize(
            pairs
                .iter()
                .map(|((a, b), (c, d))| (rat(*a, *b), rat(*c, *d)))
                .collect(),
        )
        .unwrap()
    }

    fn ctx(eps_num: i64, eps_den: i64) -> MorphContext {
        MorphContext::line(
            Norm::l2(1),
            Radius::new(rat(eps_num, eps_den)).unwrap(),
            Interval::new(rint(-10), rint(10)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn opening_removes_thin_component() {
        let a = rset(&[((0, 1), (1, 1)), ((2, 1), (11, 5))]);
        let got = opening(&a, &ctx(3, 20)).unwrap();
        assert_eq!(got, iset(&[(0, 1)]));
    }

    #[test]
    fn closing_merges_thin_gap() {
        let a = rset(&[((0, 1), (1, 1)), ((11, 10), (2, 1))]);
        let got = closing(&a, &ctx(3, 50)).unwrap();
        assert_eq!(got, iset(&[(0, 2)]));
    }

    #[test]
    fn fringe_examples() {
        let a = iset(&[(0, 1)]);
        assert_eq!(fringe(&a, &ctx(3, 5)).unwrap(), a);
        assert!(fringe(&a, &ctx(1, 4)).unwrap().is_empty());
        let d = a.dilate(&ctx(1, 2)).unwrap();
        assert!(fringe(&d, &ctx(1, 2)).unwrap().is_empty());
    }

    #[test]
    fn mollify_examples() {
        let a = iset(&[(0, 1)]);
        assert_eq!(mollify(&a, &ctx(3, 10)).unwrap(), a);
        let b = rset(&[((0, 1), (1, 1)), ((2, 1), (11, 5))]);
        assert_eq!(mollify(&b, &ctx(3, 20)).unwrap(), iset(&[(0, 1)]));
        assert!(mollify(&IntervalSet::empty(), &ctx(1, 2)).unwrap().is_empty());
    }

    #[test]
    fn interval_radius_composition() {
        let a = iset(&[(0, 1)]);
        let c = ctx(1, 1);
        assert!(compose_radii_check(
            &a,
            &c,
            &Radius::new(rat(1, 3)).unwrap(),
            &Radius::new(rat(2, 3)).unwrap()
        )
        .unwrap());
        assert!(compose_radii_check(
            &IntervalSet::empty(),
            &c,
            &Radius::new(rint(1)).unwrap(),
            &Radius::new(rint(2)).unwrap()
        )
        .unwrap());
    }

    #[test]
    fn l2_lattice_composition_witness_is_2_2() {
        let w = structuring_composition_witness(&Norm::l2(2), &rint(1), &rint(2), &rint(1))
            .unwrap()
            .expect("a witness must exist");
        // (2,2) is the lexicographically smallest missed vector up to sign
        assert_eq!(w.iter().map(|c| c.abs()).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn grid_composition_exact_for_l1_integer_radii() {
        let g = GridSet::unit(2)
            .with_cells(vec![vec![0, 0], vec![3, 1]])
            .unwrap();
        let c = MorphContext::grid(
            Norm::l1(2),
            Radius::new(rint(1)).unwrap(),
            vec![-10, -10],
            vec![10, 10],
        )
        .unwrap();
        assert!(compose_radii_check(
            &g,
            &c,
            &Radius::new(rint(1)).unwrap(),
            &Radius::new(rint(2)).unwrap()
        )
        .unwrap());
        let cl2 = MorphContext::grid(
            Norm::l2(2),
            Radius::new(rint(1)).unwrap(),
            vec![-10, -10],
            vec![10, 10],
        )
        .unwrap();
        assert!(matches!(
            compose_radii_check(
                &g,
                &cl2,
                &Radius::new(rint(1)).unwrap(),
                &Radius::new(rint(2)).unwrap()
            ),
            Err(Error::CompositionNotExact)
        ));
    }

    #[test]
    fn pseudo_robust_examples() {
        let c = ctx(1, 2);
        let a = iset(&[(-1, 1)]);
        let verdict = is_pseudo_certifiably_robust(&a, &c).unwrap();
        assert!(verdict.robust);
        let b = iset(&[(0, 1)]);
        let verdict = is_pseudo_certifiably_robust(&b, &ctx(3, 5)).unwrap();
        assert!(!verdict.robust);
        assert_eq!(verdict.witness.as_deref(), Some("0"));
        assert!(is_pseudo_certifiably_robust(&IntervalSet::empty(), &c)
            .unwrap()
            .robust);
    }

    #[test]
    fn certified_robustness_at_points() {
        let a = iset(&[(0, 1)]);
        let c = ctx(1, 4);
        assert!(is_certifiably_robust_at(&a, &c, &rat(1, 2)).unwrap());
        assert!(!is_certifiably_robust_at(&a, &c, &rint(0)).unwrap());
        let c0 = ctx(0, 1);
        assert!(is_certifiably_robust_at(&a, &c0, &rat(1, 2)).unwrap());
        assert!(is_certifiably_robust_at(&a, &ctx(1, 4), &rint(5)).unwrap());
    }

    #[test]
    fn family_identities_on_disjoint_pair() {
        let c = ctx(1, 4);
        let fam = vec![iset(&[(0, 1)]), iset(&[(2, 3)])];
        let report = finite_family_identities(&fam, &c).unwrap();
        assert!(report.all_hold(), "{:?}", report);
        let u = fam[0].union(&fam[1]).dilate(&c).unwrap();
        assert_eq!(
            u,
            rset(&[((-1, 4), (5, 4)), ((7, 4), (13, 4))])
        );
    }

    #[test]
    fn family_identities_strict_containment_case() {
        let c = ctx(1, 1);
        let fam = vec![iset(&[(0, 2)]), iset(&[(1, 3)])];
        let report = finite_family_identities(&fam, &c).unwrap();
        assert!(report.all_hold(), "{:?}", report);
        assert!(finite_family_identities::<IntervalSet>(&[], &c).is_err());
    }

    #[test]
    fn single_set_identities_hold() {
        let c = ctx(3, 20);
        for a in [
            iset(&[(0, 1)]),
            rset(&[((0, 1), (1, 1)), ((2, 1), (11, 5))]),
            rset(&[((-3, 2), (-1, 5)), ((0, 1), (1, 10)), ((1, 2), (4, 1))]),
        ] {
            let report = single_set_identities(&a, &c).unwrap();
            assert!(report.all_hold(), "{a}: {report:?}");
        }
    }

    #[test]
    fn grid_single_set_identities_hold() {
        let g = GridSet::unit(2)
            .with_cells(vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![1, 1],
                vec![5, 5],
                vec![4, 4],
            ])
            .unwrap();
        for norm in [Norm::l1(2), Norm::l2(2), Norm::linf(2)] {
            let c = MorphContext::grid(
                norm,
                Radius::new(rint(1)).unwrap(),
                vec![-8, -8],
                vec![12, 12],
            )
            .unwrap();
            let report = single_set_identities(&g, &c).unwrap();
            assert!(report.all_hold(), "{report:?}");
        }
    }

    #[test]
    fn midpoint_property_on_random_configurations() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for case in 0..100 {
            let dim = if case % 2 == 0 { 1 } else { 2 };
            let eps = rng.gen_range(0.2..2.0);
            let b: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
            // x anywhere in B_2eps(b)
            let x: Vec<f64> = loop {
                let cand: Vec<f64> = b
                    .iter()
                    .map(|p| p + rng.gen_range(-2.0 * eps..2.0 * eps))
                    .collect();
                let d: f64 = cand
                    .iter()
                    .zip(&b)
                    .map(|(p, q)| (p - q) * (p - q))
                    .sum::<f64>()
                    .sqrt();
                if d <= 2.0 * eps {
                    break cand;
                }
            };
            let report = midpoint_condition_probe(eps, &b, &x, 60, 20, 7 + case).unwrap();
            assert!(report.holds, "case {case}: worst_n {}", report.worst_n);
            assert!(report.worst_n <= 60);
        }
    }

    #[test]
    fn tail_union_chain() {
        let seq = vec![iset(&[(0, 1)]), iset(&[(2, 3)])];
        let tails = tail_unions(&seq).unwrap();
        assert_eq!(tails[0], iset(&[(0, 1), (2, 3)]));
        assert_eq!(tails[1], iset(&[(2, 3)]));
        let same = vec![iset(&[(0, 1)]); 3];
        assert_eq!(tail_unions(&same).unwrap(), same);
    }
}
