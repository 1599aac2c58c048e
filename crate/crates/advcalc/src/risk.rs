//! Exact classification risk `R(A)` and adversarial risk `R^eps(A)` over
//! finite atomic distributions, plus the Bayes classifier.
//!
//! Every integral is a finite sum of rationals, so all risk values are exact.

use crate::error::{Error, Result};
use crate::geometry::{GridSet, IntervalSet, Point};
use crate::morphology::{MorphContext, MorphOps};
use crate::Rational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// One support point: location, mass, and conditional class-1 probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: Point,
    pub p: Rational,
    pub eta: Rational,
}

/// A finite distribution with exact rational masses summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDistribution {
    atoms: Vec<Atom>,
}

impl LabeledDistribution {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution("no atoms".into()));
        }
        let total: Rational = atoms.iter().map(|a| a.p.clone()).sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "masses sum to {total}, not 1"
            )));
        }
        for a in &atoms {
            if a.p <= Rational::zero() {
                return Err(Error::InvalidDistribution(format!(
                    "mass {} at {:?} not positive",
                    a.p, a.x
                )));
            }
            if a.eta < Rational::zero() || a.eta > Rational::one() {
                return Err(Error::InvalidDistribution(format!(
                    "eta {} at {:?} outside [0,1]",
                    a.eta, a.x
                )));
            }
        }
        for (i, a) in atoms.iter().enumerate() {
            for b in &atoms[i + 1..] {
                if a.x == b.x {
                    return Err(Error::InvalidDistribution(format!(
                        "duplicate support point {:?}",
                        a.x
                    )));
                }
            }
        }
        Ok(LabeledDistribution { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Convenience constructor for 1-D distributions.
    pub fn on_line(atoms: Vec<(Rational, Rational, Rational)>) -> Result<Self> {
        LabeledDistribution::new(
            atoms
                .into_iter()
                .map(|(x, p, eta)| Atom { x: vec![x], p, eta })
                .collect(),
        )
    }

    /// The exact Bayes risk `sum p_i min(eta_i, 1 - eta_i)`.
    pub fn bayes_risk(&self) -> RiskValue {
        let v: Rational = self
            .atoms
            .iter()
            .map(|a| {
                let other = Rational::one() - &a.eta;
                &a.p * if a.eta <= other { &a.eta } else { &other }
            })
            .sum();
        RiskValue::new(v).expect("bounded by construction")
    }
}

/// An exact risk in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RiskValue(Rational);

impl RiskValue {
    pub fn new(value: Rational) -> Result<Self> {
        if value < Rational::zero() || value > Rational::one() {
            return Err(Error::InvalidDistribution(format!(
                "risk {value} outside [0,1]"
            )));
        }
        Ok(RiskValue(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl std::fmt::Display for RiskValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How the perturbed memberships of [`adversarial_risk`] are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Dilate the set and its complement, then test membership.
    Morphology,
    /// Test `dist(x, A) <= eps` and `dist(x, closure(A^C)) <= eps` directly.
    Distance,
}

/// Membership queries a classifier set must answer for risk evaluation.
pub trait RiskSet {
    /// `x in A`, after checking the atom lies inside the context domain.
    fn member(&self, x: &Point, ctx: &MorphContext) -> Result<bool>;
    /// `x in A^eps` via dilation.
    fn member_dilated(&self, x: &Point, ctx: &MorphContext) -> Result<bool>;
    /// `x in (A^C)^eps` via dilation of the (closed) complement.
    fn member_complement_dilated(&self, x: &Point, ctx: &MorphContext) -> Result<bool>;
    /// `dist(x, A) <= eps` without forming the dilation.
    fn within_distance(&self, x: &Point, ctx: &MorphContext) -> Result<bool>;
    /// `dist(x, closure(A^C)) <= eps` without forming the dilation.
    fn complement_within_distance(&self, x: &Point, ctx: &MorphContext) -> Result<bool>;
}

fn line_coord<'a>(x: &'a Point, ctx: &MorphContext) -> Result<&'a Rational> {
    if x.len() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: x.len(),
        });
    }
    let dom = ctx.line_domain()?;
    if !dom.contains(&x[0]) {
        return Err(Error::AtomOutsideDomain(x[0].to_string()));
    }
    Ok(&x[0])
}

impl RiskSet for IntervalSet {
    fn member(&self, x: &Point, ctx: &MorphContext) -> Result<bool> {
        Ok(self.contains(line_coord(x, ctx)?))
    }

    fn member_dilated(&self, x: &Point, ctx: &MorphContext) -> Result<bool> {
        let c = line_coord(x, ctx)?;
        Ok(self.dilate(ctx)?.contains(c))
    }

    fn member_complement_dilated(&self, x: &Point, ctx: &MorphContext) -> Result<bool> {
        let c = line_coord(x, ctx)?;
        Ok(self
            .complement_within(ctx.line_domain()?)?
            .dilate(ctx)?
            .contains(c))
    }

    fn within_distance(&self, x: &Point, ctx: &MorphContext) -> Result<bool> {
        let c = line_coord(x, ctx)?;
        if self.is_empty() {
            return Ok(false);
        }
        Ok(self.distance_to(c)? <= ctx.halfwidth()?)
    }

    fn complement_within_distance(&self, x: &Point, ctx: &MorphContext) -> Result<bool> {
        let c = line_coord(x, ctx)?;
        let comp = self.complement_within(ctx.line_domain()?)?;
        if comp.is_empty() {
            return Ok(false);
        }
        Ok(comp.distance_to(c)? <= ctx.halfwidth()?)
    }
}

fn grid_index(a: &GridSet, x: &Point, ctx: &MorphContext) -> Result<Vec<i64>> {
    let idx = a
        .index_of(x)?
        .ok_or_else(|| Error::AtomOutsideDomain(format!("{x:?} is off-lattice")))?;
    let (lo, hi) = ctx.box_domain()?;
    if idx.iter().zip(lo).any(|(i, l)| i < l) || idx.iter().zip(hi).any(|(i, h)| i > h) {
        return Err(Error::AtomOutsideDomain(format!("{idx:?} outside box")));
    }
    Ok(idx)
}

impl RiskSet for GridSet {
    fn member(&self, x: &Point, ctx: &MorphContext) -> Result<bool> {
        Ok(self.contains_index(&grid_index(self, x, ctx)?))
    }

    fn member_dilated(&self, x: &Point, ctx: &MorphContext) -> Result<bool> {
        let idx = grid_index(self, x, ctx)?;
        Ok(MorphOps::dilate(self, ctx)?.contains_index(&idx))
    }

    fn member_complement_dilated(&self, x: &Point, ctx: &MorphContext) -> Result<bool> {
        let idx = grid_index(self, x, ctx)?;
        Ok(MorphOps::dilate(&self.inverse(), ctx)?.contains_index(&idx))
    }

    fn within_distance(&self, x: &Point, ctx: &MorphContext) -> Result<bool> {
        let idx = grid_index(self, x, ctx)?;
        // exists a structuring-element offset landing in the set
        let se = GridSet::structuring_element(&ctx.norm, ctx.eps.value(), self.cell_size())?;
        Ok(se.iter().any(|v| {
            let shifted: Vec<i64> = idx.iter().zip(v).map(|(i, d)| i + d).collect();
            self.contains_index(&shifted)
        }))
    }

    fn complement_within_distance(&self, x: &Point, ctx: &MorphContext) -> Result<bool> {
        let idx = grid_index(self, x, ctx)?;
        let se = GridSet::structuring_element(&ctx.norm, ctx.eps.value(), self.cell_size())?;
        Ok(se.iter().any(|v| {
            let shifted: Vec<i64> = idx.iter().zip(v).map(|(i, d)| i + d).collect();
            !self.contains_index(&shifted)
        }))
    }
}

/// `R(A) = sum p_i [(1 - eta_i) 1{x_i in A} + eta_i 1{x_i in A^C}]`.
pub fn standard_risk<S: RiskSet>(
    a: &S,
    d: &LabeledDistribution,
    ctx: &MorphContext,
) -> Result<RiskValue> {
    let mut total = Rational::zero();
    for atom in d.atoms() {
        let inside = a.member(&atom.x, ctx)?;
        total += &atom.p
            * if inside {
                Rational::one() - &atom.eta
            } else {
                atom.eta.clone()
            };
    }
    RiskValue::new(total)
}

/// `R^eps(A)`: each atom pays the worst penalty reachable within `eps`.
pub fn adversarial_risk<S: RiskSet>(
    a: &S,
    d: &LabeledDistribution,
    ctx: &MorphContext,
    mode: Mode,
) -> Result<RiskValue> {
    if ctx.eps.value().is_zero() {
        // A^0 = A and (A^C)^0 = A^C exactly; the closure convention used for
        // positive radii would overcount atoms sitting on the boundary
        return standard_risk(a, d, ctx);
    }
    let mut total = Rational::zero();
    for atom in d.atoms() {
        let (near_a, near_comp) = match mode {
            Mode::Morphology => (
                a.member_dilated(&atom.x, ctx)?,
                a.member_complement_dilated(&atom.x, ctx)?,
            ),
            Mode::Distance => (
                a.within_distance(&atom.x, ctx)?,
                a.complement_within_distance(&atom.x, ctx)?,
            ),
        };
        if near_a {
            total += &atom.p * (Rational::one() - &atom.eta);
        }
        if near_comp {
            total += &atom.p * &atom.eta;
        }
    }
    RiskValue::new(total)
}

/// The Bayes set `{x_i : eta_i > 1/2}` as degenerate intervals. Ties at 1/2
/// are excluded.
pub fn bayes_classifier_line(d: &LabeledDistribution) -> Result<IntervalSet> {
    let half = crate::rat(1, 2);
    let mut raw = Vec::new();
    for atom in d.atoms() {
        if atom.x.len() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: atom.x.len(),
            });
        }
        if atom.eta > half {
            raw.push((atom.x[0].clone(), atom.x[0].clone()));
        }
    }
    IntervalSet::canonicalize(raw)
}

/// The Bayes set as cells of `template`'s lattice. Ties at 1/2 are excluded.
pub fn bayes_classifier_grid(d: &LabeledDistribution, template: &GridSet) -> Result<GridSet> {
    let half = crate::rat(1, 2);
    let mut out = GridSet::new(template.origin().to_vec(), template.cell_size().clone())?;
    for atom in d.atoms() {
        if atom.eta > half {
            let idx = template
                .index_of(&atom.x)?
                .ok_or_else(|| Error::AtomOutsideDomain(format!("{:?} is off-lattice", atom.x)))?;
            out.insert(idx)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Interval, Norm, Radius};
    use crate::morphology::{closing, mollify, opening};
    use crate::{rat, rint};

    fn ctx(eps_num: i64, eps_den: i64) -> MorphContext {
        MorphContext::line(
            Norm::l2(1),
            Radius::new(rat(eps_num, eps_den)).unwrap(),
            Interval::new(rint(-20), rint(20)).unwrap(),
        )
        .unwrap()
    }

    fn two_atom() -> LabeledDistribution {
        LabeledDistribution::on_line(vec![
            (rint(0), rat(1, 2), rint(1)),
            (rint(1), rat(1, 2), rint(0)),
        ])
        .unwrap()
    }

    fn iset(pairs: &[(i64, i64)]) -> IntervalSet {
        IntervalSet::canonicalize(pairs.iter().map(|(a, b)| (rint(*a), rint(*b))).collect())
            .unwrap()
    }

    #[test]
    fn distribution_validation() {
        assert!(LabeledDistribution::on_line(vec![(rint(0), rat(1, 2), rint(0))]).is_err());
        assert!(LabeledDistribution::on_line(vec![
            (rint(0), rat(1, 2), rint(0)),
            (rint(0), rat(1, 2), rint(1)),
        ])
        .is_err());
        assert!(LabeledDistribution::on_line(vec![(rint(0), rint(1), rat(3, 2))]).is_err());
    }

    #[test]
    fn standard_risk_examples() {
        let d = two_atom();
        let c = ctx(1, 2);
        let empty = IntervalSet::empty();
        assert_eq!(
            standard_risk(&empty, &d, &c).unwrap().value(),
            &rat(1, 2) // sum of p_i eta_i
        );
        let band = IntervalSet::from_interval(rat(-1, 4), rat(1, 4)).unwrap();
        assert_eq!(standard_risk(&band, &d, &c).unwrap().value(), &rint(0));
        let full = iset(&[(-20, 20)]);
        assert_eq!(standard_risk(&full, &d, &c).unwrap().value(), &rat(1, 2));
    }

    #[test]
    fn bayes_classifier_examples() {
        let d = two_atom();
        assert_eq!(
            bayes_classifier_line(&d).unwrap(),
            IntervalSet::point(rint(0))
        );
        let ties = LabeledDistribution::on_line(vec![
            (rint(0), rat(1, 2), rat(1, 2)),
            (rint(1), rat(1, 2), rat(1, 2)),
        ])
        .unwrap();
        assert!(bayes_classifier_line(&ties).unwrap().is_empty());
        let d3 = LabeledDistribution::on_line(vec![
            (rint(0), rat(1, 3), rat(3, 4)),
            (rint(1), rat(1, 3), rat(1, 4)),
            (rint(2), rat(1, 3), rat(9, 10)),
        ])
        .unwrap();
        let bayes = bayes_classifier_line(&d3).unwrap();
        assert_eq!(
            bayes,
            IntervalSet::point(rint(0)).union(&IntervalSet::point(rint(2)))
        );
        let c = ctx(0, 1);
        // (1/3)(1/4) + (1/3)(1/4) + (1/3)(1/10) = 12/60 = 1/5
        assert_eq!(standard_risk(&bayes, &d3, &c).unwrap().value(), &rat(1, 5));
        assert_eq!(d3.bayes_risk().value(), &rat(1, 5));
    }

    #[test]
    fn adversarial_risk_examples() {
        let d = two_atom();
        let c = ctx(3, 5);
        let a = iset(&[(-10, 0)]).union(&IntervalSet::from_interval(rint(0), rat(1, 2)).unwrap());
        for mode in [Mode::Morphology, Mode::Distance] {
            assert_eq!(adversarial_risk(&a, &d, &c, mode).unwrap().value(), &rint(1));
        }
        let full = iset(&[(-20, 20)]);
        for mode in [Mode::Morphology, Mode::Distance] {
            assert_eq!(
                adversarial_risk(&full, &d, &c, mode).unwrap().value(),
                &rat(1, 2)
            );
        }
    }

    #[test]
    fn zero_radius_matches_standard_risk() {
        let d = two_atom();
        let c = ctx(0, 1);
        for a in [iset(&[(0, 1)]), iset(&[(-3, -1), (2, 5)]), IntervalSet::empty()] {
            let std = standard_risk(&a, &d, &c).unwrap();
            for mode in [Mode::Morphology, Mode::Distance] {
                assert_eq!(adversarial_risk(&a, &d, &c, mode).unwrap(), std);
            }
        }
    }

    #[test]
    fn boundary_atom_counts_for_both_dilations() {
        // x = 1/2 is the eroded midpoint of [0,1]: closed-complement
        // semantics make it eps-close to the complement as well
        let d = LabeledDistribution::on_line(vec![(rat(1, 2), rint(1), rint(1))]).unwrap();
        let a = iset(&[(0, 1)]);
        let c = ctx(1, 2);
        for mode in [Mode::Morphology, Mode::Distance] {
            assert_eq!(adversarial_risk(&a, &d, &c, mode).unwrap().value(), &rint(1));
        }
    }

    #[test]
    fn risk_decrease_and_monotone_in_eps() {
        let d = LabeledDistribution::on_line(vec![
            (rint(-2), rat(1, 4), rat(4, 5)),
            (rint(0), rat(1, 4), rat(1, 5)),
            (rat(3, 2), rat(1, 4), rat(9, 10)),
            (rint(4), rat(1, 4), rat(1, 2)),
        ])
        .unwrap();
        let sets = [
            iset(&[(-3, -1)]),
            iset(&[(0, 1), (3, 5)]),
            IntervalSet::canonicalize(vec![(rat(-5, 2), rat(-3, 2)), (rat(1, 3), rat(2, 3))])
                .unwrap(),
        ];
        for a in &sets {
            let small = ctx(1, 4);
            let large = ctx(3, 4);
            let r_small = adversarial_risk(a, &d, &small, Mode::Morphology).unwrap();
            let r_large = adversarial_risk(a, &d, &large, Mode::Morphology).unwrap();
            let r_std = standard_risk(a, &d, &small).unwrap();
            assert!(r_small <= r_large);
            assert!(r_std <= r_small);
            assert!(d.bayes_risk() <= r_std);
            for c in [small, large] {
                let r = adversarial_risk(a, &d, &c, Mode::Morphology).unwrap();
                for b in [
                    opening(a, &c).unwrap(),
                    closing(a, &c).unwrap(),
                    mollify(a, &c).unwrap(),
                ] {
                    let rb = adversarial_risk(&b, &d, &c, Mode::Morphology).unwrap();
                    assert!(rb <= r, "A={a} B={b} eps={}", c.eps);
                }
            }
        }
    }

    #[test]
    fn grid_modes_agree() {
        let g = GridSet::unit(2)
            .with_cells(vec![vec![0, 0], vec![1, 0], vec![4, 4]])
            .unwrap();
        let d = LabeledDistribution::new(vec![
            Atom {
                x: vec![rint(0), rint(0)],
                p: rat(1, 2),
                eta: rat(3, 4),
            },
            Atom {
                x: vec![rint(3), rint(4)],
                p: rat(1, 2),
                eta: rat(1, 4),
            },
        ])
        .unwrap();
        let c = MorphContext::grid(
            Norm::l1(2),
            Radius::new(rint(1)).unwrap(),
            vec![-8, -8],
            vec![8, 8],
        )
        .unwrap();
        let m = adversarial_risk(&g, &d, &c, Mode::Morphology).unwrap();
        let dist = adversarial_risk(&g, &d, &c, Mode::Distance).unwrap();
        assert_eq!(m, dist);
        let off = LabeledDistribution::new(vec![Atom {
            x: vec![rat(1, 2), rint(0)],
            p: rint(1),
            eta: rint(1),
        }])
        .unwrap();
        assert!(standard_risk(&g, &off, &c).is_err());
    }
}
