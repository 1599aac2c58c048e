use crate::error::{Error, Result};
use crate::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// A finite union of disjoint, non-adjacent closed intervals in canonical
/// form: sorted ascending, every gap strictly positive. The canonical form is
/// unique per point set, so `==` is point-set equality.
///
/// Complements are stored as the closure of the (open) true complement;
/// [`IntervalSet::essentially_eq`] compares sets up to measure zero, the
/// finite analogue of equality-up-to-null-sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { intervals: vec![] }
    }

    /// Sorts and merges raw `[lo, hi]` pairs into canonical form. Touching
    /// intervals merge: `[0,1]` and `[1,2]` become `[0,2]`.
    pub fn canonicalize(raw: Vec<(Rational, Rational)>) -> Result<Self> {
        let mut ivs: Vec<Interval> = raw
            .into_iter()
            .map(|(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<_>>()?;
        ivs.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let mut out: Vec<Interval> = Vec::with_capacity(ivs.len());
        for iv in ivs {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        Ok(IntervalSet { intervals: out })
    }

    pub fn from_interval(lo: Rational, hi: Rational) -> Result<Self> {
        Ok(IntervalSet {
            intervals: vec![Interval::new(lo, hi)?],
        })
    }

    pub fn point(x: Rational) -> Self {
        IntervalSet {
            intervals: vec![Interval {
                lo: x.clone(),
                hi: x,
            }],
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// Total length; degenerate components contribute zero.
    pub fn measure(&self) -> Rational {
        self.intervals.iter().map(|iv| iv.length()).sum()
    }

    pub fn bounding_interval(&self) -> Option<Interval> {
        let first = self.intervals.first()?;
        let last = self.intervals.last()?;
        Some(Interval {
            lo: first.lo.clone(),
            hi: last.hi.clone(),
        })
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let raw = self
            .intervals
            .iter()
            .chain(&other.intervals)
            .map(|iv| (iv.lo.clone(), iv.hi.clone()))
            .collect();
        IntervalSet::canonicalize(raw).expect("canonical inputs")
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut raw = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                let lo = if a.lo >= b.lo { a.lo.clone() } else { b.lo.clone() };
                let hi = if a.hi <= b.hi { a.hi.clone() } else { b.hi.clone() };
                if lo <= hi {
                    raw.push((lo, hi));
                }
            }
        }
        IntervalSet::canonicalize(raw).expect("canonical inputs")
    }

    /// Closure of the exact point-set difference `self \ other`. Pieces whose
    /// underlying open part is empty are dropped, so `A.difference(&A)` is
    /// exactly empty.
    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        let mut raw = Vec::new();
        for a in &self.intervals {
            let mut pieces = vec![(a.lo.clone(), a.hi.clone())];
            for b in &other.intervals {
                let mut next = Vec::new();
                for (lo, hi) in pieces {
                    if b.hi < lo || b.lo > hi {
                        next.push((lo, hi));
                        continue;
                    }
                    // left remainder {x in [lo,hi] : x < b.lo}
                    if b.lo > lo {
                        let cut = if b.lo <= hi { b.lo.clone() } else { hi.clone() };
                        next.push((lo.clone(), cut));
                    }
                    // right remainder {x in [lo,hi] : x > b.hi}
                    if b.hi < hi {
                        let cut = if b.hi >= lo { b.hi.clone() } else { lo.clone() };
                        next.push((cut, hi.clone()));
                    }
                }
                pieces = next;
            }
            raw.extend(pieces);
        }
        IntervalSet::canonicalize(raw).expect("canonical inputs")
    }

    pub fn symmetric_difference(&self, other: &IntervalSet) -> IntervalSet {
        self.difference(other).union(&other.difference(self))
    }

    /// Closure of the complement within `domain`. Errors if `self` is not
    /// contained in `domain`.
    pub fn complement_within(&self, domain: &Interval) -> Result<IntervalSet> {
        if let Some(bb) = self.bounding_interval() {
            if bb.lo < domain.lo || bb.hi > domain.hi {
                return Err(Error::DomainOverflow(format!(
                    "set [{}, {}] exceeds domain [{}, {}]",
                    bb.lo, bb.hi, domain.lo, domain.hi
                )));
            }
        }
        let mut raw = Vec::new();
        let mut cursor = domain.lo.clone();
        for iv in &self.intervals {
            if iv.lo > cursor {
                raw.push((cursor.clone(), iv.lo.clone()));
            }
            if iv.hi > cursor {
                cursor = iv.hi.clone();
            }
        }
        if cursor < domain.hi {
            raw.push((cursor, domain.hi.clone()));
        }
        // A degenerate component interior to the domain leaves two touching
        // pieces that canonicalize back into one, which is exactly the
        // closure of the punctured complement.
        IntervalSet::canonicalize(raw)
    }

    /// True closed-set containment `self <= other`.
    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
            && self
                .intervals
                .iter()
                .all(|iv| other.contains(&iv.lo) && other.contains(&iv.hi))
    }

    /// Drops degenerate (single-point) components.
    pub fn essential(&self) -> IntervalSet {
        IntervalSet {
            intervals: self
                .intervals
                .iter()
                .filter(|iv| !iv.is_degenerate())
                .cloned()
                .collect(),
        }
    }

    /// Equality up to measure zero: the non-degenerate components agree.
    pub fn essentially_eq(&self, other: &IntervalSet) -> bool {
        self.essential() == other.essential()
    }

    /// Exact distance from `x` to the nearest point of the set (absolute
    /// value metric).
    pub fn distance_to(&self, x: &Rational) -> Result<Rational> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut best: Option<Rational> = None;
        for iv in &self.intervals {
            let d = if iv.contains(x) {
                Rational::zero()
            } else if *x < iv.lo {
                &iv.lo - x
            } else {
                x - &iv.hi
            };
            best = Some(match best {
                Some(b) if b <= d => b,
                _ => d,
            });
        }
        Ok(best.unwrap())
    }

    /// Minkowski dilation by `[-r, r]`, restricted to `domain`. A component
    /// endpoint flush with the domain boundary is treated as extending beyond
    /// it (the domain is a window onto the real line); an interior endpoint
    /// whose dilation would spill out of the window is an error, signalling
    /// insufficient padding.
    pub fn dilate_by(&self, r: &Rational, domain: &Interval) -> Result<IntervalSet> {
        debug_assert!(*r >= Rational::zero());
        let mut raw = Vec::new();
        for iv in &self.intervals {
            let lo = if iv.lo == domain.lo {
                iv.lo.clone()
            } else {
                let lo = &iv.lo - r;
                if lo < domain.lo {
                    return Err(Error::DomainOverflow(format!(
                        "dilation of [{}, {}] by {} leaves domain [{}, {}]",
                        iv.lo, iv.hi, r, domain.lo, domain.hi
                    )));
                }
                lo
            };
            let hi = if iv.hi == domain.hi {
                iv.hi.clone()
            } else {
                let hi = &iv.hi + r;
                if hi > domain.hi {
                    return Err(Error::DomainOverflow(format!(
                        "dilation of [{}, {}] by {} leaves domain [{}, {}]",
                        iv.lo, iv.hi, r, domain.lo, domain.hi
                    )));
                }
                hi
            };
            raw.push((lo, hi));
        }
        IntervalSet::canonicalize(raw)
    }

    /// Erosion by `[-r, r]` under the same window semantics. Components are
    /// the connected pieces, so erosion acts per component; a component that
    /// shrinks to a single point is kept as a degenerate interval.
    pub fn erode_by(&self, r: &Rational, domain: &Interval) -> Result<IntervalSet> {
        debug_assert!(*r >= Rational::zero());
        let mut raw = Vec::new();
        for iv in &self.intervals {
            let lo = if iv.lo == domain.lo {
                iv.lo.clone()
            } else {
                &iv.lo + r
            };
            let hi = if iv.hi == domain.hi {
                iv.hi.clone()
            } else {
                &iv.hi - r
            };
            if lo <= hi {
                raw.push((lo, hi));
            }
        }
        IntervalSet::canonicalize(raw)
    }
}

impl std::fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|iv| format!("[{}, {}]", iv.lo, iv.hi))
            .collect();
        write!(f, "{}", parts.join(" u "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    fn set(pairs: &[(i64, i64)]) -> IntervalSet {
        IntervalSet::canonicalize(pairs.iter().map(|(a, b)| (rint(*a), rint(*b))).collect())
            .unwrap()
    }

    #[test]
    fn touching_intervals_merge() {
        assert_eq!(set(&[(0, 1), (1, 2)]), set(&[(0, 2)]));
    }

    #[test]
    fn canonical_form_sorts() {
        let s = set(&[(3, 4), (0, 1)]);
        assert_eq!(s.intervals()[0].lo, rint(0));
        assert_eq!(s.intervals()[1].lo, rint(3));
    }

    #[test]
    fn overlap_merges() {
        assert_eq!(set(&[(0, 2), (1, 3)]), set(&[(0, 3)]));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let s = set(&[(0, 1), (1, 2), (5, 9), (4, 6)]);
        let again = IntervalSet::canonicalize(
            s.intervals()
                .iter()
                .map(|iv| (iv.lo.clone(), iv.hi.clone()))
                .collect(),
        )
        .unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn reversed_interval_is_an_error() {
        assert!(IntervalSet::canonicalize(vec![(rint(1), rint(0))]).is_err());
    }

    #[test]
    fn union_of_disjoint_sets() {
        let u = set(&[(0, 1)]).union(&set(&[(2, 3)]));
        assert_eq!(u, set(&[(0, 1), (2, 3)]));
    }

    #[test]
    fn symmetric_difference_with_self_is_empty() {
        let a = set(&[(0, 1), (3, 5)]);
        assert!(a.symmetric_difference(&a).is_empty());
    }

    #[test]
    fn complement_uses_closure() {
        let dom = Interval::new(rint(-2), rint(2)).unwrap();
        let c = set(&[(0, 1)]).complement_within(&dom).unwrap();
        assert_eq!(c, set(&[(-2, 0), (1, 2)]));
    }

    #[test]
    fn complement_of_interior_point_is_whole_domain() {
        let dom = Interval::new(rint(-1), rint(1)).unwrap();
        let c = IntervalSet::point(rint(0)).complement_within(&dom).unwrap();
        assert_eq!(c, set(&[(-1, 1)]));
    }

    #[test]
    fn difference_drops_shared_boundary() {
        let a = set(&[(0, 1)]);
        assert!(a.difference(&a).is_empty());
        let d = a.difference(&IntervalSet::from_interval(rat(1, 4), rat(3, 4)).unwrap());
        assert_eq!(
            d,
            IntervalSet::canonicalize(vec![
                (rint(0), rat(1, 4)),
                (rat(3, 4), rint(1)),
            ])
            .unwrap()
        );
    }

    #[test]
    fn distance_to_set_examples() {
        let a = set(&[(0, 1)]);
        assert_eq!(a.distance_to(&rint(2)).unwrap(), rint(1));
        assert_eq!(a.distance_to(&rat(1, 2)).unwrap(), rint(0));
        assert!(IntervalSet::empty().distance_to(&rint(0)).is_err());
    }

    #[test]
    fn dilate_and_erode_window() {
        let dom = Interval::new(rint(-5), rint(5)).unwrap();
        let a = set(&[(0, 1)]);
        assert_eq!(
            a.dilate_by(&rat(1, 2), &dom).unwrap(),
            IntervalSet::from_interval(rat(-1, 2), rat(3, 2)).unwrap()
        );
        assert_eq!(
            a.erode_by(&rat(1, 2), &dom).unwrap(),
            IntervalSet::point(rat(1, 2))
        );
        assert!(a.erode_by(&rat(3, 4), &dom).unwrap().is_empty());
        assert!(IntervalSet::empty().dilate_by(&rint(1), &dom).unwrap().is_empty());
    }

    #[test]
    fn de_morgan_within_domain() {
        let dom = Interval::new(rint(-4), rint(4)).unwrap();
        let a = set(&[(-3, -1), (0, 2)]);
        let b = set(&[(-2, 1)]);
        let lhs = a.union(&b).complement_within(&dom).unwrap();
        let rhs = a
            .complement_within(&dom)
            .unwrap()
            .intersection(&b.complement_within(&dom).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn subset_accepts_chained_cover() {
        let a = set(&[(0, 2)]);
        let cover = set(&[(0, 1), (1, 2)]); // merges to [0,2]
        assert!(a.is_subset(&cover));
        assert!(!set(&[(0, 3)]).is_subset(&a));
    }
}
