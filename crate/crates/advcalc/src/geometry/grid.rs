use crate::error::{Error, Result};
use crate::geometry::{Norm, Point};
use crate::Rational;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A set of lattice points `origin + cell * index`, stored either as a
/// finite set of cells or, when `inverted`, as the complement of one. The
/// inverted form lets complements behave like genuine subsets of the whole
/// lattice: no bounding box ever truncates a dilation or erosion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSet {
    origin: Vec<Rational>,
    cell: Rational,
    cells: BTreeSet<Vec<i64>>,
    #[serde(default)]
    inverted: bool,
}

impl GridSet {
    pub fn new(origin: Vec<Rational>, cell: Rational) -> Result<Self> {
        if cell <= Rational::zero() {
            return Err(Error::IncompatibleLattice(format!(
                "cell size must be positive, got {cell}"
            )));
        }
        Ok(GridSet {
            origin,
            cell,
            cells: BTreeSet::new(),
            inverted: false,
        })
    }

    /// Unit lattice at the origin.
    pub fn unit(dim: usize) -> Self {
        GridSet {
            origin: vec![Rational::zero(); dim],
            cell: Rational::from_integer(1.into()),
            cells: BTreeSet::new(),
            inverted: false,
        }
    }

    pub fn is_inverted(&self) -> bool {
        self.inverted
    }

    /// The complement as a whole-lattice set: same stored cells, flipped
    /// interpretation.
    pub fn inverse(&self) -> GridSet {
        let mut out = self.clone();
        out.inverted = !out.inverted;
        out
    }

    fn require_finite(&self, what: &str) -> Result<()> {
        if self.inverted {
            return Err(Error::IncompatibleLattice(format!(
                "{what} needs a finite (non-inverted) grid set"
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    pub fn origin(&self) -> &[Rational] {
        &self.origin
    }

    pub fn cell_size(&self) -> &Rational {
        &self.cell
    }

    /// The stored cells: members of the set when finite, exceptions when
    /// inverted.
    pub fn cells(&self) -> &BTreeSet<Vec<i64>> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        !self.inverted && self.cells.is_empty()
    }

    pub fn insert(&mut self, idx: Vec<i64>) -> Result<()> {
        self.require_finite("insert")?;
        if idx.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: idx.len(),
            });
        }
        self.cells.insert(idx);
        Ok(())
    }

    pub fn with_cells<I: IntoIterator<Item = Vec<i64>>>(mut self, iter: I) -> Result<Self> {
        for idx in iter {
            self.insert(idx)?;
        }
        Ok(self)
    }

    pub fn contains_index(&self, idx: &[i64]) -> bool {
        self.cells.contains(idx) != self.inverted
    }

    /// Maps an exact point onto its lattice index; `None` if the point is not
    /// a lattice point of this grid.
    pub fn index_of(&self, point: &[Rational]) -> Result<Option<Vec<i64>>> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: point.len(),
            });
        }
        let mut idx = Vec::with_capacity(self.dim());
        for (p, o) in point.iter().zip(&self.origin) {
            let q = (p - o) / &self.cell;
            if !q.is_integer() {
                return Ok(None);
            }
            let (num, den) = (q.numer(), q.denom());
            let i = num.div_floor(den).to_i64().ok_or_else(|| {
                Error::IncompatibleLattice("lattice index out of i64 range".into())
            })?;
            idx.push(i);
        }
        Ok(Some(idx))
    }

    pub fn point_of(&self, idx: &[i64]) -> Point {
        idx.iter()
            .zip(&self.origin)
            .map(|(i, o)| o + &self.cell * Rational::from_integer((*i).into()))
            .collect()
    }

    /// Both grids describe the same lattice shifted by an integral offset.
    fn shift_from(&self, other: &GridSet) -> Result<Vec<i64>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        if self.cell != other.cell {
            return Err(Error::IncompatibleLattice(format!(
                "cell sizes differ: {} vs {}",
                self.cell, other.cell
            )));
        }
        let mut shift = Vec::with_capacity(self.dim());
        for (a, b) in other.origin.iter().zip(&self.origin) {
            let q = (a - b) / &self.cell;
            if !q.is_integer() {
                return Err(Error::IncompatibleLattice(
                    "origins are not congruent modulo the cell size".into(),
                ));
            }
            let i = q
                .numer()
                .div_floor(q.denom())
                .to_i64()
                .ok_or_else(|| Error::IncompatibleLattice("origin shift out of range".into()))?;
            shift.push(i);
        }
        Ok(shift)
    }

    fn reindexed(&self, other: &GridSet) -> Result<BTreeSet<Vec<i64>>> {
        let shift = self.shift_from(other)?;
        Ok(other
            .cells
            .iter()
            .map(|idx| idx.iter().zip(&shift).map(|(i, s)| i + s).collect())
            .collect())
    }

    pub fn union(&self, other: &GridSet) -> Result<GridSet> {
        let theirs = self.reindexed(other)?;
        let mut out = self.clone();
        let (a, b) = (&self.cells, &theirs);
        (out.cells, out.inverted) = match (self.inverted, other.inverted) {
            (false, false) => (a.union(b).cloned().collect(), false),
            (false, true) => (b.difference(a).cloned().collect(), true),
            (true, false) => (a.difference(b).cloned().collect(), true),
            (true, true) => (a.intersection(b).cloned().collect(), true),
        };
        Ok(out)
    }

    pub fn intersection(&self, other: &GridSet) -> Result<GridSet> {
        let theirs = self.reindexed(other)?;
        let mut out = self.clone();
        let (a, b) = (&self.cells, &theirs);
        (out.cells, out.inverted) = match (self.inverted, other.inverted) {
            (false, false) => (a.intersection(b).cloned().collect(), false),
            (false, true) => (a.difference(b).cloned().collect(), false),
            (true, false) => (b.difference(a).cloned().collect(), false),
            (true, true) => (a.union(b).cloned().collect(), true),
        };
        Ok(out)
    }

    pub fn difference(&self, other: &GridSet) -> Result<GridSet> {
        self.intersection(&other.inverse())
    }

    pub fn symmetric_difference(&self, other: &GridSet) -> Result<GridSet> {
        let theirs = self.reindexed(other)?;
        let mut out = self.clone();
        out.cells = self.cells.symmetric_difference(&theirs).cloned().collect();
        out.inverted = self.inverted != other.inverted;
        Ok(out)
    }

    /// Materializes the complement as a finite mask within the closed index
    /// box `[lo, hi]`. The underlying point set (or, for an inverted set, its
    /// exception cells) must fit inside the box.
    pub fn complement_within(&self, lo: &[i64], hi: &[i64]) -> Result<GridSet> {
        if lo.len() != self.dim() || hi.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: lo.len(),
            });
        }
        for idx in &self.cells {
            if idx.iter().zip(lo).any(|(i, l)| i < l)
                || idx.iter().zip(hi).any(|(i, h)| i > h)
            {
                return Err(Error::DomainOverflow(format!(
                    "cell {idx:?} outside complement box"
                )));
            }
        }
        if self.inverted {
            // complement of a co-finite set: exactly the exception cells
            let mut out = self.clone();
            out.inverted = false;
            return Ok(out);
        }
        let mut out = self.clone();
        out.cells = BTreeSet::new();
        let mut cursor: Vec<i64> = lo.to_vec();
        loop {
            if !self.cells.contains(&cursor) {
                out.cells.insert(cursor.clone());
            }
            // odometer increment
            let mut axis = self.dim();
            loop {
                if axis == 0 {
                    return Ok(out);
                }
                axis -= 1;
                if cursor[axis] < hi[axis] {
                    cursor[axis] += 1;
                    break;
                }
                cursor[axis] = lo[axis];
            }
        }
    }

    pub fn is_subset(&self, other: &GridSet) -> Result<bool> {
        let theirs = self.reindexed(other)?;
        Ok(match (self.inverted, other.inverted) {
            (false, false) => self.cells.is_subset(&theirs),
            (false, true) => self.cells.is_disjoint(&theirs),
            // a co-finite set never fits inside a finite one
            (true, false) => false,
            (true, true) => theirs.is_subset(&self.cells),
        })
    }

    /// Point-set equality, tolerating congruent origins.
    pub fn set_eq(&self, other: &GridSet) -> bool {
        self.inverted == other.inverted
            && match self.reindexed(other) {
                Ok(theirs) => self.cells == theirs,
                Err(_) => false,
            }
    }

    /// Lattice vectors `v` with `|v * cell| <= eps`: the structuring element.
    pub fn structuring_element(norm: &Norm, eps: &Rational, cell: &Rational) -> Result<Vec<Vec<i64>>> {
        let dim = norm.dimension();
        // per-axis reach: scan outward while the axis vector stays in the ball
        let mut reach = vec![0i64; dim];
        for (axis, r) in reach.iter_mut().enumerate() {
            let mut t = 0i64;
            loop {
                let next = t + 1;
                let mut v = vec![Rational::zero(); dim];
                v[axis] = cell * Rational::from_integer(next.into());
                if norm.within(&v, eps)? {
                    t = next;
                    if t > 1_000_000 {
                        return Err(Error::InvalidRadius(
                            "structuring element too large".into(),
                        ));
                    }
                } else {
                    break;
                }
            }
            *r = t;
        }
        let mut out = Vec::new();
        let mut cursor: Vec<i64> = reach.iter().map(|r| -r).collect();
        'outer: loop {
            let v: Vec<Rational> = cursor
                .iter()
                .map(|i| cell * Rational::from_integer((*i).into()))
                .collect();
            if norm.within(&v, eps)? {
                out.push(cursor.clone());
            }
            let mut axis = dim;
            loop {
                if axis == 0 {
                    break 'outer;
                }
                axis -= 1;
                if cursor[axis] < reach[axis] {
                    cursor[axis] += 1;
                    break;
                }
                cursor[axis] = -reach[axis];
            }
        }
        Ok(out)
    }

    fn dilate_cells(cells: &BTreeSet<Vec<i64>>, se: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
        let mut out = BTreeSet::new();
        for idx in cells {
            for v in se {
                out.insert(idx.iter().zip(v).map(|(i, d)| i + d).collect());
            }
        }
        out
    }

    fn erode_cells(cells: &BTreeSet<Vec<i64>>, se: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
        // the zero vector is in every structuring element, so candidates
        // outside `cells` never survive
        cells
            .iter()
            .filter(|idx| {
                se.iter().all(|v| {
                    let shifted: Vec<i64> = idx.iter().zip(v).map(|(i, d)| i + d).collect();
                    cells.contains(&shifted)
                })
            })
            .cloned()
            .collect()
    }

    /// Discrete Minkowski sum with the lattice ball of radius `eps`. On an
    /// inverted set this is the complement of the erosion of the exceptions,
    /// by duality.
    pub fn dilate(&self, norm: &Norm, eps: &Rational) -> Result<GridSet> {
        let se = GridSet::structuring_element(norm, eps, &self.cell)?;
        let mut out = self.clone();
        out.cells = if self.inverted {
            GridSet::erode_cells(&self.cells, &se)
        } else {
            GridSet::dilate_cells(&self.cells, &se)
        };
        Ok(out)
    }

    /// Cells whose whole lattice ball lies inside the set. On an inverted set
    /// this is the complement of the dilation of the exceptions.
    pub fn erode(&self, norm: &Norm, eps: &Rational) -> Result<GridSet> {
        let se = GridSet::structuring_element(norm, eps, &self.cell)?;
        let mut out = self.clone();
        out.cells = if self.inverted {
            GridSet::dilate_cells(&self.cells, &se)
        } else {
            GridSet::erode_cells(&self.cells, &se)
        };
        Ok(out)
    }

    /// Exact test `dist(x, self) <= eps` over all cells.
    pub fn within_distance(&self, x: &[Rational], norm: &Norm, eps: &Rational) -> Result<bool> {
        self.require_finite("within_distance")?;
        for idx in &self.cells {
            let p = self.point_of(idx);
            let diff: Vec<Rational> = x.iter().zip(&p).map(|(a, b)| a - b).collect();
            if norm.within(&diff, eps)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Exact nearest-cell distance for polyhedral norms (L1, LInf, weighted).
    /// Errors for L2, where the distance need not be rational; use
    /// [`GridSet::within_distance`] for exact comparisons instead.
    pub fn distance_to(&self, x: &[Rational], norm: &Norm) -> Result<Rational> {
        self.require_finite("distance_to")?;
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut best: Option<Rational> = None;
        for idx in &self.cells {
            let p = self.point_of(idx);
            let diff: Vec<Rational> = x.iter().zip(&p).map(|(a, b)| a - b).collect();
            let d = match norm {
                Norm::L1 { .. } => diff.iter().map(|c| c.abs()).sum(),
                Norm::LInf { .. } => diff
                    .iter()
                    .map(|c| c.abs())
                    .max()
                    .unwrap_or_else(Rational::zero),
                Norm::WeightedLInf { weights } => diff
                    .iter()
                    .zip(weights)
                    .map(|(c, w)| c.abs() * w)
                    .max()
                    .unwrap_or_else(Rational::zero),
                _ => {
                    return Err(Error::IncompatibleLattice(
                        "exact distance only for polyhedral norms; use within_distance".into(),
                    ))
                }
            };
            best = Some(match best {
                Some(b) if b <= d => b,
                _ => d,
            });
        }
        Ok(best.unwrap())
    }

    /// A printable member of the set, used for witnesses. For an inverted
    /// set this is a lattice point just past the exception cells.
    pub fn witness_cell(&self) -> Option<Vec<i64>> {
        if !self.inverted {
            return self.cells.iter().next().cloned();
        }
        let mut idx = vec![0i64; self.dim()];
        if let Some((_, hi)) = self.bounding_box() {
            idx[0] = hi[0] + 1;
        }
        Some(idx)
    }

    /// Index bounding box `(lo, hi)` of the stored cells.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let first = self.cells.iter().next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for idx in &self.cells {
            for (axis, i) in idx.iter().enumerate() {
                if *i < lo[axis] {
                    lo[axis] = *i;
                }
                if *i > hi[axis] {
                    hi[axis] = *i;
                }
            }
        }
        Some((lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    fn grid2() -> GridSet {
        GridSet::unit(2)
    }

    #[test]
    fn l1_diamond_has_13_cells() {
        let se = GridSet::structuring_element(&Norm::l1(2), &rint(2), &rint(1)).unwrap();
        assert_eq!(se.len(), 13);
    }

    #[test]
    fn dilate_point_by_l1_diamond() {
        let g = grid2().with_cells(vec![vec![0, 0]]).unwrap();
        let d = g.dilate(&Norm::l1(2), &rint(2)).unwrap();
        assert_eq!(d.len(), 13);
        assert!(d.contains_index(&[2, 0]));
        assert!(!d.contains_index(&[2, 1]));
    }

    #[test]
    fn distance_on_dilated_diamond() {
        let g = grid2().with_cells(vec![vec![0, 0]]).unwrap();
        let d = g.dilate(&Norm::l1(2), &rint(2)).unwrap();
        let x = vec![rint(3), rint(0)];
        assert_eq!(d.distance_to(&x, &Norm::l1(2)).unwrap(), rint(1));
    }

    #[test]
    fn erosion_of_dilation_contains_original() {
        let g = grid2()
            .with_cells(vec![vec![0, 0], vec![1, 0], vec![5, 5]])
            .unwrap();
        let opened = g
            .dilate(&Norm::linf(2), &rint(1))
            .unwrap()
            .erode(&Norm::linf(2), &rint(1))
            .unwrap();
        assert!(g.is_subset(&opened).unwrap());
    }

    #[test]
    fn incompatible_lattices_error() {
        let a = grid2();
        let b = GridSet::new(vec![rat(1, 3), rint(0)], rint(1)).unwrap();
        assert!(a.union(&b).is_err());
    }

    #[test]
    fn congruent_origin_is_fine() {
        let a = grid2().with_cells(vec![vec![0, 0]]).unwrap();
        let b = GridSet::new(vec![rint(2), rint(-1)], rint(1))
            .unwrap()
            .with_cells(vec![vec![-2, 1]])
            .unwrap();
        assert!(a.set_eq(&b));
    }

    #[test]
    fn complement_within_box() {
        let a = grid2().with_cells(vec![vec![0, 0]]).unwrap();
        let c = a.complement_within(&[-1, -1], &[1, 1]).unwrap();
        assert_eq!(c.len(), 8);
        assert!(a.complement_within(&[1, 1], &[2, 2]).is_err());
    }

    #[test]
    fn off_lattice_point_has_no_index() {
        let a = grid2();
        assert_eq!(a.index_of(&[rat(1, 2), rint(0)]).unwrap(), None);
        assert_eq!(
            a.index_of(&[rint(3), rint(-2)]).unwrap(),
            Some(vec![3, -2])
        );
    }
}
