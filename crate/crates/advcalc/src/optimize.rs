//! Search for minimum-adversarial-risk classifiers: an exhaustive oracle
//! over all unions of candidate cells, a greedy single-flip descent, and the
//! mollification post-pass.
//!
//! The oracle is the ground truth every derived optimality value is frozen
//! against. The paper-level result is an existence statement, so the oracle
//! enumerates rather than solves; greedy descent is a labeled heuristic with
//! no optimality claim.

use crate::error::{Error, Result};
use crate::geometry::{GridSet, Interval, IntervalSet};
use crate::morphology::{is_pseudo_certifiably_robust, mollify, MorphContext, MorphOps};
use crate::risk::{adversarial_risk, LabeledDistribution, Mode, RiskSet, RiskValue};
use crate::Rational;
use num_traits::{One, Zero};

/// Hard cap on the number of candidate cells for exhaustive search.
pub const MAX_CELLS: usize = 24;

/// A family of candidate cells; classifiers are unions of selected cells,
/// encoded as bitmasks.
pub trait CellFamily {
    type Set: MorphOps + RiskSet + Clone;
    fn len(&self) -> usize;
    fn assemble(&self, mask: u32) -> Result<Self::Set>;
}

/// Candidate intervals on the line.
#[derive(Debug, Clone)]
pub struct LineCells {
    pub cells: Vec<Interval>,
}

impl LineCells {
    /// An even partition of `[lo, hi]` into `n` touching cells.
    pub fn partition(lo: Rational, hi: Rational, n: usize) -> Result<Self> {
        if n == 0 || hi <= lo {
            return Err(Error::Config("partition needs n >= 1 and lo < hi".into()));
        }
        let width = (&hi - &lo) / Rational::from_integer((n as i64).into());
        let mut cells = Vec::with_capacity(n);
        for k in 0..n {
            let a = &lo + &width * Rational::from_integer((k as i64).into());
            let b = &lo + &width * Rational::from_integer((k as i64 + 1).into());
            cells.push(Interval::new(a, b)?);
        }
        Ok(LineCells { cells })
    }
}

impl CellFamily for LineCells {
    type Set = IntervalSet;

    fn len(&self) -> usize {
        self.cells.len()
    }

    fn assemble(&self, mask: u32) -> Result<IntervalSet> {
        let raw = self
            .cells
            .iter()
            .enumerate()
            .filter(|(j, _)| mask & (1 << j) != 0)
            .map(|(_, iv)| (iv.lo.clone(), iv.hi.clone()))
            .collect();
        IntervalSet::canonicalize(raw)
    }
}

/// Candidate lattice cells sharing one grid.
#[derive(Debug, Clone)]
pub struct GridCells {
    /// Empty grid fixing origin and cell size.
    pub lattice: GridSet,
    pub cells: Vec<Vec<i64>>,
}

impl CellFamily for GridCells {
    type Set = GridSet;

    fn len(&self) -> usize {
        self.cells.len()
    }

    fn assemble(&self, mask: u32) -> Result<GridSet> {
        let selected = self
            .cells
            .iter()
            .enumerate()
            .filter(|(j, _)| mask & (1 << j) != 0)
            .map(|(_, idx)| idx.clone());
        GridSet::new(self.lattice.origin().to_vec(), self.lattice.cell_size().clone())?
            .with_cells(selected)
    }
}

/// One exhaustive-search problem: candidate cells, distribution, context.
#[derive(Debug, Clone)]
pub struct SearchInstance<F: CellFamily> {
    pub family: F,
    pub dist: LabeledDistribution,
    pub ctx: MorphContext,
}

/// Outcome of a search.
#[derive(Debug, Clone)]
pub struct SearchResult<S> {
    pub best_set: S,
    pub best_mask: u32,
    pub best_risk: RiskValue,
    /// True only when every subset was enumerated.
    pub optimal: bool,
    /// Risk after each improvement (oracle) or each flip (greedy);
    /// nonincreasing.
    pub trace: Vec<(usize, RiskValue)>,
}

/// Per-atom tables making mask evaluation cheap.
struct AtomTable {
    pay_member: Rational, // p (1 - eta)
    pay_complement: Rational, // p eta
    /// cells whose dilation reaches the atom
    dilated_mask: u32,
    comp: CompRule,
}

enum CompRule {
    /// the ball around the atom escapes the candidate region no matter what
    Always,
    /// near the complement unless all these cells are selected
    RequireAll(u32),
    /// line geometry: decided against the merged components per mask
    LineBall { x: Rational, h: Rational },
}

/// Evaluates the exact adversarial risk of a cell mask, bit-identical to
/// [`adversarial_risk`] on the assembled set.
pub struct MaskEvaluator {
    atoms: Vec<AtomTable>,
    zero_eps: bool,
    /// membership mask per atom for the zero-radius case
    member_masks: Vec<u32>,
    /// presorted candidate intervals for the line complement test
    line_cells: Option<Vec<(usize, Rational, Rational)>>,
    line_domain: Option<Interval>,
}

impl MaskEvaluator {
    pub fn evaluate(&self, mask: u32) -> Rational {
        if self.zero_eps {
            let mut total = Rational::zero();
            for (t, m) in self.atoms.iter().zip(&self.member_masks) {
                total += if mask & m != 0 {
                    t.pay_member.clone()
                } else {
                    t.pay_complement.clone()
                };
            }
            return total;
        }
        let components = self.line_cells.as_ref().map(|cells| {
            let mut out: Vec<(Rational, Rational)> = Vec::new();
            for (j, lo, hi) in cells {
                if mask & (1u32 << j) == 0 {
                    continue;
                }
                match out.last_mut() {
                    Some(last) if *lo <= last.1 => {
                        if *hi > last.1 {
                            last.1 = hi.clone();
                        }
                    }
                    _ => out.push((lo.clone(), hi.clone())),
                }
            }
            out
        });
        let mut total = Rational::zero();
        for t in &self.atoms {
            if mask & t.dilated_mask != 0 {
                total += &t.pay_member;
            }
            let near_comp = match &t.comp {
                CompRule::Always => true,
                CompRule::RequireAll(required) => mask & required != *required,
                CompRule::LineBall { x, h } => {
                    let dom = self.line_domain.as_ref().expect("line tables");
                    let comps = components.as_ref().expect("line tables");
                    !ball_strictly_inside(comps, x, h, dom)
                }
            };
            if near_comp {
                total += &t.pay_complement;
            }
        }
        total
    }
}

/// Is `[x-h, x+h]` inside the interior of the merged components, treating a
/// component endpoint flush with the domain as unbounded?
fn ball_strictly_inside(
    components: &[(Rational, Rational)],
    x: &Rational,
    h: &Rational,
    dom: &Interval,
) -> bool {
    let lo_target = x - h;
    let hi_target = x + h;
    components.iter().any(|(lo, hi)| {
        (*lo < lo_target || (*lo == dom.lo && *lo <= lo_target))
            && (*hi > hi_target || (*hi == dom.hi && *hi >= hi_target))
    })
}

fn check_budget(n: usize) -> Result<()> {
    if n > MAX_CELLS {
        return Err(Error::BudgetExceeded(n, MAX_CELLS));
    }
    if n == 0 {
        return Err(Error::Config("no candidate cells".into()));
    }
    Ok(())
}

impl SearchInstance<LineCells> {
    pub fn evaluator(&self) -> Result<MaskEvaluator> {
        check_budget(self.family.len())?;
        let dom = self.ctx.line_domain()?.clone();
        let h = self.ctx.halfwidth()?;
        let zero_eps = h.is_zero();
        let mut atoms = Vec::new();
        let mut member_masks = Vec::new();
        for atom in self.dist.atoms() {
            if atom.x.len() != 1 {
                return Err(Error::DimensionMismatch {
                    expected: 1,
                    got: atom.x.len(),
                });
            }
            let x = &atom.x[0];
            if !dom.contains(x) {
                return Err(Error::AtomOutsideDomain(x.to_string()));
            }
            let mut dilated_mask = 0u32;
            let mut member_mask = 0u32;
            for (j, cell) in self.family.cells.iter().enumerate() {
                if &cell.lo - &h <= *x && *x <= &cell.hi + &h {
                    dilated_mask |= 1 << j;
                }
                if cell.contains(x) {
                    member_mask |= 1 << j;
                }
            }
            atoms.push(AtomTable {
                pay_member: &atom.p * (Rational::one() - &atom.eta),
                pay_complement: &atom.p * &atom.eta,
                dilated_mask,
                comp: CompRule::LineBall {
                    x: x.clone(),
                    h: h.clone(),
                },
            });
            member_masks.push(member_mask);
        }
        let mut line_cells: Vec<(usize, Rational, Rational)> = self
            .family
            .cells
            .iter()
            .enumerate()
            .map(|(j, iv)| (j, iv.lo.clone(), iv.hi.clone()))
            .collect();
        line_cells.sort_by(|a, b| a.1.cmp(&b.1).then(a.2.cmp(&b.2)));
        Ok(MaskEvaluator {
            atoms,
            zero_eps,
            member_masks,
            line_cells: Some(line_cells),
            line_domain: Some(dom),
        })
    }
}

impl SearchInstance<GridCells> {
    pub fn evaluator(&self) -> Result<MaskEvaluator> {
        check_budget(self.family.len())?;
        let (lo, hi) = self.ctx.box_domain()?;
        let se = GridSet::structuring_element(
            &self.ctx.norm,
            self.ctx.eps.value(),
            self.family.lattice.cell_size(),
        )?;
        let zero_eps = se.len() == 1;
        let cell_of: std::collections::BTreeMap<&Vec<i64>, usize> = self
            .family
            .cells
            .iter()
            .enumerate()
            .map(|(j, idx)| (idx, j))
            .collect();
        let mut atoms = Vec::new();
        let mut member_masks = Vec::new();
        for atom in self.dist.atoms() {
            let idx = self
                .family
                .lattice
                .index_of(&atom.x)?
                .ok_or_else(|| Error::AtomOutsideDomain(format!("{:?} is off-lattice", atom.x)))?;
            if idx.iter().zip(lo).any(|(i, l)| i < l) || idx.iter().zip(hi).any(|(i, h)| i > h) {
                return Err(Error::AtomOutsideDomain(format!("{idx:?} outside box")));
            }
            let mut dilated_mask = 0u32;
            let mut required = 0u32;
            let mut escapes = false;
            for v in &se {
                let neighbor: Vec<i64> = idx.iter().zip(v).map(|(i, d)| i + d).collect();
                match cell_of.get(&neighbor) {
                    Some(j) => {
                        dilated_mask |= 1 << j;
                        required |= 1 << j;
                    }
                    None => escapes = true,
                }
            }
            let member_mask = cell_of.get(&idx).map(|j| 1u32 << j).unwrap_or(0);
            atoms.push(AtomTable {
                pay_member: &atom.p * (Rational::one() - &atom.eta),
                pay_complement: &atom.p * &atom.eta,
                dilated_mask,
                comp: if escapes {
                    CompRule::Always
                } else {
                    CompRule::RequireAll(required)
                },
            });
            member_masks.push(member_mask);
        }
        Ok(MaskEvaluator {
            atoms,
            zero_eps,
            member_masks,
            line_cells: None,
            line_domain: None,
        })
    }
}

macro_rules! impl_search {
    ($family:ty) => {
        impl SearchInstance<$family> {
            /// Enumerates every subset of the candidate cells in ascending
            /// mask order; ties go to the numerically smallest mask.
            pub fn oracle_search(&self) -> Result<SearchResult<<$family as CellFamily>::Set>> {
                let eval = self.evaluator()?;
                let n = self.family.len();
                let mut best_mask = 0u32;
                let mut best = eval.evaluate(0);
                let mut trace = vec![(0usize, RiskValue::new(best.clone())?)];
                for mask in 1..(1u64 << n) as u64 {
                    let mask = mask as u32;
                    let risk = eval.evaluate(mask);
                    if risk < best {
                        best = risk;
                        best_mask = mask;
                        trace.push((mask as usize, RiskValue::new(best.clone())?));
                    }
                }
                self.finish(best_mask, best, true, trace)
            }

            /// Second independent enumeration in Gray-code order; must agree
            /// with [`Self::oracle_search`].
            pub fn oracle_search_gray(
                &self,
            ) -> Result<SearchResult<<$family as CellFamily>::Set>> {
                let eval = self.evaluator()?;
                let n = self.family.len();
                let mut best_mask = u32::MAX;
                let mut best: Option<Rational> = None;
                for i in 0..(1u64 << n) {
                    let mask = (i ^ (i >> 1)) as u32;
                    let risk = eval.evaluate(mask);
                    let improves = match &best {
                        None => true,
                        Some(b) => risk < *b || (risk == *b && mask < best_mask),
                    };
                    if improves {
                        best = Some(risk);
                        best_mask = mask;
                    }
                }
                let best = best.expect("at least the empty mask");
                let trace = vec![(0usize, RiskValue::new(best.clone())?)];
                self.finish(best_mask, best, true, trace)
            }

            /// Flips the single cell with the largest exact risk decrease
            /// until no flip improves or `max_iters` is reached.
            pub fn greedy_flip_descent(
                &self,
                start_mask: u32,
                max_iters: usize,
            ) -> Result<SearchResult<<$family as CellFamily>::Set>> {
                let eval = self.evaluator()?;
                let n = self.family.len();
                let mut mask = start_mask;
                let mut risk = eval.evaluate(mask);
                let mut trace = vec![(0usize, RiskValue::new(risk.clone())?)];
                for iter in 1..=max_iters {
                    let mut best_flip: Option<(usize, Rational)> = None;
                    for j in 0..n {
                        let candidate = eval.evaluate(mask ^ (1 << j));
                        if candidate < risk {
                            let better = match &best_flip {
                                None => true,
                                Some((_, r)) => candidate < *r,
                            };
                            if better {
                                best_flip = Some((j, candidate));
                            }
                        }
                    }
                    match best_flip {
                        Some((j, r)) => {
                            mask ^= 1 << j;
                            risk = r;
                            trace.push((iter, RiskValue::new(risk.clone())?));
                        }
                        None => break,
                    }
                }
                self.finish(mask, risk, false, trace)
            }

            fn finish(
                &self,
                mask: u32,
                risk: Rational,
                optimal: bool,
                trace: Vec<(usize, RiskValue)>,
            ) -> Result<SearchResult<<$family as CellFamily>::Set>> {
                let best_set = self.family.assemble(mask)?;
                let check =
                    adversarial_risk(&best_set, &self.dist, &self.ctx, Mode::Morphology)?;
                debug_assert_eq!(check.value(), &risk, "evaluator drifted from risk module");
                Ok(SearchResult {
                    best_set,
                    best_mask: mask,
                    best_risk: RiskValue::new(risk)?,
                    optimal,
                    trace,
                })
            }
        }
    };
}

impl_search!(LineCells);
impl_search!(GridCells);

/// Result of [`mollified_optimality_check`].
#[derive(Debug, Clone)]
pub struct MollifiedCheck<S> {
    pub minimizer: S,
    pub mollified: S,
    pub best_risk: RiskValue,
    /// Always expected true: the mollified minimizer is still a minimizer.
    pub risk_equal: bool,
    /// Informational only: discrete semantics may break pseudo-robustness.
    pub pseudo_robust: bool,
}

macro_rules! impl_mollified_check {
    ($family:ty) => {
        impl SearchInstance<$family> {
            /// Runs the oracle, mollifies the minimizer, and verifies the
            /// mollified set attains the same optimal risk.
            pub fn mollified_optimality_check(
                &self,
            ) -> Result<MollifiedCheck<<$family as CellFamily>::Set>> {
                let result = self.oracle_search()?;
                let mollified = mollify(&result.best_set, &self.ctx)?;
                let risk = adversarial_risk(&mollified, &self.dist, &self.ctx, Mode::Morphology)?;
                let verdict = is_pseudo_certifiably_robust(&mollified, &self.ctx)?;
                Ok(MollifiedCheck {
                    risk_equal: &risk == &result.best_risk,
                    pseudo_robust: verdict.robust,
                    minimizer: result.best_set,
                    mollified,
                    best_risk: result.best_risk,
                })
            }
        }
    };
}

impl_mollified_check!(LineCells);
impl_mollified_check!(GridCells);

/// Per-step record of [`minimizing_sequence_harness`].
#[derive(Debug, Clone)]
pub struct SequenceStep {
    pub n: usize,
    pub decreasing_ok: bool,
    pub dilation_union_ok: bool,
    pub risk: RiskValue,
}

/// Report of the tail-union identities along a candidate minimizing
/// sequence. The final-risk comparison is reported, never asserted.
#[derive(Debug, Clone)]
pub struct SequenceReport {
    pub steps: Vec<SequenceStep>,
    pub identities_hold: bool,
    /// `R^eps(B_1)` of the first tail union.
    pub first_tail_risk: RiskValue,
    /// Minimum risk among the original sequence members.
    pub min_sequence_risk: RiskValue,
}

/// Builds the tail unions `B_n` of `seq` and checks the two exact
/// identities: the chain decreases and dilation distributes over each tail.
pub fn minimizing_sequence_harness<S: MorphOps + RiskSet>(
    seq: &[S],
    dist: &LabeledDistribution,
    ctx: &MorphContext,
) -> Result<SequenceReport> {
    let tails = crate::morphology::tail_unions(seq)?;
    let mut steps = Vec::with_capacity(tails.len());
    for (n, b) in tails.iter().enumerate() {
        let decreasing_ok = match tails.get(n + 1) {
            Some(next) => next.subset(b)?,
            None => true,
        };
        let mut dil_union = seq[n].dilate(ctx)?;
        for a in &seq[n + 1..] {
            dil_union = dil_union.union(&a.dilate(ctx)?)?;
        }
        let dilation_union_ok = b.dilate(ctx)?.eq_exact(&dil_union);
        let risk = adversarial_risk(b, dist, ctx, Mode::Morphology)?;
        steps.push(SequenceStep {
            n,
            decreasing_ok,
            dilation_union_ok,
            risk,
        });
    }
    let identities_hold = steps.iter().all(|s| s.decreasing_ok && s.dilation_union_ok);
    let first_tail_risk = steps[0].risk.clone();
    let mut min_sequence_risk = adversarial_risk(&seq[0], dist, ctx, Mode::Morphology)?;
    for a in &seq[1..] {
        let r = adversarial_risk(a, dist, ctx, Mode::Morphology)?;
        if r < min_sequence_risk {
            min_sequence_risk = r;
        }
    }
    Ok(SequenceReport {
        steps,
        identities_hold,
        first_tail_risk,
        min_sequence_risk,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Norm, Radius};
    use crate::{rat, rint};

    fn two_atom() -> LabeledDistribution {
        LabeledDistribution::on_line(vec![
            (rint(0), rat(1, 2), rint(1)),
            (rint(1), rat(1, 2), rint(0)),
        ])
        .unwrap()
    }

    fn line_instance(eps_num: i64, eps_den: i64) -> SearchInstance<LineCells> {
        SearchInstance {
            family: LineCells::partition(rint(-2), rint(2), 8).unwrap(),
            dist: two_atom(),
            ctx: MorphContext::line(
                Norm::l2(1),
                Radius::new(rat(eps_num, eps_den)).unwrap(),
                Interval::new(rint(-2), rint(2)).unwrap(),
            )
            .unwrap(),
        }
    }

    #[test]
    fn two_atom_oracle_risk_is_half() {
        let inst = line_instance(3, 5);
        let result = inst.oracle_search().unwrap();
        assert_eq!(result.best_risk.value(), &rat(1, 2));
        assert!(result.optimal);
        for w in result.trace.windows(2) {
            assert!(w[1].1 <= w[0].1);
        }
    }

    #[test]
    fn gray_enumeration_agrees() {
        let inst = line_instance(3, 5);
        let a = inst.oracle_search().unwrap();
        let b = inst.oracle_search_gray().unwrap();
        assert_eq!(a.best_risk, b.best_risk);
        assert_eq!(a.best_mask, b.best_mask);
    }

    #[test]
    fn zero_eps_reaches_bayes_risk() {
        let inst = line_instance(0, 1);
        let result = inst.oracle_search().unwrap();
        assert_eq!(result.best_risk, inst.dist.bayes_risk());
    }

    #[test]
    fn single_confident_atom_risk_zero() {
        let dist =
            LabeledDistribution::on_line(vec![(rint(0), rint(1), rint(1))]).unwrap();
        let inst = SearchInstance {
            family: LineCells::partition(rint(-2), rint(2), 8).unwrap(),
            dist,
            ctx: MorphContext::line(
                Norm::l2(1),
                Radius::new(rat(1, 2)).unwrap(),
                Interval::new(rint(-2), rint(2)).unwrap(),
            )
            .unwrap(),
        };
        let result = inst.oracle_search().unwrap();
        assert_eq!(result.best_risk.value(), &rint(0));
        let check = inst.mollified_optimality_check().unwrap();
        assert!(check.risk_equal);
    }

    #[test]
    fn greedy_from_oracle_minimizer_stops_immediately() {
        let inst = line_instance(3, 5);
        let oracle = inst.oracle_search().unwrap();
        let greedy = inst.greedy_flip_descent(oracle.best_mask, 100).unwrap();
        assert_eq!(greedy.trace.len(), 1);
        assert_eq!(greedy.best_risk, oracle.best_risk);
    }

    #[test]
    fn greedy_from_empty_reaches_half() {
        let inst = line_instance(3, 5);
        let greedy = inst.greedy_flip_descent(0, 100).unwrap();
        assert_eq!(greedy.best_risk.value(), &rat(1, 2));
        for w in greedy.trace.windows(2) {
            assert!(w[1].1 <= w[0].1);
        }
        let frozen = inst.greedy_flip_descent(0, 0).unwrap();
        assert_eq!(frozen.best_mask, 0);
    }

    #[test]
    fn oracle_beats_or_matches_greedy() {
        let dist = LabeledDistribution::on_line(vec![
            (rat(-3, 2), rat(1, 4), rat(4, 5)),
            (rint(0), rat(1, 4), rat(1, 5)),
            (rat(1, 2), rat(1, 4), rat(2, 3)),
            (rat(3, 2), rat(1, 4), rat(1, 3)),
        ])
        .unwrap();
        let inst = SearchInstance {
            family: LineCells::partition(rint(-2), rint(2), 8).unwrap(),
            dist,
            ctx: MorphContext::line(
                Norm::l2(1),
                Radius::new(rat(1, 4)).unwrap(),
                Interval::new(rint(-2), rint(2)).unwrap(),
            )
            .unwrap(),
        };
        let oracle = inst.oracle_search().unwrap();
        for start in [0u32, 0b1010_1010, 0b1111_1111] {
            let greedy = inst.greedy_flip_descent(start, 50).unwrap();
            assert!(oracle.best_risk <= greedy.best_risk);
            let start_eval = inst.evaluator().unwrap().evaluate(start);
            assert!(greedy.best_risk.value() <= &start_eval);
        }
        let check = inst.mollified_optimality_check().unwrap();
        assert!(check.risk_equal);
    }

    #[test]
    fn budget_enforced() {
        let inst = SearchInstance {
            family: LineCells::partition(rint(0), rint(25), 25).unwrap(),
            dist: LabeledDistribution::on_line(vec![(rint(1), rint(1), rint(1))]).unwrap(),
            ctx: MorphContext::line(
                Norm::l2(1),
                Radius::new(rat(1, 2)).unwrap(),
                Interval::new(rint(0), rint(25)).unwrap(),
            )
            .unwrap(),
        };
        assert!(matches!(
            inst.oracle_search(),
            Err(Error::BudgetExceeded(25, 24))
        ));
    }

    #[test]
    fn grid_oracle_matches_line_style_expectations() {
        let lattice = GridSet::unit(1);
        let inst = SearchInstance {
            family: GridCells {
                lattice: lattice.clone(),
                cells: (-2..=2).map(|i| vec![i]).collect(),
            },
            dist: LabeledDistribution::new(vec![
                crate::risk::Atom {
                    x: vec![rint(0)],
                    p: rat(1, 2),
                    eta: rint(1),
                },
                crate::risk::Atom {
                    x: vec![rint(1)],
                    p: rat(1, 2),
                    eta: rint(0),
                },
            ])
            .unwrap(),
            ctx: MorphContext::grid(
                Norm::l1(1),
                Radius::new(rint(1)).unwrap(),
                vec![-4],
                vec![4],
            )
            .unwrap(),
        };
        let oracle = inst.oracle_search().unwrap();
        let gray = inst.oracle_search_gray().unwrap();
        assert_eq!(oracle.best_risk, gray.best_risk);
        // eps = 1 lets each atom reach the other: no classifier separates
        // them, and the whole-line side covering the eta=1 atom pays 1/2
        assert_eq!(oracle.best_risk.value(), &rat(1, 2));
    }

    #[test]
    fn sequence_harness_identities() {
        let dist = two_atom();
        let ctx = MorphContext::line(
            Norm::l2(1),
            Radius::new(rat(1, 4)).unwrap(),
            Interval::new(rint(-4), rint(4)).unwrap(),
        )
        .unwrap();
        let seq = vec![
            IntervalSet::from_interval(rint(-1), rint(1)).unwrap(),
            IntervalSet::from_interval(rint(0), rint(2)).unwrap(),
            IntervalSet::from_interval(rint(0), rint(1)).unwrap(),
        ];
        let report = minimizing_sequence_harness(&seq, &dist, &ctx).unwrap();
        assert!(report.identities_hold);
        let constant = vec![seq[0].clone(); 3];
        let report = minimizing_sequence_harness(&constant, &dist, &ctx).unwrap();
        assert!(report.identities_hold);
        assert_eq!(report.first_tail_risk, report.min_sequence_risk);
    }
}
