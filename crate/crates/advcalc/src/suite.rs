//! Seeded batch property suites with CSV artifacts and replayable witnesses.
//!
//! Every case derives its own RNG from `(seed, case index)`, so a witness
//! file containing only `(suite, seed, case_index)` regenerates the exact
//! inputs and reruns the check through the same module operations.
//!
//! Frozen CSV schema for `cases.csv`:
//! `suite, case_id, status, lhs, rhs, witness_path`.
//! `summary.csv` aggregates per check family:
//! `suite, cases, failures, max_violation`.

use crate::error::{Error, Result};
use crate::gauge::{self, ConvexBody, HalfspacePolytope};
use crate::geometry::{GridSet, Interval, IntervalSet, Norm, Radius};
use crate::io;
use crate::morphology::{
    self, closing, fringe, mollify, opening, MorphContext, MorphOps,
};
use crate::optimize::{LineCells, SearchInstance};
use crate::risk::{adversarial_risk, standard_risk, LabeledDistribution, Mode};
use crate::strings::{
    decreasing_intersection_check, erode_strings, perturb, perturb_closed,
    string_adversarial_risk, string_oracle_search, swap_apply, StringAtom,
    StringDistribution, StringUniverse, SwapFamily,
};
use crate::{rat, rint, Rational};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

/// The available property suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    Identities,
    Grid,
    Risk,
    Oracle,
    Gauge,
    Strings,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 6] = [
        SuiteKind::Identities,
        SuiteKind::Grid,
        SuiteKind::Risk,
        SuiteKind::Oracle,
        SuiteKind::Gauge,
        SuiteKind::Strings,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteKind::Identities => "identities",
            SuiteKind::Grid => "grid",
            SuiteKind::Risk => "risk",
            SuiteKind::Oracle => "oracle",
            SuiteKind::Gauge => "gauge",
            SuiteKind::Strings => "strings",
        }
    }

    /// A sensible default case count per suite (overridable in the config).
    pub fn default_cases(&self) -> usize {
        match self {
            SuiteKind::Identities => 200,
            SuiteKind::Grid => 100,
            SuiteKind::Risk => 100,
            SuiteKind::Oracle => 20,
            SuiteKind::Gauge => 50,
            SuiteKind::Strings => 100,
        }
    }
}

impl std::str::FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// Batch-run configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub kind: SuiteKind,
    pub cases: usize,
    pub seed: u64,
    pub out_dir: PathBuf,
    /// Inject one deliberately failing check into the given case.
    #[serde(default)]
    pub force_fail: Option<usize>,
}

/// One row of `cases.csv`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseRow {
    pub suite: String,
    pub case_id: String,
    pub status: String,
    pub lhs: String,
    pub rhs: String,
    pub witness_path: String,
}

/// One row of `summary.csv`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryRow {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    pub max_violation: f64,
}

/// Full outcome of [`run_suite`].
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub rows: Vec<CaseRow>,
    pub summary: Vec<SummaryRow>,
    pub cases: usize,
    pub failures: usize,
    pub cases_csv: PathBuf,
    pub summary_csv: PathBuf,
}

/// A standalone replay token: enough to regenerate one case exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    pub suite: SuiteKind,
    pub seed: u64,
    pub case_index: usize,
    pub family: String,
    pub forced: bool,
}

/// One check inside a case.
struct Check {
    family: &'static str,
    pass: bool,
    lhs: String,
    rhs: String,
    violation: f64,
}

impl Check {
    fn exact(family: &'static str, pass: bool, lhs: String, rhs: String) -> Check {
        Check {
            family,
            pass,
            lhs,
            rhs,
            violation: if pass { 0.0 } else { 1.0 },
        }
    }

    fn numeric(family: &'static str, pass: bool, violation: f64, bound: f64) -> Check {
        Check {
            family,
            pass,
            lhs: format!("{violation:e}"),
            rhs: format!("{bound:e}"),
            violation,
        }
    }
}

fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(
        seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(index as u64),
    )
}

// ---------------------------------------------------------------------------
// Random generators (exact rationals from small grids)
// ---------------------------------------------------------------------------

const DENOMS: [i64; 6] = [1, 2, 3, 4, 6, 12];

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let d = DENOMS[rng.gen_range(0..DENOMS.len())];
    rat(rng.gen_range(lo * d..=hi * d), d)
}

fn random_interval_set(rng: &mut ChaCha8Rng, max_intervals: usize) -> IntervalSet {
    let n = rng.gen_range(0..=max_intervals);
    let mut raw = Vec::with_capacity(n);
    for _ in 0..n {
        let a = random_rational(rng, -4, 4);
        let b = random_rational(rng, -4, 4);
        if a <= b {
            raw.push((a, b));
        } else {
            raw.push((b, a));
        }
    }
    IntervalSet::canonicalize(raw).expect("ordered pairs")
}

const EPS_CHOICES: [(i64, i64); 4] = [(1, 4), (1, 3), (1, 2), (1, 1)];

fn random_eps(rng: &mut ChaCha8Rng) -> Rational {
    let (n, d) = EPS_CHOICES[rng.gen_range(0..EPS_CHOICES.len())];
    rat(n, d)
}

fn random_distribution(rng: &mut ChaCha8Rng, max_atoms: usize) -> LabeledDistribution {
    let n = rng.gen_range(1..=max_atoms);
    let mut pool: Vec<i64> = (-20..=20).collect();
    pool.shuffle(rng);
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    let atoms = pool[..n]
        .iter()
        .zip(&weights)
        .map(|(x, w)| {
            let eta = rat(rng.gen_range(0..=12), 12);
            (rat(*x, 4), rat(*w, total), eta)
        })
        .collect();
    LabeledDistribution::on_line(atoms).expect("valid by construction")
}

fn random_grid_set(rng: &mut ChaCha8Rng, side: i64, density: f64) -> GridSet {
    let mut cells = Vec::new();
    for x in 0..side {
        for y in 0..side {
            if rng.gen_bool(density) {
                cells.push(vec![x, y]);
            }
        }
    }
    GridSet::unit(2).with_cells(cells).expect("finite cells")
}

fn set_json(s: &IntervalSet) -> String {
    io::interval_set_to_json(s).to_string()
}

fn grid_json(s: &GridSet) -> String {
    if s.is_inverted() {
        format!("co-finite:{} exceptions", s.cells().len())
    } else {
        format!("{} cells", s.cells().len())
    }
}

// ---------------------------------------------------------------------------
// Per-suite case evaluation
// ---------------------------------------------------------------------------

fn identities_case(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let a = random_interval_set(rng, 8);
    let e1 = random_eps(rng);
    let e2 = random_eps(rng);
    let both = Radius::new(&e1 + &e2)?;
    let base = MorphContext::line_padded(Norm::l2(1), both.clone(), &[&a])?;
    let c1 = base.with_eps(Radius::new(e1.clone())?);
    let c2 = base.with_eps(Radius::new(e2.clone())?);
    let c12 = base.with_eps(both);
    let mut checks = Vec::with_capacity(8);

    // 1-2: radius additivity for dilation and erosion
    let two_step = a.dilate(&c1)?.dilate(&c2)?;
    let one_step = a.dilate(&c12)?;
    checks.push(Check::exact(
        "radius_sum_dilation",
        two_step.eq_exact(&one_step),
        set_json(&two_step),
        set_json(&one_step),
    ));
    let two_step_e = a.erode(&c1)?.erode(&c2)?;
    let one_step_e = a.erode(&c12)?;
    checks.push(Check::exact(
        "radius_sum_erosion",
        two_step_e.eq_closure(&one_step_e),
        set_json(&two_step_e),
        set_json(&one_step_e),
    ));

    // 3-4: the two decompositions A = opening(A) ⊔ F(A) and
    // closing(A) = A ∪ F(A^C)
    let open = opening(&a, &c1)?;
    let fr = fringe(&a, &c1)?;
    let part = open.union(&fr);
    let disjoint = open.intersection(&fr).essential().is_empty();
    checks.push(Check::exact(
        "characterize_opening_fringe",
        disjoint && part.eq_closure(&a),
        set_json(&part),
        set_json(&a),
    ));
    let close = closing(&a, &c1)?;
    // the complement fringe needs the complement's open-set semantics, or
    // gaps of width exactly 2*eps (and gaps flanking degenerate components)
    // are misclassified
    let expected = a.union(&morphology::complement_fringe_line(&a, &c1)?);
    checks.push(Check::exact(
        "closing_adds_complement_fringe",
        close.eq_closure(&expected),
        set_json(&close),
        set_json(&expected),
    ));

    // 5-6: idempotence of opening and closing under one more pass
    let lhs5 = closing(&a, &c1)?.dilate(&c1)?;
    let rhs5 = a.dilate(&c1)?;
    checks.push(Check::exact(
        "closing_preserves_dilation",
        lhs5.eq_closure(&rhs5),
        set_json(&lhs5),
        set_json(&rhs5),
    ));
    let lhs6 = opening(&a, &c1)?.erode(&c1)?;
    let rhs6 = a.erode(&c1)?;
    checks.push(Check::exact(
        "opening_preserves_erosion",
        lhs6.eq_closure(&rhs6),
        set_json(&lhs6),
        set_json(&rhs6),
    ));

    // 7: finite-family relations on up to 5 random sets
    let family: Vec<IntervalSet> = (0..rng.gen_range(1..=5))
        .map(|_| random_interval_set(rng, 4))
        .collect();
    let refs: Vec<&IntervalSet> = family.iter().collect();
    let fam_ctx = MorphContext::line_padded(Norm::l2(1), Radius::new(e1.clone())?, &refs)?;
    let report = morphology::finite_family_identities(&family, &fam_ctx)?;
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.name)
        .collect();
    checks.push(Check::exact(
        "family_relations",
        report.all_hold(),
        if failed.is_empty() {
            "all hold".into()
        } else {
            failed.join(";")
        },
        "all hold".into(),
    ));

    // 8: fringes that must vanish
    let f_dilated = fringe(&a.dilate(&c1)?, &c1)?.essential();
    let f_comp_eroded = fringe(&a.erode(&c1)?.complement(&c1)?, &c1)?.essential();
    let eroded_fringe = fr.erode(&c1)?.essential();
    let pass = f_dilated.is_empty() && f_comp_eroded.is_empty() && eroded_fringe.is_empty();
    checks.push(Check::exact(
        "fringe_vanishing",
        pass,
        format!(
            "{}|{}|{}",
            set_json(&f_dilated),
            set_json(&f_comp_eroded),
            set_json(&eroded_fringe)
        ),
        "[]|[]|[]".into(),
    ));
    Ok(checks)
}

fn grid_case(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let a = random_grid_set(rng, 32, 0.3);
    let norms = [Norm::l1(2), Norm::l2(2), Norm::linf(2)];
    let norm = norms[rng.gen_range(0..norms.len())].clone();
    let eps_pool = [rint(1), rint(2), rat(3, 2)];
    let eps = eps_pool[rng.gen_range(0..eps_pool.len())].clone();
    let mut checks = Vec::with_capacity(5);

    // extensivity of dilation, anti-extensivity of erosion
    let dilated = a.dilate(&norm, &eps)?;
    let eroded = a.erode(&norm, &eps)?;
    let ext = a.is_subset(&dilated)? && eroded.is_subset(&a)?;
    checks.push(Check::exact(
        "extensivity",
        ext,
        grid_json(&a),
        grid_json(&dilated),
    ));

    // monotonicity: A ⊆ B implies nested dilations and erosions
    let extra = random_grid_set(rng, 32, 0.1);
    let b = a.union(&extra)?;
    let mono = dilated.is_subset(&b.dilate(&norm, &eps)?)?
        && eroded.is_subset(&b.erode(&norm, &eps)?)?;
    checks.push(Check::exact(
        "monotonicity",
        mono,
        grid_json(&a),
        grid_json(&b),
    ));

    // duality through the co-finite complement: erode(A) = C(dilate(C(A)))
    let dual = a.inverse().dilate(&norm, &eps)?.inverse();
    checks.push(Check::exact(
        "duality",
        eroded.set_eq(&dual),
        grid_json(&eroded),
        grid_json(&dual),
    ));

    // radius composition, exact only for polyhedral norms at integer radii
    let (r1, r2) = (rint(1), rint(2));
    let poly = Norm::l1(2);
    let two = a.dilate(&poly, &r1)?.dilate(&poly, &r2)?;
    let one = a.dilate(&poly, &(&r1 + &r2))?;
    let two_inf = a.dilate(&Norm::linf(2), &r1)?.dilate(&Norm::linf(2), &r2)?;
    let one_inf = a.dilate(&Norm::linf(2), &(&r1 + &r2))?;
    checks.push(Check::exact(
        "integer_radius_composition",
        two.set_eq(&one) && two_inf.set_eq(&one_inf),
        grid_json(&two),
        grid_json(&one),
    ));

    // the documented Euclidean counterexample stays reproducible
    let witness =
        morphology::structuring_composition_witness(&Norm::l2(2), &r1, &r2, &rint(1))?;
    let expected = matches!(&witness, Some(v) if v.iter().map(|c| c.abs()).collect::<Vec<i64>>() == vec![2, 2]);
    checks.push(Check::exact(
        "l2_composition_counterexample",
        expected,
        format!("{witness:?}"),
        "Some([+/-2, +/-2])".into(),
    ));
    Ok(checks)
}

fn risk_case(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let a = random_interval_set(rng, 5);
    let dist = random_distribution(rng, 10);
    let mut e1 = random_eps(rng);
    let mut e2 = random_eps(rng);
    if e1 > e2 {
        std::mem::swap(&mut e1, &mut e2);
    }
    // the domain must cover every atom plus the largest reach
    let span = Interval::new(rat(-10, 1), rat(10, 1))?;
    let base = MorphContext::line(Norm::l2(1), Radius::new(e2.clone())?, span)?;
    let c1 = base.with_eps(Radius::new(e1.clone())?);
    let c2 = base.with_eps(Radius::new(e2.clone())?);
    let mode = if rng.gen_bool(0.5) {
        Mode::Morphology
    } else {
        Mode::Distance
    };
    let mut checks = Vec::with_capacity(6);

    let r_a = adversarial_risk(&a, &dist, &c2, mode)?;
    let r_open = adversarial_risk(&opening(&a, &c2)?, &dist, &c2, mode)?;
    checks.push(Check::exact(
        "opening_decreases_risk",
        r_open <= r_a,
        r_open.to_string(),
        r_a.to_string(),
    ));
    let r_close = adversarial_risk(&closing(&a, &c2)?, &dist, &c2, mode)?;
    checks.push(Check::exact(
        "closing_decreases_risk",
        r_close <= r_a,
        r_close.to_string(),
        r_a.to_string(),
    ));
    let r_moll = adversarial_risk(&mollify(&a, &c2)?, &dist, &c2, mode)?;
    checks.push(Check::exact(
        "mollify_decreases_risk",
        r_moll <= r_a,
        r_moll.to_string(),
        r_a.to_string(),
    ));
    let r_small = adversarial_risk(&a, &dist, &c1, mode)?;
    checks.push(Check::exact(
        "risk_monotone_in_radius",
        r_small <= r_a,
        r_small.to_string(),
        r_a.to_string(),
    ));
    let c0 = base.with_eps(Radius::zero());
    let r_zero = adversarial_risk(&a, &dist, &c0, mode)?;
    let r_std = standard_risk(&a, &dist, &c0)?;
    checks.push(Check::exact(
        "zero_radius_equals_standard",
        r_zero == r_std,
        r_zero.to_string(),
        r_std.to_string(),
    ));

    // the same inequalities on a grid instance
    let g = random_grid_set(rng, 8, 0.4);
    let atoms: Vec<(Vec<i64>, i64)> = {
        let mut pool: Vec<Vec<i64>> = (0..8)
            .flat_map(|x| (0..8).map(move |y| vec![x, y]))
            .collect();
        pool.shuffle(rng);
        pool.into_iter()
            .take(rng.gen_range(1..=6))
            .map(|idx| (idx, rng.gen_range(1..=9)))
            .collect()
    };
    let total: i64 = atoms.iter().map(|(_, w)| w).sum();
    let gdist = LabeledDistribution::new(
        atoms
            .iter()
            .map(|(idx, w)| crate::risk::Atom {
                x: idx.iter().map(|i| rint(*i)).collect(),
                p: rat(*w, total),
                eta: rat(rng.gen_range(0..=12), 12),
            })
            .collect(),
    )?;
    let geps = if rng.gen_bool(0.5) { rint(1) } else { rint(2) };
    let gctx = MorphContext::grid(
        Norm::l1(2),
        Radius::new(geps)?,
        vec![-8, -8],
        vec![16, 16],
    )?;
    let gr_a = adversarial_risk(&g, &gdist, &gctx, Mode::Morphology)?;
    let gr_open = adversarial_risk(&opening(&g, &gctx)?, &gdist, &gctx, Mode::Morphology)?;
    checks.push(Check::exact(
        "grid_opening_decreases_risk",
        gr_open <= gr_a,
        gr_open.to_string(),
        gr_a.to_string(),
    ));
    Ok(checks)
}

fn oracle_case(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let n = rng.gen_range(4..=10);
    let family = LineCells::partition(rint(0), rint(n), n as usize)?;
    let dist = {
        let mut pool: Vec<i64> = (0..4 * n).collect();
        pool.shuffle(rng);
        let k = rng.gen_range(1..=6).min(pool.len());
        let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=9)).collect();
        let total: i64 = weights.iter().sum();
        LabeledDistribution::on_line(
            pool[..k]
                .iter()
                .zip(&weights)
                .map(|(x, w)| (rat(*x, 4), rat(*w, total), rat(rng.gen_range(0..=12), 12)))
                .collect(),
        )?
    };
    let eps_pool = [rat(1, 4), rat(1, 2), rint(1)];
    let eps = eps_pool[rng.gen_range(0..eps_pool.len())].clone();
    let domain = Interval::new(rat(-4, 1), rint(n + 4))?;
    let ctx = MorphContext::line(Norm::l2(1), Radius::new(eps)?, domain)?;
    let instance = SearchInstance { family, dist, ctx };
    let mut checks = Vec::with_capacity(3);

    let oracle = instance.oracle_search()?;
    let gray = instance.oracle_search_gray()?;
    checks.push(Check::exact(
        "gray_enumeration_agrees",
        oracle.best_risk == gray.best_risk && oracle.best_mask == gray.best_mask,
        format!("mask {} risk {}", oracle.best_mask, oracle.best_risk),
        format!("mask {} risk {}", gray.best_mask, gray.best_risk),
    ));

    let moll = instance.mollified_optimality_check()?;
    checks.push(Check::exact(
        "mollified_minimizer_optimal",
        moll.risk_equal,
        set_json(&mollify(&oracle.best_set, &instance.ctx)?),
        oracle.best_risk.to_string(),
    ));

    let greedy = instance.greedy_flip_descent(oracle.best_mask, 64)?;
    checks.push(Check::exact(
        "greedy_fixed_at_optimum",
        greedy.trace.len() == 1 && greedy.best_risk == oracle.best_risk,
        format!("{} flips", greedy.trace.len() - 1),
        "0 flips".into(),
    ));
    Ok(checks)
}

fn gauge_case(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let probe_seed: u64 = rng.gen();
    let mut checks = Vec::with_capacity(4);

    let disc = ConvexBody::unit_disc();
    let report = gauge::concavity_probe(&disc, 300, probe_seed)?;
    checks.push(Check::numeric(
        "concavity_disc",
        report.holds,
        report.max_violation,
        1e-9,
    ));

    let k = rng.gen_range(5..=12);
    let poly = ConvexBody::Polytope(HalfspacePolytope::circumscribing_ngon(
        &[0.0, 0.0],
        0.5 + rng.gen::<f64>(),
        k,
    )?);
    let report = gauge::concavity_probe(&poly, 300, probe_seed.wrapping_add(1))?;
    checks.push(Check::numeric(
        "concavity_polytope",
        report.holds,
        report.max_violation,
        1e-9,
    ));

    // translation covariance: lambda(x + w, v) over the shifted body equals
    // lambda(x, v) over the original
    let w = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
    let x = [rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)];
    let v = [rng.gen_range(-1.0..1.0), 1.0];
    let l0 = gauge::lambda(&disc, &x, &v)?;
    let shifted = disc.translated(&w);
    let l1 = gauge::lambda(&shifted, &[x[0] + w[0], x[1] + w[1]], &v)?;
    let viol = (l0 - l1).abs() / l0.abs().max(1.0);
    checks.push(Check::numeric("translation_covariance", viol <= 1e-12, viol, 1e-12));

    // midpoint containment on a random Euclidean configuration
    let eps = 0.2 + rng.gen::<f64>();
    let b: [f64; 2] = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
    // the probe needs a distinct start strictly inside B_2eps(b)
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    let rad = eps * rng.gen_range(0.1..1.8);
    let x2 = [b[0] + rad * theta.cos(), b[1] + rad * theta.sin()];
    let report =
        morphology::midpoint_condition_probe(eps, &b, &x2, 30, 20, probe_seed.wrapping_add(2))?;
    checks.push(Check::exact(
        "midpoint_condition",
        report.holds && report.worst_n <= 30,
        format!("eventual index {}", report.worst_n),
        "<= 30".into(),
    ));
    Ok(checks)
}

fn random_string_subset(rng: &mut ChaCha8Rng, words: &[String]) -> BTreeSet<String> {
    words
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .cloned()
        .collect()
}

fn strings_case(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let universe = StringUniverse::new(if rng.gen_bool(0.5) { "ab" } else { "abc" }, 3)?;
    let words = universe.enumerate();
    let n_pairs = rng.gen_range(1..=3);
    let pairs: Vec<(usize, usize)> = (0..n_pairs)
        .map(|_| {
            let i = rng.gen_range(1..=4usize);
            let mut j = rng.gen_range(1..=4usize);
            if j == i {
                j = if i == 4 { 1 } else { i + 1 };
            }
            (i, j)
        })
        .collect();
    let family = SwapFamily::new(pairs)?;
    let mut checks = Vec::with_capacity(5);

    // involution on the whole universe
    let invol = family.pairs().iter().all(|p| {
        words
            .iter()
            .all(|w| swap_apply(*p, &swap_apply(*p, w)) == *w)
    });
    checks.push(Check::exact(
        "involution",
        invol,
        "b(b(w))".into(),
        "w".into(),
    ));

    // union identity
    let xs = random_string_subset(rng, &words);
    let ys = random_string_subset(rng, &words);
    let union: BTreeSet<String> = xs.union(&ys).cloned().collect();
    let lhs: BTreeSet<String> = perturb(&union, &family);
    let rhs: BTreeSet<String> = perturb(&xs, &family)
        .union(&perturb(&ys, &family))
        .cloned()
        .collect();
    checks.push(Check::exact(
        "union_identity",
        lhs == rhs,
        format!("{} strings", lhs.len()),
        format!("{} strings", rhs.len()),
    ));

    // decreasing-intersection equality on a random chain
    let mut chain = vec![random_string_subset(rng, &words)];
    for _ in 0..rng.gen_range(1..=4) {
        let prev = chain.last().unwrap();
        let next: BTreeSet<String> = prev.iter().filter(|_| rng.gen_bool(0.7)).cloned().collect();
        chain.push(next);
    }
    let equal = decreasing_intersection_check(&chain, &family)?;
    checks.push(Check::exact(
        "decreasing_intersection",
        equal,
        "intersection of images".into(),
        "image of intersection".into(),
    ));

    // risk-decrease analogue under string opening
    let mut pool = words.clone();
    pool.shuffle(rng);
    let k = rng.gen_range(1..=4).min(pool.len());
    let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    let dist = StringDistribution::new(
        pool[..k]
            .iter()
            .zip(&weights)
            .map(|(w, wt)| StringAtom {
                w: w.clone(),
                p: rat(*wt, total),
                eta: rat(rng.gen_range(0..=12), 12),
            })
            .collect(),
        &universe,
    )?;
    let a = random_string_subset(rng, &words);
    let opened = perturb_closed(&erode_strings(&a, &family, &universe)?, &family);
    let r_a = string_adversarial_risk(&a, &dist, &family, &universe)?;
    let r_open = string_adversarial_risk(&opened, &dist, &family, &universe)?;
    checks.push(Check::exact(
        "risk_decrease",
        r_open <= r_a,
        r_open.to_string(),
        r_a.to_string(),
    ));

    // frozen two-atom instance
    let u2 = StringUniverse::new("ab", 2)?;
    let b12 = SwapFamily::new(vec![(1, 2)])?;
    let d2 = StringDistribution::new(
        vec![
            StringAtom {
                w: "ab".into(),
                p: rat(1, 2),
                eta: Rational::one(),
            },
            StringAtom {
                w: "ba".into(),
                p: rat(1, 2),
                eta: Rational::zero(),
            },
        ],
        &u2,
    )?;
    let single: BTreeSet<String> = ["ab".to_string()].into_iter().collect();
    let r_single = string_adversarial_risk(&single, &d2, &b12, &u2)?;
    let best = string_oracle_search(&d2, &b12, &u2)?;
    checks.push(Check::exact(
        "frozen_instance",
        r_single.value() == &Rational::one() && best.best_risk.value() == &rat(1, 2),
        format!("risk {} optimum {}", r_single, best.best_risk),
        "risk 1 optimum 1/2".into(),
    ));
    Ok(checks)
}

/// A deliberately false identity used for failure injection: dilation by a
/// positive radius never returns the unit interval unchanged.
fn forced_failure_check() -> Result<Check> {
    let a = IntervalSet::from_interval(rint(0), rint(1))?;
    let ctx = MorphContext::line_padded(Norm::l2(1), Radius::new(rat(1, 2))?, &[&a])?;
    let dilated = a.dilate(&ctx)?;
    Ok(Check::exact(
        "forced_failure",
        dilated.eq_exact(&a),
        set_json(&dilated),
        set_json(&a),
    ))
}

fn run_case(kind: SuiteKind, seed: u64, index: usize, forced: bool) -> Result<Vec<Check>> {
    let mut rng = case_rng(seed, index);
    let mut checks = match kind {
        SuiteKind::Identities => identities_case(&mut rng)?,
        SuiteKind::Grid => grid_case(&mut rng)?,
        SuiteKind::Risk => risk_case(&mut rng)?,
        SuiteKind::Oracle => oracle_case(&mut rng)?,
        SuiteKind::Gauge => gauge_case(&mut rng)?,
        SuiteKind::Strings => strings_case(&mut rng)?,
    };
    if forced {
        checks.push(forced_failure_check()?);
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Batch runner, artifacts, replay
// ---------------------------------------------------------------------------

fn write_cases_csv(path: &Path, rows: &[CaseRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_summary_csv(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs all cases of one suite, writing `cases.csv`, `summary.csv`, and a
/// witness file per failing check into the output directory.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    std::fs::create_dir_all(&config.out_dir)?;
    let mut rows = Vec::new();
    let mut agg: BTreeMap<String, (usize, usize, f64)> = BTreeMap::new();
    let mut failures = 0usize;
    for index in 0..config.cases {
        let forced = config.force_fail == Some(index);
        let checks = run_case(config.kind, config.seed, index, forced)?;
        for check in checks {
            let entry = agg.entry(check.family.to_string()).or_insert((0, 0, 0.0));
            entry.0 += 1;
            if check.violation > entry.2 {
                entry.2 = check.violation;
            }
            let mut witness_path = String::new();
            if !check.pass {
                failures += 1;
                entry.1 += 1;
                let witness = Witness {
                    suite: config.kind,
                    seed: config.seed,
                    case_index: index,
                    family: check.family.to_string(),
                    forced,
                };
                let file = config
                    .out_dir
                    .join(format!("witness_{}_{index}_{}.json", config.kind.name(), check.family));
                std::fs::write(&file, serde_json::to_string_pretty(&witness)? + "\n")?;
                witness_path = file.display().to_string();
            }
            rows.push(CaseRow {
                suite: config.kind.name().to_string(),
                case_id: format!("{index}/{}", check.family),
                status: if check.pass { "pass" } else { "fail" }.to_string(),
                lhs: check.lhs,
                rhs: check.rhs,
                witness_path,
            });
        }
    }
    let summary: Vec<SummaryRow> = agg
        .into_iter()
        .map(|(family, (cases, fails, max_violation))| SummaryRow {
            suite: format!("{}.{family}", config.kind.name()),
            cases,
            failures: fails,
            max_violation,
        })
        .collect();
    let cases_csv = config.out_dir.join(format!("{}_cases.csv", config.kind.name()));
    let summary_csv = config.out_dir.join(format!("{}_summary.csv", config.kind.name()));
    write_cases_csv(&cases_csv, &rows)?;
    write_summary_csv(&summary_csv, &summary)?;
    Ok(SuiteReport {
        rows,
        summary,
        cases: config.cases,
        failures,
        cases_csv,
        summary_csv,
    })
}

/// Re-runs the single check a witness file points at and reports the fresh
/// outcome. A witness produced by a genuine failure fails again.
pub fn replay(witness_path: &Path) -> Result<CaseRow> {
    let witness: Witness = serde_json::from_str(&std::fs::read_to_string(witness_path)?)?;
    let checks = run_case(witness.suite, witness.seed, witness.case_index, witness.forced)?;
    let check = checks
        .into_iter()
        .find(|c| c.family == witness.family)
        .ok_or_else(|| {
            Error::Config(format!("witness names unknown check {:?}", witness.family))
        })?;
    Ok(CaseRow {
        suite: witness.suite.name().to_string(),
        case_id: format!("{}/{}", witness.case_index, witness.family),
        status: if check.pass { "pass" } else { "fail" }.to_string(),
        lhs: check.lhs,
        rhs: check.rhs,
        witness_path: witness_path.display().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(kind: SuiteKind, cases: usize, dir: &Path) -> SuiteConfig {
        SuiteConfig {
            kind,
            cases,
            seed: 7,
            out_dir: dir.to_path_buf(),
            force_fail: None,
        }
    }

    #[test]
    fn identities_suite_passes_and_summarizes_eight_families() {
        let dir = tempfile::tempdir().unwrap();
        let report = run_suite(&config(SuiteKind::Identities, 25, dir.path())).unwrap();
        assert_eq!(report.failures, 0);
        assert_eq!(report.summary.len(), 8);
        assert!(report.cases_csv.exists() && report.summary_csv.exists());
    }

    #[test]
    fn every_suite_passes_at_small_scale() {
        let dir = tempfile::tempdir().unwrap();
        for kind in SuiteKind::ALL {
            let report = run_suite(&config(kind, 5, dir.path())).unwrap();
            assert_eq!(report.failures, 0, "{} suite failed", kind.name());
        }
    }

    #[test]
    fn reruns_are_byte_identical() {
        let d1 = tempfile::tempdir().unwrap();
        let d2 = tempfile::tempdir().unwrap();
        run_suite(&config(SuiteKind::Risk, 10, d1.path())).unwrap();
        run_suite(&config(SuiteKind::Risk, 10, d2.path())).unwrap();
        let a = std::fs::read(d1.path().join("risk_cases.csv")).unwrap();
        let b = std::fs::read(d2.path().join("risk_cases.csv")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn forced_failure_writes_a_replayable_witness() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = config(SuiteKind::Identities, 3, dir.path());
        cfg.force_fail = Some(1);
        let report = run_suite(&cfg).unwrap();
        assert_eq!(report.failures, 1);
        let failing: Vec<&CaseRow> =
            report.rows.iter().filter(|r| r.status == "fail").collect();
        assert_eq!(failing.len(), 1);
        let path = PathBuf::from(&failing[0].witness_path);
        assert!(path.exists());
        let replayed = replay(&path).unwrap();
        assert_eq!(replayed.status, "fail");
    }

    #[test]
    fn unknown_suite_name_is_rejected() {
        assert!("identities".parse::<SuiteKind>().is_ok());
        assert!("nonsense".parse::<SuiteKind>().is_err());
    }
}
