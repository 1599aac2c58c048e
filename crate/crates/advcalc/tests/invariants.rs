//! Property tests for the structural invariants: canonical interval sets,
//! extensivity and monotonicity of the ball operations, risk bounds, and
//! swap involutions.

use advcalc::geometry::{GridSet, IntervalSet, Norm, Radius};
use advcalc::morphology::{mollify, opening, MorphContext, MorphOps};
use advcalc::risk::{adversarial_risk, LabeledDistribution, Mode};
use advcalc::strings::{perturb, swap_apply, StringUniverse, SwapFamily};
use advcalc::{rat, rint, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn interval_set() -> impl Strategy<Value = IntervalSet> {
    proptest::collection::vec((rational(), rational()), 0..6).prop_map(|pairs| {
        IntervalSet::canonicalize(
            pairs
                .into_iter()
                .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
                .collect(),
        )
        .unwrap()
    })
}

fn eps() -> impl Strategy<Value = Rational> {
    (1i64..=4, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_sorted_and_disjoint(a in interval_set()) {
        let ivs = a.intervals();
        for w in ivs.windows(2) {
            prop_assert!(w[0].hi < w[1].lo, "components must be separated");
        }
        for iv in ivs {
            prop_assert!(iv.lo <= iv.hi);
        }
    }

    #[test]
    fn dilation_extensive_erosion_anti(a in interval_set(), e in eps()) {
        let ctx = MorphContext::line_padded(Norm::l2(1), Radius::new(e).unwrap(), &[&a]).unwrap();
        let dil = a.dilate(&ctx).unwrap();
        let ero = a.erode(&ctx).unwrap();
        prop_assert!(a.subset(&dil).unwrap());
        prop_assert!(ero.subset(&a).unwrap());
        // opening sits between erosion and the set
        let open = opening(&a, &ctx).unwrap();
        prop_assert!(ero.subset(&open).unwrap());
        prop_assert!(open.subset(&a).unwrap());
    }

    #[test]
    fn dilation_monotone_in_radius(a in interval_set(), e1 in eps(), e2 in eps()) {
        let (small, large) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let base = MorphContext::line_padded(
            Norm::l2(1),
            Radius::new(large.clone()).unwrap(),
            &[&a],
        ).unwrap();
        let c_small = base.with_eps(Radius::new(small).unwrap());
        prop_assert!(a.dilate(&c_small).unwrap().subset(&a.dilate(&base).unwrap()).unwrap());
        prop_assert!(a.erode(&base).unwrap().subset(&a.erode(&c_small).unwrap()).unwrap());
    }

    #[test]
    fn mollified_set_never_riskier(
        a in interval_set(),
        e in eps(),
        etas in proptest::collection::vec(0i64..=12, 1..6),
    ) {
        let n = etas.len() as i64;
        let dist = LabeledDistribution::on_line(
            etas.iter().enumerate()
                .map(|(i, eta)| (rint(i as i64 * 2 - 5), rat(1, n), rat(*eta, 12)))
                .collect(),
        ).unwrap();
        let domain = advcalc::geometry::Interval::new(rat(-40, 1), rat(40, 1)).unwrap();
        let ctx = MorphContext::line(Norm::l2(1), Radius::new(e).unwrap(), domain).unwrap();
        let r_a = adversarial_risk(&a, &dist, &ctx, Mode::Morphology).unwrap();
        let r_m = adversarial_risk(&mollify(&a, &ctx).unwrap(), &dist, &ctx, Mode::Morphology).unwrap();
        prop_assert!(r_m <= r_a);
        // risks are probabilities
        prop_assert!(r_a.value() >= &Rational::zero() && r_a.value() <= &Rational::one());
    }

    #[test]
    fn grid_complement_is_involutive(cells in proptest::collection::btree_set((0i64..8, 0i64..8), 0..20)) {
        let set = GridSet::unit(2)
            .with_cells(cells.into_iter().map(|(x, y)| vec![x, y]))
            .unwrap();
        prop_assert!(set.inverse().inverse().set_eq(&set));
        // dilation of the complement contains the complement
        let dil = set.inverse().dilate(&Norm::l1(2), &rint(1)).unwrap();
        prop_assert!(set.inverse().is_subset(&dil).unwrap());
    }

    #[test]
    fn swaps_are_involutions_and_distribute(
        words in proptest::collection::btree_set("[ab]{0,3}", 0..8),
        i in 1usize..=4,
        j in 1usize..=4,
    ) {
        prop_assume!(i != j);
        let universe = StringUniverse::new("ab", 3).unwrap();
        let a: BTreeSet<String> = words.into_iter().filter(|w| universe.contains(w)).collect();
        for w in &a {
            prop_assert_eq!(swap_apply((i, j), &swap_apply((i, j), w)), w.clone());
        }
        let family = SwapFamily::new(vec![(i, j)]).unwrap();
        // the image of a union is the union of the images
        let (left, right): (BTreeSet<String>, BTreeSet<String>) =
            a.iter().cloned().partition(|w| w.len() % 2 == 0);
        let union_img = perturb(&a, &family);
        let split_img: BTreeSet<String> = perturb(&left, &family)
            .union(&perturb(&right, &family)).cloned().collect();
        prop_assert_eq!(union_img, split_img);
    }
}
