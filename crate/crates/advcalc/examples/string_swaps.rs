//! The discrete perturbation model: position swaps on short strings, the
//! perturbed set, exact adversarial risk, and the exhaustive minimizer.
//!
//! Run with: cargo run --example string_swaps

use advcalc::error::Result;
use advcalc::strings::{
    perturb, string_adversarial_risk, string_oracle_search, swap_apply, StringAtom,
    StringDistribution, StringUniverse, SwapFamily,
};
use advcalc::{rat, rint, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

fn main() -> Result<()> {
    let universe = StringUniverse::new("ab", 2)?;
    let family = SwapFamily::new(vec![(1, 2)])?;

    // b^{1,2} swaps the first two letters and fixes shorter strings
    println!("b12(\"ab\") = {:?}", swap_apply((1, 2), "ab"));
    println!("b12(\"a\")  = {:?}", swap_apply((1, 2), "a"));

    // the perturbed set is the image under every swap in the family
    let a: BTreeSet<String> = ["ab".to_string(), "a".to_string()].into_iter().collect();
    println!("perturb({a:?}) = {:?}", perturb(&a, &family));

    // two atoms the adversary can always flip into each other: whichever
    // side A takes, one atom is misclassified after perturbation
    let dist = StringDistribution::new(
        vec![
            StringAtom { w: "ab".into(), p: rat(1, 2), eta: Rational::one() },
            StringAtom { w: "ba".into(), p: rat(1, 2), eta: Rational::zero() },
        ],
        &universe,
    )?;
    let single: BTreeSet<String> = ["ab".to_string()].into_iter().collect();
    let risk = string_adversarial_risk(&single, &dist, &family, &universe)?;
    println!("R^eps({{\"ab\"}}) = {risk}");
    assert_eq!(risk.value(), &rint(1));

    // the exhaustive oracle over the orbit closure finds the optimum 1/2
    let best = string_oracle_search(&dist, &family, &universe)?;
    println!(
        "optimum {} over {} candidate strings, set {:?}",
        best.best_risk,
        best.cells.len(),
        best.best_set
    );
    assert_eq!(best.best_risk.value(), &rat(1, 2));
    Ok(())
}
