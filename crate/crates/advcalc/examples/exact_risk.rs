//! Exact adversarial risk over a finite rational distribution, the Bayes
//! classifier, and the risk-decrease lemmas.
//!
//! Run with: cargo run --example exact_risk

use advcalc::error::Result;
use advcalc::geometry::{Interval, IntervalSet, Norm, Radius};
use advcalc::io::interval_set_to_json;
use advcalc::morphology::{mollify, opening, MorphContext};
use advcalc::risk::{adversarial_risk, bayes_classifier_line, LabeledDistribution, Mode};
use advcalc::{rat, rint};

fn main() -> Result<()> {
    // three atoms at 0, 1, 2 with masses 1/3 and class-1 probabilities eta
    let dist = LabeledDistribution::on_line(vec![
        (rint(0), rat(1, 3), rat(3, 4)),
        (rint(1), rat(1, 3), rat(1, 4)),
        (rint(2), rat(1, 3), rat(9, 10)),
    ])?;

    // the Bayes classifier keeps exactly the atoms with eta > 1/2
    let bayes = bayes_classifier_line(&dist)?;
    println!("Bayes set  {}", interval_set_to_json(&bayes));
    println!("Bayes risk {}", dist.bayes_risk());

    let domain = Interval::new(rat(-4, 1), rat(6, 1))?;
    let ctx = |eps| -> Result<MorphContext> {
        MorphContext::line(Norm::l2(1), Radius::new(eps)?, domain.clone())
    };

    // with a positive budget, atoms within eps of the decision boundary pay
    // for both classes, so the adversarial risk exceeds the standard risk
    let a = IntervalSet::canonicalize(vec![(rat(-1, 2), rat(1, 2)), (rat(3, 2), rat(5, 2))])?;
    for eps in [rint(0), rat(1, 4), rat(1, 2), rint(1)] {
        let c = ctx(eps.clone())?;
        let r = adversarial_risk(&a, &dist, &c, Mode::Morphology)?;
        println!("R^({eps})(A) = {r}");
    }

    // opening and mollifying never increase the adversarial risk
    let c = ctx(rat(1, 2))?;
    let r_a = adversarial_risk(&a, &dist, &c, Mode::Morphology)?;
    let r_open = adversarial_risk(&opening(&a, &c)?, &dist, &c, Mode::Morphology)?;
    let r_moll = adversarial_risk(&mollify(&a, &c)?, &dist, &c, Mode::Morphology)?;
    println!("R(A) = {r_a}, R(opening) = {r_open}, R(mollify) = {r_moll}");
    assert!(r_open <= r_a && r_moll <= r_a);

    // the distance-based evaluation agrees with the morphological one
    let via_distance = adversarial_risk(&a, &dist, &c, Mode::Distance)?;
    assert_eq!(r_a, via_distance);
    println!("distance mode agrees exactly");
    Ok(())
}
