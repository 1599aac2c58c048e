//! Dilation, erosion, opening, and closing on exact 1-D interval sets.
//!
//! Run with: cargo run --example morphology_basics

use advcalc::error::Result;
use advcalc::geometry::{IntervalSet, Norm, Radius};
use advcalc::io::interval_set_to_json;
use advcalc::morphology::{closing, opening, MorphContext, MorphOps};
use advcalc::{rat, rint};

fn show(label: &str, set: &IntervalSet) {
    println!("{label:24} {}", interval_set_to_json(set));
}

fn main() -> Result<()> {
    // A = [0,1] ∪ [2, 11/5]: one solid interval plus a sliver
    let a = IntervalSet::canonicalize(vec![(rint(0), rint(1)), (rint(2), rat(11, 5))])?;
    let eps = Radius::new(rat(3, 20))?;
    let ctx = MorphContext::line_padded(Norm::l2(1), eps, &[&a])?;
    show("A", &a);

    // dilation grows every component by eps on both sides
    show("A^eps", &a.dilate(&ctx)?);

    // erosion shrinks; the sliver (width 1/5 < 2 * 3/20) disappears
    show("A^-eps", &a.erode(&ctx)?);

    // opening = erode then dilate: removes anything thinner than 2 eps
    show("opening", &opening(&a, &ctx)?);

    // closing = dilate then erode: fills gaps narrower than 2 eps
    let gappy = IntervalSet::canonicalize(vec![(rint(0), rat(9, 10)), (rat(11, 10), rint(2))])?;
    let ctx2 = MorphContext::line_padded(Norm::l2(1), Radius::new(rat(3, 20))?, &[&gappy])?;
    show("B", &gappy);
    show("closing(B)", &closing(&gappy, &ctx2)?);

    // radii add exactly: (A^e1)^e2 = A^(e1+e2)
    let c1 = ctx.with_eps(Radius::new(rat(1, 10))?);
    let c2 = ctx.with_eps(Radius::new(rat(1, 20))?);
    let c12 = ctx.with_eps(Radius::new(rat(3, 20))?);
    let two_step = a.dilate(&c1)?.dilate(&c2)?;
    assert!(two_step.eq_exact(&a.dilate(&c12)?));
    println!("radius additivity      (A^(1/10))^(1/20) = A^(3/20)");
    Ok(())
}
