//! The fringe F(A) = A \ opening(A), the three-pass mollifier, and the
//! lattice counterexample to Euclidean radius composition.
//!
//! Run with: cargo run --example fringe_and_mollifier

use advcalc::error::Result;
use advcalc::geometry::{GridSet, IntervalSet, Norm, Radius};
use advcalc::io::interval_set_to_json;
use advcalc::morphology::{
    fringe, is_pseudo_certifiably_robust, mollify, structuring_composition_witness,
    MorphContext, MorphOps,
};
use advcalc::{rat, rint};

fn main() -> Result<()> {
    // the sliver [2, 11/5] is too thin to survive opening, so it is fringe
    let a = IntervalSet::canonicalize(vec![(rint(0), rint(1)), (rint(2), rat(11, 5))])?;
    let ctx = MorphContext::line_padded(Norm::l2(1), Radius::new(rat(3, 20))?, &[&a])?;
    println!("A          {}", interval_set_to_json(&a));
    println!("F(A)       {}", interval_set_to_json(&fringe(&a, &ctx)?));

    // the mollifier erode-dilate-dilate-erode strips thin parts of both A and
    // its complement, leaving a set that is robust on both sides
    let smoothed = mollify(&a, &ctx)?;
    println!("mollify(A) {}", interval_set_to_json(&smoothed));
    let verdict = is_pseudo_certifiably_robust(&smoothed, &ctx)?;
    println!("mollified set robust on both sides: {}", verdict.robust);
    let verdict = is_pseudo_certifiably_robust(&a, &ctx)?;
    println!(
        "original robust: {} (witness {:?})",
        verdict.robust, verdict.witness
    );

    // Euclidean lattice balls do not compose: B_1 ⊕ B_2 misses (±2, ±2) ∈ B_3
    let witness = structuring_composition_witness(&Norm::l2(2), &rint(1), &rint(2), &rint(1))?;
    println!("L2 lattice composition gap: {witness:?}");

    // polyhedral norms at integer radii do compose
    let diamond = GridSet::unit(2).with_cells(vec![vec![0, 0]])?;
    let two_step = diamond
        .dilate(&Norm::l1(2), &rint(1))?
        .dilate(&Norm::l1(2), &rint(2))?;
    let one_step = diamond.dilate(&Norm::l1(2), &rint(3))?;
    assert!(two_step.set_eq(&one_step));
    println!("L1 lattice composition exact: {} cells", one_step.len());
    Ok(())
}
