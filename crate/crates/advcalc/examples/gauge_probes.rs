//! The gauge lambda_C(x, v) = sup { t : x + t v in C } on balls and
//! half-space polytopes, with its concavity and approximation probes.
//!
//! Run with: cargo run --example gauge_probes

use advcalc::error::Result;
use advcalc::gauge::{
    approximate_by_polytope, concavity_probe, lambda, ConvexBody, HalfspacePolytope,
};

fn main() -> Result<()> {
    let disc = ConvexBody::unit_disc();

    // from the center, the gauge along a unit direction is the radius
    println!("lambda(disc, 0, e1)      = {}", lambda(&disc, &[0.0, 0.0], &[1.0, 0.0])?);
    // from an interior point it is the remaining distance to the boundary
    println!("lambda(disc, 0.6e1, e1)  = {}", lambda(&disc, &[0.6, 0.0], &[1.0, 0.0])?);

    // on a square of half-width 1, the diagonal exit is at t = 1
    let square = ConvexBody::Polytope(HalfspacePolytope::square(1.0)?);
    println!(
        "lambda(square, 0, (1,1)) = {}",
        lambda(&square, &[0.0, 0.0], &[1.0, 1.0])?
    );

    // lambda(., v) restricted to the line x + t v is concave; the probe
    // samples midpoints and reports the largest violation
    let report = concavity_probe(&disc, 10_000, 42)?;
    println!(
        "concavity on the disc: holds {} (max violation {:.2e})",
        report.holds, report.max_violation
    );

    // circumscribe the disc by a regular polygon until the sampled gauge gap
    // falls below delta/2; the gap is one-sided (the polygon contains the disc)
    let poly = approximate_by_polytope(&[0.0, 0.0], 1.0, 1e-3, 42)?;
    println!("polytope approximation: {} faces", poly.constraints.len());
    Ok(())
}
