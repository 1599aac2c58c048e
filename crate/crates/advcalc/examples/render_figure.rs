//! Render a 1-D set with its dilation and erosion as SVG bands, and a 2-D
//! lattice dilation as a PPM raster.
//!
//! Run with: cargo run --example render_figure

use advcalc::error::Result;
use advcalc::geometry::{GridSet, IntervalSet, Norm, Radius};
use advcalc::morphology::{MorphContext, MorphOps};
use advcalc::render::{render_grid_layers, render_line_bands, Band, GridLayer};
use advcalc::{rat, rint};

fn main() -> Result<()> {
    let out_dir = std::env::temp_dir().join("advcalc_figures");
    std::fs::create_dir_all(&out_dir)?;

    // A = [0,1] with eps = 1/2: bands for A, A^eps = [-1/2, 3/2], and the
    // degenerate erosion A^-eps = {1/2} drawn as a dot
    let a = IntervalSet::from_interval(rint(0), rint(1))?;
    let ctx = MorphContext::line_padded(Norm::l2(1), Radius::new(rat(1, 2))?, &[&a])?;
    let svg = render_line_bands(&[
        Band::new("A", a.clone()),
        Band::new("A^e", a.dilate(&ctx)?),
        Band::new("A^-e", a.erode(&ctx)?),
    ])?;
    let svg_path = out_dir.join("bands.svg");
    std::fs::write(&svg_path, &svg)?;
    println!("wrote {}", svg_path.display());

    // a single lattice cell dilated by the L1 ball of radius 2: 13 cells
    let point = GridSet::unit(2).with_cells(vec![vec![0, 0]])?;
    let diamond = point.dilate(&Norm::l1(2), &rint(2))?;
    let ppm = render_grid_layers(&[
        GridLayer::new("dilated", diamond),
        GridLayer::new("original", point),
    ])?;
    let ppm_path = out_dir.join("diamond.ppm");
    std::fs::write(&ppm_path, &ppm)?;
    println!("wrote {}", ppm_path.display());
    Ok(())
}
