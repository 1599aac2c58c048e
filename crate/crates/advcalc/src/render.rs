//! Static renderings: 1-D sets as stacked number-line bands (SVG) and 2-D
//! grid sets as colored rasters (PPM, P3). Output is a pure function of the
//! input, so identical inputs give byte-identical images.

use crate::error::{Error, Result};
use crate::geometry::{GridSet, IntervalSet};
use crate::Rational;
use num_traits::ToPrimitive;
use std::fmt::Write as _;

/// One labeled 1-D layer, drawn as a horizontal band.
#[derive(Debug, Clone)]
pub struct Band {
    pub label: String,
    pub set: IntervalSet,
}

impl Band {
    pub fn new(label: &str, set: IntervalSet) -> Self {
        Band {
            label: label.to_string(),
            set,
        }
    }
}

const SVG_WIDTH: f64 = 800.0;
const BAND_HEIGHT: f64 = 44.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Renders stacked bands on a shared axis. Degenerate intervals appear as
/// filled dots so the spec's `{1/2}` component stays visible.
pub fn render_line_bands(bands: &[Band]) -> Result<String> {
    let mut lo: Option<f64> = None;
    let mut hi: Option<f64> = None;
    for b in bands {
        if let Some(iv) = b.set.bounding_interval() {
            let (a, z) = (to_f64(&iv.lo), to_f64(&iv.hi));
            lo = Some(lo.map_or(a, |v| v.min(a)));
            hi = Some(hi.map_or(z, |v| v.max(z)));
        }
    }
    // an all-empty figure still gets a frame
    let (lo, hi) = match (lo, hi) {
        (Some(a), Some(z)) if z > a => (a, z),
        (Some(a), Some(_)) => (a - 1.0, a + 1.0),
        _ => (-1.0, 1.0),
    };
    let pad = 0.05 * (hi - lo);
    let (lo, hi) = (lo - pad, hi + pad);
    let scale = (SVG_WIDTH - 2.0 * MARGIN) / (hi - lo);
    let x_of = |v: f64| MARGIN + (v - lo) * scale;

    let height = BAND_HEIGHT * bands.len().max(1) as f64 + 2.0 * MARGIN;
    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" height=\"{height}\" viewBox=\"0 0 {SVG_WIDTH} {height}\">"
    )
    .unwrap();
    writeln!(svg, "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>").unwrap();
    // shared axis along the bottom margin
    let axis_y = height - MARGIN / 2.0;
    writeln!(
        svg,
        "  <line x1=\"{:.2}\" y1=\"{axis_y:.2}\" x2=\"{:.2}\" y2=\"{axis_y:.2}\" stroke=\"black\"/>",
        x_of(lo),
        x_of(hi)
    )
    .unwrap();
    for (i, band) in bands.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = MARGIN + i as f64 * BAND_HEIGHT;
        writeln!(
            svg,
            "  <text x=\"8\" y=\"{:.2}\" font-size=\"13\" font-family=\"monospace\">{}</text>",
            y + BAND_HEIGHT * 0.55,
            xml_escape(&band.label)
        )
        .unwrap();
        for iv in band.set.intervals() {
            let (a, z) = (to_f64(&iv.lo), to_f64(&iv.hi));
            if iv.is_degenerate() {
                writeln!(
                    svg,
                    "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"5\" fill=\"{color}\"/>",
                    x_of(a),
                    y + BAND_HEIGHT * 0.45
                )
                .unwrap();
            } else {
                writeln!(
                    svg,
                    "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{color}\" fill-opacity=\"0.8\"/>",
                    x_of(a),
                    y + BAND_HEIGHT * 0.2,
                    (x_of(z) - x_of(a)).max(1.0),
                    BAND_HEIGHT * 0.5
                )
                .unwrap();
            }
        }
    }
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}

/// One labeled 2-D layer; earlier layers paint first, later ones on top.
#[derive(Debug, Clone)]
pub struct GridLayer {
    pub label: String,
    pub set: GridSet,
}

impl GridLayer {
    pub fn new(label: &str, set: GridSet) -> Self {
        GridLayer {
            label: label.to_string(),
            set,
        }
    }
}

const LAYER_RGB: [(u8, u8, u8); 6] = [
    (31, 119, 180),
    (255, 127, 14),
    (44, 160, 44),
    (214, 39, 40),
    (148, 103, 189),
    (140, 86, 75),
];

/// Renders finite 2-D grid layers as a PPM (P3) raster over their joint
/// bounding box plus a one-cell border. Each pixel takes the color of the
/// last layer containing it; the background is white.
pub fn render_grid_layers(layers: &[GridLayer]) -> Result<String> {
    if layers.is_empty() {
        return Err(Error::Render("no layers".into()));
    }
    let mut lo = [i64::MAX; 2];
    let mut hi = [i64::MIN; 2];
    for layer in layers {
        if layer.set.is_inverted() {
            return Err(Error::Render(
                "raster output needs finite sets; materialize complements first".into(),
            ));
        }
        let dim = layer.set.dim();
        if dim != 2 {
            return Err(Error::Render(format!(
                "raster output needs 2-D grids, got {dim}-D"
            )));
        }
        if let Some((blo, bhi)) = layer.set.bounding_box() {
            for d in 0..2 {
                lo[d] = lo[d].min(blo[d]);
                hi[d] = hi[d].max(bhi[d]);
            }
        }
    }
    if lo[0] > hi[0] {
        // every layer empty: a single white pixel
        lo = [0, 0];
        hi = [0, 0];
    }
    let (lo, hi) = (
        [lo[0] - 1, lo[1] - 1],
        [hi[0] + 1, hi[1] + 1],
    );
    let width = (hi[0] - lo[0] + 1) as usize;
    let height = (hi[1] - lo[1] + 1) as usize;
    let mut out = format!("P3\n{width} {height}\n255\n");
    for r in 0..height {
        let y = hi[1] - r as i64;
        for c in 0..width {
            let x = lo[0] + c as i64;
            let mut rgb = (255u8, 255u8, 255u8);
            for (i, layer) in layers.iter().enumerate() {
                if layer.set.contains_index(&[x, y]) {
                    rgb = LAYER_RGB[i % LAYER_RGB.len()];
                }
            }
            if c > 0 {
                out.push(' ');
            }
            write!(out, "{} {} {}", rgb.0, rgb.1, rgb.2).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Norm, Radius};
    use crate::morphology::{MorphContext, MorphOps};
    use crate::{rat, rint};

    #[test]
    fn three_band_figure_from_the_unit_interval() {
        let a = IntervalSet::from_interval(rint(0), rint(1)).unwrap();
        let ctx =
            MorphContext::line_padded(Norm::l2(1), Radius::new(rat(1, 2)).unwrap(), &[&a]).unwrap();
        let dilated = a.dilate(&ctx).unwrap();
        let eroded = a.erode(&ctx).unwrap();
        assert_eq!(eroded, IntervalSet::point(rat(1, 2)));
        let svg = render_line_bands(&[
            Band::new("A", a),
            Band::new("A^e", dilated),
            Band::new("A^-e", eroded),
        ])
        .unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<rect x=").count(), 2); // two solid bands
        assert_eq!(svg.matches("<circle").count(), 1); // the degenerate {1/2}
    }

    #[test]
    fn empty_figure_renders() {
        let svg = render_line_bands(&[Band::new("empty", IntervalSet::empty())]).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<rect x=").count(), 0);
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = IntervalSet::canonicalize(vec![(rint(0), rint(1)), (rint(2), rint(3))]).unwrap();
        let bands = [Band::new("A", a)];
        assert_eq!(
            render_line_bands(&bands).unwrap(),
            render_line_bands(&bands).unwrap()
        );
    }

    #[test]
    fn diamond_raster_has_13_colored_cells() {
        let point = GridSet::unit(2).with_cells(vec![vec![0, 0]]).unwrap();
        let diamond = point.dilate(&Norm::l1(2), &rint(2)).unwrap();
        assert_eq!(diamond.len(), 13);
        let ppm = render_grid_layers(&[GridLayer::new("diamond", diamond)]).unwrap();
        assert!(ppm.starts_with("P3\n7 7\n255\n"));
        let colored = ppm
            .split_whitespace()
            .skip(4) // header tokens
            .collect::<Vec<_>>()
            .chunks(3)
            .filter(|px| px[0] != "255")
            .count();
        assert_eq!(colored, 13);
    }

    #[test]
    fn dimension_above_two_is_an_error() {
        let cube = GridSet::unit(3).with_cells(vec![vec![0, 0, 0]]).unwrap();
        assert!(matches!(
            render_grid_layers(&[GridLayer::new("cube", cube)]),
            Err(Error::Render(_))
        ));
    }
}
