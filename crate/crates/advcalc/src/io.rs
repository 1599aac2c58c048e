//! File formats: rational-string JSON for interval sets, distributions, and
//! search results; PBM (P1) bitmaps with a JSON sidecar for grid sets; norm
//! descriptions.
//!
//! Every rational is written as an exact decimal-free string (`"3/2"`, `"-1"`)
//! so round trips lose nothing.

use crate::error::{Error, Result};
use crate::geometry::{GridSet, Interval, IntervalSet, Norm};
use crate::optimize::SearchResult;
use crate::risk::{Atom, LabeledDistribution};
use crate::strings::{StringAtom, StringDistribution, StringUniverse};
use crate::Rational;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::str::FromStr;

/// Parses `"3/2"`, `"-1"`, `"0"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// The inverse of [`parse_rational`]: `3/2`, `-1`, `0`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

// ---------------------------------------------------------------------------
// Interval sets
// ---------------------------------------------------------------------------

/// JSON value: list of two-element arrays of rational strings.
pub fn interval_set_to_json(set: &IntervalSet) -> serde_json::Value {
    serde_json::Value::Array(
        set.intervals()
            .iter()
            .map(|iv| {
                serde_json::Value::Array(vec![
                    serde_json::Value::String(format_rational(&iv.lo)),
                    serde_json::Value::String(format_rational(&iv.hi)),
                ])
            })
            .collect(),
    )
}

pub fn interval_set_from_json(value: &serde_json::Value) -> Result<IntervalSet> {
    let pairs: Vec<[String; 2]> = serde_json::from_value(value.clone())?;
    let mut raw = Vec::with_capacity(pairs.len());
    for [lo, hi] in &pairs {
        raw.push((parse_rational(lo)?, parse_rational(hi)?));
    }
    IntervalSet::canonicalize(raw)
}

pub fn write_interval_set(path: &Path, set: &IntervalSet) -> Result<()> {
    let text = serde_json::to_string_pretty(&interval_set_to_json(set))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub fn read_interval_set(path: &Path) -> Result<IntervalSet> {
    let text = std::fs::read_to_string(path)?;
    interval_set_from_json(&serde_json::from_str(&text)?)
}

// ---------------------------------------------------------------------------
// Grid sets: P1 bitmap plus JSON sidecar {origin, cell, extent}
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct GridSidecar {
    origin: Vec<String>,
    cell: String,
    extent: Extent,
}

#[derive(Debug, Serialize, Deserialize)]
struct Extent {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

/// The sidecar path for a bitmap: `foo.pbm` -> `foo.pbm.json`.
pub fn sidecar_path(pbm: &Path) -> std::path::PathBuf {
    let mut s = pbm.as_os_str().to_owned();
    s.push(".json");
    std::path::PathBuf::from(s)
}

/// Writes a finite 1-D or 2-D grid set as a P1 bitmap over `extent` (inclusive
/// index bounds), with the sidecar next to it. Rows run top-down from the
/// largest second index; columns left-right from the smallest first index.
pub fn write_grid_pbm(path: &Path, set: &GridSet, lo: &[i64], hi: &[i64]) -> Result<()> {
    if set.is_inverted() {
        return Err(Error::Render(
            "pbm output needs a finite set; materialize the complement first".into(),
        ));
    }
    let dim = set.dim();
    if dim == 0 || dim > 2 {
        return Err(Error::Render(format!("pbm output needs 1-D or 2-D, got {dim}-D")));
    }
    if lo.len() != dim || hi.len() != dim || lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Err(Error::Render("bad extent".into()));
    }
    if let Some((blo, bhi)) = set.bounding_box() {
        for d in 0..dim {
            if blo[d] < lo[d] || bhi[d] > hi[d] {
                return Err(Error::DomainOverflow("cells outside extent".into()));
            }
        }
    }
    let width = (hi[0] - lo[0] + 1) as usize;
    let height = if dim == 2 { (hi[1] - lo[1] + 1) as usize } else { 1 };
    let mut out = format!("P1\n{width} {height}\n");
    for r in 0..height {
        let mut row = String::with_capacity(2 * width);
        for c in 0..width {
            let idx = if dim == 2 {
                vec![lo[0] + c as i64, hi[1] - r as i64]
            } else {
                vec![lo[0] + c as i64]
            };
            row.push(if set.contains_index(&idx) { '1' } else { '0' });
            if c + 1 < width {
                row.push(' ');
            }
        }
        out.push_str(&row);
        out.push('\n');
    }
    std::fs::write(path, out)?;
    let sidecar = GridSidecar {
        origin: set.origin().iter().map(format_rational).collect(),
        cell: format_rational(set.cell_size()),
        extent: Extent {
            lo: lo.to_vec(),
            hi: hi.to_vec(),
        },
    };
    std::fs::write(
        sidecar_path(path),
        serde_json::to_string_pretty(&sidecar)? + "\n",
    )?;
    Ok(())
}

/// Reads a P1 bitmap and its sidecar back into a finite grid set.
pub fn read_grid_pbm(path: &Path) -> Result<GridSet> {
    let sidecar: GridSidecar =
        serde_json::from_str(&std::fs::read_to_string(sidecar_path(path))?)?;
    let origin = sidecar
        .origin
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>>>()?;
    let cell = parse_rational(&sidecar.cell)?;
    let (lo, hi) = (sidecar.extent.lo, sidecar.extent.hi);
    let dim = lo.len();
    if dim == 0 || dim > 2 || hi.len() != dim {
        return Err(Error::Parse("sidecar extent must be 1-D or 2-D".into()));
    }

    let text = std::fs::read_to_string(path)?;
    let mut tokens = text.split_whitespace();
    if tokens.next() != Some("P1") {
        return Err(Error::Parse("not a P1 bitmap".into()));
    }
    let width: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad pbm width".into()))?;
    let height: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad pbm height".into()))?;
    if width != (hi[0] - lo[0] + 1) as usize
        || height != if dim == 2 { (hi[1] - lo[1] + 1) as usize } else { 1 }
    {
        return Err(Error::Parse("pbm size disagrees with sidecar extent".into()));
    }
    let mut set = GridSet::new(origin, cell)?;
    for r in 0..height {
        for c in 0..width {
            let bit = tokens
                .next()
                .ok_or_else(|| Error::Parse("pbm truncated".into()))?;
            let on = match bit {
                "1" => true,
                "0" => false,
                other => return Err(Error::Parse(format!("bad pbm bit {other:?}"))),
            };
            if on {
                let idx = if dim == 2 {
                    vec![lo[0] + c as i64, hi[1] - r as i64]
                } else {
                    vec![lo[0] + c as i64]
                };
                set.insert(idx)?;
            }
        }
    }
    Ok(set)
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

/// Parses the short CLI norm tag: `l1`, `l2`, `linf`.
pub fn parse_norm_tag(tag: &str, dimension: usize) -> Result<Norm> {
    match tag.to_ascii_lowercase().as_str() {
        "l1" => Ok(Norm::l1(dimension)),
        "l2" => Ok(Norm::l2(dimension)),
        "linf" => Ok(Norm::linf(dimension)),
        other => Err(Error::Parse(format!(
            "unknown norm tag {other:?} (expected l1, l2, linf)"
        ))),
    }
}

pub fn write_norm(path: &Path, norm: &Norm) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(norm)? + "\n")?;
    Ok(())
}

pub fn read_norm(path: &Path) -> Result<Norm> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct AtomDto {
    x: Vec<String>,
    p: String,
    eta: String,
}

/// JSON: `[{"x": ["0"], "p": "1/2", "eta": "3/4"}, ...]`.
pub fn write_distribution(path: &Path, dist: &LabeledDistribution) -> Result<()> {
    let dto: Vec<AtomDto> = dist
        .atoms()
        .iter()
        .map(|a| AtomDto {
            x: a.x.iter().map(format_rational).collect(),
            p: format_rational(&a.p),
            eta: format_rational(&a.eta),
        })
        .collect();
    std::fs::write(path, serde_json::to_string_pretty(&dto)? + "\n")?;
    Ok(())
}

pub fn read_distribution(path: &Path) -> Result<LabeledDistribution> {
    let dto: Vec<AtomDto> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let mut atoms = Vec::with_capacity(dto.len());
    for a in &dto {
        atoms.push(Atom {
            x: a.x.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?,
            p: parse_rational(&a.p)?,
            eta: parse_rational(&a.eta)?,
        });
    }
    LabeledDistribution::new(atoms)
}

#[derive(Debug, Serialize, Deserialize)]
struct StringAtomDto {
    w: String,
    p: String,
    eta: String,
}

/// JSON: `[{"w": "ab", "p": "1/2", "eta": "1"}, ...]`.
pub fn write_string_distribution(path: &Path, dist: &StringDistribution) -> Result<()> {
    let dto: Vec<StringAtomDto> = dist
        .atoms()
        .iter()
        .map(|a| StringAtomDto {
            w: a.w.clone(),
            p: format_rational(&a.p),
            eta: format_rational(&a.eta),
        })
        .collect();
    std::fs::write(path, serde_json::to_string_pretty(&dto)? + "\n")?;
    Ok(())
}

pub fn read_string_distribution(
    path: &Path,
    universe: &StringUniverse,
) -> Result<StringDistribution> {
    let dto: Vec<StringAtomDto> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let atoms = dto
        .iter()
        .map(|a| {
            Ok(StringAtom {
                w: a.w.clone(),
                p: parse_rational(&a.p)?,
                eta: parse_rational(&a.eta)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    StringDistribution::new(atoms, universe)
}

// ---------------------------------------------------------------------------
// Search results
// ---------------------------------------------------------------------------

/// A search outcome ready for JSON output; `best_set` is format-specific.
#[derive(Debug, Serialize, Deserialize)]
pub struct SearchResultDto {
    pub best_set: serde_json::Value,
    pub best_mask: u32,
    pub best_risk: String,
    pub optimal: bool,
    /// `(mask, risk)` after each improvement or flip.
    pub trace: Vec<(usize, String)>,
}

fn result_dto(
    best_set: serde_json::Value,
    result_mask: u32,
    best_risk: &crate::risk::RiskValue,
    optimal: bool,
    trace: &[(usize, crate::risk::RiskValue)],
) -> SearchResultDto {
    SearchResultDto {
        best_set,
        best_mask: result_mask,
        best_risk: best_risk.value().to_string(),
        optimal,
        trace: trace
            .iter()
            .map(|(m, r)| (*m, r.value().to_string()))
            .collect(),
    }
}

pub fn line_result_to_dto(result: &SearchResult<IntervalSet>) -> SearchResultDto {
    result_dto(
        interval_set_to_json(&result.best_set),
        result.best_mask,
        &result.best_risk,
        result.optimal,
        &result.trace,
    )
}

pub fn grid_result_to_dto(result: &SearchResult<GridSet>) -> SearchResultDto {
    let cells: Vec<Vec<i64>> = result.best_set.cells().iter().cloned().collect();
    result_dto(
        serde_json::json!({
            "origin": result.best_set.origin().iter().map(format_rational).collect::<Vec<_>>(),
            "cell": format_rational(result.best_set.cell_size()),
            "cells": cells,
        }),
        result.best_mask,
        &result.best_risk,
        result.optimal,
        &result.trace,
    )
}

pub fn write_search_result(path: &Path, dto: &SearchResultDto) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(dto)? + "\n")?;
    Ok(())
}

/// Parses an interval from `"lo,hi"`; used by CLI domain flags.
pub fn parse_interval(s: &str) -> Result<Interval> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected \"lo,hi\", got {s:?}")));
    }
    Interval::new(parse_rational(parts[0])?, parse_rational(parts[1])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    #[test]
    fn rational_round_trip() {
        for s in ["0", "1", "-1", "3/2", "-7/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn interval_set_round_trip() {
        let set = IntervalSet::canonicalize(vec![
            (rint(0), rint(1)),
            (rat(3, 2), rint(2)),
        ])
        .unwrap();
        let json = interval_set_to_json(&set);
        assert_eq!(json.to_string(), r#"[["0","1"],["3/2","2"]]"#);
        assert_eq!(interval_set_from_json(&json).unwrap(), set);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("set.json");
        write_interval_set(&path, &set).unwrap();
        assert_eq!(read_interval_set(&path).unwrap(), set);
    }

    #[test]
    fn grid_pbm_round_trip() {
        let set = GridSet::unit(2)
            .with_cells(vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![-1, -1]])
            .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("set.pbm");
        write_grid_pbm(&path, &set, &[-2, -2], &[2, 2]).unwrap();
        let back = read_grid_pbm(&path).unwrap();
        assert!(back.set_eq(&set));
        // extent too small is rejected
        assert!(write_grid_pbm(&path, &set, &[0, 0], &[2, 2]).is_err());
    }

    #[test]
    fn distribution_round_trip() {
        let dist = LabeledDistribution::on_line(vec![
            (rint(0), rat(1, 3), rat(3, 4)),
            (rint(1), rat(2, 3), rat(1, 4)),
        ])
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dist.json");
        write_distribution(&path, &dist).unwrap();
        assert_eq!(read_distribution(&path).unwrap(), dist);
    }

    #[test]
    fn string_distribution_round_trip() {
        let u = StringUniverse::new("ab", 2).unwrap();
        let dist = StringDistribution::new(
            vec![
                StringAtom { w: "ab".into(), p: rat(1, 2), eta: rint(1) },
                StringAtom { w: "ba".into(), p: rat(1, 2), eta: rint(0) },
            ],
            &u,
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sdist.json");
        write_string_distribution(&path, &dist).unwrap();
        assert_eq!(read_string_distribution(&path, &u).unwrap(), dist);
    }

    #[test]
    fn norm_tags_and_json() {
        assert_eq!(parse_norm_tag("L2", 2).unwrap(), Norm::l2(2));
        assert!(parse_norm_tag("l3", 2).is_err());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("norm.json");
        write_norm(&path, &Norm::linf(1)).unwrap();
        assert_eq!(read_norm(&path).unwrap(), Norm::linf(1));
    }

    #[test]
    fn parse_interval_flag() {
        let iv = parse_interval("-1/2,3/2").unwrap();
        assert_eq!(iv.lo, rat(-1, 2));
        assert_eq!(iv.hi, rat(3, 2));
        assert!(parse_interval("1").is_err());
        assert!(parse_interval("2,1").is_err());
    }
}
