//! Thin command-line front end over the library: morphology on interval-set
//! files, identity checking, exact risk, minimizer search, gauge evaluation,
//! string perturbations, batch suites, witness replay, and rendering.
//!
//! Exit codes: 0 success, 1 property/suite failure, 2 bad configuration.

use advcalc::error::{Error, Result};
use advcalc::gauge::{self, ConvexBody};
use advcalc::geometry::{Interval, IntervalSet, Radius};
use advcalc::io;
use advcalc::morphology::{
    closing, finite_family_identities, fringe, mollify, opening, single_set_identities,
    MorphContext, MorphOps,
};
use advcalc::optimize::{LineCells, SearchInstance};
use advcalc::risk::{adversarial_risk, Mode};
use advcalc::strings::{
    string_adversarial_risk, string_oracle_search, swap_apply, StringUniverse, SwapFamily,
};
use advcalc::suite::{self, SuiteConfig, SuiteKind};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "advcalc", version, about = "Exact adversarial set calculus")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// RNG seed for anything randomized.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output directory for artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Artifact format for tabular output.
    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,

    /// JSON config file; its fields override unset flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

/// Fields accepted in a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<String>,
    cases: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one morphological operation to an interval-set file.
    Morph {
        #[arg(long, value_parser = ["dilate", "erode", "open", "close", "fringe", "mollify"])]
        op: String,
        /// Radius as an exact rational, e.g. 1/2.
        #[arg(long)]
        eps: String,
        #[arg(long, default_value = "l2")]
        norm: String,
        #[arg(long = "in")]
        input: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long = "out-file")]
        output: Option<PathBuf>,
    },
    /// Check the morphology identities on a family of interval-set files.
    CheckIdentities {
        /// One or more interval-set JSON files.
        #[arg(long, num_args = 1.., required = true)]
        family: Vec<PathBuf>,
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long, default_value = "l2")]
        norm: String,
    },
    /// Exact adversarial risk of a set under a distribution.
    Risk {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value = "l2")]
        norm: String,
    },
    /// Search for a minimal-risk set over a cell partition.
    Optimize {
        #[arg(long, value_parser = ["oracle", "greedy", "pipeline"])]
        mode: String,
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value = "l2")]
        norm: String,
        #[arg(long)]
        cells: usize,
        /// Result JSON path.
        #[arg(long = "out-file")]
        output: Option<PathBuf>,
    },
    /// Evaluate the gauge lambda_C(x, v) for a convex body.
    Gauge {
        /// Body JSON file: {"Ball": {...}} or {"Polytope": {...}}.
        #[arg(long)]
        body: PathBuf,
        /// Comma-separated coordinates, e.g. 0,0.
        #[arg(long)]
        x: String,
        #[arg(long)]
        v: String,
    },
    /// String-swap perturbation model: risk, oracle, or identity checks.
    Strings {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long, default_value = "3")]
        maxlen: usize,
        /// Swap pairs like 1,2;2,3 (1-based positions).
        #[arg(long)]
        swaps: String,
        #[arg(long)]
        dist: Option<PathBuf>,
        /// Comma-separated member strings of A ("-" for the empty set).
        #[arg(long)]
        set: Option<String>,
        #[arg(long, value_parser = ["risk", "oracle", "identities"])]
        mode: String,
    },
    /// Run a seeded property suite, writing CSV artifacts and witnesses.
    Suite {
        #[arg(long, default_value = "identities")]
        suite: String,
        #[arg(long)]
        cases: Option<usize>,
        /// Inject a deliberate failure into the given case index.
        #[arg(long)]
        force_fail: Option<usize>,
    },
    /// Re-run the single check a witness file points at.
    Replay {
        #[arg(long)]
        witness: PathBuf,
    },
    /// Render an interval-set file with its dilation and erosion as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value = "l2")]
        norm: String,
        #[arg(long = "out-file")]
        output: PathBuf,
    },
}

fn parse_coords(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad coordinate {t:?}: {e}")))
        })
        .collect()
}

fn parse_swaps(s: &str) -> Result<SwapFamily> {
    let mut pairs = Vec::new();
    for chunk in s.split(';') {
        let parts: Vec<&str> = chunk.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("bad swap pair {chunk:?}")));
        }
        let i = parts[0]
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad position {:?}: {e}", parts[0])))?;
        let j = parts[1]
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad position {:?}: {e}", parts[1])))?;
        pairs.push((i, j));
    }
    SwapFamily::new(pairs)
}

fn line_context(set_inputs: &[&IntervalSet], eps: &str, norm: &str) -> Result<MorphContext> {
    let eps = Radius::new(io::parse_rational(eps)?)?;
    let norm = io::parse_norm_tag(norm, 1)?;
    MorphContext::line_padded(norm, eps, set_inputs)
}

fn emit_interval_set(set: &IntervalSet, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => io::write_interval_set(path, set)?,
        None => println!("{}", io::interval_set_to_json(set)),
    }
    Ok(())
}

/// 0 success, 1 property failure.
fn run(cli: Cli) -> Result<u8> {
    let mut global = cli.global.clone();
    let file_cfg: FileConfig = match &global.config {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => FileConfig::default(),
    };
    global.seed = global.seed.or(file_cfg.seed);
    global.out = global.out.or(file_cfg.out);
    global.format = global.format.or(file_cfg.format);

    match cli.command {
        Command::Morph {
            op,
            eps,
            norm,
            input,
            output,
        } => {
            let a = io::read_interval_set(&input)?;
            let ctx = line_context(&[&a], &eps, &norm)?;
            let result = match op.as_str() {
                "dilate" => a.dilate(&ctx)?,
                "erode" => a.erode(&ctx)?,
                "open" => opening(&a, &ctx)?,
                "close" => closing(&a, &ctx)?,
                "fringe" => fringe(&a, &ctx)?,
                "mollify" => mollify(&a, &ctx)?,
                _ => unreachable!("clap validated"),
            };
            emit_interval_set(&result, output.as_ref())?;
            Ok(0)
        }

        Command::CheckIdentities { family, eps, norm } => {
            let sets = family
                .iter()
                .map(|p| io::read_interval_set(p))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&IntervalSet> = sets.iter().collect();
            let ctx = line_context(&refs, &eps, &norm)?;
            let mut failures = 0;
            println!("identity,status,witness-file");
            for (path, set) in family.iter().zip(&sets) {
                let report = single_set_identities(set, &ctx)?;
                for check in &report.checks {
                    let status = if check.holds { "pass" } else { "fail" };
                    if !check.holds {
                        failures += 1;
                    }
                    println!("{}[{}],{status},{}", check.name, path.display(), "");
                }
            }
            let report = finite_family_identities(&sets, &ctx)?;
            for check in &report.checks {
                let status = if check.holds { "pass" } else { "fail" };
                if !check.holds {
                    failures += 1;
                }
                println!("{},{status},{}", check.name, "");
            }
            Ok(if failures == 0 { 0 } else { 1 })
        }

        Command::Risk {
            set,
            dist,
            eps,
            norm,
        } => {
            let a = io::read_interval_set(&set)?;
            let d = io::read_distribution(&dist)?;
            // pad the domain so every atom and its ball fit
            let eps_r = io::parse_rational(&eps)?;
            let mut lo = advcalc::rint(0);
            let mut hi = advcalc::rint(0);
            let mut first = true;
            let mut widen = |x: &advcalc::Rational| {
                if first || *x < lo {
                    lo = x.clone();
                }
                if first || *x > hi {
                    hi = x.clone();
                }
                first = false;
            };
            for atom in d.atoms() {
                widen(&atom.x[0]);
            }
            if let Some(bb) = a.bounding_interval() {
                widen(&bb.lo);
                widen(&bb.hi);
            }
            let pad = advcalc::rint(2) * &eps_r + advcalc::rint(1);
            let domain = Interval::new(&lo - &pad, &hi + &pad)?;
            let ctx = MorphContext::line(
                io::parse_norm_tag(&norm, 1)?,
                Radius::new(eps_r)?,
                domain,
            )?;
            let risk = adversarial_risk(&a, &d, &ctx, Mode::Morphology)?;
            println!("{} ({})", risk, risk.to_f64());
            Ok(0)
        }

        Command::Optimize {
            mode,
            dist,
            eps,
            norm,
            cells,
            output,
        } => {
            let d = io::read_distribution(&dist)?;
            let mut lo = d.atoms()[0].x[0].clone();
            let mut hi = lo.clone();
            for atom in d.atoms() {
                if atom.x[0] < lo {
                    lo = atom.x[0].clone();
                }
                if atom.x[0] > hi {
                    hi = atom.x[0].clone();
                }
            }
            let eps_r = io::parse_rational(&eps)?;
            let one = advcalc::rint(1);
            let family = LineCells::partition(&lo - &one, &hi + &one, cells)?;
            let pad = advcalc::rint(2) * &eps_r + &one;
            let domain = Interval::new(&lo - &pad - &one, &hi + &pad + &one)?;
            let ctx = MorphContext::line(
                io::parse_norm_tag(&norm, 1)?,
                Radius::new(eps_r)?,
                domain,
            )?;
            let instance = SearchInstance {
                family,
                dist: d,
                ctx,
            };
            let result = match mode.as_str() {
                "oracle" => instance.oracle_search()?,
                "greedy" => instance.greedy_flip_descent(0, 10 * cells)?,
                "pipeline" => {
                    let oracle = instance.oracle_search()?;
                    let check = instance.mollified_optimality_check()?;
                    if !check.risk_equal {
                        eprintln!("warning: mollified minimizer changed the risk");
                    }
                    instance.greedy_flip_descent(oracle.best_mask, 10 * cells)?
                }
                _ => unreachable!("clap validated"),
            };
            let dto = io::line_result_to_dto(&result);
            match &output {
                Some(path) => io::write_search_result(path, &dto)?,
                None => println!("{}", serde_json::to_string_pretty(&dto)?),
            }
            Ok(0)
        }

        Command::Gauge { body, x, v } => {
            let body: ConvexBody = serde_json::from_str(&std::fs::read_to_string(&body)?)?;
            let x = parse_coords(&x)?;
            let v = parse_coords(&v)?;
            let value = gauge::lambda(&body, &x, &v)?;
            println!("{value}");
            Ok(0)
        }

        Command::Strings {
            alphabet,
            maxlen,
            swaps,
            dist,
            set,
            mode,
        } => {
            let universe = StringUniverse::new(&alphabet, maxlen)?;
            let family = parse_swaps(&swaps)?;
            match mode.as_str() {
                "identities" => {
                    let words = universe.enumerate();
                    let ok = family.pairs().iter().all(|p| {
                        words
                            .iter()
                            .all(|w| swap_apply(*p, &swap_apply(*p, w)) == *w)
                    });
                    println!("involution,{}", if ok { "pass" } else { "fail" });
                    Ok(if ok { 0 } else { 1 })
                }
                "risk" => {
                    let dist = dist.ok_or_else(|| {
                        Error::Config("strings --mode risk needs --dist".into())
                    })?;
                    let d = io::read_string_distribution(&dist, &universe)?;
                    let a: BTreeSet<String> = match set.as_deref() {
                        None | Some("-") => BTreeSet::new(),
                        Some(s) => s.split(',').map(|w| w.trim().to_string()).collect(),
                    };
                    let risk = string_adversarial_risk(&a, &d, &family, &universe)?;
                    println!("{} ({})", risk, risk.to_f64());
                    Ok(0)
                }
                "oracle" => {
                    let dist = dist.ok_or_else(|| {
                        Error::Config("strings --mode oracle needs --dist".into())
                    })?;
                    let d = io::read_string_distribution(&dist, &universe)?;
                    let result = string_oracle_search(&d, &family, &universe)?;
                    println!(
                        "best_risk {} best_set {:?}",
                        result.best_risk, result.best_set
                    );
                    Ok(0)
                }
                _ => unreachable!("clap validated"),
            }
        }

        Command::Suite {
            suite: name,
            cases,
            force_fail,
        } => {
            let kind: SuiteKind = name.parse()?;
            let config = SuiteConfig {
                kind,
                cases: cases.or(file_cfg.cases).unwrap_or(kind.default_cases()),
                seed: global.seed.unwrap_or(7),
                out_dir: global.out.clone().unwrap_or_else(|| PathBuf::from(".")),
                force_fail,
            };
            let report = suite::run_suite(&config)?;
            for row in &report.summary {
                println!(
                    "{},{},{},{:e}",
                    row.suite, row.cases, row.failures, row.max_violation
                );
            }
            Ok(if report.failures == 0 { 0 } else { 1 })
        }

        Command::Replay { witness } => {
            let row = suite::replay(&witness)?;
            println!(
                "{},{},{},{},{}",
                row.suite, row.case_id, row.status, row.lhs, row.rhs
            );
            Ok(if row.status == "pass" { 0 } else { 1 })
        }

        Command::Render {
            input,
            eps,
            norm,
            output,
        } => {
            let a = io::read_interval_set(&input)?;
            let ctx = line_context(&[&a], &eps, &norm)?;
            let bands = [
                advcalc::render::Band::new("A", a.clone()),
                advcalc::render::Band::new("A^e", a.dilate(&ctx)?),
                advcalc::render::Band::new("A^-e", a.erode(&ctx)?),
            ];
            std::fs::write(&output, advcalc::render::render_line_bands(&bands)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
