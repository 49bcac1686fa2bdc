//! Command-line front end: mesh files, checks, reports, refinement and SVG
//! output. Every command produces a human-readable report and, with
//! `--json`, a structured one; the exit code depends only on the report.

pub mod meshfile;
pub mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hsl_core::admissible::{Classifier, Verdict};
use hsl_core::hierarchy::{
    hierarchical_dim_formula, leaf_mesh, verify_basis_with_limit, PouOutcome,
};
use hsl_core::splinespace::dim_oracle_with_limit;
use hsl_core::{
    check_pou_conditions, effective_bsplines_2d, face_counts, kraft_select,
    pou_weights, refine, validate_hierarchy, Axis, HierarchicalMesh, Route, TMeshComplex,
};
use serde_json::{json, Value};
use thiserror::Error;

use meshfile::{parse_rational, MeshFile, MeshFileError};

/// Environment variable overriding the rank oracle's unknown limit.
pub const MAX_UNKNOWNS_ENV: &str = "HSL_MAX_UNKNOWNS";

#[derive(Debug, Parser)]
#[command(name = "hsl", version, about = "Exact checks for spline spaces on hierarchical T-meshes")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    /// Degree in x (defaults to the file's `degrees`).
    #[arg(long)]
    pub m: Option<u32>,
    /// Degree in y (defaults to the file's `degrees`).
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural diagnostics of a mesh file.
    Validate { file: PathBuf },
    /// Membership of one level's domain in an admissible class.
    Admissible {
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
        /// Use the class defined through the complement.
        #[arg(long)]
        tilde: bool,
        #[arg(long, default_value = "3a")]
        route: Route,
        #[arg(long, default_value_t = 0)]
        level: usize,
        file: PathBuf,
    },
    /// Face counts of one level's domain.
    Counts {
        #[arg(long, default_value_t = 0)]
        level: usize,
        file: PathBuf,
    },
    /// Closed formula, B-spline count and rank oracle.
    Dim {
        #[command(flatten)]
        degrees: DegreeArgs,
        /// Use a single level instead of the whole hierarchy.
        #[arg(long)]
        level: Option<usize>,
        file: PathBuf,
    },
    /// List the hierarchical B-spline selection.
    Hbasis {
        #[command(flatten)]
        degrees: DegreeArgs,
        file: PathBuf,
    },
    /// Certify that the selection is a basis of the spline space.
    VerifyBasis {
        #[command(flatten)]
        degrees: DegreeArgs,
        file: PathBuf,
    },
    /// Certify a positive partition of unity.
    VerifyPou {
        #[command(flatten)]
        degrees: DegreeArgs,
        file: PathBuf,
    },
    /// Insert a line into the grids from a given level on.
    Refine {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        axis: Axis,
        #[arg(long)]
        coord: String,
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Draw the leaf mesh as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Overlay the supports of the selected B-splines.
        #[arg(long)]
        selection: bool,
        #[command(flatten)]
        degrees: DegreeArgs,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    File(#[from] MeshFileError),
    #[error(transparent)]
    Core(#[from] hsl_core::Error),
    #[error("{0}")]
    Usage(String),
}

/// A finished command: exit code plus text and JSON renderings.
#[derive(Debug)]
pub struct Report {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

fn report(ok: bool, text: String, json: Value) -> Report {
    Report {
        code: if ok { 0 } else { 1 },
        text,
        json,
    }
}

fn max_unknowns() -> Result<usize, CliError> {
    match std::env::var(MAX_UNKNOWNS_ENV) {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_UNKNOWNS_ENV} must be a non-negative integer, got '{v}'"))),
        Err(_) => Ok(hsl_core::error::DEFAULT_MAX_UNKNOWNS),
    }
}

struct Loaded {
    file: MeshFile,
    mesh: HierarchicalMesh,
}

impl Loaded {
    fn open(path: &PathBuf) -> Result<Self, CliError> {
        let file = MeshFile::load(path)?;
        let mesh = file.to_mesh()?;
        Ok(Loaded { file, mesh })
    }

    /// Open and require a structurally valid hierarchy.
    fn open_valid(path: &PathBuf) -> Result<Self, CliError> {
        let loaded = Self::open(path)?;
        validate_hierarchy(&loaded.mesh)
            .map_err(|v| CliError::Core(hsl_core::Error::InvalidHierarchy(v.to_string())))?;
        Ok(loaded)
    }

    fn degrees(&self, args: &DegreeArgs) -> Result<(u32, u32), CliError> {
        let from_file = self.file.degrees();
        match (args.m.or(from_file.map(|d| d.0)), args.n.or(from_file.map(|d| d.1))) {
            (Some(m), Some(n)) => Ok((m, n)),
            _ => Err(CliError::Usage(
                "degrees missing: pass --m and --n or set \"degrees\" in the file".into(),
            )),
        }
    }

    fn level(&self, level: usize) -> Result<(), CliError> {
        if level < self.mesh.depth() {
            Ok(())
        } else {
            Err(CliError::Usage(format!(
                "level {level} does not exist (the mesh has {} levels)",
                self.mesh.depth()
            )))
        }
    }
}

fn verdict_text(v: &Verdict) -> String {
    match &v.failure {
        None => "member".into(),
        Some(f) => format!("not a member: {f}"),
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Validate { file } => {
            let loaded = Loaded::open(file)?;
            let depth = loaded.mesh.depth();
            Ok(match validate_hierarchy(&loaded.mesh) {
                Ok(()) => report(
                    true,
                    format!("valid hierarchy with {depth} level(s)"),
                    json!({"valid": true, "levels": depth, "violation": null}),
                ),
                Err(v) => report(
                    false,
                    format!("invalid: {v}"),
                    json!({"valid": false, "levels": depth, "violation": v.to_string()}),
                ),
            })
        }
        Command::Admissible { k1, k2, tilde, route, level, file } => {
            let loaded = Loaded::open_valid(file)?;
            loaded.level(*level)?;
            let dom = loaded.mesh.domain(*level);
            let mut classifier = Classifier::new();
            let verdict = if *tilde {
                classifier.classify_tilde(dom, *k1, *k2)?
            } else {
                classifier.classify(dom, *k1, *k2, *route)?
            };
            let class = format!("{}({k1},{k2})", if *tilde { "complement class " } else { "class " });
            Ok(report(
                verdict.member,
                format!("level {level}, {class}: {}", verdict_text(&verdict)),
                json!({
                    "level": level, "k1": k1, "k2": k2, "tilde": tilde,
                    "member": verdict.member,
                    "failure": verdict.failure.as_ref().map(ToString::to_string),
                }),
            ))
        }
        Command::Counts { level, file } => {
            let loaded = Loaded::open_valid(file)?;
            loaded.level(*level)?;
            let c = face_counts(loaded.mesh.domain(*level));
            let rows = [
                ("cells", c.f2),
                ("inner horizontal edges", c.f1h0),
                ("inner vertical edges", c.f1v0),
                ("inner vertices", c.f00),
                ("horizontal edges", c.f1h),
                ("vertical edges", c.f1v),
                ("vertices", c.f0),
            ];
            let text = rows
                .iter()
                .map(|(name, v)| format!("{name:<24}{v:>8}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(report(
                true,
                text,
                json!({
                    "level": level, "f2": c.f2, "f1h0": c.f1h0, "f1v0": c.f1v0, "f00": c.f00,
                    "f1h": c.f1h, "f1v": c.f1v, "f0": c.f0,
                }),
            ))
        }
        Command::Dim { degrees, level, file } => {
            let loaded = Loaded::open_valid(file)?;
            let (m, n) = loaded.degrees(degrees)?;
            let limit = max_unknowns()?;
            let (formula, count, oracle) = match level {
                Some(l) => {
                    loaded.level(*l)?;
                    let (grid, dom) = (loaded.mesh.grid(*l), loaded.mesh.domain(*l));
                    (
                        hsl_core::dim_formula(m, n, &face_counts(dom)),
                        effective_bsplines_2d(m, n, dom, grid, *l)?.len() as i64,
                        dim_oracle_with_limit(&TMeshComplex::from_domain(dom, grid)?, m, n, limit)?,
                    )
                }
                None => (
                    hierarchical_dim_formula(&loaded.mesh, m, n)?,
                    kraft_select(&loaded.mesh, m, n)?.len() as i64,
                    dim_oracle_with_limit(&leaf_mesh(&loaded.mesh)?, m, n, limit)?,
                ),
            };
            let agree = formula == count && count == oracle;
            let word = if agree { "AGREE" } else { "DISAGREE" };
            Ok(report(
                agree,
                format!("formula {formula}\nb-splines {count}\noracle {oracle}\n{word}"),
                json!({
                    "m": m, "n": n, "level": level,
                    "formula": formula, "bsplines": count, "oracle": oracle, "agree": agree,
                }),
            ))
        }
        Command::Hbasis { degrees, file } => {
            let loaded = Loaded::open_valid(file)?;
            let (m, n) = loaded.degrees(degrees)?;
            let sel = kraft_select(&loaded.mesh, m, n)?;
            let mut text = String::new();
            for (l, keys) in sel.levels.iter().enumerate() {
                text.push_str(&format!("level {l}: {} functions\n", keys.len()));
            }
            for k in sel.keys() {
                text.push_str(&format!("{} {} {}\n", k.level, k.origin.0, k.origin.1));
            }
            text.push_str(&format!("total {}", sel.len()));
            Ok(report(
                true,
                text,
                json!({
                    "m": m, "n": n,
                    "per_level": sel.levels.iter().map(|l| l.len()).collect::<Vec<_>>(),
                    "keys": sel.keys().map(|k| json!([k.level, k.origin.0, k.origin.1])).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::VerifyBasis { degrees, file } => {
            let loaded = Loaded::open_valid(file)?;
            let (m, n) = loaded.degrees(degrees)?;
            let r = verify_basis_with_limit(&loaded.mesh, m, n, max_unknowns()?)?;
            let verdict = if r.certified() { "CERTIFIED" } else { "NOT CERTIFIED" };
            Ok(report(
                r.certified(),
                format!(
                    "selected {} (per level {:?})\nrank {}\ndimension {}\nring conditions {:?}\n{verdict}",
                    r.selected, r.per_level, r.rank, r.dim, r.conditions
                ),
                json!({
                    "m": m, "n": n, "selected": r.selected, "per_level": r.per_level,
                    "rank": r.rank, "dimension": r.dim, "conditions": r.conditions,
                    "certified": r.certified(),
                }),
            ))
        }
        Command::VerifyPou { degrees, file } => {
            let loaded = Loaded::open_valid(file)?;
            let (m, n) = loaded.degrees(degrees)?;
            let conditions = check_pou_conditions(&loaded.mesh, m, n)?;
            let sel = kraft_select(&loaded.mesh, m, n)?;
            let outcome = pou_weights(&loaded.mesh, m, n, &sel)?;
            let certified = outcome.certified();
            let verdict = if certified { "CERTIFIED" } else { "NOT CERTIFIED" };
            let cond_text = format!("conditions hold: {}", conditions.hold());
            let (text, body) = match &outcome {
                PouOutcome::Weights { weights, positive, residual_zero } => {
                    let mut text = String::new();
                    for (k, w) in weights {
                        text.push_str(&format!("{} {} {} {w}\n", k.level, k.origin.0, k.origin.1));
                    }
                    text.push_str(&format!("positive {positive}\nresidual zero {residual_zero}"));
                    (
                        text,
                        json!({
                            "weights": weights.iter()
                                .map(|(k, w)| json!([k.level, k.origin.0, k.origin.1, w.to_string()]))
                                .collect::<Vec<_>>(),
                            "positive": positive, "residual_zero": residual_zero,
                        }),
                    )
                }
                PouOutcome::Inconsistent => (
                    "no weights reproduce the constant one".into(),
                    json!({"weights": null, "finding": "inconsistent"}),
                ),
                PouOutcome::Underdetermined { rank } => (
                    format!("selection is linearly dependent (rank {rank} < {})", sel.len()),
                    json!({"weights": null, "finding": "underdetermined", "rank": rank}),
                ),
            };
            let mut body = body;
            body["m"] = json!(m);
            body["n"] = json!(n);
            body["conditions_hold"] = json!(conditions.hold());
            body["certified"] = json!(certified);
            Ok(report(certified, format!("{text}\n{cond_text}\n{verdict}"), body))
        }
        Command::Refine { level, axis, coord, file, output } => {
            let loaded = Loaded::open_valid(file)?;
            let coord = parse_rational(coord)?;
            let refined = refine(&loaded.mesh, *axis, &coord, *level)?;
            let out = MeshFile::from_mesh(&refined, loaded.file.degrees());
            out.save(output)?;
            let changed = refined != loaded.mesh;
            Ok(report(
                true,
                format!(
                    "{} line {axis} = {coord} at level {level}; wrote {}",
                    if changed { "inserted" } else { "already present:" },
                    output.display()
                ),
                json!({"changed": changed, "output": output.display().to_string()}),
            ))
        }
        Command::Render { file, output, selection, degrees } => {
            let loaded = Loaded::open_valid(file)?;
            let sel = if *selection {
                let (m, n) = loaded.degrees(degrees)?;
                Some(kraft_select(&loaded.mesh, m, n)?)
            } else {
                None
            };
            let svg = render::render_svg(&loaded.mesh, sel.as_ref())?;
            std::fs::write(output, svg).map_err(|source| MeshFileError::Write {
                path: output.display().to_string(),
                source,
            })?;
            Ok(report(
                true,
                format!("wrote {}", output.display()),
                json!({"output": output.display().to_string()}),
            ))
        }
    }
}
