//! Batch front-end: one JSON job file in, one artifact out.
//!
//! Exit codes: 0 success, 1 bad input, 2 validation failure (with a JSON
//! report of the violated condition), 3 an estimator did not converge (the
//! result is still written).

mod job;
mod sample;
mod table;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::integration::{self, RsOptions, SumMode};
use crate::intervals::{
    self, validate_regular, validate_weak, validate_weak_with_tolerance, HInterval, StrongPartition,
};
use crate::svg::{render_svg, Figure};
use crate::variation;

pub use job::{Format, FunctionSpec, IntegratorSpec, Job, Task};

/// Environment variable capping refinement depth for every estimator.
pub const MAX_REFINE_ENV: &str = "HYPERBOLICA_MAX_REFINE";

/// Absolute slack used by `--approx-lengths`.
pub const APPROX_LENGTH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "hyperbolica",
    version,
    about = "Calculus over the hyperbolic plane"
)]
pub struct Args {
    /// Job file to run.
    #[arg(long, required_unless_present = "sample")]
    pub job: Option<PathBuf>,
    /// Overrides the job's tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Overrides the job's sum mode.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<SumMode>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the result here instead of the job's output or stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for `--sample`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print a randomly generated job file for this task instead of running one.
    #[arg(long, value_enum)]
    pub sample: Option<Task>,
    /// Compare weak-partition lengths with an absolute slack of 1e-9.
    #[arg(long)]
    pub approx_lengths: bool,
}

fn parse_mode(s: &str) -> std::result::Result<SumMode, String> {
    match s {
        "paper-abs" => Ok(SumMode::PaperAbs),
        "signed" => Ok(SumMode::Signed),
        _ => Err(format!("expected paper-abs or signed, got '{s}'")),
    }
}

/// Exit status of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    InputError = 1,
    Invalid = 2,
    NotConverged = 3,
}

/// What a task produced before formatting.
struct Outcome {
    status: Status,
    json: Value,
    csv: Option<String>,
    svg: Option<String>,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome {
            status: Status::Ok,
            json,
            csv: None,
            svg: None,
        }
    }

    fn converged(mut self, converged: bool) -> Self {
        if !converged {
            self.status = Status::NotConverged;
        }
        self
    }

    fn csv(mut self, table: String) -> Self {
        self.csv = Some(table);
        self
    }

    fn svg(mut self, doc: String) -> Self {
        self.svg = Some(doc);
        self
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn error_report(e: &Error) -> Value {
    let mut report = to_json(e);
    report["status"] = json!("invalid");
    report["message"] = json!(e.to_string());
    report
}

fn input_error(code: &str, message: String) -> Value {
    json!({ "status": "error", "code": code, "message": message })
}

/// Runs the CLI with parsed arguments and returns the exit status.
pub fn run(args: &Args) -> Status {
    if let Some(task) = args.sample {
        let job = sample::sample_job(task, args.seed);
        let text = serde_json::to_string_pretty(&job).expect("job serializes") + "\n";
        return match write_artifact(args.out.as_deref(), &text) {
            Ok(()) => Status::Ok,
            Err(msg) => fail(input_error("IoError", msg)),
        };
    }
    let path = args.job.as_deref().expect("clap requires --job");
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return fail(input_error("IoError", format!("{}: {e}", path.display()))),
    };
    let job: Job = match serde_json::from_str(&text) {
        Ok(j) => j,
        Err(e) => return fail(input_error("JobSyntaxError", e.to_string())),
    };
    let format = args.format.or(job.format).unwrap_or(match job.task {
        Task::Render => Format::Svg,
        _ => Format::Json,
    });
    let outcome = match execute(&job, args) {
        Ok(o) => o,
        Err(e) if e.is_validation() => Outcome {
            status: Status::Invalid,
            json: error_report(&e),
            csv: None,
            svg: None,
        },
        Err(e) => {
            let mut report = to_json(&e);
            report["status"] = json!("error");
            report["message"] = json!(e.to_string());
            return fail(report);
        }
    };

    let body = match format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("json") + "\n",
        Format::Csv => match (&outcome.csv, outcome.status) {
            (Some(t), _) => t.clone(),
            (None, Status::Invalid) => {
                serde_json::to_string_pretty(&outcome.json).expect("json") + "\n"
            }
            (None, _) => {
                return fail(input_error(
                    "UnsupportedFormat",
                    "task has no CSV form".into(),
                ))
            }
        },
        Format::Svg => match &outcome.svg {
            Some(doc) => doc.clone(),
            None if outcome.status == Status::Invalid => {
                serde_json::to_string_pretty(&outcome.json).expect("json") + "\n"
            }
            None => {
                return fail(input_error(
                    "UnsupportedFormat",
                    "task has no SVG form".into(),
                ))
            }
        },
    };
    let out = args.out.clone().or(job.output.as_ref().map(PathBuf::from));
    if let Err(msg) = write_artifact(out.as_deref(), &body) {
        return fail(input_error("IoError", msg));
    }
    if let (Some(path), Some(doc)) = (&job.svg, &outcome.svg) {
        if let Err(msg) = write_artifact(Some(Path::new(path)), doc) {
            return fail(input_error("IoError", msg));
        }
    }
    outcome.status
}

fn fail(report: Value) -> Status {
    let _ = writeln!(
        std::io::stderr(),
        "{}",
        serde_json::to_string_pretty(&report).expect("json")
    );
    Status::InputError
}

fn write_artifact(path: Option<&Path>, body: &str) -> std::result::Result<(), String> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn payload<T: serde::de::DeserializeOwned>(value: &Value) -> Result<T> {
    serde_json::from_value(value.clone())
        .map_err(|e| Error::InvalidArgument(format!("payload: {e}")))
}

fn depth_cap() -> Option<usize> {
    std::env::var(MAX_REFINE_ENV).ok()?.trim().parse().ok()
}

fn capped(depth: usize) -> usize {
    depth_cap().map_or(depth, |cap| depth.min(cap))
}

fn execute(job: &Job, args: &Args) -> Result<Outcome> {
    let tol = |t: f64| args.tol.unwrap_or(t);
    match job.task {
        Task::ValidateStrong => {
            let p: job::StrongPayload = payload(&job.payload)?;
            let partition = StrongPartition::validate(p.points, p.interval)?;
            Ok(strong_outcome(&partition))
        }
        Task::ValidateWeak => {
            let p: job::WeakPayload = payload(&job.payload)?;
            let weak = if args.approx_lengths {
                validate_weak_with_tolerance(p.subintervals, p.interval, APPROX_LENGTH_TOL)?
            } else {
                validate_weak(p.subintervals, p.interval)?
            };
            let json = json!({
                "status": "valid",
                "interval": weak.interval(),
                "subintervals": weak.subintervals(),
                "total_length": intervals::total_length(weak.subintervals()),
            });
            Ok(Outcome::ok(json)
                .csv(table::intervals(weak.subintervals()))
                .svg(render_svg(Figure::Weak(&weak))))
        }
        Task::ValidateRegular => {
            let p: job::RegularPayload = payload(&job.payload)?;
            let regular = validate_regular(p.cells, p.interval)?;
            let json = json!({
                "status": "valid",
                "interval": regular.interval(),
                "cells": regular.cells(),
                "total_area": regular.total_area(),
            });
            Ok(Outcome::ok(json)
                .csv(table::intervals(regular.cells()))
                .svg(render_svg(Figure::Regular(&regular))))
        }
        Task::Merge => {
            let p: job::MergePayload = payload(&job.payload)?;
            let partition = match &p.interval {
                Some(iv) => intervals::merge_within(iv, &p.p, &p.q, p.mode)?,
                None => intervals::merge_real_partitions(&p.p, &p.q, p.mode)?,
            };
            Ok(strong_outcome(&partition))
        }
        Task::Variation => {
            let p: job::VariationPayload = payload(&job.payload)?;
            if let Some(points) = p.points {
                let partition = StrongPartition::validate(points, p.interval)?;
                let sum = variation::variation_sum(&p.f.general()?, &partition)?;
                let json = json!({ "sum": sum, "points": partition.points().len() });
                return Ok(Outcome::ok(json).csv(table::quantities(&[("sum", sum)])));
            }
            let f = p.f.natural()?;
            let estimate =
                variation::total_variation(&f, &p.interval, tol(p.tol), capped(p.max_depth))?;
            let lines = variation::discontinuity_lines(&f, &p.interval)?;
            let mut json = to_json(&estimate);
            json["discontinuities"] = to_json(&lines);
            Ok(Outcome::ok(json)
                .csv(table::quantities(&[("value", estimate.value)]))
                .svg(render_svg(Figure::Lines(&p.interval, &lines)))
                .converged(estimate.converged))
        }
        Task::VariationSet => {
            let p: job::VariationSetPayload = payload(&job.payload)?;
            let (m, n) = p.grid;
            let sums = match p.f.natural() {
                Ok(f) => variation::variation_sum_set_bruteforce(&f, &p.interval, m, n)?,
                Err(_) => {
                    variation::variation_sum_set_bruteforce(&p.f.general()?, &p.interval, m, n)?
                }
            };
            let json = json!({ "grid": [m, n], "count": sums.len(), "sums": sums });
            Ok(Outcome::ok(json).csv(table::values(&sums)))
        }
        Task::Integrate => {
            let p: job::IntegratePayload = payload(&job.payload)?;
            let options = RsOptions {
                tol: tol(p.tol),
                tags: p.tags,
                mode: args.mode.unwrap_or(p.mode),
                max_refinements: capped(p.max_refinements),
            };
            let result =
                integration::rs_integral(&p.f.natural()?, &p.g.natural()?, &p.interval, &options)?;
            Ok(integral_outcome(&result))
        }
        Task::Riemann => {
            let p: job::RiemannPayload = payload(&job.payload)?;
            let options = RsOptions {
                tol: tol(p.tol),
                tags: p.tags,
                mode: SumMode::Signed,
                max_refinements: capped(p.max_refinements),
            };
            let result = integration::riemann_integral(&p.f.natural()?, &p.interval, &options)?;
            Ok(integral_outcome(&result))
        }
        Task::CheckSubstitution => {
            let p: job::SubstitutionPayload = payload(&job.payload)?;
            let options = RsOptions {
                tol: tol(p.tol),
                tags: p.tags,
                mode: args.mode.unwrap_or(p.mode),
                max_refinements: capped(p.max_refinements),
            };
            let report = integration::check_substitution(
                &p.f.natural()?,
                &p.g.natural()?,
                &p.interval,
                &options,
            )?;
            let csv = table::quantities(&[
                ("lhs", report.lhs),
                ("rhs", report.rhs),
                ("difference", report.difference),
            ]);
            let status = if !(report.lhs_converged && report.rhs_converged) {
                Status::NotConverged
            } else if !report.pass {
                Status::Invalid
            } else {
                Status::Ok
            };
            Ok(Outcome {
                status,
                json: to_json(&report),
                csv: Some(csv),
                svg: None,
            })
        }
        Task::Render => render(payload(&job.payload)?),
    }
}

fn strong_outcome(partition: &StrongPartition) -> Outcome {
    let json = json!({
        "status": "valid",
        "interval": partition.interval(),
        "points": partition.points(),
        "telescoped_lengths": partition.telescoped_lengths(),
        "diameter": partition.diameter(),
    });
    Outcome::ok(json)
        .csv(table::values(partition.points()))
        .svg(render_svg(Figure::Strong(partition)))
}

fn integral_outcome(result: &integration::IntegralResult) -> Outcome {
    Outcome::ok(to_json(result))
        .csv(table::history(&result.history))
        .converged(result.converged)
}

fn render(p: job::RenderPayload) -> Result<Outcome> {
    let given = [
        p.points.is_some(),
        p.subintervals.is_some(),
        p.cells.is_some(),
        p.f.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() > 1 {
        return Err(Error::InvalidArgument(
            "render takes at most one of points, subintervals, cells, F".into(),
        ));
    }
    let interval: HInterval = p.interval;
    let doc = if let Some(points) = p.points {
        render_svg(Figure::Strong(&StrongPartition::validate(
            points, interval,
        )?))
    } else if let Some(subs) = p.subintervals {
        render_svg(Figure::Weak(&validate_weak(subs, interval)?))
    } else if let Some(cells) = p.cells {
        render_svg(Figure::Regular(&validate_regular(cells, interval)?))
    } else if let Some(f) = p.f {
        let lines = variation::discontinuity_lines(&f.natural()?, &interval)?;
        render_svg(Figure::Lines(&interval, &lines))
    } else {
        render_svg(Figure::Interval(&interval))
    };
    Ok(Outcome::ok(json!({ "status": "valid", "svg": doc.clone() })).svg(doc))
}
