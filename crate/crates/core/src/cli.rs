//! The `hyperdyn` command line: run property checks, theorem cases or a
//! suite and write a JSON report.
//!
//! Exit status: 0 when the run completes (and, with `--assert`, nothing
//! failed), 1 when `--assert` finds a failed property, a refuted case or a
//! failed suite, 2 for usage and config errors, 3 for I/O errors.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{ArgGroup, Parser};
use serde::Serialize;
use serde_json::Value;

use crate::checkers::dynamics::ShiftDynamics;
use crate::checkers::report::{Bounds, Property, PropertyReport};
use crate::checkers::{bounded, finite};
use crate::config::{load_system, to_config_text};
use crate::hyperspace::{build_hyperspace_system, DEFAULT_HYPERSPACE_CAP};
use crate::systems::families::SystemHandle;
use crate::systems::shift::ShiftSpace;
use crate::theorems::suite::{load_suite, run_suite, SuiteReport};
use crate::theorems::{verify_theorem, CaseVerdict, TheoremCase, TheoremId, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERT: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Fields holding wall-clock data; everything else in a report is
/// reproducible.
pub const TIMING_FIELDS: [&str; 2] = ["generated_at", "wall_time_ms"];

#[derive(Debug, Clone, Parser)]
#[command(
    name = "hyperdyn",
    version,
    about = "Hyperspace dynamics for group actions"
)]
#[command(group(ArgGroup::new("command").required(true).args(["check", "verify", "suite", "print_config"])))]
pub struct RunConfig {
    /// `builtin:<expr>` or a path to a system config file.
    #[arg(long)]
    pub system: Option<String>,
    /// Comma-separated properties, or `all`.
    #[arg(long)]
    pub check: Option<String>,
    /// Comma-separated theorem ids, or `all`.
    #[arg(long)]
    pub verify: Option<String>,
    /// Suite file, or `default`.
    #[arg(long)]
    pub suite: Option<String>,
    /// Print the system as config text and exit.
    #[arg(long)]
    pub print_config: bool,
    /// Run `--check` on the hyperspace of a finite system.
    #[arg(long)]
    pub hyperspace: bool,
    /// Word radius for shift spaces.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub radius: Option<u64>,
    /// Longest cylinder for shift spaces.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
    pub cyl_len: Option<u64>,
    /// Largest base whose hyperspace is materialized.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: Option<u64>,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exit with status 1 when a property fails or a case is refuted.
    #[arg(long)]
    pub assert: bool,
    /// Run abelian-only constructions on non-abelian groups, reported as
    /// informational.
    #[arg(long)]
    pub allow_non_abelian: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemDescriptor {
    pub label: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abelian: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<u8>>>,
}

impl SystemDescriptor {
    pub fn of(h: &SystemHandle) -> Self {
        match h {
            SystemHandle::Finite(s) => Self {
                label: s.label().into(),
                kind: "finite",
                points: Some(s.point_count()),
                generators: Some(s.group().generator_count()),
                abelian: Some(s.group().is_abelian()),
                image_order: Some(s.image().order()),
                alphabet: None,
                matrix: None,
            },
            SystemHandle::Shift(s) => Self {
                label: s.name().into(),
                kind: "shift",
                points: None,
                generators: Some(1),
                abelian: Some(true),
                image_order: None,
                alphabet: Some(s.alphabet_size()),
                matrix: Some(s.matrix().to_rows()),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportBounds {
    pub radius: u64,
    pub cyl_len: usize,
    pub cap: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Results {
    Check(Vec<PropertyReport>),
    Verify(Vec<TheoremCase>),
    Suite(SuiteReport),
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDescriptor>,
    pub command: String,
    pub bounds: ReportBounds,
    /// False when a property fails, a case is refuted or the suite fails.
    pub passed: bool,
    pub results: Results,
    pub generated_at: u64,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// A parsed report with the timing fields removed.
pub fn without_timing(report: &str) -> Result<Value, serde_json::Error> {
    let mut v: Value = serde_json::from_str(report)?;
    if let Value::Object(m) = &mut v {
        for f in TIMING_FIELDS {
            m.remove(f);
        }
    }
    Ok(v)
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

fn parse_list<T>(
    text: &str,
    all: &[T],
    parse: impl Fn(&str) -> Result<T, String>,
) -> Result<Vec<T>, Failure>
where
    T: Copy,
{
    if text.trim() == "all" {
        return Ok(all.to_vec());
    }
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse(s.trim()).map_err(Failure::config))
        .collect()
}

fn check_system(
    h: &SystemHandle,
    props: &[Property],
    bounds: Bounds,
    cap: usize,
    hyper: bool,
) -> Result<Vec<PropertyReport>, Failure> {
    match h {
        SystemHandle::Finite(sys) if hyper => {
            let hs =
                build_hyperspace_system(sys, cap).map_err(|e| Failure::config(e.to_string()))?;
            Ok(props
                .iter()
                .map(|&p| finite::check(hs.system(), p))
                .collect())
        }
        SystemHandle::Finite(sys) => Ok(props.iter().map(|&p| finite::check(sys, p)).collect()),
        SystemHandle::Shift(_) if hyper => Err(Failure::config(
            "--hyperspace needs a finite system; shift hyperspaces are not materialized",
        )),
        SystemHandle::Shift(sft) => {
            let d = ShiftDynamics::new(ShiftSpace::new(sft.clone()), bounds);
            Ok(props.iter().map(|&p| bounded::check(&d, p)).collect())
        }
    }
}

/// Runs one invocation and returns the report text.
pub fn execute(cfg: &RunConfig) -> Result<(Report, String), Failure> {
    let start = Instant::now();
    let system = match &cfg.system {
        Some(src) => Some(load_system(src).map_err(|e| Failure::config(e.to_string()))?),
        None => None,
    };
    let need_system = || {
        system
            .as_ref()
            .ok_or_else(|| Failure::config("--system is required for this command"))
    };
    let mut options = VerifyOptions {
        bounds: Bounds::default(),
        cap: DEFAULT_HYPERSPACE_CAP,
        allow_non_abelian: cfg.allow_non_abelian,
    };
    let overrides = |o: &mut VerifyOptions| {
        if let Some(r) = cfg.radius {
            o.bounds.radius = r;
        }
        if let Some(l) = cfg.cyl_len {
            o.bounds.cyl_len = l as usize;
        }
        if let Some(c) = cfg.cap {
            o.cap = c as usize;
        }
    };
    overrides(&mut options);
    if cfg.print_config {
        return Ok((dummy_report(), to_config_text(need_system()?)));
    }
    let (command, passed, results) = if let Some(list) = &cfg.check {
        let props = parse_list(list, &Property::STANDARD, str::parse)?;
        let reports = check_system(
            need_system()?,
            &props,
            options.bounds,
            options.cap,
            cfg.hyperspace,
        )?;
        let passed = reports.iter().all(|r| r.verdict.holds());
        (
            format!("check {}", names(props.iter().map(|p| p.as_str()))),
            passed,
            Results::Check(reports),
        )
    } else if let Some(list) = &cfg.verify {
        let ids = parse_list(list, &TheoremId::ALL, str::parse)?;
        let sys = need_system()?;
        let cases: Vec<TheoremCase> = ids
            .iter()
            .map(|&id| {
                verify_theorem(id, sys, &options)
                    .unwrap_or_else(|e| TheoremCase::rejected(id, sys.label(), e.to_string()))
            })
            .collect();
        let passed = cases.iter().all(|c| c.verdict != CaseVerdict::Refuted);
        (
            format!("verify {}", names(ids.iter().map(|i| i.as_str()))),
            passed,
            Results::Verify(cases),
        )
    } else if let Some(src) = &cfg.suite {
        let suite = load_suite(src).map_err(|e| Failure::config(e.to_string()))?;
        options = suite.options(options);
        overrides(&mut options);
        let report = run_suite(&suite, &options);
        (
            format!("suite {}", suite.name),
            report.passed,
            Results::Suite(report),
        )
    } else {
        return Err(Failure::config("no command given"));
    };
    let report = Report {
        tool: "hyperdyn",
        version: env!("CARGO_PKG_VERSION"),
        system: system.as_ref().map(SystemDescriptor::of),
        command,
        bounds: ReportBounds {
            radius: options.bounds.radius,
            cyl_len: options.bounds.cyl_len,
            cap: options.cap,
        },
        passed,
        results,
        generated_at: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs()),
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    let text = report.to_json();
    Ok((report, text))
}

fn names<'a>(it: impl Iterator<Item = &'a str>) -> String {
    it.collect::<Vec<_>>().join(",")
}

fn dummy_report() -> Report {
    Report {
        tool: "hyperdyn",
        version: env!("CARGO_PKG_VERSION"),
        system: None,
        command: "print-config".into(),
        bounds: ReportBounds {
            radius: 0,
            cyl_len: 0,
            cap: 0,
        },
        passed: true,
        results: Results::Check(Vec::new()),
        generated_at: 0,
        wall_time_ms: 0,
    }
}

/// Parses arguments, runs, writes the report and returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (report, text) = match execute(&cfg) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.code;
        }
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_IO;
            }
            if !cfg.print_config {
                eprintln!(
                    "{}: {}",
                    report.command,
                    if report.passed { "passed" } else { "failed" }
                );
            }
        }
        None => print!("{text}"),
    }
    if cfg.assert && !report.passed {
        EXIT_ASSERT
    } else {
        EXIT_OK
    }
}
