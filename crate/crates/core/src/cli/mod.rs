//! Command-line front end.
//!
//! Every subcommand parameter can be set three ways, in increasing priority:
//! built-in default, a `key = value` line in the file given by `--config`,
//! and a `--key value` flag. The worker count also reads
//! `SQUEEZEFORCE_WORKERS`, which sits between the default and the file.
//!
//! Exit codes: 0 success, 2 usage, 3 I/O, 4 numerical failure.

pub mod csv;
pub mod params;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::parser::ValueSource;
use clap::{Arg, ArgAction, Command};

use crate::error::Error;
use crate::force::{doppler_limit_temperature, FieldGeometry, ForceUnit};
use crate::squeeze::OpoConfig;
use crate::sweep::{
    Axis, CrossoverParams, Curve, Fig1Params, Fig2Params, SweepGrid, Sweeper, Workers,
};
use crate::DriveParams;
use params::{ParamSpec, Value};

pub const WORKERS_ENV: &str = "SQUEEZEFORCE_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subcommand {
    Fig1,
    Fig2,
    Sweep,
    Crossover,
    OpoSpectrum,
    Doppler,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] = [
        Subcommand::Fig1,
        Subcommand::Fig2,
        Subcommand::Sweep,
        Subcommand::Crossover,
        Subcommand::OpoSpectrum,
        Subcommand::Doppler,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Fig1 => "fig1",
            Subcommand::Fig2 => "fig2",
            Subcommand::Sweep => "sweep",
            Subcommand::Crossover => "crossover",
            Subcommand::OpoSpectrum => "opo-spectrum",
            Subcommand::Doppler => "doppler",
        }
    }

    fn about(self) -> &'static str {
        match self {
            Subcommand::Fig1 => "Averaged force against Rabi frequency: squeezed vacuum (noisy, quiet) and squeezed-coherent only",
            Subcommand::Fig2 => "Signed squeezed-vacuum force over degree of squeezing and phase",
            Subcommand::Sweep => "Force on an arbitrary parameter grid",
            Subcommand::Crossover => "Rabi frequency where the squeezed-vacuum force overtakes the squeezed-coherent force",
            Subcommand::OpoSpectrum => "Photon number and two-photon correlation of an ideal degenerate OPO",
            Subcommand::Doppler => "Doppler-limit temperature",
        }
    }

    pub fn params(self) -> &'static [ParamSpec] {
        match self {
            Subcommand::Fig1 => params::FIG1,
            Subcommand::Fig2 => params::FIG2,
            Subcommand::Sweep => params::SWEEP,
            Subcommand::Crossover => params::CROSSOVER,
            Subcommand::OpoSpectrum => params::OPO_SPECTRUM,
            Subcommand::Doppler => params::DOPPLER,
        }
    }

    fn has_unit(self) -> bool {
        matches!(
            self,
            Subcommand::Fig1 | Subcommand::Fig2 | Subcommand::Sweep | Subcommand::Crossover
        )
    }

    fn has_workers(self) -> bool {
        matches!(
            self,
            Subcommand::Fig1 | Subcommand::Fig2 | Subcommand::Sweep
        )
    }

    fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    /// Every parameter of the subcommand, defaults filled in.
    pub params: BTreeMap<&'static str, Value>,
    /// `None` writes to standard output.
    pub output: Option<PathBuf>,
    pub unit: ForceUnit,
    pub workers: Workers,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Help or version text requested; not a failure.
    Help(String),
    Usage(String),
    Io(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => 0,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Help(s) => f.write_str(s),
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Io(s) => write!(f, "i/o error: {s}"),
            CliError::Numerical(s) => write!(f, "numerical error: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

fn value_arg(id: &'static str, help: String) -> Arg {
    Arg::new(id)
        .long(id)
        .num_args(1)
        .allow_hyphen_values(true)
        .action(ArgAction::Set)
        .help(help)
}

fn command() -> Command {
    let mut root = Command::new("squeezeforce")
        .about("Laser-cooling force on two-level atoms in squeezed light")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true);
    for sub in Subcommand::ALL {
        let mut cmd = Command::new(sub.name())
            .about(sub.about())
            .arg(
                value_arg("config", "read `key = value` lines from this file".into())
                    .value_name("PATH"),
            )
            .arg(
                value_arg(
                    "output",
                    "output file, `-` for standard output [default: -]".into(),
                )
                .value_name("PATH"),
            );
        if sub.has_unit() {
            cmd = cmd.arg(value_arg(
                "unit",
                "force unit: half (hbar k gamma / 2) or full [default: half]".into(),
            ));
        }
        if sub.has_workers() {
            cmd = cmd.arg(value_arg(
                "workers",
                format!("worker threads or `auto` (env {WORKERS_ENV}) [default: auto]"),
            ));
        }
        for spec in sub.params() {
            cmd = cmd.arg(value_arg(
                spec.key,
                format!("{} [default: {}]", spec.help, spec.default),
            ));
        }
        root = root.subcommand(cmd);
    }
    root
}

fn parse_workers(s: &str) -> Result<Workers, String> {
    match s.trim() {
        "auto" => Ok(Workers::Auto),
        t => match t.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Workers::Fixed(n)),
            _ => Err(format!(
                "workers must be a positive count or `auto`, got {s:?}"
            )),
        },
    }
}

fn parse_output(s: &str) -> Option<PathBuf> {
    match s.trim() {
        "-" => None,
        t => Some(PathBuf::from(t)),
    }
}

/// Reads a `key = value` file. Blank lines and lines starting with `#` are
/// skipped.
pub fn read_config_file(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "config line {}: expected `key = value`",
                lineno + 1
            ))
        })?;
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

/// Parses `argv` (including the program name), reading the worker
/// environment variable from the process environment.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(WORKERS_ENV).ok();
    parse_args_with_env(argv, env.as_deref())
}

pub fn parse_args_with_env<I, T>(argv: I, workers_env: Option<&str>) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = command()
        .try_get_matches_from(argv)
        .map_err(|e| match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                CliError::Help(e.render().to_string())
            }
            _ => CliError::Usage(
                e.render()
                    .to_string()
                    .trim_start_matches("error: ")
                    .trim_end()
                    .to_string(),
            ),
        })?;
    let (name, sub_matches) = matches
        .subcommand()
        .ok_or_else(|| CliError::Usage("missing subcommand".into()))?;
    let subcommand = Subcommand::from_name(name).expect("registered subcommand");

    let mut raw: BTreeMap<String, String> = BTreeMap::new();
    if subcommand.has_workers() {
        if let Some(w) = workers_env {
            raw.insert("workers".into(), w.to_string());
        }
    }
    if let Some(path) = sub_matches.get_one::<String>("config") {
        for (key, value) in read_config_file(Path::new(path))? {
            if key == "config" || !is_known_key(subcommand, &key) {
                return Err(CliError::Usage(format!(
                    "unknown key {key:?} for {} in {path}",
                    subcommand.name()
                )));
            }
            raw.insert(key, value);
        }
    }
    for id in sub_matches.ids() {
        let id = id.as_str();
        if id == "config" || sub_matches.value_source(id) != Some(ValueSource::CommandLine) {
            continue;
        }
        if let Some(v) = sub_matches.get_one::<String>(id) {
            raw.insert(id.to_string(), v.clone());
        }
    }
    resolve(subcommand, &raw)
}

fn is_known_key(sub: Subcommand, key: &str) -> bool {
    key == "output"
        || (key == "unit" && sub.has_unit())
        || (key == "workers" && sub.has_workers())
        || sub.params().iter().any(|p| p.key == key)
}

fn resolve(subcommand: Subcommand, raw: &BTreeMap<String, String>) -> Result<RunConfig, CliError> {
    let bad = |key: &str, msg: String| CliError::Usage(format!("--{key}: {msg}"));
    let mut params = BTreeMap::new();
    for spec in subcommand.params() {
        let text = raw.get(spec.key).map_or(spec.default, String::as_str);
        params.insert(
            spec.key,
            spec.kind.parse(text).map_err(|m| bad(spec.key, m))?,
        );
    }
    let unit = match raw.get("unit") {
        Some(u) => ForceUnit::from_label(u.trim())
            .ok_or_else(|| bad("unit", format!("expected half or full, got {u:?}")))?,
        None => ForceUnit::Half,
    };
    let workers = match raw.get("workers") {
        Some(w) => parse_workers(w).map_err(|m| bad("workers", m))?,
        None => Workers::Auto,
    };
    let output = raw.get("output").and_then(|o| parse_output(o));
    let config = RunConfig {
        subcommand,
        params,
        output,
        unit,
        workers,
    };
    config.job()?;
    Ok(config)
}

/// Renders `config` back into an argument vector that parses to the same
/// configuration.
pub fn render(config: &RunConfig) -> Vec<String> {
    let mut argv = vec![
        "squeezeforce".to_string(),
        config.subcommand.name().to_string(),
    ];
    for spec in config.subcommand.params() {
        argv.push(format!("--{}", spec.key));
        argv.push(config.params[spec.key].to_string());
    }
    argv.push("--output".into());
    argv.push(
        config
            .output
            .as_ref()
            .map_or_else(|| "-".to_string(), |p| p.display().to_string()),
    );
    if config.subcommand.has_unit() {
        argv.push("--unit".into());
        argv.push(config.unit.label().into());
    }
    if config.subcommand.has_workers() {
        argv.push("--workers".into());
        argv.push(match config.workers {
            Workers::Auto => "auto".into(),
            Workers::Fixed(n) => n.to_string(),
        });
    }
    argv
}

/// A validated unit of work.
#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Fig1(Fig1Params),
    Fig2(Fig2Params),
    Sweep(SweepGrid),
    Crossover(CrossoverParams),
    OpoSpectrum { config: OpoConfig, omega: Axis },
    Doppler { gamma_hz: f64 },
}

impl RunConfig {
    fn real(&self, key: &str) -> f64 {
        match self.params.get(key) {
            Some(Value::Real(x)) => *x,
            other => panic!("parameter {key} is not real: {other:?}"),
        }
    }

    fn count(&self, key: &str) -> usize {
        match self.params.get(key) {
            Some(Value::Count(n)) => *n,
            other => panic!("parameter {key} is not a count: {other:?}"),
        }
    }

    fn averaging(&self) -> crate::force::AveragingMode {
        match self.params.get("averaging") {
            Some(Value::Averaging(m)) => *m,
            other => panic!("averaging missing: {other:?}"),
        }
    }

    fn axis(&self, prefix: &str) -> Axis {
        let (min, max, count) = (
            self.real(&format!("{prefix}-min")),
            self.real(&format!("{prefix}-max")),
            self.count(&format!("{prefix}-count")),
        );
        Axis::linspace(min, max, count)
    }

    /// Builds and validates the job described by this configuration.
    pub fn job(&self) -> Result<Job, CliError> {
        let usage = |e: Error| CliError::Usage(e.to_string());
        let job = match self.subcommand {
            Subcommand::Fig1 => {
                let p = Fig1Params {
                    delta: self.real("delta"),
                    phi: self.real("phi"),
                    degree: self.real("degree"),
                    beta: self.axis("beta"),
                    averaging: self.averaging(),
                };
                p.grid().validate().map_err(usage)?;
                Job::Fig1(p)
            }
            Subcommand::Fig2 => {
                let phi = self.axis("phi");
                let p = Fig2Params {
                    delta: self.real("delta"),
                    beta: self.real("beta"),
                    degree: self.axis("degree"),
                    phi: Axis::periodic(phi.min, phi.max, phi.count),
                    averaging: self.averaging(),
                };
                p.grid().validate().map_err(usage)?;
                Job::Fig2(p)
            }
            Subcommand::Sweep => {
                let (schemes, quadratures) =
                    match (self.params.get("configs"), self.params.get("quadratures")) {
                        (Some(Value::Schemes(s)), Some(Value::Quadratures(q))) => {
                            (s.clone(), q.clone())
                        }
                        other => panic!("sweep curve parameters missing: {other:?}"),
                    };
                let curves = schemes
                    .iter()
                    .flat_map(|&scheme| {
                        quadratures
                            .iter()
                            .map(move |&quadrature| Curve { scheme, quadrature })
                    })
                    .collect();
                let delta = match self.params.get("delta") {
                    Some(Value::Reals(v)) => v.clone(),
                    other => panic!("delta missing: {other:?}"),
                };
                let signed = matches!(self.params.get("signed"), Some(Value::Bool(true)));
                let grid = SweepGrid {
                    degree: self.axis("degree"),
                    phi: self.axis("phi"),
                    delta,
                    beta: self.axis("beta"),
                    curves,
                    averaging: self.averaging(),
                    signed,
                };
                grid.validate().map_err(usage)?;
                Job::Sweep(grid)
            }
            Subcommand::Crossover => {
                let (lo, hi) = (self.real("beta-lo"), self.real("beta-hi"));
                if lo >= hi {
                    return Err(CliError::Usage(format!(
                        "crossover bracket needs beta-lo < beta-hi, got [{lo}, {hi}]"
                    )));
                }
                Job::Crossover(CrossoverParams {
                    delta: self.real("delta"),
                    phi: self.real("phi"),
                    degree: self.real("degree"),
                    bracket: (lo, hi),
                    averaging: self.averaging(),
                })
            }
            Subcommand::OpoSpectrum => {
                let config =
                    OpoConfig::new(self.real("kappa"), self.real("epsilon")).map_err(usage)?;
                let omega = self.axis("omega");
                omega.validate("omega").map_err(usage)?;
                Job::OpoSpectrum { config, omega }
            }
            Subcommand::Doppler => Job::Doppler {
                gamma_hz: self.real("gamma-hz"),
            },
        };
        Ok(job)
    }

    fn delta_warnings(&self) -> Vec<String> {
        let deltas = match self.params.get("delta") {
            Some(Value::Real(d)) => vec![*d],
            Some(Value::Reals(v)) => v.clone(),
            _ => return Vec::new(),
        };
        deltas
            .into_iter()
            .filter_map(|d| DriveParams::new(0.0, d, crate::Quadrature::Noisy).ok())
            .filter_map(|d| d.validity_warning())
            .collect()
    }
}

/// Runs the job and returns the bytes to emit.
pub fn execute(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    let sweeper = Sweeper::new(config.workers);
    let mut out = Vec::new();
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match config.job()? {
        Job::Fig1(p) => csv::emit_csv(&sweeper.fig1(&p)?, config.unit, &mut out).map_err(io)?,
        Job::Fig2(p) => csv::emit_csv(&sweeper.fig2(&p)?, config.unit, &mut out).map_err(io)?,
        Job::Sweep(grid) => {
            csv::emit_csv(&sweeper.run(&grid)?, config.unit, &mut out).map_err(io)?
        }
        Job::Crossover(p) => {
            let r = crate::sweep::find_crossover(&FieldGeometry::default(), &p)?;
            csv::emit_crossover_csv(&r, config.unit, &mut out).map_err(io)?
        }
        Job::OpoSpectrum { config: opo, omega } => {
            let rows = omega
                .values()
                .into_iter()
                .map(|w| opo.spectrum(w).map(|s| (w, s)))
                .collect::<Result<Vec<_>, Error>>()?;
            csv::emit_opo_csv(&rows, &mut out).map_err(io)?
        }
        Job::Doppler { gamma_hz } => {
            let gamma = 2.0 * std::f64::consts::PI * gamma_hz;
            let kelvin = doppler_limit_temperature(gamma)?;
            csv::emit_doppler_csv(gamma_hz, gamma, kelvin, &mut out).map_err(io)?
        }
    }
    Ok(out)
}

/// Parses, runs and writes output. Returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_args(argv).and_then(|config| {
        for w in config.delta_warnings() {
            let _ = writeln!(stderr, "warning: {w}");
        }
        let bytes = execute(&config)?;
        match &config.output {
            None => stdout.write_all(&bytes).and_then(|_| stdout.flush()),
            Some(path) => std::fs::write(path, &bytes),
        }
        .map_err(|e| {
            let dest = config.output.as_ref().map_or_else(
                || "standard output".to_string(),
                |p| p.display().to_string(),
            );
            CliError::Io(format!("cannot write {dest}: {e}"))
        })
    });
    match result {
        Ok(()) => 0,
        Err(CliError::Help(text)) => {
            let _ = write!(stdout, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}
