//! Parameter tables for every subcommand.

use std::f64::consts::PI;
use std::fmt;

use crate::bloch::{Quadrature, Scheme};
use crate::force::AveragingMode;

/// How a parameter string is parsed and validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Real,
    NonNegative,
    Positive,
    /// `[0, 1)`
    Fraction,
    /// Radians, or `<x>pi`.
    Angle,
    /// Integer ≥ 1.
    Count,
    /// Comma-separated reals.
    Reals,
    Schemes,
    Quadratures,
    Averaging,
    Bool,
}

/// A parsed parameter value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Count(usize),
    Reals(Vec<f64>),
    Schemes(Vec<Scheme>),
    Quadratures(Vec<Quadrature>),
    Averaging(AveragingMode),
    Bool(bool),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join<T>(
            f: &mut fmt::Formatter<'_>,
            items: &[T],
            show: impl Fn(&T) -> String,
        ) -> fmt::Result {
            let parts: Vec<String> = items.iter().map(show).collect();
            f.write_str(&parts.join(","))
        }
        match self {
            Value::Real(x) => write!(f, "{x}"),
            Value::Count(n) => write!(f, "{n}"),
            Value::Reals(v) => join(f, v, |x| x.to_string()),
            Value::Schemes(v) => join(f, v, |s| s.label().to_string()),
            Value::Quadratures(v) => join(f, v, |q| q.label().to_string()),
            Value::Averaging(m) => f.write_str(m.label()),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("not a number: {s:?}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("not a finite number: {s:?}"))
    }
}

/// Parses radians, accepting a trailing `pi` as a multiplier (`0.8pi`, `-pi`).
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    match t.strip_suffix("pi") {
        Some(coef) => {
            let c = match coef.trim() {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => parse_real(c.strip_suffix('*').unwrap_or(c))?,
            };
            Ok(c * PI)
        }
        None => parse_real(t),
    }
}

fn parse_list<T>(s: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    let items = s
        .split(',')
        .map(|p| item(p.trim()))
        .collect::<Result<Vec<T>, String>>()?;
    if items.is_empty() {
        return Err("empty list".into());
    }
    Ok(items)
}

impl Kind {
    pub fn parse(self, s: &str) -> Result<Value, String> {
        let v = match self {
            Kind::Real | Kind::Angle => Value::Real(if self == Kind::Angle {
                parse_angle(s)?
            } else {
                parse_real(s)?
            }),
            Kind::NonNegative => {
                let x = parse_real(s)?;
                if x < 0.0 {
                    return Err(format!("must be >= 0, got {x}"));
                }
                Value::Real(x)
            }
            Kind::Positive => {
                let x = parse_real(s)?;
                if x <= 0.0 {
                    return Err(format!("must be > 0, got {x}"));
                }
                Value::Real(x)
            }
            Kind::Fraction => {
                let x = parse_real(s)?;
                if !(0.0..1.0).contains(&x) {
                    return Err(format!("must lie in [0, 1), got {x}"));
                }
                Value::Real(x)
            }
            Kind::Count => {
                let n: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| format!("not a count: {s:?}"))?;
                if n == 0 {
                    return Err("count must be at least 1".into());
                }
                Value::Count(n)
            }
            Kind::Reals => Value::Reals(parse_list(s, parse_real)?),
            Kind::Schemes => Value::Schemes(parse_list(s, |p| {
                Scheme::from_label(p).ok_or_else(|| format!("unknown config {p:?} (sc, svsc)"))
            })?),
            Kind::Quadratures => Value::Quadratures(parse_list(s, |p| {
                Quadrature::from_label(p)
                    .ok_or_else(|| format!("unknown quadrature {p:?} (noisy, quiet)"))
            })?),
            Kind::Averaging => Value::Averaging(
                AveragingMode::from_label(s.trim())
                    .ok_or_else(|| format!("unknown averaging {s:?} (absmean, quarter, peak)"))?,
            ),
            Kind::Bool => Value::Bool(match s.trim() {
                "true" | "yes" | "1" => true,
                "false" | "no" | "0" => false,
                other => return Err(format!("not a boolean: {other:?}")),
            }),
        };
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub help: &'static str,
}

const fn p(key: &'static str, kind: Kind, default: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec {
        key,
        kind,
        default,
        help,
    }
}

const AVERAGING: ParamSpec = p(
    "averaging",
    Kind::Averaging,
    "absmean",
    "spatial averaging: absmean, quarter or peak",
);

pub const FIG1: &[ParamSpec] = &[
    p("delta", Kind::Real, "0", "normalized detuning"),
    p("phi", Kind::Angle, "0.8pi", "squeezed-field phase"),
    p("degree", Kind::Fraction, "0.75", "degree of squeezing"),
    p("beta-min", Kind::NonNegative, "0", "first Rabi frequency"),
    p("beta-max", Kind::NonNegative, "20", "last Rabi frequency"),
    p("beta-count", Kind::Count, "200", "Rabi frequency samples"),
    AVERAGING,
];

pub const FIG2: &[ParamSpec] = &[
    p("delta", Kind::Real, "0", "normalized detuning"),
    p("beta", Kind::NonNegative, "10", "Rabi frequency"),
    p(
        "degree-min",
        Kind::Fraction,
        "0",
        "first degree of squeezing",
    ),
    p(
        "degree-max",
        Kind::Fraction,
        "0.95",
        "last degree of squeezing",
    ),
    p("degree-count", Kind::Count, "96", "degree samples"),
    p("phi-min", Kind::Angle, "0", "phase range start"),
    p("phi-max", Kind::Angle, "2pi", "phase range end (excluded)"),
    p("phi-count", Kind::Count, "128", "phase samples"),
    AVERAGING,
];

pub const SWEEP: &[ParamSpec] = &[
    p("beta-min", Kind::NonNegative, "0", "first Rabi frequency"),
    p("beta-max", Kind::NonNegative, "20", "last Rabi frequency"),
    p("beta-count", Kind::Count, "200", "Rabi frequency samples"),
    p("delta", Kind::Reals, "0,0.1", "comma-separated detunings"),
    p("phi-min", Kind::Angle, "0.8pi", "first phase"),
    p("phi-max", Kind::Angle, "0.8pi", "last phase"),
    p("phi-count", Kind::Count, "1", "phase samples"),
    p(
        "degree-min",
        Kind::Fraction,
        "0.75",
        "first degree of squeezing",
    ),
    p(
        "degree-max",
        Kind::Fraction,
        "0.75",
        "last degree of squeezing",
    ),
    p("degree-count", Kind::Count, "1", "degree samples"),
    p(
        "configs",
        Kind::Schemes,
        "sc,svsc",
        "driving configurations",
    ),
    p(
        "quadratures",
        Kind::Quadratures,
        "noisy,quiet",
        "reservoir quadratures",
    ),
    AVERAGING,
    p(
        "signed",
        Kind::Bool,
        "false",
        "sign forces by the Bloch component",
    ),
];

pub const CROSSOVER: &[ParamSpec] = &[
    p("delta", Kind::Real, "0", "normalized detuning"),
    p("phi", Kind::Angle, "0.8pi", "squeezed-field phase"),
    p("degree", Kind::Fraction, "0.75", "degree of squeezing"),
    p("beta-lo", Kind::NonNegative, "0.5", "bracket start"),
    p("beta-hi", Kind::NonNegative, "10", "bracket end"),
    AVERAGING,
];

pub const OPO_SPECTRUM: &[ParamSpec] = &[
    p("kappa", Kind::Positive, "2", "cavity decay constant"),
    p(
        "epsilon",
        Kind::NonNegative,
        "0.5",
        "amplification factor, below kappa/2",
    ),
    p("omega-min", Kind::Real, "-10", "first frequency offset"),
    p("omega-max", Kind::Real, "10", "last frequency offset"),
    p("omega-count", Kind::Count, "201", "frequency samples"),
];

pub const DOPPLER: &[ParamSpec] = &[p(
    "gamma-hz",
    Kind::Positive,
    "5.22e6",
    "natural linewidth gamma/2pi in Hz",
)];
