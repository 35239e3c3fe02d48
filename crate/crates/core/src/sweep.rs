//! Parameter-grid evaluation and the crossover finder.
//!
//! Every grid point is an independent task. Results land in slots indexed by
//! grid position, so the output is identical for any worker count.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::bloch::{DriveParams, Quadrature, Scheme};
use crate::error::{Error, Result};
use crate::force::{
    averaged_force, signed_averaged_force, AveragingMode, FieldGeometry, ForceRecord,
};
use crate::squeeze::SqueezeParams;

/// Largest grid a sweep accepts.
pub const MAX_GRID_POINTS: usize = 100_000_000;

/// A sampled parameter axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    /// Periodic axes leave out `max`, which coincides with `min`.
    pub periodic: bool,
}

impl Axis {
    pub fn fixed(value: f64) -> Self {
        Self {
            min: value,
            max: value,
            count: 1,
            periodic: false,
        }
    }

    /// `count` points from `min` to `max` inclusive.
    pub fn linspace(min: f64, max: f64, count: usize) -> Self {
        Self {
            min,
            max,
            count,
            periodic: false,
        }
    }

    /// `count` points covering `[min, max)`.
    pub fn periodic(min: f64, max: f64, count: usize) -> Self {
        Self {
            min,
            max,
            count,
            periodic: true,
        }
    }

    pub fn validate(&self, name: &str) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidGrid(format!("{name} bounds must be finite")));
        }
        match self.count {
            0 => Err(Error::InvalidGrid(format!("{name} axis has no points"))),
            1 if self.min != self.max => Err(Error::InvalidGrid(format!(
                "{name} axis with one point needs min == max"
            ))),
            1 => Ok(()),
            _ if self.min >= self.max => Err(Error::InvalidGrid(format!(
                "{name} axis needs min < max, got [{}, {}]",
                self.min, self.max
            ))),
            _ => Ok(()),
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 {
            return self.min;
        }
        let span = self.max - self.min;
        if self.periodic {
            self.min + span * i as f64 / self.count as f64
        } else if i + 1 == self.count {
            self.max
        } else {
            self.min + span * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// One force curve: a driving scheme seen through one reservoir quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Curve {
    pub scheme: Scheme,
    pub quadrature: Quadrature,
}

impl Curve {
    /// With squeezed vacuum, noisy quadrature.
    pub const SOLID: Curve = Curve {
        scheme: Scheme::SqueezedVacuum,
        quadrature: Quadrature::Noisy,
    };
    /// With squeezed vacuum, quiet quadrature.
    pub const DOTTED: Curve = Curve {
        scheme: Scheme::SqueezedVacuum,
        quadrature: Quadrature::Quiet,
    };
    /// Squeezed-coherent light alone. The correlation enters with its
    /// magnitude, i.e. through the noisy-quadrature sign.
    pub const DASHED: Curve = Curve {
        scheme: Scheme::SqueezedCoherent,
        quadrature: Quadrature::Noisy,
    };
}

/// Full parameter grid. Rows are ordered degree, phi, delta, beta, curve,
/// with the last varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub degree: Axis,
    pub phi: Axis,
    pub delta: Vec<f64>,
    pub beta: Axis,
    pub curves: Vec<Curve>,
    pub averaging: AveragingMode,
    /// Report forces signed by `⟨σ_Y⟩` instead of as magnitudes.
    pub signed: bool,
}

/// Coordinates of one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub index: usize,
    pub degree: f64,
    pub phi: f64,
    pub delta: f64,
    pub beta: f64,
    pub curve: Curve,
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "#{} config={} quadrature={} degree={} phi={} delta={} beta={}",
            self.index,
            self.curve.scheme.label(),
            self.curve.quadrature.label(),
            self.degree,
            self.phi,
            self.delta,
            self.beta
        )
    }
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        self.beta.validate("beta")?;
        self.phi.validate("phi")?;
        self.degree.validate("degree")?;
        if self.beta.min < 0.0 {
            return Err(Error::InvalidGrid("beta must be non-negative".into()));
        }
        if self.degree.min < 0.0 || self.degree.max >= 1.0 {
            return Err(Error::InvalidGrid("degree must lie in [0, 1)".into()));
        }
        if self.delta.is_empty() || self.delta.iter().any(|d| !d.is_finite()) {
            return Err(Error::InvalidGrid(
                "delta needs at least one finite value".into(),
            ));
        }
        if self.curves.is_empty() {
            return Err(Error::InvalidGrid("no curves selected".into()));
        }
        self.point_count()?;
        Ok(())
    }

    /// Number of grid points, bounded by [`MAX_GRID_POINTS`].
    pub fn point_count(&self) -> Result<usize> {
        [
            self.degree.count,
            self.phi.count,
            self.delta.len(),
            self.beta.count,
            self.curves.len(),
        ]
        .into_iter()
        .try_fold(1usize, |acc, n| acc.checked_mul(n))
        .filter(|&n| n <= MAX_GRID_POINTS)
        .ok_or_else(|| Error::InvalidGrid(format!("grid exceeds {MAX_GRID_POINTS} points")))
    }

    pub fn point(&self, index: usize) -> GridPoint {
        let mut rest = index;
        let mut take = |n: usize| {
            let i = rest % n;
            rest /= n;
            i
        };
        let curve = self.curves[take(self.curves.len())];
        let beta = self.beta.value(take(self.beta.count));
        let delta = self.delta[take(self.delta.len())];
        let phi = self.phi.value(take(self.phi.count));
        let degree = self.degree.value(take(self.degree.count));
        GridPoint {
            index,
            degree,
            phi,
            delta,
            beta,
            curve,
        }
    }
}

/// Evaluates a single grid point.
pub fn evaluate_point(
    geometry: &FieldGeometry,
    pt: &GridPoint,
    averaging: AveragingMode,
    signed: bool,
) -> Result<ForceRecord> {
    let p = SqueezeParams::from_degree(pt.degree, pt.phi)?;
    let d = DriveParams::new(pt.beta, pt.delta, pt.curve.quadrature)?;
    let force = if signed {
        signed_averaged_force(geometry, &p, &d, pt.curve.scheme, averaging)?
    } else {
        averaged_force(geometry, &p, &d, pt.curve.scheme, averaging)?
    };
    Ok(ForceRecord {
        scheme: pt.curve.scheme,
        quadrature: pt.curve.quadrature,
        degree: pt.degree,
        phi: pt.phi,
        delta: pt.delta,
        beta: pt.beta,
        averaging,
        force,
    })
}

/// Worker-count selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Workers {
    /// One worker per available core.
    #[default]
    Auto,
    Fixed(usize),
}

impl Workers {
    pub fn resolve(self) -> usize {
        match self {
            Workers::Auto => std::thread::available_parallelism().map_or(1, |n| n.get()),
            Workers::Fixed(n) => n.max(1),
        }
    }
}

/// Parallel grid evaluator.
#[derive(Debug, Clone, Default)]
pub struct Sweeper {
    pub geometry: FieldGeometry,
    pub workers: Workers,
}

impl Sweeper {
    pub fn new(workers: Workers) -> Self {
        Self {
            geometry: FieldGeometry::default(),
            workers,
        }
    }

    /// Evaluates every point of `grid` in row order. On failure, the error of
    /// the lowest-index failing point is returned.
    pub fn run(&self, grid: &SweepGrid) -> Result<Vec<ForceRecord>> {
        grid.validate()?;
        let len = grid.point_count()?;
        let eval = |i: usize| {
            let pt = grid.point(i);
            evaluate_point(&self.geometry, &pt, grid.averaging, grid.signed).map_err(|e| {
                Error::AtGridPoint {
                    point: pt.to_string(),
                    source: Box::new(e),
                }
            })
        };
        let slots: Vec<Result<ForceRecord>> = match self.workers.resolve() {
            1 => (0..len).map(eval).collect(),
            n => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .expect("failed to start worker pool");
                pool.install(|| (0..len).into_par_iter().map(eval).collect())
            }
        };
        slots.into_iter().collect()
    }

    pub fn fig1(&self, params: &Fig1Params) -> Result<Vec<ForceRecord>> {
        self.run(&params.grid())
    }

    pub fn fig2(&self, params: &Fig2Params) -> Result<Vec<ForceRecord>> {
        self.run(&params.grid())
    }
}

/// Force against Rabi frequency for the three curves, solid/dotted/dashed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig1Params {
    pub delta: f64,
    pub phi: f64,
    pub degree: f64,
    pub beta: Axis,
    pub averaging: AveragingMode,
}

impl Default for Fig1Params {
    fn default() -> Self {
        Self {
            delta: 0.0,
            phi: 0.8 * PI,
            degree: 0.75,
            beta: Axis::linspace(0.0, 20.0, 200),
            averaging: AveragingMode::AbsMean,
        }
    }
}

impl Fig1Params {
    pub fn grid(&self) -> SweepGrid {
        SweepGrid {
            degree: Axis::fixed(self.degree),
            phi: Axis::fixed(self.phi),
            delta: vec![self.delta],
            beta: self.beta,
            curves: vec![Curve::SOLID, Curve::DOTTED, Curve::DASHED],
            averaging: self.averaging,
            signed: false,
        }
    }
}

/// Signed squeezed-vacuum force over degree of squeezing and phase, noisy
/// quadrature. Degree is the outer axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig2Params {
    pub delta: f64,
    pub beta: f64,
    pub degree: Axis,
    pub phi: Axis,
    pub averaging: AveragingMode,
}

impl Default for Fig2Params {
    fn default() -> Self {
        Self {
            delta: 0.0,
            beta: 10.0,
            degree: Axis::linspace(0.0, 0.95, 96),
            phi: Axis::periodic(0.0, 2.0 * PI, 128),
            averaging: AveragingMode::AbsMean,
        }
    }
}

impl Fig2Params {
    pub fn grid(&self) -> SweepGrid {
        SweepGrid {
            degree: self.degree,
            phi: self.phi,
            delta: vec![self.delta],
            beta: Axis::fixed(self.beta),
            curves: vec![Curve::SOLID],
            averaging: self.averaging,
            signed: true,
        }
    }
}

/// Where the squeezed-vacuum force overtakes the squeezed-coherent one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverResult {
    pub beta_star: f64,
    /// Search bracket.
    pub bracket: (f64, f64),
    /// `|F_sv - F|` at `beta_star`.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverParams {
    pub delta: f64,
    pub phi: f64,
    pub degree: f64,
    pub bracket: (f64, f64),
    pub averaging: AveragingMode,
}

impl Default for CrossoverParams {
    fn default() -> Self {
        Self {
            delta: 0.0,
            phi: 0.8 * PI,
            degree: 0.75,
            bracket: (0.5, 10.0),
            averaging: AveragingMode::AbsMean,
        }
    }
}

pub const CROSSOVER_TOL: f64 = 1e-10;
const CROSSOVER_MAX_ITER: usize = 200;

/// `F_sv(β) - F(β)`: solid minus dashed curve.
pub fn force_gap(
    geometry: &FieldGeometry,
    p: &SqueezeParams,
    delta: f64,
    beta: f64,
    averaging: AveragingMode,
) -> Result<f64> {
    let d = DriveParams::new(beta, delta, Quadrature::Noisy)?;
    let with_vacuum = averaged_force(geometry, p, &d, Scheme::SqueezedVacuum, averaging)?;
    let without = averaged_force(geometry, p, &d, Scheme::SqueezedCoherent, averaging)?;
    Ok(with_vacuum - without)
}

/// Root of [`force_gap`] inside the bracket: secant steps, replaced by
/// bisection whenever a step would leave the current sign-change interval.
pub fn find_crossover(
    geometry: &FieldGeometry,
    params: &CrossoverParams,
) -> Result<CrossoverResult> {
    let (lo, hi) = params.bracket;
    if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo < hi) {
        return Err(Error::InvalidGrid(format!(
            "bad crossover bracket [{lo}, {hi}]"
        )));
    }
    let p = SqueezeParams::from_degree(params.degree, params.phi)?;
    let g = |beta: f64| force_gap(geometry, &p, params.delta, beta, params.averaging);

    let (mut a, mut b) = (lo, hi);
    let (mut ga, mut gb) = (g(a)?, g(b)?);
    let no_crossover = Error::NoCrossover {
        lo,
        hi,
        g_lo: ga,
        g_hi: gb,
    };
    if ga == 0.0 && gb == 0.0 {
        return Err(no_crossover);
    }
    let done = |beta: f64, gap: f64, iterations: usize| CrossoverResult {
        beta_star: beta,
        bracket: (lo, hi),
        residual: gap.abs(),
        iterations,
    };
    if ga.abs() < CROSSOVER_TOL {
        return Ok(done(a, ga, 0));
    }
    if gb.abs() < CROSSOVER_TOL {
        return Ok(done(b, gb, 0));
    }
    if ga.signum() == gb.signum() {
        return Err(no_crossover);
    }

    // last two iterates for the secant
    let (mut x0, mut g0, mut x1, mut g1) = (a, ga, b, gb);
    for iter in 1..=CROSSOVER_MAX_ITER {
        let secant = x1 - g1 * (x1 - x0) / (g1 - g0);
        let x = if secant.is_finite() && secant > a && secant < b {
            secant
        } else {
            0.5 * (a + b)
        };
        let gx = g(x)?;
        if gx.abs() < CROSSOVER_TOL {
            return Ok(done(x, gx, iter));
        }
        if gx.signum() == ga.signum() {
            a = x;
            ga = gx;
        } else {
            b = x;
            gb = gx;
        }
        (x0, g0, x1, g1) = (x1, g1, x, gx);
        if b - a <= 4.0 * f64::EPSILON * b.abs() {
            let (beta, residual) = if ga.abs() < gb.abs() {
                (a, ga)
            } else {
                (b, gb)
            };
            return Err(Error::CrossoverStalled {
                beta,
                residual: residual.abs(),
            });
        }
    }
    let (beta, residual) = if ga.abs() < gb.abs() {
        (a, ga)
    } else {
        (b, gb)
    };
    Err(Error::CrossoverStalled {
        beta,
        residual: residual.abs(),
    })
}
