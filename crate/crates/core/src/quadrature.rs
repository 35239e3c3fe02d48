//! Composite Gauss–Legendre quadrature with panel doubling.
//!
//! The interval is split into `2^k` equal panels, each integrated with an
//! 8-point Gauss–Legendre rule. `k` grows until two successive estimates agree
//! to the requested tolerance. The integrand may fail; its error is returned
//! unchanged.

use crate::error::{Error, Result};

// Abscissae and weights of the 8-point rule on [-1, 1], positive half.
const NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Panel count of the first estimate is `2^min_level`.
    pub min_level: u32,
    /// Refinement stops with an error past `2^max_level` panels.
    pub max_level: u32,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 0.0,
            min_level: 1,
            max_level: 16,
        }
    }
}

/// A converged estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Panels used for `value`.
    pub panels: usize,
    /// `|value - estimate with panels / 2|`.
    pub change: f64,
}

/// Fixed composite rule with `panels` equal panels.
pub fn composite<F>(f: &mut F, a: f64, b: f64, panels: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let h = (b - a) / panels as f64;
    let half = h / 2.0;
    let mut total = 0.0;
    for i in 0..panels {
        let mid = a + (i as f64 + 0.5) * h;
        let mut panel = 0.0;
        for (x, w) in NODES.iter().zip(WEIGHTS) {
            panel += w * (f(mid - half * x)? + f(mid + half * x)?);
        }
        total += panel;
    }
    Ok(total * half)
}

/// Integrates `f` over `[a, b]`, doubling the panel count until the estimate
/// settles.
pub fn integrate<F>(mut f: F, a: f64, b: f64, opts: &QuadratureOptions) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut panels = 1usize << opts.min_level;
    let mut prev = composite(&mut f, a, b, panels)?;
    let mut achieved = f64::INFINITY;
    for _ in opts.min_level..opts.max_level {
        panels *= 2;
        let value = composite(&mut f, a, b, panels)?;
        let change = (value - prev).abs();
        if change <= opts.rel_tol * value.abs() || change <= opts.abs_tol {
            return Ok(Integral {
                value,
                panels,
                change,
            });
        }
        achieved = change / value.abs();
        prev = value;
    }
    Err(Error::QuadratureNotConverged { achieved, panels })
}
