//! Cooling force on an atom in a standing wave.
//!
//! The Rabi envelope is `Ω(x) = Ω₀ cos(kx)`, whose logarithmic gradient is
//! `q_r = -k tan(kx)`. Forces are reported in units of `ħkγ/2`, where the
//! local force reads
//!
//! ```text
//! F(x) = -2 β₀ sin(kx) ⟨σ_Y⟩(β₀ cos kx)
//! ```
//!
//! The product form never evaluates `tan(kx)`, so nodes of the envelope are
//! harmless. `F` has period λ/2 and is odd about λ/4, so its signed mean over
//! a period vanishes; [`AveragingMode`] picks a magnitude-based average.

use std::f64::consts::PI;

use crate::bloch::{effective_correlation, steady_state, DriveParams, Quadrature, Scheme};
use crate::error::{Error, Result, SteadyStateInputs};
use crate::quadrature::{integrate, QuadratureOptions};
use crate::squeeze::SqueezeParams;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Cs D2 line.
pub const DEFAULT_WAVELENGTH: f64 = 852e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldGeometry {
    wavelength: f64,
}

impl Default for FieldGeometry {
    fn default() -> Self {
        Self {
            wavelength: DEFAULT_WAVELENGTH,
        }
    }
}

impl FieldGeometry {
    pub fn new(wavelength: f64) -> Result<Self> {
        if !wavelength.is_finite() || wavelength <= 0.0 {
            return Err(Error::domain("wavelength", wavelength));
        }
        Ok(Self { wavelength })
    }

    /// Metres.
    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Wavenumber `2π/λ` in rad/m.
    pub fn k(&self) -> f64 {
        2.0 * PI / self.wavelength
    }
}

/// Spatial averaging prescription for the standing-wave force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AveragingMode {
    /// Mean of `|F|` over a half wavelength.
    #[default]
    AbsMean,
    /// Magnitude of the mean of `F` over the first quarter wavelength, where
    /// it keeps one sign.
    QuarterPeriod,
    /// Largest `|F|` over a quarter wavelength.
    PeakLocal,
}

impl AveragingMode {
    pub const ALL: [AveragingMode; 3] = [
        AveragingMode::AbsMean,
        AveragingMode::QuarterPeriod,
        AveragingMode::PeakLocal,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AveragingMode::AbsMean => "absmean",
            AveragingMode::QuarterPeriod => "quarter",
            AveragingMode::PeakLocal => "peak",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.label() == s)
    }
}

/// Output force unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ForceUnit {
    /// `ħkγ/2`
    #[default]
    Half,
    /// `ħkγ`
    Full,
}

impl ForceUnit {
    pub fn label(self) -> &'static str {
        match self {
            ForceUnit::Half => "half",
            ForceUnit::Full => "full",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        [ForceUnit::Half, ForceUnit::Full]
            .into_iter()
            .find(|u| u.label() == s)
    }

    /// Name written to the `force_unit` column.
    pub fn symbol(self) -> &'static str {
        match self {
            ForceUnit::Half => "hbar*k*gamma/2",
            ForceUnit::Full => "hbar*k*gamma",
        }
    }

    /// Multiplier converting a force in `ħkγ/2` into this unit.
    pub fn from_half(self) -> f64 {
        match self {
            ForceUnit::Half => 1.0,
            ForceUnit::Full => 0.5,
        }
    }
}

/// One evaluated force sample with the inputs that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceRecord {
    pub scheme: Scheme,
    pub quadrature: Quadrature,
    pub degree: f64,
    pub phi: f64,
    pub delta: f64,
    pub beta: f64,
    pub averaging: AveragingMode,
    /// Units of `ħkγ/2`.
    pub force: f64,
}

impl ForceRecord {
    pub fn force_in(&self, unit: ForceUnit) -> f64 {
        self.force * unit.from_half()
    }
}

struct LocalForce {
    k: f64,
    beta0: f64,
    base: SteadyStateInputs,
}

impl LocalForce {
    fn new(g: &FieldGeometry, p: &SqueezeParams, d: &DriveParams, scheme: Scheme) -> Self {
        Self {
            k: g.k(),
            beta0: d.beta(),
            base: SteadyStateInputs {
                scheme,
                n: p.n(),
                m: effective_correlation(p, d.quadrature()),
                beta: d.beta(),
                delta: d.delta(),
                phi: p.phi(),
            },
        }
    }

    fn at(&self, x: f64) -> Result<f64> {
        let (sin, cos) = (self.k * x).sin_cos();
        let sigma = steady_state(&SteadyStateInputs {
            beta: self.beta0 * cos,
            ..self.base
        })?;
        Ok(-2.0 * self.beta0 * sin * sigma)
    }
}

/// Local force at position `x` (metres), in units of `ħkγ/2`. The drive's β
/// is the antinode Rabi frequency.
pub fn local_force(
    g: &FieldGeometry,
    p: &SqueezeParams,
    d: &DriveParams,
    x: f64,
    scheme: Scheme,
) -> Result<f64> {
    LocalForce::new(g, p, d, scheme).at(x)
}

/// Spatially averaged force magnitude in units of `ħkγ/2`.
pub fn averaged_force(
    g: &FieldGeometry,
    p: &SqueezeParams,
    d: &DriveParams,
    scheme: Scheme,
    mode: AveragingMode,
) -> Result<f64> {
    let local = LocalForce::new(g, p, d, scheme);
    let lambda = g.wavelength();
    let opts = QuadratureOptions::default();
    match mode {
        AveragingMode::AbsMean => {
            let half = lambda / 2.0;
            let r = integrate(|x| local.at(x).map(f64::abs), 0.0, half, &opts)?;
            Ok(r.value / half)
        }
        AveragingMode::QuarterPeriod => {
            let quarter = lambda / 4.0;
            let r = integrate(|x| local.at(x), 0.0, quarter, &opts)?;
            Ok((r.value / quarter).abs())
        }
        AveragingMode::PeakLocal => peak_magnitude(&local, lambda / 4.0),
    }
}

/// [`averaged_force`] carrying the sign of `⟨σ_Y⟩`, which is uniform across
/// the standing wave. Flipping `φ → -φ` at resonance flips the result.
pub fn signed_averaged_force(
    g: &FieldGeometry,
    p: &SqueezeParams,
    d: &DriveParams,
    scheme: Scheme,
    mode: AveragingMode,
) -> Result<f64> {
    let magnitude = averaged_force(g, p, d, scheme, mode)?;
    let sigma = steady_state(&LocalForce::new(g, p, d, scheme).base)?;
    Ok(if sigma > 0.0 {
        magnitude
    } else if sigma < 0.0 {
        -magnitude
    } else {
        0.0
    })
}

const PEAK_SCAN: usize = 256;

fn peak_magnitude(local: &LocalForce, width: f64) -> Result<f64> {
    let step = width / PEAK_SCAN as f64;
    let mut best = (0usize, 0.0f64);
    for i in 0..=PEAK_SCAN {
        let v = local.at(i as f64 * step)?.abs();
        if v > best.1 {
            best = (i, v);
        }
    }
    if best.1 == 0.0 {
        return Ok(0.0);
    }
    // golden-section polish on the neighbouring cells
    let mut lo = best.0.saturating_sub(1) as f64 * step;
    let mut hi = ((best.0 + 1).min(PEAK_SCAN)) as f64 * step;
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let mut fc = local.at(c)?.abs();
    let mut fd = local.at(d)?.abs();
    while hi - lo > 1e-13 * width {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = local.at(c)?.abs();
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = local.at(d)?.abs();
        }
    }
    Ok(best.1.max(fc).max(fd))
}

/// Doppler-limit temperature `ħγ / 2k_B` in kelvin for a decay rate in rad/s.
pub fn doppler_limit_temperature(gamma: f64) -> Result<f64> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::domain("decay rate gamma", gamma));
    }
    Ok(HBAR * gamma / (2.0 * BOLTZMANN))
}
