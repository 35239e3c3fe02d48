//! Steady-state dispersive Bloch component `⟨σ_Y⟩` of a driven two-level atom.
//!
//! Two driving configurations are modelled, both in units where γ = 1:
//!
//! * [`Scheme::SqueezedCoherent`]: the atom is driven by squeezed-coherent light
//!   and decays into the ordinary vacuum.
//! * [`Scheme::SqueezedVacuum`]: in addition, the dipole decays into a squeezed
//!   vacuum reservoir. The reservoir quadrature seen by the dipole
//!   ([`Quadrature`]) fixes the sign of the effective correlation `m`, so that
//!   `n/2 + m` equals the corresponding decay rate `γ_x` or `γ_y`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result, SteadyStateInputs};
use crate::squeeze::SqueezeParams;

/// Reservoir quadrature selected by the relative phase Φ between the driving
/// field and the squeezed vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrature {
    /// Out-of-phase quadrature, Φ = 0 or π. Enhanced decay `γ_x`.
    Noisy,
    /// In-phase quadrature, Φ = π/2. Reduced decay `γ_y`.
    Quiet,
}

impl Quadrature {
    pub const ALL: [Quadrature; 2] = [Quadrature::Noisy, Quadrature::Quiet];

    /// Representative relative phase Φ.
    pub fn phase(self) -> f64 {
        match self {
            Quadrature::Noisy => 0.0,
            Quadrature::Quiet => FRAC_PI_2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Quadrature::Noisy => "noisy",
            Quadrature::Quiet => "quiet",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|q| q.label() == s)
    }
}

/// Driving configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// Squeezed-coherent drive only.
    SqueezedCoherent,
    /// Squeezed vacuum plus squeezed-coherent drive.
    SqueezedVacuum,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::SqueezedCoherent, Scheme::SqueezedVacuum];

    pub fn label(self) -> &'static str {
        match self {
            Scheme::SqueezedCoherent => "sc",
            Scheme::SqueezedVacuum => "svsc",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == s)
    }
}

/// Normalized drive: `β = Ω/γ`, `Δ = δ/γ`, and the reservoir quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    beta: f64,
    delta: f64,
    quadrature: Quadrature,
}

impl DriveParams {
    pub fn new(beta: f64, delta: f64, quadrature: Quadrature) -> Result<Self> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::domain("Rabi frequency beta", beta));
        }
        if !delta.is_finite() {
            return Err(Error::domain("detuning delta", delta));
        }
        Ok(Self {
            beta,
            delta,
            quadrature,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn quadrature(&self) -> Quadrature {
        self.quadrature
    }

    pub fn with_beta(self, beta: f64) -> Result<Self> {
        Self::new(beta, self.delta, self.quadrature)
    }

    /// The steady states assume a detuning small compared to γ. Returns a
    /// message when `|Δ| >= 1`; this is advisory only.
    pub fn validity_warning(&self) -> Option<String> {
        (self.delta.abs() >= 1.0).then(|| {
            format!(
                "|delta| = {} is not small compared to the natural linewidth",
                self.delta.abs()
            )
        })
    }
}

/// One evaluated steady-state component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochY {
    pub value: f64,
    pub scheme: Scheme,
}

/// Signed correlation entering the steady states: `+|M|` for the noisy
/// quadrature, `-|M|` for the quiet one.
pub fn effective_correlation(p: &SqueezeParams, quadrature: Quadrature) -> f64 {
    match quadrature {
        Quadrature::Noisy => p.m_corr(),
        Quadrature::Quiet => -p.m_corr(),
    }
}

/// `⟨σ_Y⟩` under squeezed-coherent driving.
pub fn sigma_y_sc(p: &SqueezeParams, d: &DriveParams) -> Result<BlochY> {
    sigma_y(Scheme::SqueezedCoherent, p, d)
}

/// `⟨σ_Y⟩` with the squeezed vacuum reservoir.
pub fn sigma_y_svsc(p: &SqueezeParams, d: &DriveParams) -> Result<BlochY> {
    sigma_y(Scheme::SqueezedVacuum, p, d)
}

pub fn sigma_y(scheme: Scheme, p: &SqueezeParams, d: &DriveParams) -> Result<BlochY> {
    let inputs = SteadyStateInputs {
        scheme,
        n: p.n(),
        m: effective_correlation(p, d.quadrature),
        beta: d.beta,
        delta: d.delta,
        phi: p.phi(),
    };
    let value = steady_state(&inputs)?;
    if value.abs() > 1.0 {
        return Err(Error::BlochBound { value, inputs });
    }
    Ok(BlochY { value, scheme })
}

/// Evaluates the steady state for raw inputs. `beta` may be negative here,
/// which is how a standing-wave envelope passes through its nodes; the result
/// is odd in `beta`.
pub(crate) fn steady_state(s: &SteadyStateInputs) -> Result<f64> {
    let (num, den) = match s.scheme {
        Scheme::SqueezedCoherent => sc_terms(s),
        Scheme::SqueezedVacuum => svsc_terms(s),
    };
    if den.is_nan() || den <= 0.0 {
        return Err(Error::DegenerateDenominator {
            denominator: den,
            inputs: *s,
        });
    }
    Ok(num / den)
}

// β(Δ + m sinφ) / 2D̃,  D̃ = n(n²/4 + Δ² - m²) + β²(n/2 + m cosφ)
fn sc_terms(s: &SteadyStateInputs) -> (f64, f64) {
    let SteadyStateInputs {
        n,
        m,
        beta,
        delta,
        phi,
        ..
    } = *s;
    let (sin, cos) = phi.sin_cos();
    let num = beta * (delta + m * sin);
    let den = n * (n * n / 4.0 + delta * delta - m * m) + beta * beta * (n / 2.0 + m * cos);
    (num, 2.0 * den)
}

// ½β[Δ + 2m(n/2 + m) sinφ] / D,  D = (n/2)[β² + 2Δ² + (n/2 + m)²] + β² m cosφ
fn svsc_terms(s: &SteadyStateInputs) -> (f64, f64) {
    let SteadyStateInputs {
        n,
        m,
        beta,
        delta,
        phi,
        ..
    } = *s;
    let (sin, cos) = phi.sin_cos();
    let rate = n / 2.0 + m;
    let num = 0.5 * beta * (delta + 2.0 * m * rate * sin);
    let den = n / 2.0 * (beta * beta + 2.0 * delta * delta + rate * rate) + beta * beta * m * cos;
    (num, den)
}
