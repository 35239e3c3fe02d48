//! Squeezed-field moments, ideal degenerate-OPO spectra and the dipole decay
//! rates of an atom coupled to a squeezed bath.
//!
//! All rates are expressed in units of the natural decay rate γ.

use crate::error::{Error, Result};

/// Tolerance for algebraic identities of direct formulas.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Photon number `N`, two-photon correlation `|M|` and phase `φ` of a squeezed field.
///
/// Ideal (pure) states saturate `|M|² = N(N+1)` and carry a squeeze factor
/// `r` with `N = sinh²r`, `|M| = sinh r cosh r`. Lossy states are built from
/// their moments and only satisfy the inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    r: Option<f64>,
    n_photons: f64,
    m_corr: f64,
    phi: f64,
}

impl SqueezeParams {
    /// Ideal squeezed state with squeeze factor `r`.
    pub fn from_r(r: f64, phi: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::domain("squeeze factor r", r));
        }
        check_phase(phi)?;
        let (sh, ch) = (r.sinh(), r.cosh());
        Ok(Self {
            r: Some(r),
            n_photons: sh * sh,
            m_corr: sh * ch,
            phi,
        })
    }

    /// Ideal squeezed state with degree of squeezing `s = 1 - e^{-2r}`.
    pub fn from_degree(s: f64, phi: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&s) {
            return Err(Error::domain("degree of squeezing", s));
        }
        Self::from_r(-(-s).ln_1p() / 2.0, phi)
    }

    /// State given directly by its moments. The quantum bound
    /// `|M|² <= N(N+1)` is enforced; a state that saturates it is ideal.
    pub fn from_moments(n_photons: f64, m_corr: f64, phi: f64) -> Result<Self> {
        check_phase(phi)?;
        match validate_moments(n_photons, m_corr)? {
            MomentCheck::Violated { excess } => Err(Error::MomentBound { excess }),
            MomentCheck::Satisfied => {
                let gap = m_corr * m_corr - n_photons * (n_photons + 1.0);
                let ideal = gap.abs() <= IDENTITY_TOL * m_corr.mul_add(m_corr, 1.0);
                Ok(Self {
                    r: ideal.then(|| n_photons.sqrt().asinh()),
                    n_photons,
                    m_corr,
                    phi,
                })
            }
        }
    }

    /// Squeeze factor, defined only for ideal states.
    pub fn squeeze_factor(&self) -> Option<f64> {
        self.r
    }

    pub fn is_ideal(&self) -> bool {
        self.r.is_some()
    }

    /// Mean photon number `N`.
    pub fn n_photons(&self) -> f64 {
        self.n_photons
    }

    /// Two-photon correlation magnitude `|M|`.
    pub fn m_corr(&self) -> f64 {
        self.m_corr
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `n = 1 + 2N`.
    pub fn n(&self) -> f64 {
        2.0f64.mul_add(self.n_photons, 1.0)
    }

    pub fn with_phi(self, phi: f64) -> Result<Self> {
        check_phase(phi)?;
        Ok(Self { phi, ..self })
    }

    /// Degree of squeezing `2(|M| - N)`; equals `1 - e^{-2r}` for ideal states.
    pub fn degree(&self) -> f64 {
        2.0 * (self.m_corr - self.n_photons)
    }

    pub fn decay_rates(&self) -> DecayRates {
        let base = self.n_photons + 0.5;
        DecayRates {
            gamma_x: base + self.m_corr,
            gamma_y: base - self.m_corr,
        }
    }
}

fn check_phase(phi: f64) -> Result<()> {
    if phi.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("phase", phi))
    }
}

/// Outcome of checking `M² <= N(N+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentCheck {
    Satisfied,
    /// `excess = M² - N(N+1) > 0`.
    Violated {
        excess: f64,
    },
}

impl MomentCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, MomentCheck::Satisfied)
    }
}

/// Checks the quantum bound on squeezed-field moments with an absolute
/// tolerance of [`IDENTITY_TOL`].
pub fn validate_moments(n_photons: f64, m_corr: f64) -> Result<MomentCheck> {
    if !n_photons.is_finite() || n_photons < 0.0 {
        return Err(Error::domain("photon number N", n_photons));
    }
    if !m_corr.is_finite() || m_corr < 0.0 {
        return Err(Error::domain("correlation M", m_corr));
    }
    let excess = m_corr * m_corr - n_photons * (n_photons + 1.0);
    if excess <= IDENTITY_TOL {
        Ok(MomentCheck::Satisfied)
    } else {
        Ok(MomentCheck::Violated { excess })
    }
}

/// Dipole decay rates in units of γ for the two field quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRates {
    /// Noisy (out-of-phase) quadrature, `N + 1/2 + |M|`.
    pub gamma_x: f64,
    /// Quiet (in-phase) quadrature, `N + 1/2 - |M|`.
    pub gamma_y: f64,
}

/// Ideal degenerate OPO below threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpoConfig {
    kappa: f64,
    epsilon: f64,
}

/// Output moments of the OPO at one frequency offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpoSpectrum {
    pub n: f64,
    pub m: f64,
}

impl OpoConfig {
    pub fn new(kappa: f64, epsilon: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(Error::domain("cavity decay kappa", kappa));
        }
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(Error::domain("amplification epsilon", epsilon));
        }
        if epsilon >= kappa / 2.0 {
            return Err(Error::AboveThreshold {
                epsilon,
                half_kappa: kappa / 2.0,
            });
        }
        Ok(Self { kappa, epsilon })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `κ/2 + ε`
    pub fn lambda_opo(&self) -> f64 {
        self.kappa / 2.0 + self.epsilon
    }

    /// `κ/2 - ε`
    pub fn mu(&self) -> f64 {
        self.kappa / 2.0 - self.epsilon
    }

    /// `N(ω)` and `M(ω)` of the ideal OPO output.
    ///
    /// Both Lorentzians use `ω² + λ²` and `ω² + μ²`, the sign choice under
    /// which `M² = N(N+1)` holds. The difference of Lorentzians is evaluated
    /// as `(λ² - μ²)·A·B` to avoid cancellation in the tails.
    pub fn spectrum(&self, omega: f64) -> Result<OpoSpectrum> {
        if !omega.is_finite() {
            return Err(Error::domain("frequency offset omega", omega));
        }
        let (lam, mu) = (self.lambda_opo(), self.mu());
        // λ² - μ² = 2κε exactly
        let spread = 2.0 * self.kappa * self.epsilon;
        let w2 = omega * omega;
        let a = 1.0 / (w2 + mu * mu);
        let b = 1.0 / (w2 + lam * lam);
        let scale = spread / 4.0;
        Ok(OpoSpectrum {
            n: scale * spread * a * b,
            m: scale * (a + b),
        })
    }
}
