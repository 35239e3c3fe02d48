use std::fmt;

use crate::bloch::Scheme;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The inputs of a steady-state evaluation, attached to errors raised by it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyStateInputs {
    pub scheme: Scheme,
    /// `n = 1 + 2N`.
    pub n: f64,
    /// Effective two-photon correlation (signed by quadrature).
    pub m: f64,
    pub beta: f64,
    pub delta: f64,
    pub phi: f64,
}

impl fmt::Display for SteadyStateInputs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} m={} beta={} delta={} phi={}",
            self.scheme.label(),
            self.n,
            self.m,
            self.beta,
            self.delta,
            self.phi
        )
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("moment bound violated: M^2 - N(N+1) = {excess:e}")]
    MomentBound { excess: f64 },

    #[error("OPO above threshold: epsilon={epsilon} >= kappa/2={half_kappa}")]
    AboveThreshold { epsilon: f64, half_kappa: f64 },

    #[error("non-positive steady-state denominator {denominator:e} ({inputs})")]
    DegenerateDenominator {
        denominator: f64,
        inputs: SteadyStateInputs,
    },

    #[error("Bloch component {value} outside [-1, 1] ({inputs})")]
    BlochBound {
        value: f64,
        inputs: SteadyStateInputs,
    },

    #[error(
        "quadrature did not converge with {panels} panels: achieved relative change {achieved:e}"
    )]
    QuadratureNotConverged { achieved: f64, panels: usize },

    #[error("no crossover in [{lo}, {hi}]: g(lo)={g_lo:e}, g(hi)={g_hi:e}")]
    NoCrossover {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("crossover search stalled at beta={beta} with residual {residual:e}")]
    CrossoverStalled { beta: f64, residual: f64 },

    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),

    #[error("at grid point {point}: {source}")]
    AtGridPoint { point: String, source: Box<Error> },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }

    /// True for errors that come from bad input rather than numerics.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Domain { .. }
            | Error::MomentBound { .. }
            | Error::AboveThreshold { .. }
            | Error::InvalidGrid(_) => true,
            Error::AtGridPoint { source, .. } => source.is_input_error(),
            _ => false,
        }
    }
}
