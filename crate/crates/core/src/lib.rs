//! Laser-cooling force on a two-level atom driven by squeezed-coherent light,
//! with and without a squeezed vacuum reservoir.
//!
//! * [`squeeze`]: squeezed-field moments, ideal OPO spectra, decay rates
//! * [`bloch`]: steady-state dispersive Bloch component
//! * [`force`]: standing-wave force, spatial averages, Doppler limit
//! * [`sweep`]: parallel parameter grids and the crossover finder
//! * [`cli`]: command-line front end writing CSV

pub mod bloch;
pub mod cli;
pub mod error;
pub mod force;
pub mod quadrature;
pub mod squeeze;
pub mod sweep;

pub use bloch::{DriveParams, Quadrature, Scheme};
pub use error::{Error, Result};
pub use force::{AveragingMode, FieldGeometry, ForceRecord, ForceUnit};
pub use squeeze::{DecayRates, OpoConfig, SqueezeParams};
pub use sweep::{Axis, SweepGrid, Sweeper, Workers};
