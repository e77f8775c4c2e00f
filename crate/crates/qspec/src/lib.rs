//! Simulation of a two-crystal SPDC nonlinear interferometer and the joint
//! measurement precision of a medium's infrared refractive index and
//! absorption coefficient.
//!
//! Visible signal photons and infrared idler photons are created pairwise in
//! two sequential crystals; the idler crosses an absorbing chamber between
//! them, so the visible interference pattern carries the medium's infrared
//! refraction and absorption. The crate computes:
//!
//! - interference spectra over wavelength and emission angle ([`state`]),
//! - error-propagation covariance, quantum Fisher information, Fisher
//!   information regrets and the trade-off sums for the two-angle joint
//!   measurement ([`precision`]),
//! - simulated photon counting with a Levenberg-Marquardt fit and a
//!   Monte-Carlo validation harness ([`estimation`]),
//! - fringe extremum location and observation-angle selection ([`extrema`]),
//! - CSV/JSON scan outputs behind the `qspec` binary ([`runner`]).
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod config;
pub mod error;
pub mod estimation;
pub mod extrema;
pub mod optics;
pub mod precision;
pub mod runner;
pub mod state;

pub use config::{AngleMode, MismatchMode, OpticalConfig, RunConfig, ScanParameter};
pub use error::{Error, Result};
pub use estimation::{FitResult, MeasurementRecord, MonteCarloSummary};
pub use extrema::{Extremum, ExtremumKind};
pub use optics::ModePoint;
pub use precision::{PrecisionReport, QcrbCheck, TwoByTwo};
pub use state::{BranchAmplitudes, IntensityPoint};
