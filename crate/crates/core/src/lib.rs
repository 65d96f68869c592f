//! Point-process statistics of unfolded spectra and the sine-kernel reference
//! quantities they are compared against.
//!
//! The crate is organised as
//! - [`pointproc`]: configurations, tessellation, Palm samples, correlation sums;
//! - [`unfold`]: the Riemann–Siegel theta function and unfolding of ordinates;
//! - [`estimators`]: time-averaged correlation, occupancy, spacing and moment statistics;
//! - [`sinekernel`]: correlation densities, occupation series, Fredholm gap determinants;
//! - [`synth`]: Poisson, lattice and GUE surrogate spectra;
//! - [`zeros`]: ingestion of plain-text zero tables and the binary cache;
//! - [`verify`]: the end-to-end equivalence suite.

pub mod error;
pub mod estimators;
pub mod pointproc;
pub mod sinekernel;
pub mod synth;
pub mod testfn;
pub mod unfold;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
pub use pointproc::{PointConfiguration, PointSource, TessellatedConfiguration};
pub use testfn::{Profile, TestFunction};
pub use unfold::UnfoldedSpectrum;
