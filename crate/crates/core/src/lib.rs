//! Multivariable Bohr-type radii for bounded holomorphic functions composed
//! with power maps `z ↦ (z_1^m, …, z_n^m)`.
//!
//! * [`mvseries`]: truncated power series in several complex variables.
//! * [`bounds`]: coefficient and derivative estimates for bounded functions.
//! * [`radii`]: certified radii from the three polynomial root problems.
//! * [`extremal`]: the extremal family, majorants and sharpness searches.
//! * [`cli`]: the `bohr` command-line front end.

pub mod bounds;
pub mod cli;
pub mod extremal;
pub mod mvseries;
pub mod radii;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] mvseries::SeriesError),
    #[error(transparent)]
    Bounds(#[from] bounds::BoundsError),
    #[error(transparent)]
    Radius(#[from] radii::RadiusError),
    #[error(transparent)]
    Extremal(#[from] extremal::ExtremalError),
}
