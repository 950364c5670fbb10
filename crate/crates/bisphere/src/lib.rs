//! Steady-state heat loss of two spheres held at constant temperature in an
//! infinite medium.
//!
//! The exterior Laplace problem for two spheres separates in bispherical
//! coordinates; the per-sphere heat flux collapses to rapidly convergent
//! one-dimensional series. This crate evaluates those series with
//! controlled truncation error, accelerates them by Euler–Maclaurin
//! summation near contact (where closed-form digamma expressions take
//! over), and locates the critical radius ratio beyond which the larger
//! sphere's heat loss is non-monotone in the gap width.
//!
//! Layout:
//! - [`specfun`] — digamma, trigamma, Legendre and Bernoulli polynomials,
//!   and the Gauss hypergeometric function `2F1`.
//! - [`geometry`] — sphere parameters to bispherical coordinates.
//! - [`heatloss`] — the flux series, Euler–Maclaurin acceleration, and
//!   contact formulas.
//! - [`analysis`] — critical-ratio root finding, minimizing distance,
//!   distance scans.
//! - [`oracle`] — independent verification paths (boundary-coefficient
//!   quadrature, integral identities, sign lemmas) that share no code
//!   with the series evaluators.
//! - [`svg`] — dependency-free line charts for scan output.
//!
//! All computations are pure functions of their arguments; everything here
//! is safe to call concurrently.

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod heatloss;
pub mod oracle;
pub mod specfun;
pub mod svg;

pub use error::{Error, Result};
pub use geometry::{BisphericalConfig, SphereParams};
pub use heatloss::{HeatLossResult, Method, MethodUsed, SeriesOptions};
