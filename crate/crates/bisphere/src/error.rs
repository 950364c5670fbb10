//! Error type shared by all modules.

use std::fmt;

/// Errors from geometry construction, series evaluation, and solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside a function's domain (non-finite, wrong sign, out of range).
    Domain(String),
    /// A series or iteration hit its term cap before reaching tolerance.
    NonConvergence { what: &'static str, terms: usize },
    /// Bispherical coordinates degenerate at (or numerically too close to)
    /// contact; callers must use the closed-form contact expressions.
    DegenerateContact { d: f64 },
    /// Bernoulli polynomial order outside the supported set {2, 3}.
    UnsupportedOrder(u32),
    /// A parameter combination the series do not cover (e.g. touching
    /// spheres with unequal temperatures).
    UnsupportedConfiguration(String),
    /// A bracketing root search found no sign change.
    BracketFailure(String),
    /// A linear solve or mode expansion left the reliable floating-point range.
    IllConditioned(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonConvergence { what, terms } => {
                write!(f, "{what} did not converge within {terms} terms")
            }
            Error::DegenerateContact { d } => write!(
                f,
                "configuration degenerate at contact (d = {d}); use the contact formulas"
            ),
            Error::UnsupportedOrder(k) => {
                write!(f, "Bernoulli polynomial order {k} not supported (only 2 and 3)")
            }
            Error::UnsupportedConfiguration(msg) => write!(f, "unsupported configuration: {msg}"),
            Error::BracketFailure(msg) => write!(f, "bracketing failed: {msg}"),
            Error::IllConditioned(msg) => write!(f, "ill-conditioned: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
