//! Crate-wide error type.

use std::fmt;

/// Errors surfaced by the numerical core and the harness.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the open domain of a mirror map (e.g. nonpositive
    /// simplex component, |p| >= 1 for the log-cosh map).
    Domain(String),
    /// Operation not defined for this mirror-map kind or domain
    /// (e.g. duality gap on an unbounded domain).
    Unsupported(String),
    /// Payoff/matrix/vector dimensions disagree.
    Dimension {
        expected: usize,
        got: usize,
        what: &'static str,
    },
    /// An iterative solver (power iteration, backward fixed point) ran out
    /// of iterations; carries the last residual seen.
    Convergence {
        what: &'static str,
        residual: f64,
        iterations: usize,
    },
    /// A diagnostics operation was applied to a trajectory produced by a
    /// different scheme.
    SchemeMismatch {
        expected: &'static str,
        got: &'static str,
    },
    /// A dual variable exceeded the overflow guard during a run; carries the
    /// step index at which the run was aborted.
    Overflow { step: usize, value: f64 },
    /// A CSV consumed by the plotter lacks a required column.
    MissingColumn(String),
    /// A step operation failed inside a run; carries the failing step index.
    AtStep { step: usize, source: Box<Error> },
    /// Config file failed to parse or validate.
    Config(String),
    /// Filesystem failure while reading configs or writing artifacts.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Dimension {
                expected,
                got,
                what,
            } => {
                write!(
                    f,
                    "dimension mismatch in {what}: expected {expected}, got {got}"
                )
            }
            Error::Convergence {
                what,
                residual,
                iterations,
            } => {
                write!(f, "{what} failed to converge after {iterations} iterations (residual {residual:e})")
            }
            Error::SchemeMismatch { expected, got } => {
                write!(
                    f,
                    "scheme mismatch: operation expects a {expected} trajectory, got {got}"
                )
            }
            Error::Overflow { step, value } => {
                write!(
                    f,
                    "dual variable overflow at step {step} (|z| reached {value:e})"
                )
            }
            Error::MissingColumn(name) => write!(f, "missing CSV column: {name}"),
            Error::AtStep { step, source } => write!(f, "step {step}: {source}"),
            Error::Config(msg) => write!(f, "config error: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
