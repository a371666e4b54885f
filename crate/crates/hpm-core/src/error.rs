//! Error type shared by all kernels.

use alloc::string::String;
use core::fmt;

/// Domain and sampling errors raised by the physics kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input violated its domain constraint.
    Domain {
        /// Name of the offending parameter.
        name: &'static str,
        /// The rejected value.
        value: f64,
        /// Human-readable constraint, e.g. `"must be > 0"`.
        constraint: &'static str,
    },
    /// Mode indices not valid for the requested waveguide mode family.
    InvalidModeIndices {
        family: &'static str,
        m: u32,
        n: u32,
    },
    /// The requested frequency is at or below the mode cutoff.
    EvanescentMode { frequency_hz: f64, cutoff_hz: f64 },
    /// A drone model must contain at least one subsystem.
    EmptyDroneModel,
    /// Subsystem names within a drone model must be unique.
    DuplicateSubsystem(String),
    /// Truncated sampling exceeded the rejection budget, which means the
    /// distribution spec puts essentially no mass inside its bounds.
    SamplingRejectionLimit { parameter: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain {
                name,
                value,
                constraint,
            } => write!(f, "parameter `{name}` = {value} {constraint}"),
            Error::InvalidModeIndices { family, m, n } => {
                write!(f, "{family}{m}{n} is not a valid mode")
            }
            Error::EvanescentMode {
                frequency_hz,
                cutoff_hz,
            } => write!(
                f,
                "frequency {frequency_hz} Hz is at or below cutoff {cutoff_hz} Hz (evanescent)"
            ),
            Error::EmptyDroneModel => write!(f, "drone model has no subsystems"),
            Error::DuplicateSubsystem(name) => {
                write!(f, "duplicate subsystem name `{name}` in drone model")
            }
            Error::SamplingRejectionLimit { parameter } => write!(
                f,
                "rejection sampling for `{parameter}` exceeded 1000 consecutive rejections"
            ),
        }
    }
}

impl core::error::Error for Error {}

/// `value > 0` and finite, else a domain error naming the parameter.
pub(crate) fn require_positive(name: &'static str, value: f64) -> crate::Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            constraint: "must be positive and finite",
        })
    }
}

/// `value >= 0` and finite.
pub(crate) fn require_non_negative(name: &'static str, value: f64) -> crate::Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            constraint: "must be non-negative and finite",
        })
    }
}

/// `value` in `(0, 1]`.
pub(crate) fn require_fraction(name: &'static str, value: f64) -> crate::Result<()> {
    if value > 0.0 && value <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            constraint: "must lie in (0, 1]",
        })
    }
}

/// `value` strictly inside `(0, 1)`.
pub(crate) fn require_open_probability(name: &'static str, value: f64) -> crate::Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            constraint: "must lie strictly inside (0, 1)",
        })
    }
}
