use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter or argument violated its domain constraint.
    #[error("invalid `{field}`: {constraint} (got {value})")]
    Domain {
        field: &'static str,
        constraint: &'static str,
        value: f64,
    },

    #[error("unsupported regime {regime}: {reason}")]
    UnsupportedRegime {
        regime: &'static str,
        reason: &'static str,
    },

    #[error("cannot convert `{from}` to `{to}` with the {set} constant set; known units: {known}")]
    UnknownConversion {
        from: String,
        to: String,
        set: &'static str,
        known: String,
    },

    #[error("unknown preset `{id}`; available: {available}")]
    UnknownPreset { id: String, available: String },

    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("preset `{preset}` has no {curve} curve")]
    NoCurve { preset: String, curve: &'static str },
}

impl Error {
    pub(crate) fn domain(field: &'static str, constraint: &'static str, value: f64) -> Self {
        Error::Domain {
            field,
            constraint,
            value,
        }
    }
}

/// Rejects anything that is not a finite, strictly positive number.
pub(crate) fn ensure_positive(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(field, "must be finite and > 0", value))
    }
}

pub(crate) fn ensure_non_negative(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(field, "must be finite and >= 0", value))
    }
}

pub(crate) fn ensure_fraction(field: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::domain(field, "must lie in [0, 1]", value))
    }
}
