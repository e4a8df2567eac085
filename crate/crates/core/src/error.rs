use thiserror::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the dimer computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter fell outside its admissible range.
    #[error("{name} = {value} is outside the admissible range [{min}, {max}]")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// Mutually inconsistent, insufficient, or malformed parameters.
    #[error("{0}")]
    InvalidInput(String),

    /// A numerical assumption was violated (root bracketing, convergence).
    #[error("internal numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn out_of_domain(name: &'static str, value: f64, min: f64, max: f64) -> Self {
        Error::OutOfDomain {
            name,
            value,
            min,
            max,
        }
    }
}

/// Rejects NaN and values outside [min, max].
pub(crate) fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<()> {
    if value.is_nan() || value < min || value > max {
        return Err(Error::out_of_domain(name, value, min, max));
    }
    Ok(())
}
