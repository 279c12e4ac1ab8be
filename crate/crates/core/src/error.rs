use thiserror::Error;

/// Which of the two number-operator functions of an H/G pair failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgSide {
    H,
    G,
}

impl std::fmt::Display for HgSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HgSide::H => f.write_str("H"),
            HgSide::G => f.write_str("G"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} is outside its domain ({requirement})")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("{side}({level}) = 0; the structure-function recipe divides by it")]
    DivisionByZero { side: HgSide, level: usize },

    #[error("structure function is negative at level {level} (Phi = {value}); sqrt(Phi) is undefined")]
    NegativePhi { level: usize, value: f64 },

    #[error("non-finite result evaluating {what} at level {level}")]
    Overflow { what: &'static str, level: usize },

    #[error("pole in {formula}: denominator {denominator} vanishes")]
    Pole {
        formula: &'static str,
        denominator: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate case: {0}")]
    Degenerate(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            requirement: "finite and > 0",
        })
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            requirement: "finite",
        })
    }
}
