use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a mathematical or physical precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A momentum grid cannot represent the requested operation.
    #[error("grid error: {0}")]
    Grid(String),

    /// The sideband cutoff leaves too much spectral weight unaccounted for.
    #[error("sideband cutoff insufficient: norm deficit {deficit:.3e} exceeds tolerance")]
    CutoffDeficit { deficit: f64 },

    /// A closed-form path was requested outside its resonance precondition.
    #[error("off resonance: {0}")]
    OffResonance(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn grid(msg: impl Into<String>) -> Self {
        Error::Grid(msg.into())
    }
}

/// A value produced outside its nominal regime of validity.
///
/// Some operations are defined by perturbative or closed-form expressions
/// whose accuracy degrades smoothly rather than failing outright; these
/// return the value together with an optional warning instead of an error.
#[derive(Debug, Clone)]
pub struct Warned<T> {
    pub value: T,
    pub warning: Option<String>,
}

impl<T> Warned<T> {
    pub fn clean(value: T) -> Self {
        Warned { value, warning: None }
    }

    pub fn with_warning(value: T, warning: impl Into<String>) -> Self {
        Warned { value, warning: Some(warning.into()) }
    }
}
