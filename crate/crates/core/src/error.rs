use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in this crate.
///
/// The variants fall into four broad classes (see [`Error::class`]) that the
/// command-line front end maps onto stable exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("insufficient stretch: {0}")]
    Stretch(String),

    #[error("locality {found} exceeds the {allowed} this solver accepts")]
    Locality { allowed: usize, found: usize },

    #[error("enumerating 2^{bits} points exceeds the limit of {limit}")]
    LimitExceeded { bits: usize, limit: u64 },

    #[error("branching on {t} inputs exceeds the cap of {cap}")]
    BranchBudget { t: usize, cap: usize },

    #[error("rigidity search needs {needed} steps, budget is {budget}")]
    RigidityBudget { needed: u128, budget: u128 },

    #[error("vector weight {weight} exceeds sparsity {sparsity}")]
    Sparsity { weight: usize, sparsity: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Coarse grouping of [`Error`] variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input, bad parameters, shape mismatches.
    Input,
    /// The instance is outside the regime the solver handles (stretch, locality).
    Stretch,
    /// An enumeration or branching budget would be exceeded.
    Budget,
    /// A bug: a proven invariant did not hold.
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::DimensionMismatch { .. }
            | Error::Parse { .. }
            | Error::Invariant(_)
            | Error::Parameter(_)
            | Error::Sparsity { .. }
            | Error::Precondition(_) => ErrorClass::Input,
            Error::Stretch(_) | Error::Locality { .. } => ErrorClass::Stretch,
            Error::LimitExceeded { .. } | Error::BranchBudget { .. } | Error::RigidityBudget { .. } => {
                ErrorClass::Budget
            }
            Error::Internal(_) => ErrorClass::Internal,
        }
    }

    pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}
