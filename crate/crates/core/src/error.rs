use thiserror::Error;

/// Constraint of the constrained-rate region that a query can violate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateConstraint {
    /// `R1 <= gamma(P1)`
    User1,
    /// `R2 <= gamma(P2)`
    User2,
    /// The weighted sum-rate constraint.
    Sum,
}

impl RateConstraint {
    pub fn name(self) -> &'static str {
        match self {
            RateConstraint::User1 => "user-1 rate",
            RateConstraint::User2 => "user-2 rate",
            RateConstraint::Sum => "sum rate",
        }
    }
}

impl std::fmt::Display for RateConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid {field}: {reason} (got {value})")]
    InvalidInput {
        field: &'static str,
        reason: &'static str,
        value: f64,
    },

    #[error("invalid user index {0}: expected 1 or 2")]
    InvalidUser(usize),

    #[error("infeasible: violates the {constraint} constraint (slack {slack:.3e})")]
    Infeasible { constraint: RateConstraint, slack: f64 },

    #[error("rate component r{component} is zero; the branch map divides by it")]
    ZeroDivisor { component: u8 },

    #[error(
        "schedules belong to different sub-regions; their codewords would not be aligned \
         after time sharing"
    )]
    MixedSubRegions,

    #[error("no feasible grid point in [{lo1}, {hi1}] x [{lo2}, {hi2}]")]
    EmptyFeasibleGrid { lo1: f64, hi1: f64, lo2: f64, hi2: f64 },

    #[error("internal consistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T: crate::Scalar>(field: &'static str, reason: &'static str, value: T) -> Error {
    Error::InvalidInput {
        field,
        reason,
        value: value.to_f64().unwrap_or(f64::NAN),
    }
}
