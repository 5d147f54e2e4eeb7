use thiserror::Error;

/// Errors raised while building or validating an [`Instance`](crate::Instance).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("instance must have at least one customer and one campaign (n={n}, k={k})")]
    Empty { n: usize, k: usize },
    #[error("expected {expected} {what}, found {found}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("weight of campaign {campaign} must be positive")]
    NonPositiveWeight { campaign: usize },
    #[error("preference of customer {customer} for campaign {campaign} is negative")]
    NegativePreference { customer: usize, campaign: usize },
    #[error("r(0) must be 0 (customer {customer})")]
    NonZeroAtZero { customer: usize },
    #[error("suppression value r({h}) of customer {customer} lies outside [0, 1]")]
    SuppressionOutOfRange { customer: usize, h: usize },
    #[error("lower bound exceeds upper bound for campaign {campaign} ({lower} > {upper})")]
    LowerAboveUpper {
        campaign: usize,
        lower: usize,
        upper: usize,
    },
    #[error("upper bound {upper} of campaign {campaign} exceeds customer count {n}")]
    UpperAboveCustomers {
        campaign: usize,
        upper: usize,
        n: usize,
    },
}

/// Errors shared by every operation of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: instance is {expected_rows}x{expected_cols}, matrix is {rows}x{cols}")]
    DimensionMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
