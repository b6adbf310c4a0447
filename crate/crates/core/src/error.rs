use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("element {0} is not a member of the group")]
    NotMember(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("{what} exceeds the configured bound {bound}")]
    BoundExceeded { what: String, bound: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid construction data: {0}")]
    InvalidConstruction(String),

    #[error("candidate is not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("not an involution system: {0}")]
    InvalidSystem(String),

    #[error("involution graph is not a tree")]
    NotATree,

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("EC witness construction failed: {0}")]
    NoFixedCoset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn bound(what: impl Into<String>, bound: u128) -> Self {
        Error::BoundExceeded {
            what: what.into(),
            bound,
        }
    }

    /// True for resource-bound failures, which callers report separately from
    /// a property simply not holding.
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}
