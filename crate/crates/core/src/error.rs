use thiserror::Error;

/// Errors raised when an input cannot be processed at all. Failed identities
/// are not errors; they are reported as [`crate::report::Check`]s.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("subspace is not closed under the bracket: [{left}, {right}] leaves it")]
    NotClosed { left: String, right: String },
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("subspaces are not complementary: {0}")]
    NotComplementary(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal: conjugating {member} by {conjugator} leaves it")]
    NotNormal { conjugator: String, member: String },
    #[error("weight {0} is not supported by this construction")]
    WeightUnsupported(String),
    #[error("weights differ: {0} vs {1}")]
    WeightMismatch(String, String),
    #[error("representative choice changes the result: {0}")]
    RepresentativeDisagreement(String),
    #[error("image escapes the kernel: {0}")]
    ImageEscapesKernel(String),
    #[error("restriction escapes the target subspace: {0}")]
    RestrictionEscapes(String),
    #[error("group order {order} exceeds the search bound {bound}")]
    OrderExceedsBound { order: usize, bound: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
