use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("cover relation contains a cycle through `{0}`")]
    Cycle(String),
    #[error("cover {lo} < {hi} is implied by transitivity")]
    NonReduced { lo: String, hi: String },
    #[error("poset is not graded")]
    NotGraded,
    #[error("more than {cap} order ideals; raise the cap to continue")]
    CapExceeded { cap: usize },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid slide: {0}")]
    InvalidSlide(String),
    #[error("not an antichain")]
    NotAntichain,
    #[error("not an order ideal")]
    NotAnIdeal,
    #[error("point is outside the order polytope")]
    OutsidePolytope,
    #[error("unknown poset name `{0}`")]
    UnknownPoset(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("distribution is not normalized")]
    Unnormalized,
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
