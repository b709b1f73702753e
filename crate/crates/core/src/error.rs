use thiserror::Error;

use crate::combinatorics::Subset;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ordering tuple is empty")]
    EmptyOrderTuple,

    #[error("order {index} is not a permutation of 1..={n}: {detail}")]
    MalformedOrder { index: usize, n: usize, detail: String },

    #[error("ground set of size {n} exceeds the supported maximum of {max}")]
    GroundSetTooLarge { n: usize, max: usize },

    #[error("element {element} is outside the ground set 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("closure system is missing the {0} set")]
    MissingBound(&'static str),

    #[error("closure system is not closed under intersection: {a} and {b}")]
    NotIntersectionClosed { a: Subset, b: Subset },

    #[error("not a convex geometry: anti-exchange fails for A = {set}, x = {x}, y = {y}")]
    NotConvexGeometry { set: Subset, x: usize, y: usize },

    #[error("cover {lower} < {upper} adds more than one element")]
    CoverNotSingleton { lower: Subset, upper: Subset },

    #[error("more than {limit} maximal chains")]
    TooManyChains { limit: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("almost-circle needs t >= 3 sectors, got {0}")]
    TooFewSectors(usize),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("samples are not an affine image of a good-function arc (residual {residual:e})")]
    NonMember { residual: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
