use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("matrix shape: {0}")]
    Shape(String),
    #[error("singular matrix")]
    Singular,
    #[error("series expansion undefined: {0}")]
    Series(String),
    #[error("invalid braid: {0}")]
    InvalidBraid(String),
    #[error("closure has {0} components, expected a knot")]
    NotAKnot(usize),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid chain or region: {0}")]
    InvalidRegion(String),
    #[error("region contains a cycle through state {0}")]
    RegionHasCycle(usize),
    #[error("{states} states exceed the enumeration limit of {limit}")]
    SizeGuard { states: usize, limit: usize },
    #[error("half-integer exponent in {0}")]
    HalfIntegerExponent(&'static str),
    #[error("non-integer coefficient in {0}")]
    NonIntegerCoefficient(&'static str),
    #[error("no polynomial in z maps to {0}")]
    NoConwaySolution(String),
    #[error("not divisible by (1-T)^2: {0}")]
    NotDivisible(String),
    #[error("not symmetric under T -> 1/T: {0}")]
    NotSymmetric(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
