use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("enumeration of {requested} points exceeds the configured bound of {limit}")]
    BoundExceeded { requested: usize, limit: usize },

    #[error("ground sizes differ: {left} vs {right}")]
    GroundSizeMismatch { left: usize, right: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("series has zero linear coefficient and cannot be reverted")]
    ZeroLinearCoefficient,

    #[error("first moment vanishes; the S transform is undefined")]
    VanishingFirstMoment,

    #[error("constant term {0} has no admissible power or logarithm")]
    InadmissibleConstantTerm(String),

    #[error("sequences have different orders: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("parameters outside every applicable route: {0}")]
    OutsideRoutes(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("evaluation point {w} is a pole or branch violation of Phi")]
    PhiDomain { w: f64 },

    #[error("root continuation failed at x = {x}: candidates {roots:?}")]
    RootContinuation { x: f64, roots: Vec<(f64, f64)> },

    #[error("Gram matrix is singular or ill-conditioned (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
