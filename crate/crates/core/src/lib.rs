//! Free Bessel laws and their classical analogues.
//!
//! The exact pipelines (partitions, power series, closed-form moments) are
//! generic over [`Scalar`]; use [`Rational`] for exact results and `f64` for
//! quick numerics.

pub mod classical;
pub mod error;
pub mod freelaws;
pub mod matrixlab;
pub mod partitions;
pub mod poly;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

/// Exact power series.
pub type RationalSeries = series::Series<Rational>;
/// Floating-point power series.
pub type FloatSeries = series::Series<f64>;
/// Exact moment sequence.
pub type RationalMoments = series::MomentSequence<Rational>;
/// Floating-point moment sequence.
pub type FloatMoments = series::MomentSequence<f64>;
/// Exact polynomial.
pub type RationalPolynomial = poly::Polynomial<Rational>;
