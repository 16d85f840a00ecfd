//! Dense univariate polynomials over a [`Scalar`].

use std::fmt;

use crate::scalar::Scalar;

/// `coeffs[i]` is the coefficient of `t^i`. Trailing zeros are trimmed, so
/// structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn monomial(coeff: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    /// Unique polynomial of degree `< points.len()` through the given points
    /// (Newton divided differences). Abscissae must be distinct.
    pub fn interpolate(points: &[(T, T)]) -> Self {
        let n = points.len();
        let xs: Vec<T> = points.iter().map(|(x, _)| x.clone()).collect();
        let mut dd: Vec<T> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = dd[i].clone() - dd[i - 1].clone();
                let den = xs[i].clone() - xs[i - level].clone();
                dd[i] = num / den;
            }
        }
        // Horner expansion of the Newton form.
        let mut acc = Polynomial::zero();
        for i in (0..n).rev() {
            acc = acc.mul_linear(&xs[i]).add(&Polynomial::new(vec![dd[i].clone()]));
        }
        acc
    }

    /// `self * (t - root)`.
    fn mul_linear(&self, root: &T) -> Self {
        let mut out = vec![T::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = out[i + 1].clone() + c.clone();
            out[i] = out[i].clone() - c.clone() * root.clone();
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, ratio, Rational};

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Polynomial::new(vec![ratio(1, 3), integer(0), integer(-2), integer(5)]);
        let pts: Vec<(Rational, Rational)> =
            (0..6).map(|i| (integer(i), p.eval(&integer(i)))).collect();
        assert_eq!(Polynomial::interpolate(&pts), p);
    }

    #[test]
    fn trims_and_degrees() {
        let p = Polynomial::new(vec![integer(1), integer(0), integer(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::<Rational>::zero().degree(), None);
        assert_eq!(format!("{}", Polynomial::new(vec![integer(0), integer(1), integer(2)])), "(1)*t + (2)*t^2");
    }
}
