//! Scalar types the exact and numeric pipelines are generic over.
//!
//! Everything in [`crate::series`], [`crate::poly`] and the closed-form moment
//! code only needs field arithmetic plus a handful of conversions, so it is
//! written once against [`Scalar`] and instantiated with [`Rational`] for exact
//! results and `f64` (or `f32`) for quick numerics.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Field-like scalar: exact rationals or IEEE floats.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Neg<Output = Self> + FromPrimitive + 'static
{
    /// Whether equality on this type is exact.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("integer conversion")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        <Self as Scalar>::from_i64(num) / <Self as Scalar>::from_i64(den)
    }

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// `self^(num/den)` when it is representable, `None` otherwise.
    ///
    /// Exact types return `None` unless the result is itself rational.
    fn pow_ratio(&self, num: i64, den: u64) -> Option<Self>;

    /// `self^alpha` where representable.
    fn pow_scalar(&self, alpha: &Self) -> Option<Self>;

    /// `ln(self)` where representable. Exact types only support `ln(1) = 0`.
    fn ln(&self) -> Option<Self>;

    /// Stable textual encoding: `"p/q"` for rationals, shortest round-trip
    /// decimal for floats.
    fn encode(&self) -> String;

    fn decode(text: &str) -> Option<Self>;

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational(r: &Rational) -> Self {
                rational_to_f64(r) as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn pow_ratio(&self, num: i64, den: u64) -> Option<Self> {
                if *self < 0.0 && den != 1 {
                    return None;
                }
                if den == 1 {
                    return Some(self.powi(num as i32));
                }
                Some(self.powf(num as $t / den as $t))
            }

            fn pow_scalar(&self, alpha: &Self) -> Option<Self> {
                if *self == 1.0 {
                    return Some(1.0);
                }
                (*self > 0.0).then(|| self.powf(*alpha))
            }

            fn ln(&self) -> Option<Self> {
                (*self > 0.0).then(|| <$t>::ln(*self))
            }

            fn encode(&self) -> String {
                format!("{}", self)
            }

            fn decode(text: &str) -> Option<Self> {
                if let Some(r) = parse_rational(text) {
                    return Some(Self::from_rational(&r));
                }
                text.trim().parse().ok()
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn pow_ratio(&self, num: i64, den: u64) -> Option<Self> {
        let base = if den == 1 {
            self.clone()
        } else {
            let root = den as u32;
            if self.is_negative() {
                return None;
            }
            let n = exact_root(self.numer(), root)?;
            let d = exact_root(self.denom(), root)?;
            Rational::new(n, d)
        };
        if num >= 0 {
            Some(num_traits::pow(base, num as usize))
        } else if base.is_zero() {
            None
        } else {
            Some(num_traits::pow(base.recip(), num.unsigned_abs() as usize))
        }
    }

    fn pow_scalar(&self, alpha: &Self) -> Option<Self> {
        if self.is_one() {
            return Some(Rational::one());
        }
        let num = alpha.numer().to_i64()?;
        let den = alpha.denom().to_u64()?;
        self.pow_ratio(num, den)
    }

    fn ln(&self) -> Option<Self> {
        self.is_one().then(Rational::zero)
    }

    fn encode(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn decode(text: &str) -> Option<Self> {
        parse_rational(text)
    }
}

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

/// Nearest `f64` to a rational, robust to huge numerators and denominators.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both sides down to 64 significant bits first.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n = (r.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.125"` or `"-2.5e-1"`
/// into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((p, q)) = text.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&digits).ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, scale.unsigned_abs() as usize);
    }
    Some(if negative { -value } else { value })
}

/// Rational from a small integer ratio.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Falling-factorial binomial `x (x-1) ... (x-j+1) / j!`, valid for any
/// scalar `x`.
pub fn binomial<T: Scalar>(x: &T, j: usize) -> T {
    let mut acc = T::one();
    for i in 0..j {
        acc = acc * (x.clone() - <T as Scalar>::from_i64(i as i64));
    }
    for i in 1..=j {
        acc = acc / <T as Scalar>::from_i64(i as i64);
    }
    acc
}

/// `1 / x` with a zero check, shared by the series code.
pub(crate) fn checked_recip<T: Scalar>(x: &T) -> Option<T> {
    (!x.is_zero()).then(|| T::one() / x.clone())
}

pub(crate) fn is_positive<T: Scalar>(x: &T) -> bool {
    *x > T::zero()
}

/// Exact rational conversion of an `f64` (binary expansion, no rounding).
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// `#[serde(with = "rational_string")]` support: rationals as `"p/q"`.
pub mod rational_string {
    use super::{Rational, Scalar};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&r.encode())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        Rational::decode(&text).ok_or_else(|| D::Error::custom(format!("not a rational: {text}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("3/4"), Some(ratio(3, 4)));
        assert_eq!(parse_rational("-2.5e-1"), Some(ratio(-1, 4)));
        assert_eq!(parse_rational("12"), Some(integer(12)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn rational_roots() {
        assert_eq!(ratio(4, 9).pow_ratio(1, 2), Some(ratio(2, 3)));
        assert_eq!(ratio(4, 9).pow_ratio(-3, 2), Some(ratio(27, 8)));
        assert_eq!(ratio(2, 1).pow_ratio(1, 2), None);
        assert_eq!(ratio(-8, 1).pow_ratio(1, 3), None);
    }

    #[test]
    fn encoding_round_trips() {
        let r = ratio(-7, 3);
        assert_eq!(r.encode(), "-7/3");
        assert_eq!(Rational::decode(&r.encode()), Some(r));
        assert_eq!(integer(5).encode(), "5/1");
        assert_eq!(f64::decode(&0.1f64.encode()), Some(0.1));
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(binomial(&integer(6), 2), integer(15));
        assert_eq!(binomial(&ratio(3, 2), 2), ratio(3, 8));
        assert_eq!(binomial(&integer(2), 5), integer(0));
        assert_eq!(binomial(&ratio(1, 2), 0), integer(1));
    }

    #[test]
    fn huge_rational_to_float() {
        let big = Rational::new(BigInt::from(10).pow(400) * 3, BigInt::from(10).pow(400));
        assert!((rational_to_f64(&big) - 3.0).abs() < 1e-12);
    }
}
