use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{fuss_narayana_coefficient, nc_s_block_histogram, DEFAULT_ENUMERATION_BOUND};
use crate::poly::Polynomial;
use crate::scalar::{Rational, Scalar};
use crate::series::{
    boxplus_power, boxtimes_power, free_mult, MomentSequence, Series,
};

/// `k`-th moment of `π_st` from the Fuss-Narayana closed form, valid for all
/// `s, t > 0`. `k = 0` gives 1.
pub fn moment<T: Scalar>(s: &T, t: &T, k: usize) -> T {
    if k == 0 {
        return T::one();
    }
    let mut acc = T::zero();
    let mut tb = T::one();
    for b in 1..=k {
        tb = tb * t.clone();
        acc = acc + fuss_narayana_coefficient(s, k, b) * tb.clone();
    }
    acc
}

/// `m_1..=m_order` from the closed form.
pub fn moments<T: Scalar>(s: &T, t: &T, order: usize) -> MomentSequence<T> {
    MomentSequence::new((1..=order).map(|k| moment(s, t, k)).collect())
        .expect("order >= 1")
}

/// How the series pipeline builds `π_st`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesRoute {
    /// `π^{⊠(s-1)} ⊠ π^{⊞t}`, for `s >= 1`.
    FreeProduct,
    /// `((1-t)δ_0 + tδ_1) ⊠ π^{⊠s}`, for `t <= 1`.
    Compression,
}

impl SeriesRoute {
    pub fn applies<T: Scalar>(self, s: &T, t: &T) -> bool {
        match self {
            SeriesRoute::FreeProduct => *s >= T::one(),
            SeriesRoute::Compression => *t <= T::one(),
        }
    }
}

fn check_positive<T: Scalar>(s: &T, t: &T) -> Result<()> {
    if *s <= T::zero() || *t <= T::zero() {
        return Err(Error::InvalidParameter(format!("s = {s} and t = {t} must be positive")));
    }
    Ok(())
}

/// Moments of `π_st` built from free convolution powers of the free Poisson
/// law through the series module.
pub fn moments_via_series<T: Scalar>(
    s: &T,
    t: &T,
    order: usize,
    route: SeriesRoute,
) -> Result<MomentSequence<T>> {
    check_positive(s, t)?;
    if !route.applies(s, t) {
        return Err(Error::OutsideRoutes(format!("{route:?} needs s >= 1 or t <= 1 as appropriate; got s = {s}, t = {t}")));
    }
    let pi = MomentSequence::free_poisson(&T::one(), order);
    match route {
        SeriesRoute::FreeProduct => {
            let poisson_t = boxplus_power(&pi, t)?;
            let exponent = s.clone() - T::one();
            if exponent.is_zero() {
                return Ok(poisson_t);
            }
            free_mult(&boxtimes_power(&pi, &exponent)?, &poisson_t)
        }
        SeriesRoute::Compression => {
            let bernoulli = MomentSequence::bernoulli(t, order);
            free_mult(&bernoulli, &boxtimes_power(&pi, s)?)
        }
    }
}

/// First applicable route, preferring [`SeriesRoute::FreeProduct`].
pub fn default_route<T: Scalar>(s: &T, t: &T) -> Option<SeriesRoute> {
    [SeriesRoute::FreeProduct, SeriesRoute::Compression]
        .into_iter()
        .find(|r| r.applies(s, t))
}

/// Moments through the partition model: `Σ_{p ∈ NC_s(k)} t^{|p|}` for
/// integer `s`, using the block-count histogram.
pub fn moments_via_partitions<T: Scalar>(s: usize, t: &T, order: usize) -> Result<MomentSequence<T>> {
    moments_via_partitions_bounded(s, t, order, DEFAULT_ENUMERATION_BOUND)
}

/// [`moments_via_partitions`] with an explicit ground-set bound.
pub fn moments_via_partitions_bounded<T: Scalar>(
    s: usize,
    t: &T,
    order: usize,
    bound: usize,
) -> Result<MomentSequence<T>> {
    let mut out = Vec::with_capacity(order);
    for k in 1..=order {
        let hist = nc_s_block_histogram(s, k, bound)?;
        let mut acc = T::zero();
        let mut tb = T::one();
        for count in hist.iter().skip(1) {
            tb = tb * t.clone();
            acc = acc + <T as Scalar>::from_i64(*count as i64) * tb.clone();
        }
        out.push(acc);
    }
    MomentSequence::new(out)
}

/// The moment `m_k` of `π_st` as an exact polynomial in `t`, recovered from
/// the series pipeline: `m_k` has degree `k` in `t`, so evaluating at the
/// `k + 1` points `t = 1, 1/2, ..., 1/(k+1)` and interpolating is exact.
pub fn moment_polynomial_via_series(s: &Rational, k: usize) -> Result<Polynomial<Rational>> {
    let mut points = Vec::with_capacity(k + 1);
    for j in 1..=(k as i64 + 1) {
        let t = Rational::new(1.into(), j.into());
        let route = default_route(s, &t)
            .ok_or_else(|| Error::OutsideRoutes(format!("s = {s}, t = {t}")))?;
        let m = moments_via_series(s, &t, k.max(1), route)?;
        points.push((t, m.get(k)));
    }
    Ok(Polynomial::interpolate(&points))
}

/// `f - 1 - z f^s (f + t - 1)` for `f = 1 + Σ m_k z^k`: vanishes to the
/// order of `m` exactly when `m` are the moments of `π_st`.
pub fn stieltjes_residual<T: Scalar>(s: &T, t: &T, m: &MomentSequence<T>) -> Result<Series<T>> {
    let f = m.generating_series();
    let n = f.order();
    let shifted = f.add(&Series::constant(t.clone() - T::one(), n));
    let rhs = f.pow(s)?.mul(&shifted).mul_z().truncate(n);
    Ok(f.sub(&Series::one(n)).sub(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::fuss_catalan;
    use crate::scalar::{integer, ratio};

    #[test]
    fn closed_form_examples() {
        let t = ratio(3, 7);
        for s in [ratio(1, 2), integer(1), integer(3)] {
            assert_eq!(moment(&s, &t, 1), t);
        }
        assert_eq!(moment(&integer(2), &integer(1), 4), integer(55));
        assert_eq!(moment(&integer(7), &t, 0), integer(1));
    }

    #[test]
    fn half_integer_odd_moment_matches_gamma_form() {
        // m_{2p-1} for s = 1/2, t = 1 at p = 2:
        // 2^{-5} * 2 / (11 * 5) * (2! 12!) / (4! 4! 6!)
        let fact = |n: i64| (1..=n).fold(integer(1), |a, i| a * integer(i));
        let p = 2i64;
        let gamma_form = ratio(1, 32) * integer(p) / (integer(6 * p - 1) * integer(2 * p + 1))
            * fact(p) * fact(6 * p)
            / (fact(2 * p) * fact(2 * p) * fact(3 * p));
        let closed = moment(&ratio(1, 2), &integer(1), 3);
        assert_eq!(closed, gamma_form);
        assert_eq!(closed, ratio(21, 8));
        assert_eq!(closed, fuss_catalan(&ratio(1, 2), 3));
        // even moments: binom(3p, p) / (p + 1)
        assert_eq!(moment(&ratio(1, 2), &integer(1), 4), ratio(5, 1));
    }

    #[test]
    fn series_routes() {
        let t = ratio(2, 5);
        let m = moments_via_series(&integer(1), &t, 4, SeriesRoute::FreeProduct).unwrap();
        assert_eq!(m.get(2), t.clone() + t.clone() * t.clone());

        let m = moments_via_series(&integer(2), &integer(1), 6, SeriesRoute::FreeProduct).unwrap();
        assert_eq!(&m.moments()[..4], &[integer(1), integer(3), integer(12), integer(55)]);

        let half = ratio(1, 2);
        let a = moments_via_series(&integer(2), &half, 8, SeriesRoute::FreeProduct).unwrap();
        let b = moments_via_series(&integer(2), &half, 8, SeriesRoute::Compression).unwrap();
        assert_eq!(a, b);

        assert!(matches!(
            moments_via_series(&half, &integer(2), 4, SeriesRoute::FreeProduct),
            Err(Error::OutsideRoutes(_))
        ));
        assert!(matches!(
            moments_via_series(&integer(2), &integer(2), 4, SeriesRoute::Compression),
            Err(Error::OutsideRoutes(_))
        ));
        assert_eq!(default_route(&half, &integer(2)), None);
    }

    #[test]
    fn partition_route_matches_closed_form() {
        let t = ratio(1, 4);
        let m = moments_via_partitions(3, &t, 4).unwrap();
        assert_eq!(m, moments(&integer(3), &t, 4));
    }

    #[test]
    fn polynomial_certificate() {
        for s in [integer(1), integer(2), ratio(3, 2)] {
            for k in 1..=4 {
                let p = moment_polynomial_via_series(&s, k).unwrap();
                let want = Polynomial::new((0..=k).map(|b| fuss_narayana_coefficient(&s, k, b)).collect());
                assert_eq!(p, want, "s = {s}, k = {k}");
            }
        }
    }

    #[test]
    fn stieltjes_equation_residual_vanishes() {
        for (s, t) in [(integer(2), ratio(1, 3)), (ratio(5, 2), integer(1)), (integer(3), integer(2))] {
            let m = moments(&s, &t, 10);
            let r = stieltjes_residual(&s, &t, &m).unwrap();
            assert_eq!(r, Series::zero(10), "s = {s}, t = {t}");
        }
        let wrong = moments(&integer(2), &ratio(1, 3), 6);
        let r = stieltjes_residual(&integer(2), &ratio(1, 2), &wrong).unwrap();
        assert_ne!(r, Series::zero(6));
    }
}
