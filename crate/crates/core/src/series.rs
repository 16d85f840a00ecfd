//! Truncated power series and the moment-transform pipeline.
//!
//! A [`Series`] stores `c_0..=c_N` and is valid to order `N`: every operation
//! returns a series whose order is the largest one its inputs determine.
//!
//! The moment side uses the generating function `f(z) = 1 + Σ m_k z^k`,
//! `ψ = f - 1`, its compositional inverse `χ`, and `S(z) = (1 + 1/z) χ(z)`.
//! Free cumulants `κ_n` (the coefficients of the R transform) are solved order
//! by order from `f(z) = C(z f(z))` with `C(z) = 1 + Σ κ_n z^n`; the Cauchy
//! transform side (K and R with their `1/z` pole) is never materialized.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{checked_recip, is_positive, Scalar};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Series<T> {
    /// Series valid to order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![T::zero(); order + 1])
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// The series `z`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    /// Geometric series `1 / (1 - a z)`.
    pub fn geometric(a: &T, order: usize) -> Self {
        let mut c = Vec::with_capacity(order + 1);
        let mut p = T::one();
        for _ in 0..=order {
            c.push(p.clone());
            p = p * a.clone();
        }
        Self::new(c)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `z^i`; zero past the order.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c: Vec<T> = self.coeffs.iter().take(order + 1).cloned().collect();
        c.resize(order + 1, T::zero());
        Self::new(c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|i| self.coeffs[i].clone() + other.coeffs[i].clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|i| self.coeffs[i].clone() - other.coeffs[i].clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, a: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * a.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// `1 / self`; needs an invertible constant term.
    pub fn recip(&self) -> Result<Self> {
        let inv0 = checked_recip(&self.coeffs[0])
            .ok_or_else(|| Error::InadmissibleConstantTerm(self.coeffs[0].to_string()))?;
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = -acc * inv0.clone();
        }
        Ok(Self::new(out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// `z * self`, one order higher.
    pub fn mul_z(&self) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(T::zero());
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    /// `self / z`, one order lower. The constant term must vanish.
    pub fn div_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InadmissibleConstantTerm(self.coeffs[0].to_string()));
        }
        if self.coeffs.len() < 2 {
            return Err(Error::InvalidParameter("series too short to divide by z".into()));
        }
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::new(
            (1..=self.order())
                .map(|i| self.coeffs[i].clone() * <T as Scalar>::from_i64(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(T::zero());
        for (i, a) in self.coeffs.iter().enumerate() {
            c.push(a.clone() / <T as Scalar>::from_i64(i as i64 + 1));
        }
        Self::new(c)
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InadmissibleConstantTerm(inner.coeffs[0].to_string()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[i].clone();
        }
        Ok(acc)
    }

    /// `exp(self)`; the constant term must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InadmissibleConstantTerm(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        out[0] = T::one();
        // k y_k = Σ_{j=1..k} j h_j y_{k-j}
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc
                    + <T as Scalar>::from_i64(j as i64) * self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = acc / <T as Scalar>::from_i64(k as i64);
        }
        Ok(Self::new(out))
    }

    /// `log(self)`; needs a constant term with a scalar logarithm (exact
    /// types: exactly one).
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        let ln0 = c0
            .ln()
            .ok_or_else(|| Error::InadmissibleConstantTerm(c0.to_string()))?;
        let g = self.scale(&(T::one() / c0));
        let n = self.order();
        let mut l = g.derivative().div(&g)?.integral().truncate(n);
        l.coeffs[0] = ln0;
        Ok(l)
    }

    /// `self^alpha` via `exp(alpha log(self / c_0))` times `c_0^alpha`.
    pub fn pow(&self, alpha: &T) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        let lead = c0
            .pow_scalar(alpha)
            .ok_or_else(|| Error::InadmissibleConstantTerm(c0.to_string()))?;
        let unit = self.scale(&(T::one() / c0));
        let mut l = unit.log()?;
        l.coeffs[0] = T::zero();
        Ok(l.scale(alpha).exp()?.scale(&lead))
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[z^n] g^{-1} = (1/n) [w^{n-1}] (w / g(w))^n`.
    pub fn revert(&self) -> Result<Self> {
        self.check_revertible()?;
        let n = self.order();
        let h = self.div_z()?.recip()?;
        let mut out = vec![T::zero(); n + 1];
        let mut power = Self::one(h.order());
        for k in 1..=n {
            power = power.mul(&h);
            out[k] = power.coeff(k - 1) / <T as Scalar>::from_i64(k as i64);
        }
        Ok(Self::new(out))
    }

    /// Compositional inverse by Newton iteration on series,
    /// `χ ← χ - (g(χ) - z) / g'(χ)`. Agrees with [`Series::revert`].
    pub fn revert_newton(&self) -> Result<Self> {
        self.check_revertible()?;
        let n = self.order();
        let z = Self::variable(n);
        let dg = self.derivative();
        let mut chi = Self::variable(n).scale(&(T::one() / self.coeffs[1].clone()));
        let mut valid = 1usize;
        while valid < n {
            let residual = self.compose(&chi)?.sub(&z);
            // The derivative is zero-padded back to order n; the slope only needs
            // half the working precision.
            let slope = dg.truncate(n).compose(&chi)?;
            chi = chi.sub(&residual.div(&slope)?);
            valid *= 2;
        }
        Ok(chi)
    }

    fn check_revertible(&self) -> Result<()> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InadmissibleConstantTerm(self.coeffs[0].to_string()));
        }
        if self.order() < 1 || self.coeffs[1].is_zero() {
            return Err(Error::ZeroLinearCoefficient);
        }
        Ok(())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Series<U> {
        Series::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Scalar> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{i}"),
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "{body} + O(z^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    order: usize,
    coefficients: Vec<String>,
}

impl<T: Scalar> Serialize for Series<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesWire {
            order: self.order(),
            coefficients: self.coeffs.iter().map(Scalar::encode).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Series<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = SeriesWire::deserialize(deserializer)?;
        if wire.coefficients.len() != wire.order + 1 {
            return Err(D::Error::custom("order does not match coefficient count"));
        }
        let coeffs = decode_all(&wire.coefficients).map_err(D::Error::custom)?;
        Ok(Series::new(coeffs))
    }
}

fn decode_all<T: Scalar>(items: &[String]) -> std::result::Result<Vec<T>, String> {
    items
        .iter()
        .map(|s| T::decode(s).ok_or_else(|| format!("cannot parse scalar {s:?}")))
        .collect()
}

/// Moments `m_1..=m_N` of a (possibly formal) distribution; `m_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence<T> {
    moments: Vec<T>,
}

impl<T: Scalar> MomentSequence<T> {
    pub fn new(moments: Vec<T>) -> Result<Self> {
        if moments.is_empty() {
            return Err(Error::InvalidParameter("moment sequences need order >= 1".into()));
        }
        Ok(Self { moments })
    }

    /// Moments of the Dirac mass at `c`.
    pub fn dirac(c: &T, order: usize) -> Self {
        let mut m = Vec::with_capacity(order);
        let mut p = T::one();
        for _ in 0..order {
            p = p * c.clone();
            m.push(p.clone());
        }
        Self { moments: m }
    }

    /// Moments of `(1 - t) δ_0 + t δ_1`.
    pub fn bernoulli(t: &T, order: usize) -> Self {
        Self { moments: vec![t.clone(); order] }
    }

    /// Free Poisson law with rate `t`: every free cumulant equals `t`.
    pub fn free_poisson(t: &T, order: usize) -> Self {
        let kappa = CumulantSequence::new(CumulantKind::Free, vec![t.clone(); order]);
        moments_from_free_cumulants(&kappa)
    }

    pub fn order(&self) -> usize {
        self.moments.len()
    }

    /// `m_k`, with `m_0 = 1`. Panics past the order.
    pub fn get(&self, k: usize) -> T {
        if k == 0 {
            T::one()
        } else {
            self.moments[k - 1].clone()
        }
    }

    pub fn moments(&self) -> &[T] {
        &self.moments
    }

    /// `f(z) = 1 + Σ m_k z^k`.
    pub fn generating_series(&self) -> Series<T> {
        let mut c = Vec::with_capacity(self.moments.len() + 1);
        c.push(T::one());
        c.extend(self.moments.iter().cloned());
        Series::new(c)
    }

    /// `ψ(z) = f(z) - 1`.
    pub fn psi(&self) -> Series<T> {
        let mut f = self.generating_series();
        f.coeffs[0] = T::zero();
        f
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self { moments: self.moments.iter().take(order).cloned().collect() }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MomentSequence<U> {
        MomentSequence { moments: self.moments.iter().map(f).collect() }
    }

    fn from_psi(psi: &Series<T>, order: usize) -> Self {
        Self { moments: (1..=order).map(|k| psi.coeff(k)).collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct MomentsWire {
    order: usize,
    moments: Vec<String>,
}

impl<T: Scalar> Serialize for MomentSequence<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MomentsWire {
            order: self.order(),
            moments: self.moments.iter().map(Scalar::encode).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for MomentSequence<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = MomentsWire::deserialize(deserializer)?;
        if wire.moments.len() != wire.order {
            return Err(D::Error::custom("order does not match moment count"));
        }
        let moments = decode_all(&wire.moments).map_err(D::Error::custom)?;
        MomentSequence::new(moments).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CumulantKind {
    Free,
    Classical,
}

/// `κ_1..=κ_N`. For the free kind these are the R-transform coefficients,
/// `R(z) = Σ κ_n z^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulantSequence<T> {
    pub kind: CumulantKind,
    values: Vec<T>,
}

impl<T: Scalar> CumulantSequence<T> {
    pub fn new(kind: CumulantKind, values: Vec<T>) -> Self {
        Self { kind, values }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `κ_n`, 1-based.
    pub fn get(&self, n: usize) -> T {
        self.values[n - 1].clone()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn scale(&self, a: &T) -> Self {
        Self {
            kind: self.kind,
            values: self.values.iter().map(|v| v.clone() * a.clone()).collect(),
        }
    }
}

impl<T: Scalar> Serialize for CumulantSequence<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CumulantSequence", 3)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("order", &self.order())?;
        let v: Vec<String> = self.values.iter().map(Scalar::encode).collect();
        st.serialize_field("cumulants", &v)?;
        st.end()
    }
}

/// Compositional inverse; see [`Series::revert`].
pub fn revert<T: Scalar>(g: &Series<T>) -> Result<Series<T>> {
    g.revert()
}

/// `S(z) = (1 + 1/z) χ(z)` with `χ = ψ^{-1}`; valid to order `N - 1`.
pub fn s_transform<T: Scalar>(m: &MomentSequence<T>) -> Result<Series<T>> {
    if m.get(1).is_zero() {
        return Err(Error::VanishingFirstMoment);
    }
    let chi = m.psi().revert()?;
    let one_plus_z = Series::one(chi.order()).add(&Series::variable(chi.order()));
    chi.mul(&one_plus_z).div_z()
}

/// Inverse of [`s_transform`]: the moments `m_1..=m_N` whose S transform is
/// `S` (which must be valid to at least order `N - 1`).
pub fn moments_from_s<T: Scalar>(s: &Series<T>, order: usize) -> Result<MomentSequence<T>> {
    if s.coeff(0).is_zero() {
        return Err(Error::InadmissibleConstantTerm(s.coeff(0).to_string()));
    }
    if order == 0 || s.order() + 1 < order {
        return Err(Error::OrderMismatch { left: s.order() + 1, right: order });
    }
    let s = s.truncate(order - 1);
    let one_plus_z = Series::one(order - 1).add(&Series::variable(order - 1));
    let chi = s.div(&one_plus_z)?.mul_z();
    let psi = chi.revert()?;
    Ok(MomentSequence::from_psi(&psi, order))
}

/// Powers `(z f)^j`, `j = 0..=n`, truncated at order `n`.
fn shifted_powers<T: Scalar>(f: &Series<T>, n: usize) -> Vec<Series<T>> {
    let u = f.truncate(n).mul_z().truncate(n);
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(Series::one(n));
    for j in 1..=n {
        let next = powers[j - 1].mul(&u);
        powers.push(next);
    }
    powers
}

/// Free cumulants, solved triangularly from `f(z) = C(z f(z))`.
pub fn free_cumulants<T: Scalar>(m: &MomentSequence<T>) -> CumulantSequence<T> {
    let n = m.order();
    let powers = shifted_powers(&m.generating_series(), n);
    let mut kappa: Vec<T> = Vec::with_capacity(n);
    for k in 1..=n {
        // [z^k] (z f)^k = 1, so κ_k is what the lower cumulants leave over.
        let mut acc = m.get(k);
        for (j, kj) in kappa.iter().enumerate() {
            acc = acc - kj.clone() * powers[j + 1].coeff(k);
        }
        kappa.push(acc);
    }
    CumulantSequence::new(CumulantKind::Free, kappa)
}

/// Moments from free cumulants: `m_k = [z^k] Σ_j κ_j (z f)^j`, where the
/// right side only involves `m_1..m_{k-1}`.
pub fn moments_from_free_cumulants<T: Scalar>(kappa: &CumulantSequence<T>) -> MomentSequence<T> {
    let n = kappa.order();
    let mut f = Series::one(n);
    for k in 1..=n {
        let powers = shifted_powers(&f, k);
        let mut acc = T::zero();
        for j in 1..=k {
            acc = acc + kappa.get(j) * powers[j].coeff(k);
        }
        f.coeffs[k] = acc;
    }
    MomentSequence::from_psi(&f, n)
}

/// Classical cumulants: `n!` times the coefficients of
/// `log(1 + Σ m_n z^n / n!)`.
pub fn classical_cumulants<T: Scalar>(m: &MomentSequence<T>) -> CumulantSequence<T> {
    let n = m.order();
    let mut c = vec![T::one()];
    let mut fact = T::one();
    for k in 1..=n {
        fact = fact * <T as Scalar>::from_i64(k as i64);
        c.push(m.get(k) / fact.clone());
    }
    let log = Series::new(c).log().expect("constant term is one");
    let mut fact = T::one();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        fact = fact * <T as Scalar>::from_i64(k as i64);
        out.push(log.coeff(k) * fact.clone());
    }
    CumulantSequence::new(CumulantKind::Classical, out)
}

/// Inverse of [`classical_cumulants`].
pub fn moments_from_classical_cumulants<T: Scalar>(c: &CumulantSequence<T>) -> MomentSequence<T> {
    let n = c.order();
    let mut coeffs = vec![T::zero()];
    let mut fact = T::one();
    for k in 1..=n {
        fact = fact * <T as Scalar>::from_i64(k as i64);
        coeffs.push(c.get(k) / fact.clone());
    }
    let e = Series::new(coeffs).exp().expect("zero constant term");
    let mut fact = T::one();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        fact = fact * <T as Scalar>::from_i64(k as i64);
        out.push(e.coeff(k) * fact.clone());
    }
    MomentSequence { moments: out }
}

fn same_order<T: Scalar>(a: &MomentSequence<T>, b: &MomentSequence<T>) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: b.order() });
    }
    Ok(())
}

/// Free additive convolution: free cumulants add.
pub fn free_add<T: Scalar>(mu: &MomentSequence<T>, nu: &MomentSequence<T>) -> Result<MomentSequence<T>> {
    same_order(mu, nu)?;
    let a = free_cumulants(mu);
    let b = free_cumulants(nu);
    let sum = a.values.iter().zip(&b.values).map(|(x, y)| x.clone() + y.clone()).collect();
    Ok(moments_from_free_cumulants(&CumulantSequence::new(CumulantKind::Free, sum)))
}

/// Free multiplicative convolution: S transforms multiply.
pub fn free_mult<T: Scalar>(mu: &MomentSequence<T>, nu: &MomentSequence<T>) -> Result<MomentSequence<T>> {
    same_order(mu, nu)?;
    let s = s_transform(mu)?.mul(&s_transform(nu)?);
    moments_from_s(&s, mu.order())
}

/// `μ^{⊠s}`: the S transform raised to the power `s`.
pub fn boxtimes_power<T: Scalar>(m: &MomentSequence<T>, s: &T) -> Result<MomentSequence<T>> {
    if !is_positive(s) {
        return Err(Error::InvalidParameter(format!("boxtimes exponent {s} must be positive")));
    }
    if !is_positive(&m.get(1)) {
        return Err(Error::InadmissibleConstantTerm(format!("S(0) = 1/{}", m.get(1))));
    }
    let st = s_transform(m)?.pow(s)?;
    moments_from_s(&st, m.order())
}

/// `μ^{⊞t}`: free cumulants scaled by `t`.
pub fn boxplus_power<T: Scalar>(m: &MomentSequence<T>, t: &T) -> Result<MomentSequence<T>> {
    if !is_positive(t) {
        return Err(Error::InvalidParameter(format!("boxplus exponent {t} must be positive")));
    }
    Ok(moments_from_free_cumulants(&free_cumulants(m).scale(t)))
}

/// `η(z) = 1 - 1/f(z)` and `Σ(z) = S(z / (1 - z))`.
pub fn eta_and_sigma<T: Scalar>(m: &MomentSequence<T>) -> Result<(Series<T>, Series<T>)> {
    let f = m.generating_series();
    let eta = Series::one(f.order()).sub(&f.recip()?);
    let s = s_transform(m)?;
    let n = s.order();
    let inner = Series::geometric(&T::one(), n).mul(&Series::variable(n));
    let sigma = s.compose(&inner)?;
    Ok((eta, sigma))
}
