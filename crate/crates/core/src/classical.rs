//! The classical Bessel laws `p_st` and `p̃_st` as exact atomic measures on
//! the cyclotomic integers `Z[w]`, `w = e^{2πi/s}`.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{integer, Rational};
use crate::series::Series;

/// Weights below this are folded into the deficit during long convolutions.
pub const PRUNE_WEIGHT: f64 = 1e-18;

/// Coefficients (ascending, monic) of the `s`-th cyclotomic polynomial,
/// from `x^s - 1 = Π_{d | s} Φ_d`.
pub fn cyclotomic_polynomial(s: u32) -> &'static [i64] {
    static CACHE: OnceLock<Mutex<HashMap<u32, &'static [i64]>>> = OnceLock::new();
    assert!(s >= 1, "cyclotomic polynomial needs s >= 1");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&s) {
        return p;
    }
    let mut num = vec![0i64; s as usize + 1];
    num[0] = -1;
    num[s as usize] = 1;
    for d in (1..s).filter(|d| s % d == 0) {
        num = exact_divide(&num, cyclotomic_polynomial(d));
    }
    let leaked: &'static [i64] = Box::leak(num.into_boxed_slice());
    cache.lock().expect("cache lock").insert(s, leaked);
    leaked
}

/// Quotient of integer polynomials when the divisor is monic and divides.
fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Element of `Z[w]`, reduced modulo `Φ_s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CyclotomicInt {
    s: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn from_coeffs(s: u32, coeffs: &[i64]) -> Self {
        let modulus = cyclotomic_polynomial(s);
        let deg = modulus.len() - 1;
        let mut a: Vec<i128> = coeffs.iter().map(|&c| c as i128).collect();
        for i in (deg..a.len()).rev() {
            let c = a[i];
            if c == 0 {
                continue;
            }
            for (j, &mj) in modulus.iter().enumerate() {
                a[i - deg + j] -= c * mj as i128;
            }
        }
        a.resize(deg, 0);
        let coeffs = a
            .into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
            .collect();
        Self { s, coeffs }
    }

    pub fn zero(s: u32) -> Self {
        Self::from_coeffs(s, &[])
    }

    pub fn from_integer(s: u32, n: i64) -> Self {
        Self::from_coeffs(s, &[n])
    }

    /// `w^k`.
    pub fn root_power(s: u32, k: u32) -> Self {
        let mut c = vec![0i64; (k % s) as usize + 1];
        c[(k % s) as usize] = 1;
        Self::from_coeffs(s, &c)
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Coordinates in the basis `1, w, ..., w^{φ(s)-1}`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::from_integer(self.s, 1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn embed(&self) -> Complex64 {
        let w = Complex64::from_polar(1.0, 2.0 * PI / self.s as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * w + c as f64;
        }
        acc
    }

    /// The value as an integer when it lies in `Z`.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs.iter().skip(1).all(|&c| c == 0).then(|| self.coeffs.first().copied().unwrap_or(0))
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.s, rhs.s, "mixed cyclotomic rings");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicInt { s: self.s, coeffs }
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.s, rhs.s, "mixed cyclotomic rings");
        let n = self.coeffs.len();
        let mut prod = vec![0i64; (2 * n).saturating_sub(1)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = a.checked_mul(b).and_then(|ab| prod[i + j].checked_add(ab)).expect("cyclotomic coefficient overflow");
            }
        }
        CyclotomicInt::from_coeffs(self.s, &prod)
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt { s: self.s, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 => format!("{c}w"),
                _ => format!("{c}w^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Finitely supported measure on `Z[w]` plus the mass lost to truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    s: u32,
    atoms: BTreeMap<CyclotomicInt, f64>,
    deficit: f64,
}

impl DiscreteMeasure {
    pub fn dirac(atom: CyclotomicInt) -> Self {
        let s = atom.s;
        Self { s, atoms: BTreeMap::from([(atom, 1.0)]), deficit: 0.0 }
    }

    /// Builds from explicit weights; the deficit is whatever is missing from 1.
    pub fn from_atoms(s: u32, atoms: impl IntoIterator<Item = (CyclotomicInt, f64)>) -> Self {
        let mut m = Self { s, atoms: BTreeMap::new(), deficit: 0.0 };
        for (a, w) in atoms {
            assert_eq!(a.s, s, "mixed cyclotomic rings");
            *m.atoms.entry(a).or_insert(0.0) += w;
        }
        m.deficit = (1.0 - m.atoms.values().sum::<f64>()).max(0.0);
        m
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn atoms(&self) -> &BTreeMap<CyclotomicInt, f64> {
        &self.atoms
    }

    pub fn deficit(&self) -> f64 {
        self.deficit
    }

    pub fn weight(&self, atom: &CyclotomicInt) -> f64 {
        self.atoms.get(atom).copied().unwrap_or(0.0)
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.values().sum()
    }

    /// `Σ weight · exp(atom · z)`.
    pub fn fourier(&self, z: Complex64) -> Complex64 {
        self.atoms.iter().map(|(a, w)| (a.embed() * z).exp() * *w).sum()
    }

    /// `Σ weight · atom^k` in the complex embedding.
    pub fn moment(&self, k: u32) -> Complex64 {
        self.atoms.iter().map(|(a, w)| a.embed().powu(k) * *w).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let atoms: Vec<_> = self
            .atoms
            .iter()
            .map(|(a, w)| {
                let z = a.embed();
                serde_json::json!({ "coeffs": a.coeffs, "complex": [z.re, z.im], "weight": w })
            })
            .collect();
        serde_json::json!({ "s": self.s, "atoms": atoms, "deficit": self.deficit })
    }

    fn prune(&mut self, threshold: f64) {
        let small: Vec<CyclotomicInt> =
            self.atoms.iter().filter(|(_, &w)| w < threshold).map(|(a, _)| a.clone()).collect();
        for a in small {
            self.deficit += self.atoms.remove(&a).unwrap_or(0.0);
        }
    }
}

/// Classical convolution: atoms add exactly in `Z[w]`.
pub fn convolve(a: &DiscreteMeasure, b: &DiscreteMeasure) -> DiscreteMeasure {
    assert_eq!(a.s, b.s, "mixed cyclotomic rings");
    let mut atoms = BTreeMap::new();
    for (x, wx) in &a.atoms {
        for (y, wy) in &b.atoms {
            *atoms.entry(x + y).or_insert(0.0) += wx * wy;
        }
    }
    let (ma, mb) = (a.total_weight(), b.total_weight());
    DiscreteMeasure { s: a.s, atoms, deficit: a.deficit * mb + b.deficit * ma + a.deficit * b.deficit }
}

/// Image under `x ↦ x^power`, merging atoms that collide.
pub fn power_pushforward(m: &DiscreteMeasure, power: u32) -> DiscreteMeasure {
    let mut atoms = BTreeMap::new();
    for (x, w) in &m.atoms {
        *atoms.entry(x.pow(power)).or_insert(0.0) += w;
    }
    DiscreteMeasure { s: m.s, atoms, deficit: m.deficit }
}

/// Level-`s` exponential `Σ_k z^{sk} / (sk)!`.
pub fn exp_s(s: u32, z: Complex64) -> Complex64 {
    assert!(s >= 1, "exp_s needs s >= 1");
    if z.norm() > 4.0 {
        let w = Complex64::from_polar(1.0, 2.0 * PI / s as f64);
        return (0..s).map(|k| (w.powu(k) * z).exp()).sum::<Complex64>() / s as f64;
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = term;
    for n in 1..400u32 {
        term = term * z / n as f64;
        if n % s == 0 {
            acc += term;
            if term.norm() < 1e-18 * acc.norm().max(1e-300) {
                break;
            }
        }
    }
    acc
}

/// Exact Taylor series of `exp_s` to the given order.
pub fn exp_s_series(s: u32, order: usize) -> Series<Rational> {
    let mut coeffs = vec![integer(0); order + 1];
    let mut fact = integer(1);
    for (n, c) in coeffs.iter_mut().enumerate() {
        if n > 0 {
            fact *= integer(n as i64);
        }
        if n % s as usize == 0 {
            *c = integer(1) / fact.clone();
        }
    }
    Series::new(coeffs)
}

/// Default truncation `ceil(10 + 5t)`.
pub fn default_p_max(t: f64) -> u32 {
    (10.0 + 5.0 * t).ceil() as u32
}

fn poisson_pmf(lambda: f64, p: u32) -> f64 {
    if lambda == 0.0 {
        return if p == 0 { 1.0 } else { 0.0 };
    }
    (-lambda + p as f64 * lambda.ln() - ln_factorial(p)).exp()
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `P(Poisson(λ) > p_max)`, summed directly so that small tails keep full
/// relative precision.
pub fn poisson_tail(lambda: f64, p_max: u32) -> f64 {
    let mut acc = 0.0;
    let mut p = p_max + 1;
    loop {
        let term = poisson_pmf(lambda, p);
        acc += term;
        if (p as f64 > lambda && term < 1e-20 * acc.max(1e-300)) || p > p_max + 100_000 {
            return acc;
        }
        p += 1;
    }
}

/// `1 - (1 - q)^s` without cancellation.
fn product_tail(q: f64, s: u32) -> f64 {
    -(s as f64 * (-q).ln_1p()).exp_m1()
}

fn check_law_params(s: u32, t: f64, p_max: u32) -> Result<()> {
    if s == 0 || p_max == 0 || !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("bessel law needs s >= 1, t > 0, P_max >= 1; got s = {s}, t = {t}, P_max = {p_max}")));
    }
    Ok(())
}

/// `p̃_st`: the law of `Σ_k w^k a_k` with `a_k` independent Poisson(t/s),
/// each truncated at `p_max`. Built by convolving the `s` rotated Poisson
/// pieces, which equals the sum over all `p ∈ {0..P_max}^s`.
pub fn bessel_law(s: u32, t: f64, p_max: u32) -> Result<DiscreteMeasure> {
    check_law_params(s, t, p_max)?;
    let lambda = t / s as f64;
    let mut law = DiscreteMeasure::dirac(CyclotomicInt::zero(s));
    for k in 0..s {
        let w = CyclotomicInt::root_power(s, k);
        let piece = DiscreteMeasure {
            s,
            atoms: (0..=p_max)
                .map(|p| (&w * &CyclotomicInt::from_integer(s, p as i64), poisson_pmf(lambda, p)))
                .collect(),
            deficit: 0.0,
        };
        law = convolve(&law, &piece);
    }
    law.deficit = product_tail(poisson_tail(lambda, p_max), s);
    Ok(law)
}

/// `p_st`, the image of `p̃_st` under `x ↦ x^s`.
pub fn bessel_law_powered(s: u32, t: f64, p_max: u32) -> Result<DiscreteMeasure> {
    Ok(power_pushforward(&bessel_law(s, t, p_max)?, s))
}

/// Rigorous bound on `|F_true(z) - F_truncated(z)|` for `p̃_st`: the omitted
/// tuples carry `e^{-t} Π (t/s)^{p_i}/p_i!` and `|exp(atom z)| <= e^{|z| Σ p_i}`,
/// which sums to `e^{t(e^{|z|}-1)}` times a tilted Poisson tail.
pub fn fourier_tail_bound(s: u32, t: f64, p_max: u32, z_abs: f64) -> f64 {
    let tilted = t * z_abs.exp() / s as f64;
    (t * z_abs.exp_m1()).exp() * product_tail(poisson_tail(tilted, p_max), s)
}

/// `log F̃_st(z) = t (exp_s z - 1)`.
pub fn bessel_log_fourier(s: u32, t: f64, z: Complex64) -> Complex64 {
    (exp_s(s, z) - 1.0) * t
}

/// Weight of `p̃_{2t}` at the integer `r`: `e^{-t} Σ_p u^{2p+|r|} / (p! (p+|r|)!)`
/// with `u = t/2`.
pub fn bessel_s2_weight(t: f64, r: i64) -> f64 {
    let r = r.unsigned_abs() as u32;
    if t == 0.0 {
        return if r == 0 { 1.0 } else { 0.0 };
    }
    let ln_u = (t / 2.0).ln();
    let mut acc = 0.0;
    for p in 0u32.. {
        let term = ((2 * p + r) as f64 * ln_u - ln_factorial(p) - ln_factorial(p + r) - t).exp();
        acc += term;
        if p as f64 > t && term < 1e-20 * acc.max(1e-300) {
            break;
        }
    }
    acc
}

/// `((1 - 1/n) δ_0 + (1/n) ρ)^{*n}` with `ρ` uniform on the `s`-th roots of
/// unity.
pub fn poisson_limit(s: u32, n: u32) -> Result<DiscreteMeasure> {
    if s == 0 || n == 0 {
        return Err(Error::InvalidParameter("poisson limit needs s >= 1 and n >= 1".into()));
    }
    let p = 1.0 / n as f64;
    let mut atoms = vec![(CyclotomicInt::zero(s), 1.0 - p)];
    atoms.extend((0..s).map(|k| (CyclotomicInt::root_power(s, k), p / s as f64)));
    let step = DiscreteMeasure::from_atoms(s, atoms);
    let mut acc = step.clone();
    for _ in 1..n {
        acc = convolve(&acc, &step);
        acc.prune(PRUNE_WEIGHT);
    }
    Ok(acc)
}

/// `½ Σ |a(x) - b(x)|` over the union of the atom sets.
pub fn total_variation(a: &DiscreteMeasure, b: &DiscreteMeasure) -> f64 {
    let mut diff: BTreeMap<&CyclotomicInt, f64> = a.atoms.iter().map(|(x, w)| (x, *w)).collect();
    for (x, w) in &b.atoms {
        *diff.entry(x).or_insert(0.0) -= w;
    }
    0.5 * diff.values().map(|d| d.abs()).sum::<f64>()
}
