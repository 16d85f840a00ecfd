//! Permutations, the Graczyk-Letac-Massam trace formula and geodesic counts
//! in the Cayley graph of `S_K`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{integer, Rational, Scalar};

/// Largest `K` for which permutation sums over `S_K` are attempted.
pub const MAX_PERMUTATION_SIZE: usize = 8;

/// Permutation of `{0..K-1}` in one-line form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(k: usize) -> Self {
        Self { images: (0..k).collect() }
    }

    /// The full cycle `i ↦ i + 1 mod K`.
    pub fn full_cycle(k: usize) -> Self {
        Self { images: (0..k).map(|i| (i + 1) % k).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Self { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// `γ(σ)`, the number of cycles.
    pub fn num_cycles(&self) -> usize {
        count_cycles(&self.images)
    }
}

fn count_cycles(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut count = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
        }
    }
    count
}

/// Calls `visit` with every `σ ∈ S_K` whose cycle lengths are all multiples
/// of `s`. Cycles are grown from their smallest unused element, and a cycle
/// may only close at a length divisible by `s`, so excluded cycle types are
/// never built.
pub fn for_each_permutation_with_cycles_divisible_by(k: usize, s: usize, mut visit: impl FnMut(&[usize])) {
    assert!(s >= 1, "cycle length divisor must be positive");
    let mut images = vec![usize::MAX; k];
    let mut used = vec![false; k];
    grow(&mut images, &mut used, s, None, &mut visit);
}

/// `open` is `(cycle start, current tail, current length)`.
fn grow(
    images: &mut [usize],
    used: &mut [bool],
    s: usize,
    open: Option<(usize, usize, usize)>,
    visit: &mut dyn FnMut(&[usize]),
) {
    match open {
        None => match used.iter().position(|u| !u) {
            None => visit(images),
            Some(start) => {
                used[start] = true;
                grow(images, used, s, Some((start, start, 1)), visit);
                used[start] = false;
            }
        },
        Some((start, tail, len)) => {
            if len % s == 0 {
                images[tail] = start;
                grow(images, used, s, None, visit);
            }
            for next in 0..images.len() {
                if used[next] {
                    continue;
                }
                used[next] = true;
                images[tail] = next;
                grow(images, used, s, Some((start, next, len + 1)), visit);
                used[next] = false;
            }
            images[tail] = usize::MAX;
        }
    }
}

fn check_size(k: usize) -> Result<()> {
    if k > MAX_PERMUTATION_SIZE {
        return Err(Error::BoundExceeded { requested: k, limit: MAX_PERMUTATION_SIZE });
    }
    Ok(())
}

/// `γ(σ^{-1} π)` for the full cycle `π`.
fn cycles_against_full_cycle(sigma: &[usize], inverse: &mut [usize], work: &mut [usize]) -> usize {
    let k = sigma.len();
    for (i, &j) in sigma.iter().enumerate() {
        inverse[j] = i;
    }
    for i in 0..k {
        work[i] = inverse[(i + 1) % k];
    }
    count_cycles(work)
}

/// Number of `σ ∈ S_{sk}` with all cycle lengths divisible by `s` lying on a
/// geodesic from the identity to the full cycle:
/// `d(e,σ) + d(σ,π) = d(e,π)` with `d(α,β) = K - γ(α^{-1}β)`.
pub fn geodesic_count(s: usize, k: usize) -> Result<u64> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let n = s * k;
    check_size(n)?;
    let mut inverse = vec![0; n];
    let mut work = vec![0; n];
    let mut count = 0u64;
    for_each_permutation_with_cycles_divisible_by(n, s, |sigma| {
        let d_e_sigma = n - count_cycles(sigma);
        let d_sigma_pi = n - cycles_against_full_cycle(sigma, &mut inverse, &mut work);
        if d_e_sigma + d_sigma_pi == n - 1 {
            count += 1;
        }
    });
    Ok(count)
}

/// Diagonal matrix `D` in `E Tr((DW)^K)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DSpec {
    /// `D = I_N`, `W` an `N × N` Wishart matrix.
    Identity,
    /// `D = diag(w^0 1_N, ..., w^{s-1} 1_N)`, `W` an `sN × sN` Wishart matrix.
    RootsOfUnity(usize),
}

impl DSpec {
    pub fn s(self) -> usize {
        match self {
            DSpec::Identity => 1,
            DSpec::RootsOfUnity(s) => s,
        }
    }
}

/// Finite Laurent polynomial `Σ c_e x^e` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPolynomial {
    pub fn add_term(&mut self, exponent: i64, c: Rational) {
        let entry = self.terms.entry(exponent).or_insert_with(|| integer(0));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn coefficient(&self, exponent: i64) -> Rational {
        self.terms.get(&exponent).cloned().unwrap_or_else(|| integer(0))
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.terms.iter().map(|(e, c)| c.to_f64() * x.powi(*e as i32)).sum()
    }

    pub fn evaluate_exact(&self, x: &Rational) -> Rational {
        self.terms.iter().fold(integer(0), |acc, (e, c)| acc + c * pow_int(x, *e))
    }
}

fn pow_int(x: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &c.encode())?;
        }
        map.end()
    }
}

/// Exact normalized expectation `E tr((DW)^K)` as a Laurent polynomial in
/// the matrix dimension `d` (`N` for the identity, `sN` for the roots block).
///
/// From `E Tr((DW)^K) = Σ_σ d^{γ(σ^{-1}π) - K} r_σ(D)` with
/// `r_σ(D) = Π_{cycles} Tr(D^{|c|})`. For the roots block `Tr(D^p)` is `d`
/// when `s | p` and 0 otherwise, so only `σ` with all cycle lengths divisible
/// by `s` contribute, each with `d^{γ(σ^{-1}π) + γ(σ) - K - 1}`.
pub fn glm_exact(k: usize, d: DSpec) -> Result<LaurentPolynomial> {
    let s = d.s();
    if k == 0 || s == 0 {
        return Err(Error::InvalidParameter("K and s must be at least 1".into()));
    }
    check_size(k)?;
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    let mut inverse = vec![0; k];
    let mut work = vec![0; k];
    for_each_permutation_with_cycles_divisible_by(k, s, |sigma| {
        let e = cycles_against_full_cycle(sigma, &mut inverse, &mut work) as i64
            + count_cycles(sigma) as i64
            - k as i64
            - 1;
        *counts.entry(e).or_insert(0) += 1;
    });
    let mut poly = LaurentPolynomial::default();
    for (e, c) in counts {
        poly.add_term(e, integer(c));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_nc_s, fuss_catalan};

    fn factorial(n: usize) -> u64 {
        (1..=n as u64).product()
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::full_cycle(4);
        assert_eq!(p.num_cycles(), 1);
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(4));
        assert_eq!(p.compose(&p).cycles(), vec![vec![0, 2], vec![1, 3]]);
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let mut n = 0;
        for_each_permutation_with_cycles_divisible_by(5, 1, |_| n += 1);
        assert_eq!(n, factorial(5));
        // all cycles even in S_4: three (2)(2) plus six 4-cycles
        let mut n = 0;
        for_each_permutation_with_cycles_divisible_by(4, 2, |sigma| {
            assert!(Permutation::new(sigma.to_vec()).unwrap().cycles().iter().all(|c| c.len() % 2 == 0));
            n += 1;
        });
        assert_eq!(n, 9);
    }

    #[test]
    fn geodesic_examples() {
        assert_eq!(geodesic_count(3, 1).unwrap(), 1);
        assert_eq!(geodesic_count(2, 2).unwrap(), 3);
        assert_eq!(geodesic_count(1, 3).unwrap(), 5);
        assert!(matches!(geodesic_count(3, 3), Err(Error::BoundExceeded { .. })));
        for (s, k) in [(1, 5), (2, 3), (3, 2)] {
            let want = fuss_catalan(&integer(s as i64), k);
            assert_eq!(integer(geodesic_count(s, k).unwrap() as i64), want);
            assert_eq!(enumerate_nc_s(s, k).unwrap().len() as u64, geodesic_count(s, k).unwrap());
        }
    }

    #[test]
    fn glm_examples() {
        let p = glm_exact(1, DSpec::Identity).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.coefficient(0), integer(1));
        // E Tr(W^2) = 2N
        let p = glm_exact(2, DSpec::Identity).unwrap();
        assert_eq!(p.coefficient(0), integer(2));
        assert_eq!(p.evaluate(10.0), 2.0);
        let p = glm_exact(4, DSpec::RootsOfUnity(2)).unwrap();
        assert_eq!(p.coefficient(0), integer(3));
        assert!(p.max_exponent().unwrap() <= 0);
        let total: Rational = p.terms().values().sum();
        assert_eq!(total, integer(9));
        let json = serde_json::to_value(&p).unwrap();
        assert_eq!(json["0"], "3/1");
    }

    #[test]
    fn wishart_fourth_moment_has_genus_correction() {
        // E tr(W^2) for square Wishart: 2 with no 1/N^2 term; E tr(W^3) = 5 + 1/N^2
        let p = glm_exact(3, DSpec::Identity).unwrap();
        assert_eq!(p.coefficient(0), integer(5));
        assert_eq!(p.coefficient(-2), integer(1));
        assert_eq!(p.evaluate_exact(&integer(2)), Rational::new(21.into(), 4.into()));
    }
}
