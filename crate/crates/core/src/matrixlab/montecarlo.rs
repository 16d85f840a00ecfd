//! Monte Carlo for the random-matrix and character models. Every trial gets
//! its own generator seeded from `(seed, trial)`, and results are gathered in
//! trial order, so reports do not depend on the thread count.

use std::f64::consts::PI;

use ndarray::{Array2, Zip};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::bessel_law;
use crate::error::{Error, Result};
use crate::partitions::{Color, ColoredWord};

/// Dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    data: Array2<Complex64>,
    hermitian: bool,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { data: Array2::zeros((rows, cols)), hermitian: rows == cols }
    }

    pub fn identity(n: usize) -> Self {
        Self { data: Array2::eye(n), hermitian: true }
    }

    pub fn from_array(data: Array2<Complex64>) -> Self {
        Self { data, hermitian: false }
    }

    pub fn rows(&self) -> usize {
        self.data.nrows()
    }

    pub fn cols(&self) -> usize {
        self.data.ncols()
    }

    pub fn as_array(&self) -> &Array2<Complex64> {
        &self.data
    }

    /// Whether the matrix is known to be Hermitian by construction.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn dot(&self, other: &Self) -> Self {
        Self { data: self.data.dot(&other.data), hermitian: false }
    }

    pub fn adjoint(&self) -> Self {
        Self { data: self.data.t().mapv(|z| z.conj()), hermitian: self.hermitian }
    }

    /// `A A*`, Hermitian by construction.
    pub fn gram(&self) -> Self {
        Self { data: self.data.dot(&self.adjoint().data), hermitian: true }
    }

    /// `diag(d) · self`.
    pub fn scale_rows(&self, d: &[Complex64]) -> Self {
        let mut data = self.data.clone();
        for (mut row, &di) in data.rows_mut().into_iter().zip(d) {
            row.mapv_inplace(|z| z * di);
        }
        Self { data, hermitian: false }
    }

    pub fn trace(&self) -> Complex64 {
        self.data.diag().sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        Zip::from(&self.data).and(&other.data.t()).for_each(|a, b| acc += a * b);
        acc
    }
}

/// Bijective 64-bit mixer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(trial)))
}

/// Complex normal with `E|g|^2 = variance` by Box-Muller.
fn complex_gaussian(rng: &mut impl Rng, variance: f64) -> Complex64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    let r = (-variance * u1.ln()).sqrt();
    Complex64::from_polar(r, 2.0 * PI * u2)
}

/// Ginibre matrix filled row-major from `rng`.
pub fn ginibre_from(rng: &mut impl Rng, rows: usize, cols: usize, variance: f64) -> ComplexMatrix {
    let data = Array2::from_shape_simple_fn((rows, cols), || complex_gaussian(rng, variance));
    ComplexMatrix { data, hermitian: false }
}

/// I.i.d. complex Gaussian entries with `E|g|^2 = variance`.
pub fn sample_ginibre(rows: usize, cols: usize, variance: f64, seed: u64) -> Result<ComplexMatrix> {
    if !(variance > 0.0) {
        return Err(Error::InvalidParameter(format!("variance {variance} must be positive")));
    }
    Ok(ginibre_from(&mut trial_rng(seed, 0), rows, cols, variance))
}

/// Mean and standard error of a Monte Carlo statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MCReport {
    pub statistic: String,
    pub estimate: f64,
    pub std_error: f64,
    pub trials: usize,
    #[serde(rename = "N")]
    pub dim: usize,
    pub seed: u64,
}

impl MCReport {
    fn from_samples(statistic: String, samples: &[f64], dim: usize, seed: u64) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = if samples.len() > 1 {
            samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Self { statistic, estimate: mean, std_error: (var / n).sqrt(), trials: samples.len(), dim, seed }
    }

    /// `|estimate - target| <= z · std_error`.
    pub fn within(&self, target: f64, z: f64) -> bool {
        (self.estimate - target).abs() <= z * self.std_error
    }
}

fn check_mc(trials: usize, dim: usize) -> Result<()> {
    if trials == 0 || dim == 0 {
        return Err(Error::InvalidParameter("trials and dimension must be positive".into()));
    }
    Ok(())
}

/// Runs `trial` for each index in parallel; returns one sample vector per
/// trial in trial order.
fn run_trials<F>(trials: usize, seed: u64, trial: F) -> Vec<Vec<f64>>
where
    F: Fn(&mut ChaCha8Rng) -> Vec<f64> + Sync,
{
    (0..trials as u64)
        .into_par_iter()
        .map(|i| trial(&mut trial_rng(seed, i)))
        .collect()
}

fn column(samples: &[Vec<f64>], j: usize) -> Vec<f64> {
    samples.iter().map(|row| row[j]).collect()
}

/// Normalized traces `tr(B^m) = Tr(B^m)/dim` for each requested `m`, from
/// the powers `B^1..B^h`, `h = ceil(max m / 2)`, and `Tr(B^a B^b)`.
fn power_traces(b: &ComplexMatrix, exponents: &[usize]) -> Vec<Complex64> {
    let max = exponents.iter().copied().max().unwrap_or(0);
    let h = max.div_ceil(2).max(1);
    let mut powers = vec![b.clone()];
    for _ in 1..h {
        let next = powers.last().expect("nonempty").dot(b);
        powers.push(next);
    }
    let dim = b.rows() as f64;
    exponents
        .iter()
        .map(|&m| {
            if m == 0 {
                return Complex64::new(1.0, 0.0);
            }
            let a = m.div_ceil(2);
            let tr = if m == a { powers[a - 1].trace() } else { powers[a - 1].trace_of_product(&powers[m - a - 1]) };
            tr / dim
        })
        .collect()
}

/// `E tr((MM*)^k)` for `M = G_1 ... G_s`, `G_i` Ginibre with variance `1/N`,
/// for each `k` in `ks`.
pub fn product_model_mc_multi(s: usize, n: usize, ks: &[usize], trials: usize, seed: u64) -> Result<Vec<MCReport>> {
    check_mc(trials, n)?;
    if s == 0 || ks.iter().any(|&k| k == 0) {
        return Err(Error::InvalidParameter("s and k must be at least 1".into()));
    }
    let samples = run_trials(trials, seed, |rng| {
        let mut m = ginibre_from(rng, n, n, 1.0 / n as f64);
        for _ in 1..s {
            m = m.dot(&ginibre_from(rng, n, n, 1.0 / n as f64));
        }
        power_traces(&m.gram(), ks).iter().map(|z| z.re).collect()
    });
    Ok(ks
        .iter()
        .enumerate()
        .map(|(j, k)| MCReport::from_samples(format!("product s={s}: tr((MM*)^{k})"), &column(&samples, j), n, seed))
        .collect())
}

pub fn product_model_mc(s: usize, n: usize, k: usize, trials: usize, seed: u64) -> Result<MCReport> {
    Ok(product_model_mc_multi(s, n, &[k], trials, seed)?.remove(0))
}

/// `E tr((DW)^m)` for each `m` in `exponents`, with `W = YY*`, `Y` an
/// `sN × sN` Ginibre matrix of variance `1/(sN)`, and
/// `D = diag(w^0 1_N, ..., w^{s-1} 1_N)`. Reports the real part.
pub fn dw_model_mc_traces(s: usize, n: usize, exponents: &[usize], trials: usize, seed: u64) -> Result<Vec<MCReport>> {
    check_mc(trials, n)?;
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let dim = s * n;
    let d: Vec<Complex64> = (0..dim)
        .map(|i| Complex64::from_polar(1.0, 2.0 * PI * (i / n) as f64 / s as f64))
        .collect();
    let samples = run_trials(trials, seed, |rng| {
        let w = ginibre_from(rng, dim, dim, 1.0 / dim as f64).gram();
        power_traces(&w.scale_rows(&d), exponents).iter().map(|z| z.re).collect()
    });
    Ok(exponents
        .iter()
        .enumerate()
        .map(|(j, m)| MCReport::from_samples(format!("dw s={s}: tr((DW)^{m})"), &column(&samples, j), n, seed))
        .collect())
}

/// `E tr((DW)^{sk})`, which tends to the Fuss-Catalan number.
pub fn dw_model_mc(s: usize, n: usize, k: usize, trials: usize, seed: u64) -> Result<MCReport> {
    Ok(dw_model_mc_traces(s, n, &[s * k], trials, seed)?.remove(0))
}

/// `E Π_j χ_t^{(e_j)}` over `g` uniform in `H_n^s = Z_s ≀ S_n`, where
/// `χ_t = Σ_{i ≤ [tn]} g_ii` and each letter picks `χ_t` or its conjugate.
/// Reports the real part.
pub fn hns_character_mc(s: usize, n: usize, t: f64, trials: usize, seed: u64, word: &ColoredWord) -> Result<MCReport> {
    check_mc(trials, n)?;
    if s == 0 || !(t > 0.0 && t <= 1.0) {
        return Err(Error::InvalidParameter(format!("need s >= 1 and 0 < t <= 1, got s = {s}, t = {t}")));
    }
    let m = (t * n as f64).floor() as usize;
    let roots: Vec<Complex64> = (0..s).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / s as f64)).collect();
    let samples = run_trials(trials, seed, |rng| {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let mut chi = Complex64::new(0.0, 0.0);
        for (i, &p) in perm.iter().enumerate() {
            // draw every root so the stream layout does not depend on t
            let z = roots[rng.random_range(0..s)];
            if i < m && p == i {
                chi += z;
            }
        }
        let value = word.letters().iter().fold(Complex64::new(1.0, 0.0), |acc, c| match c {
            Color::U => acc * chi,
            Color::Ubar => acc * chi.conj(),
        });
        vec![value.re]
    });
    Ok(MCReport::from_samples(format!("hns s={s} t={t}: E[chi^{word}]"), &column(&samples, 0), n, seed))
}

/// The limit of [`hns_character_mc`]: the `word` moment of `p̃_st` from its
/// atoms, truncated at `p_max`.
pub fn bessel_word_moment(s: usize, t: f64, word: &ColoredWord, p_max: u32) -> Result<Complex64> {
    let law = bessel_law(s as u32, t, p_max)?;
    Ok(law
        .atoms()
        .iter()
        .map(|(a, w)| {
            let z = a.embed();
            word.letters().iter().fold(Complex64::new(*w, 0.0), |acc, c| match c {
                Color::U => acc * z,
                Color::Ubar => acc * z.conj(),
            })
        })
        .sum())
}
