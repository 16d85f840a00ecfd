//! Density of `π_st` for integer `s` from the algebraic equation of its
//! Stieltjes transform.
//!
//! With `f = x G(x)` the equation `f = 1 + z f^s (f + t - 1)` at `z = 1/x`
//! becomes the monic polynomial
//!
//! ```text
//! p(f) = f^{s+1} + (t - 1) f^s - x f + x
//! ```
//!
//! whose roots are computed as companion-matrix eigenvalues. The physical
//! branch is the real root tending to 1 as `x → ∞`; it is followed down the
//! real axis by continuation, always in the closed lower half plane, and the
//! density is `-Im f / (π x)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quadrature::integrate;
use super::support::{support, BesselParams, Regime, SupportInfo};
use crate::error::{Error, Result};

/// Relative step of the cached continuation path.
const PATH_RATIO: f64 = 0.995;
/// Accept a continuation step when the nearest root is this much closer than
/// the runner-up.
const SEPARATION: f64 = 0.35;
const MIN_RELATIVE_STEP: f64 = 1e-12;

/// The physical root of `p(f)` tracked along the real axis.
#[derive(Debug, Clone)]
pub struct BranchTracker {
    s: u32,
    t: f64,
    support: SupportInfo,
    /// `(x, f)` with `x` strictly decreasing.
    path: Vec<(f64, Complex64)>,
}

impl BranchTracker {
    pub fn new(s: u32, t: f64) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidParameter("density needs integer s >= 1".into()));
        }
        let support = support(s as f64, t)?;
        let mut tracker = Self { s, t, support, path: Vec::new() };
        tracker.build_path()?;
        Ok(tracker)
    }

    pub fn support(&self) -> &SupportInfo {
        &self.support
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    fn x_high(&self) -> f64 {
        4.0 * self.support.k_plus + 4.0
    }

    fn x_low(&self) -> f64 {
        1e-12 * self.support.k_plus
    }

    /// Ascending coefficients of `p`.
    fn coefficients(&self, x: f64) -> Vec<f64> {
        let n = self.s as usize + 1;
        let mut c = vec![0.0; n + 1];
        c[0] = x;
        c[1] = -x;
        c[n - 1] += self.t - 1.0;
        c[n] = 1.0;
        c
    }

    /// All roots of `p` at `x`, Newton-polished.
    pub fn roots(&self, x: f64) -> Result<Vec<Complex64>> {
        let c = self.coefficients(x);
        let n = c.len() - 1;
        let mut companion = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            companion[(i, n - 1)] = -c[i];
        }
        let eig = companion.complex_eigenvalues();
        let mut roots: Vec<Complex64> = eig.iter().map(|z| polish(&c, *z)).collect();
        if roots.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
            return Err(Error::RootContinuation { x, roots: roots.iter().map(|r| (r.re, r.im)).collect() });
        }
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(roots)
    }

    fn starting_root(&self, x: f64) -> Result<Complex64> {
        // f = 1 + m_1/x + m_2/x^2 + ... outside the support.
        let guess = Complex64::new(1.0 + self.t / x + (self.t + self.s as f64 * self.t * self.t) / (x * x), 0.0);
        let roots = self.roots(x)?;
        let best = roots
            .iter()
            .map(|r| lower(*r))
            .min_by(|a, b| (a - guess).norm().total_cmp(&(b - guess).norm()))
            .expect("degree >= 2");
        Ok(best)
    }

    fn build_path(&mut self) -> Result<()> {
        let mut x = self.x_high();
        let mut f = self.starting_root(x)?;
        let lo = self.x_low();
        self.path.push((x, f));
        while x > lo {
            let next = (x * PATH_RATIO).max(lo);
            f = self.continue_to(x, f, next)?;
            x = next;
            self.path.push((x, f));
        }
        Ok(())
    }

    /// Moves the branch from `(x0, f0)` to `x1` with adaptive substeps.
    fn continue_to(&self, x0: f64, f0: Complex64, x1: f64) -> Result<Complex64> {
        let mut x = x0;
        let mut f = f0;
        let mut h = x1 - x0;
        let min_step = MIN_RELATIVE_STEP * x0.abs().max(1e-300);
        while x != x1 {
            let mut next = x + h;
            if (h > 0.0 && next > x1) || (h < 0.0 && next < x1) {
                next = x1;
            }
            let forced = h.abs() <= min_step;
            let predicted = self.predict(x, f, next);
            let roots = self.roots(next)?;
            let (best, d1, d2) = nearest_two(&roots, predicted);
            if d1 <= SEPARATION * d2 || forced {
                x = next;
                f = best;
                h *= 2.0;
            } else {
                h *= 0.5;
                if h.abs() < min_step {
                    h = min_step.copysign(h);
                }
            }
        }
        Ok(f)
    }

    /// First-order predictor from implicit differentiation of `p(f, x) = 0`,
    /// falling back to the current value near branch points.
    fn predict(&self, x: f64, f: Complex64, next: f64) -> Complex64 {
        let s = self.s as i32;
        let dp_df = (s as f64 + 1.0) * f.powi(s) + (s as f64) * (self.t - 1.0) * f.powi(s - 1) - x;
        let dp_dx = Complex64::new(1.0, 0.0) - f;
        let slope = -dp_dx / dp_df;
        let step = slope * (next - x);
        if step.norm().is_finite() && step.norm() < 0.1 * f.norm().max(1e-300) {
            lower(f + step)
        } else {
            f
        }
    }

    /// `f(x) = x G(x)` on the physical branch, with `Im f <= 0`.
    pub fn stieltjes(&self, x: f64) -> Result<Complex64> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::InvalidParameter(format!("density abscissa {x} must be positive")));
        }
        if x >= self.x_high() {
            return self.starting_root(x);
        }
        // path is decreasing; find the first cached x at or below the target
        let idx = self.path.partition_point(|(px, _)| *px > x);
        let (px, pf) = if idx == self.path.len() {
            self.path[idx - 1]
        } else if idx == 0 {
            self.path[0]
        } else {
            let above = self.path[idx - 1];
            let below = self.path[idx];
            if (above.0 - x) < (x - below.0) {
                above
            } else {
                below
            }
        };
        if px == x {
            return Ok(pf);
        }
        self.continue_to(px, pf, x)
    }

    /// `-Im G(x) / π`, zero outside the support.
    pub fn density(&self, x: f64) -> Result<f64> {
        let f = self.stieltjes(x)?;
        if f.im.abs() <= 1e-13 * f.norm().max(1.0) {
            return Ok(0.0);
        }
        Ok((-f.im / (PI * x)).max(0.0))
    }

    /// `∫ x^k dρ` over the continuous part. Both edges are handled with a
    /// change of variables that absorbs the edge singularity: a power
    /// substitution at a hard edge at 0, a square-root one at soft edges.
    pub fn continuous_moment(&self, k: u32) -> Result<f64> {
        let sp = self.support;
        let (lo, hi) = (sp.k_minus, sp.k_plus);
        let mid = 0.5 * (lo + hi);
        let scale = hi.max(1.0).powi(k as i32);
        let tol = 1e-11 * scale;

        let left_power = if lo > 0.0 {
            2.0
        } else {
            match sp.regime {
                Regime::Critical => self.s as f64 + 1.0,
                _ => self.s as f64,
            }
        };
        let left = integrate(
            |u: f64| -> Result<f64> {
                if u <= 0.0 {
                    return Ok(0.0);
                }
                let x = lo + (mid - lo) * u.powf(left_power);
                let jac = (mid - lo) * left_power * u.powf(left_power - 1.0);
                Ok(x.powi(k as i32) * self.density(x)? * jac)
            },
            0.0,
            1.0,
            0.5 * tol,
        )?;
        let right = integrate(
            |v: f64| -> Result<f64> {
                let x = hi - (hi - mid) * v * v;
                let jac = 2.0 * (hi - mid) * v;
                Ok(x.powi(k as i32) * self.density(x)? * jac)
            },
            0.0,
            1.0,
            0.5 * tol,
        )?;
        Ok(left + right)
    }

    /// Fits `ρ(x) ≈ C x^{-α}` near a hard left edge at 0, from two points
    /// `10^{-8} K_+` and `10^{-6} K_+`. `None` when the left edge is soft.
    pub fn left_edge_fit(&self) -> Result<Option<EdgeFit>> {
        if self.support.k_minus > 0.0 {
            return Ok(None);
        }
        let x1 = 1e-8 * self.support.k_plus;
        let x2 = 1e-6 * self.support.k_plus;
        let (r1, r2) = (self.density(x1)?, self.density(x2)?);
        if r1 <= 0.0 || r2 <= 0.0 {
            return Ok(None);
        }
        let exponent = -(r2 / r1).ln() / (x2 / x1).ln();
        Ok(Some(EdgeFit { exponent, constant: r1 * x1.powf(exponent) }))
    }
}

fn polish(c: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..3 {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &ci in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + ci;
        }
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        if !next.re.is_finite() || !next.im.is_finite() {
            break;
        }
        z = next;
    }
    z
}

/// Reflects into the closed lower half plane.
fn lower(z: Complex64) -> Complex64 {
    Complex64::new(z.re, -z.im.abs())
}

/// Nearest candidate to `target` among the reflected roots, with its distance
/// and the distance to the nearest *different* candidate.
fn nearest_two(roots: &[Complex64], target: Complex64) -> (Complex64, f64, f64) {
    let mut cands: Vec<Complex64> = Vec::with_capacity(roots.len());
    for r in roots.iter().map(|r| lower(*r)) {
        if !cands.iter().any(|c| (c - r).norm() <= 1e-12 * r.norm().max(1e-300)) {
            cands.push(r);
        }
    }
    cands.sort_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()));
    let d1 = (cands[0] - target).norm();
    let d2 = cands.get(1).map_or(f64::INFINITY, |c| (c - target).norm());
    (cands[0], d1, d2)
}

/// Power-law fit of the density at a hard edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeFit {
    pub exponent: f64,
    pub constant: f64,
}

/// Density of `π_st` at a single point.
pub fn density(s: u32, t: f64, x: f64) -> Result<f64> {
    BranchTracker::new(s, t)?.density(x)
}

/// Point mass of the law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: f64,
    pub mass: f64,
}

/// Density sampled on the support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub params: BesselParams,
    pub support: SupportInfo,
    pub atoms: Vec<Atom>,
    pub abscissae: Vec<f64>,
    pub values: Vec<f64>,
    /// Integral of the continuous part.
    pub quadrature_mass: f64,
}

impl DensityGrid {
    /// `x,density` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,density\n");
        for (x, v) in self.abscissae.iter().zip(&self.values) {
            out.push_str(&format!("{x},{v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let grid: Vec<_> = self
            .abscissae
            .iter()
            .zip(&self.values)
            .map(|(x, v)| serde_json::json!({ "x": x, "density": v }))
            .collect();
        serde_json::json!({
            "params": self.params,
            "support": self.support,
            "atoms": self.atoms,
            "quadrature_mass": self.quadrature_mass,
            "grid": grid,
        })
    }
}

/// Samples `n_points` abscissae evenly across the support (dropping a hard
/// edge at 0, where the density is infinite) and integrates the continuous
/// mass.
pub fn density_grid(s: u32, t: f64, n_points: usize) -> Result<DensityGrid> {
    if n_points < 2 {
        return Err(Error::InvalidParameter("density grid needs at least 2 points".into()));
    }
    let tracker = BranchTracker::new(s, t)?;
    let sp = *tracker.support();
    let abscissae: Vec<f64> = if sp.k_minus > 0.0 {
        (0..n_points)
            .map(|i| sp.k_minus + (sp.k_plus - sp.k_minus) * i as f64 / (n_points - 1) as f64)
            .collect()
    } else {
        (1..=n_points).map(|i| sp.k_plus * i as f64 / n_points as f64).collect()
    };
    // Sequential tracking from the right edge downwards.
    let mut values = vec![0.0; n_points];
    for (i, &x) in abscissae.iter().enumerate().rev() {
        values[i] = tracker.density(x)?;
    }
    let atoms = if sp.atom_mass > 0.0 {
        vec![Atom { x: 0.0, mass: sp.atom_mass }]
    } else {
        Vec::new()
    };
    Ok(DensityGrid {
        params: BesselParams::new(s as f64, t)?,
        support: sp,
        atoms,
        abscissae,
        values,
        quadrature_mass: tracker.continuous_moment(0)?,
    })
}
