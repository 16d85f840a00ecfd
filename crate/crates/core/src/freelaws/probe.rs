//! Hankel positivity probe: whether the closed-form moments of `π_st` can
//! belong to a positive measure on `[0, ∞)`, tested at finite order.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::moments::moment;
use crate::scalar::{rational_string, Rational};

/// Default Hankel size parameter: matrices are `(N+1) × (N+1)`.
pub const DEFAULT_PROBE_ORDER: usize = 6;
/// Pivots below this multiple of the largest entry count as zero.
pub const PROBE_RELATIVE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HankelMatrix {
    /// `(m_{i+j})`
    Moments,
    /// `(m_{i+j+1})`
    Shifted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    #[serde(with = "rational_string")]
    pub s: Rational,
    #[serde(with = "rational_string")]
    pub t: Rational,
    pub order: usize,
    pub pass: bool,
    pub failed_matrix: Option<HankelMatrix>,
    /// 1-based index of the pivot step where positivity broke.
    pub failed_minor: Option<usize>,
}

/// Checks both Hankel matrices built from `m_0..=m_{2N+1}`.
pub fn existence_probe(s: &Rational, t: &Rational, order: usize) -> ProbeReport {
    let m: Vec<Rational> = (0..=2 * order + 1).map(|k| moment(s, t, k)).collect();
    let hankel = |shift: usize| -> Vec<Vec<Rational>> {
        (0..=order).map(|i| (0..=order).map(|j| m[i + j + shift].clone()).collect()).collect()
    };
    let mut report = ProbeReport {
        s: s.clone(),
        t: t.clone(),
        order,
        pass: true,
        failed_matrix: None,
        failed_minor: None,
    };
    for (kind, shift) in [(HankelMatrix::Moments, 0), (HankelMatrix::Shifted, 1)] {
        if let Err(step) = psd_check(hankel(shift)) {
            report.pass = false;
            report.failed_matrix = Some(kind);
            report.failed_minor = Some(step);
            break;
        }
    }
    report
}

/// Diagonally pivoted `LDLᵀ` in exact arithmetic. Returns the 1-based step
/// at which the matrix is seen not to be positive semidefinite.
fn psd_check(mut a: Vec<Vec<Rational>>) -> Result<(), usize> {
    let n = a.len();
    let max_entry = a
        .iter()
        .flatten()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let tol = max_entry
        * crate::scalar::rational_from_f64(PROBE_RELATIVE_TOLERANCE).expect("finite");
    let mut active: Vec<usize> = (0..n).collect();
    for step in 1..=n {
        if active.iter().any(|&i| a[i][i] < -tol.clone()) {
            return Err(step);
        }
        let (pos, &p) = active
            .iter()
            .enumerate()
            .max_by(|(_, &i), (_, &j)| a[i][i].cmp(&a[j][j]))
            .expect("active rows remain");
        if a[p][p] <= tol {
            // Numerically zero pivot: the remaining Schur complement must vanish.
            let vanishes = active.iter().all(|&i| active.iter().all(|&j| a[i][j].abs() <= tol));
            return if vanishes { Ok(()) } else { Err(step) };
        }
        active.swap_remove(pos);
        let pivot = a[p][p].clone();
        for &i in &active {
            let factor = a[i][p].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for &j in &active {
                let delta = factor.clone() * a[p][j].clone();
                a[i][j] -= delta;
            }
        }
    }
    Ok(())
}

/// One probe per `(s, t)` pair of the grid, in row-major order (`s` outer).
pub fn probe_sweep(s_values: &[Rational], t_values: &[Rational], order: usize) -> Vec<ProbeReport> {
    let cells: Vec<(&Rational, &Rational)> =
        s_values.iter().flat_map(|s| t_values.iter().map(move |t| (s, t))).collect();
    cells.par_iter().map(|(s, t)| existence_probe(s, t, order)).collect()
}
