//! Finite-`n` Weingarten integration over the balanced noncrossing
//! partitions of a colored word.

use nalgebra::DMatrix;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_balanced, join_block_count, ColoredWord};
use crate::scalar::{integer, Rational, Scalar};

/// Largest Gram dimension handled by the exact fallback.
pub const EXACT_FALLBACK_DIMENSION: usize = 20;
/// Condition number above which the float result is not trusted.
pub const CONDITION_LIMIT: f64 = 1e10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeingartenResult {
    pub value: f64,
    /// Number of partitions, i.e. the Gram matrix size.
    pub dimension: usize,
    /// 1-norm condition estimate of the Gram matrix.
    pub condition: f64,
    /// Whether the value came from exact rational arithmetic.
    pub exact: bool,
}

/// `Σ_{p,q} W_n(p,q) m^{|p∨q|}` with `W_n` the inverse of the Gram matrix
/// `n^{|p∨q|}` over `P_h^s(a)` and `m = floor(t n)`.
pub fn weingarten_finite_n(s: usize, word: &ColoredWord, n: u64, t: f64) -> Result<WeingartenResult> {
    if n < 4 || word.len() > 8 || !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("need n >= 4, |a| <= 8 and t > 0; got n = {n}, |a| = {}, t = {t}", word.len())));
    }
    let parts = enumerate_balanced(s, word)?;
    let dim = parts.len();
    if dim == 0 {
        return Ok(WeingartenResult { value: 0.0, dimension: 0, condition: 1.0, exact: true });
    }
    let m = (t * n as f64).floor() as u64;
    let mut joins = vec![0usize; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let b = join_block_count(&parts[i], &parts[j])?;
            joins[i * dim + j] = b;
            joins[j * dim + i] = b;
        }
    }
    let gram = DMatrix::from_fn(dim, dim, |i, j| (n as f64).powi(joins[i * dim + j] as i32));
    let target = DMatrix::from_fn(dim, dim, |i, j| (m as f64).powi(joins[i * dim + j] as i32));
    let lu = gram.clone().lu();
    let inverse = lu.try_inverse();
    let condition = match &inverse {
        Some(inv) => one_norm(&gram) * one_norm(inv),
        None => f64::INFINITY,
    };
    if condition <= CONDITION_LIMIT {
        let inv = inverse.expect("finite condition");
        // tr(W V) = Σ_{p,q} W(p,q) V(q,p)
        let value = inv.component_mul(&target.transpose()).sum();
        return Ok(WeingartenResult { value, dimension: dim, condition, exact: false });
    }
    if dim > EXACT_FALLBACK_DIMENSION {
        return Err(Error::IllConditioned { condition });
    }
    let value = exact_value(&joins, dim, n, m).ok_or(Error::IllConditioned { condition })?;
    Ok(WeingartenResult { value: value.to_f64(), dimension: dim, condition, exact: true })
}

fn one_norm(a: &DMatrix<f64>) -> f64 {
    a.column_iter().map(|c| c.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// `tr(G^{-1} V)` by Gauss-Jordan elimination in rationals: solve `G X = V`.
fn exact_value(joins: &[usize], dim: usize, n: u64, m: u64) -> Option<Rational> {
    let pw = |base: u64, e: usize| num_traits::pow(integer(base as i64), e);
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rational> = (0..dim).map(|j| pw(n, joins[i * dim + j])).collect();
            row.extend((0..dim).map(|j| pw(m, joins[i * dim + j])));
            row
        })
        .collect();
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= p.clone();
        }
        for r in 0..dim {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..2 * dim {
                    let delta = f.clone() * a[col][c].clone();
                    a[r][c] -= delta;
                }
            }
        }
    }
    Some((0..dim).fold(integer(0), |acc, i| acc + a[i][dim + i].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::star_moment;

    #[test]
    fn empty_word() {
        let r = weingarten_finite_n(2, &ColoredWord::default(), 8, 0.5).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn exact_at_full_truncation() {
        let w: ColoredWord = "UUŪŪ".parse().unwrap();
        for n in [8, 16] {
            let r = weingarten_finite_n(2, &w, n, 1.0).unwrap();
            assert!((r.value - 3.0).abs() < 1e-9, "{r:?}");
        }
    }

    #[test]
    fn converges_like_one_over_n() {
        let w: ColoredWord = "UŪUŪ".parse().unwrap();
        let limit = star_moment(2, &0.5, &w).unwrap();
        let errs: Vec<f64> = [8, 16, 32, 64]
            .iter()
            .map(|&n| (weingarten_finite_n(2, &w, n, 0.5).unwrap().value - limit).abs())
            .collect();
        for pair in errs.windows(2) {
            assert!(pair[1] <= 0.6 * pair[0], "{errs:?}");
        }
        assert!(errs[0] * 8.0 < 10.0);
    }

    #[test]
    fn exact_path_agrees_with_float() {
        let w: ColoredWord = "UŪUŪ".parse().unwrap();
        let parts = enumerate_balanced(2, &w).unwrap();
        let dim = parts.len();
        let mut joins = vec![0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                joins[i * dim + j] = join_block_count(&parts[i], &parts[j]).unwrap();
            }
        }
        let exact = exact_value(&joins, dim, 10, 5).unwrap().to_f64();
        let float = weingarten_finite_n(2, &w, 10, 0.5).unwrap().value;
        assert!((exact - float).abs() < 1e-10);
    }
}
