use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{integer, Rational};

/// Parameters of `π_st`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselParams {
    pub s: f64,
    pub t: f64,
    /// False inside the critical rectangle `(0,1) × (1,∞)`.
    pub in_defined_region: bool,
}

impl BesselParams {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        if !(s > 0.0 && t > 0.0 && s.is_finite() && t.is_finite()) {
            return Err(Error::InvalidParameter(format!("s = {s}, t = {t} must be positive and finite")));
        }
        Ok(Self { s, t, in_defined_region: in_defined_region(s, t) })
    }
}

/// Outside `(0,1) × (1,∞)`.
pub fn in_defined_region(s: f64, t: f64) -> bool {
    !(s > 0.0 && s < 1.0 && t > 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "t<1")]
    Below,
    #[serde(rename = "t=1")]
    Critical,
    #[serde(rename = "t>1")]
    Above,
}

/// Support endpoints, critical points of `Φ`, and the atom at zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportInfo {
    pub regime: Regime,
    pub k_minus: f64,
    pub k_plus: f64,
    pub w_minus: Option<f64>,
    pub w_plus: Option<f64>,
    pub atom_mass: f64,
}

impl SupportInfo {
    pub fn contains(&self, x: f64) -> bool {
        x >= self.k_minus && x <= self.k_plus
    }
}

/// `Φ(w) = t w ((1 - w) / (1 - (1-t) w))^s`.
pub fn phi(s: f64, t: f64, w: f64) -> Result<f64> {
    let den = 1.0 - (1.0 - t) * w;
    if den == 0.0 {
        return Err(Error::PhiDomain { w });
    }
    let ratio = (1.0 - w) / den;
    let integer_s = s.fract() == 0.0 && s.abs() < i32::MAX as f64;
    let power = if integer_s {
        ratio.powi(s as i32)
    } else if ratio > 0.0 {
        ratio.powf(s)
    } else if ratio == 0.0 {
        0.0
    } else {
        return Err(Error::PhiDomain { w });
    };
    Ok(t * w * power)
}

/// Zeros `(w_-, w_+)` of `Φ'` for `t != 1`.
pub fn critical_points(s: f64, t: f64) -> Option<(f64, f64)> {
    if t == 1.0 {
        return None;
    }
    let disc = (t * t * (s - 1.0).powi(2) + 4.0 * s * t).sqrt();
    let base = t * s - t + 2.0;
    let den = 2.0 * (1.0 - t);
    Some(((base - disc) / den, (base + disc) / den))
}

/// `Φ_st(w) = w (1-w)^s / (t + (1-t) w)`, whose critical point `w_1` gives the
/// right edge for `t > 1`.
fn phi_above(s: f64, t: f64, w: f64) -> f64 {
    w * (1.0 - w).powf(s) / (t + (1.0 - t) * w)
}

fn w_one(s: f64, t: f64) -> f64 {
    (t * (s + 1.0) - (t * t * (s - 1.0).powi(2) + 4.0 * s * t).sqrt()) / (2.0 * s * (t - 1.0))
}

/// Right edge `(s+1)^{s+1} / s^s` at `t = 1`.
pub fn critical_right_edge(s: f64) -> f64 {
    (s + 1.0).powf(s + 1.0) / s.powf(s)
}

/// Exact right edge at `t = 1` for integer `s`.
pub fn critical_right_edge_exact(s: u32) -> Rational {
    let s_big = integer(s as i64);
    num_traits::pow(s_big.clone() + integer(1), s as usize + 1) / num_traits::pow(s_big, s as usize)
}

/// Support data for `π_st`.
///
/// `s = 1, t > 1` is the shifted free Poisson law with support
/// `[(1-√t)^2, (1+√t)^2]`; every other `t > 1` case has its left edge at 0.
pub fn support(s: f64, t: f64) -> Result<SupportInfo> {
    BesselParams::new(s, t)?;
    if t == 1.0 {
        return Ok(SupportInfo {
            regime: Regime::Critical,
            k_minus: 0.0,
            k_plus: critical_right_edge(s),
            w_minus: None,
            w_plus: None,
            atom_mass: 0.0,
        });
    }
    let (w_minus, w_plus) = critical_points(s, t).expect("t != 1");
    if t < 1.0 {
        return Ok(SupportInfo {
            regime: Regime::Below,
            k_minus: t / phi(s, t, w_plus)?,
            k_plus: t / phi(s, t, w_minus)?,
            w_minus: Some(w_minus),
            w_plus: Some(w_plus),
            atom_mass: 1.0 - t,
        });
    }
    let k_plus = 1.0 / phi_above(s, t, w_one(s, t));
    let k_minus = if s == 1.0 { (1.0 - t.sqrt()).powi(2) } else { 0.0 };
    Ok(SupportInfo {
        regime: Regime::Above,
        k_minus,
        k_plus,
        w_minus: Some(w_minus),
        w_plus: Some(w_plus),
        atom_mass: 0.0,
    })
}
