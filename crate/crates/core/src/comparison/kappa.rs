//! Model solutions of `J'' + κJ = 0`.
//!
//! ```text
//! S_κ(t) = sin(√κ t)/√κ,  t,  sinh(√|κ| t)/√|κ|      (κ > 0, = 0, < 0)
//! C_κ(t) = cos(√κ t)/√κ,  1,  cosh(√|κ| t)/√|κ|
//! cot_κ = S'_κ/S_κ,   tan_κ = C'_κ/C_κ
//! ```
//!
//! With this normalisation `tan_κ(t) = −√κ tan(√κ t)` for `κ > 0`.

use crate::error::{Error, Result};

pub fn s_kappa(k: f64, t: f64) -> f64 {
    if k > 0.0 {
        let s = k.sqrt();
        (s * t).sin() / s
    } else if k < 0.0 {
        let s = (-k).sqrt();
        (s * t).sinh() / s
    } else {
        t
    }
}

pub fn s_kappa_prime(k: f64, t: f64) -> f64 {
    if k > 0.0 {
        (k.sqrt() * t).cos()
    } else if k < 0.0 {
        ((-k).sqrt() * t).cosh()
    } else {
        1.0
    }
}

pub fn c_kappa(k: f64, t: f64) -> f64 {
    if k > 0.0 {
        let s = k.sqrt();
        (s * t).cos() / s
    } else if k < 0.0 {
        let s = (-k).sqrt();
        (s * t).cosh() / s
    } else {
        1.0
    }
}

pub fn c_kappa_prime(k: f64, t: f64) -> f64 {
    if k > 0.0 {
        -(k.sqrt() * t).sin()
    } else if k < 0.0 {
        ((-k).sqrt() * t).sinh()
    } else {
        0.0
    }
}

/// First positive zero of `S_κ` (`π/√κ`), infinite for `κ <= 0`.
pub fn s_kappa_first_zero(k: f64) -> f64 {
    if k > 0.0 {
        std::f64::consts::PI / k.sqrt()
    } else {
        f64::INFINITY
    }
}

/// First positive zero of `C_κ` (`π/(2√κ)`), infinite for `κ <= 0`.
pub fn c_kappa_first_zero(k: f64) -> f64 {
    0.5 * s_kappa_first_zero(k)
}

pub fn cot_kappa(k: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) || t >= s_kappa_first_zero(k) {
        return Err(Error::InvalidParameter(format!("cot_kappa({k}, {t}): pole or t <= 0")));
    }
    if k > 0.0 {
        let s = k.sqrt();
        Ok(s / (s * t).tan())
    } else if k < 0.0 {
        let s = (-k).sqrt();
        Ok(s / (s * t).tanh())
    } else {
        Ok(1.0 / t)
    }
}

pub fn tan_kappa(k: f64, t: f64) -> Result<f64> {
    if t < 0.0 || t >= c_kappa_first_zero(k) {
        return Err(Error::InvalidParameter(format!("tan_kappa({k}, {t}): pole or t < 0")));
    }
    if k > 0.0 {
        let s = k.sqrt();
        Ok(-s * (s * t).tan())
    } else if k < 0.0 {
        let s = (-k).sqrt();
        Ok(s * (s * t).tanh())
    } else {
        Ok(0.0)
    }
}
