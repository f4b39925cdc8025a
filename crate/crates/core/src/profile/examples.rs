//! Named profiles and the closed-form sign bookkeeping that goes with them.

use super::{Func, Grid, RadialProfile, Representation};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

pub const BUILTIN_NAMES: [&str; 8] = [
    "flat",
    "flat-alpha",
    "fubini-study",
    "fubini-study-alpha",
    "family1",
    "cubic",
    "sec8-a6",
    "ht-seed",
];

fn func(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Func {
    Arc::new(f)
}

pub fn flat(m: usize, grid: Grid) -> Result<RadialProfile> {
    Ok(RadialProfile::from_xi(m, func(|_| 0.0), Some(func(|_| 0.0)), grid)?.with_name("flat"))
}

pub fn flat_alpha(m: usize, grid: Grid) -> Result<RadialProfile> {
    let z = func(|_| 0.0);
    Ok(RadialProfile::from_alpha(m, z.clone(), z.clone(), z, grid)?.with_name("flat-alpha"))
}

/// `ξ = 2r/(1+r)`: potential `c·log(1+r)`, constant `H = 2/c`.
pub fn fubini_study(m: usize, scale: f64, grid: Grid) -> Result<RadialProfile> {
    let p = RadialProfile::from_xi(
        m,
        func(|r| 2.0 * r / (1.0 + r)),
        Some(func(|r| 2.0 / ((1.0 + r) * (1.0 + r)))),
        grid,
    )?
    .with_name("fubini-study");
    p.scaled(scale)
}

/// Fubini–Study in the `α` description, where `α = r` and `t = r/(1+r)²`.
/// Only the chart `t < 1/4` (`r < 1`) is covered.
pub fn fubini_study_alpha(m: usize, grid: Grid) -> Result<RadialProfile> {
    if grid.max >= 0.25 {
        return Err(Error::InvalidParameter(format!(
            "fubini-study-alpha is defined for t < 1/4 (grid max {})",
            grid.max
        )));
    }
    fn r_of(t: f64) -> f64 {
        let s = (1.0 - 4.0 * t).sqrt();
        4.0 * t / ((1.0 + s) * (1.0 + s))
    }
    let alpha = func(r_of);
    let d1 = func(|t| {
        let r = r_of(t);
        (1.0 + r).powi(3) / (1.0 - r)
    });
    let d2 = func(|t| {
        let r = r_of(t);
        (1.0 + r).powi(5) * (4.0 - 2.0 * r) / (1.0 - r).powi(3)
    });
    Ok(RadialProfile::from_alpha(m, alpha, d1, d2, grid)?.with_name("fubini-study-alpha"))
}

/// `α = λ(1 − (1+t²)^{−a})` with closed-form derivatives.
fn power_alpha(m: usize, a: f64, lambda: f64, grid: Grid) -> Result<RadialProfile> {
    let alpha = func(move |t| -lambda * (-a * (t * t).ln_1p()).exp_m1());
    let d1 = func(move |t| 2.0 * a * lambda * t * (1.0 + t * t).powf(-a - 1.0));
    let d2 = func(move |t| {
        2.0 * a * lambda * (1.0 + t * t).powf(-a - 2.0) * (1.0 - (2.0 * a + 1.0) * t * t)
    });
    RadialProfile::from_alpha(m, alpha, d1, d2, grid)
}

pub fn family1(m: usize, a: f64, lambda: f64, grid: Grid) -> Result<RadialProfile> {
    if !(a > 0.5 && a < 1.0) {
        return Err(Error::InvalidParameter(format!("family1 needs a in (1/2, 1), got {a}")));
    }
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!("family1 needs lambda > 0, got {lambda}")));
    }
    Ok(power_alpha(m, a, lambda, grid)?.with_name("family1"))
}

pub fn a6_example(m: usize, lambda: f64, grid: Grid) -> Result<RadialProfile> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!("sec8-a6 needs lambda > 0, got {lambda}")));
    }
    Ok(power_alpha(m, 6.0, lambda, grid)?.with_name("sec8-a6"))
}

/// `α = t − 2at² + t³`.
pub fn cubic(m: usize, a: f64, grid: Grid) -> Result<RadialProfile> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("cubic needs a > 0, got {a}")));
    }
    let alpha = func(move |t| t * (1.0 - 2.0 * a * t + t * t));
    let d1 = func(move |t| 1.0 - 4.0 * a * t + 3.0 * t * t);
    let d2 = func(move |t| -4.0 * a + 6.0 * t);
    Ok(RadialProfile::from_alpha(m, alpha, d1, d2, grid)?.with_name("cubic"))
}

/// `ξ = a r/(1+r)`, `ξ → a` at infinity.
pub fn ht_seed(m: usize, a: f64, grid: Grid) -> Result<RadialProfile> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter(format!("ht-seed needs a in (0, 1), got {a}")));
    }
    Ok(RadialProfile::from_xi(
        m,
        func(move |r| a * r / (1.0 + r)),
        Some(func(move |r| a / ((1.0 + r) * (1.0 + r)))),
        grid,
    )?
    .with_name("ht-seed"))
}

fn take(params: &mut BTreeMap<String, f64>, key: &str, default: f64) -> f64 {
    params.remove(key).unwrap_or(default)
}

/// Build a named profile. Recognised parameters: `a`, `lambda`, `scale`.
pub fn builtin(
    name: &str,
    params: &BTreeMap<String, f64>,
    m: usize,
    grid: Option<Grid>,
) -> Result<RadialProfile> {
    let mut p = params.clone();
    let g = grid.unwrap_or_default();
    let profile = match name {
        "flat" => flat(m, g),
        "flat-alpha" => flat_alpha(m, g),
        "fubini-study" => {
            let c = take(&mut p, "scale", 1.0);
            fubini_study(m, c, g)
        }
        "fubini-study-alpha" => fubini_study_alpha(m, grid.unwrap_or(Grid { min: 1e-6, max: 0.24, n: 512 })),
        "family1" => {
            let a = take(&mut p, "a", 0.75);
            let l = take(&mut p, "lambda", 1.0);
            family1(m, a, l, g)
        }
        "cubic" => {
            let a = take(&mut p, "a", 0.83);
            cubic(m, a, g)
        }
        "sec8-a6" => {
            let l = take(&mut p, "lambda", 10.0);
            a6_example(m, l, g)
        }
        "ht-seed" => {
            let a = take(&mut p, "a", 0.5);
            ht_seed(m, a, g)
        }
        _ => {
            return Err(Error::UnknownName(format!(
                "profile '{name}' (known: {})",
                BUILTIN_NAMES.join(", ")
            )))
        }
    }?;
    if let Some(k) = p.keys().next() {
        return Err(Error::InvalidParameter(format!("parameter '{k}' not used by '{name}'")));
    }
    Ok(profile)
}

/// Native representation of a builtin, without building it.
pub(crate) fn builtin_representation(name: &str) -> Option<Representation> {
    match name {
        "flat" | "fubini-study" | "ht-seed" => Some(Representation::Xi),
        "flat-alpha" | "fubini-study-alpha" | "family1" | "cubic" | "sec8-a6" => {
            Some(Representation::Alpha)
        }
        _ => None,
    }
}

/// The λ-condition `1/(2λ−1) < (1 + 3/(2a−1))^a − 1` for family 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Family1Condition {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// Sign change of `A`: `√(3/(2a−1))`.
    pub t0: f64,
}

pub fn family1_condition(a: f64, lambda: f64) -> Family1Condition {
    let lhs = 1.0 / (2.0 * lambda - 1.0);
    let rhs = (1.0 + 3.0 / (2.0 * a - 1.0)).powf(a) - 1.0;
    let holds = lambda > 0.5 && lhs < rhs;
    Family1Condition { lhs, rhs, holds, t0: (3.0 / (2.0 * a - 1.0)).sqrt() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadraticSign {
    /// Positive on `[0, ∞)`.
    Positive,
    /// Negative between two positive roots.
    NegativeOnInterval,
    /// Double root: touches zero.
    Degenerate,
}

/// `c0 + c1 t + c2 t²` with its sign on `(0, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubicQuadratic {
    pub label: &'static str,
    pub coeffs: [f64; 3],
    pub discriminant: f64,
    pub sign: QuadraticSign,
    pub roots: Option<[f64; 2]>,
}

/// The five quadratics controlling the signs of `α/t`, `α'`, `tα''+2α'`,
/// `tα''+3α'` and `tα''+2α'+2α/t` for `α = t − 2at² + t³`.
pub fn cubic_quadratics(a: f64) -> Result<Vec<CubicQuadratic>> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("cubic needs a > 0, got {a}")));
    }
    let table: [(&'static str, [f64; 3]); 5] = [
        ("alpha/t", [1.0, -2.0 * a, 1.0]),
        ("alpha'", [1.0, -4.0 * a, 3.0]),
        ("(t alpha'' + 2 alpha')/2", [1.0, -6.0 * a, 6.0]),
        ("t alpha'' + 3 alpha'", [3.0, -16.0 * a, 15.0]),
        ("(t alpha'' + 2 alpha' + 2 alpha/t)/2", [2.0, -8.0 * a, 7.0]),
    ];
    Ok(table
        .into_iter()
        .map(|(label, c)| {
            let disc = c[1] * c[1] - 4.0 * c[0] * c[2];
            let scale = c[1] * c[1];
            let (sign, roots) = if disc.abs() <= 1e-12 * scale {
                let r = -c[1] / (2.0 * c[2]);
                (QuadraticSign::Degenerate, Some([r, r]))
            } else if disc < 0.0 {
                (QuadraticSign::Positive, None)
            } else {
                let s = disc.sqrt();
                // stable pair: q = -(c1 - s)/2 since c1 < 0
                let q = -0.5 * (c[1] - s);
                let r1 = c[0] / q;
                let r2 = q / c[2];
                (QuadraticSign::NegativeOnInterval, Some([r1.min(r2), r1.max(r2)]))
            };
            CubicQuadratic { label, coeffs: c, discriminant: disc, sign, roots }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family1_condition_arithmetic() {
        let c = family1_condition(0.75, 1.0);
        assert!((c.lhs - 1.0).abs() < 1e-15);
        assert!((c.rhs - (7f64.powf(0.75) - 1.0)).abs() < 1e-12);
        assert!(c.holds);
        assert!((c.t0 - 6f64.sqrt()).abs() < 1e-15);
        assert!(!family1_condition(0.75, 0.5).holds);
    }

    #[test]
    fn cubic_thresholds() {
        let q = cubic_quadratics(0.83).unwrap();
        let neg: Vec<_> = q.iter().map(|x| x.sign == QuadraticSign::NegativeOnInterval).collect();
        assert_eq!(neg, [false, false, true, false, false]);
        assert!(cubic_quadratics(0.5).unwrap().iter().all(|x| x.sign == QuadraticSign::Positive));
        let one = cubic_quadratics(1.0).unwrap();
        assert_eq!(one[0].sign, QuadraticSign::Degenerate);
        assert_eq!(one[0].roots, Some([1.0, 1.0]));
        // roots really are roots
        for x in &q {
            if let Some([r1, r2]) = x.roots {
                for r in [r1, r2] {
                    let v = x.coeffs[0] + x.coeffs[1] * r + x.coeffs[2] * r * r;
                    assert!(v.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn alpha_forms_at_small_t() {
        let p = family1(3, 0.75, 1.0, Grid::new(1e-8, 10.0, 32).unwrap()).unwrap();
        // α ≈ aλt² near zero, so B ≈ 2aλt and A ≈ 6aλt
        let v = p.abc_at(1e-8).unwrap();
        assert!((v.b - 2.0 * 0.75 * 1e-8).abs() < 1e-15);
        assert!((v.a - 6.0 * 0.75 * 1e-8).abs() < 1e-15);
    }

    #[test]
    fn unknown_builtin_and_parameter() {
        let g = Some(Grid::new(1e-3, 1.0, 8).unwrap());
        assert!(matches!(builtin("nope", &BTreeMap::new(), 2, g), Err(Error::UnknownName(_))));
        let mut p = BTreeMap::new();
        p.insert("q".to_string(), 1.0);
        assert!(matches!(builtin("flat", &p, 2, g), Err(Error::InvalidParameter(_))));
    }
}
