//! U(m)-invariant Kähler metrics on `C^m`.
//!
//! A metric with potential `P(r)`, `r = |z|²`, has `f = P'`, `h = (r f)'`
//! and `ξ = -r h'/h`. Conversely `ξ` determines
//!
//! ```text
//! h(r) = exp(-∫₀^r ξ(s)/s ds),   f(r) = (1/r) ∫₀^r h(s) ds
//! ```
//!
//! and the curvature in the adapted unitary frame at `(z₁, 0, …, 0)` is
//!
//! ```text
//! A = ξ'/h,   B = (ξ I − D)/I²,   C = 2D/I²,
//! I = ∫₀^r h,   D = ∫₀^r ξ h = I − r h.
//! ```
//!
//! `D` is integrated directly rather than formed as `I − r h`, which
//! cancels catastrophically near the origin.
//!
//! The alternative description by `α(t)`, `t = r h`, gives the components
//! in closed form:
//!
//! ```text
//! k = 1 + α + tα',   A = (tα'' + 2α')/k³,   B = α'/(k(1+α)²),   C = 2α/(t(1+α)²).
//! ```
//!
//! Radial arc length is normalised so that the flat metric gives `η = √r`:
//! `dη/dr = √h / (2√r)` and `dη/dt = k / (2√t)`.

mod classify;
mod completeness;
mod examples;
mod perturb;
mod spec;

pub use classify::{
    classify, classify_range, ConditionReport, PositivityReport, Quantity, SignState, Target,
    Verdict, SIGN_BAND,
};
pub use completeness::{completeness_check, CompletenessReport, CompletenessVerdict};
pub use examples::{
    builtin, cubic, cubic_quadratics, family1, family1_condition, flat, flat_alpha, fubini_study,
    fubini_study_alpha, ht_seed, a6_example, CubicQuadratic, Family1Condition, QuadraticSign,
    BUILTIN_NAMES,
};
pub use perturb::{ht_perturb, ht_search, Cutoff, HtConclusions, HtSearch};
pub use spec::{write_csv, ProfileSpec};

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_to_infinity};
use crate::tensor::{UnitaryFrameCurvature, C64, MAX_DIM};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub type Func = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

const PANEL_REL_TOL: f64 = 1e-14;
const PANEL_ABS_TOL: f64 = 1e-300;

/// Log-spaced sampling grid in the native parameter (`r` or `t`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self { min: 1e-6, max: 1e4, n: 2048 }
    }
}

impl Grid {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        let g = Self { min, max, n };
        g.check()?;
        Ok(g)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.min > 0.0 && self.max > self.min && self.n >= 2 && self.max.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "grid needs 0 < min < max and n >= 2 (got min={}, max={}, n={})",
                self.min, self.max, self.n
            )));
        }
        Ok(())
    }

    pub fn nodes(&self) -> Vec<f64> {
        let (a, b) = (self.min.ln(), self.max.ln());
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| match i {
                0 => self.min,
                _ if i == self.n - 1 => self.max,
                _ => (a + (b - a) * i as f64 / last).exp(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Xi,
    Alpha,
}

/// Curvature components at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureABC {
    pub param: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
}

impl CurvatureABC {
    pub fn quantity(&self, q: Quantity, m: usize) -> f64 {
        q.eval(self, m)
    }
}

struct XiTable {
    xi: Func,
    dxi: Func,
    exact_derivative: bool,
    log_h: Vec<f64>,
    int_h: Vec<f64>,
    int_xih: Vec<f64>,
}

struct AlphaFns {
    alpha: Func,
    d1: Func,
    d2: Func,
    exact_derivative: bool,
}

enum Rep {
    Xi(XiTable),
    Alpha(AlphaFns),
}

/// An immutable U(m)-invariant metric with its quadrature tables.
#[derive(Clone)]
pub struct RadialProfile {
    m: usize,
    name: String,
    grid: Grid,
    scale: f64,
    nodes: Arc<Vec<f64>>,
    eta: Arc<Vec<f64>>,
    rep: Arc<Rep>,
}

impl std::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialProfile")
            .field("m", &self.m)
            .field("name", &self.name)
            .field("rep", &self.representation())
            .field("grid", &self.grid)
            .field("scale", &self.scale)
            .finish()
    }
}

fn check_m(m: usize) -> Result<()> {
    if !(2..=MAX_DIM).contains(&m) {
        return Err(Error::UnsupportedDimension(m));
    }
    Ok(())
}

fn central_difference(g: Func) -> Func {
    Arc::new(move |x: f64| {
        let d = 1e-5 * (1.0 + x.abs());
        if x - d >= 0.0 {
            (g(x + d) - g(x - d)) / (2.0 * d)
        } else {
            (-3.0 * g(x) + 4.0 * g(x + d) - g(x + 2.0 * d)) / (2.0 * d)
        }
    })
}

fn second_difference(g: Func) -> Func {
    Arc::new(move |x: f64| {
        let d = 1e-4 * (1.0 + x.abs());
        if x - d >= 0.0 {
            (g(x + d) - 2.0 * g(x) + g(x - d)) / (d * d)
        } else {
            (2.0 * g(x) - 5.0 * g(x + d) + 4.0 * g(x + 2.0 * d) - g(x + 3.0 * d)) / (d * d)
        }
    })
}

fn merged_nodes(grid: &Grid, extra: &[f64]) -> Vec<f64> {
    let mut nodes = grid.nodes();
    nodes.extend(extra.iter().copied().filter(|&x| x > 0.0 && x.is_finite()));
    nodes.sort_by(f64::total_cmp);
    nodes.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs());
    nodes
}

fn panel_integral<F: Fn(f64) -> f64>(g: F, a: f64, b: f64) -> f64 {
    integrate(g, a, b, PANEL_ABS_TOL, PANEL_REL_TOL).value
}

/// Cumulative integrals over consecutive panels `[0, x₀], [x₀, x₁], …`.
fn cumulative<F: Fn(f64, f64) -> f64 + Sync>(nodes: &[f64], panel: F) -> Vec<f64> {
    let parts: Vec<f64> = (0..nodes.len())
        .into_par_iter()
        .map(|i| panel(if i == 0 { 0.0 } else { nodes[i - 1] }, nodes[i]))
        .collect();
    parts
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect()
}

impl RadialProfile {
    /// Profile from `ξ`, with `ξ'` if available (central differences otherwise).
    pub fn from_xi(m: usize, xi: Func, dxi: Option<Func>, grid: Grid) -> Result<Self> {
        Self::from_xi_with_nodes(m, xi, dxi, grid, &[])
    }

    /// As [`from_xi`](Self::from_xi) with extra tabulation nodes, used to
    /// resolve localized features of `ξ`.
    pub fn from_xi_with_nodes(
        m: usize,
        xi: Func,
        dxi: Option<Func>,
        grid: Grid,
        extra: &[f64],
    ) -> Result<Self> {
        check_m(m)?;
        grid.check()?;
        let x0 = xi(0.0);
        if !x0.is_finite() || x0.abs() > 1e-12 {
            return Err(Error::InvalidProfile(format!("xi(0) must vanish, got {x0}")));
        }
        let nodes = merged_nodes(&grid, extra);
        let exact_derivative = dxi.is_some();
        let dxi = dxi.unwrap_or_else(|| central_difference(xi.clone()));

        let xs = |s: f64| xi(s) / s;
        let log_h = cumulative(&nodes, |a, b| panel_integral(xs, a, b));
        if let Some(bad) = log_h.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidProfile(format!(
                "h is not finite at r = {:.6e}",
                nodes[bad]
            )));
        }
        let h_in = |k: usize, s: f64| {
            let (base, l0) = if k == 0 { (0.0, 0.0) } else { (nodes[k - 1], log_h[k - 1]) };
            (-(l0 + panel_integral(xs, base, s))).exp()
        };
        let panel_index = |a: f64| if a == 0.0 { 0 } else { nodes.partition_point(|&x| x <= a) };
        let int_h = cumulative(&nodes, |a, b| {
            let k = panel_index(a);
            panel_integral(|s| h_in(k, s), a, b)
        });
        let int_xih = cumulative(&nodes, |a, b| {
            let k = panel_index(a);
            panel_integral(|s| xi(s) * h_in(k, s), a, b)
        });
        if let Some(bad) = int_h.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidProfile(format!(
                "f is not positive at r = {:.6e}",
                nodes[bad]
            )));
        }
        let table = XiTable { xi, dxi, exact_derivative, log_h, int_h, int_xih };
        let mut p = Self {
            m,
            name: "custom".into(),
            grid,
            scale: 1.0,
            nodes: Arc::new(nodes),
            eta: Arc::new(Vec::new()),
            rep: Arc::new(Rep::Xi(table)),
        };
        p.eta = Arc::new(p.tabulate_eta());
        Ok(p)
    }

    /// Profile from `α` with exact `α'`, `α''`.
    pub fn from_alpha(m: usize, alpha: Func, d1: Func, d2: Func, grid: Grid) -> Result<Self> {
        Self::alpha_impl(m, AlphaFns { alpha, d1, d2, exact_derivative: true }, grid)
    }

    /// Opt-in: `α'` and `α''` by central differences (step `~1e-5 (1+t)`).
    /// Second derivatives obtained this way carry errors near `1e-6`.
    pub fn from_alpha_fd(m: usize, alpha: Func, grid: Grid) -> Result<Self> {
        let d1 = central_difference(alpha.clone());
        let d2 = second_difference(alpha.clone());
        Self::alpha_impl(m, AlphaFns { alpha, d1, d2, exact_derivative: false }, grid)
    }

    fn alpha_impl(m: usize, fns: AlphaFns, grid: Grid) -> Result<Self> {
        check_m(m)?;
        grid.check()?;
        let a0 = (fns.alpha)(0.0);
        if !a0.is_finite() || a0.abs() > 1e-12 {
            return Err(Error::InvalidProfile(format!("alpha(0) must vanish, got {a0}")));
        }
        let nodes = grid.nodes();
        for &t in &nodes {
            let al = (fns.alpha)(t);
            let k = 1.0 + al + t * (fns.d1)(t);
            if !(k > 0.0 && 1.0 + al > 0.0) {
                return Err(Error::InvalidProfile(format!(
                    "need 1 + alpha > 0 and 1 + alpha + t alpha' > 0, violated at t = {t:.6e}"
                )));
            }
        }
        let mut p = Self {
            m,
            name: "custom".into(),
            grid,
            scale: 1.0,
            nodes: Arc::new(nodes),
            eta: Arc::new(Vec::new()),
            rep: Arc::new(Rep::Alpha(fns)),
        };
        p.eta = Arc::new(p.tabulate_eta());
        Ok(p)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The same profile for the metric `c·g` (potential `c·P`).
    pub fn scaled(mut self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale must be positive, got {c}")));
        }
        self.scale *= c;
        Ok(self)
    }

    /// Same metric viewed in complex dimension `m`.
    pub fn with_dim(mut self, m: usize) -> Result<Self> {
        check_m(m)?;
        self.m = m;
        Ok(self)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Tabulation nodes (grid nodes plus any extra nodes).
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn representation(&self) -> Representation {
        match *self.rep {
            Rep::Xi(_) => Representation::Xi,
            Rep::Alpha(_) => Representation::Alpha,
        }
    }

    /// Whether the derivatives in use were supplied in closed form.
    pub fn has_exact_derivatives(&self) -> bool {
        match &*self.rep {
            Rep::Xi(t) => t.exact_derivative,
            Rep::Alpha(a) => a.exact_derivative,
        }
    }

    pub fn check_param(&self, p: f64) -> Result<()> {
        if !(p > 0.0 && p <= self.grid.max * (1.0 + 1e-12)) {
            return Err(Error::OutOfRange { param: p, min: 0.0, max: self.grid.max });
        }
        Ok(())
    }

    fn xi_table(&self) -> Result<&XiTable> {
        match &*self.rep {
            Rep::Xi(t) => Ok(t),
            Rep::Alpha(_) => Err(Error::InvalidProfile(format!(
                "profile '{}' has no xi representation",
                self.name
            ))),
        }
    }

    fn alpha_fns(&self) -> Result<&AlphaFns> {
        match &*self.rep {
            Rep::Alpha(f) => Ok(f),
            Rep::Xi(_) => Err(Error::InvalidProfile(format!(
                "profile '{}' has no alpha representation",
                self.name
            ))),
        }
    }

    pub fn alpha(&self, t: f64) -> Result<f64> {
        Ok((self.alpha_fns()?.alpha)(t))
    }

    pub fn alpha_prime(&self, t: f64) -> Result<f64> {
        Ok((self.alpha_fns()?.d1)(t))
    }

    /// Index of the last node `<= x`, if any.
    fn node_below(&self, x: f64) -> Option<usize> {
        self.nodes.partition_point(|&n| n <= x).checked_sub(1)
    }

    pub fn xi(&self, r: f64) -> Result<f64> {
        Ok((self.xi_table()?.xi)(r))
    }

    pub fn xi_prime(&self, r: f64) -> Result<f64> {
        Ok((self.xi_table()?.dxi)(r))
    }

    /// `∫₀^r ξ(s)/s ds = -log h(r)` for the unit-normalised metric.
    fn log_h_unit(&self, t: &XiTable, r: f64) -> f64 {
        let (base, l0) = match self.node_below(r) {
            Some(k) => (self.nodes[k], t.log_h[k]),
            None => (0.0, 0.0),
        };
        l0 + integrate(|s| (t.xi)(s) / s, base, r, PANEL_ABS_TOL, PANEL_REL_TOL).value
    }

    /// `h(r)` (any `r ≥ 0`; beyond the table by direct integration).
    pub fn h(&self, r: f64) -> Result<f64> {
        let t = self.xi_table()?;
        Ok(self.scale * (-self.log_h_unit(t, r)).exp())
    }

    /// `∫₀^r h` and `∫₀^r ξ h`, unit-normalised.
    fn integrals_unit(&self, t: &XiTable, r: f64) -> (f64, f64) {
        let Some(k) = self.node_below(r) else {
            let h = |s: f64| (-self.log_h_unit(t, s)).exp();
            let i = integrate(h, 0.0, r, PANEL_ABS_TOL, PANEL_REL_TOL).value;
            let d = integrate(|s| (t.xi)(s) * h(s), 0.0, r, PANEL_ABS_TOL, PANEL_REL_TOL).value;
            return (i, d);
        };
        let base = self.nodes[k];
        if base == r {
            return (t.int_h[k], t.int_xih[k]);
        }
        let l0 = t.log_h[k];
        let h = |s: f64| {
            (-(l0 + integrate(|u| (t.xi)(u) / u, base, s, PANEL_ABS_TOL, PANEL_REL_TOL).value))
                .exp()
        };
        let i = integrate(h, base, r, PANEL_ABS_TOL, PANEL_REL_TOL).value;
        let d = integrate(|s| (t.xi)(s) * h(s), base, r, PANEL_ABS_TOL, PANEL_REL_TOL).value;
        (t.int_h[k] + i, t.int_xih[k] + d)
    }

    /// `∫₀^r h(s) ds`.
    pub fn int_h(&self, r: f64) -> Result<f64> {
        let t = self.xi_table()?;
        Ok(self.scale * self.integrals_unit(t, r).0)
    }

    /// `f(r) = (1/r) ∫₀^r h`.
    pub fn f(&self, r: f64) -> Result<f64> {
        Ok(self.int_h(r)? / r)
    }

    /// Curvature components at `param > 0` (native parameter).
    pub fn abc_at(&self, p: f64) -> Result<CurvatureABC> {
        self.check_param(p)?;
        Ok(self.abc_unchecked(p))
    }

    fn abc_unchecked(&self, p: f64) -> CurvatureABC {
        let (a, b, c) = match &*self.rep {
            Rep::Xi(t) => {
                let l = self.log_h_unit(t, p);
                let h = (-l).exp();
                let (i, d) = self.integrals_unit(t, p);
                let xi = (t.xi)(p);
                let a = (t.dxi)(p) / h;
                let b = (xi * i - d) / (i * i);
                let c = 2.0 * d / (i * i);
                (a, b, c)
            }
            Rep::Alpha(f) => {
                let al = (f.alpha)(p);
                let d1 = (f.d1)(p);
                let d2 = (f.d2)(p);
                let k = 1.0 + al + p * d1;
                let a = (p * d2 + 2.0 * d1) / (k * k * k);
                let b = d1 / (k * (1.0 + al) * (1.0 + al));
                let c = 2.0 * al / (p * (1.0 + al) * (1.0 + al));
                (a, b, c)
            }
        };
        let s = self.scale;
        CurvatureABC { param: p, a: a / s, b: b / s, c: c / s }
    }

    /// Limits of `A, B, C` at the origin by Richardson extrapolation
    /// `2F(ε) − F(2ε)` of one-sided values.
    pub fn abc_at_origin(&self) -> CurvatureABC {
        let eps = 1e-4 * self.grid.max.min(1.0);
        let v1 = self.abc_unchecked(eps);
        let v2 = self.abc_unchecked(2.0 * eps);
        CurvatureABC {
            param: 0.0,
            a: 2.0 * v1.a - v2.a,
            b: 2.0 * v1.b - v2.b,
            c: 2.0 * v1.c - v2.c,
        }
    }

    /// Components at every tabulation node, in order.
    pub fn sample(&self) -> Vec<CurvatureABC> {
        self.sample_at(&self.nodes)
    }

    pub fn sample_at(&self, params: &[f64]) -> Vec<CurvatureABC> {
        params.par_iter().map(|&p| self.abc_unchecked(p)).collect()
    }

    /// Curvature tensor in the adapted unitary frame at parameter `p`.
    pub fn tensor_at(&self, p: f64) -> Result<UnitaryFrameCurvature> {
        let v = self.abc_at(p)?;
        Ok(tensor_from_abc(self.m, &v))
    }

    fn eta_density(&self, p: f64) -> f64 {
        match &*self.rep {
            Rep::Xi(t) => (-0.5 * self.log_h_unit(t, p)).exp() / (2.0 * p.sqrt()),
            Rep::Alpha(f) => {
                let k = 1.0 + (f.alpha)(p) + p * (f.d1)(p);
                k / (2.0 * p.sqrt())
            }
        }
    }

    fn tabulate_eta(&self) -> Vec<f64> {
        let nodes = self.nodes.clone();
        cumulative(&nodes, |a, b| panel_integral(|s| self.eta_density(s), a, b))
    }

    /// `dη/dparam` (unit metric scale applied).
    pub fn arc_length_density(&self, p: f64) -> f64 {
        self.scale.sqrt() * self.eta_density(p)
    }

    /// Radial arc length `η(param)` from the origin.
    pub fn arc_length(&self, p: f64) -> f64 {
        let (base, e0) = match self.node_below(p) {
            Some(k) => (self.nodes[k], self.eta[k]),
            None => (0.0, 0.0),
        };
        let rest = panel_integral(|s| self.eta_density(s), base, p);
        self.scale.sqrt() * (e0 + rest)
    }

    /// Arc length at every node.
    pub fn arc_length_table(&self) -> Vec<f64> {
        let s = self.scale.sqrt();
        self.eta.iter().map(|e| e * s).collect()
    }

    /// Total radial length `lim η` (may be `+inf` for complete metrics;
    /// returns the quadrature estimate and its error).
    pub fn total_length(&self) -> (f64, f64) {
        let last = self.nodes.len() - 1;
        let pmax = self.nodes[last];
        let tail = integrate_to_infinity(|s| self.eta_density(s), pmax, 1e-13, 1e-12);
        let s = self.scale.sqrt();
        (s * (self.eta[last] + tail.value), s * tail.error)
    }

    /// Inverse of the arc-length map on `[0, p_max]`.
    pub fn param_at_length(&self, eta: f64) -> Result<f64> {
        if eta <= 0.0 {
            return Ok(0.0);
        }
        let s = self.scale.sqrt();
        let target = eta / s;
        let last = self.nodes.len() - 1;
        if target > self.eta[last] * (1.0 + 1e-14) {
            return Err(Error::OutOfRange { param: eta, min: 0.0, max: self.eta[last] * s });
        }
        // bracket in the node table, then safeguarded Newton
        let k = self.eta.partition_point(|&e| e < target);
        let (mut lo, mut hi) = if k == 0 { (0.0, self.nodes[0]) } else { (self.nodes[k - 1], self.nodes[k]) };
        let mut p = if k == 0 {
            // η ≈ density-weighted √p near the origin
            let e0 = self.eta[0];
            self.nodes[0] * (target / e0).powi(2)
        } else {
            0.5 * (lo + hi)
        };
        for _ in 0..100 {
            let g = self.arc_length(p) / s - target;
            if g.abs() <= 1e-15 * target.max(1e-300) {
                break;
            }
            if g > 0.0 {
                hi = p;
            } else {
                lo = p;
            }
            let mut next = p - g / self.eta_density(p);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - p).abs() <= 1e-16 * p {
                p = next;
                break;
            }
            p = next;
        }
        Ok(p)
    }
}

/// The adapted-frame tensor: `R_{11̄11̄} = A`, `R_{11̄iī} = B`,
/// `R_{iīiī} = C`, `R_{iījj̄} = C/2` (`i ≠ j ≥ 2`), all else zero up to symmetry.
pub fn tensor_from_abc(m: usize, v: &CurvatureABC) -> UnitaryFrameCurvature {
    let mut t = UnitaryFrameCurvature::zeros(m).expect("dimension checked by the profile");
    let re = |x: f64| C64::new(x, 0.0);
    t.set_orbit(0, 0, 0, 0, re(v.a));
    for i in 1..m {
        t.set_orbit(0, 0, i, i, re(v.b));
        t.set_orbit(i, i, i, i, re(v.c));
        for j in (i + 1)..m {
            t.set_orbit(i, i, j, j, re(0.5 * v.c));
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::TangentDirection;

    #[test]
    fn grid_nodes_hit_end_points() {
        let g = Grid::new(1e-3, 10.0, 5).unwrap();
        let n = g.nodes();
        assert_eq!(n.first(), Some(&1e-3));
        assert_eq!(n.last(), Some(&10.0));
        assert!((n[2] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn xi_zero_at_origin_required() {
        let r = RadialProfile::from_xi(2, Arc::new(|r| r + 1.0), None, Grid::default());
        assert!(matches!(r, Err(Error::InvalidProfile(_))));
    }

    #[test]
    fn fubini_study_tables() {
        let p = fubini_study(2, 1.0, Grid::new(1e-6, 1e3, 400).unwrap()).unwrap();
        for &r in &[1e-6, 0.3, 1.0, 17.0, 999.0, 2.5e3] {
            let h = p.h(r).unwrap();
            assert!((h - (1.0 + r).powi(-2)).abs() < 1e-12 * (1.0 + r).powi(-2), "h at {r}");
            let f = p.f(r).unwrap();
            assert!((f - 1.0 / (1.0 + r)).abs() < 1e-12 / (1.0 + r), "f at {r}");
        }
        // ξ = -r h'/h by central differences on the table
        for &r in &[0.01, 0.5, 3.0, 40.0] {
            let d = 1e-4 * r;
            let lh = |x: f64| p.h(x).unwrap().ln();
            let xi = -r * (lh(r + d) - lh(r - d)) / (2.0 * d);
            assert!((xi - 2.0 * r / (1.0 + r)).abs() < 1e-8);
        }
    }

    #[test]
    fn tensor_at_reproduces_frame_functionals() {
        let v = CurvatureABC { param: 1.0, a: -0.3, b: 0.7, c: 1.9 };
        for m in 2..=4 {
            let t = tensor_from_abc(m, &v);
            assert!(t.validate().is_empty());
            let e1 = TangentDirection::basis(m, 0);
            let e2 = TangentDirection::basis(m, 1);
            let mf = m as f64;
            assert!((t.holomorphic_sectional(&e1).unwrap() - v.a).abs() < 1e-14);
            assert!((t.holomorphic_sectional(&e2).unwrap() - v.c).abs() < 1e-14);
            assert!((t.ricci(&e1).unwrap() - (v.a + (mf - 1.0) * v.b)).abs() < 1e-14);
            assert!((t.ricci(&e2).unwrap() - (v.b + mf * v.c / 2.0)).abs() < 1e-14);
            assert!((t.orthogonal_ricci(&e1).unwrap() - (mf - 1.0) * v.b).abs() < 1e-14);
            let want = v.b + (mf - 2.0) * v.c / 2.0;
            assert!((t.orthogonal_ricci(&e2).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn arc_length_inverse() {
        let p = fubini_study(2, 1.0, Grid::new(1e-6, 1e4, 512).unwrap()).unwrap();
        for &r in &[1e-7, 2e-6, 0.04, 1.0, 300.0] {
            let eta = p.arc_length(r);
            assert!((eta - r.sqrt().atan()).abs() < 1e-12, "eta at {r}");
            let back = p.param_at_length(eta).unwrap();
            assert!((back - r).abs() < 1e-9 * r, "{back} vs {r}");
        }
    }

    #[test]
    fn scaling_divides_curvature() {
        let p = fubini_study(2, 1.0, Grid::new(1e-3, 10.0, 64).unwrap()).unwrap().scaled(4.0).unwrap();
        let v = p.abc_at(1.0).unwrap();
        assert!((v.a - 0.5).abs() < 1e-12 && (v.b - 0.25).abs() < 1e-12 && (v.c - 0.5).abs() < 1e-12);
        assert!((p.arc_length(1.0) - 2.0 * 1f64.atan()).abs() < 1e-12);
    }

    #[test]
    fn origin_limits() {
        let p = fubini_study(3, 1.0, Grid::new(1e-6, 10.0, 64).unwrap()).unwrap();
        let v = p.abc_at_origin();
        assert!((v.a - 2.0).abs() < 1e-8 && (v.b - 1.0).abs() < 1e-8 && (v.c - 2.0).abs() < 1e-8);
    }
}
