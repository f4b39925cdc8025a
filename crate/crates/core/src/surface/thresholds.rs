//! λ-thresholds of global positivity for Ricci and holomorphic sectional
//! curvature.

use super::{BlowupSurfaceMetric, Chart, ChartPoint, ClosedFormCurvature};
use crate::error::{Error, Result};
use crate::tensor::C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceFunctional {
    Ricci,
    Hsc,
}

impl SurfaceFunctional {
    /// Minimum over unit directions and the unit direction attaining it.
    fn min_at(self, c: &ClosedFormCurvature) -> (f64, [C64; 2]) {
        match self {
            SurfaceFunctional::Ricci => {
                let (v, i) = c.ricci_min();
                let mut d = [C64::new(0.0, 0.0); 2];
                d[i] = C64::new(1.0, 0.0);
                (v, d)
            }
            SurfaceFunctional::Hsc => {
                let (v, s) = c.h_min();
                (v, [C64::new(s.sqrt(), 0.0), C64::new((1.0 - s).max(0.0).sqrt(), 0.0)])
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdOptions {
    pub a_max: f64,
    pub nodes: usize,
    /// Initial λ bracket.
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        Self { a_max: 1e3, nodes: 512, lo: 0.05, hi: 4.0, tol: 1e-6 }
    }
}

/// Where the functional is smallest; `direction` is in the unitary frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub chart: Chart,
    pub a: f64,
    pub direction: Vec<C64>,
    pub value: f64,
}

/// Closed-form components at `a = a_max` against the chart at infinity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LargeACheck {
    pub a: f64,
    pub max_deviation: f64,
    /// `10 / a²`; the deviation decays like `1/a²`.
    pub bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub functional: SurfaceFunctional,
    pub lambda_star: f64,
    pub bracket: [f64; 2],
    /// Minimiser at the lower end of the bracket, where positivity fails.
    pub witness: Witness,
    pub large_a: LargeACheck,
    pub bisection_steps: usize,
}

/// `a = 0` followed by `n` log-spaced nodes on `[1e-3, a_max]`.
pub fn sweep_nodes(a_max: f64, n: usize) -> Vec<f64> {
    let lo: f64 = 1e-3;
    let n = n.max(2);
    std::iter::once(0.0)
        .chain((0..n).map(|i| (lo.ln() + (a_max.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp()))
        .collect()
}

/// Global minimum of the functional over the sweep (refined near the
/// smallest node) and the chart at infinity.
fn global_min(metric: &BlowupSurfaceMetric, f: SurfaceFunctional, nodes: &[f64]) -> Result<Witness> {
    let eval = |p: ChartPoint| -> Result<Witness> {
        let c = metric.curvature_closed_form(p)?;
        let (value, d) = f.min_at(&c);
        Ok(Witness { chart: p.chart, a: p.a, direction: d.to_vec(), value })
    };
    let mut all: Vec<Witness> = nodes.par_iter().map(|&a| eval(ChartPoint::affine(a))).collect::<Result<_>>()?;
    let k = (0..all.len()).min_by(|&i, &j| all[i].value.total_cmp(&all[j].value)).expect("non-empty sweep");
    // golden-section refinement between the neighbours of the smallest node
    let (mut lo, mut hi) = (nodes[k.saturating_sub(1)], nodes[(k + 1).min(nodes.len() - 1)]);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        if eval(ChartPoint::affine(x1))?.value < eval(ChartPoint::affine(x2))?.value {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    all.push(eval(ChartPoint::affine(0.5 * (lo + hi)))?);
    all.push(eval(ChartPoint::infinity())?);
    Ok(all.into_iter().min_by(|a, b| a.value.total_cmp(&b.value)).expect("non-empty"))
}

pub fn large_a_check(lambda: f64, a: f64) -> Result<LargeACheck> {
    let m = BlowupSurfaceMetric::new(lambda)?;
    let near = m.curvature_closed_form(ChartPoint::affine(a))?.unitary_components();
    let inf = m.curvature_closed_form(ChartPoint::infinity())?.unitary_components();
    let max_deviation = [(near.0 - inf.0).abs(), (near.1 - inf.1).abs(), (near.2 - inf.2).abs()]
        .into_iter()
        .fold(0.0, f64::max);
    let bound = 10.0 / (a * a);
    Ok(LargeACheck { a, max_deviation, bound, holds: max_deviation <= bound })
}

/// Bisection on λ of "the functional is positive everywhere".
pub fn threshold(f: SurfaceFunctional, opts: &ThresholdOptions) -> Result<ThresholdReport> {
    let nodes = sweep_nodes(opts.a_max, opts.nodes);
    let min_at = |l: f64| global_min(&BlowupSurfaceMetric::new(l)?, f, &nodes);
    let (mut lo, mut hi) = (opts.lo, opts.hi);
    let wlo = min_at(lo)?;
    let whi = min_at(hi)?;
    if wlo.value > 0.0 || whi.value <= 0.0 {
        return Err(Error::Bracket(format!(
            "minimum is {:.3e} at lambda = {lo} and {:.3e} at lambda = {hi}",
            wlo.value, whi.value
        )));
    }
    let mut witness = wlo;
    let mut steps = 0;
    while hi - lo > opts.tol {
        let mid = 0.5 * (lo + hi);
        let w = min_at(mid)?;
        if w.value > 0.0 {
            hi = mid;
        } else {
            lo = mid;
            witness = w;
        }
        steps += 1;
    }
    let lambda_star = 0.5 * (lo + hi);
    Ok(ThresholdReport {
        functional: f,
        lambda_star,
        bracket: [lo, hi],
        witness,
        large_a: large_a_check(lambda_star, opts.a_max)?,
        bisection_steps: steps,
    })
}

pub fn threshold_ricci(opts: &ThresholdOptions) -> Result<ThresholdReport> {
    threshold(SurfaceFunctional::Ricci, opts)
}

pub fn threshold_hsc(opts: &ThresholdOptions) -> Result<ThresholdReport> {
    threshold(SurfaceFunctional::Hsc, opts)
}
