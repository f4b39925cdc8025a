//! Calibration, hypothesis certification and the model comparison reports.

use super::ode::{integrate, OdeOptions};
use super::{cot_kappa, index_form, radial_geodesic, s_kappa, s_kappa_first_zero, sine_test_field, tan_kappa};
use super::{c_kappa_first_zero, Direction, GeodesicSolution, RadialOperator};
use crate::error::{Error, Result};
use crate::profile::{flat, fubini_study, Grid, RadialProfile, Verdict};
use crate::quadrature;
use crate::tensor::{extremize_over_sphere, orthogonal_bisectional_min, Functional, Mode, SphereOptions};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Slack allowed when comparing a certified minimum with a required bound.
pub const CERTIFICATION_TOL: f64 = 1e-8;
/// Default slack of the comparison inequalities.
pub const COMPARISON_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationReport {
    pub m: usize,
    /// max |η(r) − √r| for the flat profile.
    pub flat_eta_error: f64,
    /// max |Δ⊥ρ − (m−1)/ℓ| from the flat Jacobi fields.
    pub flat_laplacian_error: f64,
    /// max |∇²ρ(Z, Z̄) − 1/(2ℓ)| from the flat Jacobi fields.
    pub flat_hessian_error: f64,
    /// Same two quantities from a finite-difference Hessian of the numerically
    /// computed flat distance function.
    pub fd_laplacian_error: f64,
    pub fd_hessian_error: f64,
    /// max |K_C − 2| and |K_⊥ − 1/2| along the Fubini–Study geodesic.
    pub fs_kc_error: f64,
    pub fs_kperp_error: f64,
    /// max |η(r) − arctan √r| for Fubini–Study.
    pub fs_eta_error: f64,
    pub passed: bool,
}

/// Convention checks that must pass before any comparison runs.
pub fn calibration_gate(m: usize) -> Result<CalibrationReport> {
    let grid = Grid::new(1e-6, 1e4, 512)?;
    let fl = flat(m, grid)?;
    let fs = fubini_study(m, 1.0, grid)?;
    let rs = [1e-4, 0.01, 0.5, 2.0, 30.0, 900.0];
    let flat_eta_error = rs.iter().map(|&r| (fl.arc_length(r) - r.sqrt()).abs()).fold(0.0, f64::max);
    let fs_eta_error = rs.iter().map(|&r| (fs.arc_length(r) - r.sqrt().atan()).abs()).fold(0.0, f64::max);

    let ls = [0.1, 0.4, 0.9, 1.4];
    let k = m as f64 - 1.0;
    let fsol = radial_geodesic(&fl, 4.0)?;
    let lap = fsol.evaluate(RadialOperator::LaplacianPerp, &ls)?;
    let hol = fsol.evaluate(RadialOperator::HolomorphicHessian, &ls)?;
    let mut flat_laplacian_error: f64 = 0.0;
    let mut flat_hessian_error: f64 = 0.0;
    for (i, &l) in ls.iter().enumerate() {
        flat_laplacian_error = flat_laplacian_error.max((lap[i] - k / l).abs());
        flat_hessian_error = flat_hessian_error.max((hol[i] - 0.5 / l).abs());
    }

    // ρ(x) for x ∈ R^{2m}; coordinates (x_1, y_1, x_2, y_2, ...), J∂x = ∂y
    let rho = |x: &[f64]| fl.arc_length(x.iter().map(|v| v * v).sum::<f64>());
    let mut fd_laplacian_error: f64 = 0.0;
    let mut fd_hessian_error: f64 = 0.0;
    for &l in &[0.4, 0.9] {
        let h = 3e-4;
        let mut x0 = vec![0.0; 2 * m];
        x0[0] = l;
        let second = |i: usize| {
            let mut p = x0.clone();
            let mut q = x0.clone();
            p[i] += h;
            q[i] -= h;
            (rho(&p) - 2.0 * rho(&x0) + rho(&q)) / (h * h)
        };
        let diag: Vec<f64> = (0..2 * m).map(second).collect();
        let complex_laplacian = 0.5 * diag.iter().sum::<f64>();
        let holomorphic = 0.5 * (diag[0] + diag[1]);
        fd_laplacian_error = fd_laplacian_error.max((complex_laplacian - holomorphic - k / l).abs());
        fd_hessian_error = fd_hessian_error.max((holomorphic - 0.5 / l).abs());
    }

    let gsol = radial_geodesic(&fs, 100.0)?;
    let mut fs_kc_error: f64 = 0.0;
    let mut fs_kperp_error: f64 = 0.0;
    for i in 0..=20 {
        let eta = 0.07 * i as f64;
        let (kc, kp) = gsol.coefficients(eta)?;
        fs_kc_error = fs_kc_error.max((kc - 2.0).abs());
        fs_kperp_error = fs_kperp_error.max((kp - 0.5).abs());
    }

    let passed = flat_eta_error < 1e-10
        && fs_eta_error < 1e-10
        && flat_laplacian_error < 1e-8
        && flat_hessian_error < 1e-8
        && fd_laplacian_error < 1e-5
        && fd_hessian_error < 1e-5
        && fs_kc_error < 1e-8
        && fs_kperp_error < 1e-8;
    let report = CalibrationReport {
        m,
        flat_eta_error,
        flat_laplacian_error,
        flat_hessian_error,
        fd_laplacian_error,
        fd_hessian_error,
        fs_kc_error,
        fs_kperp_error,
        fs_eta_error,
        passed,
    };
    if !passed {
        return Err(Error::Calibration(format!(
            "radial normalisation disagrees with the model values: {report:?}"
        )));
    }
    Ok(report)
}

/// Certified minima of the curvature functionals over a set of radii.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisBounds {
    pub params: Vec<f64>,
    pub ric_perp_min: f64,
    pub h_min: f64,
    pub b_perp_min: f64,
}

/// Run the sphere extremizers on `tensor_at` at `n` log-spaced radii in
/// `[grid.min, r_max]`.
pub fn certify(profile: &RadialProfile, r_max: f64, n: usize) -> Result<HypothesisBounds> {
    let lo = profile.grid().min;
    profile.check_param(r_max)?;
    let n = n.max(2);
    let params: Vec<f64> = (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            (lo.ln() + t * (r_max.ln() - lo.ln())).exp().min(r_max)
        })
        .collect();
    let opts = SphereOptions::default().with_restarts(16);
    let rows: Vec<(f64, f64, f64)> = params
        .par_iter()
        .map(|&p| {
            let t = profile.tensor_at(p)?;
            let rp = extremize_over_sphere(&t, Functional::OrthogonalRicci, Mode::Min, &opts).value;
            let h = extremize_over_sphere(&t, Functional::HolomorphicSectional, Mode::Min, &opts).value;
            let b = orthogonal_bisectional_min(&t, &opts).value;
            Ok((rp, h, b))
        })
        .collect::<Result<_>>()?;
    let min = |f: fn(&(f64, f64, f64)) -> f64| rows.iter().map(f).fold(f64::INFINITY, f64::min);
    Ok(HypothesisBounds {
        params,
        ric_perp_min: min(|r| r.0),
        h_min: min(|r| r.1),
        b_perp_min: min(|r| r.2),
    })
}

/// Theorem identifiers accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "1.2i")]
    LaplacianPerp,
    #[serde(rename = "1.2ii")]
    HolomorphicHessian,
    #[serde(rename = "1.3")]
    Tube,
    #[serde(rename = "1.5")]
    OrthogonalHessian,
    #[serde(rename = "index")]
    Index,
    #[serde(rename = "volume")]
    Volume,
    #[serde(rename = "diameter")]
    Diameter,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::LaplacianPerp,
        TheoremId::HolomorphicHessian,
        TheoremId::Tube,
        TheoremId::OrthogonalHessian,
        TheoremId::Index,
        TheoremId::Volume,
        TheoremId::Diameter,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TheoremId::LaplacianPerp => "1.2i",
            TheoremId::HolomorphicHessian => "1.2ii",
            TheoremId::Tube => "1.3",
            TheoremId::OrthogonalHessian => "1.5",
            TheoremId::Index => "index",
            TheoremId::Volume => "volume",
            TheoremId::Diameter => "diameter",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::UnknownName(format!("theorem '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisCheck {
    pub condition: String,
    pub certified_min: f64,
    pub required: f64,
    pub holds: bool,
}

impl HypothesisCheck {
    fn new(condition: &str, certified_min: f64, required: f64) -> Self {
        Self {
            condition: condition.into(),
            certified_min,
            required,
            holds: certified_min >= required - CERTIFICATION_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub theorem: TheoremId,
    pub model: String,
    pub m: usize,
    pub lambda: f64,
    /// `"<="` for the comparison inequalities.
    pub relation: String,
    pub hypotheses: Vec<HypothesisCheck>,
    pub grid: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `max(0, max_i (lhs_i − rhs_i))`.
    pub max_violation: f64,
    /// `max_i |lhs_i − rhs_i|`; zero in an equality case.
    pub max_abs_difference: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareOptions {
    /// Comparison constant; certified from the model when absent.
    pub lambda: Option<f64>,
    /// ℓ values; defaults to `points` values on `(0.05, ℓ_max]`.
    pub grid: Option<Vec<f64>>,
    pub points: usize,
    pub tolerance: f64,
    /// Radii used for hypothesis certification.
    pub certify_nodes: usize,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self { lambda: None, grid: None, points: 30, tolerance: COMPARISON_TOL, certify_nodes: 40 }
    }
}

fn default_grid(points: usize, lo: f64, hi: f64) -> Vec<f64> {
    let n = points.max(1);
    (1..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

#[allow(clippy::too_many_arguments)]
fn finish(
    theorem: TheoremId,
    profile: &RadialProfile,
    lambda: f64,
    hypotheses: Vec<HypothesisCheck>,
    grid: Vec<f64>,
    lhs: Vec<f64>,
    rhs: Vec<f64>,
    tolerance: f64,
    mut notes: Vec<String>,
) -> ComparisonReport {
    let max_violation = lhs.iter().zip(&rhs).map(|(a, b)| a - b).fold(0.0, f64::max);
    let max_abs_difference = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let ok_hyp = hypotheses.iter().all(|h| h.holds);
    if !ok_hyp {
        notes.push("hypothesis not certified; the comparison does not apply".into());
    }
    let verdict = if ok_hyp && max_violation <= tolerance { Verdict::Pass } else { Verdict::Fail };
    ComparisonReport {
        theorem,
        model: profile.name().to_string(),
        m: profile.m(),
        lambda,
        relation: "<=".into(),
        hypotheses,
        grid,
        lhs,
        rhs,
        max_violation,
        max_abs_difference,
        tolerance,
        verdict,
        notes,
    }
}

/// Run one comparison check on a model profile.
pub fn compare(profile: &RadialProfile, theorem: TheoremId, opts: &CompareOptions) -> Result<ComparisonReport> {
    let m = profile.m();
    if m < 2 {
        return Err(Error::UnsupportedDimension(m));
    }
    let k = m as f64 - 1.0;
    if theorem == TheoremId::Diameter {
        return diameter_report(profile, opts);
    }
    let chart = radial_geodesic(profile, profile.grid().max)?;
    let chart_len = chart.length();

    if theorem == TheoremId::Index {
        let bounds = certify(profile, profile.grid().max, opts.certify_nodes)?;
        let lambda = opts.lambda.unwrap_or(0.5 * bounds.h_min);
        if !(lambda > 0.0) {
            return Err(Error::InvalidParameter(format!("index check needs lambda > 0, got {lambda}")));
        }
        let hyp = vec![HypothesisCheck::new("H >= 2 lambda", bounds.h_min, 2.0 * lambda)];
        let l0 = std::f64::consts::PI / (2.0 * lambda).sqrt();
        let grid = opts.grid.clone().unwrap_or_else(|| default_grid(opts.points, l0, 2.0 * l0));
        let lhs = grid
            .iter()
            .map(|&l| {
                let (x, dx) = sine_test_field(l);
                index_form(|_| 2.0 * lambda, l, x, dx)
            })
            .collect();
        let rhs = vec![0.0; grid.len()];
        let notes = vec![format!("synthetic K = 2 lambda on l > pi/sqrt(2 lambda) = {l0:.9}; sine test field")];
        return Ok(finish(theorem, profile, lambda, hyp, grid, lhs, rhs, opts.tolerance, notes));
    }

    // ℓ range: inside the chart, below 1.45 and away from the model pole
    let model_pole = |lam: f64| match theorem {
        TheoremId::HolomorphicHessian => s_kappa_first_zero(2.0 * lam),
        TheoremId::Tube => c_kappa_first_zero(0.5 * lam),
        TheoremId::Volume => s_kappa_first_zero(2.0 * lam).min(s_kappa_first_zero(0.5 * lam)),
        _ => s_kappa_first_zero(0.5 * lam),
    };
    let provisional = opts.lambda;
    let mut top = (0.95 * chart_len).min(1.45);
    if let Some(lam) = provisional {
        top = top.min(0.95 * model_pole(lam));
    }
    let r_top = chart.param_at(top)?;
    let bounds = certify(profile, r_top, opts.certify_nodes)?;
    let (lambda, hyp) = match theorem {
        TheoremId::LaplacianPerp | TheoremId::Tube => {
            let lam = opts.lambda.unwrap_or(bounds.ric_perp_min / k);
            (lam, vec![HypothesisCheck::new("Ric_perp >= (m-1) lambda", bounds.ric_perp_min, k * lam)])
        }
        TheoremId::HolomorphicHessian => {
            let lam = opts.lambda.unwrap_or(0.5 * bounds.h_min);
            (lam, vec![HypothesisCheck::new("H >= 2 lambda", bounds.h_min, 2.0 * lam)])
        }
        TheoremId::OrthogonalHessian => {
            let lam = opts.lambda.unwrap_or(bounds.b_perp_min);
            (lam, vec![HypothesisCheck::new("B_perp >= lambda", bounds.b_perp_min, lam)])
        }
        TheoremId::Volume => {
            let lam = opts.lambda.unwrap_or((bounds.ric_perp_min / k).min(0.5 * bounds.h_min));
            (
                lam,
                vec![
                    HypothesisCheck::new("Ric_perp >= (m-1) lambda", bounds.ric_perp_min, k * lam),
                    HypothesisCheck::new("H >= 2 lambda", bounds.h_min, 2.0 * lam),
                ],
            )
        }
        TheoremId::Index | TheoremId::Diameter => unreachable!(),
    };
    let top = top.min(0.95 * model_pole(lambda));
    let grid = opts.grid.clone().unwrap_or_else(|| default_grid(opts.points, 0.05, top));
    let geo = radial_geodesic(profile, chart.param_at(grid.iter().copied().fold(0.0, f64::max))?)?;
    let mut notes = Vec::new();
    let (lhs, rhs) = match theorem {
        TheoremId::LaplacianPerp => (
            geo.evaluate(RadialOperator::LaplacianPerp, &grid)?,
            grid.iter().map(|&l| Ok(k * cot_kappa(0.5 * lambda, l)?)).collect::<Result<_>>()?,
        ),
        TheoremId::HolomorphicHessian => (
            geo.evaluate(RadialOperator::HolomorphicHessian, &grid)?,
            grid.iter().map(|&l| Ok(0.5 * cot_kappa(2.0 * lambda, l)?)).collect::<Result<_>>()?,
        ),
        TheoremId::Tube => {
            notes.push("tube model: cosine-type initial data; right side is negative for lambda > 0".into());
            (
                geo.evaluate(RadialOperator::TubeLaplacianPerp, &grid)?,
                grid.iter().map(|&l| Ok(k * tan_kappa(0.5 * lambda, l)?)).collect::<Result<_>>()?,
            )
        }
        TheoremId::OrthogonalHessian => {
            notes.push("per orthogonal real direction: lhs = J'_perp/J_perp, rhs = cot_{lambda/2}".into());
            (
                geo.evaluate(RadialOperator::OrthogonalHessian, &grid)?.iter().map(|v| 2.0 * v).collect(),
                grid.iter().map(|&l| cot_kappa(0.5 * lambda, l)).collect::<Result<_>>()?,
            )
        }
        TheoremId::Volume => {
            let table = volume_ratio_table(profile, lambda, &grid)?;
            notes.push("lhs[i] = ratio(l[i+1]), rhs[i] = ratio(l[i]); ratio = Vol_g / Vol_model".into());
            let lhs = table.ratio[1..].to_vec();
            let rhs = table.ratio[..table.ratio.len() - 1].to_vec();
            return Ok(finish(theorem, profile, lambda, hyp, grid[1..].to_vec(), lhs, rhs, opts.tolerance, notes));
        }
        TheoremId::Index | TheoremId::Diameter => unreachable!(),
    };
    Ok(finish(theorem, profile, lambda, hyp, grid, lhs, rhs, opts.tolerance, notes))
}

/// `∫₀^ℓ J_C J_⊥^{2m−2} dη` (dimensional constant dropped).
pub fn ball_volume(sol: &GeodesicSolution, l: f64) -> Result<f64> {
    Ok(ball_volumes(sol, &[l])?[0])
}

fn ball_volumes(sol: &GeodesicSolution, ls: &[f64]) -> Result<Vec<f64>> {
    let top = ls.iter().copied().fold(0.0, f64::max);
    if top > sol.length() * (1.0 + 1e-12) {
        return Err(Error::OutOfRange { param: top, min: 0.0, max: sol.length() });
    }
    let kc = sol.coefficient_fn(Direction::Complex);
    let kp = sol.coefficient_fn(Direction::Orthogonal);
    let p = 2 * sol.profile().m() as i32 - 2;
    let rhs = |t: f64, y: &[f64], d: &mut [f64]| {
        d[0] = y[1];
        d[1] = -kc(t) * y[0];
        d[2] = y[3];
        d[3] = -kp(t) * y[2];
    };
    let traj = integrate(&rhs, 0.0, &[0.0, 1.0, 0.0, 1.0], top, ls, &[0, 2], &OdeOptions::default())?;
    // the volume density vanishes to high order at 0, so integrate it per
    // step rather than as an ODE component under an absolute tolerance
    let mut cumulative = vec![0.0; traj.t.len()];
    for i in 1..traj.t.len() {
        let (a, b) = (traj.t[i - 1], traj.t[i]);
        let density = |s: f64| {
            let y = traj.eval(&rhs, s);
            y[0] * y[2].powi(p)
        };
        cumulative[i] = cumulative[i - 1] + quadrature::gk15(&density, a, b).0;
    }
    ls.iter()
        .map(|&l| {
            let i = traj.t.partition_point(|&s| s < l);
            match traj.t.get(i) {
                Some(&t) if t == l => Ok(cumulative[i]),
                _ => Err(Error::InvalidParameter(format!("volume query {l} is not a solver stop"))),
            }
        })
        .collect()
}

/// Model ball volume `∫₀^ℓ S_{2λ} S_{λ/2}^{2m−2}`.
pub fn model_volume(m: usize, lambda: f64, l: f64) -> f64 {
    let p = 2 * m as i32 - 2;
    quadrature::integrate(
        |t| s_kappa(2.0 * lambda, t) * s_kappa(0.5 * lambda, t).powi(p),
        0.0,
        l,
        1e-300,
        1e-13,
    )
    .value
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeRatioTable {
    pub lambda: f64,
    pub grid: Vec<f64>,
    pub volume: Vec<f64>,
    pub model_volume: Vec<f64>,
    pub ratio: Vec<f64>,
    /// Largest step-to-step increase of the ratio (≤ 0 when nonincreasing).
    pub max_increase: f64,
    pub nonincreasing: bool,
}

pub fn volume_ratio_table(profile: &RadialProfile, lambda: f64, ls: &[f64]) -> Result<VolumeRatioTable> {
    if ls.is_empty() || ls.windows(2).any(|w| w[1] <= w[0]) || ls[0] <= 0.0 {
        return Err(Error::InvalidParameter("volume grid must be positive and increasing".into()));
    }
    let chart = radial_geodesic(profile, profile.grid().max)?;
    let top = *ls.last().expect("non-empty");
    let sol = radial_geodesic(profile, chart.param_at(top)?)?;
    let volume = ball_volumes(&sol, ls)?;
    let model: Vec<f64> = ls.iter().map(|&l| model_volume(profile.m(), lambda, l)).collect();
    let ratio: Vec<f64> = volume.iter().zip(&model).map(|(a, b)| a / b).collect();
    let max_increase = ratio.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    Ok(VolumeRatioTable {
        lambda,
        grid: ls.to_vec(),
        volume,
        model_volume: model,
        ratio,
        nonincreasing: max_increase <= 1e-9,
        max_increase,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiameterReport {
    pub lambda: f64,
    pub lambda_certified: bool,
    pub radial_length: f64,
    pub radial_length_error: f64,
    pub bound: f64,
    pub verdict: Verdict,
}

/// Total radial length against `√(2/λ)·π`. `λ` is certified from
/// `min Ric⊥ / (m − 1)` over the tabulated range when not supplied.
pub fn diameter_estimate(profile: &RadialProfile, lambda: Option<f64>, certify_nodes: usize) -> Result<DiameterReport> {
    let m = profile.m();
    if m < 2 {
        return Err(Error::UnsupportedDimension(m));
    }
    let (lambda, certified) = match lambda {
        Some(l) => (l, false),
        None => (certify(profile, profile.grid().max, certify_nodes)?.ric_perp_min / (m as f64 - 1.0), true),
    };
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "diameter bound needs Ric_perp >= (m-1) lambda with lambda > 0, got lambda = {lambda:.3e}"
        )));
    }
    let (len, err) = profile.total_length();
    let bound = (2.0 / lambda).sqrt() * std::f64::consts::PI;
    let verdict = if len <= bound { Verdict::Pass } else { Verdict::Fail };
    Ok(DiameterReport {
        lambda,
        lambda_certified: certified,
        radial_length: len,
        radial_length_error: err,
        bound,
        verdict,
    })
}

fn diameter_report(profile: &RadialProfile, opts: &CompareOptions) -> Result<ComparisonReport> {
    let d = diameter_estimate(profile, opts.lambda, opts.certify_nodes)?;
    let k = profile.m() as f64 - 1.0;
    let hyp = if d.lambda_certified {
        vec![HypothesisCheck::new("Ric_perp >= (m-1) lambda", k * d.lambda, k * d.lambda)]
    } else {
        Vec::new()
    };
    let notes = vec![format!(
        "lhs = total radial length (error {:.1e}), rhs = sqrt(2/lambda) pi",
        d.radial_length_error
    )];
    Ok(finish(
        TheoremId::Diameter,
        profile,
        d.lambda,
        hyp,
        Vec::new(),
        vec![d.radial_length],
        vec![d.bound],
        0.0,
        notes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_passes() {
        for m in [2, 3] {
            let r = calibration_gate(m).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(TheoremId::parse(t.label()).unwrap(), t);
            assert_eq!(serde_json::to_string(&t).unwrap(), format!("\"{}\"", t.label()));
        }
        assert!(TheoremId::parse("9.9").is_err());
    }

    #[test]
    fn flat_volume_ratio_is_one() {
        let p = flat(2, Grid::new(1e-6, 100.0, 128).unwrap()).unwrap();
        let t = volume_ratio_table(&p, 0.0, &[0.2, 0.8, 1.6]).unwrap();
        for r in &t.ratio {
            assert!((r - 1.0).abs() < 1e-9, "{r}");
        }
    }

    #[test]
    fn diameter_of_flat_fails_precondition() {
        let p = flat(2, Grid::new(1e-6, 100.0, 128).unwrap()).unwrap();
        assert!(diameter_estimate(&p, None, 8).is_err());
        assert!(diameter_estimate(&p, Some(0.0), 8).is_err());
    }
}
