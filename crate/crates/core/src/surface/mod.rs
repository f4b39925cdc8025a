//! The one-point blow-up of the projective plane with the restriction of the
//! product metric `ω = i∂∂̄ log|u|² + λ i∂∂̄ log|v|²`.
//!
//! After a unitary change of coordinates every point is either `(a, 0)` in
//! the affine chart `([1 : z₁ : z₁z₂], [1 : z₂])`, with potential
//! `log η + λ log σ` (`σ = 1 + |z₂|²`, `η = 1 + |z₁|²σ`), or the origin of
//! the chart at infinity `([z₁ : 1 : z₂], [1 : z₂])` with potential
//! `log(1 + |z₁|² + |z₂|²) + λ log σ`. At these points the metric is diagonal
//! and the only nonzero curvature components are `R_{11̄11̄}`, `R_{11̄22̄}`,
//! `R_{22̄22̄}` and their symmetry images.

mod fd;
mod thresholds;

pub use fd::{curvature_from_potential, FdOptions, Potential, PotentialCurvature};
pub use thresholds::{
    large_a_check, sweep_nodes, threshold, threshold_hsc, threshold_ricci, LargeACheck, SurfaceFunctional,
    ThresholdOptions, ThresholdReport, Witness,
};

use crate::error::{Error, Result};
use crate::tensor::{UnitaryFrameCurvature, C64};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlowupSurfaceMetric {
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Affine,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: Chart,
    /// `p = (a, 0)` in the affine chart; ignored at infinity.
    pub a: f64,
}

impl ChartPoint {
    pub fn affine(a: f64) -> Self {
        Self { chart: Chart::Affine, a }
    }

    pub fn infinity() -> Self {
        Self { chart: Chart::Infinity, a: 0.0 }
    }
}

/// Closed-form curvature at a normalised point (coordinate components).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormCurvature {
    pub point: ChartPoint,
    pub lambda: f64,
    /// Diagonal metric `(g_{11̄}, g_{22̄})`.
    pub g: [f64; 2],
    pub r1111: f64,
    pub r1122: f64,
    pub r2222: f64,
    /// Diagonal Ricci components `(R_{11̄}, R_{22̄})`.
    pub ricci: [f64; 2],
}

impl BlowupSurfaceMetric {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
        }
        Ok(Self { lambda })
    }

    pub fn curvature_closed_form(&self, p: ChartPoint) -> Result<ClosedFormCurvature> {
        let l = self.lambda;
        let (g, r1111, r1122, r2222) = match p.chart {
            Chart::Affine => {
                if !(p.a >= 0.0) || !p.a.is_finite() {
                    return Err(Error::InvalidParameter(format!("chart point needs a >= 0, got {}", p.a)));
                }
                let a2 = p.a * p.a;
                let eta = 1.0 + a2;
                let q = a2 + l * eta;
                let g = [1.0 / (eta * eta), q / eta];
                let r1111 = 2.0 / eta.powi(4);
                let r1122 = (a2 - 1.0) / eta.powi(3) + a2 / (eta.powi(3) * q);
                let r2222 = 2.0 * a2 * a2 / (eta * eta) + 2.0 * l;
                (g, r1111, r1122, r2222)
            }
            Chart::Infinity => ([1.0, 1.0 + l], 2.0, 1.0, 2.0 + 2.0 * l),
        };
        let ricci = [r1111 / g[0] + r1122 / g[1], r1122 / g[0] + r2222 / g[1]];
        Ok(ClosedFormCurvature { point: p, lambda: l, g, r1111, r1122, r2222, ricci })
    }

    /// Kähler potential of the chart around `p`.
    pub fn potential(&self, chart: Chart) -> Potential {
        let l = self.lambda;
        // |z + d|² − |z|² without cancellation
        let dn = |z: C64, d: C64| 2.0 * (z.conj() * d).re + d.norm_sqr();
        match chart {
            Chart::Affine => Arc::new(move |z: [C64; 2], d: [C64; 2]| {
                let s0 = 1.0 + z[1].norm_sqr();
                let ds = dn(z[1], d[1]);
                let u0 = z[0].norm_sqr() * s0;
                let du = dn(z[0], d[0]) * (s0 + ds) + z[0].norm_sqr() * ds;
                (du / (1.0 + u0)).ln_1p() + l * (ds / s0).ln_1p()
            }),
            Chart::Infinity => Arc::new(move |z: [C64; 2], d: [C64; 2]| {
                let s0 = 1.0 + z[1].norm_sqr();
                let ds = dn(z[1], d[1]);
                let n0 = s0 + z[0].norm_sqr();
                ((dn(z[0], d[0]) + ds) / n0).ln_1p() + l * (ds / s0).ln_1p()
            }),
        }
    }

    /// Numeric curvature at `p` from the chart potential.
    pub fn curvature_numeric(&self, p: ChartPoint, opts: &FdOptions) -> Result<PotentialCurvature> {
        let z = match p.chart {
            Chart::Affine => [C64::new(p.a, 0.0), C64::new(0.0, 0.0)],
            Chart::Infinity => [C64::new(0.0, 0.0); 2],
        };
        curvature_from_potential(&self.potential(p.chart), z, opts)
    }
}

impl ClosedFormCurvature {
    /// Components in the unitary frame `∂_i/√g_{iī}`.
    pub fn unitary_components(&self) -> (f64, f64, f64) {
        let [g1, g2] = self.g;
        (self.r1111 / (g1 * g1), self.r1122 / (g1 * g2), self.r2222 / (g2 * g2))
    }

    pub fn tensor(&self) -> UnitaryFrameCurvature {
        let (u11, u12, u22) = self.unitary_components();
        let mut t = UnitaryFrameCurvature::zeros(2).expect("m = 2 is supported");
        t.set_orbit(0, 0, 0, 0, C64::new(u11, 0.0));
        t.set_orbit(0, 0, 1, 1, C64::new(u12, 0.0));
        t.set_orbit(1, 1, 1, 1, C64::new(u22, 0.0));
        t
    }

    /// `R(X, X̄, X, X̄)` for coordinate components `x`.
    pub fn h_coord(&self, x: [C64; 2]) -> f64 {
        let (s1, s2) = (x[0].norm_sqr(), x[1].norm_sqr());
        self.r1111 * s1 * s1 + self.r2222 * s2 * s2 + 4.0 * self.r1122 * s1 * s2
    }

    /// Holomorphic sectional curvature of a unit vector with `|x₁|² = s` in
    /// the unitary frame: `u₁₁ s² + u₂₂ (1 − s)² + 4 u₁₂ s (1 − s)`.
    pub fn h_unitary(&self, s: f64) -> f64 {
        let (u11, u12, u22) = self.unitary_components();
        u11 * s * s + u22 * (1.0 - s) * (1.0 - s) + 4.0 * u12 * s * (1.0 - s)
    }

    /// Exact minimum of `H` over unit directions: `(value, s)`.
    pub fn h_min(&self) -> (f64, f64) {
        let (u11, u12, u22) = self.unitary_components();
        // H(s) = c2 s² + c1 s + c0
        let c2 = u11 + u22 - 4.0 * u12;
        let c1 = -2.0 * u22 + 4.0 * u12;
        let mut cands = vec![0.0, 1.0];
        if c2 > 0.0 {
            let v = -c1 / (2.0 * c2);
            if (0.0..=1.0).contains(&v) {
                cands.push(v);
            }
        }
        cands
            .into_iter()
            .map(|s| (self.h_unitary(s), s))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .expect("candidates")
    }

    /// Ricci eigenvalues relative to `g`.
    pub fn ricci_unitary(&self) -> [f64; 2] {
        [self.ricci[0] / self.g[0], self.ricci[1] / self.g[1]]
    }

    /// `(min eigenvalue, index)`.
    pub fn ricci_min(&self) -> (f64, usize) {
        let r = self.ricci_unitary();
        if r[0] <= r[1] {
            (r[0], 0)
        } else {
            (r[1], 1)
        }
    }
}

/// `η²(a² + λη)² R_{11̄}` as a quadratic in `t = a²`, fitted through
/// `t = 0, 1, 2`; returns `[t², t, 1]` coefficients.
pub fn ricci_quadratic_fit(lambda: f64) -> Result<[f64; 3]> {
    let m = BlowupSurfaceMetric::new(lambda)?;
    let f = |t: f64| -> Result<f64> {
        let c = m.curvature_closed_form(ChartPoint::affine(t.sqrt()))?;
        let eta = 1.0 + t;
        Ok(eta * eta * (t + lambda * eta).powi(2) * c.ricci[0])
    };
    let (f0, f1, f2) = (f(0.0)?, f(1.0)?, f(2.0)?);
    let c2 = 0.5 * (f2 - 2.0 * f1 + f0);
    let c1 = f1 - f0 - c2;
    Ok([c2, c1, f0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn origin_values() {
        let m = BlowupSurfaceMetric::new(1.0).unwrap();
        let c = m.curvature_closed_form(ChartPoint::affine(0.0)).unwrap();
        let x = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let (s1, s2) = (0.36, 0.64);
        assert!((c.h_coord(x) - (2.0 * s1 * s1 + 2.0 * s2 * s2 - 4.0 * s1 * s2)).abs() < 1e-14);
        let (h, s) = c.h_min();
        assert!(h.abs() < 1e-14 && (s - 0.5).abs() < 1e-12);
        for &l in &[0.3, 0.75, 2.0] {
            let c = BlowupSurfaceMetric::new(l).unwrap().curvature_closed_form(ChartPoint::affine(0.0)).unwrap();
            assert!((c.ricci[0] - (2.0 - 1.0 / l)).abs() < 1e-14);
            let inf = BlowupSurfaceMetric::new(l).unwrap().curvature_closed_form(ChartPoint::infinity()).unwrap();
            assert!((inf.ricci[0] - (2.0 + 1.0 / (1.0 + l))).abs() < 1e-14);
            assert!((inf.ricci[1] - 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn quadratic_coefficients() {
        for &l in &[0.4, 1.0, 2.5] {
            let c = ricci_quadratic_fit(l).unwrap();
            let want = [(l + 1.0) * (2.0 * l + 3.0), 4.0 * l * (l + 1.0), l * (2.0 * l - 1.0)];
            for i in 0..3 {
                assert!((c[i] - want[i]).abs() < 1e-10, "{c:?} {want:?}");
            }
        }
    }

    #[test]
    fn lower_bound_chain_for_large_lambda() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let l = rng.random_range(1.001..4.0);
            let a: f64 = rng.random_range(0.0..5.0);
            let c = BlowupSurfaceMetric::new(l).unwrap().curvature_closed_form(ChartPoint::affine(a)).unwrap();
            let th: f64 = rng.random_range(0.0..std::f64::consts::FRAC_PI_2);
            let x = [C64::new(th.cos(), 0.0), C64::new(0.0, th.sin())];
            let eta = 1.0 + a * a;
            let bound = 4.0 * a * a / eta.powi(3) * x[0].norm_sqr() * x[1].norm_sqr();
            assert!(c.h_coord(x) > bound - 1e-10);
        }
    }

    #[test]
    fn numeric_engine_matches_closed_form() {
        let m = BlowupSurfaceMetric::new(2.0).unwrap();
        for p in [ChartPoint::affine(1.0), ChartPoint::affine(0.0), ChartPoint::infinity()] {
            let cf = m.curvature_closed_form(p).unwrap();
            let nm = m.curvature_numeric(p, &FdOptions::default()).unwrap();
            let err = cf
                .tensor()
                .table()
                .iter()
                .zip(nm.unitary.table())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-6, "{p:?} {err}");
            for (i, j, k, l) in [(0, 1, 0, 1), (0, 0, 0, 1), (0, 1, 1, 1)] {
                assert!(nm.coord(i, j, k, l).norm() < 1e-8);
            }
        }
    }
}
