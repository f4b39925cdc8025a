//! Comparison functions, radial geodesics of U(m)-invariant metrics and
//! scalar Jacobi fields along them.
//!
//! Along the radial geodesic from the origin, parametrised by arc length
//! `η`, the Jacobi operator is diagonal in a parallel frame:
//! `K_C(η) = A(r(η))` in the direction `C(γ')` and `K_⊥(η) = B(r(η))/2` in
//! each of the `2m − 2` orthogonal real directions.

mod checks;
mod kappa;
pub mod ode;

pub use checks::*;
pub use kappa::*;

use crate::error::{Error, Result};
use crate::profile::{CurvatureABC, Func, RadialProfile};
use crate::quadrature::gk15;
use ode::{integrate, OdeOptions, Trajectory};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::sync::Arc;

/// Initial conditions of a scalar Jacobi field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    /// `J(0) = 0, J'(0) = 1`.
    Point,
    /// `J(0) = 1, J'(0) = 0` (totally geodesic initial submanifold).
    Submanifold,
}

impl Boundary {
    fn initial(self) -> [f64; 2] {
        match self {
            Boundary::Point => [0.0, 1.0],
            Boundary::Submanifold => [1.0, 0.0],
        }
    }
}

fn jacobi_rhs(k: &Func) -> impl Fn(f64, &[f64], &mut [f64]) + '_ {
    move |t, y, d| {
        d[0] = y[1];
        d[1] = -k(t) * y[0];
    }
}

/// Solution of `J'' + K J = 0` on `[0, L]`.
#[derive(Clone)]
pub struct JacobiSolution {
    k: Func,
    bc: Boundary,
    traj: Trajectory,
}

impl std::fmt::Debug for JacobiSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("JacobiSolution")
            .field("bc", &self.bc)
            .field("length", &self.length())
            .field("steps", &self.steps())
            .finish()
    }
}

/// Integrate the Jacobi equation up to `length`, landing on every `stops`
/// point. Fails with [`Error::ConjugatePoint`] if `J` vanishes in `(0, length]`.
pub fn jacobi_solve(k: Func, bc: Boundary, length: f64, stops: &[f64]) -> Result<JacobiSolution> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::InvalidParameter(format!("Jacobi length must be positive, got {length}")));
    }
    let traj = integrate(&jacobi_rhs(&k), 0.0, &bc.initial(), length, stops, &[0], &OdeOptions::default())?;
    if traj.end().1[0] == 0.0 {
        return Err(Error::ConjugatePoint { at: length, requested: length });
    }
    Ok(JacobiSolution { k, bc, traj })
}

impl JacobiSolution {
    pub fn boundary(&self) -> Boundary {
        self.bc
    }

    pub fn length(&self) -> f64 {
        self.traj.end().0
    }

    pub fn steps(&self) -> usize {
        self.traj.t.len() - 1
    }

    /// `(J(η), J'(η))`.
    pub fn value(&self, eta: f64) -> Result<(f64, f64)> {
        if !(0.0..=self.length()).contains(&eta) {
            return Err(Error::OutOfRange { param: eta, min: 0.0, max: self.length() });
        }
        let y = self.traj.eval(&jacobi_rhs(&self.k), eta);
        Ok((y[0], y[1]))
    }

    /// `J'(η)/J(η)`, `η > 0`.
    pub fn log_derivative(&self, eta: f64) -> Result<f64> {
        if self.bc == Boundary::Point && eta <= 0.0 {
            return Err(Error::InvalidParameter("log-derivative of a point field at 0".into()));
        }
        let (j, dj) = self.value(eta)?;
        Ok(dj / j)
    }

    /// Sup over accepted steps `[a, b]` of the step-averaged residuals
    /// `|J(b) − J(a) − ∫J'| / (b − a)` and `|J'(b) − J'(a) + ∫KJ| / (b − a)`,
    /// i.e. of `J' − (J)'` and `J'' + KJ` tested against the step indicator.
    pub fn residual(&self) -> f64 {
        let rhs = jacobi_rhs(&self.k);
        let mut worst: f64 = 0.0;
        for i in 0..self.steps() {
            let (a, b) = (self.traj.t[i], self.traj.t[i + 1]);
            let (ya, yb) = (&self.traj.y[i], &self.traj.y[i + 1]);
            let ydot = |s: f64| {
                if s <= a {
                    ya.clone()
                } else {
                    ode::dp_step(&rhs, a, ya, s - a).0
                }
            };
            let (i1, _) = gk15(&|s| ydot(s)[1], a, b);
            let (i2, _) = gk15(&|s| (self.k)(s) * ydot(s)[0], a, b);
            let r1 = (yb[0] - ya[0] - i1).abs();
            let r2 = (yb[1] - ya[1] + i2).abs();
            worst = worst.max(r1.max(r2) / (b - a));
        }
        worst
    }
}

/// Radial geodesic of a profile, from the origin out to `r(η) = r_max`.
#[derive(Debug, Clone)]
pub struct GeodesicSolution {
    profile: RadialProfile,
    r_max: f64,
    length: f64,
}

/// Set up the radial geodesic on `[0, r_max]` (native parameter).
pub fn radial_geodesic(profile: &RadialProfile, r_max: f64) -> Result<GeodesicSolution> {
    profile.check_param(r_max)?;
    Ok(GeodesicSolution { profile: profile.clone(), r_max, length: profile.arc_length(r_max) })
}

/// Which Jacobi coefficient along the geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// `C(γ')`, coefficient `A`.
    Complex,
    /// A real direction orthogonal to `γ'` and `C(γ')`, coefficient `B/2`.
    Orthogonal,
}

impl GeodesicSolution {
    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Arc length `L` of the solved segment.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// `r(η)`, inverse of the arc-length map.
    pub fn param_at(&self, eta: f64) -> Result<f64> {
        if eta > self.length * (1.0 + 1e-12) {
            return Err(Error::OutOfRange { param: eta, min: 0.0, max: self.length });
        }
        self.profile.param_at_length(eta.min(self.length))
    }

    pub fn abc_at_length(&self, eta: f64) -> Result<CurvatureABC> {
        let p = self.param_at(eta)?;
        if p <= 0.0 {
            Ok(self.profile.abc_at_origin())
        } else {
            self.profile.abc_at(p)
        }
    }

    /// `(K_C(η), K_⊥(η))`.
    pub fn coefficients(&self, eta: f64) -> Result<(f64, f64)> {
        let v = self.abc_at_length(eta)?;
        Ok((v.a, 0.5 * v.b))
    }

    pub fn coefficient_fn(&self, dir: Direction) -> Func {
        let g = self.clone();
        Arc::new(move |eta| match g.coefficients(eta) {
            Ok((kc, kp)) => match dir {
                Direction::Complex => kc,
                Direction::Orthogonal => kp,
            },
            Err(_) => f64::NAN,
        })
    }

    pub fn jacobi(&self, dir: Direction, bc: Boundary, upto: f64, stops: &[f64]) -> Result<JacobiSolution> {
        if upto > self.length * (1.0 + 1e-12) {
            return Err(Error::OutOfRange { param: upto, min: 0.0, max: self.length });
        }
        jacobi_solve(self.coefficient_fn(dir), bc, upto, stops)
    }

    /// Evaluate a radial operator at every `ℓ` in `ls` from one Jacobi solve.
    pub fn evaluate(&self, op: RadialOperator, ls: &[f64]) -> Result<Vec<f64>> {
        let top = ls.iter().copied().fold(0.0, f64::max);
        let (dir, bc, factor) = op.setup(self.profile.m());
        let sol = self.jacobi(dir, bc, top, ls)?;
        ls.iter().map(|&l| Ok(factor * sol.log_derivative(l)?)).collect()
    }

    /// CSV rows `eta,K_C,K_perp,J,J'` for the chosen Jacobi field.
    pub fn write_csv<W: Write>(&self, mut out: W, dir: Direction, bc: Boundary, ls: &[f64]) -> Result<()> {
        let top = ls.iter().copied().fold(0.0, f64::max);
        let sol = self.jacobi(dir, bc, top, ls)?;
        writeln!(out, "eta,K_C,K_perp,J,J'")?;
        for &l in ls {
            let (kc, kp) = self.coefficients(l)?;
            let (j, dj) = sol.value(l)?;
            writeln!(out, "{l},{kc},{kp},{j},{dj}")?;
        }
        Ok(())
    }
}

/// Log-derivative functionals of the distance from the origin (or from a
/// totally geodesic hypersurface for the tube case).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadialOperator {
    /// `Δ⊥ρ = (m − 1) J'_⊥/J_⊥`.
    LaplacianPerp,
    /// `∇²ρ(Z, Z̄) = ½ J'_C/J_C`.
    HolomorphicHessian,
    /// `½ J'_⊥/J_⊥` per orthogonal real direction.
    OrthogonalHessian,
    /// `(m − 1) J'_⊥/J_⊥` with cosine-type initial data.
    TubeLaplacianPerp,
}

impl RadialOperator {
    fn setup(self, m: usize) -> (Direction, Boundary, f64) {
        let k = m as f64 - 1.0;
        match self {
            RadialOperator::LaplacianPerp => (Direction::Orthogonal, Boundary::Point, k),
            RadialOperator::HolomorphicHessian => (Direction::Complex, Boundary::Point, 0.5),
            RadialOperator::OrthogonalHessian => (Direction::Orthogonal, Boundary::Point, 0.5),
            RadialOperator::TubeLaplacianPerp => (Direction::Orthogonal, Boundary::Submanifold, k),
        }
    }
}

pub fn laplacian_perp(sol: &GeodesicSolution, l: f64) -> Result<f64> {
    Ok(sol.evaluate(RadialOperator::LaplacianPerp, &[l])?[0])
}

pub fn holomorphic_hessian(sol: &GeodesicSolution, l: f64) -> Result<f64> {
    Ok(sol.evaluate(RadialOperator::HolomorphicHessian, &[l])?[0])
}

pub fn orthogonal_hessian(sol: &GeodesicSolution, l: f64) -> Result<f64> {
    Ok(sol.evaluate(RadialOperator::OrthogonalHessian, &[l])?[0])
}

pub fn tube_laplacian_perp(sol: &GeodesicSolution, l: f64) -> Result<f64> {
    Ok(sol.evaluate(RadialOperator::TubeLaplacianPerp, &[l])?[0])
}

/// `∫₀^ℓ (X'² − K X²) dη`.
pub fn index_form<K, X, DX>(k: K, l: f64, x: X, dx: DX) -> f64
where
    K: Fn(f64) -> f64,
    X: Fn(f64) -> f64,
    DX: Fn(f64) -> f64,
{
    crate::quadrature::integrate(|s| dx(s).powi(2) - k(s) * x(s).powi(2), 0.0, l, 1e-13, 1e-13).value
}

/// The sine test field `X(η) = sin(πη/ℓ)` and its derivative.
pub fn sine_test_field(l: f64) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
    let w = std::f64::consts::PI / l;
    (move |s: f64| (w * s).sin(), move |s: f64| w * (w * s).cos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{flat, fubini_study, Grid};

    fn constant(k: f64) -> Func {
        Arc::new(move |_| k)
    }

    #[test]
    fn constant_coefficients() {
        let s = jacobi_solve(constant(0.0), Boundary::Point, 2.0, &[0.5]).unwrap();
        assert!((s.log_derivative(0.5).unwrap() - 2.0).abs() < 1e-12);
        for &k in &[0.7, -1.3] {
            let p = jacobi_solve(constant(k), Boundary::Point, 1.5, &[]).unwrap();
            let q = jacobi_solve(constant(k), Boundary::Submanifold, 1.5, &[]).unwrap();
            for &t in &[0.2, 0.9, 1.5] {
                assert!((p.log_derivative(t).unwrap() - cot_kappa(k, t).unwrap()).abs() < 1e-9);
                assert!((q.log_derivative(t).unwrap() - tan_kappa(k, t).unwrap()).abs() < 1e-9);
            }
            assert!(p.residual() < 1e-9, "{}", p.residual());
        }
    }

    #[test]
    fn conjugate_point_is_reported() {
        match jacobi_solve(constant(1.0), Boundary::Point, 4.0, &[]) {
            Err(Error::ConjugatePoint { at, .. }) => assert!((at - std::f64::consts::PI).abs() < 1e-10),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn flat_geodesic() {
        let g = Grid::new(1e-6, 100.0, 256).unwrap();
        let sol = radial_geodesic(&flat(2, g).unwrap(), 9.0).unwrap();
        assert!((sol.length() - 3.0).abs() < 1e-12);
        assert!((sol.param_at(1.5).unwrap() - 2.25).abs() < 1e-12);
        assert_eq!(sol.coefficients(1.0).unwrap(), (0.0, 0.0));
        let v = sol.evaluate(RadialOperator::LaplacianPerp, &[0.5, 2.0]).unwrap();
        assert!((v[0] - 2.0).abs() < 1e-10 && (v[1] - 0.5).abs() < 1e-10);
        assert!(tube_laplacian_perp(&sol, 1.0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn fubini_study_geodesic() {
        let fs = fubini_study(3, 1.0, Grid::default()).unwrap();
        let sol = radial_geodesic(&fs, 100.0).unwrap();
        assert!((sol.length() - 10f64.atan()).abs() < 1e-10);
        let (kc, kp) = sol.coefficients(0.8).unwrap();
        assert!((kc - 2.0).abs() < 1e-8 && (kp - 0.5).abs() < 1e-8);
        let ls = [0.1, 0.7, 1.4];
        let lap = sol.evaluate(RadialOperator::LaplacianPerp, &ls).unwrap();
        let hol = sol.evaluate(RadialOperator::HolomorphicHessian, &ls).unwrap();
        let tube = sol.evaluate(RadialOperator::TubeLaplacianPerp, &ls).unwrap();
        for (i, &l) in ls.iter().enumerate() {
            assert!((lap[i] - 2.0 * cot_kappa(0.5, l).unwrap()).abs() < 1e-7);
            assert!((hol[i] - 0.5 * cot_kappa(2.0, l).unwrap()).abs() < 1e-7);
            assert!((tube[i] - 2.0 * tan_kappa(0.5, l).unwrap()).abs() < 1e-7);
        }
    }

    #[test]
    fn index_form_on_the_boundary() {
        let lam: f64 = 0.8;
        let l = std::f64::consts::PI / (2.0 * lam).sqrt();
        let (x, dx) = sine_test_field(l);
        assert!(index_form(|_| 2.0 * lam, l, &x, &dx).abs() < 1e-9);
        let (x, dx) = sine_test_field(1.2 * l);
        assert!(index_form(|_| 2.0 * lam, 1.2 * l, x, dx) < 0.0);
    }
}
