//! Curvature of a Kähler metric on a 2-dimensional chart from its potential
//! by finite differences.
//!
//! Real partial derivatives of the potential up to order four are taken with
//! tensor products of fourth-order central stencils and Richardson
//! extrapolation over halved steps, then assembled into Wirtinger derivatives
//! `∂_k = ½(∂_{x_k} − i∂_{y_k})`, `∂_k̄ = ½(∂_{x_k} + i∂_{y_k})`.

use crate::error::{Error, Result};
use crate::tensor::{symmetrize, UnitaryFrameCurvature, C64};
use nalgebra::DMatrix;
use std::collections::HashMap;
use std::sync::Arc;

/// Increment `Φ(z + δ) − Φ(z)` of a Kähler potential, called as `phi(z, δ)`.
/// Evaluating the difference directly keeps cancellation out of the stencils.
pub type Potential = Arc<dyn Fn([C64; 2], [C64; 2]) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdOptions {
    /// Step in unitary linear coordinates at the point.
    pub step: f64,
    /// Number of Richardson halvings (0 disables extrapolation).
    pub richardson: usize,
}

impl Default for FdOptions {
    fn default() -> Self {
        Self { step: 0.02, richardson: 2 }
    }
}

/// Fornberg weights for the `order`-th derivative at 0 on integer `offsets`.
fn fornberg(order: usize, offsets: &[i32]) -> Vec<f64> {
    let n = offsets.len();
    let xs: Vec<f64> = offsets.iter().map(|&o| o as f64).collect();
    let mut c = vec![vec![0.0; n]; order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0];
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i];
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c.swap_remove(order)
}

/// Fourth-order central stencil for the `n`-th derivative (unit spacing).
fn stencil(n: usize) -> Vec<(i32, f64)> {
    if n == 0 {
        return vec![(0, 1.0)];
    }
    let p = (n.div_ceil(2) + 1) as i32;
    let offsets: Vec<i32> = (-p..=p).collect();
    let w = fornberg(n, &offsets);
    offsets.into_iter().zip(w).filter(|(_, w)| *w != 0.0).collect()
}

struct RealJet<'a> {
    phi: &'a (dyn Fn([C64; 2]) -> f64 + Send + Sync),
    base: [f64; 4],
    h: f64,
    richardson: usize,
    cache: HashMap<[usize; 4], f64>,
    stencils: Vec<Vec<(i32, f64)>>,
}

impl RealJet<'_> {
    fn eval(&self, x: [f64; 4]) -> f64 {
        (self.phi)([C64::new(x[0], x[1]), C64::new(x[2], x[3])])
    }

    fn raw(&self, orders: [usize; 4], h: f64) -> f64 {
        let mut total = 0.0;
        let s: Vec<&Vec<(i32, f64)>> = orders.iter().map(|&n| &self.stencils[n]).collect();
        for &(o0, w0) in s[0] {
            for &(o1, w1) in s[1] {
                for &(o2, w2) in s[2] {
                    for &(o3, w3) in s[3] {
                        let x = [
                            self.base[0] + o0 as f64 * h,
                            self.base[1] + o1 as f64 * h,
                            self.base[2] + o2 as f64 * h,
                            self.base[3] + o3 as f64 * h,
                        ];
                        total += w0 * w1 * w2 * w3 * self.eval(x);
                    }
                }
            }
        }
        total / h.powi(orders.iter().sum::<usize>() as i32)
    }

    /// Real partial `∂^{orders}` of the potential.
    fn partial(&mut self, orders: [usize; 4]) -> f64 {
        if let Some(&v) = self.cache.get(&orders) {
            return v;
        }
        // even error expansion h^4, h^6, ...
        let mut row: Vec<f64> = (0..=self.richardson).map(|k| self.raw(orders, self.h / (1 << k) as f64)).collect();
        for level in 0..self.richardson {
            let f = 4f64.powi(level as i32 + 2);
            row = row.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
        }
        let v = row[0];
        self.cache.insert(orders, v);
        v
    }

    /// Product of Wirtinger derivatives; `ops` lists `(variable, conjugated)`.
    fn wirtinger(&mut self, ops: &[(usize, bool)]) -> C64 {
        // expand ∏ ½(∂x ∓ i∂y) into real partials
        let mut terms: Vec<([usize; 4], C64)> = vec![([0; 4], C64::new(1.0, 0.0))];
        for &(var, conj) in ops {
            let sy = if conj { 1.0 } else { -1.0 };
            let mut next = Vec::with_capacity(terms.len() * 2);
            for (ord, c) in &terms {
                let mut ox = *ord;
                ox[2 * var] += 1;
                next.push((ox, c * 0.5));
                let mut oy = *ord;
                oy[2 * var + 1] += 1;
                next.push((oy, c * C64::new(0.0, 0.5 * sy)));
            }
            terms = next;
        }
        terms.into_iter().map(|(ord, c)| c * self.partial(ord)).sum()
    }
}

/// Metric, its derivatives and the curvature at one chart point.
#[derive(Debug, Clone)]
pub struct PotentialCurvature {
    /// `g[i][j] = g_{i j̄}`.
    pub g: [[C64; 2]; 2],
    /// Coordinate components `R_{i j̄ k l̄}`, row-major.
    pub coords: Vec<C64>,
    /// Components in a `g`-unitary frame (symmetrized).
    pub unitary: UnitaryFrameCurvature,
    /// Size of the antisymmetric part removed by the symmetrization.
    pub symmetry_residual: f64,
}

impl PotentialCurvature {
    pub fn coord(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.coords[((i * 2 + j) * 2 + k) * 2 + l]
    }
}

struct Jet {
    g: DMatrix<C64>,
    dg: [[[C64; 2]; 2]; 2],
    ddg: Vec<C64>,
}

fn jet(phi: &(dyn Fn([C64; 2]) -> f64 + Send + Sync), h: f64, richardson: usize, full: bool) -> Jet {
    let mut rj = RealJet {
        phi,
        base: [0.0; 4],
        h,
        richardson,
        cache: HashMap::new(),
        stencils: (0..=4).map(stencil).collect(),
    };
    let g = DMatrix::from_fn(2, 2, |i, j| rj.wirtinger(&[(i, false), (j, true)]));
    let mut dg = [[[C64::new(0.0, 0.0); 2]; 2]; 2];
    let mut ddg = vec![C64::new(0.0, 0.0); 16];
    if full {
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    dg[i][j][k] = rj.wirtinger(&[(i, false), (j, true), (k, false)]);
                    for l in 0..2 {
                        ddg[idx(i, j, k, l)] = rj.wirtinger(&[(i, false), (j, true), (k, false), (l, true)]);
                    }
                }
            }
        }
    }
    Jet { g, dg, ddg }
}

#[inline]
fn idx(i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * 2 + j) * 2 + k) * 2 + l
}

/// `T'_{abcd} = Σ T_{ijkl} M_{ia} conj(M_{jb}) M_{kc} conj(M_{ld})`.
fn transform(t: &[C64], m: &DMatrix<C64>) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); 16];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    let mut s = C64::new(0.0, 0.0);
                    for i in 0..2 {
                        for j in 0..2 {
                            for k in 0..2 {
                                for l in 0..2 {
                                    s += t[idx(i, j, k, l)]
                                        * m[(i, a)]
                                        * m[(j, b)].conj()
                                        * m[(k, c)]
                                        * m[(l, d)].conj();
                                }
                            }
                        }
                    }
                    out[idx(a, b, c, d)] = s;
                }
            }
        }
    }
    out
}

/// `R_{i j̄ k l̄} = −g_{i j̄, k l̄} + Σ g_{i p̄, k} conj(g_{j q̄, l}) g^{p̄ q}`.
///
/// A first pass gives `g` at `z`; the derivatives are then taken in the
/// linear coordinates `w` with `z = z₀ + E w`, `E` a `g`-unitary frame, so
/// all stencils work at unit scale.
pub fn curvature_from_potential(phi: &Potential, z: [C64; 2], opts: &FdOptions) -> Result<PotentialCurvature> {
    let scale = (z[0].norm_sqr() + z[1].norm_sqr()).sqrt().max(1.0);
    let shifted = |w: [C64; 2]| phi(z, w);
    let g = jet(&shifted, opts.step * scale, opts.richardson, false).g;
    check_metric(&g)?;
    let e = unitary_frame(&g)?;
    let e2 = e.clone();
    let local = move |w: [C64; 2]| {
        let dz0 = e2[(0, 0)] * w[0] + e2[(0, 1)] * w[1];
        let dz1 = e2[(1, 0)] * w[0] + e2[(1, 1)] * w[1];
        phi(z, [dz0, dz1])
    };
    let jw = jet(&local, opts.step, opts.richardson, true);
    check_metric(&jw.g)?;
    let ginv = jw.g.clone().try_inverse().ok_or(Error::SingularMetric(0.0))?;
    let mut rw = vec![C64::new(0.0, 0.0); 16];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let mut s = -jw.ddg[idx(i, j, k, l)];
                    for p in 0..2 {
                        for q in 0..2 {
                            s += jw.dg[i][p][k] * jw.dg[j][q][l].conj() * ginv[(p, q)];
                        }
                    }
                    rw[idx(i, j, k, l)] = s;
                }
            }
        }
    }
    // w-coordinates are unitary up to the residual of the first-pass metric
    let raw = transform(&rw, &unitary_frame(&jw.g)?);
    let f = e.clone().try_inverse().ok_or(Error::SingularMetric(0.0))?;
    let coords = transform(&rw, &f);
    let sym = symmetrize(2, &raw);
    let symmetry_residual = raw.iter().zip(&sym).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let unitary = UnitaryFrameCurvature::from_table(2, sym)?;
    let g = [[g[(0, 0)], g[(0, 1)]], [g[(1, 0)], g[(1, 1)]]];
    Ok(PotentialCurvature { g, coords, unitary, symmetry_residual })
}

fn check_metric(g: &DMatrix<C64>) -> Result<()> {
    let eig = g.clone().symmetric_eigen();
    let min_eig = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min_eig > 1e-12 * eig.eigenvalues.amax().max(1e-300)) {
        return Err(Error::SingularMetric(min_eig));
    }
    Ok(())
}

/// Columns form a `g`-unitary frame: `Σ g_{i j̄} E_{ia} conj(E_{jb}) = δ_ab`.
pub(crate) fn unitary_frame(g: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let gt = g.transpose();
    let eig = gt.symmetric_eigen();
    let n = g.nrows();
    let mut d = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        let mu = eig.eigenvalues[i];
        if !(mu > 0.0) {
            return Err(Error::SingularMetric(mu));
        }
        d[(i, i)] = C64::new(1.0 / mu.sqrt(), 0.0);
    }
    Ok(&eig.eigenvectors * d * eig.eigenvectors.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_are_fourth_order() {
        assert_eq!(stencil(1).len(), 4);
        let s2: Vec<f64> = stencil(2).iter().map(|p| p.1 * 12.0).collect();
        assert_eq!(s2.len(), 5);
        assert!((s2[2] + 30.0).abs() < 1e-12);
        let s4: f64 = stencil(4).iter().map(|&(o, w)| w * (o as f64).powi(4)).sum();
        assert!((s4 - 24.0).abs() < 1e-10);
    }

    #[test]
    fn flat_and_space_form() {
        let dq = |z: [C64; 2], d: [C64; 2]| (0..2).map(|k| 2.0 * (z[k].conj() * d[k]).re + d[k].norm_sqr()).sum::<f64>();
        let flat: Potential = Arc::new(dq);
        let z = [C64::new(0.3, -0.2), C64::new(0.1, 0.4)];
        let c = curvature_from_potential(&flat, z, &FdOptions::default()).unwrap();
        assert!(c.coords.iter().all(|v| v.norm() < 1e-8));
        let fs: Potential = Arc::new(move |z: [C64; 2], d: [C64; 2]| {
            (dq(z, d) / (1.0 + z[0].norm_sqr() + z[1].norm_sqr())).ln_1p()
        });
        let c = curvature_from_potential(&fs, z, &FdOptions::default()).unwrap();
        let space = UnitaryFrameCurvature::space_form(2, 1.0).unwrap();
        let err = c.unitary.table().iter().zip(space.table()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-7, "{err}");
    }
}
