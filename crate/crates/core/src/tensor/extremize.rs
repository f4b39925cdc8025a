//! Extremization of curvature functionals over the unit sphere of `C^m`.

use super::{hermitian, norm, random_unit_vector, UnitaryFrameCurvature, C64};
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Functional {
    HolomorphicSectional,
    Ricci,
    OrthogonalRicci,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereOptions {
    pub restarts: usize,
    pub max_iter: usize,
    pub grad_tol: f64,
    pub seed: u64,
}

impl Default for SphereOptions {
    fn default() -> Self {
        Self { restarts: 64, max_iter: 4000, grad_tol: 1e-10, seed: 42 }
    }
}

impl SphereOptions {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extremum {
    pub value: f64,
    pub direction: Vec<C64>,
    pub restarts: usize,
    /// Restarts whose projected gradient reached `grad_tol`.
    pub converged: usize,
    /// Projected gradient norm at the returned direction.
    pub grad_norm: f64,
}

struct Objective<'a> {
    tensor: &'a UnitaryFrameCurvature,
    ricci: DMatrix<C64>,
    functional: Functional,
    sign: f64,
}

impl Objective<'_> {
    fn value(&self, z: &[C64]) -> f64 {
        let v = match self.functional {
            Functional::HolomorphicSectional => self.tensor.quartic(z),
            Functional::Ricci => self.ric(z),
            Functional::OrthogonalRicci => self.ric(z) - self.tensor.quartic(z),
        };
        self.sign * v
    }

    fn ric(&self, z: &[C64]) -> f64 {
        let m = z.len();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..m {
            for j in 0..m {
                acc += self.ricci[(i, j)] * z[i] * z[j].conj();
            }
        }
        acc.re
    }

    /// Euclidean gradient in `R^{2m}` packed as a complex vector
    /// (`∂f/∂x + i ∂f/∂y = 2 ∂f/∂z̄`).
    fn gradient(&self, z: &[C64]) -> Vec<C64> {
        let m = z.len();
        let quartic_grad = || -> Vec<C64> {
            (0..m)
                .map(|p| {
                    let mut s = C64::new(0.0, 0.0);
                    for i in 0..m {
                        for k in 0..m {
                            let zz = z[i] * z[k];
                            for l in 0..m {
                                s += self.tensor.get(i, p, k, l) * zz * z[l].conj();
                            }
                        }
                    }
                    4.0 * s
                })
                .collect()
        };
        let ric_grad = || -> Vec<C64> {
            (0..m)
                .map(|p| 2.0 * (0..m).map(|i| self.ricci[(i, p)] * z[i]).sum::<C64>())
                .collect()
        };
        let g: Vec<C64> = match self.functional {
            Functional::HolomorphicSectional => quartic_grad(),
            Functional::Ricci => ric_grad(),
            Functional::OrthogonalRicci => {
                ric_grad().into_iter().zip(quartic_grad()).map(|(a, b)| a - b).collect()
            }
        };
        g.into_iter().map(|c| c * self.sign).collect()
    }
}

fn project(g: &[C64], z: &[C64]) -> Vec<C64> {
    let radial = hermitian(g, z).re;
    g.iter().zip(z).map(|(gi, zi)| gi - zi * radial).collect()
}

fn normalized(z: Vec<C64>) -> Vec<C64> {
    let n = norm(&z);
    z.into_iter().map(|c| c / n).collect()
}

fn real_dot(a: &[C64], b: &[C64]) -> f64 {
    hermitian(a, b).re
}

/// Projected gradient descent on the sphere with Armijo backtracking and a
/// Barzilai–Borwein trial step. Returns (value, point, grad norm).
fn descend(obj: &Objective<'_>, start: Vec<C64>, opts: &SphereOptions) -> (f64, Vec<C64>, f64) {
    let mut z = start;
    let mut val = obj.value(&z);
    let mut g = project(&obj.gradient(&z), &z);
    let mut gn = norm(&g);
    let mut step = 1.0;
    for _ in 0..opts.max_iter {
        if gn < opts.grad_tol {
            break;
        }
        let mut t = step;
        let mut accepted = None;
        while t > 1e-18 {
            let cand = normalized(z.iter().zip(&g).map(|(a, b)| a - b * t).collect());
            let cv = obj.value(&cand);
            if cv <= val - 1e-4 * t * gn * gn {
                accepted = Some((cand, cv));
                break;
            }
            t *= 0.5;
        }
        let Some((znew, vnew)) = accepted else { break };
        let gnew = project(&obj.gradient(&znew), &znew);
        let s: Vec<C64> = znew.iter().zip(&z).map(|(a, b)| a - b).collect();
        let y: Vec<C64> = gnew.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = real_dot(&s, &y);
        step = if sy > 0.0 { (real_dot(&s, &s) / sy).clamp(1e-6, 1e3) } else { (2.0 * t).min(1e3) };
        z = znew;
        val = vnew;
        g = gnew;
        gn = norm(&g);
    }
    (val, z, gn)
}

/// Multi-start projected gradient extremization of `H`, `Ric` or `Ric⊥`.
pub fn extremize_over_sphere(
    tensor: &UnitaryFrameCurvature,
    functional: Functional,
    mode: Mode,
    opts: &SphereOptions,
) -> Extremum {
    let obj = Objective {
        tensor,
        ricci: tensor.ricci_matrix(),
        functional,
        sign: if mode == Mode::Min { 1.0 } else { -1.0 },
    };
    let m = tensor.dim();
    let runs: Vec<(f64, Vec<C64>, f64)> = (0..opts.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(r as u64));
            // The first start is a frame vector so degenerate tensors are hit exactly.
            let start = if r < m {
                super::TangentDirection::basis(m, r).as_slice().to_vec()
            } else {
                random_unit_vector(m, &mut rng)
            };
            descend(&obj, start, opts)
        })
        .collect();
    let converged = runs.iter().filter(|r| r.2 < opts.grad_tol).count();
    let best = runs
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one restart");
    Extremum {
        value: obj.sign * best.0,
        direction: best.1,
        restarts: opts.restarts.max(1),
        converged,
        grad_norm: best.2,
    }
}

/// Orthonormal basis of the complement of `vs` in `C^m`.
pub(crate) fn complement_basis(vs: &[Vec<C64>], m: usize) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = vs.to_vec();
    let mut out = Vec::new();
    for e in 0..m {
        let mut v = vec![C64::new(0.0, 0.0); m];
        v[e] = C64::new(1.0, 0.0);
        for _ in 0..2 {
            for b in &basis {
                let c = hermitian(&v, b);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= c * bi;
                }
            }
        }
        let n = norm(&v);
        if n > 1e-6 {
            let v: Vec<C64> = v.into_iter().map(|c| c / n).collect();
            basis.push(v.clone());
            out.push(v);
        }
        if basis.len() == m {
            break;
        }
    }
    out
}

/// Minimizes the Hermitian form `v^H M v` over unit `v ⊥ fixed`.
fn restricted_min(mat: &DMatrix<C64>, fixed: &[C64]) -> (f64, Vec<C64>) {
    let m = fixed.len();
    let comp = complement_basis(&[fixed.to_vec()], m);
    let k = comp.len();
    let b = DMatrix::from_fn(m, k, |r, c| comp[c][r]);
    let reduced = b.adjoint() * mat * &b;
    let reduced = (&reduced + reduced.adjoint()) * C64::new(0.5, 0.0);
    let eig = reduced.symmetric_eigen();
    let (idx, val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, v)| (i, *v))
        .expect("non-empty spectrum");
    let y = eig.eigenvectors.column(idx);
    let v = &b * y;
    (val, normalized(v.iter().copied().collect()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalBisectionalMin {
    pub value: f64,
    pub z: Vec<C64>,
    pub w: Vec<C64>,
    pub restarts: usize,
}

/// Minimum of `R(Z, Z̄, W, W̄)` over unit pairs with `<Z, W̄> = 0`.
///
/// Alternates exact minimization over `W ⊥ Z` (smallest eigenvalue of the
/// Hermitian form `W ↦ R(Z, Z̄, W, W̄)` on `Z^⊥`) and over `Z ⊥ W`, from
/// `opts.restarts` random starting points.
pub fn orthogonal_bisectional_min(
    tensor: &UnitaryFrameCurvature,
    opts: &SphereOptions,
) -> OrthogonalBisectionalMin {
    let m = tensor.dim();
    assert!(m >= 2, "orthogonal pairs need m >= 2");
    // form_in_second(z)[(a, b)] such that R(Z, Z̄, W, W̄) = w^H M w
    let form_in_second = |z: &[C64]| {
        DMatrix::from_fn(m, m, |a, b| {
            let mut s = C64::new(0.0, 0.0);
            for i in 0..m {
                for j in 0..m {
                    s += tensor.get(i, j, b, a) * z[i] * z[j].conj();
                }
            }
            s
        })
    };
    let form_in_first = |w: &[C64]| {
        DMatrix::from_fn(m, m, |a, b| {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..m {
                for l in 0..m {
                    s += tensor.get(b, a, k, l) * w[k] * w[l].conj();
                }
            }
            s
        })
    };
    let runs: Vec<(f64, Vec<C64>, Vec<C64>)> = (0..opts.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1_000 + r as u64));
            let mut z = if r < m {
                super::TangentDirection::basis(m, r).as_slice().to_vec()
            } else {
                random_unit_vector(m, &mut rng)
            };
            let (mut val, mut w) = restricted_min(&form_in_second(&z), &z);
            for _ in 0..500 {
                let (_, z_new) = restricted_min(&form_in_first(&w), &w);
                z = z_new;
                let (v_new, w_new) = restricted_min(&form_in_second(&z), &z);
                w = w_new;
                let done = val - v_new < 1e-15;
                val = v_new;
                if done {
                    break;
                }
            }
            (tensor.bisectional(&z, &w), z, w)
        })
        .collect();
    let best = runs
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one restart");
    OrthogonalBisectionalMin { value: best.0, z: best.1, w: best.2, restarts: opts.restarts.max(1) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::random_tensor;

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = random_tensor(3, &mut rng);
        let z = random_unit_vector(3, &mut rng);
        for f in [Functional::HolomorphicSectional, Functional::Ricci, Functional::OrthogonalRicci] {
            let obj = Objective { tensor: &t, ricci: t.ricci_matrix(), functional: f, sign: 1.0 };
            let g = obj.gradient(&z);
            let h = 1e-6;
            for p in 0..3 {
                for (dir, comp) in [(C64::new(1.0, 0.0), g[p].re), (C64::new(0.0, 1.0), g[p].im)] {
                    let mut zp = z.clone();
                    let mut zm = z.clone();
                    zp[p] += dir * h;
                    zm[p] -= dir * h;
                    let fd = (obj.value(&zp) - obj.value(&zm)) / (2.0 * h);
                    assert!((fd - comp).abs() < 1e-6, "{f:?} p={p}: {fd} vs {comp}");
                }
            }
        }
    }

    #[test]
    fn ricci_extremes_are_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let t = random_tensor(4, &mut rng);
        let eig = t.ricci_matrix().symmetric_eigen();
        let lo = eig.eigenvalues.min();
        let hi = eig.eigenvalues.max();
        let opts = SphereOptions::default().with_restarts(8);
        let min = extremize_over_sphere(&t, Functional::Ricci, Mode::Min, &opts);
        let max = extremize_over_sphere(&t, Functional::Ricci, Mode::Max, &opts);
        assert!((min.value - lo).abs() < 1e-9, "{} vs {lo}", min.value);
        assert!((max.value - hi).abs() < 1e-9);
    }

    #[test]
    fn complement_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let v = random_unit_vector(4, &mut rng);
        let c = complement_basis(std::slice::from_ref(&v), 4);
        assert_eq!(c.len(), 3);
        for a in &c {
            assert!(hermitian(a, &v).norm() < 1e-13);
            assert!((norm(a) - 1.0).abs() < 1e-13);
        }
    }
}
