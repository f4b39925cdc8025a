//! Randomised identity suite over algebraic curvature tensors.

use crate::error::Result;
use crate::tensor::{
    extremize_over_sphere, random_skew, random_tensor, random_unit_vector, random_unitary, skew_block_form,
    skew_normal_form, Functional, Mode, SphereOptions, SubspaceSpec, TensorJson, UnitaryFrameCurvature, C64,
};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const BERGER_TOL: f64 = 1e-10;
pub const POLARIZATION_TOL: f64 = 1e-10;
pub const SCALAR_INVARIANCE_TOL: f64 = 1e-10;
pub const SCALAR_BOUND_SLACK: f64 = 1e-6;
pub const MAXIMIZER_SLACK: f64 = 1e-8;
pub const SKEW_TOL: f64 = 1e-9;
/// Allowed distance of a closed form from its Monte-Carlo estimate, in standard errors.
pub const MC_SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub count: usize,
    pub seed: u64,
    /// Monte-Carlo samples per tensor; 0 skips the sampling checks.
    pub mc_samples: usize,
    pub sphere: SphereOptions,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { count: 100, seed: 42, mc_samples: 100_000, sphere: SphereOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    pub holds: bool,
}

impl Check {
    fn at_most(name: &'static str, value: f64, bound: f64) -> Self {
        Self { name, value, bound, holds: value <= bound }
    }
}

/// All checks run on one random tensor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceReport {
    pub index: usize,
    /// Seed that regenerates this instance alone.
    pub seed: u64,
    pub m: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub count: usize,
    pub seed: u64,
    pub mc_samples: usize,
    pub instances: Vec<InstanceReport>,
    /// Seeds of failing instances.
    pub failing_seeds: Vec<u64>,
    pub passed: bool,
}

impl SuiteReport {
    /// Largest value of the named check over all instances.
    pub fn worst(&self, name: &str) -> Option<f64> {
        self.instances.iter().flat_map(|i| &i.checks).filter(|c| c.name == name).map(|c| c.value).reduce(f64::max)
    }

    /// Whether every instance passed the named check.
    pub fn all(&self, name: &str) -> bool {
        self.instances.iter().flat_map(|i| &i.checks).filter(|c| c.name == name).all(|c| c.holds)
    }
}

/// Seed of instance `i`; the instance is reproducible from it alone.
pub fn instance_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

fn random_c64<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Orthonormal `k`-frame spanned by the first columns of a random unitary.
fn random_subspace<R: Rng>(m: usize, k: usize, rng: &mut R) -> SubspaceSpec {
    let u = random_unitary(m, rng);
    SubspaceSpec::from_columns(&u, k).expect("unitary columns are orthonormal")
}

/// Mean and standard error of `Ric⊥` over the unit sphere of `sigma`.
fn sampled_ric_perp<R: Rng>(t: &UnitaryFrameCurvature, sigma: &SubspaceSpec, n: usize, rng: &mut R) -> (f64, f64) {
    let k = sigma.dim();
    let m = sigma.ambient_dim();
    let (mut s1, mut s2) = (0.0, 0.0);
    for _ in 0..n {
        let c = random_unit_vector(k, rng);
        let mut z = vec![C64::new(0.0, 0.0); m];
        for (ci, e) in c.iter().zip(sigma.vectors()) {
            for (zi, ei) in z.iter_mut().zip(e) {
                *zi += ci * ei;
            }
        }
        let v = t.ricci_form(&z) - t.quartic(&z);
        s1 += v;
        s2 += v * v;
    }
    let nf = n as f64;
    let mean = s1 / nf;
    let var = (s2 / nf - mean * mean).max(0.0) * nf / (nf - 1.0);
    (mean, (var / nf).sqrt())
}

/// Paired singular values `σ₁ ≥ σ₃ ≥ …` of `a`, one per conjugate pair.
fn paired_singular_values(a: &DMatrix<C64>) -> Vec<f64> {
    let mut sv: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv.chunks(2).filter(|c| c.len() == 2).map(|c| 0.5 * (c[0] + c[1])).collect()
}

fn skew_checks<R: Rng>(rng: &mut R, checks: &mut Vec<Check>) {
    let k = 6;
    let a = random_skew(k, rng);
    let Ok(nf) = skew_normal_form(&a) else {
        checks.push(Check { name: "skew_reconstruction", value: f64::INFINITY, bound: SKEW_TOL, holds: false });
        return;
    };
    let recon = (nf.u.transpose() * &a * &nf.u - skew_block_form(&nf.values, k)).norm();
    checks.push(Check::at_most("skew_reconstruction", recon, SKEW_TOL));
    let unitarity = (nf.u.adjoint() * &nf.u - DMatrix::identity(k, k)).norm();
    checks.push(Check::at_most("skew_unitarity", unitarity, SKEW_TOL));
    let sv = paired_singular_values(&a);
    let dev = nf.values.iter().zip(&sv).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    checks.push(Check::at_most("skew_singular_values", dev, SKEW_TOL));
}

fn instance(index: usize, seed: u64, opts: &SuiteOptions) -> Result<InstanceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 2 + index % 3;
    let mut t = random_tensor(m, &mut rng);
    if index % 2 == 1 {
        // shift every other tensor towards a space form so that the
        // scalar lower bound is exercised with min Ric⊥ ≥ 0
        let min_perp = extremize_over_sphere(&t, Functional::OrthogonalRicci, Mode::Min, &opts.sphere).value;
        let lambda = (-min_perp).max(0.0) / (m as f64 - 1.0) + 0.1;
        let space = UnitaryFrameCurvature::space_form(m, lambda)?;
        let sum = t.table().iter().zip(space.table()).map(|(a, b)| a + b).collect();
        t = UnitaryFrameCurvature::from_table(m, sum)?;
    }
    Ok(check_tensor(index, seed, &t, opts, &mut rng))
}

/// Run the suite's tensor checks on `t`, drawing auxiliary randomness from `rng`.
pub fn check_tensor<R: Rng>(
    index: usize,
    seed: u64,
    t: &UnitaryFrameCurvature,
    opts: &SuiteOptions,
    rng: &mut R,
) -> InstanceReport {
    let m = t.dim();
    let mf = m as f64;
    let mut checks = Vec::new();

    checks.push(Check::at_most("berger", t.check_berger().residual, BERGER_TOL));

    let z: Vec<C64> = (0..m).map(|_| random_c64(rng)).collect();
    let w: Vec<C64> = (0..m).map(|_| random_c64(rng)).collect();
    let (a, b) = (random_c64(rng), random_c64(rng));
    let pol = t.polarization_residual(&z, &w, a, b).unwrap_or(f64::INFINITY);
    checks.push(Check::at_most("polarization", pol, POLARIZATION_TOL));

    let u = random_unitary(m, rng);
    let rotated = t.change_frame(&u).map(|r| (r.scalar() - t.scalar()).abs()).unwrap_or(f64::INFINITY);
    checks.push(Check::at_most("scalar_invariance", rotated, SCALAR_INVARIANCE_TOL));

    // S ≥ 2m(m+1)/(m−1) · min Ric⊥ whenever the minimum is non-negative
    let sphere = opts.sphere.with_seed(rng.random());
    let min_perp = extremize_over_sphere(t, Functional::OrthogonalRicci, Mode::Min, &sphere).value;
    let lower = 2.0 * mf * (mf + 1.0) / (mf - 1.0) * min_perp;
    let deficit = lower - t.scalar();
    // vacuous when the minimum is negative
    let holds = min_perp < 0.0 || deficit <= SCALAR_BOUND_SLACK;
    checks.push(Check { name: "scalar_lower_bound", value: deficit, bound: SCALAR_BOUND_SLACK, holds });

    // at a maximiser Z of H: H(Z) ≥ 2/(m−1) · Ric⊥(Z)
    let hmax = extremize_over_sphere(t, Functional::HolomorphicSectional, Mode::Max, &sphere);
    let zr = &hmax.direction;
    let perp = t.ricci_form(zr) - t.quartic(zr);
    checks.push(Check::at_most("maximizer_inequality", 2.0 / (mf - 1.0) * perp - hmax.value, MAXIMIZER_SLACK));

    if opts.mc_samples > 1 {
        let k = 1 + rng.random_range(1..m);
        let sigma = random_subspace(m, k, rng);
        let closed = t.ric_perp_k(&sigma).unwrap_or(f64::NAN);
        let (mean, se) = sampled_ric_perp(t, &sigma, opts.mc_samples, rng);
        // constant Ric⊥ on sigma gives a zero sample error
        let floor = 1e-12 * mean.abs().max(1.0);
        let z = ((closed - mean) / se.max(floor)).abs();
        checks.push(Check::at_most("ric_perp_k_sigmas", z, MC_SIGMAS));
    }

    skew_checks(rng, &mut checks);

    let passed = checks.iter().all(|c| c.holds);
    InstanceReport { index, seed, m, checks, passed }
}

/// `count` random tensors with `m` cycling through 2, 3, 4.
pub fn identity_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let instances: Vec<InstanceReport> = (0..opts.count)
        .into_par_iter()
        .map(|i| instance(i, instance_seed(opts.seed, i), opts))
        .collect::<Result<_>>()?;
    let failing_seeds: Vec<u64> = instances.iter().filter(|i| !i.passed).map(|i| i.seed).collect();
    Ok(SuiteReport {
        count: opts.count,
        seed: opts.seed,
        mc_samples: opts.mc_samples,
        passed: failing_seeds.is_empty(),
        failing_seeds,
        instances,
    })
}

/// Symmetry report for a tensor file; a non-empty violation list fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureReport {
    pub m: usize,
    pub violations: Vec<crate::tensor::SymmetryViolation>,
    pub instance: Option<InstanceReport>,
    pub passed: bool,
}

pub fn check_fixture(json: &TensorJson, opts: &SuiteOptions) -> Result<FixtureReport> {
    let (table, violations) = json.load_report()?;
    let instance = if violations.is_empty() {
        let t = UnitaryFrameCurvature::from_table(json.m, table)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        Some(check_tensor(0, opts.seed, &t, opts, &mut rng))
    } else {
        None
    };
    let passed = violations.is_empty() && instance.as_ref().is_some_and(|i| i.passed);
    Ok(FixtureReport { m: json.m, violations, instance, passed })
}
