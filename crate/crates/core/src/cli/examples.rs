//! Verification of the named example constructions.

use crate::error::{Error, Result};
use crate::profile::{
    classify_range, cubic_quadratics, family1, family1_condition, ht_search, ht_seed, a6_example, Cutoff, Grid,
    HtConclusions, Quantity, QuadraticSign, RadialProfile, Target, Verdict,
};
use crate::tensor::{extremize_over_sphere, orthogonal_bisectional_min, Functional, Mode, SphereOptions};
use serde::Serialize;
use std::collections::BTreeMap;

pub const EXAMPLE_NAMES: [&str; 4] = ["family1", "cubic", "sec8-a6", "ht-perturb"];

/// Tolerance on located roots.
pub const ROOT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub name: String,
    pub value: f64,
    pub expected: String,
    pub holds: bool,
}

fn criterion(name: &str, value: f64, expected: &str, holds: bool) -> Criterion {
    Criterion { name: name.into(), value, expected: expected.into(), holds }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleReport {
    pub example: String,
    pub m: usize,
    pub params: BTreeMap<String, f64>,
    pub criteria: Vec<Criterion>,
    pub verdict: Verdict,
}

fn report(example: &str, m: usize, params: &[(&str, f64)], criteria: Vec<Criterion>) -> ExampleReport {
    let verdict = if criteria.iter().all(|c| c.holds) { Verdict::Pass } else { Verdict::Fail };
    ExampleReport {
        example: example.into(),
        m,
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        criteria,
        verdict,
    }
}

/// Parameters accepted by [`verify_example`]; absent values take the
/// documented defaults of each example.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ExampleParams {
    pub a: Option<f64>,
    pub lambda: Option<f64>,
    pub m: Option<usize>,
    pub strength: Option<f64>,
    /// Seed of the sphere extremizers.
    pub seed: u64,
}

pub fn verify_example(name: &str, p: &ExampleParams) -> Result<ExampleReport> {
    match name {
        "family1" => verify_family1(p.a.unwrap_or(0.75), p.lambda.unwrap_or(1.0), p.m.unwrap_or(3), p.seed),
        "cubic" => verify_cubic(p.a.unwrap_or(0.83)),
        "sec8-a6" => verify_a6(p.lambda.unwrap_or(10.0), p.m.unwrap_or(2)),
        "ht-perturb" => verify_ht(p.a.unwrap_or(0.5), p.strength.unwrap_or(0.5), p.m.unwrap_or(3)),
        _ => Err(Error::UnknownName(format!("example '{name}' (known: {})", EXAMPLE_NAMES.join(", ")))),
    }
}

/// Classification on `(0, 50]`, the sign change of `A` and the pointwise
/// sign pattern of `H` and orthogonal bisectional curvature past it.
pub fn verify_family1(a: f64, lambda: f64, m: usize, seed: u64) -> Result<ExampleReport> {
    let profile = family1(m, a, lambda, Grid::default())?;
    let cond = family1_condition(a, lambda);
    let mut c = vec![criterion("lambda_condition", cond.rhs - cond.lhs, "> 0", cond.holds)];

    let cls = classify_range(&profile, Target::OrthogonalBisectionalRicci, 1e-6, 50.0, 4096)?;
    c.push(criterion(
        "classify_orthogonal_bisectional_ricci",
        cls.conditions.iter().map(|x| x.min).fold(f64::INFINITY, f64::min),
        "pass on (0, 50]",
        cls.verdict == Verdict::Pass,
    ));
    let roots = cls.condition(Quantity::A).map(|r| r.roots.clone()).unwrap_or_default();
    let err = roots.iter().map(|r| (r - cond.t0).abs()).fold(f64::INFINITY, f64::min);
    c.push(criterion("root_of_A_error", err, &format!("root at {:.9} within {ROOT_TOL:e}", cond.t0), err <= ROOT_TOL));

    let t = if cond.t0 < 3.0 { 3.0 } else { 1.25 * cond.t0 };
    let tensor = profile.tensor_at(t)?;
    let opts = SphereOptions::default().with_seed(seed);
    let hmin = extremize_over_sphere(&tensor, Functional::HolomorphicSectional, Mode::Min, &opts).value;
    c.push(criterion("min_H_past_root", hmin, &format!("< 0 at t = {t}"), hmin < 0.0));
    let ob = orthogonal_bisectional_min(&tensor, &opts).value;
    c.push(criterion("min_orthogonal_bisectional_past_root", ob, &format!("> 0 at t = {t}"), ob > 0.0));
    Ok(report("family1", m, &[("a", a), ("lambda", lambda)], c))
}

/// Expected sign of each quadratic: positive iff the listed inequality on `a²` holds.
pub fn cubic_expected_positive(a: f64) -> [bool; 5] {
    let s = a * a;
    [s < 1.0, s < 0.75, s < 2.0 / 3.0, s < 45.0 / 64.0, s < 7.0 / 8.0]
}

pub fn verify_cubic(a: f64) -> Result<ExampleReport> {
    let q = cubic_quadratics(a)?;
    let expected = cubic_expected_positive(a);
    let c = q
        .iter()
        .zip(expected)
        .map(|(x, e)| {
            let positive = x.sign == QuadraticSign::Positive;
            criterion(
                x.label,
                x.discriminant,
                if e { "positive on (0, inf)" } else { "not positive on (0, inf)" },
                positive == e,
            )
        })
        .collect();
    Ok(report("cubic", 3, &[("a", a)], c))
}

/// `B ~ t^{-13}` leaves the sign band soon after `t = 4`.
pub const A6_GRID: Grid = Grid { min: 1e-6, max: 4.0, n: 2048 };

pub fn verify_a6(lambda: f64, m: usize) -> Result<ExampleReport> {
    let profile = a6_example(m, lambda, A6_GRID)?;
    let t0 = (3.0f64 / 11.0).sqrt();
    let rows = profile.sample();
    let min_of = |q: Quantity| rows.iter().map(|v| q.eval(v, m)).fold(f64::INFINITY, f64::min);
    let band = crate::profile::SIGN_BAND;
    let mut c = Vec::new();
    for q in [Quantity::B, Quantity::C, Quantity::APlusC] {
        let v = min_of(q);
        c.push(criterion(&format!("min_{}", q.label()), v, "> 0", v > band));
    }
    let v = min_of(Quantity::APlusB);
    c.push(criterion("min_A+B", v, "< 0 somewhere", v < -band));
    // A changes sign exactly once, at t0
    let wrong = rows
        .iter()
        .filter(|v| (v.param - t0).abs() > 1e-9 * t0)
        .filter(|v| if v.param > t0 { v.a >= 0.0 } else { v.a <= 0.0 })
        .count();
    c.push(criterion("A_sign_mismatches", wrong as f64, &format!("0 (A < 0 exactly for t > {t0:.9})"), wrong == 0));
    let mut worst: f64 = f64::NEG_INFINITY;
    for v in &rows {
        let t = v.param;
        let al = profile.alpha(t)?;
        worst = worst.max((t * profile.alpha_prime(t)? - 2.0 * al) / al.abs().max(f64::MIN_POSITIVE));
    }
    c.push(criterion("max_(t alpha' - 2 alpha)/alpha", worst, "<= 0", worst <= 1e-12));
    let at = profile.alpha(t0)?;
    c.push(criterion("alpha(t0)", at, "> 6", at > 6.0));
    Ok(report("sec8-a6", m, &[("lambda", lambda)], c))
}

/// `r h / ∫₀^r h` for the seed, which tends to `1 − a`.
pub fn seed_ratio(seed: &RadialProfile, r: f64) -> Result<f64> {
    Ok(r * seed.h(r)? / seed.int_h(r)?)
}

pub fn verify_ht(a: f64, strength: f64, m: usize) -> Result<ExampleReport> {
    let seed = ht_seed(m, a, Grid::default())?;
    let found = ht_search(&seed, strength, &Cutoff::default(), 3.0, 5e3)?;
    let HtConclusions { r, a_plus_c_window_min, b_min, c_min, ricci_at_r, holds, .. } = found.conclusions;
    let mut c = vec![
        criterion("centre_R", r, ">= 3", r >= 3.0),
        criterion("min_A+C_on_window", a_plus_c_window_min, "> 0 on [R-1, R+1]", holds[0]),
        criterion("min_B", b_min, "> 0", holds[1]),
        criterion("min_C", c_min, "> 0", holds[2]),
        criterion("A+(m-1)B_at_R", ricci_at_r, "< 0", holds[3]),
    ];
    let ratio = seed_ratio(&seed, 1e4)?;
    c.push(criterion("seed_rh_over_int_h_at_1e4", ratio, &format!("{} within 1e-2", 1.0 - a), (ratio - (1.0 - a)).abs() <= 1e-2));
    Ok(report("ht-perturb", m, &[("a", a), ("strength", strength)], c))
}
