//! Sign classification of the curvature components on a sampling grid.

use super::{CurvatureABC, RadialProfile};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Values with `|v| <= SIGN_BAND` are neither positive nor negative.
pub const SIGN_BAND: f64 = 1e-10;
const ROOT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "B")]
    B,
    #[serde(rename = "C")]
    C,
    #[serde(rename = "A+C")]
    APlusC,
    #[serde(rename = "A+B")]
    APlusB,
    #[serde(rename = "C+B")]
    CPlusB,
    #[serde(rename = "A+(m-1)B")]
    Ricci,
}

impl Quantity {
    pub fn eval(self, v: &CurvatureABC, m: usize) -> f64 {
        match self {
            Quantity::A => v.a,
            Quantity::B => v.b,
            Quantity::C => v.c,
            Quantity::APlusC => v.a + v.c,
            Quantity::APlusB => v.a + v.b,
            Quantity::CPlusB => v.c + v.b,
            Quantity::Ricci => v.a + (m as f64 - 1.0) * v.b,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Quantity::A => "A",
            Quantity::B => "B",
            Quantity::C => "C",
            Quantity::APlusC => "A+C",
            Quantity::APlusB => "A+B",
            Quantity::CPlusB => "C+B",
            Quantity::Ricci => "A+(m-1)B",
        }
    }
}

/// Positivity targets for U(m)-invariant metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// Positive bisectional curvature.
    Bisectional,
    /// Positive orthogonal bisectional curvature.
    OrthogonalBisectional,
    /// Positive orthogonal bisectional and positive Ricci curvature.
    OrthogonalBisectionalRicci,
}

impl Target {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "i" | "bisectional+" | "bisectional" => Ok(Target::Bisectional),
            "ii" | "orthogonal-bisectional+" | "orthogonal-bisectional" => {
                Ok(Target::OrthogonalBisectional)
            }
            "iii" | "orthogonal-bisectional+ricci+" | "orthogonal-bisectional-ricci" => {
                Ok(Target::OrthogonalBisectionalRicci)
            }
            _ => Err(Error::UnknownName(format!(
                "target '{s}' (expected bisectional+, orthogonal-bisectional+, orthogonal-bisectional+ricci+)"
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Target::Bisectional => "bisectional+",
            Target::OrthogonalBisectional => "orthogonal-bisectional+",
            Target::OrthogonalBisectionalRicci => "orthogonal-bisectional+ricci+",
        }
    }

    /// Condition set for complex dimension `m`.
    pub fn conditions(self, m: usize) -> Vec<Quantity> {
        use Quantity::*;
        match (self, m) {
            (Target::Bisectional, _) => vec![A, B, C],
            (Target::OrthogonalBisectional, 2) => vec![B, APlusC],
            (Target::OrthogonalBisectional, _) => vec![B, C, APlusC],
            (Target::OrthogonalBisectionalRicci, 2) => vec![B, APlusB, CPlusB, APlusC],
            (Target::OrthogonalBisectionalRicci, _) => vec![B, C, APlusC, Ricci],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignState {
    Positive,
    NegativeSomewhere,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub quantity: Quantity,
    pub state: SignState,
    pub min: f64,
    pub argmin: f64,
    /// Parameter values where the sign changes, refined by bisection.
    pub roots: Vec<f64>,
    /// Samples with value `< -SIGN_BAND`.
    pub negative_samples: usize,
    /// Samples with `|value| <= SIGN_BAND`.
    pub band_samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityReport {
    pub m: usize,
    pub profile: String,
    pub target: Target,
    pub grid: Vec<f64>,
    pub conditions: Vec<ConditionReport>,
    /// Quantities outside the condition set, reported for information.
    pub other: Vec<ConditionReport>,
    pub verdict: Verdict,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl PositivityReport {
    pub fn condition(&self, q: Quantity) -> Option<&ConditionReport> {
        self.conditions.iter().chain(&self.other).find(|c| c.quantity == q)
    }
}

fn sign(v: f64) -> i8 {
    if v > SIGN_BAND {
        1
    } else if v < -SIGN_BAND {
        -1
    } else {
        0
    }
}

fn refine_root(profile: &RadialProfile, q: Quantity, mut lo: f64, mut hi: f64) -> f64 {
    let m = profile.m();
    let val = |p: f64| q.eval(&profile.abc_unchecked(p), m);
    let s_lo = sign(val(lo));
    while hi - lo > ROOT_TOL * hi.max(1.0) * 0.5 {
        let mid = 0.5 * (lo + hi);
        if sign(val(mid)) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn condition_report(
    profile: &RadialProfile,
    q: Quantity,
    params: &[f64],
    values: &[CurvatureABC],
) -> ConditionReport {
    let m = profile.m();
    let qs: Vec<f64> = values.iter().map(|v| q.eval(v, m)).collect();
    let (imin, &min) = qs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");
    let mut roots = Vec::new();
    let mut last: Option<(usize, i8)> = None;
    for (i, &v) in qs.iter().enumerate() {
        let s = sign(v);
        if s == 0 {
            continue;
        }
        if let Some((j, sj)) = last {
            if sj != s {
                roots.push(refine_root(profile, q, params[j], params[i]));
            }
        }
        last = Some((i, s));
    }
    let negative_samples = qs.iter().filter(|&&v| sign(v) < 0).count();
    let band_samples = qs.iter().filter(|&&v| sign(v) == 0).count();
    let state = if negative_samples > 0 {
        SignState::NegativeSomewhere
    } else if band_samples > 0 {
        SignState::Indeterminate
    } else {
        SignState::Positive
    };
    ConditionReport { quantity: q, state, min, argmin: params[imin], roots, negative_samples, band_samples }
}

/// Classify on the profile's own tabulation nodes.
pub fn classify(profile: &RadialProfile, target: Target) -> Result<PositivityReport> {
    let nodes = profile.nodes().to_vec();
    classify_at(profile, target, nodes)
}

/// Classify on a log grid of `n` points in `[lo, hi]`.
pub fn classify_range(
    profile: &RadialProfile,
    target: Target,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<PositivityReport> {
    let g = super::Grid::new(lo, hi, n)?;
    if hi > profile.grid().max * (1.0 + 1e-12) {
        return Err(Error::OutOfRange { param: hi, min: 0.0, max: profile.grid().max });
    }
    classify_at(profile, target, g.nodes())
}

fn classify_at(profile: &RadialProfile, target: Target, params: Vec<f64>) -> Result<PositivityReport> {
    let m = profile.m();
    if m < 2 {
        return Err(Error::UnsupportedDimension(m));
    }
    let values = profile.sample_at(&params);
    let wanted = target.conditions(m);
    let all = [
        Quantity::A,
        Quantity::B,
        Quantity::C,
        Quantity::APlusC,
        Quantity::APlusB,
        Quantity::CPlusB,
        Quantity::Ricci,
    ];
    let conditions: Vec<ConditionReport> =
        wanted.iter().map(|&q| condition_report(profile, q, &params, &values)).collect();
    let other: Vec<ConditionReport> = all
        .iter()
        .filter(|q| !wanted.contains(q))
        .map(|&q| condition_report(profile, q, &params, &values))
        .collect();
    let mut failures = Vec::new();
    for c in &conditions {
        match c.state {
            SignState::Positive => {}
            SignState::Indeterminate => {
                failures.push(format!("{} not strictly positive", c.quantity.label()))
            }
            SignState::NegativeSomewhere => failures.push(format!(
                "{} not strictly positive (min {:.6e} at {:.6e})",
                c.quantity.label(),
                c.min,
                c.argmin
            )),
        }
    }
    let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
    let mut notes = Vec::new();
    if m == 2 && target != Target::Bisectional {
        notes.push(
            "m = 2: amended condition set; only sufficiency of these conditions is established"
                .to_string(),
        );
    }
    for c in &other {
        if c.state == SignState::NegativeSomewhere {
            let at = match c.roots.as_slice() {
                [] => String::new(),
                rs => format!(
                    ", sign changes at {}",
                    rs.iter().map(|r| format!("{r:.9}")).collect::<Vec<_>>().join(", ")
                ),
            };
            notes.push(format!("{} < 0 somewhere{at}", c.quantity.label()));
        }
    }
    Ok(PositivityReport {
        m,
        profile: profile.name().to_string(),
        target,
        grid: params,
        conditions,
        other,
        verdict,
        failures,
        notes,
    })
}
