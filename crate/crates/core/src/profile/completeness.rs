//! Completeness diagnostics for radial profiles.

use super::{RadialProfile, Representation};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompletenessVerdict {
    SufficientConditionMet,
    DivergingTrend,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletenessReport {
    /// `0 < ξ < 1` at every node; `None` for profiles without a `ξ` form.
    pub xi_in_unit_interval: Option<bool>,
    /// `(R, radial length up to R)` at decades of the native parameter.
    pub partial_lengths: Vec<(f64, f64)>,
    /// Least-squares slope of `log length` against `log R` over the last
    /// two decades.
    pub growth_exponent: f64,
    pub verdict: CompletenessVerdict,
}

/// Radial-length growth below this exponent is reported as inconclusive.
const GROWTH_FLOOR: f64 = 0.05;

pub fn completeness_check(profile: &RadialProfile) -> CompletenessReport {
    let xi_in_unit_interval = match profile.representation() {
        Representation::Xi => Some(profile.nodes().iter().all(|&r| {
            let x = profile.xi(r).expect("xi form");
            x > 0.0 && x < 1.0
        })),
        Representation::Alpha => None,
    };
    let g = profile.grid();
    let mut partial_lengths = Vec::new();
    let mut e = g.min.log10().ceil() as i32;
    while 10f64.powi(e) <= g.max * (1.0 + 1e-12) {
        let r = 10f64.powi(e);
        partial_lengths.push((r, profile.arc_length(r)));
        e += 1;
    }
    if partial_lengths.last().map(|p| p.0) != Some(g.max) {
        partial_lengths.push((g.max, profile.arc_length(g.max)));
    }
    let tail: Vec<(f64, f64)> = partial_lengths
        .iter()
        .filter(|p| p.0 >= g.max / 1e2 * (1.0 - 1e-12))
        .map(|&(r, l)| (r.ln(), l.ln()))
        .collect();
    let growth_exponent = if tail.len() >= 2 {
        let n = tail.len() as f64;
        let mx = tail.iter().map(|p| p.0).sum::<f64>() / n;
        let my = tail.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = tail.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = tail.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    } else {
        0.0
    };
    let verdict = if xi_in_unit_interval == Some(true) {
        CompletenessVerdict::SufficientConditionMet
    } else if growth_exponent > GROWTH_FLOOR {
        CompletenessVerdict::DivergingTrend
    } else {
        CompletenessVerdict::Inconclusive
    };
    CompletenessReport { xi_in_unit_interval, partial_lengths, growth_exponent, verdict }
}
