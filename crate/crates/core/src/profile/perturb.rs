//! Localized perturbation `ξ̄ = ξ − α h(R) C(R) φ(r − R)` of a positive
//! bisectional seed profile.

use super::{Func, Grid, RadialProfile, Representation};
use crate::error::{Error, Result};
use serde::Serialize;
use std::sync::Arc;

/// Smooth bump `φ(x) = c · b((x − x₀)/w)`, `b(y) = exp(1/(y² − 1))` on `|y| < 1`.
///
/// The contract checked by [`Cutoff::check`]: `φ ≥ 0`, `supp φ ⊂ [−1, 1]`,
/// `φ'(0) = 1`, `|φ'| ≤ 1`. The amplitude is fixed by `φ'(0) = 1`; the
/// bound `|φ'| ≤ 1` then holds exactly when `0` is the steepest point of
/// the rising flank, i.e. `x₀ = w·3^{-1/4}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cutoff {
    pub width: f64,
    pub center: f64,
    pub amplitude: f64,
}

fn bump(y: f64) -> f64 {
    if y.abs() >= 1.0 {
        0.0
    } else {
        (1.0 / (y * y - 1.0)).exp()
    }
}

fn bump_prime(y: f64) -> f64 {
    if y.abs() >= 1.0 {
        0.0
    } else {
        let d = y * y - 1.0;
        bump(y) * (-2.0 * y / (d * d))
    }
}

impl Default for Cutoff {
    fn default() -> Self {
        let w = 0.55;
        Self::new(w, w * 3f64.powf(-0.25)).expect("default cutoff is valid")
    }
}

impl Cutoff {
    /// Bump of half-width `width` centred at `center`, scaled so `φ'(0) = 1`.
    pub fn new(width: f64, center: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::InvalidParameter(format!("cutoff width must be positive, got {width}")));
        }
        let slope = bump_prime(-center / width);
        if !(slope > 0.0) {
            return Err(Error::InvalidParameter(
                "cutoff must be increasing at 0 (need 0 < center < width)".into(),
            ));
        }
        let c = Self { width, center, amplitude: width / slope };
        c.check()?;
        Ok(c)
    }

    pub fn phi(&self, x: f64) -> f64 {
        self.amplitude * bump((x - self.center) / self.width)
    }

    pub fn phi_prime(&self, x: f64) -> f64 {
        self.amplitude / self.width * bump_prime((x - self.center) / self.width)
    }

    /// Upper bound `c₀` of `φ`.
    pub fn sup(&self) -> f64 {
        self.amplitude * (-1f64).exp()
    }

    pub fn check(&self) -> Result<()> {
        let lo = self.center - self.width;
        let hi = self.center + self.width;
        if lo < -1.0 - 1e-15 || hi > 1.0 + 1e-15 {
            return Err(Error::InvalidParameter(format!(
                "cutoff support [{lo:.6}, {hi:.6}] not inside [-1, 1]"
            )));
        }
        let d0 = self.phi_prime(0.0);
        if (d0 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("cutoff has phi'(0) = {d0}")));
        }
        let n = 20_000;
        let worst = (0..=n)
            .map(|i| self.phi_prime(-1.0 + 2.0 * i as f64 / n as f64).abs())
            .fold(0.0, f64::max);
        if worst > 1.0 + 1e-9 {
            return Err(Error::InvalidParameter(format!("cutoff has |phi'| up to {worst:.9}")));
        }
        Ok(())
    }
}

/// Perturbed profile. `strength = 0` returns a profile with `ξ̄ = ξ`.
pub fn ht_perturb(seed: &RadialProfile, r: f64, strength: f64, cutoff: &Cutoff) -> Result<RadialProfile> {
    if seed.representation() != Representation::Xi {
        return Err(Error::InvalidProfile("perturbation needs a xi-form seed".into()));
    }
    if !(r >= 3.0) {
        return Err(Error::InvalidParameter(format!("perturbation centre must be >= 3, got {r}")));
    }
    if !(0.0..1.0).contains(&strength) {
        return Err(Error::InvalidParameter(format!("strength must lie in [0, 1), got {strength}")));
    }
    cutoff.check()?;
    for &x in seed.nodes() {
        let xi = seed.xi(x)?;
        let dxi = seed.xi_prime(x)?;
        if !(xi > 0.0 && xi < 1.0 && dxi > 0.0) {
            return Err(Error::InvalidProfile(format!(
                "seed needs xi' > 0 and 0 < xi < 1 (violated at r = {x:.6e})"
            )));
        }
    }
    let table = seed.xi_table()?;
    let kappa = strength * seed.h(r)? * seed.abc_at(r)?.c;
    let (xi0, dxi0) = (table.xi.clone(), table.dxi.clone());
    let cut = *cutoff;
    let xi: Func = Arc::new(move |s| xi0(s) - kappa * cut.phi(s - r));
    let dxi: Func = Arc::new(move |s| dxi0(s) - kappa * cut.phi_prime(s - r));
    // resolve the bump with a fine linear mesh on [R-1, R+1]
    let extra: Vec<f64> = (0..=400).map(|i| r - 1.0 + i as f64 * 0.005).collect();
    let grid = Grid { max: seed.grid().max.max(r + 2.0), ..seed.grid() };
    let p = RadialProfile::from_xi_with_nodes(seed.m(), xi, Some(dxi), grid, &extra)?;
    Ok(p.with_name(format!("ht-perturb({}, R={r})", seed.name())))
}

/// Numerical status of the four conclusions for a perturbed profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HtConclusions {
    pub r: f64,
    pub strength: f64,
    /// min of `Ā + C̄` on `[R−1, R+1]`.
    pub a_plus_c_window_min: f64,
    /// min of `B̄` over all sampled parameters.
    pub b_min: f64,
    /// min of `C̄` over all sampled parameters.
    pub c_min: f64,
    /// `Ā(R) + (m−1) B̄(R)`.
    pub ricci_at_r: f64,
    pub holds: [bool; 4],
}

impl HtConclusions {
    pub fn all(&self) -> bool {
        self.holds.iter().all(|&b| b)
    }

    pub fn evaluate(perturbed: &RadialProfile, r: f64, strength: f64) -> Self {
        let m = perturbed.m();
        let window: Vec<f64> = (0..=800).map(|i| r - 1.0 + i as f64 * 0.0025).collect();
        let wv = perturbed.sample_at(&window);
        let nv = perturbed.sample();
        let a_plus_c_window_min = wv.iter().map(|v| v.a + v.c).fold(f64::INFINITY, f64::min);
        let b_min = nv.iter().chain(&wv).map(|v| v.b).fold(f64::INFINITY, f64::min);
        let c_min = nv.iter().chain(&wv).map(|v| v.c).fold(f64::INFINITY, f64::min);
        let at = perturbed.abc_unchecked(r);
        let ricci_at_r = at.a + (m as f64 - 1.0) * at.b;
        let band = super::SIGN_BAND;
        let holds = [a_plus_c_window_min > band, b_min > band, c_min > band, ricci_at_r < -band];
        Self { r, strength, a_plus_c_window_min, b_min, c_min, ricci_at_r, holds }
    }
}

#[derive(Debug, Clone)]
pub struct HtSearch {
    pub profile: RadialProfile,
    pub conclusions: HtConclusions,
    /// Every centre tried, with `Ā(R) + (m−1)B̄(R)` there.
    pub tried: Vec<(f64, f64)>,
}

/// Scan `R = r_start, 1.25 r_start, …` until `Ā(R) + (m−1)B̄(R) < 0`, then
/// evaluate all four conclusions at that `R`.
pub fn ht_search(
    seed: &RadialProfile,
    strength: f64,
    cutoff: &Cutoff,
    r_start: f64,
    r_limit: f64,
) -> Result<HtSearch> {
    let mut tried = Vec::new();
    let mut r = r_start.max(3.0);
    while r <= r_limit {
        let p = ht_perturb(seed, r, strength, cutoff)?;
        let c = HtConclusions::evaluate(&p, r, strength);
        tried.push((r, c.ricci_at_r));
        if c.holds[3] {
            return Ok(HtSearch { profile: p, conclusions: c, tried });
        }
        r *= 1.25;
    }
    Err(Error::Bracket(format!(
        "no centre in [{r_start}, {r_limit}] makes A(R) + (m-1)B(R) negative"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::ht_seed;

    #[test]
    fn default_cutoff_contract() {
        let c = Cutoff::default();
        c.check().unwrap();
        assert!((c.phi_prime(0.0) - 1.0).abs() < 1e-14);
        assert_eq!(c.phi(-1.0), 0.0);
        assert_eq!(c.phi(1.0), 0.0);
        assert!((-100..=100).all(|i| c.phi(i as f64 / 100.0) >= 0.0));
    }

    #[test]
    fn off_centre_bump_is_rejected() {
        // steepest point not at 0: |phi'| exceeds 1 somewhere
        assert!(Cutoff::new(0.5, 0.2).is_err());
        // support leaves [-1, 1]
        assert!(Cutoff::new(0.9, 0.9 * 3f64.powf(-0.25)).is_err());
    }

    #[test]
    fn zero_strength_is_identity() {
        let g = Grid::new(1e-4, 50.0, 200).unwrap();
        let seed = ht_seed(3, 0.5, g).unwrap();
        let p = ht_perturb(&seed, 5.0, 0.0, &Cutoff::default()).unwrap();
        for &r in &[0.1, 4.3, 5.0, 5.9, 20.0] {
            assert_eq!(p.xi(r).unwrap(), seed.xi(r).unwrap());
            let (a, b) = (p.abc_at(r).unwrap(), seed.abc_at(r).unwrap());
            assert!((a.b - b.b).abs() < 1e-12 && (a.c - b.c).abs() < 1e-12);
        }
    }
}
