//! Adaptive Dormand–Prince 5(4) integration.
//!
//! Off-step values are produced by one extra Runge–Kutta step from the
//! preceding accepted point, which keeps the full fifth-order accuracy
//! instead of relying on a lower-order interpolant.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rtol: 1e-11, atol: 1e-11, max_steps: 200_000 }
    }
}

/// One Dormand–Prince step; returns the new state and the error estimate.
pub fn dp_step<F>(f: &F, t: f64, y: &[f64], h: f64) -> (Vec<f64>, Vec<f64>)
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let n = y.len();
    let mut k = vec![vec![0.0; n]; 7];
    let mut tmp = vec![0.0; n];
    f(t, y, &mut k[0]);
    for s in 1..7 {
        for i in 0..n {
            let mut acc = y[i];
            for (j, kj) in k.iter().enumerate().take(s) {
                acc += h * A[s][j] * kj[i];
            }
            tmp[i] = acc;
        }
        let (_, tail) = k.split_at_mut(s);
        f(t + C[s] * h, &tmp, &mut tail[0]);
    }
    // stage 7 is evaluated at the fifth-order solution
    let y_new = tmp;
    let err = (0..n).map(|i| h * (0..7).map(|s| E[s] * k[s][i]).sum::<f64>()).collect();
    (y_new, err)
}

/// Accepted integration points.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub y: Vec<Vec<f64>>,
}

impl Trajectory {
    /// State at `t` within the integrated range.
    pub fn eval<F>(&self, f: &F, t: f64) -> Vec<f64>
    where
        F: Fn(f64, &[f64], &mut [f64]),
    {
        let i = self.t.partition_point(|&s| s <= t).saturating_sub(1);
        let t0 = self.t[i];
        if t == t0 {
            return self.y[i].clone();
        }
        dp_step(f, t0, &self.y[i], t - t0).0
    }

    pub fn end(&self) -> (f64, &[f64]) {
        let n = self.t.len() - 1;
        (self.t[n], &self.y[n])
    }
}

/// Integrate `y' = f(t, y)` from `t0` to `t_end`, landing exactly on every
/// point of `stops`. A sign change of any component listed in `monitor`
/// aborts with [`Error::ConjugatePoint`] at its bisected zero.
pub fn integrate<F>(
    f: &F,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    stops: &[f64],
    monitor: &[usize],
    opts: &OdeOptions,
) -> Result<Trajectory>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let mut targets: Vec<f64> = stops.iter().copied().filter(|&s| s > t0 && s < t_end).collect();
    targets.push(t_end);
    targets.sort_by(f64::total_cmp);
    targets.dedup();
    let mut traj = Trajectory { t: vec![t0], y: vec![y0.to_vec()] };
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut h = ((t_end - t0) * 1e-3).max(1e-6).min(t_end - t0);
    let mut steps = 0;
    for &target in &targets {
        while t < target {
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::InvalidParameter(format!(
                    "ODE step limit reached at t = {t:.6e}"
                )));
            }
            let last = h >= target - t;
            let h_try = if last { target - t } else { h };
            let (y_new, err) = dp_step(f, t, &y, h_try);
            let norm = (err
                .iter()
                .zip(y.iter().zip(&y_new))
                .map(|(e, (a, b))| {
                    let sc = opts.atol + opts.rtol * a.abs().max(b.abs());
                    (e / sc).powi(2)
                })
                .sum::<f64>()
                / y.len() as f64)
                .sqrt();
            if !norm.is_finite() {
                h = 0.25 * h_try;
                continue;
            }
            if norm <= 1.0 {
                for &j in monitor {
                    if y[j] * y_new[j] < 0.0 || (y_new[j] == 0.0 && y[j] != 0.0) {
                        let at = bisect_zero(f, t, &y, h_try, j);
                        return Err(Error::ConjugatePoint { at, requested: t_end });
                    }
                }
                t = if last { target } else { t + h_try };
                y = y_new;
                traj.t.push(t);
                traj.y.push(y.clone());
            }
            let factor = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
            if norm <= 1.0 && last {
                // keep the step size from before the truncated landing step
                h = h.max(h_try * factor).min(t_end - t0);
            } else {
                h = h_try * factor;
            }
        }
    }
    Ok(traj)
}

fn bisect_zero<F>(f: &F, t: f64, y: &[f64], h: f64, j: usize) -> f64
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let (mut lo, mut hi) = (0.0, h);
    let s0 = y[j].signum();
    while hi - lo > 1e-11 {
        let mid = 0.5 * (lo + hi);
        let v = dp_step(f, t, y, mid).0[j];
        if v.signum() == s0 && v != 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    t + 0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let f = |_t: f64, y: &[f64], d: &mut [f64]| {
            d[0] = y[1];
            d[1] = -y[0];
        };
        let tr = integrate(&f, 0.0, &[0.0, 1.0], 3.0, &[1.0, 2.0], &[], &OdeOptions::default()).unwrap();
        let (t, y) = tr.end();
        assert_eq!(t, 3.0);
        assert!((y[0] - 3f64.sin()).abs() < 1e-10);
        assert!(tr.t.contains(&1.0) && tr.t.contains(&2.0));
        let mid = tr.eval(&f, 1.2345);
        assert!((mid[0] - 1.2345f64.sin()).abs() < 1e-10);
    }

    #[test]
    fn zero_crossing_is_located() {
        let f = |_t: f64, y: &[f64], d: &mut [f64]| {
            d[0] = y[1];
            d[1] = -y[0];
        };
        let e = integrate(&f, 0.0, &[1.0, 0.0], 3.0, &[], &[0], &OdeOptions::default());
        match e {
            Err(Error::ConjugatePoint { at, .. }) => {
                assert!((at - std::f64::consts::FRAC_PI_2).abs() < 1e-10)
            }
            other => panic!("{other:?}"),
        }
    }
}
