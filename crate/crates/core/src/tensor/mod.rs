//! Algebraic Kähler curvature tensors in a unitary frame.
//!
//! A tensor is stored as a dense `m^4` table of `R_{i j̄ k l̄}` (0-based
//! indices internally, 1-based in the JSON exchange format). Multilinear
//! evaluation follows
//!
//! ```text
//! R(X, Ȳ, Z, W̄) = Σ R_{i j̄ k l̄} x_i conj(y_j) z_k conj(w_l)
//! ```
//!
//! so the holomorphic sectional curvature of a unit vector is
//! `H(Z) = R(Z, Z̄, Z, Z̄)` and the bisectional curvature is
//! `R(Z, Z̄, W, W̄)`. The Hermitian product on frame components is
//! `<Z, W̄> = Σ z_i conj(w_i)`.

mod extremize;
mod json;
mod sampling;
mod skew;

pub use extremize::{
    extremize_over_sphere, orthogonal_bisectional_min, Extremum, Functional, Mode,
    OrthogonalBisectionalMin, SphereOptions,
};
pub use json::{CoeffJson, TensorJson};
pub use sampling::{random_skew, random_tensor, random_unit_vector, random_unitary, symmetrize};
pub use skew::{skew_block_form, skew_normal_form, SkewNormalForm};

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

pub type C64 = Complex64;

/// Symmetry tolerance applied on construction.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Largest supported complex dimension.
pub const MAX_DIM: usize = 8;

/// Which Kähler symmetry an entry breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryKind {
    /// `R_{i j̄ k l̄} = R_{k j̄ i l̄}`
    SwapHolomorphic,
    /// `R_{i j̄ k l̄} = R_{i l̄ k j̄}`
    SwapAntiHolomorphic,
    /// `R_{i j̄ k l̄} = conj(R_{j ī l k̄})`
    Conjugate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryViolation {
    /// 1-based index quadruple of the offending entry.
    pub idx: [usize; 4],
    pub kind: SymmetryKind,
    pub residual: f64,
}

impl std::fmt::Display for SymmetryViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [i, j, k, l] = self.idx;
        write!(f, "R[{i},{j},{k},{l}] {:?} residual {:.3e}", self.kind, self.residual)
    }
}

/// Check a raw `m^4` table against the Kähler symmetries.
///
/// Each unordered pair of related entries is reported at most once.
pub fn validate_table(m: usize, coeffs: &[C64]) -> Vec<SymmetryViolation> {
    let mut out = Vec::new();
    if coeffs.len() != m.pow(4) {
        return out;
    }
    let at = |i: usize, j: usize, k: usize, l: usize| coeffs[((i * m + j) * m + k) * m + l];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let v = at(i, j, k, l);
                    let checks = [
                        (SymmetryKind::SwapHolomorphic, (k, j, i, l), at(k, j, i, l)),
                        (SymmetryKind::SwapAntiHolomorphic, (i, l, k, j), at(i, l, k, j)),
                        (SymmetryKind::Conjugate, (j, i, l, k), at(j, i, l, k).conj()),
                    ];
                    for (kind, partner, w) in checks {
                        // report each pair from its lexicographically smaller member
                        if partner < (i, j, k, l) {
                            continue;
                        }
                        let residual = (v - w).norm();
                        if residual > SYMMETRY_TOL {
                            out.push(SymmetryViolation {
                                idx: [i + 1, j + 1, k + 1, l + 1],
                                kind,
                                residual,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// The eight index images of `(i, j, k, l)` under the Kähler symmetry
/// group, each flagged with whether the value there is conjugated.
pub(crate) fn orbit(i: usize, j: usize, k: usize, l: usize) -> [([usize; 4], bool); 8] {
    [
        ([i, j, k, l], false),
        ([k, j, i, l], false),
        ([i, l, k, j], false),
        ([k, l, i, j], false),
        ([j, i, l, k], true),
        ([l, i, j, k], true),
        ([j, k, l, i], true),
        ([l, k, j, i], true),
    ]
}

/// A unit (1,0) tangent vector in frame components.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentDirection(Vec<C64>);

impl TangentDirection {
    /// Normalizes `z`; fails on the zero vector.
    pub fn new(z: Vec<C64>) -> Result<Self> {
        let n = norm(&z);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidParameter("zero or non-finite tangent vector".into()));
        }
        Ok(Self(z.into_iter().map(|c| c / n).collect()))
    }

    /// The frame vector `E_i` (0-based).
    pub fn basis(m: usize, i: usize) -> Self {
        let mut z = vec![C64::new(0.0, 0.0); m];
        z[i] = C64::new(1.0, 0.0);
        Self(z)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }
}

/// An orthonormal family `E_1..E_k` spanning a complex subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceSpec {
    basis: Vec<Vec<C64>>,
}

impl SubspaceSpec {
    pub fn new(basis: Vec<Vec<C64>>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidParameter("empty subspace basis".into()));
        }
        let m = basis[0].len();
        if let Some(v) = basis.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, got: v.len() });
        }
        if basis.len() > m {
            return Err(Error::InvalidParameter(format!(
                "{} vectors cannot be orthonormal in dimension {m}",
                basis.len()
            )));
        }
        let mut deviation = 0.0f64;
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                let target = if a == b { 1.0 } else { 0.0 };
                deviation = deviation.max((hermitian(u, v) - target).norm());
            }
        }
        if deviation > SYMMETRY_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self { basis })
    }

    /// The standard frame `E_1..E_m`.
    pub fn standard(m: usize) -> Self {
        Self {
            basis: (0..m).map(|i| TangentDirection::basis(m, i).0).collect(),
        }
    }

    /// Columns of a unitary matrix, optionally only the first `k`.
    pub fn from_columns(u: &DMatrix<C64>, k: usize) -> Result<Self> {
        let basis = (0..k.min(u.ncols()))
            .map(|c| u.column(c).iter().copied().collect())
            .collect();
        Self::new(basis)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis[0].len()
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.basis
    }
}

/// `<u, v̄> = Σ u_i conj(v_i)`.
pub fn hermitian(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(z: &[C64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Sphere averages and the scalar/Ricci⊥ identity residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BergerCheck {
    pub avg_holomorphic_sectional: f64,
    pub avg_ricci: f64,
    pub avg_orthogonal_ricci: f64,
    /// `(m-1) S / (2 m (m+1))`
    pub expected_orthogonal_ricci: f64,
    pub residual: f64,
}

/// Coefficient table of an algebraic Kähler curvature tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryFrameCurvature {
    m: usize,
    coeffs: Vec<C64>,
}

impl UnitaryFrameCurvature {
    pub fn zeros(m: usize) -> Result<Self> {
        check_dim(m)?;
        Ok(Self { m, coeffs: vec![C64::new(0.0, 0.0); m.pow(4)] })
    }

    /// Validates a raw table (row-major in `i, j, k, l`).
    pub fn from_table(m: usize, coeffs: Vec<C64>) -> Result<Self> {
        check_dim(m)?;
        if coeffs.len() != m.pow(4) {
            return Err(Error::DimensionMismatch { expected: m.pow(4), got: coeffs.len() });
        }
        let violations = validate_table(m, &coeffs);
        if let Some(first) = violations.first() {
            return Err(Error::SymmetryViolation {
                count: violations.len(),
                first: first.to_string(),
            });
        }
        Ok(Self { m, coeffs })
    }

    /// Constant holomorphic sectional curvature `2λ`:
    /// `R_{i j̄ k l̄} = λ (δ_ij δ_kl + δ_il δ_kj)`.
    pub fn space_form(m: usize, lambda: f64) -> Result<Self> {
        let mut t = Self::zeros(m)?;
        for i in 0..m {
            for k in 0..m {
                t.add_raw(i, i, k, k, C64::new(lambda, 0.0));
                t.add_raw(i, k, k, i, C64::new(lambda, 0.0));
            }
        }
        Ok(t)
    }

    /// Assign `value` to `(i, j, k, l)` (0-based) and every symmetry image.
    pub fn set_orbit(&mut self, i: usize, j: usize, k: usize, l: usize, value: C64) {
        for (idx, conj) in orbit(i, j, k, l) {
            let v = if conj { value.conj() } else { value };
            let p = self.pos(idx[0], idx[1], idx[2], idx[3]);
            self.coeffs[p] = v;
        }
    }

    fn add_raw(&mut self, i: usize, j: usize, k: usize, l: usize, v: C64) {
        let p = self.pos(i, j, k, l);
        self.coeffs[p] += v;
    }

    #[inline]
    fn pos(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.m + j) * self.m + k) * self.m + l
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// `R_{i j̄ k l̄}`, 0-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.coeffs[self.pos(i, j, k, l)]
    }

    pub fn table(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn validate(&self) -> Vec<SymmetryViolation> {
        validate_table(self.m, &self.coeffs)
    }

    fn check_vec(&self, z: &[C64]) -> Result<()> {
        if z.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, got: z.len() });
        }
        Ok(())
    }

    /// `R(X, Ȳ, Z, W̄)` for arbitrary (not necessarily unit) vectors.
    pub fn eval(&self, x: &[C64], y: &[C64], z: &[C64], w: &[C64]) -> C64 {
        let m = self.m;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..m {
            for j in 0..m {
                let xy = x[i] * y[j].conj();
                if xy == C64::new(0.0, 0.0) {
                    continue;
                }
                let base = (i * m + j) * m * m;
                let mut inner = C64::new(0.0, 0.0);
                for k in 0..m {
                    for l in 0..m {
                        inner += self.coeffs[base + k * m + l] * z[k] * w[l].conj();
                    }
                }
                acc += xy * inner;
            }
        }
        acc
    }

    /// Raw quartic form `R(Z, Z̄, Z, Z̄)` without normalization.
    pub fn quartic(&self, z: &[C64]) -> f64 {
        self.eval(z, z, z, z).re
    }

    /// Raw bisectional form `R(Z, Z̄, W, W̄)`.
    pub fn bisectional(&self, z: &[C64], w: &[C64]) -> f64 {
        self.eval(z, z, w, w).re
    }

    pub fn holomorphic_sectional(&self, z: &TangentDirection) -> Result<f64> {
        self.check_vec(z.as_slice())?;
        Ok(self.quartic(z.as_slice()))
    }

    /// `Ric_{i j̄} = Σ_k R_{i j̄ k k̄}`.
    pub fn ricci_matrix(&self) -> DMatrix<C64> {
        let m = self.m;
        DMatrix::from_fn(m, m, |i, j| (0..m).map(|k| self.get(i, j, k, k)).sum())
    }

    /// `Ric(Z, Z̄) = Σ_{i,j} Ric_{i j̄} z_i conj(z_j)` for a raw vector.
    pub fn ricci_form(&self, z: &[C64]) -> f64 {
        let ric = self.ricci_matrix();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.m {
            for j in 0..self.m {
                acc += ric[(i, j)] * z[i] * z[j].conj();
            }
        }
        acc.re
    }

    pub fn ricci(&self, z: &TangentDirection) -> Result<f64> {
        self.check_vec(z.as_slice())?;
        Ok(self.ricci_form(z.as_slice()))
    }

    /// `Ric⊥(Z, Z̄) = Ric(Z, Z̄) - H(Z)` for unit `Z`.
    pub fn orthogonal_ricci(&self, z: &TangentDirection) -> Result<f64> {
        Ok(self.ricci(z)? - self.holomorphic_sectional(z)?)
    }

    /// `S = 2 Σ_{i,j} R_{i ī j j̄}`.
    pub fn scalar(&self) -> f64 {
        2.0 * self.trace_sum().re
    }

    fn trace_sum(&self) -> C64 {
        let m = self.m;
        let mut s = C64::new(0.0, 0.0);
        for i in 0..m {
            for j in 0..m {
                s += self.get(i, i, j, j);
            }
        }
        s
    }

    /// `QB(a) = Σ_{i,j} R(E_i, Ē_i, E_j, Ē_j) (a_i - a_j)^2` in the frame `E`.
    pub fn quadratic_bisectional(&self, a: &[f64], frame: &SubspaceSpec) -> Result<f64> {
        if frame.ambient_dim() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, got: frame.ambient_dim() });
        }
        if frame.dim() != self.m {
            return Err(Error::InvalidParameter(format!(
                "QB needs a complete frame ({} of {} vectors)",
                frame.dim(),
                self.m
            )));
        }
        if a.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, got: a.len() });
        }
        let e = frame.vectors();
        let mut qb = 0.0;
        for i in 0..self.m {
            for j in 0..self.m {
                let d = a[i] - a[j];
                if d != 0.0 {
                    qb += self.bisectional(&e[i], &e[j]) * d * d;
                }
            }
        }
        Ok(qb)
    }

    /// Closed-form average of `H` over the unit sphere, `2/(m(m+1)) Σ R_{i ī j j̄}`.
    pub fn sphere_average_h(&self) -> f64 {
        let m = self.m as f64;
        2.0 / (m * (m + 1.0)) * self.trace_sum().re
    }

    /// Closed-form average of `Ric` over the unit sphere, `S / (2m)`.
    pub fn sphere_average_ric(&self) -> f64 {
        self.scalar() / (2.0 * self.m as f64)
    }

    /// Verifies `avg Ric⊥ = (m-1) S / (2m(m+1))`.
    ///
    /// The averages on the left are integrated through the fourth moment
    /// tensor of the uniform sphere measure,
    /// `E[z_i z̄_j z_k z̄_l] = (δ_ij δ_kl + δ_il δ_kj) / (m(m+1))`,
    /// which reads entries `R_{i k̄ k ī}` that the closed form never touches,
    /// so the residual detects broken symmetries.
    pub fn check_berger(&self) -> BergerCheck {
        let m = self.m;
        let mf = m as f64;
        let mut moment = C64::new(0.0, 0.0);
        for i in 0..m {
            for k in 0..m {
                moment += self.get(i, i, k, k) + self.get(i, k, k, i);
            }
        }
        let avg_h = moment.re / (mf * (mf + 1.0));
        let ric = self.ricci_matrix();
        let avg_ric = (0..m).map(|i| ric[(i, i)].re).sum::<f64>() / mf;
        let avg_perp = avg_ric - avg_h;
        let expected = (mf - 1.0) * self.scalar() / (2.0 * mf * (mf + 1.0));
        BergerCheck {
            avg_holomorphic_sectional: avg_h,
            avg_ricci: avg_ric,
            avg_orthogonal_ricci: avg_perp,
            expected_orthogonal_ricci: expected,
            residual: (avg_perp - expected).abs(),
        }
    }

    /// Average of `Ric⊥` over the unit sphere of the subspace `Σ`:
    /// `(1/k) Σ_i Ric(E_i, Ē_i) - 2/(k(k+1)) S_k(Σ)`.
    pub fn ric_perp_k(&self, sigma: &SubspaceSpec) -> Result<f64> {
        if sigma.ambient_dim() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, got: sigma.ambient_dim() });
        }
        let k = sigma.dim() as f64;
        let e = sigma.vectors();
        let ric_sum: f64 = e.iter().map(|v| self.ricci_form(v)).sum();
        let s_k: f64 = e
            .iter()
            .flat_map(|u| e.iter().map(move |v| (u, v)))
            .map(|(u, v)| self.bisectional(u, v))
            .sum();
        Ok(ric_sum / k - 2.0 / (k * (k + 1.0)) * s_k)
    }

    /// `|LHS - RHS|` of the four-point polarization identity
    /// `H(aZ+bW) + H(aZ-bW) + H(aZ+ibW) + H(aZ-ibW)
    ///   = 4|a|^4 H(Z) + 4|b|^4 H(W) + 16|a|^2|b|^2 R(Z, Z̄, W, W̄)`,
    /// with `H` the raw quartic form.
    pub fn polarization_residual(&self, z: &[C64], w: &[C64], a: C64, b: C64) -> Result<f64> {
        self.check_vec(z)?;
        self.check_vec(w)?;
        let i = C64::new(0.0, 1.0);
        let comb = |s: C64| -> Vec<C64> { z.iter().zip(w).map(|(zz, ww)| a * zz + s * b * ww).collect() };
        let lhs = self.quartic(&comb(C64::new(1.0, 0.0)))
            + self.quartic(&comb(C64::new(-1.0, 0.0)))
            + self.quartic(&comb(i))
            + self.quartic(&comb(-i));
        let (a2, b2) = (a.norm_sqr(), b.norm_sqr());
        let rhs = 4.0 * a2 * a2 * self.quartic(z)
            + 4.0 * b2 * b2 * self.quartic(w)
            + 16.0 * a2 * b2 * self.bisectional(z, w);
        Ok((lhs - rhs).abs())
    }

    /// Components in the frame `E'_a = Σ_i U_{ia} E_i`.
    pub fn change_frame(&self, u: &DMatrix<C64>) -> Result<Self> {
        let m = self.m;
        if u.nrows() != m || u.ncols() != m {
            return Err(Error::DimensionMismatch { expected: m, got: u.nrows() });
        }
        let cols: Vec<Vec<C64>> = (0..m).map(|c| u.column(c).iter().copied().collect()).collect();
        let mut out = vec![C64::new(0.0, 0.0); m.pow(4)];
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        out[((a * m + b) * m + c) * m + d] =
                            self.eval(&cols[a], &cols[b], &cols[c], &cols[d]);
                    }
                }
            }
        }
        Ok(Self { m, coeffs: out })
    }

    /// Entry-wise scaling, used when rescaling a metric.
    pub fn scaled(&self, factor: f64) -> Self {
        Self { m: self.m, coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }
}

fn check_dim(m: usize) -> Result<()> {
    if m == 0 || m > MAX_DIM {
        return Err(Error::UnsupportedDimension(m));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Brute-force quartic sum straight from the table.
    fn brute_quartic(t: &UnitaryFrameCurvature, z: &[C64]) -> f64 {
        let m = t.dim();
        let mut s = c(0.0, 0.0);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        s += t.get(i, j, k, l) * z[i] * z[j].conj() * z[k] * z[l].conj();
                    }
                }
            }
        }
        s.re
    }

    #[test]
    fn flat_and_space_form_validate() {
        assert!(UnitaryFrameCurvature::zeros(3).unwrap().validate().is_empty());
        for m in 2..=5 {
            assert!(UnitaryFrameCurvature::space_form(m, 0.7).unwrap().validate().is_empty());
        }
    }

    #[test]
    fn broken_conjugate_symmetry_is_reported_once() {
        let m = 2;
        let mut table = vec![c(0.0, 0.0); 16];
        // R_{1 2̄ 1 1̄} = 1 + i, but R_{2 1̄ 1 1̄} left at zero.
        let idx = |i: usize, j: usize, k: usize, l: usize| ((i * m + j) * m + k) * m + l;
        table[idx(0, 1, 0, 0)] = c(1.0, 1.0);
        let v = validate_table(m, &table);
        let conj: Vec<_> = v.iter().filter(|x| x.kind == SymmetryKind::Conjugate).collect();
        assert_eq!(conj.len(), 1, "{v:?}");
        assert!(UnitaryFrameCurvature::from_table(m, table).is_err());
    }

    #[test]
    fn space_form_values() {
        let lambda = 0.8;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 2..=4 {
            let t = UnitaryFrameCurvature::space_form(m, lambda).unwrap();
            for _ in 0..20 {
                let z = random_unit_vector(m, &mut rng);
                let dir = TangentDirection::new(z.clone()).unwrap();
                let h = t.holomorphic_sectional(&dir).unwrap();
                assert!((h - 2.0 * lambda).abs() < 1e-12);
                assert!((brute_quartic(&t, &z) - 2.0 * lambda).abs() < 1e-12);
                let ric = t.ricci(&dir).unwrap();
                assert!((ric - (m as f64 + 1.0) * lambda).abs() < 1e-12);
                let perp = t.orthogonal_ricci(&dir).unwrap();
                assert!((perp - (m as f64 - 1.0) * lambda).abs() < 1e-12);
            }
            let s = t.scalar();
            assert!((s - 2.0 * m as f64 * (m as f64 + 1.0) * lambda).abs() < 1e-12);
        }
        // m = 2: Ric = 3λ, Ric⊥ = λ, S = 12λ.
        let t = UnitaryFrameCurvature::space_form(2, lambda).unwrap();
        let e1 = TangentDirection::basis(2, 0);
        assert!((t.ricci(&e1).unwrap() - 3.0 * lambda).abs() < 1e-14);
        assert!((t.orthogonal_ricci(&e1).unwrap() - lambda).abs() < 1e-14);
        assert!((t.scalar() - 12.0 * lambda).abs() < 1e-14);
    }

    #[test]
    fn flat_functionals_vanish() {
        let t = UnitaryFrameCurvature::zeros(3).unwrap();
        let z = TangentDirection::new(vec![c(1.0, 0.5), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(t.holomorphic_sectional(&z).unwrap(), 0.0);
        assert_eq!(t.ricci(&z).unwrap(), 0.0);
        assert_eq!(t.orthogonal_ricci(&z).unwrap(), 0.0);
        assert_eq!(t.scalar(), 0.0);
        let frame = SubspaceSpec::standard(3);
        assert_eq!(t.quadratic_bisectional(&[1.0, -2.0, 0.5], &frame).unwrap(), 0.0);
        let b = t.check_berger();
        assert_eq!(b.residual, 0.0);
        assert_eq!(b.avg_holomorphic_sectional, 0.0);
        assert_eq!(t.ric_perp_k(&frame).unwrap(), 0.0);
    }

    #[test]
    fn qb_of_constant_vector_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_tensor(4, &mut rng);
        let u = random_unitary(4, &mut rng);
        let frame = SubspaceSpec::from_columns(&u, 4).unwrap();
        let qb = t.quadratic_bisectional(&[0.3; 4], &frame).unwrap();
        assert!(qb.abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let t = UnitaryFrameCurvature::space_form(3, 1.0).unwrap();
        let z = TangentDirection::basis(2, 0);
        assert!(matches!(
            t.holomorphic_sectional(&z),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
        assert!(UnitaryFrameCurvature::zeros(9).is_err());
    }

    #[test]
    fn non_orthonormal_subspace_rejected() {
        let v = vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(1e-3, 0.0)]];
        assert!(matches!(SubspaceSpec::new(v), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn ric_perp_k_on_full_space_form() {
        for m in 2..=4 {
            let t = UnitaryFrameCurvature::space_form(m, 1.3).unwrap();
            let v = t.ric_perp_k(&SubspaceSpec::standard(m)).unwrap();
            assert!((v - (m as f64 - 1.0) * 1.3).abs() < 1e-12);
        }
    }

    #[test]
    fn polarization_with_zero_b() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_tensor(3, &mut rng);
        let z = random_unit_vector(3, &mut rng);
        let w = random_unit_vector(3, &mut rng);
        let r = t.polarization_residual(&z, &w, c(0.7, -0.2), c(0.0, 0.0)).unwrap();
        assert!(r < 1e-14);
    }
}
