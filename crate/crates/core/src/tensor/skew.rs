//! Unitary congruence normal form of complex skew-symmetric matrices.
//!
//! For `A = -Aᵀ` there is a unitary `U` with `Uᵀ A U = ⊕ λ_i E ⊕ 0`,
//! `E = [[0, 1], [-1, 0]]`, `λ_1 ≥ λ_2 ≥ … ≥ 0`. The construction peels off
//! one block at a time: if `y` is a unit eigenvector of the Hermitian
//! matrix `A A* = -A conj(A)` with eigenvalue `σ² > 0`, then
//!
//! ```text
//! u₁ = conj(y),   u₂ = -conj(A) y / σ
//! ```
//!
//! are orthonormal, `u₁ᵀ A u₂ = σ`, and the complement of `span{u₁, u₂}`
//! is `A`-orthogonal to both, so the compression of `A` to that complement
//! is again skew and the step repeats.

use super::extremize::complement_basis;
use super::C64;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, PartialEq)]
pub struct SkewNormalForm {
    pub u: DMatrix<C64>,
    /// One value per 2×2 block, non-increasing.
    pub values: Vec<f64>,
    /// Frobenius norm of `Uᵀ A U` minus the block form.
    pub residual: f64,
}

/// Block-diagonal matrix `⊕ λ_i E` padded with zeros to `k×k`.
pub fn skew_block_form(values: &[f64], k: usize) -> DMatrix<C64> {
    let mut b = DMatrix::zeros(k, k);
    for (i, &v) in values.iter().enumerate() {
        b[(2 * i, 2 * i + 1)] = C64::new(v, 0.0);
        b[(2 * i + 1, 2 * i)] = C64::new(-v, 0.0);
    }
    b
}

pub fn skew_normal_form(a: &DMatrix<C64>) -> Result<SkewNormalForm> {
    let k = a.nrows();
    if a.ncols() != k {
        return Err(Error::DimensionMismatch { expected: k, got: a.ncols() });
    }
    let deviation = (a + a.transpose()).norm();
    if deviation > 1e-12 * (1.0 + a.norm()) {
        return Err(Error::NotSkew { deviation });
    }
    let scale = a.norm().max(1.0);
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k / 2);
    // Orthonormal basis (columns, in C^k) of the current working subspace.
    let mut work: Vec<Vec<C64>> = (0..k)
        .map(|i| {
            let mut e = vec![C64::new(0.0, 0.0); k];
            e[i] = C64::new(1.0, 0.0);
            e
        })
        .collect();
    while work.len() >= 2 {
        let q = DMatrix::from_fn(k, work.len(), |r, c| work[c][r]);
        let compressed = q.transpose() * a * &q;
        let herm = &compressed * compressed.adjoint();
        let herm = (&herm + herm.adjoint()) * C64::new(0.5, 0.0);
        let eig = herm.symmetric_eigen();
        let sigma2 = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sigma = sigma2.max(0.0).sqrt();
        if sigma <= 1e-13 * scale {
            break;
        }
        let y = top_vector(&eig, sigma2);
        let u1_local = y.map(|c| c.conj());
        let u2_local = (compressed.map(|c| c.conj()) * &y) * C64::new(-1.0 / sigma, 0.0);
        let lift = |v: &DVector<C64>| -> Vec<C64> { (&q * v).iter().copied().collect() };
        let u1 = lift(&u1_local);
        let u2 = lift(&u2_local);
        values.push(sigma);
        columns.push(u1);
        columns.push(u2);
        // new working subspace: complement of everything chosen so far
        work = complement_basis(&columns, k);
    }
    columns.extend(complement_basis(&columns, k));
    let u = DMatrix::from_fn(k, k, |r, c| columns[c][r]);
    let block = skew_block_form(&values, k);
    let residual = (u.transpose() * a * &u - &block).norm();
    Ok(SkewNormalForm { u, values, residual })
}

/// A unit vector in the top eigenspace, chosen as the projection of the
/// first coordinate vector with non-negligible component there, so that
/// inputs already in normal form come back with a diagonal `U`.
fn top_vector(eig: &nalgebra::SymmetricEigen<C64, nalgebra::Dyn>, top: f64) -> DVector<C64> {
    let n = eig.eigenvalues.len();
    let cols: Vec<usize> =
        (0..n).filter(|&i| eig.eigenvalues[i] >= top - 1e-10 * top.abs().max(1.0)).collect();
    let basis = eig.eigenvectors.select_columns(&cols);
    for e in 0..n {
        // projection of e_e onto span(basis): basis * basis^* e_e
        let coeffs = basis.row(e).adjoint();
        let v = &basis * coeffs;
        let nv = v.norm();
        if nv > 0.5 / (n as f64).sqrt() {
            return v / C64::new(nv, 0.0);
        }
    }
    eig.eigenvectors.column(cols[0]).into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{random_skew, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_matrix() {
        let nf = skew_normal_form(&DMatrix::zeros(4, 4)).unwrap();
        assert!(nf.values.is_empty());
        assert!(nf.residual < 1e-15);
        let uu = nf.u.adjoint() * &nf.u;
        assert!((uu - DMatrix::<C64>::identity(4, 4)).norm() < 1e-14);
    }

    #[test]
    fn already_normal_2x2() {
        let c = C64::new(-1.5, 2.0);
        let a = DMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), c, -c, C64::new(0.0, 0.0)]);
        let nf = skew_normal_form(&a).unwrap();
        assert_eq!(nf.values.len(), 1);
        assert!((nf.values[0] - c.norm()).abs() < 1e-14);
        assert!(nf.residual < 1e-13);
        // U is diagonal: identity up to phases
        assert!(nf.u[(0, 1)].norm() < 1e-14 && nf.u[(1, 0)].norm() < 1e-14);
    }

    #[test]
    fn odd_dimension_and_rank_deficient() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_skew(5, &mut rng);
        let nf = skew_normal_form(&a).unwrap();
        assert_eq!(nf.values.len(), 2);
        assert!(nf.residual < 1e-9);
        // rank 2 in dimension 6
        let v = random_unitary(6, &mut rng);
        let b = skew_block_form(&[3.0], 6);
        let a = v.transpose() * b * &v;
        let nf = skew_normal_form(&a).unwrap();
        assert_eq!(nf.values.len(), 1);
        assert!((nf.values[0] - 3.0).abs() < 1e-12);
        assert!(nf.residual < 1e-9);
    }

    #[test]
    fn rejects_non_skew() {
        let a = DMatrix::from_element(3, 3, C64::new(1.0, 0.0));
        assert!(matches!(skew_normal_form(&a), Err(Error::NotSkew { .. })));
    }
}
