use super::{orbit, UnitaryFrameCurvature, C64};
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Projection of an arbitrary complex `m^4` table onto Kähler tensors.
///
/// The symmetry group is generated by `σ₁: (i,j,k,l) ↦ (k,j,i,l)`,
/// `σ₂: (i,j,k,l) ↦ (i,l,k,j)` and the conjugation
/// `τ: R_{ijkl} ↦ conj(R_{jilk})`; it has eight elements and the
/// projection is the group average
///
/// ```text
/// P(R)_{ijkl} = 1/8 [ R_{ijkl} + R_{kjil} + R_{ilkj} + R_{klij}
///                   + conj(R_{jilk} + R_{lijk} + R_{jkli} + R_{lkji}) ]
/// ```
pub fn symmetrize(m: usize, raw: &[C64]) -> Vec<C64> {
    let at = |idx: [usize; 4]| raw[((idx[0] * m + idx[1]) * m + idx[2]) * m + idx[3]];
    let mut out = vec![C64::new(0.0, 0.0); m.pow(4)];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let s: C64 = orbit(i, j, k, l)
                        .iter()
                        .map(|&(idx, conj)| if conj { at(idx).conj() } else { at(idx) })
                        .sum();
                    out[((i * m + j) * m + k) * m + l] = s / 8.0;
                }
            }
        }
    }
    out
}

/// Random Kähler curvature tensor: Gaussian table pushed through [`symmetrize`].
pub fn random_tensor<R: Rng + ?Sized>(m: usize, rng: &mut R) -> UnitaryFrameCurvature {
    let raw: Vec<C64> = (0..m.pow(4)).map(|_| gaussian(rng)).collect();
    UnitaryFrameCurvature::from_table(m, symmetrize(m, &raw))
        .expect("symmetrized table satisfies the Kähler symmetries")
}

/// Uniform point on the unit sphere of `C^m`.
pub fn random_unit_vector<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let z: Vec<C64> = (0..m).map(|_| gaussian(rng)).collect();
        let n = super::norm(&z);
        if n > 1e-12 {
            return z.into_iter().map(|c| c / n).collect();
        }
    }
}

/// Haar-distributed unitary matrix (QR of a Ginibre matrix with phase fix).
pub fn random_unitary<R: Rng + ?Sized>(m: usize, rng: &mut R) -> DMatrix<C64> {
    let g = DMatrix::from_fn(m, m, |_, _| gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..m {
        let d = r[(c, c)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for row in 0..m {
            q[(row, c)] *= phase;
        }
    }
    q
}

/// Random complex skew-symmetric `k×k` matrix.
pub fn random_skew<R: Rng + ?Sized>(k: usize, rng: &mut R) -> DMatrix<C64> {
    let g = DMatrix::from_fn(k, k, |_, _| gaussian(rng));
    &g - g.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symmetrize_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m: usize = 3;
        let raw: Vec<C64> = (0..m.pow(4)).map(|_| gaussian(&mut rng)).collect();
        let once = symmetrize(m, &raw);
        let twice = symmetrize(m, &once);
        let diff: f64 = once.iter().zip(&twice).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(diff < 1e-15);
        assert!(super::super::validate_table(m, &once).is_empty());
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_unitary(5, &mut rng);
        let e = &u.adjoint() * &u - DMatrix::<C64>::identity(5, 5);
        assert!(e.norm() < 1e-13);
    }
}
