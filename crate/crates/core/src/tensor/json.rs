//! JSON exchange format: `{"m": 2, "coeffs": [{"idx": [1,1,1,1], "re": 2.0, "im": 0.0}, …]}`.
//!
//! Indices are 1-based. Writers emit one representative per symmetry orbit
//! (the lexicographically smallest index tuple) and skip zero orbits.
//! Readers place every listed entry, fill the remaining positions from
//! listed orbit images, and validate the result, so a file listing two
//! inconsistent members of one orbit is rejected.

use super::{orbit, validate_table, UnitaryFrameCurvature, C64, MAX_DIM};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub idx: [usize; 4],
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorJson {
    pub m: usize,
    pub coeffs: Vec<CoeffJson>,
}

impl TensorJson {
    pub fn from_tensor(t: &UnitaryFrameCurvature) -> Self {
        let m = t.dim();
        let mut coeffs = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let rep = orbit(i, j, k, l).iter().map(|o| o.0).min().expect("orbit");
                        if rep != [i, j, k, l] {
                            continue;
                        }
                        let v = t.get(i, j, k, l);
                        if v.norm() == 0.0 {
                            continue;
                        }
                        coeffs.push(CoeffJson { idx: [i + 1, j + 1, k + 1, l + 1], re: v.re, im: v.im });
                    }
                }
            }
        }
        Self { m, coeffs }
    }

    /// Fill the full table without validating it.
    pub fn to_table(&self) -> Result<Vec<C64>> {
        let m = self.m;
        if m == 0 || m > MAX_DIM {
            return Err(Error::UnsupportedDimension(m));
        }
        let pos = |idx: [usize; 4]| ((idx[0] * m + idx[1]) * m + idx[2]) * m + idx[3];
        let mut slots: Vec<Option<C64>> = vec![None; m.pow(4)];
        for c in &self.coeffs {
            if c.idx.iter().any(|&x| x == 0 || x > m) {
                return Err(Error::Parse(format!("index {:?} outside 1..={m}", c.idx)));
            }
            let idx = c.idx.map(|x| x - 1);
            slots[pos(idx)] = Some(C64::new(c.re, c.im));
        }
        let mut table = vec![C64::new(0.0, 0.0); m.pow(4)];
        for (p, out) in table.iter_mut().enumerate() {
            if let Some(v) = slots[p] {
                *out = v;
                continue;
            }
            let idx = [p / (m * m * m), (p / (m * m)) % m, (p / m) % m, p % m];
            // orbit images satisfy R_idx = img or conj(img)
            for (img, conj) in orbit(idx[0], idx[1], idx[2], idx[3]) {
                if let Some(v) = slots[pos(img)] {
                    *out = if conj { v.conj() } else { v };
                    break;
                }
            }
        }
        Ok(table)
    }

    pub fn to_tensor(&self) -> Result<UnitaryFrameCurvature> {
        let table = self.to_table()?;
        UnitaryFrameCurvature::from_table(self.m, table)
    }

    /// Table plus its violation list, for report-style loading.
    pub fn load_report(&self) -> Result<(Vec<C64>, Vec<super::SymmetryViolation>)> {
        let table = self.to_table()?;
        let v = validate_table(self.m, &table);
        Ok((table, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::random_tensor;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_tensor(3, &mut rng);
        let j = TensorJson::from_tensor(&t);
        let text = serde_json::to_string(&j).unwrap();
        let back: TensorJson = serde_json::from_str(&text).unwrap();
        let t2 = back.to_tensor().unwrap();
        let d = t.table().iter().zip(t2.table()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(d < 1e-15);
    }

    #[test]
    fn space_form_listing_is_small() {
        let t = UnitaryFrameCurvature::space_form(2, 1.0).unwrap();
        let j = TensorJson::from_tensor(&t);
        // [1,1,1,1], [1,1,2,2] (same orbit as [1,2,2,1]), [2,2,2,2]
        assert_eq!(j.coeffs.len(), 3);
    }

    #[test]
    fn inconsistent_orbit_members_are_rejected() {
        let j = TensorJson {
            m: 2,
            coeffs: vec![
                CoeffJson { idx: [1, 2, 1, 1], re: 1.0, im: 0.5 },
                CoeffJson { idx: [2, 1, 1, 1], re: 1.0, im: 0.5 },
            ],
        };
        assert!(matches!(j.to_tensor(), Err(Error::SymmetryViolation { .. })));
        let (_, v) = j.load_report().unwrap();
        assert!(!v.is_empty());
    }

    #[test]
    fn bad_index() {
        let j = TensorJson { m: 2, coeffs: vec![CoeffJson { idx: [0, 1, 1, 1], re: 1.0, im: 0.0 }] };
        assert!(j.to_tensor().is_err());
    }
}
