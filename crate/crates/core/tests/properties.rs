use kahler_lab::tensor::{
    random_tensor, random_unit_vector, random_unitary, TensorJson, UnitaryFrameCurvature, C64,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tensor(m: usize, seed: u64) -> (UnitaryFrameCurvature, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_tensor(m, &mut rng), rng)
}

fn scale_of(t: &UnitaryFrameCurvature) -> f64 {
    t.table().iter().map(|c| c.norm()).fold(1.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_tensors_satisfy_the_symmetries(m in 2usize..=4, seed: u64) {
        let (t, _) = tensor(m, seed);
        prop_assert!(t.validate().is_empty());
        prop_assert!(t.check_berger().residual <= 1e-10 * scale_of(&t));
    }

    #[test]
    fn frame_change_is_a_pullback(m in 2usize..=4, seed: u64) {
        let (t, mut rng) = tensor(m, seed);
        let u = random_unitary(m, &mut rng);
        let r = t.change_frame(&u).unwrap();
        prop_assert!(r.validate().is_empty());
        let c = random_unit_vector(m, &mut rng);
        let z: Vec<C64> = (0..m).map(|i| (0..m).map(|a| u[(i, a)] * c[a]).sum()).collect();
        prop_assert!((r.quartic(&c) - t.quartic(&z)).abs() <= 1e-10 * scale_of(&t));
        prop_assert!((r.scalar() - t.scalar()).abs() <= 1e-10 * scale_of(&t));
    }

    #[test]
    fn json_round_trip_keeps_the_tensor(m in 1usize..=4, seed: u64) {
        let (t, _) = tensor(m, seed);
        let back = TensorJson::from_tensor(&t).to_tensor().unwrap();
        // one entry per orbit is stored; orbit members agree to rounding
        let dev = back.table().iter().zip(t.table()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(dev <= 1e-14 * scale_of(&t));
        let again = TensorJson::from_tensor(&back).to_tensor().unwrap();
        prop_assert_eq!(again.table(), back.table());
    }

    #[test]
    fn curvature_functionals_are_linear_in_the_tensor(m in 2usize..=4, seed: u64, f in -3.0f64..3.0) {
        let (t, mut rng) = tensor(m, seed);
        let z = random_unit_vector(m, &mut rng);
        let s = t.scaled(f);
        prop_assert!((s.quartic(&z) - f * t.quartic(&z)).abs() <= 1e-12 * scale_of(&t));
        prop_assert!((s.ricci_form(&z) - f * t.ricci_form(&z)).abs() <= 1e-12 * scale_of(&t));
    }

    #[test]
    fn space_form_has_constant_curvatures(m in 2usize..=5, lambda in -2.0f64..2.0, seed: u64) {
        let t = UnitaryFrameCurvature::space_form(m, lambda).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_unit_vector(m, &mut rng);
        prop_assert!((t.quartic(&z) - 2.0 * lambda).abs() <= 1e-12);
        prop_assert!((t.ricci_form(&z) - (m as f64 + 1.0) * lambda).abs() <= 1e-12);
    }
}

/// Sample mean and standard error of `f` over the unit sphere.
fn sphere_mean(m: usize, n: usize, rng: &mut ChaCha8Rng, f: impl Fn(&[C64]) -> f64) -> (f64, f64) {
    let (mut s1, mut s2) = (0.0, 0.0);
    for _ in 0..n {
        let v = f(&random_unit_vector(m, rng));
        s1 += v;
        s2 += v * v;
    }
    let nf = n as f64;
    let mean = s1 / nf;
    (mean, ((s2 / nf - mean * mean).max(0.0) / (nf - 1.0)).sqrt())
}

// 20 tensors and two averages each; at 5 standard errors the chance of any
// false alarm is about 2e-5, and fixed seeds make the outcome reproducible.
#[test]
fn sphere_averages_match_monte_carlo() {
    for seed in 0..20u64 {
        let m = 2 + seed as usize % 3;
        let (t, mut rng) = tensor(m, 1000 + seed);
        let (h, se) = sphere_mean(m, 50_000, &mut rng, |z| t.quartic(z));
        assert!((h - t.sphere_average_h()).abs() <= 5.0 * se, "seed {seed}: H {h} ± {se} vs {}", t.sphere_average_h());
        let (r, se) = sphere_mean(m, 50_000, &mut rng, |z| t.ricci_form(z));
        assert!(
            (r - t.sphere_average_ric()).abs() <= 5.0 * se,
            "seed {seed}: Ric {r} ± {se} vs {}",
            t.sphere_average_ric()
        );
        let b = t.check_berger();
        assert!((b.avg_holomorphic_sectional - t.sphere_average_h()).abs() <= 1e-10 * scale_of(&t));
    }
}
