mod common;

use arraydir_core::pattern::{element_power, IntensityEvaluator};
use arraydir_core::{array_factor, element_factor, omega, radiation_intensity, Direction, ElementPattern};
use common::{random_array, rng, steering, reference_array};
use proptest::prelude::*;

#[test]
fn reference_pair_phase_and_intensity() {
    let a = reference_array();
    let p = a.pair_geometry(1, 2).unwrap();
    assert!((omega(&p, steering()) - -11.527037758612130523).abs() < 1e-12);
    let i = radiation_intensity(&a, ElementPattern::ISOTROPIC, steering());
    assert!((i - 31.584011036603730743).abs() < 1e-11);
}

#[test]
fn pair_swap_negates_deltas() {
    let a = reference_array();
    let e = a.elements();
    for (m, n) in [(0, 1), (3, 7), (2, 9)] {
        let fwd = arraydir_core::PairGeometry::between(&e[m], &e[n]);
        let back = arraydir_core::PairGeometry::between(&e[n], &e[m]);
        assert_eq!(fwd.x_mn, -back.x_mn);
        assert_eq!(fwd.y_mn, -back.y_mn);
        assert_eq!(fwd.z_mn, -back.z_mn);
        assert_eq!(fwd.alpha_mn, -back.alpha_mn);
        assert_eq!(fwd.beta, back.beta);
    }
}

#[test]
fn translation_keeps_pair_geometry() {
    let a = reference_array();
    let b = a.translated(0.25, -1.5, 3.0).unwrap();
    for ((_, p), (_, q)) in a.pairs().zip(b.pairs()) {
        assert!((p.x_mn - q.x_mn).abs() < 1e-12);
        assert!((p.y_mn - q.y_mn).abs() < 1e-12);
        assert!((p.z_mn - q.z_mn).abs() < 1e-12);
        assert!((p.beta - q.beta).abs() < 1e-12);
        assert_eq!(p.alpha_mn, q.alpha_mn);
    }
}

fn direction() -> impl Strategy<Value = Direction> {
    (0.0..=std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(t, p)| Direction::new(t, p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pair_sum_equals_squared_magnitude(seed in any::<u64>(), d in direction(), u in 0u32..4, v in 0u32..4) {
        let a = random_array(&mut rng(seed), 12);
        let pattern = ElementPattern::new(u, v);
        let ef = element_factor(pattern, d.theta());
        let direct = ef * ef * array_factor(&a, d).norm_sqr();
        let expanded = radiation_intensity(&a, pattern, d);
        let scale = a.elements().iter().map(|e| e.amplitude).sum::<f64>().powi(2);
        prop_assert!((direct - expanded).abs() <= 1e-12 * scale);
    }

    #[test]
    fn global_phase_does_not_change_intensity(seed in any::<u64>(), d in direction(), shift in -10.0f64..10.0) {
        let a = random_array(&mut rng(seed), 10);
        let b = a.phase_shifted(shift).unwrap();
        let x = radiation_intensity(&a, ElementPattern::ISOTROPIC, d);
        let y = radiation_intensity(&b, ElementPattern::ISOTROPIC, d);
        prop_assert!((x - y).abs() <= 1e-12 * a.power_sum() * a.len() as f64);
    }

    #[test]
    fn translation_does_not_change_intensity(seed in any::<u64>(), d in direction(), dx in -5.0f64..5.0, dz in -5.0f64..5.0) {
        let a = random_array(&mut rng(seed), 10);
        let b = a.translated(dx, -dx, dz).unwrap();
        let x = radiation_intensity(&a, ElementPattern::new(1, 1), d);
        let y = radiation_intensity(&b, ElementPattern::new(1, 1), d);
        prop_assert!((x - y).abs() <= 1e-10 * a.power_sum() * a.len() as f64);
    }

    #[test]
    fn rotation_about_z_shifts_azimuth(seed in any::<u64>(), d in direction(), angle in 0.0f64..std::f64::consts::TAU) {
        let a = random_array(&mut rng(seed), 10);
        let rotated = a.rotated_about_z(angle).unwrap();
        let shifted = Direction::new(d.theta(), d.phi() + angle).unwrap();
        let x = radiation_intensity(&a, ElementPattern::ISOTROPIC, d);
        let y = radiation_intensity(&rotated, ElementPattern::ISOTROPIC, shifted);
        prop_assert!((x - y).abs() <= 1e-10 * a.power_sum() * a.len() as f64);
    }

    #[test]
    fn element_factor_exponents_add(theta in 0.0f64..std::f64::consts::PI, u1 in 0u32..4, v1 in 0u32..4, u2 in 0u32..4, v2 in 0u32..4) {
        let product = element_factor(ElementPattern::new(u1, v1), theta) * element_factor(ElementPattern::new(u2, v2), theta);
        let joint = element_factor(ElementPattern::new(u1 + u2, v1 + v2), theta);
        prop_assert!((product - joint).abs() <= 1e-14);
        let ef = element_factor(ElementPattern::new(u1, v1), theta);
        prop_assert!((element_power(ElementPattern::new(u1, v1), theta) - ef * ef).abs() <= 1e-14);
    }

    #[test]
    fn evaluator_matches_free_function(seed in any::<u64>(), d in direction(), u in 0u32..3, v in 0u32..3) {
        let a = random_array(&mut rng(seed), 8);
        let pattern = ElementPattern::new(u, v);
        let ev = IntensityEvaluator::new(&a, pattern);
        prop_assert_eq!(ev.intensity(d), radiation_intensity(&a, pattern, d));
        prop_assert!(ev.intensity(d) >= 0.0);
    }
}
