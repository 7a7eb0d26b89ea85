#![allow(dead_code)]

use arraydir_core::{AntennaArray, ArrayElement, Direction, ElementPattern};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Ten-element volumetric test array (positions in λ, phases in degrees).
pub const REFERENCE_ARRAY: [[f64; 5]; 10] = [
    [0.00, 0.00, 0.00, 0.84, -4.28],
    [2.71, 1.22, 1.06, 0.93, -121.36],
    [1.03, 4.77, 4.40, 0.13, -58.39],
    [5.31, 3.61, 2.45, 0.94, 74.06],
    [0.52, 2.25, 1.71, 0.60, -112.04],
    [4.37, 3.07, 2.52, 0.10, 169.73],
    [4.59, 2.51, 0.98, 0.29, -59.63],
    [4.84, 0.88, 1.16, 0.56, 143.29],
    [0.92, 1.70, 5.21, 0.99, -94.67],
    [2.50, 1.12, 5.28, 1.00, 124.53],
];

pub fn reference_array() -> AntennaArray {
    AntennaArray::new(REFERENCE_ARRAY.iter().map(|r| ArrayElement::with_phase_deg(r[0], r[1], r[2], r[3], r[4])).collect())
        .unwrap()
}

pub fn steering() -> Direction {
    Direction::from_degrees(101.44, 267.75).unwrap()
}

/// N ≤ `max_n` elements, positions in [0, 6λ]³, amplitudes in (0, 1], phases in [−π, π].
pub fn random_array(rng: &mut ChaCha8Rng, max_n: usize) -> AntennaArray {
    let n = rng.random_range(2..=max_n);
    let elements = (0..n)
        .map(|_| {
            ArrayElement::new(
                rng.random_range(0.0..6.0),
                rng.random_range(0.0..6.0),
                rng.random_range(0.0..6.0),
                1.0 - rng.random_range(0.0..1.0),
                rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
            )
        })
        .collect();
    AntennaArray::new(elements).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn patterns(max: u32) -> impl Iterator<Item = ElementPattern> {
    (0..=max).flat_map(move |u| (0..=max).map(move |v| ElementPattern::new(u, v)))
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
