//! Seeded random arrays for validation runs.

use arraydir_core::{AntennaArray, ArrayElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest coordinate of a generated position, in wavelengths.
pub const MAX_EXTENT: f64 = 6.0;

/// `count` elements with positions in [0, 6λ)³, amplitudes in (0, 1] and
/// phases in [−π, π). The same seed always yields the same array.
pub fn random_array(count: usize, seed: u64) -> arraydir_core::Result<AntennaArray> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements = (0..count)
        .map(|_| {
            ArrayElement::new(
                rng.random_range(0.0..MAX_EXTENT),
                rng.random_range(0.0..MAX_EXTENT),
                rng.random_range(0.0..MAX_EXTENT),
                1.0 - rng.random_range(0.0..1.0),
                rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
            )
        })
        .collect();
    AntennaArray::new(elements)
}
