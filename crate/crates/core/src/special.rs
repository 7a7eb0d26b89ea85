//! J₀, the exact Beta coefficient B(u+1, v+1/2) and the sin(r)/r kernel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::math::{abs, cos, hypot, sin, sqrt, DoubleDouble};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type ExactRational = BigRational;

/// Below this |x| the power series is summed in double-double; above it the
/// Hankel expansion is used. The asymptotic series' smallest term is about
/// e^{-2x}, so the switch must sit well past x = 8 for 1e-12 accuracy.
const J0_SERIES_LIMIT: f64 = 20.0;

/// Bessel function of the first kind, order zero.
///
/// Absolute error is below 1e-12 for |x| <= 50 and 1e-10 up to |x| = 1000.
/// Non-finite input yields NaN; see [`bessel_j0_checked`].
pub fn bessel_j0(x: f64) -> f64 {
    let ax = abs(x);
    if ax.is_nan() || ax.is_infinite() {
        return f64::NAN;
    }
    if ax < J0_SERIES_LIMIT {
        j0_series(ax)
    } else {
        j0_hankel(ax)
    }
}

pub fn bessel_j0_checked(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFiniteArgument);
    }
    Ok(bessel_j0(x))
}

// Σ (-1)^k (x²/4)^k / (k!)², every step in double-double.
fn j0_series(x: f64) -> f64 {
    let q = DoubleDouble::square_of(x).mul_f64(0.25);
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    let mut k = 1u32;
    loop {
        let kk = f64::from(k);
        term = term.mul(q).div_f64(kk * kk).neg();
        sum = sum.add(term);
        if abs(term.hi) < 1e-34 * abs(sum.hi).max(1e-300) || k > 200 {
            break;
        }
        k += 1;
    }
    sum.to_f64()
}

// J₀(x) = (πx)^{-1/2} [P(x)(cos x + sin x) − Q(x)(sin x − cos x)].
fn j0_hankel(x: f64) -> f64 {
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut b = 1.0_f64;
    let mut k = 1u32;
    loop {
        let odd = f64::from(2 * k - 1);
        let next = -b * odd * odd / (f64::from(k) * eight_x);
        if abs(next) >= abs(b) {
            break;
        }
        b = next;
        // b_k enters P (k even) or Q (k odd) with sign (-1)^{floor(k/2)}
        let signed = if (k / 2).is_multiple_of(2) { b } else { -b };
        if k.is_multiple_of(2) {
            p += signed;
        } else {
            q += signed;
        }
        if abs(b) < 1e-18 {
            break;
        }
        k += 1;
    }
    let (s, c) = (sin(x), cos(x));
    (p * (c + s) - q * (s - c)) / sqrt(core::f64::consts::PI * x)
}

/// B(u+1, v+1/2) = Γ(u+1)Γ(v+1/2)/Γ(u+v+3/2) as an exact rational.
///
/// The √π factors of the two half-integer Gammas cancel, leaving
/// u!·2^{u+1} / ∏_{j=v}^{u+v} (2j+1).
pub fn beta_half(u: u32, v: u32) -> ExactRational {
    let mut num = BigInt::one();
    for i in 2..=u {
        num *= i;
    }
    num <<= (u + 1) as usize;
    let mut den = BigInt::one();
    for j in v..=u + v {
        den *= 2 * u64::from(j) + 1;
    }
    BigRational::new(num, den)
}

/// Nearest f64 to an exact rational.
pub fn rational_to_f64(r: &ExactRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// sin(r)/r at r = √(β² + z²), with the removable singularity filled in.
pub fn sinc_radius(beta: f64, z: f64) -> f64 {
    sinc(hypot(beta, z))
}

pub(crate) fn sinc(r: f64) -> f64 {
    if r < 1e-4 {
        let r2 = r * r;
        1.0 - r2 / 6.0 + r2 * r2 / 120.0
    } else {
        sin(r) / r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> ExactRational {
        BigRational::new(n.into(), d.into())
    }

    // 40-digit reference values of J₀.
    const J0_REFERENCE: &[(f64, f64)] = &[
        (1.0, 0.76519768655796655145),
        (2.5, -0.048383776468197996327),
        (5.0, -0.17759677131433830435),
        (7.9, 0.19436184484127831756),
        (8.0, 0.17165080713755390609),
        (12.3, 0.11079795030758530176),
        (19.99, 0.167684799023279158),
        (20.0, 0.16702466434058315473),
        (25.0, 0.096266783275958116174),
        (33.3, 0.063338485947520899644),
        (50.0, 0.055812327669251815005),
        (100.0, 0.019985850304223122424),
        (250.25, -0.014544124120026991067),
        (999.5, 0.024019300140883569683),
    ];

    #[test]
    fn j0_against_reference() {
        for &(x, want) in J0_REFERENCE {
            let tol = if x <= 50.0 { 1e-12 } else { 1e-10 };
            let got = bessel_j0(x);
            assert!((got - want).abs() <= tol, "J0({x}) = {got}, want {want}");
            assert_eq!(bessel_j0(-x), got);
        }
    }

    #[test]
    fn j0_simple_values() {
        assert_eq!(bessel_j0(0.0), 1.0);
        assert!((bessel_j0(1.0) - 0.7651976865579666).abs() < 1e-12);
        assert!(bessel_j0(2.404825557695773).abs() < 1e-10);
        assert!(bessel_j0(f64::NAN).is_nan());
        assert_eq!(bessel_j0_checked(f64::INFINITY), Err(Error::NonFiniteArgument));
    }

    #[test]
    fn j0_continuous_across_switch() {
        for x in [J0_SERIES_LIMIT, J0_SERIES_LIMIT + 0.5, J0_SERIES_LIMIT - 0.5] {
            assert!((j0_series(x) - j0_hankel(x)).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn beta_half_examples() {
        assert_eq!(beta_half(0, 0), rat(2, 1));
        assert_eq!(beta_half(1, 0), rat(4, 3));
        assert_eq!(beta_half(1, 1), rat(4, 15));
        assert_eq!(beta_half(0, 1), rat(2, 3));
    }

    #[test]
    fn beta_half_pascal_recurrence() {
        // B(a, b) = B(a+1, b) + B(a, b+1) with a = u+1, b = v+1/2
        for u in 0..12 {
            for v in 0..12 {
                assert_eq!(beta_half(u, v), beta_half(u + 1, v) + beta_half(u, v + 1), "u={u} v={v}");
            }
        }
    }

    #[test]
    fn beta_half_matches_sine_cosine_moments() {
        // ∫₀^π sin^{2u+1} cos^{2v} dθ by Simpson on a fine grid
        for (u, v) in [(0, 0), (2, 1), (3, 3)] {
            let n = 20_000;
            let h = core::f64::consts::PI / n as f64;
            let f = |t: f64| libm::pow(sin(t), f64::from(2 * u + 1)) * libm::pow(cos(t), f64::from(2 * v));
            let mut s = f(0.0) + f(core::f64::consts::PI);
            for i in 1..n {
                s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            s *= h / 3.0;
            assert!((rational_to_f64(&beta_half(u, v)) - s).abs() < 1e-12);
        }
    }

    #[test]
    fn sinc_radius_examples() {
        assert_eq!(sinc_radius(0.0, 0.0), 1.0);
        assert_eq!(sinc_radius(3.0, 4.0), sin(5.0) / 5.0);
        assert!((sinc_radius(3.0, 4.0) - (-0.1917848549326277)).abs() < 1e-16);
        assert!(sinc_radius(0.0, core::f64::consts::PI).abs() < 1e-16);
        assert!((sinc_radius(3e-5, 4e-5) - sin(5e-5) / 5e-5).abs() <= 2.0 * f64::EPSILON);
    }
}
