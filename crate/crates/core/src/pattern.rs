//! Element factor, array factor and radiation intensity.

use core::f64::consts::{PI, TAU};

use crate::array::{AntennaArray, ElementPattern, PairGeometry};
use crate::error::{Error, Result};
use crate::math::{cos, powi, sin, CompensatedSum};

const THETA_SLACK: f64 = 1e-12;

/// Observation direction in spherical coordinates (radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    /// θ within 1e-12 of [0, π] is clamped; φ is reduced into [0, 2π).
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFiniteAngle);
        }
        if !(-THETA_SLACK..=PI + THETA_SLACK).contains(&theta) {
            return Err(Error::ThetaOutOfRange(theta));
        }
        let theta = theta.clamp(0.0, PI);
        let mut phi = phi % TAU;
        if phi < 0.0 {
            phi += TAU;
        }
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(Self { theta, phi })
    }

    pub fn from_degrees(theta_deg: f64, phi_deg: f64) -> Result<Self> {
        Self::new(theta_deg.to_radians(), phi_deg.to_radians())
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn theta_deg(&self) -> f64 {
        self.theta.to_degrees()
    }

    pub fn phi_deg(&self) -> f64 {
        self.phi.to_degrees()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(&self) -> f64 {
        crate::math::hypot(self.re, self.im)
    }
}

/// sin^u(θ)·cos^v(θ), with 0⁰ = 1. Signed for odd `v` past broadside.
pub fn element_factor(pattern: ElementPattern, theta: f64) -> f64 {
    powi(sin(theta), pattern.u) * powi(cos(theta), pattern.v)
}

/// sin^{2u}(θ)·cos^{2v}(θ), the power pattern of one element.
pub fn element_power(pattern: ElementPattern, theta: f64) -> f64 {
    let s = sin(theta);
    let c = cos(theta);
    powi(s * s, pattern.u) * powi(c * c, pattern.v)
}

pub fn unit_vector(direction: Direction) -> [f64; 3] {
    let (st, ct) = (sin(direction.theta), cos(direction.theta));
    let (sp, cp) = (sin(direction.phi), cos(direction.phi));
    [st * cp, st * sp, ct]
}

/// Σ A_n exp(j(α_n + k r_n·a_r)).
pub fn array_factor(array: &AntennaArray, direction: Direction) -> ComplexValue {
    let [ux, uy, uz] = unit_vector(direction);
    let k = array.wavenumber();
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for e in array.elements() {
        let arg = e.phase + k * (e.x * ux + e.y * uy + e.z * uz);
        re.add(e.amplitude * cos(arg));
        im.add(e.amplitude * sin(arg));
    }
    ComplexValue { re: re.value(), im: im.value() }
}

/// Relative phase of a pair seen from `direction`.
pub fn omega(pair: &PairGeometry, direction: Direction) -> f64 {
    let [ux, uy, uz] = unit_vector(direction);
    pair.x_mn * ux + pair.y_mn * uy + pair.z_mn * uz + pair.alpha_mn
}

/// ΣA_n² + 2Σ_{n>m} A_nA_m cos ψ_mn over precomputed pairs; this is |AF|².
pub(crate) fn pair_sum(power_sum: f64, pairs: &[(f64, PairGeometry)], direction: Direction) -> f64 {
    let [ux, uy, uz] = unit_vector(direction);
    let mut acc = CompensatedSum::new();
    acc.add(power_sum);
    for (amp, p) in pairs {
        let om = p.x_mn * ux + p.y_mn * uy + p.z_mn * uz + p.alpha_mn;
        acc.add(2.0 * amp * cos(om));
    }
    acc.value().max(0.0)
}

/// |F(θ, φ)|² via the pair-sum expansion. Clamped at 0 against rounding at nulls.
pub fn radiation_intensity(array: &AntennaArray, pattern: ElementPattern, direction: Direction) -> f64 {
    let pairs: alloc::vec::Vec<_> = array.pairs().collect();
    element_power(pattern, direction.theta) * pair_sum(array.power_sum(), &pairs, direction)
}

/// Reusable evaluator for many directions over one array.
#[derive(Debug, Clone)]
pub struct IntensityEvaluator {
    power_sum: f64,
    pairs: alloc::vec::Vec<(f64, PairGeometry)>,
    pattern: ElementPattern,
}

impl IntensityEvaluator {
    pub fn new(array: &AntennaArray, pattern: ElementPattern) -> Self {
        Self { power_sum: array.power_sum(), pairs: array.pairs().collect(), pattern }
    }

    pub fn pattern(&self) -> ElementPattern {
        self.pattern
    }

    /// |AF(θ, φ)|² only (isotropic elements).
    pub fn array_power(&self, direction: Direction) -> f64 {
        pair_sum(self.power_sum, &self.pairs, direction)
    }

    pub fn intensity(&self, direction: Direction) -> f64 {
        element_power(self.pattern, direction.theta) * self.array_power(direction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::{generate_array, ArrayElement, Layout};
    use alloc::vec;
    use core::f64::consts::FRAC_PI_2;

    fn dir(t: f64, p: f64) -> Direction {
        Direction::new(t, p).unwrap()
    }

    #[test]
    fn element_factor_examples() {
        assert_eq!(element_factor(ElementPattern::new(0, 0), 1.2), 1.0);
        assert_eq!(element_factor(ElementPattern::new(1, 0), FRAC_PI_2), 1.0);
        let ef = element_factor(ElementPattern::new(1, 1), PI / 4.0);
        assert!((ef - 0.5).abs() < 1e-15);
        assert_eq!(element_factor(ElementPattern::new(0, 3), 0.0), 1.0);
        assert!(element_factor(ElementPattern::new(0, 1), 2.5) < 0.0);
    }

    #[test]
    fn unit_vectors() {
        let close = |a: [f64; 3], b: [f64; 3]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15);
        assert!(close(unit_vector(dir(0.0, 0.0)), [0.0, 0.0, 1.0]));
        assert!(close(unit_vector(dir(FRAC_PI_2, 0.0)), [1.0, 0.0, 0.0]));
        assert!(close(unit_vector(dir(FRAC_PI_2, FRAC_PI_2)), [0.0, 1.0, 0.0]));
    }

    #[test]
    fn direction_normalisation() {
        let d = Direction::new(PI + 5e-13, -FRAC_PI_2).unwrap();
        assert_eq!(d.theta(), PI);
        assert!((d.phi() - 1.5 * PI).abs() < 1e-15);
        assert_eq!(Direction::new(0.0, TAU).unwrap().phi(), 0.0);
        assert_eq!(Direction::new(-1e-6, 0.0), Err(Error::ThetaOutOfRange(-1e-6)));
        assert_eq!(Direction::new(0.0, f64::INFINITY), Err(Error::NonFiniteAngle));
    }

    #[test]
    fn two_element_array_factor() {
        let a = generate_array(Layout::LinearZ { count: 2, spacing: 0.5 }, 1.0, 0.0).unwrap();
        let broadside = array_factor(&a, dir(FRAC_PI_2, 0.3));
        assert!((broadside.re - 2.0).abs() < 1e-15 && broadside.im.abs() < 1e-15);
        let endfire = array_factor(&a, dir(0.0, 0.0));
        assert!(endfire.abs() < 1e-15);
        let iso = ElementPattern::ISOTROPIC;
        assert!((radiation_intensity(&a, iso, dir(FRAC_PI_2, 1.0)) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn single_element_everywhere_unit() {
        let a = AntennaArray::new(vec![ArrayElement::new(0.3, -0.2, 1.7, 1.0, 0.4)]).unwrap();
        for (t, p) in [(0.0, 0.0), (0.4, 2.0), (2.9, 6.0)] {
            assert!((array_factor(&a, dir(t, p)).abs() - 1.0).abs() < 1e-15);
            assert_eq!(radiation_intensity(&a, ElementPattern::ISOTROPIC, dir(t, p)), 1.0);
        }
    }

    #[test]
    fn omega_examples() {
        let zero = PairGeometry { x_mn: 0.0, y_mn: 0.0, z_mn: 0.0, alpha_mn: 0.0, beta: 0.0 };
        assert_eq!(omega(&zero, dir(1.0, 2.0)), 0.0);
        let p = PairGeometry { z_mn: PI, ..zero };
        assert_eq!(omega(&p, dir(0.0, 0.0)), PI);
    }
}
