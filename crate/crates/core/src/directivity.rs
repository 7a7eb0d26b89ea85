//! Closed-form normalization T and directivity.
//!
//! ```text
//! T = ½·B(u+1, v+½)·Σ A_n²
//!   + 2(−1)^v Σ_{n>m} Σ_{κ=0}^{u} C(u,κ) A_n A_m cos(α_mn) · ∂^{2(v+u−κ)}/∂z^{2(v+u−κ)} [sin r / r]
//! D(θ, φ) = |F(θ, φ)|² / T
//! ```
//!
//! with F the element factor times the array factor and r = √(β_mn² + z_mn²). A single isotropic element gives T = 1.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::array::{AntennaArray, ElementPattern};
use crate::derivative::DerivativeSet;
use crate::error::{Error, Result};
use crate::math::{cos, log10, sin, sqrt, CompensatedSum};
use crate::pattern::{Direction, IntensityEvaluator};
use crate::special::{beta_half, rational_to_f64, sinc};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationBreakdown {
    pub self_term: f64,
    pub cross_term: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectivityResult {
    pub linear: f64,
    /// 10·log₁₀(linear); −∞ at a null.
    pub dbi: f64,
    pub direction: Direction,
    pub breakdown: NormalizationBreakdown,
}

pub fn to_dbi(linear: f64) -> f64 {
    if linear > 0.0 {
        10.0 * log10(linear)
    } else {
        f64::NEG_INFINITY
    }
}

/// ½·B(u+1, v+½)·Σ A_n².
pub fn normalization_self(array: &AntennaArray, pattern: ElementPattern) -> f64 {
    let half = beta_half(pattern.u, pattern.v) / BigRational::from_integer(BigInt::from(2));
    array.power_sum() * rational_to_f64(&half)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// 2(−1)^v Σ_{n>m} Σ_κ C(u,κ) A_n A_m cos(α_mn) D_{v+u−κ}(β_mn, z_mn).
pub fn normalization_cross(array: &AntennaArray, pattern: ElementPattern) -> f64 {
    let (u, v) = (pattern.u, pattern.v);
    let derivatives = DerivativeSet::new((0..=u).map(|kappa| v + u - kappa));
    let weights: Vec<(u32, f64)> = (0..=u).map(|kappa| (v + u - kappa, binomial(u, kappa))).collect();
    let mut acc = CompensatedSum::new();
    for (amp, pair) in array.pairs() {
        let w = amp * cos(pair.alpha_mn);
        if w == 0.0 {
            continue;
        }
        for &(p, c) in &weights {
            acc.add(w * c * derivatives.eval(p, pair.beta, pair.z_mn));
        }
    }
    let sign = if v % 2 == 0 { 2.0 } else { -2.0 };
    sign * acc.value()
}

/// Self and cross terms of T and their sum, which must be positive.
pub fn normalization(array: &AntennaArray, pattern: ElementPattern) -> Result<NormalizationBreakdown> {
    let self_term = normalization_self(array, pattern);
    let cross_term = normalization_cross(array, pattern);
    let total = self_term + cross_term;
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::NonPositiveNormalization(total));
    }
    Ok(NormalizationBreakdown { self_term, cross_term, total })
}

pub fn directivity(array: &AntennaArray, pattern: ElementPattern, direction: Direction) -> Result<DirectivityResult> {
    let breakdown = normalization(array, pattern)?;
    let intensity = IntensityEvaluator::new(array, pattern).intensity(direction);
    Ok(result_from(intensity, direction, breakdown))
}

fn result_from(intensity: f64, direction: Direction, breakdown: NormalizationBreakdown) -> DirectivityResult {
    let linear = intensity / breakdown.total;
    DirectivityResult { linear, dbi: to_dbi(linear), direction, breakdown }
}

/// Element patterns with hand-expanded normalizations:
/// (u, v) = (0, 0), (0, 1), (1, 0), (1, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecializedCase {
    Isotropic,
    Cos,
    Sin,
    SinCos,
}

impl SpecializedCase {
    pub fn pattern(self) -> ElementPattern {
        match self {
            SpecializedCase::Isotropic => ElementPattern::new(0, 0),
            SpecializedCase::Cos => ElementPattern::new(0, 1),
            SpecializedCase::Sin => ElementPattern::new(1, 0),
            SpecializedCase::SinCos => ElementPattern::new(1, 1),
        }
    }
}

/// Hand expansion of ∂²/∂z² [sin r / r], the cos θ cross-term kernel.
pub fn cos_kernel_expanded(beta: f64, z: f64) -> f64 {
    let (b2, z2) = (beta * beta, z * z);
    let w = b2 + z2;
    let r = sqrt(w);
    (b2 - 2.0 * z2) * cos(r) / (w * w) - ((b2 - 2.0) * z2 + b2 + z2 * z2) * sin(r) / (w * w * r)
}

/// Hand expansion of the sin θ cross-term kernel as originally derived.
/// It should equal D₁ + D₀ but does not; kept to document the discrepancy.
pub fn sin_kernel_expanded(beta: f64, z: f64) -> f64 {
    let (b2, z2) = (beta * beta, z * z);
    let (b4, b6, z4) = (b2 * b2, b2 * b2 * b2, z2 * z2);
    let w = b2 + z2;
    let r = sqrt(w);
    let w4 = w * w * w * w;
    let sin_part = (b6 * (-(z2 - 2.0)) - b4 * (4.0 * z4 + 27.0 * z2 + 9.0) - b2 * z2 * (5.0 * z4 + 15.0 * z2 - 72.0)
        - 2.0 * z4 * (z4 - 7.0 * z2 + 12.0))
        * sin(r)
        / (w4 * r);
    let cos_part = (b6 + 3.0 * b4 * (2.0 * z2 + 3.0) - b2 * z2 * (z2 + 72.0) - 6.0 * z4 * (z2 - 4.0)) * cos(r) / w4;
    sin_part + cos_part
}

/// Hand expansion of the sin θ·cos θ cross-term kernel as originally derived.
/// It should equal −(D₂ + D₁) but does not; kept to document the discrepancy.
pub fn sin_cos_kernel_expanded(beta: f64, z: f64) -> f64 {
    let (b2, z2) = (beta * beta, z * z);
    let (b4, b6, b8, b10) = (b2 * b2, b2 * b2 * b2, b2 * b2 * b2 * b2, b2 * b2 * b2 * b2 * b2);
    let (z4, z6) = (z2 * z2, z2 * z2 * z2);
    let w = b2 + z2;
    let r = sqrt(w);
    let w6 = w * w * w * w * w * w;
    let w13_2 = w6 * r;
    let sin_part = sin(r)
        * ((-3.0 * b10 + b8 * (z4 - 24.0 * z2 - 81.0) + b6 * (5.0 * z6 + 114.0 * z4 + 1611.0 * z2 + 225.0)) / w13_2
            + (3.0 * b4 * z2 * (3.0 * z6 + 82.0 * z4 - 292.0 * z2 - 1350.0)
                + b2 * z4 * (7.0 * z6 + 69.0 * z4 - 2184.0 * z2 + 5400.0))
                / w13_2
            + (2.0 * z6 * (z6 - 21.0 * z4 + 192.0 * z2 - 360.0)) / w13_2);
    let cos_part = cos(r)
        * ((6.0 * b8 * (z2 - 1.0) + b6 * (29.0 * z4 + 336.0 * z2 + 225.0) + 6.0 * b4 * z2 * (5.0 * z4 - 71.0 * z2 - 675.0))
            / w6
            - (3.0 * b2 * z4 * (z4 + 208.0 * z2 - 1800.0) + 2.0 * z6 * (5.0 * z4 - 72.0 * z2 + 360.0)) / w6);
    sin_part + cos_part
}

/// Normalization from the hand-expanded kernels.
///
/// The isotropic and cos θ cases agree with [`normalization`]; the sin θ and
/// sin θ·cos θ expansions do not. The expanded kernels are singular for
/// co-located elements (r = 0) and return NaN there.
pub fn specialized_normalization(array: &AntennaArray, case: SpecializedCase) -> f64 {
    let power = array.power_sum();
    let (self_term, sign, bracket): (f64, f64, fn(f64, f64) -> f64) = match case {
        SpecializedCase::Isotropic => (power, 2.0, |b, z| sinc(crate::math::hypot(b, z))),
        SpecializedCase::Cos => (power / 3.0, -2.0, cos_kernel_expanded),
        SpecializedCase::Sin => (2.0 * power / 3.0, 2.0, sin_kernel_expanded),
        SpecializedCase::SinCos => (2.0 * power / 15.0, 2.0, sin_cos_kernel_expanded),
    };
    let cross: CompensatedSum = array
        .pairs()
        .map(|(amp, p)| amp * cos(p.alpha_mn) * bracket(p.beta, p.z_mn))
        .collect();
    self_term + sign * cross.value()
}

/// Regular θ×φ grid of directivity values sharing one normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub theta_steps: usize,
    pub phi_steps: usize,
    pub breakdown: NormalizationBreakdown,
    /// Linear directivity, row-major in θ then φ.
    pub values: Vec<f64>,
}

impl ScanGrid {
    pub fn direction(&self, i: usize, j: usize) -> Direction {
        grid_direction(self.theta_steps, self.phi_steps, i, j)
    }

    pub fn degrees(&self, i: usize, j: usize) -> (f64, f64) {
        grid_degrees(self.theta_steps, self.phi_steps, i, j)
    }

    pub fn linear(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.phi_steps + j]
    }

    pub fn result(&self, i: usize, j: usize) -> DirectivityResult {
        let linear = self.linear(i, j);
        DirectivityResult { linear, dbi: to_dbi(linear), direction: self.direction(i, j), breakdown: self.breakdown }
    }

    /// First grid point (row-major) attaining the maximum.
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = 0;
        for (idx, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = idx;
            }
        }
        (best / self.phi_steps, best % self.phi_steps)
    }

    pub fn max(&self) -> DirectivityResult {
        let (i, j) = self.argmax();
        self.result(i, j)
    }
}

/// Grid point (i, j) in degrees, computed directly so that e.g. 30° prints as 30.
pub fn grid_degrees(theta_steps: usize, phi_steps: usize, i: usize, j: usize) -> (f64, f64) {
    (180.0 * i as f64 / (theta_steps - 1) as f64, 360.0 * j as f64 / phi_steps as f64)
}

/// θ_i = π·i/(θ_steps − 1), φ_j = 2π·j/φ_steps.
pub fn grid_direction(theta_steps: usize, phi_steps: usize, i: usize, j: usize) -> Direction {
    let theta = if i + 1 == theta_steps { PI } else { PI * i as f64 / (theta_steps - 1) as f64 };
    let phi = TAU * j as f64 / phi_steps as f64;
    Direction::new(theta, phi).expect("grid directions lie in range")
}

/// Row-by-row scan evaluator; rows are independent, so callers may farm
/// them out to workers and reassemble with [`ScanPlan::assemble`].
#[derive(Debug, Clone)]
pub struct ScanPlan {
    theta_steps: usize,
    phi_steps: usize,
    breakdown: NormalizationBreakdown,
    evaluator: IntensityEvaluator,
    intensity_only: bool,
}

impl ScanPlan {
    pub fn new(array: &AntennaArray, pattern: ElementPattern, theta_steps: usize, phi_steps: usize) -> Result<Self> {
        if theta_steps < 2 || phi_steps < 2 {
            return Err(Error::TooFewSteps { theta_steps, phi_steps });
        }
        Ok(Self {
            theta_steps,
            phi_steps,
            breakdown: normalization(array, pattern)?,
            evaluator: IntensityEvaluator::new(array, pattern),
            intensity_only: false,
        })
    }

    /// Same grid, but rows hold the unnormalized |F|².
    pub fn intensity(array: &AntennaArray, pattern: ElementPattern, theta_steps: usize, phi_steps: usize) -> Result<Self> {
        if theta_steps < 2 || phi_steps < 2 {
            return Err(Error::TooFewSteps { theta_steps, phi_steps });
        }
        Ok(Self {
            theta_steps,
            phi_steps,
            breakdown: NormalizationBreakdown { self_term: 1.0, cross_term: 0.0, total: 1.0 },
            evaluator: IntensityEvaluator::new(array, pattern),
            intensity_only: true,
        })
    }

    pub fn theta_steps(&self) -> usize {
        self.theta_steps
    }

    pub fn phi_steps(&self) -> usize {
        self.phi_steps
    }

    pub fn breakdown(&self) -> NormalizationBreakdown {
        self.breakdown
    }

    pub fn is_intensity_only(&self) -> bool {
        self.intensity_only
    }

    pub fn row_into(&self, i: usize, out: &mut [f64]) {
        let theta = grid_direction(self.theta_steps, self.phi_steps, i, 0).theta();
        let (st, ct) = (sin(theta), cos(theta));
        let element = {
            let p = self.evaluator.pattern();
            crate::math::powi(st * st, p.u) * crate::math::powi(ct * ct, p.v)
        };
        let inv_total = 1.0 / self.breakdown.total;
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = if element == 0.0 {
                0.0
            } else {
                let d = grid_direction(self.theta_steps, self.phi_steps, i, j);
                element * self.evaluator.array_power(d) * inv_total
            };
        }
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.phi_steps];
        self.row_into(i, &mut out);
        out
    }

    pub fn assemble(&self, values: Vec<f64>) -> ScanGrid {
        assert_eq!(values.len(), self.theta_steps * self.phi_steps);
        ScanGrid { theta_steps: self.theta_steps, phi_steps: self.phi_steps, breakdown: self.breakdown, values }
    }
}

/// Serial scan; see [`ScanPlan`] for the row-parallel building blocks.
pub fn scan(array: &AntennaArray, pattern: ElementPattern, theta_steps: usize, phi_steps: usize) -> Result<ScanGrid> {
    let plan = ScanPlan::new(array, pattern, theta_steps, phi_steps)?;
    let mut values = alloc::vec![0.0; theta_steps * phi_steps];
    for (i, row) in values.chunks_mut(phi_steps).enumerate() {
        plan.row_into(i, row);
    }
    Ok(plan.assemble(values))
}
