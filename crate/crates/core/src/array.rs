//! Array geometry, excitations and per-pair deltas.
//!
//! Positions are in wavelengths and the wavenumber is fixed at 2π, so
//! `k * position` is a phase in radians.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::math::{cos, hypot, sin};

/// Wavenumber for positions expressed in wavelengths.
pub const WAVENUMBER: f64 = TAU;

/// One radiator: position (wavelengths), amplitude and phase (radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayElement {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub amplitude: f64,
    pub phase: f64,
}

impl ArrayElement {
    pub fn new(x: f64, y: f64, z: f64, amplitude: f64, phase: f64) -> Self {
        Self { x, y, z, amplitude, phase }
    }

    /// Same element with the phase given in degrees.
    pub fn with_phase_deg(x: f64, y: f64, z: f64, amplitude: f64, phase_deg: f64) -> Self {
        Self::new(x, y, z, amplitude, phase_deg.to_radians())
    }

    fn validate(&self, element: usize) -> Result<()> {
        let fields = [
            ("x", self.x),
            ("y", self.y),
            ("z", self.z),
            ("amplitude", self.amplitude),
            ("phase", self.phase),
        ];
        for (field, value) in fields {
            if !value.is_finite() {
                return Err(Error::NonFinite { element, field });
            }
        }
        if self.amplitude < 0.0 {
            return Err(Error::NegativeAmplitude { element });
        }
        Ok(())
    }
}

/// A validated, immutable set of elements.
#[derive(Debug, Clone, PartialEq)]
pub struct AntennaArray {
    elements: Vec<ArrayElement>,
}

impl AntennaArray {
    pub fn new(elements: Vec<ArrayElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyArray);
        }
        for (i, e) in elements.iter().enumerate() {
            e.validate(i + 1)?;
        }
        if !elements.iter().any(|e| e.amplitude > 0.0) {
            return Err(Error::NoRadiatingElement);
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[ArrayElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn wavenumber(&self) -> f64 {
        WAVENUMBER
    }

    /// Σ A_n².
    pub fn power_sum(&self) -> f64 {
        self.elements.iter().map(|e| e.amplitude * e.amplitude).sum()
    }

    /// Geometry of the pair (m, n), 1-based with m < n.
    pub fn pair_geometry(&self, m: usize, n: usize) -> Result<PairGeometry> {
        let len = self.len();
        for index in [m, n] {
            if index == 0 || index > len {
                return Err(Error::PairIndexOutOfRange { index, len });
            }
        }
        if m >= n {
            return Err(Error::PairOrder { m, n });
        }
        Ok(PairGeometry::between(&self.elements[m - 1], &self.elements[n - 1]))
    }

    /// Every pair with n > m, along with its amplitude product A_n A_m.
    pub fn pairs(&self) -> impl Iterator<Item = (f64, PairGeometry)> + '_ {
        let els = &self.elements;
        (0..els.len()).flat_map(move |n| {
            (0..n).map(move |m| {
                (els[n].amplitude * els[m].amplitude, PairGeometry::between(&els[m], &els[n]))
            })
        })
    }

    /// Copy with every position shifted by `(dx, dy, dz)` wavelengths.
    pub fn translated(&self, dx: f64, dy: f64, dz: f64) -> Result<Self> {
        Self::new(
            self.elements
                .iter()
                .map(|e| ArrayElement { x: e.x + dx, y: e.y + dy, z: e.z + dz, ..*e })
                .collect(),
        )
    }

    /// Copy with every position rotated about the z axis by `angle` radians.
    pub fn rotated_about_z(&self, angle: f64) -> Result<Self> {
        let (s, c) = (sin(angle), cos(angle));
        Self::new(
            self.elements
                .iter()
                .map(|e| ArrayElement { x: c * e.x - s * e.y, y: s * e.x + c * e.y, ..*e })
                .collect(),
        )
    }

    /// Copy with every phase shifted by `delta` radians.
    pub fn phase_shifted(&self, delta: f64) -> Result<Self> {
        Self::new(self.elements.iter().map(|e| ArrayElement { phase: e.phase + delta, ..*e }).collect())
    }

    /// Copy with every amplitude multiplied by `factor`.
    pub fn amplitude_scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.elements
                .iter()
                .map(|e| ArrayElement { amplitude: e.amplitude * factor, ..*e })
                .collect(),
        )
    }
}

/// Element pattern sin^u(θ)·cos^v(θ) with nonnegative integer exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementPattern {
    pub u: u32,
    pub v: u32,
}

impl ElementPattern {
    pub const ISOTROPIC: Self = Self { u: 0, v: 0 };

    pub fn new(u: u32, v: u32) -> Self {
        Self { u, v }
    }
}

/// Phase-scaled deltas between elements m and n (n minus m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGeometry {
    pub x_mn: f64,
    pub y_mn: f64,
    pub z_mn: f64,
    pub alpha_mn: f64,
    /// √(x_mn² + y_mn²), the transverse separation in radians.
    pub beta: f64,
}

impl PairGeometry {
    /// Deltas from `m` to `n`; valid in either order (swapping negates the
    /// signed fields and keeps `beta`).
    pub fn between(m: &ArrayElement, n: &ArrayElement) -> Self {
        let x_mn = WAVENUMBER * (n.x - m.x);
        let y_mn = WAVENUMBER * (n.y - m.y);
        let z_mn = WAVENUMBER * (n.z - m.z);
        Self { x_mn, y_mn, z_mn, alpha_mn: n.phase - m.phase, beta: hypot(x_mn, y_mn) }
    }
}

/// Canonical lattices for `generate_array`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Layout {
    /// `count` elements along +z starting at the origin.
    LinearZ { count: usize, spacing: f64 },
    /// `nx × ny` grid in the z = 0 plane.
    RectangularXy { nx: usize, ny: usize, spacing: f64 },
    /// `nx × ny × nz` lattice.
    Cubic { nx: usize, ny: usize, nz: usize, spacing: f64 },
    /// `count` elements equally spaced on a circle in the z = 0 plane, first at φ = 0.
    RingXy { count: usize, radius: f64 },
}

/// Builds a uniformly excited array on one of the canonical layouts.
pub fn generate_array(layout: Layout, amplitude: f64, phase: f64) -> Result<AntennaArray> {
    let check = |counts: &[usize], len: f64| -> Result<()> {
        if counts.contains(&0) {
            return Err(Error::ZeroCount);
        }
        if !(len > 0.0) || !len.is_finite() {
            return Err(Error::NonPositiveSpacing(len));
        }
        Ok(())
    };
    let el = |x, y, z| ArrayElement::new(x, y, z, amplitude, phase);
    let elements: Vec<ArrayElement> = match layout {
        Layout::LinearZ { count, spacing } => {
            check(&[count], spacing)?;
            (0..count).map(|i| el(0.0, 0.0, i as f64 * spacing)).collect()
        }
        Layout::RectangularXy { nx, ny, spacing } => {
            check(&[nx, ny], spacing)?;
            (0..nx)
                .flat_map(|i| (0..ny).map(move |j| (i, j)))
                .map(|(i, j)| el(i as f64 * spacing, j as f64 * spacing, 0.0))
                .collect()
        }
        Layout::Cubic { nx, ny, nz, spacing } => {
            check(&[nx, ny, nz], spacing)?;
            let mut v = Vec::with_capacity(nx * ny * nz);
            for i in 0..nx {
                for j in 0..ny {
                    for k in 0..nz {
                        v.push(el(i as f64 * spacing, j as f64 * spacing, k as f64 * spacing));
                    }
                }
            }
            v
        }
        Layout::RingXy { count, radius } => {
            check(&[count], radius)?;
            (0..count)
                .map(|i| {
                    let a = 2.0 * PI * i as f64 / count as f64;
                    el(radius * cos(a), radius * sin(a), 0.0)
                })
                .collect()
        }
    };
    AntennaArray::new(elements)
}
