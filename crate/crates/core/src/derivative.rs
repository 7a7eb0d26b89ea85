//! Exact z-derivatives of sin(r)/r with r = √(β² + z²).
//!
//! Every derivative is a finite sum of terms `c · z^a · r^{-q} · trig(r)`.
//! That basis is closed under d/dz:
//!
//! ```text
//! d(z^a)/dz      = a z^{a-1}
//! d(r^{-q})/dz   = -q z r^{-q-2}
//! d(sin r)/dz    =  z r^{-1} cos r
//! d(cos r)/dz    = -z r^{-1} sin r
//! ```
//!
//! so each order is obtained from the previous one by rewriting, with exact
//! rational coefficients. β never appears explicitly; it enters through r at
//! evaluation time. For small r the term sums cancel catastrophically, and
//! [`eval_series`] differentiates the entire series of sin(√w)/√w instead.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use spin::Mutex;

use crate::error::{Error, Result};
use crate::math::{cos, hypot, powi, sin, CompensatedSum, DoubleDouble};
use crate::special::{rational_to_f64, ExactRational};

/// Radius below which [`sinc_derivative`] switches to the series.
pub const SERIES_SWITCH_RADIUS: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trig {
    Sin,
    Cos,
}

/// `coeff · z^zpow · r^{-rpow} · trig(r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: ExactRational,
    pub zpow: u32,
    pub rpow: u32,
    pub trig: Trig,
}

/// Canonical sum of terms: one entry per (rpow, zpow, trig), no zero
/// coefficients, sorted by that key.
#[derive(Debug, Clone, PartialEq)]
pub struct TermSum {
    order: u32,
    terms: Vec<Term>,
    // double-double copies of the coefficients for evaluation
    weights: Vec<DoubleDouble>,
}

type Key = (u32, u32, Trig);

impl TermSum {
    fn from_map(order: u32, map: BTreeMap<Key, ExactRational>) -> Self {
        let terms: Vec<Term> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((rpow, zpow, trig), coeff)| Term { coeff, zpow, rpow, trig })
            .collect();
        let weights = terms
            .iter()
            .map(|t| {
                let hi = rational_to_f64(&t.coeff);
                let rest = &t.coeff - BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
                DoubleDouble { hi, lo: rational_to_f64(&rest) }
            })
            .collect();
        Self { order, terms, weights }
    }

    /// sin(r)/r itself.
    pub fn seed() -> Self {
        let mut map = BTreeMap::new();
        map.insert((1, 0, Trig::Sin), BigRational::from_integer(BigInt::from(1)));
        Self::from_map(0, map)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates the sum at any r > 0 without the small-radius guard of
    /// [`eval_terms`]; below r = 1 the terms cancel and accuracy degrades.
    pub fn evaluate(&self, beta: f64, z: f64) -> f64 {
        eval_terms_unchecked(self, hypot(beta, z), z)
    }

    /// d/dz of this sum.
    pub fn derive(&self) -> Self {
        let mut map: BTreeMap<Key, ExactRational> = BTreeMap::new();
        let mut push = |rpow: u32, zpow: u32, trig: Trig, c: ExactRational| {
            let slot = map.entry((rpow, zpow, trig)).or_insert_with(BigRational::zero);
            *slot += c;
        };
        for t in &self.terms {
            if t.zpow > 0 {
                push(t.rpow, t.zpow - 1, t.trig, &t.coeff * BigInt::from(t.zpow));
            }
            push(t.rpow + 2, t.zpow + 1, t.trig, -(&t.coeff * BigInt::from(t.rpow)));
            match t.trig {
                Trig::Sin => push(t.rpow + 1, t.zpow + 1, Trig::Cos, t.coeff.clone()),
                Trig::Cos => push(t.rpow + 1, t.zpow + 1, Trig::Sin, -t.coeff.clone()),
            }
        }
        Self::from_map(self.order + 1, map)
    }
}

impl fmt::Display for TermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d^{}/dz^{} [sin(r)/r], r = sqrt(beta^2 + z^2): {} terms", self.order, self.order, self.len())?;
        for t in &self.terms {
            let sign = if t.coeff.is_negative() { '-' } else { '+' };
            let trig = match t.trig {
                Trig::Sin => "sin",
                Trig::Cos => "cos",
            };
            writeln!(f, "  {sign} {} * z^{} * r^-{} * {trig}(r)", t.coeff.abs(), t.zpow, t.rpow)?;
        }
        Ok(())
    }
}

static MEMO: Mutex<Vec<Arc<TermSum>>> = Mutex::new(Vec::new());

/// Symbolic `d^order/dz^order [sin(r)/r]`, built once per order and shared.
pub fn derive_terms(order: u32) -> Arc<TermSum> {
    let mut memo = MEMO.lock();
    if memo.is_empty() {
        memo.push(Arc::new(TermSum::seed()));
    }
    while memo.len() <= order as usize {
        let next = memo.last().expect("seeded").derive();
        memo.push(Arc::new(next));
    }
    Arc::clone(&memo[order as usize])
}

/// Σ coeff · z^zpow · r^{-rpow} · trig(r). Requires r >= [`SERIES_SWITCH_RADIUS`].
pub fn eval_terms(terms: &TermSum, beta: f64, z: f64) -> Result<f64> {
    let r = hypot(beta, z);
    if !(r >= SERIES_SWITCH_RADIUS) {
        return Err(Error::RadiusBelowThreshold { r, threshold: SERIES_SWITCH_RADIUS });
    }
    Ok(eval_terms_unchecked(terms, r, z))
}

/// Below this radius the term sums are accumulated in double-double.
const EXTENDED_RADIUS: f64 = 12.0;

// z^a r^{-q} = (z/r)^a r^{-(q-a)}; q - a >= 1 holds for every reachable term.
fn eval_terms_unchecked(terms: &TermSum, r: f64, z: f64) -> f64 {
    if r < EXTENDED_RADIUS {
        return eval_terms_extended(terms, r, z);
    }
    let t = z / r;
    let inv_r = 1.0 / r;
    let mut sin_part = CompensatedSum::new();
    let mut cos_part = CompensatedSum::new();
    for (term, w) in terms.terms.iter().zip(&terms.weights) {
        let value = w.hi * powi(t, term.zpow) * powi(inv_r, term.rpow - term.zpow);
        match term.trig {
            Trig::Sin => sin_part.add(value),
            Trig::Cos => cos_part.add(value),
        }
    }
    let mut out = CompensatedSum::new();
    out.add(sin(r) * sin_part.value());
    out.add(cos(r) * cos_part.value());
    out.value()
}

fn dd_powi(x: DoubleDouble, n: u32) -> DoubleDouble {
    let (mut base, mut exp, mut acc) = (x, n, DoubleDouble::ONE);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.mul(base);
        }
        base = base.mul(base);
        exp >>= 1;
    }
    acc
}

// sin r and cos r to double-double accuracy by their Maclaurin series.
fn dd_sin_cos(r: f64) -> (DoubleDouble, DoubleDouble) {
    let r2 = DoubleDouble::square_of(r);
    let mut s_term = DoubleDouble { hi: r, lo: 0.0 };
    let mut c_term = DoubleDouble::ONE;
    let (mut s, mut c) = (s_term, c_term);
    let mut k = 1u32;
    while k < 60 {
        let n = f64::from(2 * k);
        c_term = c_term.mul(r2).div_f64((n - 1.0) * n).neg();
        s_term = s_term.mul(r2).div_f64(n * (n + 1.0)).neg();
        c = c.add(c_term);
        s = s.add(s_term);
        if crate::math::abs(c_term.hi) < 1e-34 && crate::math::abs(s_term.hi) < 1e-34 {
            break;
        }
        k += 1;
    }
    (s, c)
}

fn eval_terms_extended(terms: &TermSum, r: f64, z: f64) -> f64 {
    let inv_r = DoubleDouble::ONE.div_f64(r);
    let t = inv_r.mul_f64(z);
    let zero = DoubleDouble { hi: 0.0, lo: 0.0 };
    let (mut sin_part, mut cos_part) = (zero, zero);
    for (term, &w) in terms.terms.iter().zip(&terms.weights) {
        let value = w.mul(dd_powi(t, term.zpow)).mul(dd_powi(inv_r, term.rpow - term.zpow));
        match term.trig {
            Trig::Sin => sin_part = sin_part.add(value),
            Trig::Cos => cos_part = cos_part.add(value),
        }
    }
    let (s, c) = dd_sin_cos(r);
    s.mul(sin_part).add(c.mul(cos_part)).to_f64()
}

const FACTORIALS: [f64; 171] = {
    let mut table = [1.0; 171];
    let mut i = 1;
    while i < 171 {
        table[i] = table[i - 1] * i as f64;
        i += 1;
    }
    table
};

fn factorial(n: u32) -> f64 {
    FACTORIALS[n as usize]
}

const SERIES_MAX_K: u32 = 84;

/// ∂^{2p}/∂z^{2p} of the Maclaurin series sin(√w)/√w = Σ_k (−1)^k w^k/(2k+1)!, w = β² + z².
///
/// Each w^k = Σ_j C(k,j) β^{2(k−j)} z^{2j} differentiates term by term.
/// Accurate for small r; usable but cancellation-prone once r grows past a few units.
pub fn eval_series(p: u32, beta: f64, z: f64) -> f64 {
    let b2 = beta * beta;
    let z2 = z * z;
    let mut total = CompensatedSum::new();
    let mut previous_group = f64::INFINITY;
    for k in p..=SERIES_MAX_K {
        let mut group = CompensatedSum::new();
        let mut group_abs = 0.0;
        let scale = factorial(k) / factorial(2 * k + 1);
        for j in p..=k {
            let c = scale / (factorial(j) * factorial(k - j)) * factorial(2 * j) / factorial(2 * j - 2 * p);
            let v = c * powi(b2, k - j) * powi(z2, j - p);
            group.add(v);
            group_abs += v;
        }
        let g = group.value();
        total.add(if k % 2 == 0 { g } else { -g });
        if k > p && group_abs < 1e-18 && group_abs < previous_group {
            break;
        }
        previous_group = group_abs;
    }
    total.value()
}

/// ∂^{2p}/∂z^{2p} [sin(r)/r] at (β, z): the series for r < 1, term algebra otherwise.
pub fn sinc_derivative(p: u32, beta: f64, z: f64) -> f64 {
    let r = hypot(beta, z);
    if r < SERIES_SWITCH_RADIUS {
        eval_series(p, beta, z)
    } else {
        eval_terms_unchecked(&derive_terms(2 * p), r, z)
    }
}

/// Term sums for a fixed set of half-orders, fetched from the memo once.
pub(crate) struct DerivativeSet {
    orders: Vec<(u32, Arc<TermSum>)>,
}

impl DerivativeSet {
    pub fn new(half_orders: impl IntoIterator<Item = u32>) -> Self {
        Self { orders: half_orders.into_iter().map(|p| (p, derive_terms(2 * p))).collect() }
    }

    pub fn eval(&self, p: u32, beta: f64, z: f64) -> f64 {
        let r = hypot(beta, z);
        if r < SERIES_SWITCH_RADIUS {
            return eval_series(p, beta, z);
        }
        let terms = &self.orders.iter().find(|(q, _)| *q == p).expect("order registered").1;
        eval_terms_unchecked(terms, r, z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn int(n: i64) -> ExactRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn order_zero_is_seed() {
        let t = derive_terms(0);
        assert_eq!(t.terms(), &[Term { coeff: int(1), zpow: 0, rpow: 1, trig: Trig::Sin }]);
    }

    #[test]
    fn order_one_by_hand() {
        let t = derive_terms(1);
        assert_eq!(
            t.terms(),
            &[
                Term { coeff: int(1), zpow: 1, rpow: 2, trig: Trig::Cos },
                Term { coeff: int(-1), zpow: 1, rpow: 3, trig: Trig::Sin },
            ]
        );
    }

    #[test]
    fn order_two_on_axis_matches_hand_derivative() {
        // d²/dz²[sin z/z] = −sin z/z − 2cos z/z² + 2sin z/z³
        let t = derive_terms(2);
        for z in [1.3, 2.0, 5.5, 17.0] {
            let want = -sin(z) / z - 2.0 * cos(z) / (z * z) + 2.0 * sin(z) / (z * z * z);
            assert!((eval_terms(&t, 0.0, z).unwrap() - want).abs() < 1e-15);
        }
        let at_pi = eval_terms(&t, 0.0, PI).unwrap();
        assert!((at_pi - 2.0 / (PI * PI)).abs() < 1e-15);
    }

    #[test]
    fn order_zero_matches_sinc() {
        let got = eval_terms(&derive_terms(0), 3.0, 4.0).unwrap();
        assert!((got - sin(5.0) / 5.0).abs() < 1e-16);
    }

    #[test]
    fn eval_terms_refuses_small_radius() {
        assert!(matches!(
            eval_terms(&derive_terms(2), 0.3, 0.4),
            Err(Error::RadiusBelowThreshold { .. })
        ));
    }

    #[test]
    fn series_at_origin() {
        // Maclaurin coefficients of sin z/z: ∂^{2p} at 0 = (−1)^p/(2p+1)
        for p in 0..10u32 {
            let want = if p % 2 == 0 { 1.0 } else { -1.0 } / f64::from(2 * p + 1);
            assert!((eval_series(p, 0.0, 0.0) - want).abs() < 1e-16, "p={p}");
            assert_eq!(sinc_derivative(p, 0.0, 0.0), eval_series(p, 0.0, 0.0));
        }
        assert!((eval_series(1, 0.0, 0.0) + 1.0 / 3.0).abs() < 1e-16);
        let s = eval_series(0, 0.1, 0.2);
        assert!((s - crate::special::sinc_radius(0.1, 0.2)).abs() < 1e-16);
    }

    // 40-digit reference values (mpmath numerical differentiation).
    #[test]
    fn reference_points() {
        let cases = [
            (1u32, 2.0, 3.0, 0.14972518699839011656),
            (2, 2.0, 3.0, -0.12042729733922373947),
            (3, 0.5, 0.7, -0.11485828170390232292),
            (4, 10.0, -20.0, -0.0079650059131602618285),
            (6, 30.0, 40.0, -0.0010570510928919210564),
        ];
        for (p, b, z, want) in cases {
            let got = sinc_derivative(p, b, z);
            assert!(((got - want) / want).abs() < 1e-12, "p={p} ({b},{z}): {got} vs {want}");
        }
    }

    #[test]
    fn coefficients_are_integers_and_even_orders_have_even_powers() {
        for order in [2u32, 4, 8, 12] {
            for t in derive_terms(order).terms() {
                assert!(t.coeff.is_integer());
                assert_eq!(t.zpow % 2, 0);
                assert!(t.rpow > t.zpow);
            }
        }
    }

    #[test]
    fn display_lists_terms() {
        let s = alloc::format!("{}", derive_terms(1));
        assert!(s.contains("+ 1 * z^1 * r^-2 * cos(r)"));
        assert!(s.contains("- 1 * z^1 * r^-3 * sin(r)"));
    }
}
