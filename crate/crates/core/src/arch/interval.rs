use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// A closed interval `[lo, hi]` of reals with `f64` endpoints.
///
/// Arithmetic rounds outward, so an interval computed from enclosures is
/// itself an enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealInterval {
    pub lo: f64,
    pub hi: f64,
}

impl RealInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        RealInterval { lo, hi }
    }

    pub const fn point(x: f64) -> Self {
        RealInterval { lo: x, hi: x }
    }

    pub const ZERO: RealInterval = RealInterval::point(0.0);

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersect(&self, other: &RealInterval) -> Option<RealInterval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(RealInterval { lo, hi })
    }

    pub fn hull(&self, other: &RealInterval) -> RealInterval {
        RealInterval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Distance between the two intervals (zero when they overlap).
    pub fn distance(&self, other: &RealInterval) -> f64 {
        (self.lo - other.hi).max(other.lo - self.hi).max(0.0)
    }

    /// Multiplication by a nonnegative integer count.
    pub fn times(&self, k: usize) -> RealInterval {
        let k = k as f64;
        RealInterval { lo: mul_down(self.lo, k), hi: mul_up(self.hi, k) }
    }

    /// Division by a positive exactly representable scalar.
    pub fn div_exact_scalar(&self, k: f64) -> RealInterval {
        RealInterval { lo: div_down(self.lo, k), hi: div_up(self.hi, k) }
    }
}

impl std::ops::Add for RealInterval {
    type Output = RealInterval;

    fn add(self, rhs: RealInterval) -> RealInterval {
        RealInterval { lo: add_down(self.lo, rhs.lo), hi: add_up(self.hi, rhs.hi) }
    }
}

impl std::iter::Sum for RealInterval {
    fn sum<I: Iterator<Item = RealInterval>>(iter: I) -> Self {
        iter.fold(RealInterval::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.15e}, {:.15e}]", self.lo, self.hi)
    }
}

// Directed rounding by one ulp. Adding zero is exact and is kept exact so
// that provably zero contributions stay zero.

fn add_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        b
    } else if b == 0.0 {
        a
    } else {
        (a + b).next_down()
    }
}

fn add_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        b
    } else if b == 0.0 {
        a
    } else {
        (a + b).next_up()
    }
}

fn mul_down(a: f64, k: f64) -> f64 {
    if a == 0.0 || k == 1.0 {
        a * k
    } else {
        (a * k).next_down()
    }
}

fn mul_up(a: f64, k: f64) -> f64 {
    if a == 0.0 || k == 1.0 {
        a * k
    } else {
        (a * k).next_up()
    }
}

fn div_down(a: f64, k: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        (a / k).next_down()
    }
}

fn div_up(a: f64, k: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        (a / k).next_up()
    }
}

/// Enclosure of `ln(x · 2^exp2)` for a positive integer `x`.
pub fn ln_dyadic(x: &BigUint, exp2: i64) -> RealInterval {
    assert!(!x.is_zero(), "logarithm of zero");
    let bits = x.bits() as i64;
    if x.is_one() && exp2 == 0 {
        return RealInterval::ZERO;
    }
    // x lies in [m, m + 1) · 2^shift with m exactly representable
    let shift = (bits - 53).max(0);
    let m = (x >> shift as u64).to_f64().expect("53-bit integer fits f64");
    let k = (shift + exp2) as f64;
    let ln2 = std::f64::consts::LN_2;
    let lo = m.ln() + k * ln2;
    let hi = if shift == 0 { lo } else { (m + 1.0).ln() + k * ln2 };
    let slack = 4.0 * f64::EPSILON * (m.ln().abs() + k.abs() * ln2 + 1.0);
    RealInterval { lo: lo - slack, hi: hi + slack }
}

/// Enclosure of `ln p` for a positive machine integer.
pub fn ln_u64(p: u64) -> RealInterval {
    ln_dyadic(&BigUint::from(p), 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_encloses() {
        for x in [1u64, 2, 3, 10, 12345, u64::MAX] {
            let iv = ln_u64(x);
            assert!(iv.contains((x as f64).ln()), "{x}: {iv}");
            assert!(iv.width() < 1e-13);
        }
        let big = BigUint::from(3u32).pow(400);
        let iv = ln_dyadic(&big, -600);
        let want = 400.0 * 3f64.ln() - 600.0 * std::f64::consts::LN_2;
        assert!(iv.contains(want) || (iv.midpoint() - want).abs() < 1e-12, "{iv} vs {want}");
        assert!(iv.width() < 1e-12);
    }

    #[test]
    fn ln_of_one_is_exact_zero() {
        assert_eq!(ln_u64(1), RealInterval::ZERO);
    }

    #[test]
    fn zero_addition_stays_exact() {
        let a = RealInterval::ZERO + RealInterval::ZERO;
        assert_eq!(a, RealInterval::ZERO);
        let b = RealInterval::point(1.0) + RealInterval::point(2.0);
        assert!(b.contains(3.0) && b.lo < 3.0 && b.hi > 3.0);
    }
}
