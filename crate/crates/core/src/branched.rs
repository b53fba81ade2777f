//! Homology orders of branched cyclic covers and their asymptotics.
//!
//! `|H₁(X_r)| = |Res(Δ, t^r - 1)|`, with 0 standing for an infinite group.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arch::{self, ln_dyadic, RealInterval};
use crate::error::{Error, Result};
use crate::padic::{is_prime, valuation};
use crate::poly::resultant::{resultant_with_cyclotomic_power, PowerRemainders};
use crate::poly::IntPoly;
use crate::DEFAULT_PRECISION;

pub const DEFAULT_RMAX: usize = 400;
/// Sequences beyond this length are refused; orders grow like `e^{m·r}`.
pub const HARD_RMAX: usize = 2000;
/// Minimum number of finite orders a growth window must contain.
pub const MIN_WINDOW_ENTRIES: usize = 5;

fn require_knot_like(f: &IntPoly) -> Result<()> {
    if f.is_knot_like() {
        Ok(())
    } else {
        Err(Error::NotKnotPolynomial(f.value_at_one().to_string()))
    }
}

/// `|H₁(X_r)|` for the `r`-fold branched cyclic cover; 0 means infinite.
pub fn homology_order(f: &IntPoly, r: usize) -> Result<BigUint> {
    require_knot_like(f)?;
    Ok(resultant_with_cyclotomic_power(f, r)?.magnitude().clone())
}

fn serialize_orders<S: serde::Serializer>(orders: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(orders.len()))?;
    for o in orders {
        seq.serialize_element(&crate::json::ExactInt(&BigInt::from(o.clone())))?;
    }
    seq.end()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologySequence {
    pub poly: IntPoly,
    /// `orders[r - 1] = |H₁(X_r)|` for `r = 1..=r_max`.
    #[serde(serialize_with = "serialize_orders")]
    pub orders: Vec<BigUint>,
}

impl HomologySequence {
    pub fn r_max(&self) -> usize {
        self.orders.len()
    }

    /// The order for cover degree `r` (1-based).
    pub fn order(&self, r: usize) -> &BigUint {
        &self.orders[r - 1]
    }

    /// `(r, order)` pairs with finite homology.
    pub fn finite(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.orders.iter().enumerate().map(|(i, o)| (i + 1, o)).filter(|(_, o)| !o.is_zero())
    }
}

/// Orders for `r = 1..=r_max`. Remainders `t^r mod Δ` are produced in one
/// sequential pass; the resultants are evaluated in parallel.
pub fn homology_sequence(f: &IntPoly, r_max: usize) -> Result<HomologySequence> {
    require_knot_like(f)?;
    if r_max == 0 {
        return Err(Error::ZeroCoverDegree);
    }
    if r_max > HARD_RMAX {
        return Err(Error::RangeCap { r_max, cap: HARD_RMAX });
    }
    let c = f.coeffs();
    let orders = if f.degree() == 0 {
        let unit = c[0].magnitude().clone();
        (1..=r_max).map(|r| unit.pow(r as u32)).collect()
    } else {
        let mut rem = PowerRemainders::new(c);
        let mut snapshots = Vec::with_capacity(r_max);
        for _ in 0..r_max {
            rem.step();
            snapshots.push(rem.minus_one());
        }
        snapshots.par_iter().map(|s| s.resultant(c).magnitude().clone()).collect()
    };
    Ok(HomologySequence { poly: f.clone(), orders })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub window: (usize, usize),
    /// `(r, log(order)/r)` over finite orders in the window.
    pub per_r: Vec<(usize, f64)>,
    pub window_median: f64,
    pub mahler_reference: RealInterval,
    pub deviation: f64,
}

fn log_over_r(order: &BigUint, r: usize) -> f64 {
    ln_dyadic(order, 0).midpoint() / r as f64
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Default window `(r_max/2, r_max)`.
pub fn default_window(r_max: usize) -> (usize, usize) {
    ((r_max / 2).max(1), r_max)
}

/// Median of `log|H₁(X_r)|/r` over finite orders with `r` in `window`,
/// compared against the Mahler measure.
pub fn growth_estimate(seq: &HomologySequence, window: (usize, usize)) -> Result<GrowthReport> {
    let (lo, hi) = window;
    if lo == 0 || lo > hi || hi > seq.r_max() {
        return Err(Error::InvalidWindow { lo, hi, len: seq.r_max() });
    }
    let per_r: Vec<(usize, f64)> =
        seq.finite().filter(|(r, _)| (lo..=hi).contains(r)).map(|(r, o)| (r, log_over_r(o, r))).collect();
    if per_r.len() < MIN_WINDOW_ENTRIES {
        return Err(Error::SparseWindow { nonzero: per_r.len(), needed: MIN_WINDOW_ENTRIES });
    }
    let window_median = median(per_r.iter().map(|&(_, v)| v).collect());
    let mahler_reference = arch::mahler_measure(&seq.poly, DEFAULT_PRECISION)?;
    let deviation = (window_median - mahler_reference.midpoint()).abs();
    Ok(GrowthReport { window, per_r, window_median, mahler_reference, deviation })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Periodicity {
    pub periodic: bool,
    pub period: Option<usize>,
    /// `lcm{d : Φ_d | Δ}`, which every period divides.
    #[serde(serialize_with = "crate::json::exact")]
    pub cyclotomic_lcm: BigInt,
}

fn minimal_period(orders: &[BigUint]) -> usize {
    (1..=orders.len()).find(|&p| (p..orders.len()).all(|i| orders[i] == orders[i - p])).unwrap_or(orders.len())
}

/// Period of the order sequence when every root of `Δ` is a root of unity.
///
/// The orders are then periodic with period dividing `lcm{d : Φ_d | Δ}`,
/// since each factor `Res(Φ_d, t^r - 1)` depends only on `r mod d`. With
/// `r_max` at least twice that lcm the observed minimal period is checked
/// against it.
pub fn periodicity_check(f: &IntPoly, r_max: usize) -> Result<Periodicity> {
    require_knot_like(f)?;
    let lcm = arch::cyclotomic_lcm(f);
    if !arch::all_roots_of_unity(f) {
        return Ok(Periodicity { periodic: false, period: None, cyclotomic_lcm: lcm });
    }
    let seq = homology_sequence(f, r_max)?;
    let period = minimal_period(&seq.orders);
    if BigInt::from(r_max) >= &lcm * 2u32 && !(&lcm % period).is_zero() {
        return Err(Error::IdentityViolation(format!("period {period} does not divide {lcm} for {f}")));
    }
    Ok(Periodicity { periodic: true, period: Some(period), cyclotomic_lcm: lcm })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PPartProfile {
    pub prime: u64,
    /// `(r, v_p(order))` over finite orders.
    pub valuations: Vec<(usize, u64)>,
    /// Largest `v_p(order)/r` over the top half of the range.
    pub diagnostic: f64,
}

impl PPartProfile {
    /// Largest `v_p(order)/r` with `r` in `lo..=hi`, or 0 if there is none.
    pub fn max_ratio_in(&self, lo: usize, hi: usize) -> f64 {
        self.valuations
            .iter()
            .filter(|(r, _)| (lo..=hi).contains(r))
            .map(|&(r, v)| v as f64 / r as f64)
            .fold(0.0, f64::max)
    }
}

pub fn p_part_profile(seq: &HomologySequence, p: u64) -> Result<PPartProfile> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let valuations: Vec<(usize, u64)> =
        seq.finite().map(|(r, o)| (r, valuation(&BigInt::from(o.clone()), p))).collect();
    let mut profile = PPartProfile { prime: p, valuations, diagnostic: 0.0 };
    profile.diagnostic = profile.max_ratio_in(seq.r_max() / 2 + 1, seq.r_max());
    Ok(profile)
}
