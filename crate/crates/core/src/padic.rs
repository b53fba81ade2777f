//! Finite places: Newton polygons, per-prime entropies, the entropy
//! spectrum over all places, and the exact leading-coefficient identity.
//!
//! A Newton polygon segment of slope `s` and length `ℓ` accounts for `ℓ`
//! roots with `|α|_p = p^s`, so the entropy at `p` is `e_p · log p` with
//! `e_p` the total rise of the positive-slope segments. Everything here is
//! exact; logarithms appear only in the `value` fields.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arch::{self, ln_u64, RealInterval};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Trial division bound for factoring leading coefficients.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// A place of `Q`: a finite prime or the archimedean place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn rational_str<S: Serializer>(q: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}

fn opt_rational_str<S: Serializer>(q: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.collect_str(q),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "rational_str")]
    pub slope: Rational64,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub prime: u64,
    /// `(i, v_p(a_i))` for every nonzero coefficient.
    pub points: Vec<(usize, u64)>,
    /// Lower convex hull, left to right, without collinear interior points.
    pub vertices: Vec<(usize, u64)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// `Σ slope·length` over positive slopes.
    pub fn positive_rise(&self) -> Rational64 {
        self.segments
            .iter()
            .filter(|s| s.slope > Rational64::zero())
            .map(|s| s.slope * Rational64::from(s.length as i64))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlaceEntropy {
    pub place: Place,
    /// `e_p`, finite places only.
    #[serde(serialize_with = "opt_rational_str")]
    pub exponent: Option<Rational64>,
    pub value: RealInterval,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropySpectrum {
    /// Finite places with `e_p > 0`, plus the archimedean place.
    pub entries: BTreeMap<Place, PlaceEntropy>,
    pub finite_total: f64,
    pub grand_total: RealInterval,
}

impl EntropySpectrum {
    pub fn finite_entries(&self) -> impl Iterator<Item = &PlaceEntropy> {
        self.entries.values().filter(|e| e.place != Place::Infinite)
    }

    pub fn archimedean(&self) -> &PlaceEntropy {
        &self.entries[&Place::Infinite]
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `v_p(a)` for nonzero `a`.
pub fn valuation(a: &BigInt, p: u64) -> u64 {
    assert!(!a.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut a = a.clone();
    let mut v = 0;
    loop {
        let (q, r) = a.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        a = q;
        v += 1;
    }
}

fn cross(o: (usize, u64), a: (usize, u64), b: (usize, u64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

pub fn newton_polygon(f: &IntPoly, p: u64) -> Result<NewtonPolygon> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let points: Vec<(usize, u64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, valuation(c, p)))
        .collect();
    let mut vertices: Vec<(usize, u64)> = Vec::new();
    for &pt in &points {
        while vertices.len() >= 2 && cross(vertices[vertices.len() - 2], vertices[vertices.len() - 1], pt) <= 0 {
            vertices.pop();
        }
        vertices.push(pt);
    }
    let segments = vertices
        .windows(2)
        .map(|w| {
            let length = w[1].0 - w[0].0;
            let rise = w[1].1 as i64 - w[0].1 as i64;
            Segment { slope: Rational64::new(rise, length as i64), length }
        })
        .collect();
    Ok(NewtonPolygon { prime: p, points, vertices, segments })
}

/// Entropy at the finite place `p`.
///
/// For a primitive polynomial the exponent must equal `v_p(a_n)`; a mismatch
/// is reported as an identity violation.
pub fn place_entropy(f: &IntPoly, p: u64) -> Result<PlaceEntropy> {
    let polygon = newton_polygon(f, p)?;
    let exponent = polygon.positive_rise();
    if f.content().is_one() {
        let v = valuation(f.leading(), p) as i64;
        if exponent != Rational64::from(v) {
            return Err(Error::IdentityViolation(format!(
                "e_{p} = {exponent} but v_{p}(a_n) = {v} for {f}"
            )));
        }
    }
    Ok(PlaceEntropy { place: Place::Finite(p), exponent: Some(exponent), value: finite_value(exponent, p) })
}

fn finite_value(exponent: Rational64, p: u64) -> RealInterval {
    if exponent.is_zero() {
        return RealInterval::ZERO;
    }
    let (num, den) = (*exponent.numer(), *exponent.denom());
    ln_u64(p).times(num as usize).div_exact_scalar(den as f64)
}

/// Prime factorization of `|a|` by trial division up to
/// [`TRIAL_DIVISION_LIMIT`]. A composite-looking leftover cofactor is
/// refused.
pub fn factor_leading(a: &BigInt) -> Result<Vec<(u64, u32)>> {
    let mut rest = a.abs();
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT && BigInt::from(d) * BigInt::from(d) <= rest {
        let bd = BigInt::from(d);
        let mut k = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            k += 1;
        }
        if k > 0 {
            factors.push((d, k));
        }
        d += 1;
    }
    if rest > BigInt::one() {
        // no factor below d, so a cofactor below d² is prime
        match rest.to_u64() {
            Some(q) if rest < BigInt::from(d) * BigInt::from(d) => factors.push((q, 1)),
            _ => return Err(Error::FactorizationLimit(a.to_string())),
        }
    }
    Ok(factors)
}

/// Entropies at every place: finite primes dividing `a_n` from Newton
/// polygons, the archimedean place from certified roots.
pub fn entropy_spectrum(f: &IntPoly, precision: u32) -> Result<EntropySpectrum> {
    let mut entries = BTreeMap::new();
    let mut finite = RealInterval::ZERO;
    for (p, _) in factor_leading(f.leading())? {
        let e = place_entropy(f, p)?;
        if e.exponent.is_some_and(|x| x > Rational64::zero()) {
            finite = finite + e.value;
            entries.insert(e.place, e);
        }
    }
    let infinite = arch::archimedean_entropy(f, precision)?;
    let grand_total = finite + infinite.value;
    entries.insert(Place::Infinite, infinite);
    Ok(EntropySpectrum { entries, finite_total: finite.midpoint(), grand_total })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeCheck {
    pub prime: u64,
    #[serde(serialize_with = "rational_str")]
    pub exponent: Rational64,
    pub valuation: u64,
    pub matches: bool,
}

/// Exact certificate that `log |a_n|` splits over the primes as the sum of
/// finite-place entropies: `e_p = v_p(a_n)` for each `p | a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingCertificate {
    pub checks: Vec<PrimeCheck>,
    pub holds: bool,
}

pub fn leading_decomposition(f: &IntPoly) -> Result<LeadingCertificate> {
    let content = f.content();
    if !content.is_one() {
        return Err(Error::NotPrimitive(content.to_string()));
    }
    let mut checks = Vec::new();
    for (p, _) in factor_leading(f.leading())? {
        let exponent = newton_polygon(f, p)?.positive_rise();
        let valuation = valuation(f.leading(), p);
        let matches = exponent == Rational64::from(valuation as i64);
        checks.push(PrimeCheck { prime: p, exponent, valuation, matches });
    }
    let holds = checks.iter().all(|c| c.matches);
    Ok(LeadingCertificate { checks, holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    /// True iff every finite-place entropy vanishes.
    pub no_obstruction: bool,
    /// Primes with positive entropy.
    pub witnesses: Vec<u64>,
}

pub fn finitely_generated_obstruction(f: &IntPoly) -> Result<Obstruction> {
    let mut witnesses = Vec::new();
    for (p, _) in factor_leading(f.leading())? {
        if newton_polygon(f, p)?.positive_rise() > Rational64::zero() {
            witnesses.push(p);
        }
    }
    Ok(Obstruction { no_obstruction: witnesses.is_empty(), witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c).unwrap()
    }

    fn seg(num: i64, den: i64, length: usize) -> Segment {
        Segment { slope: Rational64::new(num, den), length }
    }

    #[test]
    fn polygons() {
        let np = newton_polygon(&p(&[2, -3, 2]), 2).unwrap();
        assert_eq!(np.points, vec![(0, 1), (1, 0), (2, 1)]);
        assert_eq!(np.segments, vec![seg(-1, 1, 1), seg(1, 1, 1)]);
        let np = newton_polygon(&p(&[1, -3, 1]), 5).unwrap();
        assert_eq!(np.segments, vec![seg(0, 1, 2)]);
        assert_eq!(np.vertices, vec![(0, 0), (2, 0)]);
        let np = newton_polygon(&p(&[4, -7, 4]), 2).unwrap();
        assert_eq!(np.segments, vec![seg(-2, 1, 1), seg(2, 1, 1)]);
        // fractional slope: 4 + t^2 at p = 2
        let np = newton_polygon(&p(&[2, 0, 1]), 2).unwrap();
        assert_eq!(np.segments, vec![seg(-1, 2, 2)]);
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(newton_polygon(&p(&[1, 1]), 4), Err(Error::NotPrime(4)));
        assert_eq!(newton_polygon(&p(&[1, 1]), 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn place_entropies() {
        let e = place_entropy(&p(&[2, -3, 2]), 2).unwrap();
        assert_eq!(e.exponent, Some(Rational64::from(1)));
        assert!(e.value.contains(2f64.ln()));
        let e = place_entropy(&p(&[1, -3, 1]), 2).unwrap();
        assert_eq!(e.exponent, Some(Rational64::from(0)));
        assert_eq!(e.value, RealInterval::ZERO);
        let e = place_entropy(&p(&[4, -7, 4]), 2).unwrap();
        assert_eq!(e.exponent, Some(Rational64::from(2)));
        assert!(e.value.contains(2.0 * 2f64.ln()));
    }

    #[test]
    fn factoring() {
        assert_eq!(factor_leading(&BigInt::from(360)).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor_leading(&BigInt::from(1)).unwrap(), vec![]);
        assert_eq!(factor_leading(&BigInt::from(-7)).unwrap(), vec![(7, 1)]);
        let big_prime = BigInt::from(1_000_003u64);
        assert_eq!(factor_leading(&big_prime).unwrap(), vec![(1_000_003, 1)]);
        let too_big = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64) * 2;
        assert!(matches!(factor_leading(&too_big), Err(Error::FactorizationLimit(_))));
    }

    #[test]
    fn spectra() {
        let s = entropy_spectrum(&p(&[2, -3, 2]), 128).unwrap();
        assert_eq!(s.entries.len(), 2);
        assert_eq!(s.archimedean().value, RealInterval::ZERO);
        assert!(s.grand_total.contains(2f64.ln()));

        let s = entropy_spectrum(&p(&[2, -5, 2]), 128).unwrap();
        assert!(s.archimedean().value.contains(2f64.ln()));
        assert!((s.grand_total.midpoint() - 4f64.ln()).abs() < 1e-12);

        let s = entropy_spectrum(&IntPoly::one(), 128).unwrap();
        assert_eq!(s.finite_entries().count(), 0);
        assert_eq!(s.grand_total, RealInterval::ZERO);
    }

    #[test]
    fn leading_certificates() {
        let c = leading_decomposition(&p(&[2, -3, 2])).unwrap();
        assert!(c.holds);
        assert_eq!(c.checks, vec![PrimeCheck { prime: 2, exponent: 1.into(), valuation: 1, matches: true }]);
        let c = leading_decomposition(&p(&[4, -7, 4])).unwrap();
        assert_eq!((c.checks[0].exponent, c.checks[0].valuation), (2.into(), 2));
        let c = leading_decomposition(&p(&[1, -3, 1])).unwrap();
        assert!(c.holds && c.checks.is_empty());
        assert!(matches!(leading_decomposition(&p(&[4, -6, 4])), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn obstructions() {
        let o = finitely_generated_obstruction(&p(&[1, -3, 1])).unwrap();
        assert!(o.no_obstruction && o.witnesses.is_empty());
        let o = finitely_generated_obstruction(&p(&[2, -3, 2])).unwrap();
        assert_eq!((o.no_obstruction, o.witnesses), (false, vec![2]));
        let o = finitely_generated_obstruction(&p(&[3, -5, 3])).unwrap();
        assert_eq!(o.witnesses, vec![3]);
    }

    #[test]
    fn place_order_and_display() {
        assert!(Place::Finite(97) < Place::Infinite);
        assert_eq!(Place::Infinite.to_string(), "inf");
        assert_eq!(serde_json::to_string(&Place::Finite(2)).unwrap(), "\"2\"");
    }
}
