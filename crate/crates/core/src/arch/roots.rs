//! Certified complex roots.
//!
//! Roots are approximated by Aberth–Ehrlich iteration, first in `f64` and
//! then in fixed-point arithmetic at the working precision. Each squarefree
//! piece `g` of degree `m` is then certified with the Weierstrass inclusion
//! disks `D(z_i, m·|g(z_i)| / (|lc g|·∏_{j≠i}|z_i - z_j|))`: the union of the
//! disks contains every root and a connected component made of `k` disks
//! holds exactly `k` roots. The radii are evaluated in exact integer
//! arithmetic and rounded up, so pairwise disjoint disks isolate one root
//! each.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::fixed::{fixed_to_f64, FxComplex};
use super::interval::{ln_dyadic, RealInterval};
use crate::error::{Error, Result};
use crate::poly::dense::{self, Coeffs};
use crate::poly::IntPoly;

/// Precision escalation stops here.
pub const PRECISION_CAP: u32 = 2048;

/// Extra bits carried by the fixed-point iteration above the requested
/// precision.
const GUARD_BITS: u32 = 32;

const F64_MAX_ITER: usize = 1000;
const FIXED_MAX_ITER: usize = 200;

/// Position of a root relative to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleStatus {
    /// Proven to lie exactly on the circle.
    On,
    /// Proven strictly inside.
    Inside,
    /// Proven strictly outside.
    Outside,
    /// Not decidable at the current precision.
    Undecided,
}

impl CircleStatus {
    pub fn is_off(self) -> bool {
        matches!(self, CircleStatus::Inside | CircleStatus::Outside)
    }
}

/// A disk `D(center, radius)` known to contain exactly one distinct root.
#[derive(Debug, Clone)]
pub struct CertifiedRoot {
    center: FxComplex,
    radius: BigInt,
    /// Radius of a concentric open disk that contains no other root.
    /// `None` when this is the only distinct root.
    isolation: Option<BigInt>,
    bits: u32,
    multiplicity: usize,
    /// The root set of the squarefree piece this root came from is closed
    /// under `z ↦ 1/z̄`.
    inversion_closed: bool,
}

impl CertifiedRoot {
    pub fn center(&self) -> Complex64 {
        self.center.to_c64(self.bits)
    }

    /// Upper bound on the distance from `center()`'s exact value to the root.
    pub fn radius(&self) -> f64 {
        let r = fixed_to_f64(&self.radius, self.bits);
        if self.radius.is_zero() {
            0.0
        } else {
            // fixed_to_f64 truncates; step up past the truncation error
            (r * (1.0 + 4.0 * f64::EPSILON)).next_up()
        }
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Fixed-point scale of the center and radius, in bits.
    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    fn norm_sqr(&self) -> BigInt {
        self.center.norm_sqr()
    }

    /// Exact test that the two disks are disjoint. Both roots must come from
    /// the same certification run.
    pub fn disjoint_from(&self, other: &CertifiedRoot) -> bool {
        assert_eq!(self.bits, other.bits, "disks at different scales");
        let d = self.center.sub(&other.center).norm_sqr();
        let s = &self.radius + &other.radius;
        d > &s * &s
    }

    /// Enclosure of `|α|`'s logarithm. The lower end is `-inf` when the disk
    /// contains the origin.
    pub fn log_modulus(&self) -> RealInterval {
        let n = self.norm_sqr();
        let lo_mag = n.sqrt() - &self.radius;
        let hi_mag = ceil_sqrt(&n) + &self.radius;
        let exp = -(self.bits as i64);
        let lo = match lo_mag.to_biguint() {
            Some(x) if !x.is_zero() => ln_dyadic(&x, exp).lo,
            _ => f64::NEG_INFINITY,
        };
        let hi = ln_dyadic(&hi_mag.to_biguint().expect("nonnegative"), exp).hi;
        RealInterval { lo, hi }
    }

    /// Unit-circle position, decided exactly.
    ///
    /// A root is reported `On` only when the disk image under `z ↦ 1/z̄`
    /// lies inside the isolation disk and the root set is closed under that
    /// map: then `1/ᾱ = α`, i.e. `|α| = 1`. Otherwise the disk is compared
    /// against the circle.
    pub fn circle_status(&self) -> CircleStatus {
        let one = BigInt::one() << self.bits;
        let n = self.norm_sqr();
        let r = &self.radius;
        if self.inversion_closed && self.inversion_maps_into_isolation(&n, &one) {
            return CircleStatus::On;
        }
        let outer = &one + r;
        if n > &outer * &outer {
            return CircleStatus::Outside;
        }
        if r < &one {
            let inner = &one - r;
            if n < &inner * &inner {
                return CircleStatus::Inside;
            }
        }
        CircleStatus::Undecided
    }

    /// With `c = C/S`, `r = R/S`, `iso = I/S`, `s = |c|² - r²`: the image of
    /// `D(c, r)` under inversion is `D(c/s, r/s)`, which sits inside the open
    /// disk `D(c, iso)` iff `|c|·|1 - s| + r < iso·s`.
    fn inversion_maps_into_isolation(&self, n: &BigInt, one: &BigInt) -> bool {
        let r2 = &self.radius * &self.radius;
        if n <= &r2 {
            return false;
        }
        let s2 = one * one;
        let Some(iso) = &self.isolation else {
            // only one distinct root overall: 1/ᾱ must be that root
            return true;
        };
        // |c|·|1-s| < iso·s - r   ⇔   sqrt(N)·A < B  with
        // A = |S² - N + R²|, B = I(N - R²) - R·S²
        let a = (&s2 - n + &r2).abs();
        let b = iso * (n - &r2) - &self.radius * &s2;
        if !b.is_positive() {
            return false;
        }
        n * &a * &a < &b * &b
    }
}

/// Exact unit-circle decision for a certified root.
pub fn on_unit_circle_exact(root: &CertifiedRoot) -> CircleStatus {
    root.circle_status()
}

fn ceil_sqrt(x: &BigInt) -> BigInt {
    let s = x.sqrt();
    if &(&s * &s) < x {
        s + 1
    } else {
        s
    }
}

#[derive(Debug, Clone)]
struct Piece {
    coeffs: Coeffs,
    multiplicity: usize,
    inversion_closed: bool,
}

/// Splits `f` into squarefree, pairwise coprime pieces with multiplicities,
/// further separating each squarefree factor `g` into `gcd(g, g*)` (roots
/// closed under `α ↦ 1/α`) and the cofactor (no root on the unit circle).
fn split_pieces(f: &[BigInt]) -> Vec<Piece> {
    let mut pieces = Vec::new();
    for (g, multiplicity) in dense::squarefree_decomposition(f) {
        let h = dense::primitive_part(&dense::gcd(&g, &dense::reversed(&g)));
        let rest = dense::primitive_part(&dense::div_exact(&g, &h).expect("gcd divides"));
        for (coeffs, inversion_closed) in [(h, true), (rest, false)] {
            if dense::degree(&coeffs).unwrap_or(0) > 0 {
                pieces.push(Piece { coeffs, multiplicity, inversion_closed });
            }
        }
    }
    pieces
}

fn horner_f64(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let n = coeffs.len() - 1;
    let mut p = Complex64::new(coeffs[n], 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs[..n].iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration in double precision. Returns the approximations
/// reached, converged or not.
fn aberth_f64(g: &[BigInt]) -> Vec<Complex64> {
    let m = g.len() - 1;
    let coeffs: Vec<f64> = g.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    // start on a slightly eccentric circle whose radius is the geometric
    // mean of the root moduli
    let radius = (coeffs[0].abs() / coeffs[m].abs()).powf(1.0 / m as f64);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / m as f64 + 0.4;
            Complex64::from_polar(radius * (1.0 + 0.03 * k as f64 / m as f64), theta)
        })
        .collect();
    for _ in 0..F64_MAX_ITER {
        let mut done = true;
        for i in 0..m {
            let (p, dp) = horner_f64(&coeffs, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..m).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.is_finite() {
                let bump = Complex64::new(1e-3, 1e-3) * (1.0 + z[i].norm());
                z[i] += bump;
                done = false;
                continue;
            }
            z[i] -= w;
            if w.norm() > 4.0 * f64::EPSILON * z[i].norm().max(1e-300) {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    z
}

fn horner_fixed(coeffs: &[FxComplex], z: &FxComplex, bits: u32) -> FxComplex {
    let n = coeffs.len() - 1;
    let mut acc = coeffs[n].clone();
    for c in coeffs[..n].iter().rev() {
        acc = acc.mul(z, bits).add(c);
    }
    acc
}

/// Aberth–Ehrlich iteration in fixed point, starting from `seeds`.
fn aberth_fixed(g: &[BigInt], seeds: &[Complex64], bits: u32) -> Option<Vec<FxComplex>> {
    let m = g.len() - 1;
    let coeffs: Vec<FxComplex> = g.iter().map(|c| FxComplex::real_int(c, bits)).collect();
    let deriv: Vec<FxComplex> = dense::derivative(g).iter().map(|c| FxComplex::real_int(c, bits)).collect();
    let one = FxComplex::real_int(&BigInt::one(), bits);
    let tol = BigInt::one() << (GUARD_BITS - 8);
    let mut z: Vec<FxComplex> = seeds.iter().map(|&s| FxComplex::from_c64(s, bits)).collect();
    for _ in 0..FIXED_MAX_ITER {
        let mut largest = BigInt::zero();
        for i in 0..m {
            let p = horner_fixed(&coeffs, &z[i], bits);
            if p.is_zero() {
                continue;
            }
            let dp = horner_fixed(&deriv, &z[i], bits);
            let ratio = p.div(&dp, bits)?;
            let mut sum = FxComplex::zero();
            for j in (0..m).filter(|&j| j != i) {
                sum = sum.add(&one.div(&z[i].sub(&z[j]), bits)?);
            }
            let w = ratio.div(&one.sub(&ratio.mul(&sum, bits)), bits)?;
            z[i] = z[i].sub(&w);
            largest = largest.max(w.max_abs_component());
        }
        if largest <= tol {
            break;
        }
    }
    Some(z)
}

/// Upper bound, in units of `2^-bits`, on `m·|g(z_i)| / (|lc g|·∏_{j≠i}|z_i - z_j|)`.
fn inclusion_radius(g: &[BigInt], z: &[FxComplex], i: usize, bits: u32) -> Option<BigInt> {
    let m = g.len() - 1;
    // 2^(bits·m) · g(z_i), exactly
    let mut value = FxComplex { re: g[m].clone(), im: BigInt::zero() };
    for k in (0..m).rev() {
        value = value.mul_exact(&z[i]);
        value.re += &g[k] << (bits as usize * (m - k));
    }
    // 2^(bits·(m-1)) · ∏ (z_i - z_j), exactly
    let mut prod = FxComplex { re: BigInt::one(), im: BigInt::zero() };
    for j in (0..m).filter(|&j| j != i) {
        let diff = z[i].sub(&z[j]);
        if diff.is_zero() {
            return None;
        }
        prod = prod.mul_exact(&diff);
    }
    let m_big = BigInt::from(m);
    let num = &m_big * &m_big * value.norm_sqr();
    let den = &g[m] * &g[m] * prod.norm_sqr();
    let q = num.div_ceil(&den);
    Some(ceil_sqrt(&q))
}

fn certify(pieces: &[Piece], seeds: &[Vec<Complex64>], precision: u32) -> Option<Vec<CertifiedRoot>> {
    let bits = precision + GUARD_BITS;
    let mut roots = Vec::new();
    for (piece, seed) in pieces.iter().zip(seeds) {
        let z = aberth_fixed(&piece.coeffs, seed, bits)?;
        for i in 0..z.len() {
            let radius = inclusion_radius(&piece.coeffs, &z, i, bits)?;
            roots.push(CertifiedRoot {
                center: z[i].clone(),
                radius,
                isolation: None,
                bits,
                multiplicity: piece.multiplicity,
                inversion_closed: piece.inversion_closed,
            });
        }
    }
    // pairwise disjointness, and for each root the largest open disk free of
    // the other disks
    let mut isolation: Vec<Option<BigInt>> = vec![None; roots.len()];
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if !roots[i].disjoint_from(&roots[j]) {
                return None;
            }
            let dist = roots[i].center.sub(&roots[j].center).norm_sqr().sqrt();
            let for_i = &dist - &roots[j].radius;
            let for_j = &dist - &roots[i].radius;
            isolation[i] = Some(isolation[i].take().map_or(for_i.clone(), |v| v.min(for_i)));
            isolation[j] = Some(isolation[j].take().map_or(for_j.clone(), |v| v.min(for_j)));
        }
    }
    for (root, iso) in roots.iter_mut().zip(isolation) {
        root.isolation = iso;
    }
    roots.sort_by(|a, b| {
        let (x, y) = (a.center(), b.center());
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)).then(Ordering::Equal)
    });
    Some(roots)
}

/// Certified roots of `f`, one disk per distinct root, with multiplicities.
///
/// Starts at `precision` bits and doubles up to [`PRECISION_CAP`] until all
/// disks are pairwise disjoint.
pub fn roots_certified(f: &IntPoly, precision: u32) -> Result<Vec<CertifiedRoot>> {
    if f.degree() == 0 {
        return Err(Error::NoRoots);
    }
    let pieces = split_pieces(f.coeffs());
    let seeds: Vec<Vec<Complex64>> = pieces.iter().map(|p| aberth_f64(&p.coeffs)).collect();
    let mut bits = precision.clamp(16, PRECISION_CAP);
    loop {
        if let Some(roots) = certify(&pieces, &seeds, bits) {
            return Ok(roots);
        }
        if bits >= PRECISION_CAP {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits = (bits * 2).min(PRECISION_CAP);
    }
}

/// Enclosure of `Σ mult · ln |α_i|` over a certified root set.
pub fn log_modulus_sum(roots: &[CertifiedRoot]) -> RealInterval {
    roots.iter().map(|r| r.log_modulus().times(r.multiplicity)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c).unwrap()
    }

    fn has_root_near(roots: &[CertifiedRoot], z: Complex64, tol: f64) -> bool {
        roots.iter().any(|r| (r.center() - z).norm() < tol)
    }

    #[test]
    fn figure_eight_roots() {
        let roots = roots_certified(&p(&[1, -3, 1]), 128).unwrap();
        assert_eq!(roots.len(), 2);
        let s5 = 5f64.sqrt();
        assert!(has_root_near(&roots, Complex64::new((3.0 + s5) / 2.0, 0.0), 1e-14));
        assert!(has_root_near(&roots, Complex64::new((3.0 - s5) / 2.0, 0.0), 1e-14));
        for r in &roots {
            assert!(r.radius() < 1e-20, "radius {}", r.radius());
            assert!(r.circle_status().is_off());
        }
    }

    #[test]
    fn five_two_roots_on_circle() {
        let roots = roots_certified(&p(&[2, -3, 2]), 128).unwrap();
        assert_eq!(roots.len(), 2);
        let s7 = 7f64.sqrt();
        assert!(has_root_near(&roots, Complex64::new(0.75, s7 / 4.0), 1e-14));
        assert!(has_root_near(&roots, Complex64::new(0.75, -s7 / 4.0), 1e-14));
        for r in &roots {
            assert_eq!(on_unit_circle_exact(r), CircleStatus::On);
        }
    }

    #[test]
    fn double_root() {
        let roots = roots_certified(&p(&[1, -2, 1]), 128).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity(), 2);
        assert!((roots[0].center() - Complex64::new(1.0, 0.0)).norm() < 1e-20);
        assert_eq!(roots[0].circle_status(), CircleStatus::On);
    }

    #[test]
    fn reciprocal_real_pair_is_not_on_circle() {
        // roots 2 and 1/2 are exactly representable; the closed-disk boundary
        // must not fool the inversion test
        let roots = roots_certified(&p(&[2, -5, 2]), 64).unwrap();
        let statuses: Vec<_> = roots.iter().map(|r| r.circle_status()).collect();
        assert_eq!(statuses, vec![CircleStatus::Inside, CircleStatus::Outside]);
    }

    #[test]
    fn non_reciprocal_circle_root() {
        // (t - 1)(2t - 1): root 1 has no reciprocal partner in a palindromic
        // factor, but it is its own inverse
        let roots = roots_certified(&p(&[1, -3, 2]), 128).unwrap();
        let one = roots.iter().find(|r| (r.center().re - 1.0).abs() < 1e-9).unwrap();
        assert_eq!(one.circle_status(), CircleStatus::On);
    }

    #[test]
    fn lehmer_roots_are_certified() {
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let roots = roots_certified(&lehmer, 128).unwrap();
        assert_eq!(roots.len(), 10);
        let on = roots.iter().filter(|r| r.circle_status() == CircleStatus::On).count();
        assert_eq!(on, 8);
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                assert!(roots[i].disjoint_from(&roots[j]));
            }
        }
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(matches!(roots_certified(&IntPoly::one(), 128), Err(Error::NoRoots)));
    }
}
