//! Mahler measure by Graeffe root squaring.
//!
//! The Graeffe iterate `g_{k+1}(t²) = ±g_k(t)·g_k(-t)` has the squared roots
//! of `g_k`, so `m(g_k) = 2^k·m(f)`. For any polynomial `g` of degree `n`,
//! `|g_j| ≤ C(n, j)·M(g)` and `M(g) ≤ ‖g‖₂`, which brackets `m(g_k)` within
//! `O(log C(n, n/2))`; dividing by `2^k` shrinks the bracket geometrically.
//!
//! Coefficients grow doubly exponentially, so each iterate is kept as
//! `2^shift·(ĝ + δ)` with `ĝ` truncated to the working precision and a
//! running bound `|δ_j| ≤ err`. Every iterate then yields a rigorous
//! enclosure and the running intersection is returned.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::interval::{ln_dyadic, RealInterval};
use super::roots::PRECISION_CAP;
use crate::poly::IntPoly;

/// Iteration stops once the enclosure is narrower than this.
pub const TARGET_WIDTH: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraeffeOutcome {
    pub enclosure: RealInterval,
    pub iterations: usize,
    pub bits: u32,
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn ceil_sqrt(x: &BigUint) -> BigUint {
    let s = x.sqrt();
    if &(&s * &s) < x {
        s + 1u32
    } else {
        s
    }
}

struct Iterate {
    coeffs: Vec<BigInt>,
    err: BigUint,
    shift: u128,
}

impl Iterate {
    /// Enclosure of `m(f)` from the `k`-th iterate.
    fn enclosure(&self, k: usize, ln_binom_hi: &[f64]) -> Option<RealInterval> {
        let n = self.coeffs.len() - 1;
        let shift_ln = self.shift as f64 * std::f64::consts::LN_2;
        let shift_lo = shift_ln * (1.0 - 4.0 * f64::EPSILON);
        let shift_hi = shift_ln * (1.0 + 4.0 * f64::EPSILON);
        let scale = 2f64.powi(k as i32);

        let sum_sq: BigUint = self.coeffs.iter().map(|c| c.magnitude() * c.magnitude()).sum();
        let norm_hi = ceil_sqrt(&sum_sq) + ceil_sqrt(&(&self.err * &self.err * BigUint::from(n + 1)));
        let hi = (ln_dyadic(&norm_hi, 0).hi + shift_hi).next_up() / scale;

        let lo = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.magnitude() > &self.err)
            .map(|(j, c)| ln_dyadic(&(c.magnitude() - &self.err), 0).lo - ln_binom_hi[j])
            .fold(None, |best: Option<f64>, v| Some(best.map_or(v, |b| b.max(v))))?;
        let lo = (lo + shift_lo).next_down() / scale;
        (lo <= hi).then_some(RealInterval { lo, hi })
    }

    /// One root-squaring step at `bits` of retained precision.
    fn square(&self, bits: u32) -> Iterate {
        let n = self.coeffs.len() - 1;
        let mut even = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in self.coeffs.iter().enumerate() {
                if (i + j) % 2 == 0 {
                    let term = a * b;
                    // g(-t) contributes (-1)^j
                    if j % 2 == 0 {
                        even[(i + j) / 2] += term;
                    } else {
                        even[(i + j) / 2] -= term;
                    }
                }
            }
        }
        let l1: BigUint = self.coeffs.iter().map(|c| c.magnitude().clone()).sum();
        let propagated = BigUint::from(2u32) * &self.err * &l1 + BigUint::from(n + 1) * &self.err * &self.err;
        let top_bits = even.iter().map(|c| c.bits()).max().unwrap_or(0);
        let s = top_bits.saturating_sub(bits as u64);
        let coeffs: Vec<BigInt> = even.into_iter().map(|c| c >> s).collect();
        let err = if s == 0 {
            propagated
        } else {
            let denom = BigUint::one() << s;
            (&propagated + &denom - 1u32) / &denom + 1u32
        };
        Iterate { coeffs, err, shift: 2 * self.shift + s as u128 }
    }

    fn precision_exhausted(&self) -> bool {
        let largest = self.coeffs.iter().map(|c| c.magnitude()).max().expect("nonempty");
        (&self.err << 16u32) > *largest
    }
}

fn run(f: &IntPoly, bits: u32, ln_binom_hi: &[f64], best: &mut Option<RealInterval>) -> (usize, bool) {
    let mut it = Iterate { coeffs: f.coeffs().to_vec(), err: BigUint::zero(), shift: 0 };
    for k in 0..=MAX_ITERATIONS {
        if let Some(enc) = it.enclosure(k, ln_binom_hi) {
            *best = Some(match best {
                Some(b) => b.intersect(&enc).unwrap_or_else(|| {
                    debug_assert!(false, "disjoint Graeffe enclosures {b} and {enc}");
                    b.hull(&enc)
                }),
                None => enc,
            });
        }
        if best.is_some_and(|b| b.width() < TARGET_WIDTH) || k == MAX_ITERATIONS {
            return (k, false);
        }
        if it.precision_exhausted() {
            return (k, true);
        }
        it = it.square(bits);
    }
    unreachable!()
}

/// Graeffe enclosure of `m(f)`, doubling the retained precision (up to the
/// cap) whenever truncation error stalls the iteration.
pub fn graeffe_mahler(f: &IntPoly, precision: u32) -> GraeffeOutcome {
    let n = f.degree();
    let ln_binom_hi: Vec<f64> = (0..=n).map(|j| ln_dyadic(&binomial(n, j), 0).hi).collect();
    let mut best = None;
    let mut bits = precision.clamp(64, PRECISION_CAP);
    loop {
        let (iterations, exhausted) = run(f, bits, &ln_binom_hi, &mut best);
        let enclosure = best.expect("the leading coefficient always gives a lower bound");
        if !exhausted || enclosure.width() < TARGET_WIDTH || bits >= PRECISION_CAP {
            let enclosure = RealInterval { lo: enclosure.lo.max(0.0), hi: enclosure.hi.max(0.0) };
            return GraeffeOutcome { enclosure, iterations, bits };
        }
        bits = (bits * 2).min(PRECISION_CAP);
    }
}
