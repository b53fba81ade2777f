//! Exact resultants.
//!
//! The general engine is the Sylvester determinant, evaluated with
//! fraction-free Bareiss elimination. Resultants against `t^r - 1` first
//! reduce `t^r - 1` modulo `f` (exactly, over the rationals), which leaves a
//! Sylvester matrix of size at most `2·deg f - 1` regardless of `r`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::dense::{self, Coeffs};
use super::IntPoly;
use crate::error::{Error, Result};

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `Res(f, g) = det Sylvester(f, g) = lc(f)^deg g · ∏_{f(α)=0} g(α)`.
///
/// Both arguments are dense ascending coefficient vectors; a zero argument
/// gives zero.
pub fn sylvester_resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (Some(n), Some(m)) = (dense::degree(f), dense::degree(g)) else {
        return BigInt::zero();
    };
    let size = n + m;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..m {
        for (k, c) in f.iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..n {
        for (k, c) in g.iter().rev().enumerate() {
            mat[m + i][i + k] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

/// Successive remainders `t^r mod f` over the rationals, represented as
/// integer numerators over a power of the leading coefficient.
#[derive(Debug, Clone)]
pub(crate) struct PowerRemainders<'a> {
    f: &'a [BigInt],
    lead: BigInt,
    /// numerator of `t^r mod f`, length `deg f`
    num: Coeffs,
    /// denominator exponent: the remainder is `num / lead^exp`
    exp: u32,
    r: usize,
}

impl<'a> PowerRemainders<'a> {
    /// Starts at `t^0`. Requires `deg f >= 1`.
    pub(crate) fn new(f: &'a [BigInt]) -> Self {
        let n = f.len() - 1;
        assert!(n >= 1, "power remainders need a nonconstant modulus");
        let mut num = vec![BigInt::zero(); n];
        num[0] = BigInt::one();
        PowerRemainders { f, lead: f[n].clone(), num, exp: 0, r: 0 }
    }

    pub(crate) fn exponent(&self) -> usize {
        self.r
    }

    /// Advances from `t^r mod f` to `t^(r+1) mod f`.
    pub(crate) fn step(&mut self) {
        let n = self.num.len();
        let top = self.num.pop().expect("nonempty remainder");
        self.num.insert(0, BigInt::zero());
        if !top.is_zero() {
            for (i, c) in self.num.iter_mut().enumerate() {
                *c = &*c * &self.lead - &top * &self.f[i];
            }
            self.exp += 1;
            // keep the representation reduced
            while self.exp > 0 && self.num.iter().all(|c| c.is_multiple_of(&self.lead)) {
                for c in &mut self.num {
                    *c = &*c / &self.lead;
                }
                self.exp -= 1;
            }
        }
        debug_assert_eq!(self.num.len(), n);
        self.r += 1;
    }

    /// Snapshot of the current remainder of `t^r - 1`.
    pub(crate) fn minus_one(&self) -> ReducedPower {
        let mut num = self.num.clone();
        num[0] -= self.lead.pow(self.exp);
        ReducedPower { r: self.r, num: dense::trim(num), exp: self.exp }
    }
}

/// `(t^r - 1) mod f = num / lc(f)^exp`.
#[derive(Debug, Clone)]
pub(crate) struct ReducedPower {
    pub r: usize,
    pub num: Coeffs,
    pub exp: u32,
}

impl ReducedPower {
    /// `Res(f, t^r - 1)` from the reduced remainder `h`:
    /// `Res(f, t^r - 1) = lc^(r - deg h) · Res(f, h)` and
    /// `Res(f, num) = lc^(exp · deg f) · Res(f, h)`.
    pub(crate) fn resultant(&self, f: &[BigInt]) -> BigInt {
        let Some(deg_h) = dense::degree(&self.num) else {
            return BigInt::zero();
        };
        let n = f.len() - 1;
        let lead = &f[n];
        let numerator = lead.pow((self.r - deg_h) as u32) * sylvester_resultant(f, &self.num);
        let denominator = lead.pow(self.exp * n as u32);
        let (q, rem) = numerator.div_rem(&denominator);
        debug_assert!(rem.is_zero(), "inexact resultant reduction");
        q
    }
}

/// `Res(f, t^r - 1) = a_n^r · ∏ (α_i^r - 1)`, exactly, sign included.
pub fn resultant_with_cyclotomic_power(f: &IntPoly, r: usize) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::ZeroCoverDegree);
    }
    let c = f.coeffs();
    if f.degree() == 0 {
        return Ok(c[0].pow(r as u32));
    }
    let mut rem = PowerRemainders::new(c);
    while rem.exponent() < r {
        rem.step();
    }
    Ok(rem.minus_one().resultant(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c).unwrap()
    }

    #[test]
    fn bareiss_small_determinants() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        assert_eq!(bareiss_determinant(m(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(bareiss_determinant(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(bareiss_determinant(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), BigInt::zero());
        assert_eq!(bareiss_determinant(m(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 4]])), BigInt::from(-21));
    }

    #[test]
    fn sylvester_linear_factors() {
        // Res(t - a, t - b) = a - b
        let f = dense::from_i64(&[-3, 1]);
        let g = dense::from_i64(&[-7, 1]);
        assert_eq!(sylvester_resultant(&f, &g), BigInt::from(-4));
    }

    #[test]
    fn trefoil_examples() {
        let f = poly(&[1, -1, 1]);
        // f(1) f(-1) = 1 · 3
        assert_eq!(resultant_with_cyclotomic_power(&f, 2).unwrap(), BigInt::from(3));
        assert_eq!(resultant_with_cyclotomic_power(&f, 6).unwrap(), BigInt::zero());
        assert_eq!(resultant_with_cyclotomic_power(&f, 1).unwrap(), BigInt::from(1));
    }

    #[test]
    fn unknot_is_one() {
        for r in 1..10 {
            assert_eq!(resultant_with_cyclotomic_power(&IntPoly::one(), r).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn zero_r_rejected() {
        assert_eq!(resultant_with_cyclotomic_power(&poly(&[1, -3, 1]), 0), Err(Error::ZeroCoverDegree));
    }

    #[test]
    fn reduced_route_matches_full_sylvester() {
        for c in [&[2i64, -3, 2][..], &[1, -3, 3, -3, 1], &[4, -7, 4], &[3, 1, 0, 5]] {
            let f = poly(c);
            for r in 1..=20 {
                let full = sylvester_resultant(f.coeffs(), &dense::power_minus_one(r));
                assert_eq!(resultant_with_cyclotomic_power(&f, r).unwrap(), full, "{f} r={r}");
            }
        }
    }
}
