use std::collections::HashMap;

use num_bigint::BigInt;

use super::dense::{self, Coeffs};
use super::IntPoly;

/// Memo of cyclotomic polynomials, built by the division chain
/// `Φ_d = (t^d - 1) / ∏_{e | d, e < d} Φ_e`.
#[derive(Debug, Default, Clone)]
pub struct CyclotomicCache {
    polys: HashMap<u64, Coeffs>,
}

impl CyclotomicCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, d: u64) -> &[BigInt] {
        assert!(d >= 1, "cyclotomic index must be positive");
        if !self.polys.contains_key(&d) {
            let mut q = dense::power_minus_one(d as usize);
            for e in divisors(d).into_iter().filter(|&e| e < d) {
                let phi = self.get(e).to_vec();
                q = dense::div_exact(&q, &phi).expect("cyclotomic factor divides t^d - 1");
            }
            self.polys.insert(d, q);
        }
        &self.polys[&d]
    }
}

pub fn divisors(d: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= d {
        if d.is_multiple_of(i) {
            small.push(i);
            if i * i != d {
                large.push(d / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn totient(mut d: u64) -> u64 {
    let mut result = d;
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            while d.is_multiple_of(p) {
                d /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if d > 1 {
        result -= result / d;
    }
    result
}

/// The `d`-th cyclotomic polynomial.
pub fn cyclotomic(d: u64) -> IntPoly {
    let mut cache = CyclotomicCache::new();
    IntPoly::from_dense(cache.get(d)).expect("cyclotomic polynomials are nonzero")
}
