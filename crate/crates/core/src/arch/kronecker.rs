//! Exact roots-of-unity decisions.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::poly::cyclotomic::{totient, CyclotomicCache};
use crate::poly::dense;
use crate::poly::IntPoly;

/// Largest `d` with `φ(d) ≤ n` is below `2n²` (from `φ(d) ≥ √(d/2)`).
fn index_bound(n: usize) -> u64 {
    2 * (n as u64) * (n as u64) + 2
}

/// Cyclotomic factors `Φ_d` of `f` with their multiplicities, ascending in
/// `d`, and the cofactor left after dividing them out.
pub fn cyclotomic_factors(f: &IntPoly) -> (Vec<(u64, usize)>, IntPoly) {
    let mut rest = f.coeffs().to_vec();
    let mut found = Vec::new();
    let mut cache = CyclotomicCache::new();
    let mut d = 1;
    while d <= index_bound(f.degree()) {
        let remaining = dense::degree(&rest).unwrap_or(0);
        if totient(d) as usize <= remaining {
            let phi = cache.get(d).to_vec();
            let mut mult = 0;
            while let Some(q) = dense::div_exact(&rest, &phi) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                found.push((d, mult));
            }
        }
        d += 1;
    }
    let rest = IntPoly::from_dense(&rest).expect("cofactor of a nonzero polynomial");
    (found, rest)
}

/// Whether every root of `f` is a root of unity, decided in exact integer
/// arithmetic. Constants have no roots and qualify vacuously.
pub fn all_roots_of_unity(f: &IntPoly) -> bool {
    let g = dense::squarefree_part(f.coeffs());
    let n = dense::degree(&g).unwrap_or(0);
    if n == 0 {
        return true;
    }
    // roots of unity have a monic minimal polynomial with unit constant term
    if !g[n].abs().is_one() || !g[0].abs().is_one() {
        return false;
    }
    let g = IntPoly::from_dense(&g).expect("nonzero");
    let (_, rest) = cyclotomic_factors(&g);
    rest.degree() == 0
}

/// `lcm{d : Φ_d | f}`, or 1 when there is no cyclotomic factor.
pub fn cyclotomic_lcm(f: &IntPoly) -> BigInt {
    use num_integer::Integer;
    cyclotomic_factors(f).0.iter().fold(BigInt::one(), |acc, (d, _)| acc.lcm(&BigInt::from(*d)))
}
