//! Arithmetic on dense integer coefficient vectors.
//!
//! Vectors are ascending in degree and trimmed: the zero polynomial is the
//! empty vector and the last entry is never zero. Nothing here assumes the
//! normal form of [`super::IntPoly`], so intermediate results (derivatives,
//! remainders, `t^r - 1`) can be represented directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Coeffs = Vec<BigInt>;

pub fn trim(mut a: Coeffs) -> Coeffs {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(a: &[BigInt]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn from_i64(a: &[i64]) -> Coeffs {
    trim(a.iter().map(|&c| BigInt::from(c)).collect())
}

/// `t^r - 1`.
pub fn power_minus_one(r: usize) -> Coeffs {
    let mut v = vec![BigInt::zero(); r + 1];
    v[0] = -BigInt::one();
    v[r] += BigInt::one();
    trim(v)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(out)
}

pub fn neg(a: &[BigInt]) -> Coeffs {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    add(a, &neg(b))
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn scale(a: &[BigInt], k: &BigInt) -> Coeffs {
    trim(a.iter().map(|c| c * k).collect())
}

pub fn derivative(a: &[BigInt]) -> Coeffs {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// Coefficients reversed: `t^deg a · a(1/t)`.
pub fn reversed(a: &[BigInt]) -> Coeffs {
    trim(a.iter().rev().cloned().collect())
}

/// gcd of all coefficients (nonnegative; zero for the zero polynomial).
pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub fn primitive_part(a: &[BigInt]) -> Coeffs {
    let c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let sign = if a.last().is_some_and(Signed::is_negative) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let c = c * sign;
    a.iter().map(|x| x / &c).collect()
}

/// Exact quotient `a / b` over the integers, or `None` when `b` does not
/// divide `a` in `Z[t]`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Coeffs> {
    let db = degree(b)?;
    let Some(da) = degree(a) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    let lead = &b[db];
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let top = &rem[k + db];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &q * bj;
        }
        quot[k] = q;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(trim(quot))
    } else {
        None
    }
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a mod b`.
pub fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    let db = degree(b).expect("pseudo-remainder by zero polynomial");
    let mut rem = a.to_vec();
    let lead = &b[db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let top = rem[dr].clone();
        for c in rem.iter_mut() {
            *c *= lead;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[dr - db + j] -= &top * bj;
        }
        rem = trim(rem);
    }
    rem
}

/// Greatest common divisor in `Z[t]` (primitive remainder sequence),
/// normalized with positive leading coefficient.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    if a.is_empty() {
        return primitive_part(b).into_iter().map(|c| c * content(b)).collect();
    }
    if b.is_empty() {
        return primitive_part(a).into_iter().map(|c| c * content(a)).collect();
    }
    let g = content(a).gcd(&content(b));
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    scale(&x, &g)
}

/// Yun's squarefree decomposition of a primitive polynomial:
/// `f = ∏ g_k^k` with the `g_k` squarefree and pairwise coprime.
/// Returns `(g_k, k)` for nonconstant factors.
pub fn squarefree_decomposition(f: &[BigInt]) -> Vec<(Coeffs, usize)> {
    let f = primitive_part(f);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = derivative(&f);
    let mut a = gcd(&f, &df);
    let mut b = div_exact(&f, &a).expect("gcd divides f");
    let mut c = div_exact(&df, &a).expect("gcd divides f'");
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut k = 1;
    while degree(&b).unwrap_or(0) > 0 {
        a = gcd(&b, &d);
        if degree(&a).unwrap_or(0) > 0 {
            out.push((a.clone(), k));
        }
        b = div_exact(&b, &a).expect("yun step divides");
        c = div_exact(&d, &a).expect("yun step divides");
        d = sub(&c, &derivative(&b));
        k += 1;
    }
    out
}

/// Product of the squarefree factors (the radical), primitive.
pub fn squarefree_part(f: &[BigInt]) -> Coeffs {
    let f = primitive_part(f);
    if degree(&f).unwrap_or(0) == 0 {
        return f;
    }
    let g = gcd(&f, &derivative(&f));
    primitive_part(&div_exact(&f, &g).expect("gcd divides f"))
}

pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Coeffs {
        from_i64(c)
    }

    #[test]
    fn exact_division() {
        // (t - 1)(t^2 + t + 1) = t^3 - 1
        assert_eq!(div_exact(&p(&[-1, 0, 0, 1]), &p(&[-1, 1])), Some(p(&[1, 1, 1])));
        assert_eq!(div_exact(&p(&[1, 0, 1]), &p(&[-1, 1])), None);
        assert_eq!(div_exact(&p(&[2, 4]), &p(&[1, 2])), Some(p(&[2])));
        assert_eq!(div_exact(&p(&[1, 1]), &p(&[1, 2])), None);
    }

    #[test]
    fn gcd_of_products() {
        let a = mul(&p(&[1, -1, 1]), &p(&[2, -3, 2]));
        let b = mul(&p(&[1, -1, 1]), &p(&[1, -3, 1]));
        assert_eq!(gcd(&a, &b), p(&[1, -1, 1]));
        assert_eq!(gcd(&p(&[4, -6, 4]), &p(&[2, 2])), p(&[2]));
        assert_eq!(gcd(&p(&[1, 1]), &p(&[-1, 1])), p(&[1]));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (t-1)^2 (t+2)^3 (t^2+1)
        let f = mul(
            &mul(&mul(&p(&[-1, 1]), &p(&[-1, 1])), &mul(&p(&[2, 1]), &mul(&p(&[2, 1]), &p(&[2, 1])))),
            &p(&[1, 0, 1]),
        );
        let dec = squarefree_decomposition(&f);
        assert_eq!(dec, vec![(p(&[1, 0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
        assert_eq!(squarefree_part(&f), mul(&mul(&p(&[1, 0, 1]), &p(&[-1, 1])), &p(&[2, 1])));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[1, 0, 2]);
        // 2^2 · a = q·b + r
        let r = pseudo_rem(&a, &b);
        assert!(degree(&r).unwrap() < 2);
        let lhs = sub(&scale(&a, &BigInt::from(4)), &r);
        assert!(div_exact(&lhs, &b).is_some());
    }
}
