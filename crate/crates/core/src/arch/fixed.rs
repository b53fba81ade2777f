//! Complex fixed-point numbers: `(re + i·im) / 2^bits` with big-integer
//! numerators. Addition is exact; products and quotients truncate to the
//! working scale.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FxComplex {
    pub re: BigInt,
    pub im: BigInt,
}

impl FxComplex {
    pub fn zero() -> Self {
        FxComplex { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn real_int(x: &BigInt, bits: u32) -> Self {
        FxComplex { re: x << bits, im: BigInt::zero() }
    }

    pub fn from_c64(z: Complex64, bits: u32) -> Self {
        FxComplex { re: f64_to_fixed(z.re, bits), im: f64_to_fixed(z.im, bits) }
    }

    pub fn to_c64(&self, bits: u32) -> Complex64 {
        Complex64::new(fixed_to_f64(&self.re, bits), fixed_to_f64(&self.im, bits))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &FxComplex) -> FxComplex {
        FxComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &FxComplex) -> FxComplex {
        FxComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &FxComplex, bits: u32) -> FxComplex {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        FxComplex { re: re >> bits, im: im >> bits }
    }

    /// Quotient, or `None` on division by zero.
    pub fn div(&self, o: &FxComplex, bits: u32) -> Option<FxComplex> {
        let den = o.norm_sqr();
        if den.is_zero() {
            return None;
        }
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        Some(FxComplex { re: (re << bits) / &den, im: (im << bits) / &den })
    }

    /// `re² + im²`, exact, at scale `2^(2·bits)`.
    pub fn norm_sqr(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// max(|re|, |im|) at the working scale.
    pub fn max_abs_component(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }

    /// Exact Gaussian-integer product (no rescaling).
    pub fn mul_exact(&self, o: &FxComplex) -> FxComplex {
        FxComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

fn f64_to_fixed(x: f64, bits: u32) -> BigInt {
    if x == 0.0 || !x.is_finite() {
        return BigInt::zero();
    }
    // x = mantissa · 2^exp with an integral mantissa
    let (mant, exp) = decompose(x);
    let shift = exp + bits as i64;
    if shift >= 0 {
        mant << shift as u64
    } else {
        mant >> (-shift) as u64
    }
}

/// Exact decomposition `x = mantissa · 2^exp`.
fn decompose(x: f64) -> (BigInt, i64) {
    let raw = x.to_bits();
    let negative = raw >> 63 == 1;
    let exponent = ((raw >> 52) & 0x7ff) as i64;
    let fraction = raw & 0x000f_ffff_ffff_ffff;
    let mantissa = if exponent == 0 { fraction << 1 } else { fraction | 0x0010_0000_0000_0000 };
    let m = BigInt::from(mantissa);
    (if negative { -m } else { m }, exponent - 1075)
}

pub fn fixed_to_f64(x: &BigInt, bits: u32) -> f64 {
    let nbits = x.bits() as i64;
    if nbits == 0 {
        return 0.0;
    }
    let shift = (nbits - 60).max(0);
    let top = (x.abs() >> shift as u64).to_f64().expect("small");
    let e = (shift - bits as i64).clamp(-4000, 4000) as i32;
    let v = top * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
    if x.sign() == Sign::Minus {
        -v
    } else {
        v
    }
}
