//! Exact integer polynomials in Alexander normal form.

pub mod cyclotomic;
pub mod dense;
pub mod resultant;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub use cyclotomic::cyclotomic;
pub use resultant::{resultant_with_cyclotomic_power, sylvester_resultant};

/// A nonzero integer polynomial `a_0 + a_1 t + ... + a_n t^n` in normal form:
/// `a_0 != 0`, `a_n > 0`.
///
/// Alexander polynomials are only defined up to multiplication by `±t^k`; the
/// normal form picks the unique representative with a nonzero constant term
/// and positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Normal form of the Laurent polynomial `t^shift · Σ raw[i] t^i`.
    ///
    /// The shift is a unit and is discarded.
    pub fn normalize(raw: &[BigInt], shift: i64) -> Result<Self> {
        let _ = shift;
        let start = raw.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroPolynomial)?;
        let end = raw.iter().rposition(|c| !c.is_zero()).expect("nonzero entry exists");
        let mut coeffs = raw[start..=end].to_vec();
        if coeffs[coeffs.len() - 1].is_negative() {
            for c in &mut coeffs {
                *c = -&*c;
            }
        }
        Ok(IntPoly { coeffs })
    }

    pub fn from_i64(raw: &[i64]) -> Result<Self> {
        let raw: Vec<BigInt> = raw.iter().map(|&c| BigInt::from(c)).collect();
        Self::normalize(&raw, 0)
    }

    /// The constant polynomial 1 (the unknot).
    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    /// Wraps a trimmed dense vector, normalizing it.
    pub(crate) fn from_dense(coeffs: &[BigInt]) -> Result<Self> {
        Self::normalize(coeffs, 0)
    }

    /// Ascending coefficients `a_0, ..., a_n`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[self.degree()]
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_knot_like(&self) -> bool {
        self.value_at_one().abs().is_one()
    }

    /// `a_i = a_{n-i}` for all `i`.
    pub fn is_reciprocal(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// `a_i = -a_{n-i}` for all `i`.
    pub fn is_antireciprocal(&self) -> bool {
        self.coeffs.iter().zip(self.coeffs.iter().rev()).all(|(a, b)| *a == -b)
    }

    pub fn content(&self) -> BigInt {
        dense::content(&self.coeffs)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        IntPoly { coeffs: dense::mul(&self.coeffs, &other.coeffs) }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        dense::eval(&self.coeffs, x)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Parses a comma separated, ascending coefficient list such as `2,-3,2`.
    pub fn parse_coeffs(s: &str) -> Result<Self> {
        let raw = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Row { row: 0, message: format!("malformed integer {tok:?}") })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::normalize(&raw, 0)
    }
}

/// Free-function form of [`IntPoly::normalize`].
pub fn normalize(raw: &[BigInt], shift: i64) -> Result<IntPoly> {
    IntPoly::normalize(raw, shift)
}

/// gcd of the coefficients.
pub fn content(f: &IntPoly) -> BigInt {
    f.content()
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&crate::json::ExactInt(c))?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    #[serde(serialize_with = "crate::json::exact")]
    pub value_at_one: BigInt,
    pub is_knot_like: bool,
    pub is_reciprocal: bool,
    #[serde(serialize_with = "crate::json::exact")]
    pub content: BigInt,
    pub messages: Vec<String>,
}

/// Checks the Alexander axioms. Never rejects; findings go to `messages`.
pub fn validate_alexander(f: &IntPoly) -> ValidationReport {
    let value_at_one = f.value_at_one();
    let is_knot_like = value_at_one.abs().is_one();
    let is_reciprocal = f.is_reciprocal();
    let content = f.content();
    let mut messages = Vec::new();
    if !is_knot_like {
        messages.push(format!("value at t=1 is {value_at_one}, expected ±1"));
    }
    if !is_reciprocal {
        if f.is_antireciprocal() {
            messages.push("coefficients are anti-palindromic (a_i = -a_(n-i))".to_string());
        } else {
            messages.push("coefficients are not palindromic".to_string());
        }
    }
    if f.degree() % 2 == 1 && is_knot_like {
        messages.push(format!("odd degree {} is unusual for a knot", f.degree()));
    }
    if !content.is_one() {
        messages.push(format!("content is {content}, polynomial is not primitive"));
    }
    ValidationReport { value_at_one, is_knot_like, is_reciprocal, content, messages }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn normalize_strips_units() {
        let f = IntPoly::normalize(&big(&[0, -2, 3, -2]), -1).unwrap();
        assert_eq!(f.coeffs(), big(&[2, -3, 2]).as_slice());
        assert_eq!(IntPoly::normalize(&big(&[1]), 5).unwrap().coeffs(), big(&[1]).as_slice());
        assert_eq!(IntPoly::normalize(&big(&[1, -3, 1]), 0).unwrap().coeffs(), big(&[1, -3, 1]).as_slice());
        assert_eq!(IntPoly::normalize(&big(&[0, 0, 5, 0]), 3).unwrap().coeffs(), big(&[5]).as_slice());
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(IntPoly::normalize(&big(&[0, 0, 0]), 0), Err(Error::ZeroPolynomial));
        assert_eq!(IntPoly::normalize(&[], 0), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn validation_examples() {
        let r = validate_alexander(&IntPoly::from_i64(&[2, -3, 2]).unwrap());
        assert_eq!(r.value_at_one, BigInt::from(1));
        assert!(r.is_knot_like && r.is_reciprocal);
        assert_eq!(r.content, BigInt::from(1));
        assert!(r.messages.is_empty());

        let r = validate_alexander(&IntPoly::from_i64(&[1, -3, 1]).unwrap());
        assert_eq!(r.value_at_one, BigInt::from(-1));
        assert!(r.is_knot_like && r.is_reciprocal);

        let r = validate_alexander(&IntPoly::from_i64(&[-1, 2]).unwrap());
        assert_eq!(r.value_at_one, BigInt::from(1));
        assert!(r.is_knot_like);
        assert!(!r.is_reciprocal);
        assert!(!r.messages.is_empty());
    }

    #[test]
    fn antipalindromic_is_flagged_not_rejected() {
        let r = validate_alexander(&IntPoly::from_i64(&[-1, 0, 1]).unwrap());
        assert!(!r.is_reciprocal);
        assert!(r.messages.iter().any(|m| m.contains("anti-palindromic")));
    }

    #[test]
    fn content_examples() {
        assert_eq!(IntPoly::from_i64(&[2, -3, 2]).unwrap().content(), BigInt::from(1));
        assert_eq!(IntPoly::from_i64(&[4, -6, 4]).unwrap().content(), BigInt::from(2));
        assert_eq!(IntPoly::one().content(), BigInt::from(1));
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[2, -3, 2]).unwrap().to_string(), "2t^2 - 3t + 2");
        assert_eq!(IntPoly::from_i64(&[1, -1, 1]).unwrap().to_string(), "t^2 - t + 1");
        assert_eq!(IntPoly::one().to_string(), "1");
    }

    #[test]
    fn parse() {
        assert_eq!(IntPoly::parse_coeffs("2, -5, 2").unwrap(), IntPoly::from_i64(&[2, -5, 2]).unwrap());
        assert!(IntPoly::parse_coeffs("2,x").is_err());
    }
}
