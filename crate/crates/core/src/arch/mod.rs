//! The archimedean place: certified roots, the Mahler measure by two
//! independent methods, the archimedean entropy and the Kronecker test.

pub mod fixed;
pub mod graeffe;
pub mod interval;
pub mod kronecker;
pub mod roots;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{Place, PlaceEntropy};
use crate::poly::IntPoly;

pub use graeffe::{graeffe_mahler, GraeffeOutcome};
pub use interval::{ln_dyadic, ln_u64, RealInterval};
pub use kronecker::{all_roots_of_unity, cyclotomic_factors, cyclotomic_lcm};
pub use roots::{log_modulus_sum, on_unit_circle_exact, roots_certified, CertifiedRoot, CircleStatus, PRECISION_CAP};

/// Certified roots with every circle status decided, escalating precision
/// until none is undecided or the cap is reached.
pub fn resolved_roots(f: &IntPoly, precision: u32) -> Result<Vec<CertifiedRoot>> {
    let mut bits = precision;
    loop {
        let roots = roots_certified(f, bits)?;
        let used = roots.iter().map(|r| r.precision_bits()).max().unwrap_or(bits);
        if used >= PRECISION_CAP || roots.iter().all(|r| r.circle_status() != CircleStatus::Undecided) {
            return Ok(roots);
        }
        bits = (used * 2).min(PRECISION_CAP);
    }
}

/// `Σ mult · log |α|` over roots outside the unit circle. A root left
/// undecided at the cap contributes `[0, max(0, log(|c| + r))]`.
fn expanding_sum(roots: &[CertifiedRoot]) -> RealInterval {
    roots
        .iter()
        .map(|r| match r.circle_status() {
            CircleStatus::On | CircleStatus::Inside => RealInterval::ZERO,
            CircleStatus::Outside => r.log_modulus().times(r.multiplicity()),
            CircleStatus::Undecided => {
                RealInterval { lo: 0.0, hi: r.log_modulus().hi.max(0.0) }.times(r.multiplicity())
            }
        })
        .sum()
}

/// Entropy at the archimedean place, `Σ_{|α|>1} log |α|`.
pub fn archimedean_entropy(f: &IntPoly, precision: u32) -> Result<PlaceEntropy> {
    let value = if f.degree() == 0 { RealInterval::ZERO } else { expanding_sum(&resolved_roots(f, precision)?) };
    Ok(PlaceEntropy { place: Place::Infinite, exponent: None, value })
}

/// The two Mahler measure enclosures and their intersection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MahlerReport {
    pub by_roots: RealInterval,
    pub by_graeffe: RealInterval,
    pub enclosure: RealInterval,
}

/// `log |a_n| + Σ log⁺ |α|` from certified roots.
pub fn mahler_by_roots(f: &IntPoly, precision: u32) -> Result<RealInterval> {
    let lead = ln_dyadic(f.leading().magnitude(), 0);
    Ok(lead + archimedean_entropy(f, precision)?.value)
}

pub fn mahler_measure_report(f: &IntPoly, precision: u32) -> Result<MahlerReport> {
    let by_roots = mahler_by_roots(f, precision)?;
    let by_graeffe = graeffe_mahler(f, precision).enclosure;
    let enclosure = by_roots.intersect(&by_graeffe).ok_or_else(|| Error::MethodDisagreement {
        roots: by_roots.to_string(),
        graeffe: by_graeffe.to_string(),
    })?;
    Ok(MahlerReport { by_roots, by_graeffe, enclosure })
}

/// Certified enclosure of the logarithmic Mahler measure `m(f)`: the
/// intersection of the root-based and Graeffe enclosures.
pub fn mahler_measure(f: &IntPoly, precision: u32) -> Result<RealInterval> {
    Ok(mahler_measure_report(f, precision)?.enclosure)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c).unwrap()
    }

    #[test]
    fn mahler_examples() {
        let m = mahler_measure(&p(&[1, -3, 1]), 128).unwrap();
        assert!(m.contains(((3.0 + 5f64.sqrt()) / 2.0).ln()), "{m}");
        let m = mahler_measure(&p(&[2, -3, 2]), 128).unwrap();
        assert!(m.contains(2f64.ln()), "{m}");
        let m = mahler_measure(&IntPoly::one(), 128).unwrap();
        assert_eq!(m, RealInterval::ZERO);
    }

    #[test]
    fn archimedean_examples() {
        let h = archimedean_entropy(&p(&[1, -3, 1]), 128).unwrap();
        assert!((h.value.midpoint() - 0.962_423_650_119_206_9).abs() < 1e-12);
        assert_eq!(archimedean_entropy(&p(&[2, -3, 2]), 128).unwrap().value, RealInterval::ZERO);
        let h = archimedean_entropy(&p(&[2, -5, 2]), 128).unwrap();
        assert!(h.value.contains(2f64.ln()) && h.value.width() < 1e-12);
    }

    #[test]
    fn lehmer_methods_agree() {
        let report = mahler_measure_report(&p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]), 128).unwrap();
        assert!(report.by_roots.distance(&report.by_graeffe) == 0.0);
        assert!(report.enclosure.width() < 1e-9, "{report:?}");
    }
}
