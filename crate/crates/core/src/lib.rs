//! Entropy invariants of Alexander polynomials.
//!
//! For an Alexander polynomial `Δ(t) = a_0 + ... + a_n t^n` with zeros `α_i`
//! this crate computes, exactly where possible and with certified
//! enclosures otherwise:
//!
//! * the per-place entropies `h_p = Σ_{|α_i|_p > 1} log |α_i|_p` for every
//!   prime `p` (from Newton polygons) and for the archimedean place,
//! * the logarithmic Mahler measure `m(Δ)`, by root enclosures and by
//!   Graeffe root squaring,
//! * the orders `|H_1(X_r)|` of the `r`-fold branched cyclic covers via exact
//!   resultants against `t^r - 1`, their exponential growth rate, their
//!   periodicity in the roots-of-unity case and their `p`-parts.
//!
//! The finite-place entropies sum to `log |a_n|` and all places together sum
//! to `m(Δ)`; both identities are checked by [`padic::leading_decomposition`]
//! and the acceptance suite.

pub mod arch;
pub mod branched;
pub mod cli;
pub mod error;
pub mod json;
pub mod knotdata;
pub mod padic;
pub mod poly;

pub use error::{Error, Result};
pub use poly::{validate_alexander, IntPoly, ValidationReport};

/// Default working precision, in bits, for certified numerics.
pub const DEFAULT_PRECISION: u32 = 128;
