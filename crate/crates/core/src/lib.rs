//! Exact arithmetic toolkit for counting isogenous fibers in one-parameter
//! families of elliptic-curve pairs ordered by height.
//!
//! A family is a pair of short Weierstrass equations
//!
//! ```text
//! E_t:  y² = x³ + f(t)x + g(t)        E'_t:  y² = x³ + f'(t)x + g'(t)
//! ```
//!
//! with rational-function coefficients over ℚ.  The crate provides:
//!
//! * [`heights`] — multiplicative Weil heights of rationals, projective
//!   points and Segre images, all exact.
//! * [`family`] — the family model: j-invariant maps, the family degree,
//!   the embedding height, fiber specialization.
//! * [`enumeration`] — duplicate-free enumeration of ℚ-points of bounded
//!   height, in both the parameter-height and fiber-height orderings.
//! * [`modpoly`] — classical modular polynomials Φₙ loaded from a plain-text
//!   database, exact bivariate evaluation, cyclic-isogeny detection, CM
//!   screening.
//! * [`bounds`] — the explicit cover-counting bound pipeline: level choice,
//!   cover indices, height-change bounds, point-count bound shapes.
//! * [`census`] — orchestration: scan a family up to a height bound, detect
//!   isogenous fibers, and emit deterministic JSON/CSV reports.
//! * [`polyfactor`] — exact factorization of univariate integer polynomials
//!   over ℚ (used for rational-root extraction and height-gap checks).

pub mod bounds;
pub mod census;
pub mod enumeration;
pub mod family;
pub mod heights;
pub mod modpoly;
pub mod numeric;
pub mod poly;
pub mod polyfactor;

/// Arbitrary-precision reduced fraction; the scalar of all exact computation.
///
/// Invariants are maintained by `num_rational`: gcd(numerator, denominator) = 1,
/// denominator ≥ 1, zero is 0/1.
pub type Rational = num_rational::BigRational;

pub use num_bigint::BigInt;

/// Natural log of a positive big integer, accurate to f64 precision even when
/// the value itself overflows f64.
pub fn ln_bigint(x: &BigInt) -> f64 {
    use num_traits::{Signed, ToPrimitive, Zero};
    assert!(x.is_positive() && !x.is_zero(), "ln_bigint needs a positive argument");
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// log H(a) for a reduced rational a, i.e. log max(|numerator|, denominator).
pub fn ln_height(a: &Rational) -> f64 {
    ln_bigint(&heights::height_rational(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn ln_bigint_matches_f64_for_small_values() {
        for v in [1u32, 2, 3, 1000, 123456789] {
            let b = BigInt::from(v);
            assert!((ln_bigint(&b) - (v as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn ln_bigint_handles_values_beyond_f64() {
        let big = BigInt::one() << 2000usize;
        let expect = 2000.0 * std::f64::consts::LN_2;
        assert!((ln_bigint(&big) - expect).abs() < 1e-9 * expect);
    }
}
