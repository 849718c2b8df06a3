//! Multiplicative Weil heights, exactly.
//!
//! For a reduced rational a = p/q the height is H(a) = max(|p|, q), the
//! product over all places of max(1, |a|_v).  The projective height of a
//! point of Pⁿ(ℚ) is the max absolute value of its coordinates once they are
//! cleared to coprime integers.  The Segre embedding multiplies heights:
//! H(σ(x₁,…,xₙ)) = H(x₁)⋯H(xₙ).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::PolyZ;
use crate::{numeric, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum HeightError {
    #[error("projective point must have at least one nonzero coordinate")]
    InvalidPoint,
    #[error("Segre embedding needs at least one factor")]
    EmptyFactorList,
    #[error("({0}:{1}) is not a point of P¹ (both coordinates zero)")]
    InvalidP1Factor(Rational, Rational),
    #[error("minimal polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("root finding failed: {0}")]
    RootFinding(#[from] numeric::NumericError),
}

/// H(a) = max(|numerator|, denominator) for a reduced rational.
pub fn height_rational(a: &Rational) -> BigInt {
    let n = a.numer().abs();
    let d = a.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

/// A point of Pⁿ(ℚ) given by any nonzero coordinate vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    coords: Vec<Rational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self, HeightError> {
        if coords.is_empty() || coords.iter().all(|c| c.is_zero()) {
            return Err(HeightError::InvalidPoint);
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Coordinates cleared to coprime integers (unique up to overall sign).
    pub fn integer_coords(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in &self.coords {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coords.iter().map(|c| c.numer() * &l / c.denom()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Projective height: max |coordinate| after clearing to coprime integers.
pub fn projective_height(p: &ProjectivePoint) -> BigInt {
    p.integer_coords()
        .into_iter()
        .map(|c| c.abs())
        .max()
        .expect("nonempty by construction")
}

/// Segre embedding (P¹)ⁿ → P^(2ⁿ−1) by all coordinate products.
///
/// Coordinate order: masks 2ⁿ−1 down to 0, where bit j of the mask (counted
/// from the most significant of n bits, i.e. bit n−1−j for factor j) selects
/// the first coordinate of factor j, otherwise the second.  So the full
/// product of first coordinates comes first and the all-second product
/// (the constant 1 for affine factors) comes last.
pub fn segre_embed(factors: &[(Rational, Rational)]) -> Result<ProjectivePoint, HeightError> {
    if factors.is_empty() {
        return Err(HeightError::EmptyFactorList);
    }
    for (a, b) in factors {
        if a.is_zero() && b.is_zero() {
            return Err(HeightError::InvalidP1Factor(a.clone(), b.clone()));
        }
    }
    let n = factors.len();
    let mut coords = Vec::with_capacity(1 << n);
    for mask in (0..(1u32 << n)).rev() {
        let mut prod = Rational::one();
        for (j, (a, b)) in factors.iter().enumerate() {
            let take_first = mask & (1 << (n - 1 - j)) != 0;
            prod *= if take_first { a } else { b };
        }
        coords.push(prod);
    }
    ProjectivePoint::new(coords)
}

/// Absolute logarithmic height of any root of an irreducible integer
/// polynomial p (content 1): (1/deg p)(log|lc(p)| + Σ_roots log max(1, |root|)).
///
/// The polynomial is normalized to its primitive part defensively; roots are
/// located numerically (the result is a float, used in tolerance-tagged
/// comparisons only).  Irreducibility is the caller's contract — for a
/// reducible input this returns the degree-averaged Mahler measure, which is
/// not the height of any single root.
pub fn algebraic_height_from_minpoly(p: &PolyZ) -> Result<f64, HeightError> {
    let deg = match p.degree() {
        None | Some(0) => return Err(HeightError::ConstantPolynomial),
        Some(d) => d,
    };
    let prim = p.primitive();
    let roots = numeric::complex_roots(&prim)?;
    let mut log_m = crate::ln_bigint(&prim.leading().unwrap().abs());
    for r in &roots {
        let a = r.norm();
        if a > 1.0 {
            log_m += a.ln();
        }
    }
    Ok(log_m / deg as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn qi(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn height_of_rationals() {
        assert_eq!(height_rational(&qi(0)), BigInt::from(1));
        assert_eq!(height_rational(&q(2, 3)), BigInt::from(3));
        assert_eq!(height_rational(&q(-7, 2)), BigInt::from(7));
        assert_eq!(height_rational(&qi(1)), BigInt::from(1));
    }

    #[test]
    fn projective_height_examples() {
        let p = ProjectivePoint::new(vec![qi(1), qi(1)]).unwrap();
        assert_eq!(projective_height(&p), BigInt::from(1));

        let p = ProjectivePoint::new(vec![q(10, 3), q(2, 3), qi(5), qi(1)]).unwrap();
        assert_eq!(projective_height(&p), BigInt::from(15));

        let p = ProjectivePoint::new(vec![qi(2), qi(4), qi(6)]).unwrap();
        assert_eq!(projective_height(&p), BigInt::from(3));
    }

    #[test]
    fn all_zero_is_invalid() {
        assert_eq!(
            ProjectivePoint::new(vec![qi(0), qi(0)]).unwrap_err(),
            HeightError::InvalidPoint
        );
    }

    #[test]
    fn segre_of_two_affine_points() {
        let p = segre_embed(&[(qi(3), qi(1)), (qi(5), qi(1))]).unwrap();
        assert_eq!(p.coords(), &[qi(15), qi(3), qi(5), qi(1)]);
        assert_eq!(projective_height(&p), BigInt::from(15));
    }

    #[test]
    fn segre_of_zeros() {
        let p = segre_embed(&[(qi(0), qi(1)), (qi(0), qi(1))]).unwrap();
        assert_eq!(p.coords(), &[qi(0), qi(0), qi(0), qi(1)]);
        assert_eq!(projective_height(&p), BigInt::from(1));
    }

    #[test]
    fn segre_rejects_empty_and_invalid() {
        assert_eq!(segre_embed(&[]).unwrap_err(), HeightError::EmptyFactorList);
        assert!(matches!(
            segre_embed(&[(qi(0), qi(0))]).unwrap_err(),
            HeightError::InvalidP1Factor(..)
        ));
    }

    #[test]
    fn minpoly_heights() {
        // X - 2 -> log 2
        let h = algebraic_height_from_minpoly(&PolyZ::from_integers(&[-2, 1])).unwrap();
        assert!((h - 2f64.ln()).abs() < 1e-9);
        // 3X - 2 -> log 3
        let h = algebraic_height_from_minpoly(&PolyZ::from_integers(&[-2, 3])).unwrap();
        assert!((h - 3f64.ln()).abs() < 1e-9);
        // X² - 2 -> (1/2) log 2
        let h = algebraic_height_from_minpoly(&PolyZ::from_integers(&[-2, 0, 1])).unwrap();
        assert!((h - 2f64.ln() / 2.0).abs() < 1e-9);
    }

    #[test]
    fn minpoly_rejects_constants() {
        assert_eq!(
            algebraic_height_from_minpoly(&PolyZ::from_integers(&[5])).unwrap_err(),
            HeightError::ConstantPolynomial
        );
    }
}
