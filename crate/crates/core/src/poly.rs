//! Dense univariate polynomials over ℚ and ℤ.
//!
//! `PolyQ` is the working type for rational-function algebra (j-invariant
//! maps, fiber specialization); `PolyZ` is the working type for everything
//! that wants integer coefficients: modular-polynomial slices, content/
//! primitive-part bookkeeping, gcds via the primitive polynomial remainder
//! sequence, and Yun squarefree decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Polynomial over ℚ, coefficients in ascending degree, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PolyQ::new(vec![c])
    }

    /// Monomial c·tᵏ.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        PolyQ::new(v)
    }

    pub fn from_integers(cs: &[i64]) -> Self {
        PolyQ::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> PolyQ {
        if self.coeffs.len() <= 1 {
            return PolyQ::zero();
        }
        PolyQ::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rational::from_integer((i as i64 + 1).into()))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        PolyQ::new(out)
    }

    pub fn sub(&self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        PolyQ::new(out)
    }

    pub fn mul(&self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }

    pub fn scale(&self, c: &Rational) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> PolyQ {
        let mut acc = PolyQ::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder of self by d (d nonzero).
    pub fn div_rem(&self, d: &PolyQ) -> (PolyQ, PolyQ) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyQ::zero(), PolyQ::new(rem));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    let v = &q * c;
                    rem[k + i] -= v;
                }
            }
            quot[k] = q;
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) && rem.len() > dd {
                rem.pop();
            }
            // strip any further trailing zeros below the divisor degree too
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (PolyQ::new(quot), PolyQ::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero (internal misuse).
    pub fn div_exact(&self, d: &PolyQ) -> PolyQ {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd over ℚ (1 for coprime inputs, 0 only if both are zero).
    pub fn gcd(&self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() && rhs.is_zero() {
            return PolyQ::zero();
        }
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() {
            return self.monic();
        }
        let a = self.to_primitive_z().0;
        let b = rhs.to_primitive_z().0;
        a.gcd(&b).to_poly_q().monic()
    }

    pub fn monic(&self) -> PolyQ {
        match self.leading() {
            None => PolyQ::zero(),
            Some(l) => {
                let inv = Rational::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// Write self = scale · primitive with primitive an integer polynomial of
    /// content 1 and positive leading coefficient.
    pub fn to_primitive_z(&self) -> (PolyZ, Rational) {
        if self.is_zero() {
            return (PolyZ::zero(), Rational::zero());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * &l / c.denom()).collect();
        let z = PolyZ::new(ints);
        let content = z.content();
        let sign = if z.leading().unwrap().is_negative() { -1 } else { 1 };
        let scale = Rational::new(&content * BigInt::from(sign), l);
        let prim = z.div_scalar_exact(&(&content * BigInt::from(sign)));
        (prim, scale)
    }
}

/// Polynomial over ℤ, coefficients in ascending degree, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyZ {
    coeffs: Vec<BigInt>,
}

impl PolyZ {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        PolyZ { coeffs }
    }

    pub fn zero() -> Self {
        PolyZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyZ::new(vec![BigInt::one()])
    }

    pub fn from_integers(cs: &[i64]) -> Self {
        PolyZ::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> PolyZ {
        if self.coeffs.len() <= 1 {
            return PolyZ::zero();
        }
        PolyZ::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i as u64 + 1))
                .collect(),
        )
    }

    pub fn neg(&self) -> PolyZ {
        PolyZ::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, rhs: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        PolyZ::new(out)
    }

    pub fn sub(&self, rhs: &PolyZ) -> PolyZ {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &PolyZ) -> PolyZ {
        if self.is_zero() || rhs.is_zero() {
            return PolyZ::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyZ::new(out)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> PolyZ {
        PolyZ::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> PolyZ {
        assert!(!c.is_zero());
        PolyZ::new(
            self.coeffs
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(c);
                    debug_assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        )
    }

    /// Non-negative gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Content-1 part with positive leading coefficient.
    pub fn primitive(&self) -> PolyZ {
        if self.is_zero() {
            return PolyZ::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn to_poly_q(&self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Pseudo-remainder: rem(lc(d)^(deg a - deg d + 1) · a, d), exact over ℤ.
    fn pseudo_rem(&self, d: &PolyZ) -> PolyZ {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let top = rem.last().unwrap().clone();
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &top * c;
            }
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
        }
        PolyZ::new(rem)
    }

    /// Primitive gcd via the primitive polynomial remainder sequence.
    pub fn gcd(&self, rhs: &PolyZ) -> PolyZ {
        let mut a = self.primitive();
        let mut b = rhs.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b).primitive();
            if r.is_zero() {
                return b;
            }
            if r.degree() == Some(0) {
                return PolyZ::one();
            }
            a = b;
            b = r;
        }
    }

    /// Exact division; panics if the division is not exact.
    pub fn div_exact(&self, d: &PolyZ) -> PolyZ {
        let q = self.to_poly_q().div_exact(&d.to_poly_q());
        let (z, scale) = q.to_primitive_z();
        // the quotient of two integer polynomials dividing exactly over ℚ
        // has rational coefficients; for our callers it is integral
        assert!(scale.denom().is_one(), "quotient not integral");
        z.mul_scalar(scale.numer())
    }

    /// f / gcd(f, f′): same roots, all simple.
    pub fn squarefree_part(&self) -> PolyZ {
        if self.degree().map_or(true, |d| d <= 1) {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive();
        }
        self.primitive().div_exact(&g).primitive()
    }

    /// Yun squarefree decomposition: self = scalar · ∏ fᵢ^i with the fᵢ
    /// pairwise coprime, squarefree, primitive. Returns (fᵢ, i), fᵢ nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(PolyZ, usize)> {
        let f = self.primitive();
        let df = match f.degree() {
            None | Some(0) => return Vec::new(),
            Some(d) => d,
        };
        let fq = f.to_poly_q();
        let fpq = fq.derivative();
        let a0 = fq.gcd(&fpq); // monic
        if a0.degree() == Some(0) {
            return vec![(f, 1)];
        }
        let mut b = fq.div_exact(&a0);
        let mut c = fpq.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1usize;
        while b.degree().map_or(false, |k| k >= 1) {
            assert!(i <= df + 1, "squarefree decomposition did not terminate");
            let a = b.gcd(&d); // monic
            if a.degree().map_or(false, |k| k >= 1) {
                out.push((a.to_primitive_z().0, i));
            }
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn polyq_div_rem_exact() {
        // (t² - 1) / (t - 1) = t + 1
        let num = PolyQ::from_integers(&[-1, 0, 1]);
        let den = PolyQ::from_integers(&[-1, 1]);
        let (p, r) = num.div_rem(&den);
        assert!(r.is_zero());
        assert_eq!(p, PolyQ::from_integers(&[1, 1]));
    }

    #[test]
    fn polyq_div_rem_with_remainder() {
        let num = PolyQ::from_integers(&[1, 0, 1]); // t² + 1
        let den = PolyQ::from_integers(&[1, 1]); // t + 1
        let (p, r) = num.div_rem(&den);
        assert_eq!(p, PolyQ::from_integers(&[-1, 1]));
        assert_eq!(r, PolyQ::from_integers(&[2]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // gcd((t-2)(t+3), (t-2)(t-5)) = t - 2 up to scalars
        let a = PolyQ::from_integers(&[-2, 1]).mul(&PolyQ::from_integers(&[3, 1]));
        let b = PolyQ::from_integers(&[-2, 1]).mul(&PolyQ::from_integers(&[-5, 1]));
        let g = a.gcd(&b);
        assert_eq!(g, PolyQ::from_integers(&[-2, 1]));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = PolyZ::from_integers(&[27, 0, 0, 4]);
        let b = PolyZ::from_integers(&[0, 0, 0, 1]);
        assert_eq!(a.gcd(&b), PolyZ::one());
    }

    #[test]
    fn primitive_z_normalization() {
        let p = PolyQ::new(vec![q(-2, 3), q(4, 3)]); // (-2 + 4t)/3
        let (z, scale) = p.to_primitive_z();
        assert_eq!(z, PolyZ::from_integers(&[-1, 2]));
        assert_eq!(scale, q(2, 3));
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        // (x-1)²(x+2)³ -> [(x+2-ish factors)]
        let f = PolyZ::from_integers(&[-1, 1]);
        let g = PolyZ::from_integers(&[2, 1]);
        let prod = f.mul(&f).mul(&g).mul(&g).mul(&g);
        let dec = prod.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert!(dec.contains(&(f.clone(), 2)));
        assert!(dec.contains(&(g.clone(), 3)));
    }

    #[test]
    fn squarefree_part_strips_powers() {
        let f = PolyZ::from_integers(&[0, 1]); // x
        let cube = f.mul(&f).mul(&f);
        assert_eq!(cube.squarefree_part(), f);
    }
}
