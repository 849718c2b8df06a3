//! Complex root finding for integer polynomials whose coefficients overflow
//! f64 range.
//!
//! Arithmetic is done in extended-exponent complex numbers (an f64 mantissa
//! pair plus an i64 binary exponent), so polynomials with coefficients of
//! thousands of bits evaluate without overflow while keeping ~15 significant
//! digits.  Roots are located by the Aberth–Ehrlich simultaneous iteration
//! started from Newton-polygon radii.  Callers are expected to pass
//! squarefree polynomials (use `PolyZ::squarefree_decomposition` first);
//! clustered multiple roots would only converge linearly.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::PolyZ;

#[derive(Debug, Error, PartialEq)]
pub enum NumericError {
    #[error("root finding did not converge: worst relative residual {worst_residual:.3e} after {iterations} iterations")]
    DidNotConverge { worst_residual: f64, iterations: usize },
    #[error("a root exceeds f64 range (binary exponent {exp2})")]
    RootOutOfRange { exp2: i64 },
    #[error("cannot extract roots of a constant polynomial")]
    ConstantPolynomial,
}

/// (re + i·im)·2^e with max(|re|, |im|) kept in [1, 2) (or exactly zero).
#[derive(Copy, Clone, Debug)]
struct ExtC {
    re: f64,
    im: f64,
    e: i64,
}

impl ExtC {
    const ZERO: ExtC = ExtC { re: 0.0, im: 0.0, e: 0 };

    fn norm(re: f64, im: f64, e: i64) -> ExtC {
        let m = re.abs().max(im.abs());
        if m == 0.0 || !m.is_finite() {
            if m != 0.0 {
                // overflow inside mantissa arithmetic cannot happen: inputs
                // are kept in [1,2) and combined with a handful of ops
                panic!("non-finite mantissa in extended arithmetic");
            }
            return ExtC::ZERO;
        }
        let k = m.log2().floor() as i32;
        let s = (2.0f64).powi(-k);
        ExtC { re: re * s, im: im * s, e: e + k as i64 }
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn from_f64(x: f64) -> ExtC {
        ExtC::norm(x, 0.0, 0)
    }

    fn from_bigint(x: &num_bigint::BigInt) -> ExtC {
        if x.is_zero() {
            return ExtC::ZERO;
        }
        let bits = x.bits();
        if bits <= 53 {
            return ExtC::from_f64(x.to_f64().unwrap());
        }
        let shift = bits - 53;
        let top = (x >> shift).to_f64().unwrap();
        ExtC::norm(top, 0.0, shift as i64)
    }

    fn mul(self, o: ExtC) -> ExtC {
        ExtC::norm(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.e + o.e,
        )
    }

    fn add(self, o: ExtC) -> ExtC {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let d = self.e - o.e;
        if d >= 160 {
            return self;
        }
        if d <= -160 {
            return o;
        }
        if d >= 0 {
            let s = (2.0f64).powi(-d as i32);
            ExtC::norm(self.re + o.re * s, self.im + o.im * s, self.e)
        } else {
            let s = (2.0f64).powi(d as i32);
            ExtC::norm(self.re * s + o.re, self.im * s + o.im, o.e)
        }
    }

    fn sub(self, o: ExtC) -> ExtC {
        self.add(ExtC { re: -o.re, im: -o.im, e: o.e })
    }

    fn div(self, o: ExtC) -> ExtC {
        debug_assert!(!o.is_zero());
        let den = o.re * o.re + o.im * o.im;
        ExtC::norm(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
            self.e - o.e,
        )
    }

    fn recip(self) -> ExtC {
        ExtC { re: 1.0, im: 0.0, e: 0 }.div(self)
    }

    /// log2 |z|, or -inf for zero.
    fn log2_abs(self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.re.hypot(self.im).log2() + self.e as f64
    }

    fn to_c64(self) -> Option<Complex64> {
        if self.is_zero() {
            return Some(Complex64::new(0.0, 0.0));
        }
        if self.e > 1020 || self.e < -1020 {
            return None;
        }
        let s = (2.0f64).powi(self.e as i32);
        Some(Complex64::new(self.re * s, self.im * s))
    }
}

/// Evaluate p and p′ at z by a joint Horner pass.
fn eval_with_derivative(coeffs: &[ExtC], z: ExtC) -> (ExtC, ExtC) {
    let mut b = coeffs[coeffs.len() - 1];
    let mut d = ExtC::ZERO;
    for c in coeffs[..coeffs.len() - 1].iter().rev() {
        d = d.mul(z).add(b);
        b = b.mul(z).add(*c);
    }
    (b, d)
}

/// Σ |c_k||z|^k, the natural residual scale at z, as log2.
fn log2_residual_scale(coeffs: &[ExtC], z: ExtC) -> f64 {
    let az = ExtC::from_f64(1.0);
    let mag = ExtC::norm(z.re.hypot(z.im), 0.0, z.e);
    let mut pw = az;
    let mut acc = ExtC::ZERO;
    for c in coeffs {
        let a = ExtC::norm(c.re.hypot(c.im), 0.0, c.e);
        acc = acc.add(a.mul(pw));
        pw = pw.mul(mag);
    }
    acc.log2_abs()
}

/// Initial Aberth points from the Newton polygon of the coefficient sizes.
fn initial_points(coeffs: &[ExtC]) -> Vec<ExtC> {
    let n = coeffs.len() - 1;
    // upper convex hull of (k, log2|c_k|) over nonzero coefficients
    let pts: Vec<(f64, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as f64, c.log2_abs()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (p.0 - a.0) * (b.1 - a.1);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    let golden = 0.61803398875f64;
    for w in hull.windows(2) {
        let (k1, y1) = w[0];
        let (k2, y2) = w[1];
        let log2_r = (y1 - y2) / (k2 - k1);
        let count = (k2 - k1).round() as usize;
        for j in 0..count {
            let idx = out.len();
            let theta = 2.0 * std::f64::consts::PI * (idx as f64 * golden + j as f64 / count as f64 + 0.25);
            let e = log2_r.floor();
            let frac = (2.0f64).powf(log2_r - e);
            out.push(ExtC::norm(frac * theta.cos(), frac * theta.sin(), e as i64));
        }
    }
    while out.len() < n {
        let idx = out.len();
        let theta = 2.0 * std::f64::consts::PI * (idx as f64 * golden + 0.3);
        out.push(ExtC::norm(theta.cos(), theta.sin(), 0));
    }
    out.truncate(n);
    out
}

/// All complex roots (with multiplicity equal to 1 for squarefree input) of a
/// nonconstant integer polynomial.  Zero roots are split off exactly.
pub fn complex_roots(p: &PolyZ) -> Result<Vec<Complex64>, NumericError> {
    let deg = match p.degree() {
        None | Some(0) => return Err(NumericError::ConstantPolynomial),
        Some(d) => d,
    };
    let raw = p.coeffs();
    let nzero = raw.iter().take_while(|c| c.is_zero()).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); nzero];
    if nzero == deg {
        return Ok(roots);
    }
    let coeffs: Vec<ExtC> = raw[nzero..].iter().map(ExtC::from_bigint).collect();
    let n = coeffs.len() - 1;

    let mut z = initial_points(&coeffs);
    let max_iter = 400;
    let mut converged = vec![false; n];
    for _it in 0..max_iter {
        let mut all_done = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (pv, dv) = eval_with_derivative(&coeffs, z[i]);
            if pv.is_zero() {
                converged[i] = true;
                continue;
            }
            let newton = if dv.is_zero() {
                // perturb away from a critical point
                ExtC::from_f64(1e-3).mul(z[i]).add(ExtC::from_f64(1e-3))
            } else {
                pv.div(dv)
            };
            let mut s = ExtC::ZERO;
            let mut collision = false;
            for j in 0..n {
                if j == i {
                    continue;
                }
                let diff = z[i].sub(z[j]);
                if diff.is_zero() {
                    collision = true;
                    break;
                }
                s = s.add(diff.recip());
            }
            if collision {
                z[i] = z[i].mul(ExtC::from_f64(1.0 + 1e-7)).add(ExtC::from_f64(1e-9));
                all_done = false;
                continue;
            }
            let denom = ExtC::from_f64(1.0).sub(newton.mul(s));
            let w = if denom.is_zero() { newton } else { newton.div(denom) };
            z[i] = z[i].sub(w);
            // relative step convergence
            if w.log2_abs() <= z[i].log2_abs() - 46.0 || w.log2_abs() < -1060.0 {
                converged[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }

    // residual acceptance relative to the coefficient scale at each root
    let mut worst: f64 = 0.0;
    for zi in &z {
        let (pv, _) = eval_with_derivative(&coeffs, *zi);
        let rel = (2.0f64).powf(pv.log2_abs() - log2_residual_scale(&coeffs, *zi));
        worst = worst.max(rel);
    }
    if worst > 1e-8 {
        return Err(NumericError::DidNotConverge { worst_residual: worst, iterations: max_iter });
    }

    for zi in z {
        match zi.to_c64() {
            Some(c) => roots.push(c),
            None => return Err(NumericError::RootOutOfRange { exp2: zi.e }),
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn sorted_real_parts(mut v: Vec<Complex64>) -> Vec<f64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        v.into_iter().map(|c| c.re).collect()
    }

    #[test]
    fn roots_of_quadratic() {
        // (x-3)(x+5) = x² + 2x - 15
        let p = PolyZ::from_integers(&[-15, 2, 1]);
        let r = sorted_real_parts(complex_roots(&p).unwrap());
        assert!((r[0] + 5.0).abs() < 1e-10);
        assert!((r[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn complex_pair() {
        // x² + 1
        let p = PolyZ::from_integers(&[1, 0, 1]);
        let r = complex_roots(&p).unwrap();
        assert_eq!(r.len(), 2);
        for c in r {
            assert!(c.re.abs() < 1e-10 && (c.im.abs() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_roots_are_exact() {
        // x³ - 2x² = x²(x-2) ... not squarefree in the zero root, still exact
        let p = PolyZ::from_integers(&[0, 0, -2, 1]);
        let r = complex_roots(&p).unwrap();
        assert_eq!(r.iter().filter(|c| c.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|c| (c.re - 2.0).abs() < 1e-10));
    }

    #[test]
    fn widely_spread_coefficients() {
        // (x - 2^100)(2^100 x - 1) = 2^100 x² - (2^200 + 1) x + 2^100
        let big = BigInt::from(2u8).pow(100);
        let p = PolyZ::new(vec![
            big.clone(),
            -(&big * &big) - BigInt::from(1u8),
            big.clone(),
        ]);
        // roots 2^100 and 2^-100
        let r = complex_roots(&p).unwrap();
        let mut mags: Vec<f64> = r.iter().map(|c| c.norm().log2()).collect();
        mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((mags[0] + 100.0).abs() < 1e-6);
        assert!((mags[1] - 100.0).abs() < 1e-6);
    }

    #[test]
    fn degree_20_random_poly_residuals() {
        // x^20 - 1: all roots on the unit circle
        let mut c = vec![0i64; 21];
        c[0] = -1;
        c[20] = 1;
        let p = PolyZ::from_integers(&c);
        let r = complex_roots(&p).unwrap();
        assert_eq!(r.len(), 20);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn constant_rejected() {
        assert!(matches!(
            complex_roots(&PolyZ::from_integers(&[7])),
            Err(NumericError::ConstantPolynomial)
        ));
    }
}
