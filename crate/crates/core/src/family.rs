//! The parametrized pair family
//!
//! ```text
//! E_t:  y² = x³ + f(t)x + g(t)        E'_t:  y² = x³ + f'(t)x + g'(t)
//! ```
//!
//! with f, g, f′, g′ rational functions over ℚ.  Provides the j-invariant
//! maps j = 6912·f³/(4f³ + 27g²), the family degree d = d_E + d_{E′} (degrees
//! of the reduced j-maps as morphisms P¹ → P¹), the embedding height H(ι)
//! (projective height of the concatenated coefficient vector of both j-maps),
//! and fiber specialization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::heights::height_rational;
use crate::poly::{PolyQ, PolyZ};
use crate::Rational;

#[derive(Debug, Error, PartialEq)]
pub enum FamilyError {
    #[error("rational function has zero denominator")]
    ZeroDenominator,
    #[error("family is generically singular: 4f³ + 27g² vanishes identically")]
    SingularFamily,
    #[error("family is isotrivial: j-invariant is constant in the parameter")]
    IsotrivialFamily,
    #[error("family config line {line}: {msg}")]
    Config { line: usize, msg: String },
}

/// Rational function over ℚ in canonical form: numerator and denominator are
/// coprime integer polynomials, jointly of content 1, denominator with
/// positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionQ {
    num: PolyZ,
    den: PolyZ,
}

impl RationalFunctionQ {
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self, FamilyError> {
        if den.is_zero() {
            return Err(FamilyError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunctionQ { num: PolyZ::zero(), den: PolyZ::one() });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g);
        let den = den.div_exact(&g);
        let (nz, ns) = num.to_primitive_z();
        let (dz, ds) = den.to_primitive_z();
        // num/den = (ns/ds)·(nz/dz) with nz, dz primitive; fold the rational
        // scale into coprime integers u/v and distribute
        let ratio = ns / ds;
        let u = ratio.numer();
        let v = ratio.denom();
        let mut num = nz.mul_scalar(u);
        let mut den = dz.mul_scalar(v);
        let c = {
            let mut c = num.content().gcd(&den.content());
            if den.leading().unwrap().is_negative() {
                c = -c;
            }
            c
        };
        num = num.div_scalar_exact(&c);
        den = den.div_scalar_exact(&c);
        Ok(RationalFunctionQ { num, den })
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RationalFunctionQ::new(p, PolyQ::one()).expect("denominator 1")
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunctionQ::from_poly(PolyQ::constant(c))
    }

    pub fn numerator(&self) -> &PolyZ {
        &self.num
    }

    pub fn denominator(&self) -> &PolyZ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().map_or(true, |d| d == 0) && self.den.degree() == Some(0)
    }

    /// max(deg num, deg den): the degree of the induced map P¹ → P¹.
    pub fn map_degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    fn num_q(&self) -> PolyQ {
        self.num.to_poly_q()
    }

    fn den_q(&self) -> PolyQ {
        self.den.to_poly_q()
    }

    pub fn add(&self, o: &RationalFunctionQ) -> RationalFunctionQ {
        let num = self.num_q().mul(&o.den_q()).add(&o.num_q().mul(&self.den_q()));
        let den = self.den_q().mul(&o.den_q());
        RationalFunctionQ::new(num, den).expect("nonzero denominator")
    }

    pub fn mul(&self, o: &RationalFunctionQ) -> RationalFunctionQ {
        let num = self.num_q().mul(&o.num_q());
        let den = self.den_q().mul(&o.den_q());
        RationalFunctionQ::new(num, den).expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Rational) -> RationalFunctionQ {
        RationalFunctionQ::new(self.num_q().scale(c), self.den_q()).expect("nonzero denominator")
    }

    pub fn pow(&self, e: u32) -> RationalFunctionQ {
        let mut acc = RationalFunctionQ::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// self / o (o nonzero).
    pub fn div(&self, o: &RationalFunctionQ) -> Result<RationalFunctionQ, FamilyError> {
        if o.is_zero() {
            return Err(FamilyError::ZeroDenominator);
        }
        let num = self.num_q().mul(&o.den_q());
        let den = self.den_q().mul(&o.num_q());
        RationalFunctionQ::new(num, den)
    }

    /// Value at t, or `None` when the denominator vanishes at t.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval_rational(t);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(t) / d)
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_poly = |p: &PolyZ| -> String {
            if p.is_zero() {
                return "0".into();
            }
            let terms: Vec<String> = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| match i {
                    0 => format!("{c}"),
                    1 => format!("{c}*t"),
                    _ => format!("{c}*t^{i}"),
                })
                .collect();
            terms.join(" + ")
        };
        if self.den.degree() == Some(0) && self.den.leading().map_or(false, |c| c.is_one()) {
            write!(f, "{}", fmt_poly(&self.num))
        } else {
            write!(f, "({}) / ({})", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

/// j-invariant of the short Weierstrass family (f, g): 6912·f³/(4f³ + 27g²).
pub fn j_function(f: &RationalFunctionQ, g: &RationalFunctionQ) -> Result<RationalFunctionQ, FamilyError> {
    let f3 = f.pow(3);
    let disc = f3.scale(&Rational::from_integer(4.into()))
        .add(&g.pow(2).scale(&Rational::from_integer(27.into())));
    if disc.is_zero() {
        return Err(FamilyError::SingularFamily);
    }
    f3.scale(&Rational::from_integer(6912.into())).div(&disc)
}

/// One smooth fiber: y² = x³ + Ax + B with its j-invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberCurve {
    pub a: Rational,
    pub b: Rational,
    pub j: Rational,
}

/// Why a fiber was not a smooth curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularFiber {
    /// A defining rational function has a pole at this parameter.
    DenominatorPole,
    /// The discriminant −16(4A³ + 27B²) vanishes.
    ZeroDiscriminant,
}

pub type FiberSide = Result<FiberCurve, SingularFiber>;

/// The pair family; immutable and validated at construction.
#[derive(Debug, Clone)]
pub struct WeierstrassFamily {
    f: RationalFunctionQ,
    g: RationalFunctionQ,
    fp: RationalFunctionQ,
    gp: RationalFunctionQ,
    j_e: RationalFunctionQ,
    j_ep: RationalFunctionQ,
    d_e: usize,
    d_ep: usize,
}

impl WeierstrassFamily {
    pub fn new(
        f: RationalFunctionQ,
        g: RationalFunctionQ,
        fp: RationalFunctionQ,
        gp: RationalFunctionQ,
    ) -> Result<Self, FamilyError> {
        let j_e = j_function(&f, &g)?;
        let j_ep = j_function(&fp, &gp)?;
        if j_e.is_constant() || j_ep.is_constant() {
            return Err(FamilyError::IsotrivialFamily);
        }
        let d_e = j_e.map_degree();
        let d_ep = j_ep.map_degree();
        Ok(WeierstrassFamily { f, g, fp, gp, j_e, j_ep, d_e, d_ep })
    }

    pub fn coefficients(&self) -> (&RationalFunctionQ, &RationalFunctionQ, &RationalFunctionQ, &RationalFunctionQ) {
        (&self.f, &self.g, &self.fp, &self.gp)
    }

    pub fn j_e(&self) -> &RationalFunctionQ {
        &self.j_e
    }

    pub fn j_ep(&self) -> &RationalFunctionQ {
        &self.j_ep
    }

    /// d = d_E + d_{E′}, the projective degree of the family.
    pub fn degree(&self) -> usize {
        self.d_e + self.d_ep
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.d_e, self.d_ep)
    }

    /// Specialize both sides at t.  Pole of a defining function and vanishing
    /// discriminant both yield a singular marker (data, not failure).
    pub fn specialize(&self, t: &Rational) -> (FiberSide, FiberSide) {
        (
            specialize_side(&self.f, &self.g, t),
            specialize_side(&self.fp, &self.gp, t),
        )
    }

    /// H(P_t) = H(j(E_t))·H(j(E′_t)), exact.  Errors if either side is singular.
    pub fn segre_fiber_height(&self, t: &Rational) -> Result<BigInt, SingularFiber> {
        let (e, ep) = self.specialize(t);
        let e = e?;
        let ep = ep?;
        Ok(height_rational(&e.j) * height_rational(&ep.j))
    }
}

fn specialize_side(f: &RationalFunctionQ, g: &RationalFunctionQ, t: &Rational) -> FiberSide {
    let a = f.eval(t).ok_or(SingularFiber::DenominatorPole)?;
    let b = g.eval(t).ok_or(SingularFiber::DenominatorPole)?;
    let four = Rational::from_integer(4.into());
    let twenty_seven = Rational::from_integer(27.into());
    let disc = &four * &a * &a * &a + &twenty_seven * &b * &b;
    if disc.is_zero() {
        return Err(SingularFiber::ZeroDiscriminant);
    }
    let j = Rational::from_integer(6912.into()) * &a * &a * &a / disc;
    Ok(FiberCurve { a, b, j })
}

/// How H(ι) treats the two j-maps' coefficient vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IotaHeightMode {
    /// One projective height of the concatenated vector of all four
    /// coefficient lists (each j-map canonically normalized first).
    #[default]
    JointVector,
    /// Product of the two per-map projective heights, for sensitivity checks.
    ProductOfPairs,
}

/// H(ι): the projective height of the coefficients of the defining
/// polynomials of j(E_t) and j(E′_t).
pub fn iota_height(fam: &WeierstrassFamily, mode: IotaHeightMode) -> BigInt {
    let pair_max = |rf: &RationalFunctionQ| -> BigInt {
        rf.numerator()
            .coeffs()
            .iter()
            .chain(rf.denominator().coeffs())
            .map(|c| c.abs())
            .max()
            .expect("canonical form is never empty")
    };
    match mode {
        IotaHeightMode::JointVector => {
            // both pairs are individually content-1, so the concatenated
            // integer vector is already coprime; the height is the max entry
            pair_max(fam.j_e()).max(pair_max(fam.j_ep()))
        }
        IotaHeightMode::ProductOfPairs => pair_max(fam.j_e()) * pair_max(fam.j_ep()),
    }
}

/// H(P_t) ≤ (d+1)·H(ι)·B^d, in log space.
pub fn lemma_fiber_height_bound_ln(d: usize, ln_h_iota: f64, ln_b: f64) -> f64 {
    ((d + 1) as f64).ln() + ln_h_iota + d as f64 * ln_b
}

/// Parse the family config format: one `key = value` per line, `#` comments.
/// Keys are `f`, `g`, `fp`, `gp` with `.num`/`.den` suffixes; values are
/// comma-separated rationals in ascending degree; `.den` defaults to 1.
pub fn parse_family_config(text: &str) -> Result<WeierstrassFamily, FamilyError> {
    let mut parts: [(Option<PolyQ>, Option<PolyQ>); 4] = Default::default();
    let key_index = |k: &str| match k {
        "f" => Some(0),
        "g" => Some(1),
        "fp" => Some(2),
        "gp" => Some(3),
        _ => None,
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| FamilyError::Config { line: lineno + 1, msg };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err("expected `key = value`".into()))?;
        let key = key.trim();
        let (base, which) = key
            .split_once('.')
            .ok_or_else(|| err(format!("expected `<f|g|fp|gp>.<num|den>`, got `{key}`")))?;
        let idx = key_index(base).ok_or_else(|| err(format!("unknown function `{base}`")))?;
        let mut coeffs = Vec::new();
        for piece in value.split(',') {
            let piece = piece.trim();
            let c: Rational = piece
                .parse()
                .map_err(|_| err(format!("bad rational `{piece}`")))?;
            coeffs.push(c);
        }
        let poly = PolyQ::new(coeffs);
        let slot = match which {
            "num" => &mut parts[idx].0,
            "den" => &mut parts[idx].1,
            other => return Err(err(format!("expected `.num` or `.den`, got `.{other}`"))),
        };
        if slot.is_some() {
            return Err(err(format!("duplicate key `{key}`")));
        }
        *slot = Some(poly);
    }
    let mut fns = Vec::with_capacity(4);
    for (i, name) in ["f", "g", "fp", "gp"].iter().enumerate() {
        let (num, den) = std::mem::take(&mut parts[i]);
        let num = num.ok_or(FamilyError::Config {
            line: 0,
            msg: format!("missing `{name}.num`"),
        })?;
        let den = den.unwrap_or_else(PolyQ::one);
        fns.push(RationalFunctionQ::new(num, den)?);
    }
    let gp = fns.pop().unwrap();
    let fp = fns.pop().unwrap();
    let g = fns.pop().unwrap();
    let f = fns.pop().unwrap();
    WeierstrassFamily::new(f, g, fp, gp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunctionQ {
        RationalFunctionQ::new(PolyQ::from_integers(num), PolyQ::from_integers(den)).unwrap()
    }

    /// The generic test family: f = t, g = 1, f′ = 1, g′ = t.
    pub fn generic_family() -> WeierstrassFamily {
        WeierstrassFamily::new(rf(&[0, 1], &[1]), rf(&[1], &[1]), rf(&[1], &[1]), rf(&[0, 1], &[1]))
            .unwrap()
    }

    #[test]
    fn j_of_constant_families() {
        // f = 1, g = 0 -> j = 1728
        let j = j_function(&rf(&[1], &[1]), &RationalFunctionQ::from_poly(PolyQ::zero())).unwrap();
        assert!(j.is_constant());
        assert_eq!(j.eval(&qi(0)).unwrap(), qi(1728));
        // f = 0, g = 1 -> j = 0
        let j = j_function(&RationalFunctionQ::from_poly(PolyQ::zero()), &rf(&[1], &[1])).unwrap();
        assert!(j.is_zero());
    }

    #[test]
    fn j_of_generic_side() {
        // f = t, g = 1 -> 6912t³/(4t³+27)
        let j = j_function(&rf(&[0, 1], &[1]), &rf(&[1], &[1])).unwrap();
        assert_eq!(j.numerator(), &PolyZ::from_integers(&[0, 0, 0, 6912]));
        assert_eq!(j.denominator(), &PolyZ::from_integers(&[27, 0, 0, 4]));
        assert_eq!(j.map_degree(), 3);
    }

    #[test]
    fn singular_family_rejected() {
        // 4f³ + 27g² = 0 identically: f = -3u², g = 2u³ gives 4·(-27)u⁶ + 27·4u⁶ = 0
        let f = rf(&[0, 0, -3], &[1]);
        let g = rf(&[0, 0, 0, 2], &[1]);
        assert_eq!(j_function(&f, &g).unwrap_err(), FamilyError::SingularFamily);
    }

    #[test]
    fn family_degree_of_generic_family() {
        let fam = generic_family();
        assert_eq!(fam.degrees(), (3, 2));
        assert_eq!(fam.degree(), 5);
    }

    #[test]
    fn isotrivial_rejected() {
        let err = WeierstrassFamily::new(rf(&[1], &[1]), rf(&[0], &[1]), rf(&[1], &[1]), rf(&[0, 1], &[1]))
            .unwrap_err();
        assert_eq!(err, FamilyError::IsotrivialFamily);
    }

    #[test]
    fn iota_height_of_generic_family() {
        let fam = generic_family();
        assert_eq!(iota_height(&fam, IotaHeightMode::JointVector), BigInt::from(6912));
        assert_eq!(
            iota_height(&fam, IotaHeightMode::ProductOfPairs),
            BigInt::from(6912u64 * 6912)
        );
    }

    #[test]
    fn iota_height_invariant_under_scaling() {
        let fam = generic_family();
        // scale f's defining pair by 7: same rational function after
        // canonicalization, so the same family and the same height
        let f7 = RationalFunctionQ::new(
            PolyQ::from_integers(&[0, 7]),
            PolyQ::from_integers(&[7]),
        )
        .unwrap();
        let fam7 = WeierstrassFamily::new(
            f7,
            rf(&[1], &[1]),
            rf(&[1], &[1]),
            rf(&[0, 1], &[1]),
        )
        .unwrap();
        assert_eq!(
            iota_height(&fam, IotaHeightMode::JointVector),
            iota_height(&fam7, IotaHeightMode::JointVector)
        );
    }

    #[test]
    fn specialize_generic_family() {
        let fam = generic_family();
        let (e, ep) = fam.specialize(&qi(0));
        let e = e.unwrap();
        assert_eq!(e.a, qi(0));
        assert_eq!(e.b, qi(1));
        assert_eq!(e.j, qi(0));
        assert!(ep.is_ok());
    }

    #[test]
    fn specialize_pole_is_singular() {
        // f = 1/t: pole at t = 0
        let fam = WeierstrassFamily::new(
            rf(&[1], &[0, 1]),
            rf(&[1], &[1]),
            rf(&[1], &[1]),
            rf(&[0, 1], &[1]),
        )
        .unwrap();
        let (e, _) = fam.specialize(&qi(0));
        assert_eq!(e.unwrap_err(), SingularFiber::DenominatorPole);
    }

    #[test]
    fn segre_fiber_height_at_one() {
        let fam = generic_family();
        let h = fam.segre_fiber_height(&qi(1)).unwrap();
        assert_eq!(h, BigInt::from(6912u64) * BigInt::from(6912u64));
    }

    #[test]
    fn config_roundtrip() {
        let cfg = "# generic family\nf.num = 0,1\ng.num = 1\nfp.num = 1\ngp.num = 0,1\n";
        let fam = parse_family_config(cfg).unwrap();
        assert_eq!(fam.degree(), 5);
    }

    #[test]
    fn config_errors_carry_line_numbers() {
        let cfg = "f.num = 0,1\ng.num = oops\n";
        match parse_family_config(cfg).unwrap_err() {
            FamilyError::Config { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
