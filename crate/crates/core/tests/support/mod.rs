//! Shared test oracles: brute-force enumerations, the Vélu 2-isogeny
//! construction, seeded RNG helpers, and the path to the bundled
//! modular-polynomial database.

use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use isocensus::family::{RationalFunctionQ, WeierstrassFamily};
use isocensus::poly::PolyQ;
use isocensus::Rational;

pub fn modpoly_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/modpoly")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform-ish random reduced rational with |numerator|, denominator ≤ bound.
pub fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    loop {
        let n = rng.gen_range(-bound..=bound);
        let d = rng.gen_range(1..=bound);
        if n.gcd(&d) == 1 {
            return Rational::new(n.into(), d.into());
        }
    }
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Brute-force oracle for { p/q reduced : max(|p|, q) ≤ B } as a string set.
pub fn bruteforce_rationals(b: i64) -> Vec<String> {
    let mut out = Vec::new();
    for q in 1..=b {
        for p in -b..=b {
            if p.gcd(&q) == 1 {
                out.push(Rational::new(p.into(), q.into()).to_string());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn rf(num: &[i64], den: &[i64]) -> RationalFunctionQ {
    RationalFunctionQ::new(PolyQ::from_integers(num), PolyQ::from_integers(den)).unwrap()
}

/// The generic test family: f = t, g = 1, f′ = 1, g′ = t.
pub fn generic_family() -> WeierstrassFamily {
    WeierstrassFamily::new(rf(&[0, 1], &[1]), rf(&[1], &[1]), rf(&[1], &[1]), rf(&[0, 1], &[1]))
        .unwrap()
}

/// Short-Weierstrass form of y² = x³ + a·x² + b·x (2-torsion at the origin):
/// depressing the cubic by x → x − a/3 gives
/// f = b − a²/3, g = 2a³/27 − ab/3.
pub fn x2form_to_short(
    a: &RationalFunctionQ,
    b: &RationalFunctionQ,
) -> (RationalFunctionQ, RationalFunctionQ) {
    let third = Rational::new(1.into(), 3.into());
    let f = b.add(&a.mul(a).scale(&-&third));
    let g = a
        .pow(3)
        .scale(&Rational::new(2.into(), 27.into()))
        .add(&a.mul(b).scale(&-third));
    (f, g)
}

/// The 2-isogeny construction: from the x²-form pair (a(t), b(t)) build the
/// family (E_t, E'_t) where E'_t = E_t/⟨(0,0)⟩ has x²-form (−2a, a² − 4b).
/// Both sides are returned in short Weierstrass form; the members are
/// 2-isogenous at every parameter where both are smooth.
pub fn velu_two_isogeny_family(a: &RationalFunctionQ, b: &RationalFunctionQ) -> WeierstrassFamily {
    let (f, g) = x2form_to_short(a, b);
    let a2 = a.scale(&qi(-2));
    let b2 = a.mul(a).add(&b.scale(&qi(-4)));
    let (fp, gp) = x2form_to_short(&a2, &b2);
    WeierstrassFamily::new(f, g, fp, gp).expect("2-isogeny family is valid")
}

/// Vélu's formulas for the quotient by a rational 2-torsion point (x0, 0) of
/// y² = x³ + Ax + B: the image curve is y² = x³ + (A − 5v)x + (B − 7w) with
/// v = 3x0² + A and w = x0·v.  Returns the image j-invariant, or None when
/// either curve is singular.
pub fn velu_image_j(a: &Rational, b: &Rational, x0: &Rational) -> Option<Rational> {
    use num_traits::Zero;
    // (x0, 0) must be on the curve
    let on_curve = x0 * x0 * x0 + a * x0 + b;
    assert!(on_curve.is_zero(), "kernel point must be 2-torsion");
    let v = qi(3) * x0 * x0 + a;
    let w = x0 * &v;
    let ap = a - qi(5) * v;
    let bp = b - qi(7) * w;
    let disc = qi(4) * &ap * &ap * &ap + qi(27) * &bp * &bp;
    if disc.is_zero() {
        return None;
    }
    Some(qi(6912) * &ap * &ap * &ap / disc)
}

/// log of a positive big integer (test-side convenience).
pub fn ln_big(x: &BigInt) -> f64 {
    isocensus::ln_bigint(x)
}
