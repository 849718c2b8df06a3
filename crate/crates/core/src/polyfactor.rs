//! Exact factorization of univariate integer polynomials over ℚ, and exact
//! rational root extraction.
//!
//! The pipeline is the classical one: primitive part, Yun squarefree
//! decomposition, Cantor–Zassenhaus factorization modulo a word-sized prime,
//! quadratic Hensel lifting past the factor-coefficient bound, and subset
//! recombination with trial division over ℤ.  Degrees here stay small
//! (modular-polynomial slices, ≤ 72), so the plain algorithms are enough.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::PolyZ;
use crate::Rational;

/// Primes used for the modular factorization; large enough that random
/// squarefree inputs stay squarefree mod p with overwhelming probability.
const FACTOR_PRIMES: [u64; 8] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387631,
];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Dense polynomial over F_p, ascending coefficients, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PolyP {
    c: Vec<u64>,
    p: u64,
}

impl PolyP {
    fn new(mut c: Vec<u64>, p: u64) -> Self {
        for x in &mut c {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyP { c, p }
    }

    fn from_polyz(f: &PolyZ, p: u64) -> Self {
        let pb = BigInt::from(p);
        PolyP::new(
            f.coeffs().iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect(),
            p,
        )
    }

    fn zero(p: u64) -> Self {
        PolyP { c: Vec::new(), p }
    }

    fn x(p: u64) -> Self {
        PolyP::new(vec![0, 1], p)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn monic(&self) -> PolyP {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lc(), self.p);
        PolyP::new(self.c.iter().map(|&x| mulmod(x, inv, self.p)).collect(), self.p)
    }

    #[allow(dead_code)]
    fn add(&self, o: &PolyP) -> PolyP {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        let mut out = vec![0u64; n];
        for (i, &x) in self.c.iter().enumerate() {
            out[i] = x;
        }
        for (i, &x) in o.c.iter().enumerate() {
            out[i] = (out[i] + x) % p;
        }
        PolyP::new(out, p)
    }

    fn sub(&self, o: &PolyP) -> PolyP {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        let mut out = vec![0u64; n];
        for (i, &x) in self.c.iter().enumerate() {
            out[i] = x;
        }
        for (i, &x) in o.c.iter().enumerate() {
            out[i] = (out[i] + p - x) % p;
        }
        PolyP::new(out, p)
    }

    fn mul(&self, o: &PolyP) -> PolyP {
        let p = self.p;
        if self.is_zero() || o.is_zero() {
            return PolyP::zero(p);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        PolyP::new(out, p)
    }

    fn divrem(&self, d: &PolyP) -> (PolyP, PolyP) {
        let p = self.p;
        assert!(!d.is_zero());
        if self.deg() < d.deg() {
            return (PolyP::zero(p), self.clone());
        }
        let dd = d.deg() as usize;
        let inv = invmod(d.lc(), p);
        let mut rem = self.c.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = mulmod(*rem.last().unwrap(), inv, p);
            if q != 0 {
                for (i, &c) in d.c.iter().enumerate() {
                    rem[k + i] = (rem[k + i] + p - mulmod(q, c, p)) % p;
                }
            }
            quot[k] = q;
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (PolyP::new(quot, p), PolyP::new(rem, p))
    }

    fn rem(&self, d: &PolyP) -> PolyP {
        self.divrem(d).1
    }

    fn gcd(&self, o: &PolyP) -> PolyP {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> PolyP {
        let p = self.p;
        if self.c.len() <= 1 {
            return PolyP::zero(p);
        }
        PolyP::new(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| mulmod(c, (i as u64 + 1) % p, p))
                .collect(),
            p,
        )
    }

    /// self^e mod m, with a big-integer exponent.
    fn modpow_big(&self, e: &BigUint, m: &PolyP) -> PolyP {
        let p = self.p;
        let mut base = self.rem(m);
        let mut acc = PolyP::new(vec![1], p);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        acc
    }
}

/// Deterministic light-weight RNG for the equal-degree splitting.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// Monic irreducible factors of a monic squarefree polynomial mod p.
fn factor_squarefree_mod_p(f: &PolyP) -> Vec<PolyP> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut rng = SplitMix(0x5eed_0f_ca55u64 ^ p);

    // distinct-degree split
    let mut by_degree: Vec<(PolyP, usize)> = Vec::new();
    let mut h = PolyP::x(p);
    let mut d = 0usize;
    while rest.deg() > 0 {
        d += 1;
        if 2 * d > rest.deg() as usize {
            by_degree.push((rest.clone(), rest.deg() as usize));
            break;
        }
        h = h.modpow_big(&BigUint::from(p), &rest);
        let g = rest.gcd(&h.sub(&PolyP::x(p)));
        if g.deg() > 0 {
            by_degree.push((g.clone(), d));
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
    }

    // equal-degree (Cantor–Zassenhaus) splitting
    let mut stack = by_degree;
    while let Some((g, d)) = stack.pop() {
        if g.deg() as usize == d {
            out.push(g.monic());
            continue;
        }
        let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u8);
        loop {
            let mut rand_c: Vec<u64> = (0..g.deg() as usize + 1).map(|_| rng.next() % p).collect();
            rand_c[0] |= 1;
            let a = PolyP::new(rand_c, p);
            if a.deg() < 1 {
                continue;
            }
            let b = a.modpow_big(&exp, &g);
            let split = g.gcd(&b.sub(&PolyP::new(vec![1], p)));
            if split.deg() > 0 && split.deg() < g.deg() {
                let other = g.divrem(&split).0;
                stack.push((split, d));
                stack.push((other, d));
                break;
            }
        }
    }
    out
}

/// Balanced residue in (−m/2, m/2].
fn balance(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zm_reduce(f: &PolyZ, m: &BigInt) -> PolyZ {
    PolyZ::new(f.coeffs().iter().map(|c| balance(c, m)).collect())
}

fn zm_mul(a: &PolyZ, b: &PolyZ, m: &BigInt) -> PolyZ {
    zm_reduce(&a.mul(b), m)
}

fn zm_add(a: &PolyZ, b: &PolyZ, m: &BigInt) -> PolyZ {
    zm_reduce(&a.add(b), m)
}

fn zm_sub(a: &PolyZ, b: &PolyZ, m: &BigInt) -> PolyZ {
    zm_reduce(&a.sub(b), m)
}

/// Division with remainder by a monic divisor, coefficients mod m.
fn zm_divrem_monic(a: &PolyZ, d: &PolyZ, m: &BigInt) -> (PolyZ, PolyZ) {
    assert!(d.leading().map_or(false, |c| c.is_one()), "divisor must be monic");
    let dd = d.degree().unwrap();
    let mut rem: Vec<BigInt> = a.coeffs().to_vec();
    if rem.len() <= dd {
        return (PolyZ::zero(), PolyZ::new(rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let q = balance(rem.last().unwrap(), m);
        if !q.is_zero() {
            for (i, c) in d.coeffs().iter().enumerate() {
                let v = balance(&(&q * c), m);
                let t = balance(&(&rem[k + i] - v), m);
                rem[k + i] = t;
            }
        }
        quot[k] = q;
        rem.pop();
        while rem.last().map_or(false, |c| c.is_zero()) {
            rem.pop();
        }
        if rem.len() <= dd {
            break;
        }
    }
    (PolyZ::new(quot), zm_reduce(&PolyZ::new(rem), m))
}

/// Extended gcd mod p for coprime (g, h): s·g + t·h ≡ 1.
fn ext_gcd_mod_p(g: &PolyP, h: &PolyP) -> (PolyZ, PolyZ) {
    let p = g.p;
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1) = (PolyP::new(vec![1], p), PolyP::zero(p));
    let (mut t0, mut t1) = (PolyP::zero(p), PolyP::new(vec![1], p));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let ns = s0.sub(&q.mul(&s1));
        let nt = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    assert_eq!(r0.deg(), 0, "ext_gcd needs coprime inputs");
    let inv = invmod(r0.lc(), p);
    let scale = |f: &PolyP| -> PolyZ {
        let pb = BigInt::from(p);
        PolyZ::new(
            f.c.iter()
                .map(|&c| balance(&BigInt::from(mulmod(c, inv, p)), &pb))
                .collect(),
        )
    };
    (scale(&s0), scale(&t0))
}

/// One quadratic Hensel step: f ≡ g·h (mod m), s·g + t·h ≡ 1 (mod m),
/// g monic → same data mod m².
///
/// With this Bezout convention the g-update reduces t·e modulo g:
/// g·(s·e + q·h) + h·(t·e mod g) = e·(s·g + t·h) ≡ e (mod m²).
fn hensel_step(
    f: &PolyZ,
    g: &PolyZ,
    h: &PolyZ,
    s: &PolyZ,
    t: &PolyZ,
    m: &BigInt,
) -> (PolyZ, PolyZ, PolyZ, PolyZ) {
    let m2 = m * m;
    let e = zm_sub(f, &g.mul(h), &m2);
    let (q, r) = zm_divrem_monic(&zm_mul(t, &e, &m2), g, &m2);
    let g1 = zm_add(g, &r, &m2);
    let h1 = zm_reduce(&h.add(&s.mul(&e)).add(&q.mul(h)), &m2);
    let b = zm_reduce(&s.mul(&g1).add(&t.mul(&h1)).sub(&PolyZ::one()), &m2);
    let (c, d) = zm_divrem_monic(&zm_mul(t, &b, &m2), &g1, &m2);
    let t1 = zm_sub(t, &d, &m2);
    let s1 = zm_reduce(&s.sub(&s.mul(&b)).sub(&c.mul(&h1)), &m2);
    (g1, h1, s1, t1)
}

/// Lift the modular factorization lc·∏ gᵢ ≡ f (mod p) through `steps`
/// quadratic Hensel steps.  Every branch performs the same number of steps,
/// so all returned factors live modulo the same p^(2^steps).
fn hensel_lift_tree(f: &PolyZ, factors: &[PolyP], p: u64, steps: u32) -> Vec<PolyZ> {
    let pb = BigInt::from(p);
    if factors.len() == 1 {
        // f is already the lift of this single factor (up to lc)
        return vec![f.clone()];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let prod_p = |fs: &[PolyP]| -> PolyP {
        let mut acc = PolyP::new(vec![1], p);
        for g in fs {
            acc = acc.mul(g);
        }
        acc
    };
    let to_z = |g: &PolyP| -> PolyZ {
        PolyZ::new(g.c.iter().map(|&c| balance(&BigInt::from(c), &pb)).collect())
    };
    let gp = prod_p(left); // monic
    let lc_p = big_to_u64_mod(f.leading().unwrap(), p);
    let hp_monic = prod_p(right);
    let hp = PolyP::new(hp_monic.c.iter().map(|&c| mulmod(c, lc_p, p)).collect(), p);
    let (mut s, mut t) = ext_gcd_mod_p(&gp, &hp);
    let mut g = to_z(&gp);
    let mut h = to_z(&hp);
    let mut m = pb;
    for _ in 0..steps {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    // recurse: g ≡ ∏ left (monic), h ≡ lc·∏ right, both mod p
    let mut gs = hensel_lift_tree(&g, left, p, steps);
    gs.extend(hensel_lift_tree(&h, right, p, steps));
    gs
}

fn big_to_u64_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Make the lifted factor list monic mod m (the recursion can leave the
/// lc-bearing side non-monic).
fn monicize_mod(fs: Vec<PolyZ>, m: &BigInt) -> Vec<PolyZ> {
    fs.into_iter()
        .map(|f| {
            let lc = f.leading().unwrap().clone();
            if lc.is_one() {
                return f;
            }
            let inv = mod_inverse(&lc, m).expect("leading coefficient invertible mod p^k");
            zm_reduce(&f.mul_scalar(&inv), m)
        })
        .collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Factor a primitive squarefree nonconstant polynomial into primitive
/// irreducible factors over ℤ.
fn factor_primitive_squarefree(f: &PolyZ) -> Vec<PolyZ> {
    let n = f.degree().unwrap();
    if n == 1 {
        return vec![f.clone()];
    }
    // choose a prime keeping f squarefree with lc nonzero; among a few
    // usable primes prefer the factorization with the fewest modular factors
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut tried = 0;
    for &p in FACTOR_PRIMES.iter() {
        if big_to_u64_mod(f.leading().unwrap(), p) == 0 {
            continue;
        }
        let fp = PolyP::from_polyz(f, p).monic();
        if fp.gcd(&fp.derivative()).deg() != 0 {
            continue;
        }
        let factors = factor_squarefree_mod_p(&fp);
        let better = best.as_ref().map_or(true, |(_, b)| factors.len() < b.len());
        if better {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= 3 || best.as_ref().map_or(false, |(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, factors) = best.expect("some word prime keeps a squarefree integer polynomial squarefree");
    if factors.len() == 1 {
        return vec![f.clone()];
    }

    // factor coefficient bound (Mignotte-flavored, deliberately generous)
    let maxc = f.coeffs().iter().map(|c| c.abs()).max().unwrap();
    let lc = f.leading().unwrap().clone();
    let bound: BigInt =
        (BigInt::one() << (n + 2)) * BigInt::from(n as u64 + 1) * &maxc * lc.abs();
    let target = &bound * 2 + 1;
    let mut modulus = BigInt::from(p);
    let mut steps = 0u32;
    while modulus < target {
        modulus = &modulus * &modulus;
        steps += 1;
    }

    let lifted = hensel_lift_tree(f, &factors, p, steps);
    let lifted = monicize_mod(lifted, &modulus);

    // subset recombination with trial division
    let mut pool: Vec<PolyZ> = lifted;
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= pool.len() {
        let idxs: Vec<usize> = (0..pool.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut cand = PolyZ::new(vec![rest.leading().unwrap().clone()]);
            for &i in &combo {
                cand = zm_mul(&cand, &pool[i], &modulus);
            }
            let cand = cand.primitive();
            // cheap screen: a true factor's constant term divides rest(0)
            if !cand.constant_term().is_zero() && !rest.constant_term().is_zero() {
                let ct = cand.constant_term().abs();
                if !rest.constant_term().mod_floor(&ct).is_zero() {
                    continue;
                }
            }
            if let Some(q) = try_div_exact(&rest, &cand) {
                rest = q.primitive();
                out.push(cand);
                let keep: Vec<PolyZ> = pool
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                pool = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.degree().map_or(false, |d| d >= 1) {
        out.push(rest.primitive());
    }
    out
}

/// Quotient if d divides f exactly over ℤ.
fn try_div_exact(f: &PolyZ, d: &PolyZ) -> Option<PolyZ> {
    if d.is_zero() || f.degree() < d.degree() {
        return None;
    }
    let dd = d.degree().unwrap();
    let dl = d.leading().unwrap();
    let mut rem: Vec<BigInt> = f.coeffs().to_vec();
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let (q, r) = rem.last().unwrap().div_rem(dl);
        if !r.is_zero() {
            return None;
        }
        for (i, c) in d.coeffs().iter().enumerate() {
            let v = &q * c;
            rem[k + i] -= v;
        }
        quot[k] = q;
        rem.pop();
        while rem.last().map_or(false, |c| c.is_zero()) {
            rem.pop();
        }
        if rem.len() <= dd {
            break;
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(PolyZ::new(quot))
    } else {
        None
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Irreducible factorization over ℚ, as primitive integer polynomials with
/// multiplicities.  The content and sign are dropped (they carry no roots).
pub fn factor_over_q(f: &PolyZ) -> Vec<(PolyZ, usize)> {
    let mut out = Vec::new();
    if f.degree().map_or(true, |d| d == 0) {
        return out;
    }
    for (sqfree, mult) in f.squarefree_decomposition() {
        for irr in factor_primitive_squarefree(&sqfree) {
            out.push((irr, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().first().cmp(&b.0.coeffs().first()))
    });
    out
}

/// All rational roots of f with multiplicities, exactly.
pub fn rational_roots(f: &PolyZ) -> Vec<(Rational, usize)> {
    factor_over_q(f)
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, m)| {
            let a = g.coeffs()[0].clone();
            let b = g.coeffs()[1].clone();
            (Rational::new(-a, b), m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pz(cs: &[i64]) -> PolyZ {
        PolyZ::from_integers(cs)
    }

    #[test]
    fn mod_p_factor_of_quadratic() {
        let p = FACTOR_PRIMES[0];
        // (x-1)(x-2) mod p
        let f = PolyP::from_polyz(&pz(&[2, -3, 1]), p);
        let fs = factor_squarefree_mod_p(&f);
        assert_eq!(fs.len(), 2);
        for g in fs {
            assert_eq!(g.deg(), 1);
        }
    }

    #[test]
    fn factor_product_of_linears() {
        // (2x-1)(x+3)(x-5)
        let f = pz(&[-1, 2]).mul(&pz(&[3, 1])).mul(&pz(&[-5, 1]));
        let fs = factor_over_q(&f);
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn factor_mixed_degrees() {
        // (x² + 1)(x² - 2)(x - 7)²
        let f = pz(&[1, 0, 1]).mul(&pz(&[-2, 0, 1])).mul(&pz(&[-7, 1])).mul(&pz(&[-7, 1]));
        let fs = factor_over_q(&f);
        let mut degs: Vec<(usize, usize)> =
            fs.iter().map(|(g, m)| (g.degree().unwrap(), *m)).collect();
        degs.sort();
        assert_eq!(degs, vec![(1, 2), (2, 1), (2, 1)]);
    }

    #[test]
    fn irreducible_stays_whole() {
        // x^4 + x + 1 is irreducible over Q
        let f = pz(&[1, 1, 0, 0, 1]);
        let fs = factor_over_q(&f);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0, f);
    }

    #[test]
    fn cyclotomic_like_split() {
        // x^4 - 1 = (x-1)(x+1)(x²+1)
        let f = pz(&[-1, 0, 0, 0, 1]);
        let fs = factor_over_q(&f);
        let mut degs: Vec<usize> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2]);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (3x - 2)²(x + 5)(x² + 7)
        let f = pz(&[-2, 3]).mul(&pz(&[-2, 3])).mul(&pz(&[5, 1])).mul(&pz(&[7, 0, 1]));
        let mut roots = rational_roots(&f);
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(
            roots,
            vec![
                (Rational::from_integer((-5).into()), 1),
                (Rational::new(2.into(), 3.into()), 2),
            ]
        );
    }

    #[test]
    fn big_coefficient_factorization() {
        // (x - 10^40)(x + 10^40 + 1): coefficients far beyond u64
        let big: BigInt = BigInt::from(10u8).pow(40);
        let a = PolyZ::new(vec![-big.clone(), BigInt::one()]);
        let b = PolyZ::new(vec![&big + 1, BigInt::one()]);
        let f = a.mul(&b);
        let mut fs = factor_over_q(&f);
        fs.sort_by(|x, y| x.0.coeffs()[0].cmp(&y.0.coeffs()[0]));
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, a);
        assert_eq!(fs[1].0, b);
    }

    #[test]
    fn non_monic_with_shared_content() {
        // 6·(2x+3)(5x-7) has content 6 to strip
        let f = pz(&[3, 2]).mul(&pz(&[-7, 5])).mul_scalar(&BigInt::from(6));
        let fs = factor_over_q(&f);
        assert_eq!(fs.len(), 2);
        let roots = rational_roots(&f);
        assert_eq!(roots.len(), 2);
    }
}
