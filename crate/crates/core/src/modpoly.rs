//! Classical modular polynomials Φₙ: database ingestion, exact bivariate
//! evaluation, cyclic-isogeny detection, CM screening.
//!
//! Φₙ(X, Y) is symmetric of degree ψ(n) = n·∏_{p|n}(1 + 1/p) in each variable
//! and vanishes exactly on pairs of j-invariants of elliptic curves linked by
//! a cyclic n-isogeny.  The polynomials are ingested as data, never computed
//! here: one file per level `phi_j_<n>.txt`, each line `[i,k] c` with
//! i ≥ k ≥ 0 meaning c·XⁱYᵏ (+ c·XᵏYⁱ when i ≠ k), `#` comments allowed,
//! lines unordered.  The leading monomial X^ψ + Y^ψ (coefficient 1) may be
//! omitted; it is inserted on load.  Φ₁ = X − Y is built in (it is the one
//! antisymmetric case and needs no file).
//!
//! Zero testing at rational arguments screens through a few word-sized primes
//! first — a nonzero residue proves the exact value nonzero — and only
//! confirms actual zeros with full big-integer evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::numeric::{self, NumericError};
use crate::poly::PolyZ;
use crate::Rational;

/// ψ(n) = n·∏_{p|n}(1 + 1/p), the degree of Φₙ in each variable.
pub fn psi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut v = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            v = v / p * (p + 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        v = v / m * (m + 1);
    }
    v
}

/// Additive constant of the isogeny height-gap bound.
pub const PAZUKI_ADDITIVE_CONSTANT: f64 = 9.204;

/// |h(j₁) − h(j₂)| ≤ 9.204 + 12·log(deg φ) for any isogeny φ between the curves.
pub fn pazuki_gap_bound(n: u64) -> f64 {
    PAZUKI_ADDITIVE_CONSTANT + 12.0 * (n as f64).ln()
}

/// The multiplicative form of the gap constant: H(j₁) < A·m¹²·H(j₂) with A = e^9.204.
pub fn pazuki_multiplier() -> f64 {
    PAZUKI_ADDITIVE_CONSTANT.exp()
}

/// The 13 rational CM j-invariants, keyed by the discriminant of the
/// (class-number-one) order.
pub const CM_J_INVARIANTS: [(i64, i64); 13] = [
    (-3, 0),
    (-4, 1728),
    (-7, -3375),
    (-8, 8000),
    (-11, -32768),
    (-12, 54000),
    (-16, 287496),
    (-19, -884736),
    (-27, -12288000),
    (-28, 16581375),
    (-43, -884736000),
    (-67, -147197952000),
    (-163, -262537412640768000),
];

/// CM table lookup: the discriminant if j is one of the 13 rational CM values.
pub fn is_cm_j(j: &Rational) -> Option<i64> {
    if !j.denom().is_one() {
        return None;
    }
    let n = j.numer().to_i64()?;
    CM_J_INVARIANTS.iter().find(|(_, jj)| *jj == n).map(|(d, _)| *d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DegreeMismatch { expected: u64, found: u64 },
    SymmetryViolation { i: u64, k: u64 },
    LeadingCoefficient { found: BigInt },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DegreeMismatch { expected, found } => {
                write!(f, "degree in X is {found}, want ψ = {expected}")
            }
            Violation::SymmetryViolation { i, k } => {
                write!(f, "stored monomial [{i},{k}] violates i ≥ k storage symmetry")
            }
            Violation::LeadingCoefficient { found } => {
                write!(f, "leading monomial coefficient is {found}, want 1")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum ModPolyError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: parse error at line {line} (last valid entry at line {last_valid}): {msg}")]
    Parse { path: String, line: usize, last_valid: usize, msg: String },
    #[error("Φ_{level} invalid: {violation}")]
    Validation { level: u64, violation: Violation },
    #[error("modular polynomial level {level} not in database (available: 1, {})", available_str(.available))]
    MissingLevel { level: u64, available: Vec<u64> },
    #[error("root finding failed: {0}")]
    RootFinding(#[from] NumericError),
}

fn available_str(v: &[u64]) -> String {
    if v.is_empty() {
        "none from files".to_string()
    } else {
        v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ")
    }
}

/// One symmetric modular polynomial, stored as the half i ≥ k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularPolynomial {
    level: u64,
    terms: BTreeMap<(u64, u64), BigInt>,
}

impl ModularPolynomial {
    /// Φ₁ = X − Y, the built-in antisymmetric level.
    pub fn level_one() -> Self {
        ModularPolynomial { level: 1, terms: BTreeMap::new() }
    }

    /// Assemble from raw stored terms (no validation; see [`Self::validate`]).
    pub fn from_terms(level: u64, terms: BTreeMap<(u64, u64), BigInt>) -> Self {
        ModularPolynomial { level, terms }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Degree in X (= degree in Y by symmetry).
    pub fn degree(&self) -> u64 {
        if self.level == 1 {
            return 1;
        }
        self.terms.keys().map(|&(i, k)| i.max(k)).max().unwrap_or(0)
    }

    pub fn stored_terms(&self) -> &BTreeMap<(u64, u64), BigInt> {
        &self.terms
    }

    /// Check the structural contract: storage symmetry (i ≥ k), degree
    /// ψ(level) in each variable, and a unit leading coefficient.
    pub fn validate(&self) -> Result<(), Violation> {
        if self.level == 1 {
            return Ok(());
        }
        let expected = psi(self.level);
        for (&(i, k), _) in &self.terms {
            if i < k {
                return Err(Violation::SymmetryViolation { i, k });
            }
        }
        let found = self.degree();
        if found != expected {
            return Err(Violation::DegreeMismatch { expected, found });
        }
        let lead = self.terms.get(&(expected, 0)).cloned().unwrap_or_else(BigInt::zero);
        if !lead.is_one() {
            return Err(Violation::LeadingCoefficient { found: lead });
        }
        Ok(())
    }

    /// Exact Φ_level(j₁, j₂).
    pub fn evaluate(&self, j1: &Rational, j2: &Rational) -> Rational {
        if self.level == 1 {
            return j1 - j2;
        }
        let d = self.degree();
        let pw1 = power_table(j1.numer(), j1.denom(), d);
        let pw2 = power_table(j2.numer(), j2.denom(), d);
        let mut acc = BigInt::zero();
        for (&(i, k), c) in &self.terms {
            if i == k {
                acc += c * &pw1[i as usize] * &pw2[i as usize];
            } else {
                acc += c * (&pw1[i as usize] * &pw2[k as usize] + &pw1[k as usize] * &pw2[i as usize]);
            }
        }
        let den = j1.denom().pow(d as u32) * j2.denom().pow(d as u32);
        Rational::new(acc, den)
    }

    /// Coefficients (ascending in X) of the integer polynomial
    /// Φ(X, u/v)·v^ψ, for root extraction.
    pub fn univariate_in_x(&self, j: &Rational) -> PolyZ {
        assert!(self.level >= 2, "level 1 is linear; handle directly");
        let d = self.degree() as usize;
        let pw = power_table(j.numer(), j.denom(), d as u64);
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (&(i, k), c) in &self.terms {
            coeffs[i as usize] += c * &pw[k as usize];
            if i != k {
                coeffs[k as usize] += c * &pw[i as usize];
            }
        }
        PolyZ::new(coeffs)
    }
}

/// u^i · v^(d−i) for i in 0..=d.
fn power_table(u: &BigInt, v: &BigInt, d: u64) -> Vec<BigInt> {
    let d = d as usize;
    let mut us = Vec::with_capacity(d + 1);
    let mut vs = Vec::with_capacity(d + 1);
    us.push(BigInt::one());
    vs.push(BigInt::one());
    for i in 1..=d {
        let nu = &us[i - 1] * u;
        us.push(nu);
        let nv = &vs[i - 1] * v;
        vs.push(nv);
    }
    (0..=d).map(|i| &us[i] * &vs[d - i]).collect()
}

/// Parse one database file.  The level is declared by the caller (from the
/// file name); the implied leading monomial is inserted when absent.
pub fn parse_modpoly_file(level: u64, text: &str) -> Result<ModularPolynomial, ModPolyError> {
    parse_inner(level, text, "<memory>")
}

fn parse_inner(level: u64, text: &str, path: &str) -> Result<ModularPolynomial, ModPolyError> {
    let mut terms: BTreeMap<(u64, u64), BigInt> = BTreeMap::new();
    let mut last_valid = 0usize;
    let err = |line: usize, last_valid: usize, msg: String| ModPolyError::Parse {
        path: path.to_string(),
        line,
        last_valid,
        msg,
    };
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (mono, coeff) = line
            .split_once(']')
            .ok_or_else(|| err(lineno, last_valid, "expected `[i,k] c`".into()))?;
        let mono = mono
            .trim()
            .strip_prefix('[')
            .ok_or_else(|| err(lineno, last_valid, "monomial must start with `[`".into()))?;
        let (i_str, k_str) = mono
            .split_once(',')
            .ok_or_else(|| err(lineno, last_valid, "monomial must be `[i,k]`".into()))?;
        let i: u64 = i_str
            .trim()
            .parse()
            .map_err(|_| err(lineno, last_valid, format!("bad exponent `{}`", i_str.trim())))?;
        let k: u64 = k_str
            .trim()
            .parse()
            .map_err(|_| err(lineno, last_valid, format!("bad exponent `{}`", k_str.trim())))?;
        if i < k {
            return Err(err(lineno, last_valid, format!("stored exponents need i ≥ k, got [{i},{k}]")));
        }
        let coeff = coeff.trim();
        let c: BigInt = coeff
            .parse()
            .map_err(|_| err(lineno, last_valid, format!("bad coefficient `{coeff}`")))?;
        if terms.insert((i, k), c).is_some() {
            return Err(err(lineno, last_valid, format!("duplicate monomial [{i},{k}]")));
        }
        last_valid = lineno;
    }
    if level >= 2 {
        let lead = (psi(level), 0);
        terms.entry(lead).or_insert_with(BigInt::one);
    }
    Ok(ModularPolynomial { level, terms })
}

/// Word-sized primes used to screen zero tests before exact confirmation.
const SCREEN_PRIMES: [u64; 4] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn big_mod(x: &BigInt, p: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(p));
    m.to_u64().expect("reduced residue fits u64")
}

/// Residues of the stored terms of one level modulo one screening prime.
struct ScreenTable {
    terms: Vec<(u32, u32, u64)>,
}

/// A loaded set of modular polynomials sharing one directory, plus screening
/// tables.  Immutable after load; safe to share across threads.
pub struct ModPolyDb {
    levels: BTreeMap<u64, ModularPolynomial>,
    screens: BTreeMap<u64, [ScreenTable; 4]>,
}

impl ModPolyDb {
    /// Load levels 2..=max_level from `dir` (files `phi_j_<n>.txt`); missing
    /// files simply leave the level unavailable.  Level 1 is built in.
    pub fn load(dir: &Path, max_level: u64) -> Result<Self, ModPolyError> {
        let mut db = ModPolyDb { levels: BTreeMap::new(), screens: BTreeMap::new() };
        db.insert(ModularPolynomial::level_one())?;
        for n in 2..=max_level {
            let path = dir.join(format!("phi_j_{n}.txt"));
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => continue,
                Err(e) => return Err(ModPolyError::Io { path, source: e }),
            };
            let phi = parse_inner(n, &text, &path.display().to_string())?;
            db.insert(phi)?;
        }
        Ok(db)
    }

    /// An empty database with only the built-in level 1.
    pub fn builtin_only() -> Self {
        let mut db = ModPolyDb { levels: BTreeMap::new(), screens: BTreeMap::new() };
        db.insert(ModularPolynomial::level_one()).expect("level 1 is valid");
        db
    }

    /// Validate and add one polynomial.
    pub fn insert(&mut self, phi: ModularPolynomial) -> Result<(), ModPolyError> {
        phi.validate()
            .map_err(|violation| ModPolyError::Validation { level: phi.level(), violation })?;
        if phi.level() >= 2 {
            let tables: Vec<ScreenTable> = SCREEN_PRIMES
                .iter()
                .map(|&p| ScreenTable {
                    terms: phi
                        .stored_terms()
                        .iter()
                        .map(|(&(i, k), c)| (i as u32, k as u32, big_mod(c, p)))
                        .collect(),
                })
                .collect();
            self.screens.insert(
                phi.level(),
                tables.try_into().map_err(|_| ()).expect("four screening primes"),
            );
        }
        self.levels.insert(phi.level(), phi);
        Ok(())
    }

    pub fn available_levels(&self) -> Vec<u64> {
        self.levels.keys().copied().collect()
    }

    pub fn get(&self, level: u64) -> Result<&ModularPolynomial, ModPolyError> {
        self.levels.get(&level).ok_or_else(|| ModPolyError::MissingLevel {
            level,
            available: self.levels.keys().copied().filter(|&n| n >= 2).collect(),
        })
    }

    /// Error unless every level 1..=n_max is available.
    pub fn ensure_coverage(&self, n_max: u64) -> Result<(), ModPolyError> {
        for n in 1..=n_max {
            self.get(n)?;
        }
        Ok(())
    }

    /// Φ_level(j₁, j₂) modulo screening prime #idx, or None when a denominator
    /// vanishes mod p (the prime is unusable for this argument pair).
    fn screen_eval(&self, level: u64, idx: usize, j1: &Rational, j2: &Rational) -> Option<u64> {
        let p = SCREEN_PRIMES[idx];
        let table = &self.screens[&level];
        let d = psi(level) as usize;
        let v1 = big_mod(j1.denom(), p);
        let v2 = big_mod(j2.denom(), p);
        if v1 == 0 || v2 == 0 {
            return None;
        }
        let u1 = big_mod(j1.numer(), p);
        let u2 = big_mod(j2.numer(), p);
        let pw = |u: u64, v: u64| -> Vec<u64> {
            let mut us = vec![1u64; d + 1];
            let mut vs = vec![1u64; d + 1];
            for i in 1..=d {
                us[i] = mulmod(us[i - 1], u, p);
                vs[i] = mulmod(vs[i - 1], v, p);
            }
            (0..=d).map(|i| mulmod(us[i], vs[d - i], p)).collect()
        };
        let pw1 = pw(u1, v1);
        let pw2 = pw(u2, v2);
        let mut acc = 0u64;
        for &(i, k, c) in &table[idx].terms {
            let (i, k) = (i as usize, k as usize);
            let mut t = mulmod(pw1[i], pw2[k], p);
            if i != k {
                t = (t + mulmod(pw1[k], pw2[i], p)) % p;
            }
            acc = (acc + mulmod(c, t, p)) % p;
        }
        Some(acc)
    }

    /// Exactly test Φ_n(j₁, j₂) = 0, screening through word-sized primes first.
    pub fn is_cyclically_n_isogenous(
        &self,
        j1: &Rational,
        j2: &Rational,
        n: u64,
    ) -> Result<bool, ModPolyError> {
        let phi = self.get(n)?;
        if n == 1 {
            return Ok(j1 == j2);
        }
        for idx in 0..SCREEN_PRIMES.len() {
            if let Some(r) = self.screen_eval(n, idx, j1, j2) {
                if r != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(phi.evaluate(j1, j2).is_zero())
    }

    /// Smallest 1 ≤ n ≤ n_max with Φ_n(j₁, j₂) = 0 (n = 1 meaning j₁ = j₂),
    /// or None.  Requires the database to cover every level up to n_max.
    pub fn minimal_isogeny_degree(
        &self,
        j1: &Rational,
        j2: &Rational,
        n_max: u64,
    ) -> Result<Option<u64>, ModPolyError> {
        self.minimal_isogeny_degree_from(j1, j2, 1, n_max)
    }

    /// As `minimal_isogeny_degree` but starting the search at n_min (used to
    /// exclude the degree-1 geometric-isomorphism case in sensitivity runs).
    pub fn minimal_isogeny_degree_from(
        &self,
        j1: &Rational,
        j2: &Rational,
        n_min: u64,
        n_max: u64,
    ) -> Result<Option<u64>, ModPolyError> {
        self.ensure_coverage(n_max)?;
        for n in n_min.max(1)..=n_max {
            if self.is_cyclically_n_isogenous(j1, j2, n)? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// The multiset of ψ(n) complex j-invariants n-isogenous to j: the roots
    /// of X ↦ Φ_n(X, j), with multiplicity, computed numerically.
    pub fn isogenous_j_multiset(&self, j: &Rational, n: u64) -> Result<Vec<Complex64>, ModPolyError> {
        let phi = self.get(n)?;
        if n == 1 {
            let v = j.to_f64().unwrap_or(f64::NAN);
            return Ok(vec![Complex64::new(v, 0.0)]);
        }
        let poly = phi.univariate_in_x(j);
        let mut roots = Vec::with_capacity(psi(n) as usize);
        for (factor, mult) in poly.squarefree_decomposition() {
            let rs = numeric::complex_roots(&factor)?;
            for r in rs {
                for _ in 0..mult {
                    roots.push(r);
                }
            }
        }
        debug_assert_eq!(roots.len() as u64, psi(n));
        Ok(roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    const PHI2: &str = "\
# classical level-2 modular polynomial, leading X^3+Y^3 implied
[0,0] -157464000000000
[1,0] 8748000000
[1,1] 40773375
[2,0] -162000
[2,1] 1488
[2,2] -1
";

    fn phi2() -> ModularPolynomial {
        parse_modpoly_file(2, PHI2).unwrap()
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(1), 1);
        assert_eq!(psi(2), 3);
        assert_eq!(psi(12), 24);
        assert_eq!(psi(13), 14);
        assert_eq!(psi(30), 72);
    }

    #[test]
    fn parse_and_validate_phi2() {
        let p = phi2();
        assert_eq!(p.degree(), 3);
        assert!(p.validate().is_ok());
        // implied leading term was inserted
        assert_eq!(p.stored_terms()[&(3, 0)], BigInt::one());
        assert_eq!(p.stored_terms().len(), 7);
    }

    #[test]
    fn parse_accepts_explicit_leading_term() {
        let text = format!("[3,0] 1\n{PHI2}");
        let p = parse_modpoly_file(2, &text).unwrap();
        assert_eq!(p, phi2());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "[0,0] 5\n[1,0 17\n";
        match parse_modpoly_file(2, text).unwrap_err() {
            ModPolyError::Parse { line, last_valid, .. } => {
                assert_eq!(line, 2);
                assert_eq!(last_valid, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_duplicates_and_misordered_exponents() {
        assert!(matches!(
            parse_modpoly_file(2, "[1,0] 3\n[1,0] 4\n").unwrap_err(),
            ModPolyError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_modpoly_file(2, "[0,1] 3\n").unwrap_err(),
            ModPolyError::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn validate_flags_degree_and_symmetry() {
        let mut terms = phi2().stored_terms().clone();
        terms.insert((4, 0), BigInt::from(5));
        let bad = ModularPolynomial::from_terms(2, terms);
        assert_eq!(
            bad.validate().unwrap_err(),
            Violation::DegreeMismatch { expected: 3, found: 4 }
        );

        let mut terms = phi2().stored_terms().clone();
        terms.insert((0, 2), BigInt::from(5));
        let bad = ModularPolynomial::from_terms(2, terms);
        assert_eq!(bad.validate().unwrap_err(), Violation::SymmetryViolation { i: 0, k: 2 });
    }

    #[test]
    fn evaluate_phi2_known_zeros() {
        let p = phi2();
        assert!(p.evaluate(&qi(0), &qi(54000)).is_zero());
        assert!(p.evaluate(&qi(54000), &qi(0)).is_zero());
        assert!(p.evaluate(&qi(-3375), &qi(-3375)).is_zero());
        assert!(!p.evaluate(&qi(0), &qi(1)).is_zero());
        // constant term at (0,0)
        assert_eq!(p.evaluate(&qi(0), &qi(0)), qi(-157464000000000));
    }

    #[test]
    fn evaluate_symmetry_on_rationals() {
        let p = phi2();
        let a = Rational::new(22.into(), 7.into());
        let b = Rational::new((-13).into(), 5.into());
        assert_eq!(p.evaluate(&a, &b), p.evaluate(&b, &a));
    }

    #[test]
    fn db_detection_and_min_degree() {
        let mut db = ModPolyDb::builtin_only();
        db.insert(phi2()).unwrap();
        assert!(db.is_cyclically_n_isogenous(&qi(5), &qi(5), 1).unwrap());
        assert!(db.is_cyclically_n_isogenous(&qi(0), &qi(54000), 2).unwrap());
        assert!(!db.is_cyclically_n_isogenous(&qi(0), &qi(1), 2).unwrap());
        assert_eq!(db.minimal_isogeny_degree(&qi(7), &qi(7), 2).unwrap(), Some(1));
        assert_eq!(db.minimal_isogeny_degree(&qi(0), &qi(54000), 2).unwrap(), Some(2));
        assert_eq!(db.minimal_isogeny_degree(&qi(0), &qi(1), 2).unwrap(), None);
    }

    #[test]
    fn missing_level_error_lists_available() {
        let mut db = ModPolyDb::builtin_only();
        db.insert(phi2()).unwrap();
        match db.minimal_isogeny_degree(&qi(0), &qi(1), 5).unwrap_err() {
            ModPolyError::MissingLevel { level, available } => {
                assert_eq!(level, 3);
                assert_eq!(available, vec![2]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cm_table_lookup() {
        assert_eq!(is_cm_j(&qi(0)), Some(-3));
        assert_eq!(is_cm_j(&qi(1728)), Some(-4));
        assert_eq!(is_cm_j(&qi(5)), None);
        assert_eq!(is_cm_j(&Rational::new(1.into(), 2.into())), None);
        assert_eq!(CM_J_INVARIANTS.len(), 13);
    }

    #[test]
    fn multiset_of_level_two_at_cm_point() {
        let mut db = ModPolyDb::builtin_only();
        db.insert(phi2()).unwrap();
        // Phi_2(X, 0) = (X - 54000)^3
        let roots = db.isogenous_j_multiset(&qi(0), 2).unwrap();
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert!((r.re - 54000.0).abs() < 1e-3 && r.im.abs() < 1e-3);
        }
    }

    #[test]
    fn pazuki_constants() {
        assert!((pazuki_gap_bound(1) - 9.204).abs() < 1e-12);
        assert!((pazuki_gap_bound(2) - (9.204 + 12.0 * 2f64.ln())).abs() < 1e-12);
        assert!((pazuki_multiplier().ln() - 9.204).abs() < 1e-12);
    }
}
