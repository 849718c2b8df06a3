//! Orchestration and I/O: load a family and the modular-polynomial database,
//! run the enumeration–specialization–detection pipeline, assemble the counts
//! together with the theoretical bound report, and emit machine-readable
//! reports.
//!
//! Determinism contract: identical config produces byte-identical JSON,
//! regardless of thread count.  Fibers are processed by a worker pool over an
//! ordered parameter list and merged back in canonical order; reports carry
//! no timestamps.

use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, BoundMode, BoundReport};
use crate::enumeration::{self, SearchRegion};
use crate::family::{self, FamilyError, IotaHeightMode, WeierstrassFamily};
use crate::heights::height_rational;
use crate::modpoly::{self, ModPolyDb, ModPolyError};
use crate::{ln_bigint, Rational};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    ModPoly(#[from] ModPolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeightMode {
    /// Scan { t : H(t) ≤ B }.
    Parameter,
    /// Scan { t : H(P_t) ≤ B } within an explicit t-search region.
    Segre,
}

/// CM fiber policy.  `Include` and `Flag` run the same census (CM fibers are
/// always cheap to look up and are recorded either way); `Flag` is the
/// default and emphasizes the separate reporting.  `Exclude` skips isogeny
/// detection on fibers where either side is CM, so they never enter the
/// isogenous count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CmHandling {
    Include,
    Exclude,
    Flag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub family_path: String,
    pub height_bound: u64,
    pub height_mode: HeightMode,
    /// H(t) scan bound for segre mode (ignored in parameter mode).
    pub search_bound: Option<u64>,
    /// Caller-certified constant c with c·H(t)^d ≤ H(P_t); when present the
    /// segre scan derives its own bound and is marked complete.
    pub certify_constant: Option<f64>,
    pub n_max: u64,
    pub modpoly_dir: String,
    pub cm_handling: CmHandling,
    /// Start isogeny detection at degree 2, treating geometric isomorphism
    /// (j = j′) as not-isogenous for sensitivity runs.
    pub exclude_isomorphism: bool,
    pub threads: usize,
    pub output: OutputFormat,
}

impl CensusConfig {
    pub fn new(family_path: impl Into<String>, modpoly_dir: impl Into<String>, height_bound: u64) -> Self {
        CensusConfig {
            family_path: family_path.into(),
            height_bound,
            height_mode: HeightMode::Parameter,
            search_bound: None,
            certify_constant: None,
            n_max: 30,
            modpoly_dir: modpoly_dir.into(),
            cm_handling: CmHandling::Flag,
            exclude_isomorphism: false,
            threads: 0,
            output: OutputFormat::Json,
        }
    }
}

mod serde_rational {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod serde_rational_opt {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

mod serde_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod serde_bigint_opt {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

/// One scanned parameter value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberRecord {
    #[serde(with = "serde_rational")]
    pub t: Rational,
    #[serde(with = "serde_bigint")]
    pub height_t: BigInt,
    pub smooth_e: bool,
    pub smooth_e_prime: bool,
    #[serde(with = "serde_rational_opt")]
    pub j_e: Option<Rational>,
    #[serde(with = "serde_rational_opt")]
    pub j_e_prime: Option<Rational>,
    /// H(P_t) = H(j)·H(j′), present when both sides are smooth.
    #[serde(with = "serde_bigint_opt")]
    pub segre_height: Option<BigInt>,
    pub cm_disc_e: Option<i64>,
    pub cm_disc_e_prime: Option<i64>,
    /// Smallest detected cyclic-isogeny degree ≤ n_max (1 = j-equality).
    pub min_isogeny_degree: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub fibers_scanned: u64,
    pub singular_skipped: u64,
    pub cm_flagged: u64,
    pub isogenous_count: u64,
    /// Of the isogenous count, how many have a CM side (reported separately).
    pub cm_isogenous: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Completeness {
    pub n_max: u64,
    pub truncation_notice: String,
    /// segre mode only: whether the scan region provably covers the whole set.
    pub segre_scan_certified: Option<bool>,
    pub search_bound_used: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub config: CensusConfig,
    pub totals: Totals,
    pub records: Vec<FiberRecord>,
    pub bound_report: Option<BoundReport>,
    pub completeness: Completeness,
    pub flags: Vec<String>,
}

impl CensusReport {
    /// Internal consistency: the isogenous count equals the number of records
    /// carrying a detected degree, and every Segre height is the product of
    /// the two j-heights.
    pub fn verify_consistency(&self) -> Result<(), String> {
        let n = self.records.iter().filter(|r| r.min_isogeny_degree.is_some()).count() as u64;
        if n != self.totals.isogenous_count {
            return Err(format!(
                "isogenous_count {} != records with detected degree {n}",
                self.totals.isogenous_count
            ));
        }
        for r in &self.records {
            if let (Some(j1), Some(j2), Some(h)) = (&r.j_e, &r.j_e_prime, &r.segre_height) {
                if &(height_rational(j1) * height_rational(j2)) != h {
                    return Err(format!("record t = {}: segre height mismatch", r.t));
                }
            }
        }
        Ok(())
    }
}

/// Load inputs from the paths in `config` and run the census.
pub fn run_census(config: &CensusConfig) -> Result<CensusReport, CensusError> {
    let text = std::fs::read_to_string(&config.family_path).map_err(|source| CensusError::Io {
        path: config.family_path.clone(),
        source,
    })?;
    let fam = family::parse_family_config(&text)?;
    let db = ModPolyDb::load(Path::new(&config.modpoly_dir), config.n_max)?;
    run_census_with(&fam, &db, config)
}

/// Run the census against in-memory inputs.
pub fn run_census_with(
    fam: &WeierstrassFamily,
    db: &ModPolyDb,
    config: &CensusConfig,
) -> Result<CensusReport, CensusError> {
    db.ensure_coverage(config.n_max)?;
    if config.height_bound < 1 {
        return Err(CensusError::Config("height bound must be ≥ 1".into()));
    }

    // parameter list and segre-mode completeness metadata
    let (ts, segre_certified, search_bound_used): (Vec<Rational>, Option<bool>, Option<u64>) =
        match config.height_mode {
            HeightMode::Parameter => {
                (enumeration::enumerate_rationals(config.height_bound).collect(), None, None)
            }
            HeightMode::Segre => {
                let region = match (config.certify_constant, config.search_bound) {
                    (Some(c), _) => SearchRegion::CertifiedLowerConstant { c },
                    (None, Some(sb)) => SearchRegion::Heuristic { search_bound: sb },
                    (None, None) => {
                        return Err(CensusError::Config(
                            "segre height mode needs --search-bound (or a certified constant)".into(),
                        ))
                    }
                };
                let b = BigInt::from(config.height_bound);
                let (bound, certified) = enumeration::resolve_search_region(fam, &b, region);
                (
                    enumeration::enumerate_rationals(bound).collect(),
                    Some(certified),
                    Some(bound),
                )
            }
        };

    let n_min = if config.exclude_isomorphism { 2 } else { 1 };
    let segre_cap = match config.height_mode {
        HeightMode::Segre => Some(BigInt::from(config.height_bound)),
        HeightMode::Parameter => None,
    };

    // (smooth, record): smooth fibers outside the segre cap and singular
    // fibers in segre mode are scanned but produce no record
    let process = |t: &Rational| -> Result<(bool, Option<FiberRecord>), ModPolyError> {
        let (e, ep) = fam.specialize(t);
        let smooth = e.is_ok() && ep.is_ok();
        let mut rec = FiberRecord {
            t: t.clone(),
            height_t: height_rational(t),
            smooth_e: e.is_ok(),
            smooth_e_prime: ep.is_ok(),
            j_e: None,
            j_e_prime: None,
            segre_height: None,
            cm_disc_e: None,
            cm_disc_e_prime: None,
            min_isogeny_degree: None,
        };
        if let (Ok(e), Ok(ep)) = (&e, &ep) {
            let h = height_rational(&e.j) * height_rational(&ep.j);
            if let Some(cap) = &segre_cap {
                if &h > cap {
                    return Ok((smooth, None)); // outside S′(B)
                }
            }
            rec.j_e = Some(e.j.clone());
            rec.j_e_prime = Some(ep.j.clone());
            rec.segre_height = Some(h);
            rec.cm_disc_e = modpoly::is_cm_j(&e.j);
            rec.cm_disc_e_prime = modpoly::is_cm_j(&ep.j);
            let is_cm = rec.cm_disc_e.is_some() || rec.cm_disc_e_prime.is_some();
            let skip_detection = matches!(config.cm_handling, CmHandling::Exclude) && is_cm;
            if !skip_detection {
                rec.min_isogeny_degree =
                    db.minimal_isogeny_degree_from(&e.j, &ep.j, n_min, config.n_max)?;
            }
        } else if segre_cap.is_some() {
            return Ok((smooth, None)); // segre ordering has no height here
        }
        Ok((smooth, Some(rec)))
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| CensusError::Config(format!("thread pool: {e}")))?;
    let results: Vec<Result<(bool, Option<FiberRecord>), ModPolyError>> =
        pool.install(|| ts.par_iter().map(process).collect());

    let mut records = Vec::new();
    let mut totals = Totals { fibers_scanned: ts.len() as u64, ..Totals::default() };
    for r in results {
        let (smooth, rec) = r?;
        if !smooth {
            totals.singular_skipped += 1;
        }
        let Some(rec) = rec else { continue };
        let is_cm = rec.cm_disc_e.is_some() || rec.cm_disc_e_prime.is_some();
        if is_cm {
            totals.cm_flagged += 1;
        }
        if rec.min_isogeny_degree.is_some() {
            totals.isogenous_count += 1;
            if is_cm {
                totals.cm_isogenous += 1;
            }
        }
        records.push(rec);
    }

    let mut flags = Vec::new();
    let mode = match config.height_mode {
        HeightMode::Parameter => BoundMode::Standard,
        HeightMode::Segre => BoundMode::Uniform,
    };
    let ln_h_iota = ln_bigint(&family::iota_height(fam, IotaHeightMode::JointVector));
    let bound_report = match bounds::theorem_bound_ln(
        (config.height_bound as f64).ln(),
        fam.degree() as u64,
        ln_h_iota,
        1,
        mode,
    ) {
        Ok(r) => {
            flags.extend(r.replaced_constants.iter().cloned());
            Some(r)
        }
        Err(e) => {
            flags.push(format!("bound pipeline infeasible at B = {}: {e}", config.height_bound));
            None
        }
    };
    if config.exclude_isomorphism {
        flags.push("degree-1 (j-equality) detection excluded by config".into());
    }

    let completeness = Completeness {
        n_max: config.n_max,
        truncation_notice: format!(
            "isogeny detection truncated at degree {}; isogenous counts are lower bounds for the untruncated sets",
            config.n_max
        ),
        segre_scan_certified: segre_certified,
        search_bound_used,
    };

    let report = CensusReport {
        config: config.clone(),
        totals,
        records,
        bound_report,
        completeness,
        flags,
    };
    debug_assert_eq!(report.verify_consistency(), Ok(()));
    Ok(report)
}

/// Deterministic JSON rendering of a report.
pub fn emit_json(report: &CensusReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Deterministic CSV rendering: one row per fiber record.
pub fn emit_csv(report: &CensusReport) -> String {
    let mut out = String::from(
        "t,height_t,smooth_e,smooth_e_prime,j_e,j_e_prime,segre_height,cm_disc_e,cm_disc_e_prime,min_isogeny_degree\n",
    );
    let opt = |x: &Option<String>| x.clone().unwrap_or_default();
    for r in &report.records {
        let row = [
            r.t.to_string(),
            r.height_t.to_string(),
            r.smooth_e.to_string(),
            r.smooth_e_prime.to_string(),
            opt(&r.j_e.as_ref().map(|x| x.to_string())),
            opt(&r.j_e_prime.as_ref().map(|x| x.to_string())),
            opt(&r.segre_height.as_ref().map(|x| x.to_string())),
            opt(&r.cm_disc_e.map(|x| x.to_string())),
            opt(&r.cm_disc_e_prime.map(|x| x.to_string())),
            opt(&r.min_isogeny_degree.map(|x| x.to_string())),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Parse a report back from its JSON rendering.
pub fn parse_json(text: &str) -> Result<CensusReport, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::RationalFunctionQ;
    use crate::modpoly::parse_modpoly_file;
    use crate::poly::PolyQ;

    fn identical_family() -> WeierstrassFamily {
        let t = RationalFunctionQ::new(PolyQ::from_integers(&[0, 1]), PolyQ::one()).unwrap();
        let one = RationalFunctionQ::new(PolyQ::from_integers(&[1]), PolyQ::one()).unwrap();
        WeierstrassFamily::new(t.clone(), one.clone(), t, one).unwrap()
    }

    fn tiny_db() -> ModPolyDb {
        let mut db = ModPolyDb::builtin_only();
        db.insert(
            parse_modpoly_file(
                2,
                "[0,0] -157464000000000\n[1,0] 8748000000\n[1,1] 40773375\n[2,0] -162000\n[2,1] 1488\n[2,2] -1\n",
            )
            .unwrap(),
        )
        .unwrap();
        db
    }

    fn cfg(b: u64) -> CensusConfig {
        let mut c = CensusConfig::new("<mem>", "<mem>", b);
        c.n_max = 2;
        c
    }

    #[test]
    fn identical_family_is_everywhere_isogenous() {
        let fam = identical_family();
        let db = tiny_db();
        let report = run_census_with(&fam, &db, &cfg(3)).unwrap();
        report.verify_consistency().unwrap();
        let smooth = report
            .records
            .iter()
            .filter(|r| r.smooth_e && r.smooth_e_prime)
            .count() as u64;
        assert_eq!(report.totals.isogenous_count, smooth);
        for r in &report.records {
            if r.smooth_e && r.smooth_e_prime {
                assert_eq!(r.min_isogeny_degree, Some(1));
            }
        }
    }

    #[test]
    fn reports_roundtrip_and_are_deterministic() {
        let fam = identical_family();
        let db = tiny_db();
        let mut c1 = cfg(3);
        c1.threads = 1;
        let mut c4 = cfg(3);
        c4.threads = 4;
        let r1 = run_census_with(&fam, &db, &c1).unwrap();
        let r4 = run_census_with(&fam, &db, &c4).unwrap();
        // identical up to the thread-count echo in config
        assert_eq!(r1.records, r4.records);
        assert_eq!(r1.totals, r4.totals);
        let json = emit_json(&r1);
        assert_eq!(json, emit_json(&run_census_with(&fam, &db, &c1).unwrap()));
        let back = parse_json(&json).unwrap();
        assert_eq!(back, r1);
    }

    #[test]
    fn csv_has_header_plus_one_row_per_record() {
        let fam = identical_family();
        let db = tiny_db();
        let report = run_census_with(&fam, &db, &cfg(2)).unwrap();
        let csv = emit_csv(&report);
        assert_eq!(csv.lines().count(), report.records.len() + 1);
        assert!(csv.starts_with("t,height_t,"));
    }

    #[test]
    fn segre_mode_needs_search_bound() {
        let fam = identical_family();
        let db = tiny_db();
        let mut c = cfg(100);
        c.height_mode = HeightMode::Segre;
        assert!(matches!(run_census_with(&fam, &db, &c), Err(CensusError::Config(_))));
        c.search_bound = Some(2);
        let r = run_census_with(&fam, &db, &c).unwrap();
        assert_eq!(r.completeness.segre_scan_certified, Some(false));
        assert_eq!(r.completeness.search_bound_used, Some(2));
    }

    #[test]
    fn bound_section_flags_infeasible_but_census_runs() {
        let fam = identical_family();
        let db = tiny_db();
        let report = run_census_with(&fam, &db, &cfg(3)).unwrap();
        assert!(report.bound_report.is_none());
        assert!(report.flags.iter().any(|f| f.contains("infeasible")));
        assert!(report.totals.fibers_scanned > 0);
    }
}
