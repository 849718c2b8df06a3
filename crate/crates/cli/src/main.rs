//! Command-line front end for the isogenous-fiber census.
//!
//! Exit codes: 0 success, 2 config error, 3 data error (family/modular
//! polynomial parsing, missing levels), 4 infeasible arguments.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use isocensus::bounds::{self, BoundMode};
use isocensus::census::{self, CensusConfig, CmHandling, HeightMode, OutputFormat};
use isocensus::family::{self, IotaHeightMode};
use isocensus::heights::height_rational;
use isocensus::modpoly::ModPolyDb;
use isocensus::Rational;

const EXIT_CONFIG: u8 = 2;
const EXIT_DATA: u8 = 3;
const EXIT_INFEASIBLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "isocensus",
    about = "Count isogenous fibers in one-parameter families of elliptic-curve pairs, \
             and evaluate the explicit cover-counting bound pipeline",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliHeightMode {
    Parameter,
    Segre,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliCm {
    Include,
    Exclude,
    Flag,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliOutput {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliBoundMode {
    Standard,
    Uniform,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliIotaMode {
    Joint,
    Product,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a family up to a height bound and count isogenous fibers.
    Census {
        /// Family config file (f/g/fp/gp coefficient lists).
        #[arg(long)]
        family: PathBuf,
        /// Height bound B.
        #[arg(long = "height-bound")]
        height_bound: u64,
        /// Order fibers by H(t) (parameter) or by H(P_t) (segre).
        #[arg(long = "height-mode", value_enum, default_value = "parameter")]
        height_mode: CliHeightMode,
        /// H(t) scan bound for segre mode.
        #[arg(long = "search-bound")]
        search_bound: Option<u64>,
        /// Certified lower height constant c (c·H(t)^d ≤ H(P_t)) for segre mode.
        #[arg(long = "certify-constant")]
        certify_constant: Option<f64>,
        /// Truncation degree for isogeny detection.
        #[arg(long = "max-isogeny-degree", default_value_t = 30)]
        max_isogeny_degree: u64,
        /// Directory of phi_j_<n>.txt files.
        #[arg(long = "modpoly-dir", default_value = "data/modpoly")]
        modpoly_dir: PathBuf,
        /// CM fiber policy.
        #[arg(long, value_enum, default_value = "flag")]
        cm: CliCm,
        /// Treat j-equality (degree 1) as not-isogenous.
        #[arg(long = "exclude-isomorphism", default_value_t = false)]
        exclude_isomorphism: bool,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Report format.
        #[arg(long, value_enum, default_value = "json")]
        output: CliOutput,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the bound pipeline for given (B, d, H(ι), d_K).
    Bound {
        #[arg(long = "B")]
        b: f64,
        #[arg(long)]
        d: u64,
        #[arg(long = "h-iota")]
        h_iota: f64,
        #[arg(long = "dk", default_value_t = 1)]
        d_k: u64,
        #[arg(long, value_enum, default_value = "standard")]
        mode: CliBoundMode,
    },
    /// Find the minimal cyclic-isogeny degree linking two j-invariants.
    CheckIsogeny {
        #[arg(long)]
        j1: String,
        #[arg(long)]
        j2: String,
        #[arg(long = "max-degree", default_value_t = 30)]
        max_degree: u64,
        #[arg(long = "modpoly-dir", default_value = "data/modpoly")]
        modpoly_dir: PathBuf,
    },
    /// Print H(t), j, j′ and H(P_t) for one parameter value.
    Heights {
        #[arg(long)]
        t: String,
        #[arg(long)]
        family: PathBuf,
        /// How H(ι) combines the two j-maps' coefficient vectors.
        #[arg(long = "iota-mode", value_enum, default_value = "joint")]
        iota_mode: CliIotaMode,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e| format!("bad rational `{s}`: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    match cli.command {
        Command::Census {
            family,
            height_bound,
            height_mode,
            search_bound,
            certify_constant,
            max_isogeny_degree,
            modpoly_dir,
            cm,
            exclude_isomorphism,
            threads,
            output,
            out,
        } => {
            let config = CensusConfig {
                family_path: family.display().to_string(),
                height_bound,
                height_mode: match height_mode {
                    CliHeightMode::Parameter => HeightMode::Parameter,
                    CliHeightMode::Segre => HeightMode::Segre,
                },
                search_bound,
                certify_constant,
                n_max: max_isogeny_degree,
                modpoly_dir: modpoly_dir.display().to_string(),
                cm_handling: match cm {
                    CliCm::Include => CmHandling::Include,
                    CliCm::Exclude => CmHandling::Exclude,
                    CliCm::Flag => CmHandling::Flag,
                },
                exclude_isomorphism,
                threads,
                output: match output {
                    CliOutput::Json => OutputFormat::Json,
                    CliOutput::Csv => OutputFormat::Csv,
                },
            };
            let report = census::run_census(&config).map_err(census_err)?;
            let text = match config.output {
                OutputFormat::Json => census::emit_json(&report),
                OutputFormat::Csv => census::emit_csv(&report),
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| (EXIT_CONFIG, format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Bound { b, d, h_iota, d_k, mode } => {
            let mode = match mode {
                CliBoundMode::Standard => BoundMode::Standard,
                CliBoundMode::Uniform => BoundMode::Uniform,
            };
            match bounds::theorem_bound(b, d, h_iota, d_k, mode) {
                Ok(report) => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
                    Ok(())
                }
                Err(e @ bounds::BoundsError::InfeasibleWindow { .. }) => {
                    Err((EXIT_INFEASIBLE, e.to_string()))
                }
                Err(e) => Err((EXIT_CONFIG, e.to_string())),
            }
        }
        Command::CheckIsogeny { j1, j2, max_degree, modpoly_dir } => {
            let j1 = parse_rational(&j1).map_err(|m| (EXIT_CONFIG, m))?;
            let j2 = parse_rational(&j2).map_err(|m| (EXIT_CONFIG, m))?;
            let db = ModPolyDb::load(&modpoly_dir, max_degree)
                .map_err(|e| (EXIT_DATA, e.to_string()))?;
            let found = db
                .minimal_isogeny_degree(&j1, &j2, max_degree)
                .map_err(|e| (EXIT_DATA, e.to_string()))?;
            match found {
                Some(n) => println!("minimal cyclic isogeny degree: {n}"),
                None => println!("no cyclic isogeny of degree ≤ {max_degree} detected"),
            }
            Ok(())
        }
        Command::Heights { t, family: family_path, iota_mode } => {
            let t = parse_rational(&t).map_err(|m| (EXIT_CONFIG, m))?;
            let text = std::fs::read_to_string(&family_path)
                .map_err(|e| (EXIT_CONFIG, format!("cannot read {}: {e}", family_path.display())))?;
            let fam = family::parse_family_config(&text).map_err(|e| (EXIT_DATA, e.to_string()))?;
            let mode = match iota_mode {
                CliIotaMode::Joint => IotaHeightMode::JointVector,
                CliIotaMode::Product => IotaHeightMode::ProductOfPairs,
            };
            println!("t = {t}");
            println!("H(t) = {}", height_rational(&t));
            println!("d = {} (d_E = {}, d_E' = {})", fam.degree(), fam.degrees().0, fam.degrees().1);
            println!("H(iota) = {}", family::iota_height(&fam, mode));
            let (e, ep) = fam.specialize(&t);
            match (&e, &ep) {
                (Ok(e), Ok(ep)) => {
                    println!("j(E_t) = {}", e.j);
                    println!("j(E'_t) = {}", ep.j);
                    println!(
                        "H(P_t) = {}",
                        height_rational(&e.j) * height_rational(&ep.j)
                    );
                }
                _ => {
                    println!(
                        "singular fiber: E_t {}, E'_t {}",
                        if e.is_ok() { "smooth" } else { "singular" },
                        if ep.is_ok() { "smooth" } else { "singular" },
                    );
                }
            }
            Ok(())
        }
    }
}

fn census_err(e: census::CensusError) -> (u8, String) {
    use census::CensusError::*;
    let code = match &e {
        Io { .. } | Config(_) => EXIT_CONFIG,
        Family(_) | ModPoly(_) => EXIT_DATA,
    };
    (code, e.to_string())
}
