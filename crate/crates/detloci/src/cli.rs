//! Command-line front end. Exit codes: 0 success, 1 a check or certificate
//! failed, 2 bad input or usage.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use detloci_core::brill_noether::{bn_report, BNContext};
use detloci_core::determinantal::{
    count_points_brute_force, determinantal_ideal, expected_generator_count, GenericShape,
};
use detloci_core::invariants::{invariant_report, monodromy_check};
use detloci_core::jump::{jump_ideal, specialization_check, validate_complex};
use detloci_core::petri::{petri_injective, universal_matrix, verify_tangent_cone_equiv};
use detloci_core::random::random_point;
use detloci_core::tower::resolve_tower;
use detloci_core::{Error, TruncationOrder};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::format::{complex_from_json, domain_from, pair_from_json, ComplexJson, PairJson};
use crate::report::{
    bn_json, certificate_json, det_ideal_json, invariants_json, jump_json, monodromy_json, render_table,
    tower_json, universal_json, Report, RunManifest, Status,
};
use crate::sweep::{run_sweep, Formulas};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "detloci", version, about = "Determinantal loci: ideals, invariants and consistency checks")]
pub struct Cli {
    /// Print the JSON report on stdout instead of the table view.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Record the wall-clock time in the manifest (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub stamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generators of the ideal of b x a matrices of rank <= a - k.
    DetIdeal {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Work over F_p instead of Q.
        #[arg(long)]
        prime: Option<u32>,
    },
    /// Closed-form singularity invariants of M_k(a, b).
    DetInvariants {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        k: usize,
    },
    /// Number of b x a matrices over F_q of rank <= r.
    CountPoints {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: u64,
        /// Cross-check against exhaustive enumeration.
        #[arg(long)]
        brute_force: bool,
    },
    /// Cohomology jump ideal J^i_k of a free complex.
    JumpIdeal {
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Test the ideal against pointwise ranks at N random points.
        #[arg(long, value_name = "N")]
        check_points: Option<usize>,
    },
    /// Universal matrix of truncated L-infinity pair data.
    UnivMatrix {
        #[arg(long, value_name = "FILE")]
        data: PathBuf,
        #[arg(long)]
        order: u32,
        /// Build and check the tangent-cone certificate for this k.
        #[arg(long, value_name = "K")]
        verify_k: Option<usize>,
    },
    /// Divisor data of the blowup tower resolving M_k(a, b).
    Resolve {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        k: usize,
    },
    /// Invariants of a Brill-Noether locus V_k(F) through its determinantal model.
    BnInvariants {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        rank: i64,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long, allow_negative_numbers = true)]
        aux_deg: i64,
        #[arg(long)]
        aux_rank: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        h0: i64,
    },
    /// Match zeta poles of the a x a determinant against b-function roots.
    McCheck {
        #[arg(long)]
        a: usize,
    },
    /// Run every cross-module consistency suite.
    ConsistencySweep {
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
}

/// Failure to produce a report at all.
#[derive(Debug)]
pub enum RunError {
    Input(String),
    Check(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        if e.is_input() {
            RunError::Input(e.to_string())
        } else {
            RunError::Check(e.to_string())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| RunError::Input(format!("{}: {e}", path.display())))
}

fn order(n: u32) -> Result<TruncationOrder, RunError> {
    Ok(TruncationOrder::new(n)?)
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Failed
    }
}

/// Builds the report for one parsed command line.
pub fn execute(cli: &Cli, formulas: &Formulas) -> Result<Report, RunError> {
    let seed = cli.seed.unwrap_or(0);
    let (manifest, status, result) = match &cli.command {
        Command::DetIdeal { a, b, k, prime } => {
            let shape = GenericShape::new(*a, *b)?;
            let ideal = determinantal_ideal(shape, *k, domain_from(*prime)?);
            let m = RunManifest::new("det-ideal").param("a", a).param("b", b).param("k", k).param("prime", prime);
            (m, Status::Ok, det_ideal_json(&ideal, expected_generator_count(shape, *k)))
        }
        Command::DetInvariants { a, b, k } => {
            let report = invariant_report(GenericShape::new(*a, *b)?, *k)?;
            let m = RunManifest::new("det-invariants").param("a", a).param("b", b).param("k", k);
            (m, Status::Ok, invariants_json(&report))
        }
        Command::CountPoints { a, b, r, q, brute_force } => {
            let shape = GenericShape::new(*a, *b)?;
            let count = (formulas.count)(shape, *r, *q)?;
            let brute = brute_force.then(|| count_points_brute_force(shape, *r, *q)).transpose()?;
            let agree = brute.map(|n| count == n.into());
            let m = RunManifest::new("count-points")
                .param("a", a)
                .param("b", b)
                .param("r", r)
                .param("q", q)
                .param("bruteForce", brute_force);
            let result = json!({
                "shape": {"a": shape.a(), "b": shape.b()},
                "rankBound": r,
                "q": q,
                "count": count.to_string(),
                "bruteForce": brute.map(|n| n.to_string()),
                "agree": agree,
            });
            (m, status(agree != Some(false)), result)
        }
        Command::JumpIdeal { complex, i, k, check_points } => {
            let c = complex_from_json(&read_json::<ComplexJson>(complex)?)?;
            let validation = validate_complex(&c)?;
            if !validation.valid {
                return Err(RunError::Input(format!(
                    "not a complex: {}",
                    validation.diagnostic.unwrap_or_default()
                )));
            }
            let ideal = jump_ideal(&c, *i, *k)?;
            let mut m = RunManifest::new("jump-ideal")
                .param("complex", complex.display().to_string())
                .param("i", i)
                .param("k", k)
                .param("checkPoints", check_points);
            let check = match check_points {
                Some(n) => {
                    m.seed = Some(seed);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let pts: Vec<_> = (0..*n)
                        .map(|_| random_point(&mut rng, c.ring().domain(), c.ring().nvars()))
                        .collect();
                    Some(specialization_check(&c, *i, *k, &pts)?)
                }
                None => None,
            };
            let ok = check.as_ref().is_none_or(|r| r.is_consistent());
            (m, status(ok), jump_json(&ideal, check.as_ref()))
        }
        Command::UnivMatrix { data, order: n, verify_k } => {
            let d = pair_from_json(&read_json::<PairJson>(data)?)?;
            let u = universal_matrix(&d, order(*n)?)?;
            let mut result = universal_json(&u, petri_injective(&d.petri()));
            let mut ok = true;
            if let Some(k) = verify_k {
                let cert = verify_tangent_cone_equiv(&d, *k, order(*n)?)?;
                ok = cert.verify();
                result["certificate"] = certificate_json(&cert);
            }
            let m = RunManifest::new("univ-matrix")
                .param("data", data.display().to_string())
                .param("order", n)
                .param("verifyK", verify_k);
            (m, status(ok), result)
        }
        Command::Resolve { a, b, k } => {
            let tower = resolve_tower(GenericShape::new(*a, *b)?, *k)?;
            let m = RunManifest::new("resolve").param("a", a).param("b", b).param("k", k);
            (m, Status::Ok, tower_json(&tower))
        }
        Command::BnInvariants { genus, rank, degree, aux_deg, aux_rank, k, h0 } => {
            let ctx = BNContext::new(*genus, *rank, *degree, *aux_deg, *aux_rank, *k, *h0)?;
            let report = bn_report(&ctx)?;
            let m = RunManifest::new("bn-invariants")
                .param("genus", genus)
                .param("rank", rank)
                .param("degree", degree)
                .param("auxDeg", aux_deg)
                .param("auxRank", aux_rank)
                .param("k", k)
                .param("h0", h0);
            let ok = report.model.monodromy.as_ref().is_none_or(|c| c.passed());
            (m, status(ok), bn_json(&report))
        }
        Command::McCheck { a } => {
            let cert = monodromy_check(*a)?;
            (RunManifest::new("mc-check").param("a", a), status(cert.passed()), monodromy_json(&cert))
        }
        Command::ConsistencySweep { max } => {
            let summary = run_sweep(*max, seed, formulas)?;
            let mut m = RunManifest::new("consistency-sweep").param("max", max);
            m.seed = Some(seed);
            let result: Value = serde_json::to_value(&summary).expect("summary serializes");
            (m, status(summary.all_passed), result)
        }
    };
    let mut manifest = manifest;
    if cli.stamp {
        manifest.timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
    }
    Ok(Report { manifest, status, result })
}

/// Full command-line behaviour with injectable streams and formulas.
pub fn run_with<I, T>(args: I, formulas: &Formulas, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let report = match execute(&cli, formulas) {
        Ok(r) => r,
        Err(RunError::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_INPUT;
        }
        Err(RunError::Check(msg)) => {
            let _ = writeln!(stderr, "check failed: {msg}");
            return EXIT_FAILED;
        }
    };
    let json = report.to_json();
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &json) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    let _ = if cli.json {
        stdout.write_all(json.as_bytes())
    } else {
        stdout.write_all(render_table(&serde_json::to_value(&report).expect("serializes")).as_bytes())
    };
    match report.status {
        Status::Ok => EXIT_OK,
        Status::Failed => {
            let _ = writeln!(stderr, "check failed: see report");
            EXIT_FAILED
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &Formulas::default(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
