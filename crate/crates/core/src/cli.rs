//! The `bnq` command line.
//!
//! [`run`] parses arguments and returns what would be printed together with
//! the exit code, so the binary is a thin wrapper and tests can drive it
//! in-process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{is_prime, primes_in, PrimeField};
use crate::cache::{
    get_or_compute, CachedSource, CountCache, VARIETY_CAYLEY_C1, VARIETY_CAYLEY_COVER,
};
use crate::error::Error;
use crate::maps::{roundtrip_check, roundtrip_exhaustive, RoundtripReport};
use crate::modularity::{full_verification, CountSource, VerificationConfig};
use crate::qseries::{deligne_bound_check, f_coefficients, hecke_check};
use crate::varieties::{
    cayley_cover_formula, count_c2, count_cayley_c1, count_cayley_resolved_cover, CountRecord,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "bnq",
    version,
    about = "Point counts and modularity checks for the Barth-Nieto quintic"
)]
pub struct Cli {
    /// Output format; defaults to tsv for tables and json for reports
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Count cache file (default: $BNQ_CACHE, else none)
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Recompute cached counts and fail on disagreement
    #[arg(long, global = true)]
    pub recheck: bool,
    /// Worker threads
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for sampling
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Point counts (p, #U, #Y, t3)
    Count(CountArgs),
    /// Coefficients of the weight-4 level-6 eta product
    Qexp(QexpArgs),
    /// Full verification pipeline, JSON report
    Verify(VerifyArgs),
    /// Round trips through the Beauville and Verrill maps
    Maps(MapsArgs),
    /// Cayley cubic cover counts against their closed forms
    Cayley(CayleyArgs),
}

#[derive(Debug, Args)]
pub struct PrimeSel {
    /// Comma-separated primes and inclusive ranges, e.g. 5,7,11 or 5..41
    #[arg(long, conflicts_with = "prime")]
    pub primes: Option<String>,
    #[arg(long)]
    pub prime: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub sel: PrimeSel,
    /// Add the double-cover columns #U~ and #Y~
    #[arg(long)]
    pub twisted: bool,
}

#[derive(Debug, Args)]
pub struct QexpArgs {
    /// Number of coefficients
    #[arg(short = 'N', default_value_t = 13)]
    pub n: usize,
    /// Check Hecke identities and the Deligne bound
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Bad primes S
    #[arg(long, default_value = "2,3")]
    pub s: String,
    /// Primes to compare (default: the Livné set)
    #[arg(long)]
    pub primes: Option<String>,
    #[arg(long, default_value_t = 13)]
    pub hodge_prime: u64,
    /// Inclusive range for the k-solver, e.g. 7..59; "none" to skip
    #[arg(long, default_value = "7..59")]
    pub k_range: String,
}

#[derive(Debug, Args)]
pub struct MapsArgs {
    #[arg(long)]
    pub prime: u64,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Use every point of U(F_p) instead of samples
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Debug, Args)]
pub struct CayleyArgs {
    #[command(flatten)]
    pub sel: PrimeSel,
}

/// Captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: if passed { EXIT_OK } else { EXIT_FAILURE },
        }
    }

    fn err(e: &Error) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(e),
        }
    }
}

/// Usage problems map to 2, everything else to 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPrime(_)
        | Error::ModulusTooLarge(_)
        | Error::BadPrime(_)
        | Error::OutOfRange { .. }
        | Error::InvalidEtaSpec(_)
        | Error::EmptyTruncation
        | Error::IndexOutOfRange { .. }
        | Error::Precondition(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Parses `5,7,11`, `5..41` or a mix. Listed values must be prime; ranges
/// are inclusive and keep only their primes.
pub fn parse_primes(spec: &str) -> Result<Vec<u64>, Error> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo = parse_u64(lo)?;
            let hi = parse_u64(hi)?;
            out.extend(primes_in(lo, hi));
        } else {
            let p = parse_u64(part)?;
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            out.push(p);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(Error::Precondition(format!("no primes in {spec:?}")));
    }
    Ok(out)
}

fn parse_u64(s: &str) -> Result<u64, Error> {
    s.trim()
        .parse()
        .map_err(|_| Error::Precondition(format!("not a number: {s:?}")))
}

fn parse_range(s: &str) -> Result<Option<(u64, u64)>, Error> {
    if s.eq_ignore_ascii_case("none") {
        return Ok(None);
    }
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| Error::Precondition(format!("expected LO..HI, got {s:?}")))?;
    Ok(Some((parse_u64(lo)?, parse_u64(hi)?)))
}

fn good_primes(sel: &PrimeSel) -> Result<Vec<u64>, Error> {
    let primes = match (&sel.primes, sel.prime) {
        (Some(spec), _) => parse_primes(spec)?,
        (None, Some(p)) => vec![p],
        (None, None) => return Err(Error::Precondition("give --primes or --prime".into())),
    };
    for &p in &primes {
        PrimeField::new(p)?.require_good()?;
    }
    Ok(primes)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

/// Parses and runs one invocation.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome::ok(text, true)
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return Outcome::err(&Error::Precondition(e.to_string())),
    };
    pool.install(|| execute(&cli))
}

fn execute(cli: &Cli) -> Outcome {
    let path = cli.cache.clone().or_else(CountCache::env_path);
    let mut cache = match &path {
        Some(p) => match CountCache::open(p) {
            Ok(c) => c,
            Err(e) => return Outcome::err(&e),
        },
        None => CountCache::in_memory(),
    };
    let result = match &cli.command {
        Command::Count(a) => cmd_count(cli, a, &mut cache),
        Command::Qexp(a) => cmd_qexp(cli, a),
        Command::Verify(a) => cmd_verify(cli, a, &mut cache),
        Command::Maps(a) => cmd_maps(cli, a),
        Command::Cayley(a) => cmd_cayley(cli, a, &mut cache),
    };
    // counts are stored even when a later check fails
    if let Err(e) = cache.save() {
        return Outcome::err(&e);
    }
    match result {
        Ok(o) => o,
        Err(e) => Outcome::err(&e),
    }
}

fn cmd_count(cli: &Cli, a: &CountArgs, cache: &mut CountCache) -> Result<Outcome, Error> {
    let primes = good_primes(&a.sel)?;
    let mut src = CachedSource::new(cache, cli.recheck);
    let rows = primes
        .iter()
        .map(|&p| src.record(p))
        .collect::<Result<Vec<CountRecord>, Error>>()?;
    let out = match cli.format.unwrap_or(Format::Tsv) {
        Format::Json => to_json(&rows),
        Format::Tsv => {
            let mut s = String::from("p\t#U\t#Y\tt3");
            if a.twisted {
                s.push_str("\t#U~\t#Y~");
            }
            s.push('\n');
            for r in &rows {
                let _ = write!(s, "{}\t{}\t{}\t{}", r.p, r.n_u, r.n_y, r.t3);
                if a.twisted {
                    let _ = write!(s, "\t{}\t{}", r.n_utilde, r.n_ytilde);
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::ok(out, true))
}

fn cmd_qexp(cli: &Cli, a: &QexpArgs) -> Result<Outcome, Error> {
    let q = f_coefficients(a.n)?;
    let (hecke, deligne) = if a.check {
        (Some(hecke_check(&q, a.n)), Some(deligne_bound_check(&q)))
    } else {
        (None, None)
    };
    let passed =
        hecke.as_ref().is_none_or(|h| h.passed()) && deligne.as_ref().is_none_or(|d| d.passed());
    let coeffs = &q.coeffs[1..];
    let out = match cli.format.unwrap_or(Format::Tsv) {
        Format::Json => {
            #[derive(Serialize)]
            struct QexpReport<'a> {
                level: u64,
                weight: u32,
                coefficients: &'a [i64],
                #[serde(skip_serializing_if = "Option::is_none")]
                hecke: Option<crate::qseries::HeckeReport>,
                #[serde(skip_serializing_if = "Option::is_none")]
                deligne: Option<crate::qseries::DeligneReport>,
            }
            to_json(&QexpReport {
                level: q.level,
                weight: q.weight,
                coefficients: coeffs,
                hecke,
                deligne,
            })
        }
        Format::Tsv => {
            let mut s = String::from("n\ta_n\n");
            for (i, c) in coeffs.iter().enumerate() {
                let _ = writeln!(s, "{}\t{c}", i + 1);
            }
            if let Some(h) = &hecke {
                let _ = writeln!(
                    s,
                    "# hecke: {} multiplicative, {} prime-power checks, {} violations",
                    h.multiplicative_checks,
                    h.prime_power_checks,
                    h.violations.len()
                );
            }
            if let Some(d) = &deligne {
                let _ = writeln!(
                    s,
                    "# deligne: {} primes, {} violations",
                    d.primes_checked,
                    d.violations.len()
                );
            }
            s
        }
    };
    Ok(Outcome::ok(out, passed))
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs, cache: &mut CountCache) -> Result<Outcome, Error> {
    let s =
        a.s.split(',')
            .map(parse_u64)
            .collect::<Result<Vec<_>, _>>()?;
    let config = VerificationConfig {
        s,
        primes: a.primes.as_deref().map(parse_primes).transpose()?,
        hodge_prime: a.hodge_prime,
        k_range: parse_range(&a.k_range)?,
    };
    let mut src = CachedSource::new(cache, cli.recheck);
    let report = full_verification(&config, &mut src)?;
    let passed = report.verdict.is_verified();
    let out = match cli.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Tsv => {
            let mut s = String::from("p\t#U\t#Y\tt3\ta_p\tmatch\n");
            for r in &report.rows {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r.p, r.n_u, r.n_y, r.t3, r.a_p, r.matches
                );
            }
            let _ = writeln!(s, "# verdict: {}", report.verdict);
            s
        }
    };
    Ok(Outcome::ok(out, passed))
}

fn cmd_maps(cli: &Cli, a: &MapsArgs) -> Result<Outcome, Error> {
    let fld = PrimeField::new(a.prime)?;
    fld.require_good()?;
    let report: RoundtripReport = if a.exhaustive {
        roundtrip_exhaustive(&fld)?
    } else {
        roundtrip_check(&fld, a.samples, cli.seed)?
    };
    let passed = report.failures() == 0;
    let out = match cli.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Tsv => {
            let mut s = String::from("map\tsuccess\tindeterminate\tfailure\n");
            for (name, t) in [
                ("beauville", &report.beauville),
                ("verrill", &report.verrill),
            ] {
                let _ = writeln!(
                    s,
                    "{name}\t{}\t{}\t{}",
                    t.success, t.indeterminate, t.failure
                );
            }
            match report.seed {
                Some(seed) => {
                    let _ = writeln!(
                        s,
                        "# p = {}, samples = {}, seed = {seed}",
                        report.p, report.samples
                    );
                }
                None => {
                    let _ = writeln!(
                        s,
                        "# p = {}, exhaustive over {} points",
                        report.p, report.samples
                    );
                }
            }
            s
        }
    };
    Ok(Outcome::ok(out, passed))
}

#[derive(Debug, Serialize)]
struct CayleyRow {
    p: u64,
    enumerated: u64,
    formula: u64,
    c1: u64,
    c2: u64,
    c2_from_c1: u64,
    #[serde(rename = "match")]
    matches: bool,
}

fn cmd_cayley(cli: &Cli, a: &CayleyArgs, cache: &mut CountCache) -> Result<Outcome, Error> {
    let primes = good_primes(&a.sel)?;
    let mut rows = Vec::new();
    for p in primes {
        let fld = PrimeField::new(p)?;
        let enumerated = get_or_compute(cache, VARIETY_CAYLEY_COVER, p, cli.recheck, || {
            count_cayley_resolved_cover(&fld)
        })?;
        let c1 = get_or_compute(cache, VARIETY_CAYLEY_C1, p, cli.recheck, || {
            count_cayley_c1(&fld)
        })?;
        let formula = cayley_cover_formula(p);
        let c2 = count_c2(&fld)?;
        rows.push(CayleyRow {
            p,
            enumerated,
            formula,
            c1,
            c2,
            c2_from_c1: c1 + 4 * p,
            matches: enumerated == formula && c2 == c1 + 4 * p,
        });
    }
    let passed = rows.iter().all(|r| r.matches);
    let out = match cli.format.unwrap_or(Format::Tsv) {
        Format::Json => to_json(&rows),
        Format::Tsv => {
            let mut s = String::from("p\tenumerated\tformula\tdelta\tC1\tC2\tC1+4p\tmatch\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.p,
                    r.enumerated,
                    r.formula,
                    r.enumerated as i64 - r.formula as i64,
                    r.c1,
                    r.c2,
                    r.c2_from_c1,
                    r.matches
                );
            }
            s
        }
    };
    Ok(Outcome::ok(out, passed))
}
