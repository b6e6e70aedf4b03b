//! Subcommands of the `zeta` binary, usable in-process.
//!
//! Each `cmd_*` function returns structured data; [`run`] parses arguments,
//! renders the result and maps failures to the exit codes below.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};
use thiserror::Error;
use zeta_core::poly::format_poly;
use zeta_core::solver::{ForcedReport, TraceCheckReport};
use zeta_core::variety::DEFAULT_BUDGET;
use zeta_core::zeta::{DualityReport, RhReport, DEFAULT_TOLERANCE};
use zeta_core::*;

pub const EXIT_OK: i32 = 0;
/// Verdict-style failure: `compare` found different zetas, `solve` left
/// degrees unforced.
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_NO_FIT: i32 = 4;
pub const EXIT_DUALITY: i32 = 5;
pub const EXIT_FIELD_MISMATCH: i32 = 6;
pub const EXIT_FACTORIZATION: i32 = 7;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Malformed(String),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error("varieties live over different fields (q = {0} and q = {1})")]
    FieldMismatch(BigUint, BigUint),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Curve(#[from] zeta_core::curves::CurveError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) | CliError::Solver(_) | CliError::Curve(_) => EXIT_MALFORMED,
            CliError::Count(e) => match e.root() {
                CountError::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_MALFORMED,
            },
            CliError::Zeta(e) => match e {
                ZetaError::InsufficientCounts(_)
                | ZetaError::NoRationalFit(_)
                | ZetaError::NonIntegralCoefficients
                | ZetaError::NonIntegralCount(_)
                | ZetaError::NegativeCount(_) => EXIT_NO_FIT,
                ZetaError::DualityViolation { .. } => EXIT_DUALITY,
                ZetaError::WeightSeparationFailed(_)
                | ZetaError::RoundingMismatch(_)
                | ZetaError::ProfileMismatch { .. } => EXIT_FACTORIZATION,
                ZetaError::InvalidZeta(_) | ZetaError::InvalidProfile(_) => EXIT_MALFORMED,
            },
            CliError::FieldMismatch(..) => EXIT_FIELD_MISMATCH,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

pub fn load_spec(path: &Path) -> Result<VarietySpec, CliError> {
    Ok(VarietySpec::from_json(&read(path)?)?)
}

pub fn load_profile(path: &Path) -> Result<CohomologyProfile, CliError> {
    CohomologyProfile::from_json(&read(path)?)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

pub fn load_counts(path: &Path) -> Result<PointCountSeries, CliError> {
    PointCountSeries::from_json(&read(path)?)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

pub fn cmd_count(spec: &VarietySpec, n: u32, budget: u64) -> Result<PointCountSeries, CliError> {
    Ok(count_series(spec, n, budget)?)
}

/// A zeta function with everything derived from it.
#[derive(Debug, Clone)]
pub struct ZetaReport {
    pub counts: PointCountSeries,
    pub zeta: ZetaFunction,
    pub factorization: WeilFactorization,
    pub duality: DualityReport,
    pub rh: RhReport,
}

impl ZetaReport {
    /// `(P_1 P_3 ...)/(P_0 P_2 ...)` with each nontrivial factor in parentheses.
    pub fn factored(&self) -> String {
        let side = |parity: usize| {
            let parts: Vec<String> = self
                .factorization
                .factors()
                .iter()
                .enumerate()
                .filter(|(i, p)| i % 2 == parity && p.degree() != Some(0))
                .map(|(_, p)| format!("({})", format_poly(p, "t")))
                .collect();
            match parts.len() {
                0 => "1".to_string(),
                1 => parts[0].clone(),
                _ => format!("({})", parts.join("")),
            }
        };
        format!("{}/{}", side(1), side(0))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "counts": serde_json::to_value(&self.counts).expect("serializable"),
            "zeta": self.zeta.to_json(),
            "factorization": self.factorization.to_json(),
            "duality": serde_json::to_value(&self.duality).expect("serializable"),
            "riemann_hypothesis": {
                "passes": self.rh.passes(),
                "tolerance": self.rh.tolerance,
                "roots_checked": self.rh.roots_checked,
                "violations": serde_json::to_value(&self.rh.violations).expect("serializable"),
            },
        })
    }
}

/// Factors, checks duality (an error on failure) and runs the advisory RH check.
fn analyse(
    counts: PointCountSeries,
    zeta: ZetaFunction,
    profile: &CohomologyProfile,
    tolerance: f64,
) -> Result<ZetaReport, CliError> {
    let factorization = factor_by_weights(&zeta, profile, tolerance)?;
    let duality = check_functional_equation(&factorization)?;
    let rh = check_riemann_hypothesis(&factorization, tolerance);
    Ok(ZetaReport {
        counts,
        zeta,
        factorization,
        duality,
        rh,
    })
}

/// Counts `N_1, N_2, ...` until the profile pins the zeta function, then one
/// more count (when the budget allows) to confirm the fit.
pub fn zeta_of_spec(
    spec: &VarietySpec,
    profile: &CohomologyProfile,
    budget: u64,
    tolerance: f64,
) -> Result<ZetaReport, CliError> {
    let q = spec.q();
    let mut series = PointCountSeries {
        q: q.clone(),
        counts: Vec::new(),
    };
    let limit = profile.split().total().max(1);
    let zeta = loop {
        let n = series.counts.len() as u32 + 1;
        series.counts.push(count_points(spec, n, budget).map_err(|e| {
            CountError::AtPower {
                n,
                source: Box::new(e),
            }
        })?);
        match zeta_from_counts_with_profile(&series, profile) {
            Ok(z) => break z,
            Err(ZetaError::InsufficientCounts(_)) if series.counts.len() < limit => continue,
            Err(e) => return Err(e.into()),
        }
    };
    let n = series.counts.len() as u32 + 1;
    if spec.ambient_size(n) <= BigUint::from(budget) {
        series.counts.push(count_points(spec, n, budget)?);
        let refit = zeta_from_counts_with_profile(&series, profile)?;
        debug_assert_eq!(refit, zeta);
    }
    analyse(series, zeta, profile, tolerance)
}

/// Fits all supplied counts (extra counts beyond the minimum are checked).
pub fn zeta_of_counts(
    series: &PointCountSeries,
    profile: &CohomologyProfile,
    tolerance: f64,
) -> Result<ZetaReport, CliError> {
    let zeta = zeta_from_counts_with_profile(series, profile)?;
    analyse(series.clone(), zeta, profile, tolerance)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    /// Zetas differ; `N_n` of both at the first `n` where they disagree.
    Differ {
        n: usize,
        first_count: BigUint,
        second_count: BigUint,
    },
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub verdict: Verdict,
    pub first: ZetaReport,
    pub second: ZetaReport,
}

/// Compares zeta functions exactly. `second_profile` defaults to `profile`.
pub fn cmd_compare(
    a: &VarietySpec,
    b: &VarietySpec,
    profile: &CohomologyProfile,
    second_profile: Option<&CohomologyProfile>,
    budget: u64,
    tolerance: f64,
) -> Result<Comparison, CliError> {
    if a.q() != b.q() {
        return Err(CliError::FieldMismatch(a.q(), b.q()));
    }
    let second_profile = second_profile.unwrap_or(profile);
    let first = zeta_of_spec(a, profile, budget, tolerance)?;
    let second = zeta_of_spec(b, second_profile, budget, tolerance)?;
    let verdict = if first.zeta == second.zeta {
        Verdict::Equal
    } else {
        // Two distinct zetas of total degrees e and f already differ in some
        // N_n with n <= e + f.
        let terms = (profile.split().total() + second_profile.split().total()).max(1);
        let ca = counts_from_zeta(&first.zeta, terms)?;
        let cb = counts_from_zeta(&second.zeta, terms)?;
        let n = ca.first_divergence(&cb).expect("distinct zetas have distinct counts");
        Verdict::Differ {
            n,
            first_count: ca.counts[n - 1].clone(),
            second_count: cb.counts[n - 1].clone(),
        }
    };
    Ok(Comparison {
        verdict,
        first,
        second,
    })
}

pub fn cmd_find_pair(from: u64, to: u64) -> Result<Vec<PairSearchResult>, CliError> {
    Ok(find_pairs(from..=to)?)
}

pub const DEFAULT_MAX_DIMENSION: usize = 8;

pub fn cmd_solve(d: usize, flags: SolverFlags, max_d: usize) -> Result<ForcedReport, CliError> {
    if d == 0 || d > max_d {
        return Err(CliError::Malformed(format!(
            "dimension must be in 1..={max_d}, got {d}"
        )));
    }
    Ok(solve_forced(&build_constraint_system(d, flags)?)?)
}

/// Per-degree traces of both curves in a pair, checked against the
/// dimension-one constraint system for `n = 1..terms`.
pub fn verify_pair_traces(
    first: &ZetaReport,
    second: &ZetaReport,
    terms: usize,
) -> Result<TraceCheckReport, CliError> {
    let d = first.factorization.dimension();
    let tx = traces_from_factorization(&first.factorization, terms);
    let ty = traces_from_factorization(&second.factorization, terms);
    let system = build_constraint_system(d, SolverFlags::default())?;
    Ok(verify_traces_against_system(&tx, &ty, &system)?)
}

pub fn elliptic_profile() -> CohomologyProfile {
    CohomologyProfile::new(1, vec![1, 2, 1]).expect("valid profile")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "zeta", version, about = "Zeta functions of varieties over finite fields")]
pub struct Cli {
    /// Largest number of ambient points one count may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Relative tolerance for root moduli.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print N_1..N_n.
    Count { spec: PathBuf, n: u32 },
    /// Zeta function, Weil factorization, duality and RH checks.
    Zeta {
        /// `SPEC PROFILE`, or just `PROFILE` together with --counts.
        #[arg(num_args = 1..=2, required = true, value_name = "FILE")]
        files: Vec<PathBuf>,
        /// Read point counts from a JSON file instead of counting.
        #[arg(long)]
        counts: Option<PathBuf>,
    },
    /// Decide whether two varieties have the same zeta function.
    Compare {
        first: PathBuf,
        second: PathBuf,
        profile: PathBuf,
        /// Profile of the second variety, when it differs from the first.
        second_profile: Option<PathBuf>,
    },
    /// Search for non-isomorphic elliptic curves with equal zeta functions.
    FindPair {
        #[arg(long, default_value_t = 5)]
        from: u64,
        #[arg(long, default_value_t = 31)]
        to: u64,
    },
    /// Which trace equalities the constraints force in dimension d.
    Solve {
        d: usize,
        #[command(flatten)]
        flags: FlagArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_DIMENSION)]
        max_d: usize,
    },
}

#[derive(Debug, Args)]
pub struct FlagArgs {
    #[arg(long, overrides_with = "no_albanese")]
    albanese: bool,
    #[arg(long)]
    no_albanese: bool,
    #[arg(long, overrides_with = "no_hard_lefschetz")]
    hard_lefschetz: bool,
    #[arg(long)]
    no_hard_lefschetz: bool,
    #[arg(long, overrides_with = "no_trivial")]
    trivial: bool,
    #[arg(long)]
    no_trivial: bool,
}

impl FlagArgs {
    /// Every family is on unless switched off.
    pub fn flags(&self) -> SolverFlags {
        SolverFlags {
            albanese: !self.no_albanese,
            hard_lefschetz: !self.no_hard_lefschetz,
            trivial: !self.no_trivial,
        }
    }
}

fn counts_json(series: &PointCountSeries) -> Value {
    serde_json::to_value(series).expect("serializable")
}

fn render_zeta(report: &ZetaReport, out: &mut String) {
    let _ = writeln!(out, "counts: {}", join(&report.counts.counts));
    let _ = writeln!(out, "zeta: {}", report.factored());
    for (i, p) in report.factorization.factors().iter().enumerate() {
        let _ = writeln!(out, "P_{i} = {}", format_poly(p, "t"));
    }
    for c in &report.duality.checks {
        let _ = writeln!(
            out,
            "duality H^{} <-> H^{}: {}",
            c.degree,
            c.dual_degree,
            if c.holds { "ok" } else { "FAILED" }
        );
    }
    let _ = writeln!(
        out,
        "riemann hypothesis (advisory, tol {:e}): {} ({} roots)",
        report.rh.tolerance,
        if report.rh.passes() { "ok" } else { "violated" },
        report.rh.roots_checked
    );
    for v in &report.rh.violations {
        let _ = writeln!(
            out,
            "  P_{} root modulus {:e}, expected {:e}",
            v.degree, v.modulus, v.expected
        );
    }
}

fn join(v: &[BigUint]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn render_forced(report: &ForcedReport, out: &mut String) {
    let _ = writeln!(
        out,
        "d = {}  albanese={} hard_lefschetz={} trivial={}",
        report.d, report.flags.albanese, report.flags.hard_lefschetz, report.flags.trivial
    );
    let _ = writeln!(out, "{:>6}  status", "degree");
    let free = report.free_degrees();
    for i in 0..=2 * report.d {
        let status = if report.forced.contains(&i) {
            "forced"
        } else if free.contains(&i) {
            "free"
        } else {
            "dependent"
        };
        let _ = writeln!(out, "{i:>6}  {status}");
    }
    for r in &report.residual {
        let _ = writeln!(out, "residual: {r}");
    }
    let _ = writeln!(
        out,
        "{}",
        if report.all_forced() {
            "all trace differences vanish"
        } else {
            "some trace differences are not forced"
        }
    );
}

fn pair_json(r: &PairSearchResult) -> Value {
    json!({
        "q": r.q,
        "first": { "a": r.first.a, "b": r.first.b },
        "second": { "a": r.second.a, "b": r.second.b },
        "counts": r.counts.iter().map(|c| Value::String(c.to_string())).collect::<Vec<_>>(),
        "zeta": r.zeta.to_json(),
    })
}

/// Runs one subcommand, writing its rendering to `out`; returns the exit code.
pub fn execute(cli: &Cli, out: &mut String) -> Result<i32, CliError> {
    let json_out = cli.format == Format::Json;
    match &cli.command {
        Command::Count { spec, n } => {
            let series = cmd_count(&load_spec(spec)?, *n, cli.budget)?;
            if json_out {
                let _ = writeln!(out, "{}", counts_json(&series));
            } else {
                for c in &series.counts {
                    let _ = writeln!(out, "{c}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Zeta { files, counts } => {
            let report = match (files.as_slice(), counts) {
                ([profile], Some(c)) => {
                    zeta_of_counts(&load_counts(c)?, &load_profile(profile)?, cli.tolerance)?
                }
                ([spec, profile], None) => zeta_of_spec(
                    &load_spec(spec)?,
                    &load_profile(profile)?,
                    cli.budget,
                    cli.tolerance,
                )?,
                _ => {
                    return Err(CliError::Malformed(
                        "give exactly one of a spec file or --counts".into(),
                    ))
                }
            };
            if json_out {
                let _ = writeln!(out, "{}", report.to_json());
            } else {
                render_zeta(&report, out);
            }
            Ok(EXIT_OK)
        }
        Command::Compare {
            first,
            second,
            profile,
            second_profile,
        } => {
            let second_profile = second_profile.as_deref().map(load_profile).transpose()?;
            let c = cmd_compare(
                &load_spec(first)?,
                &load_spec(second)?,
                &load_profile(profile)?,
                second_profile.as_ref(),
                cli.budget,
                cli.tolerance,
            )?;
            let equal = c.verdict == Verdict::Equal;
            if json_out {
                let divergence = match &c.verdict {
                    Verdict::Equal => Value::Null,
                    Verdict::Differ {
                        n,
                        first_count,
                        second_count,
                    } => json!({
                        "n": n,
                        "first": first_count.to_string(),
                        "second": second_count.to_string(),
                    }),
                };
                let _ = writeln!(
                    out,
                    "{}",
                    json!({
                        "verdict": if equal { "EQUAL" } else { "DIFFER" },
                        "first_divergence": divergence,
                        "first": c.first.to_json(),
                        "second": c.second.to_json(),
                    })
                );
            } else {
                match &c.verdict {
                    Verdict::Equal => {
                        let _ = writeln!(out, "EQUAL");
                    }
                    Verdict::Differ {
                        n,
                        first_count,
                        second_count,
                    } => {
                        let _ = writeln!(out, "DIFFER at n={n} ({first_count} vs {second_count})");
                    }
                }
                let _ = writeln!(out, "first:  {}", c.first.factored());
                let _ = writeln!(out, "second: {}", c.second.factored());
            }
            Ok(if equal { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::FindPair { from, to } => {
            let pairs = cmd_find_pair(*from, *to)?;
            if json_out {
                let _ = writeln!(out, "{}", Value::Array(pairs.iter().map(pair_json).collect()));
            } else {
                for r in &pairs {
                    let _ = writeln!(
                        out,
                        "p={:<3} (a,b)=({},{}) ~ ({},{})  N=[{}]  zeta={}",
                        r.q,
                        r.first.a,
                        r.first.b,
                        r.second.a,
                        r.second.b,
                        join(&r.counts),
                        r.zeta
                    );
                }
                let _ = writeln!(out, "{} pairs", pairs.len());
            }
            Ok(EXIT_OK)
        }
        Command::Solve { d, flags, max_d } => {
            let report = cmd_solve(*d, flags.flags(), *max_d)?;
            if json_out {
                let _ = writeln!(out, "{}", report.to_json());
            } else {
                render_forced(&report, out);
            }
            Ok(if report.all_forced() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

/// Parses `args` (including the program name), runs, and writes output or
/// the error message. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_MALFORMED;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(code) => {
            let _ = stdout.write_all(out.as_bytes());
            code
        }
        Err(e) => {
            let _ = stdout.write_all(out.as_bytes());
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factored_form_of_elliptic_zeta() {
        let counts = PointCountSeries {
            q: BigUint::from(5u32),
            counts: vec![BigUint::from(9u32)],
        };
        let report = zeta_of_counts(&counts, &elliptic_profile(), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(report.factored(), "(1 + 3t + 5t^2)/((1 - t)(1 - 5t))");
    }

    #[test]
    fn error_exit_codes() {
        let mismatch = CliError::FieldMismatch(BigUint::from(5u32), BigUint::from(7u32));
        assert_eq!(mismatch.exit_code(), EXIT_FIELD_MISMATCH);
        assert_eq!(CliError::Malformed("x".into()).exit_code(), EXIT_MALFORMED);
        assert_eq!(
            CliError::from(ZetaError::InsufficientCounts("need 2".into())).exit_code(),
            EXIT_NO_FIT
        );
    }

    #[test]
    fn usage_errors_exit_malformed() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["zeta", "count"], &mut out, &mut err), EXIT_MALFORMED);
        assert!(!err.is_empty());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["zeta", "--help"], &mut out, &mut err), EXIT_OK);
        assert!(String::from_utf8(out).unwrap().contains("solve"));
    }
}
