//! Command-line front end.
//!
//! [`run`] parses the arguments, dispatches one verb and writes JSON (the
//! default) or CSV. Exit codes: 0 on success, 2 on invalid input, 3 when
//! a verification fails.

pub mod cache;
pub mod sweep;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::asymptotics::{h0_omega, h0_omega_sequence, integral_vs_sum_check, pieces};
use crate::bigness::{evaluate_criterion, SurfaceConfig};
use crate::error::Error;
use crate::extension::{divisor_d, divisor_d_bruteforce};
use crate::invariants::{chi_orb, h1_omega, h1_omega_limit_report, invariant_record, mu};
use crate::latticesum::hsum;
use crate::oracle::oracle_report;
use crate::quasifit::{coefficient_report, default_sample_count, fit, FitRequest};
use crate::Rational;

use self::cache::SweepCache;
use self::sweep::sweep;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

const N_MAX: i64 = 1_000;
const N_MAX_CLOSED: i64 = 2_000;
const M_MAX: i64 = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "symdiff",
    version,
    about = "Exact invariants of A_n singularities"
)]
pub struct Cli {
    /// Emit CSV with a header row.
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    /// Emit JSON (the default).
    #[arg(long, global = true)]
    pub json: bool,
    /// Omit the timestamp field from JSON output.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct NArg {
    #[arg(long)]
    pub n: i64,
}

#[derive(Debug, Args)]
pub struct NmArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub m: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weighted lattice sum h0(A_n, m).
    Hsum(NmArgs),
    /// Rows {m, hsum, mu, chi_orb, h1} over a range of m.
    HsumSweep {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m_from: i64,
        #[arg(long)]
        m_to: i64,
        /// Worker threads; 1 runs serially.
        #[arg(long, default_value_t = 0)]
        parallel: usize,
        /// JSONL cache reused across runs.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Compare the lattice sum with the rank oracle.
    OracleVerify(NmArgs),
    /// Cubic coefficients h0_omega and h1_omega.
    Omega(NArg),
    /// Equivariant correction term mu.
    Mu(NmArgs),
    /// Orbifold Euler characteristic polynomial.
    ChiOrb(NmArgs),
    /// h1 = mu - chi_orb - hsum.
    H1(NmArgs),
    /// Coefficients of the maximal divisor D.
    Divisor(NmArgs),
    /// Pieces of the upper half polygon.
    Polygon(NmArgs),
    /// Quasi-polynomial fit of hsum(n, .).
    Fit {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 12)]
        max_period: usize,
        /// Last sample; defaults to (degree + 3) * max_period.
        #[arg(long)]
        m_to: Option<i64>,
    },
    /// Lattice sum against the exact integral over the upper half polygon.
    IntegralCheck(NmArgs),
    /// Bigness criterion for a surface config file.
    Bigness {
        #[arg(long)]
        config: PathBuf,
    },
    /// Monotonicity and limits of h0_omega and h1_omega up to n.
    Limits(NArg),
}

/// A verb's result: a JSON document and the same data as a table.
struct Output {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    verified: bool,
}

impl Output {
    fn single(json: Value, header: Vec<&'static str>, row: Vec<String>) -> Self {
        Output {
            json,
            header,
            rows: vec![row],
            verified: true,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verify(String),
}

fn check_range(name: &str, v: i64, lo: i64, hi: i64) -> Result<(), CliError> {
    if v < lo || v > hi {
        return Err(CliError::Invalid(format!(
            "--{name} = {v} outside {lo}..={hi}"
        )));
    }
    Ok(())
}

fn check_nm(a: &NmArgs) -> Result<(), CliError> {
    check_range("n", a.n, 1, N_MAX)?;
    check_range("m", a.m, 0, M_MAX)
}

fn s<T: ToString>(v: T) -> String {
    v.to_string()
}

fn dispatch(cmd: &Command) -> Result<Output, CliError> {
    Ok(match cmd {
        Command::Hsum(a) => {
            check_nm(a)?;
            let h = hsum(a.n, a.m);
            Output::single(
                json!({"n": a.n, "m": a.m, "hsum": h}),
                vec!["n", "m", "hsum"],
                vec![s(a.n), s(a.m), s(h)],
            )
        }
        Command::HsumSweep {
            n,
            m_from,
            m_to,
            parallel,
            cache,
        } => {
            check_range("n", *n, 1, N_MAX)?;
            check_range("m-from", *m_from, 0, M_MAX)?;
            check_range("m-to", *m_to, m_from - 1, M_MAX)?;
            let mut cache = match cache {
                Some(p) => Some(SweepCache::open(p).map_err(|e| {
                    CliError::Invalid(format!("cannot read cache {}: {e}", p.display()))
                })?),
                None => None,
            };
            let rows = if *parallel > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(*parallel)
                    .build()
                    .map_err(|e| CliError::Invalid(e.to_string()))?;
                pool.install(|| sweep(*n, *m_from, *m_to, true, cache.as_mut()))?
            } else {
                sweep(*n, *m_from, *m_to, *parallel == 0, cache.as_mut())?
            };
            let bad: Vec<i64> = rows.iter().filter(|r| !r.h1_ok()).map(|r| r.m).collect();
            Output {
                json: json!({"n": n, "rows": rows, "h1_integral": bad.is_empty()}),
                header: vec!["m", "hsum", "mu", "chi_orb", "h1"],
                rows: rows
                    .iter()
                    .map(|r| vec![s(r.m), s(r.hsum), s(&r.mu), s(&r.chi_orb), s(&r.h1)])
                    .collect(),
                verified: bad.is_empty(),
            }
        }
        Command::OracleVerify(a) => {
            check_nm(a)?;
            let formula = hsum(a.n, a.m);
            let rep = oracle_report(a.n, a.m)?;
            let matched = formula == rep.oracle;
            let general = rep.non_general.is_empty();
            let mut out = Output::single(
                json!({
                    "n": a.n, "m": a.m, "formula": formula, "oracle": rep.oracle,
                    "match": matched, "blocks": rep.blocks, "general_position": general,
                }),
                vec!["n", "m", "formula", "oracle", "match", "general_position"],
                vec![
                    s(a.n),
                    s(a.m),
                    s(formula),
                    s(rep.oracle),
                    s(matched),
                    s(general),
                ],
            );
            out.verified = matched && general;
            out
        }
        Command::Omega(a) => {
            check_range("n", a.n, 1, N_MAX_CLOSED)?;
            let (h0, h1) = (h0_omega(a.n), h1_omega(a.n));
            Output::single(
                json!({"n": a.n, "h0_omega": h0, "h1_omega": h1}),
                vec!["n", "h0_omega", "h1_omega"],
                vec![s(a.n), s(h0), s(h1)],
            )
        }
        Command::Mu(a) => {
            check_nm(a)?;
            let v = mu(a.n, a.m).map_err(|e| match e {
                Error::NotRational(x) => CliError::Verify(format!("mu is not rational: {x}")),
                other => other.into(),
            })?;
            Output::single(
                json!({"n": a.n, "m": a.m, "mu": v}),
                vec!["n", "m", "mu"],
                vec![s(a.n), s(a.m), s(v)],
            )
        }
        Command::ChiOrb(a) => {
            check_nm(a)?;
            let v = chi_orb(a.n, a.m);
            Output::single(
                json!({"n": a.n, "m": a.m, "chi_orb": v}),
                vec!["n", "m", "chi_orb"],
                vec![s(a.n), s(a.m), s(v)],
            )
        }
        Command::H1(a) => {
            check_nm(a)?;
            let r = invariant_record(a.n, a.m)?;
            let ok = r.h1.is_integer() && !r.h1.is_negative();
            let row = vec![s(r.n), s(r.m), s(&r.mu), s(&r.chi_orb), s(r.hsum), s(&r.h1)];
            let mut out = Output::single(
                serde_json::to_value(&r).expect("record serializes"),
                vec!["n", "m", "mu", "chi_orb", "hsum", "h1"],
                row,
            );
            out.verified = ok;
            out
        }
        Command::Divisor(a) => {
            check_nm(a)?;
            let d = divisor_d(a.n, a.m);
            let brute = divisor_d_bruteforce(a.n, a.m, (a.n + 1) * a.m + 2 * (a.n + 1))?;
            let matched = brute == d;
            Output {
                json: json!({"n": d.n, "m": d.m, "coefficients": d.coefficients, "bruteforce_match": matched}),
                header: vec!["n", "m", "r", "a_r"],
                rows: d
                    .coefficients
                    .iter()
                    .zip(1..)
                    .map(|(c, r)| vec![s(a.n), s(a.m), s(r), s(c)])
                    .collect(),
                verified: matched,
            }
        }
        Command::Polygon(a) => {
            check_nm(a)?;
            let ps = pieces(a.n, &Rational::from(a.m));
            let mut rows = Vec::new();
            for p in &ps {
                for (k, v) in p.vertices.iter().enumerate() {
                    rows.push(vec![s(p.label), s(k), s(&v.0), s(&v.1), s(p.weight_at(v))]);
                }
            }
            Output {
                json: json!({"n": a.n, "m": a.m, "pieces": ps}),
                header: vec!["piece", "vertex", "x1", "x2", "weight"],
                rows,
                verified: true,
            }
        }
        Command::Fit {
            n,
            degree,
            max_period,
            m_to,
        } => {
            check_range("n", *n, 1, N_MAX)?;
            check_range("degree", *degree as i64, 0, 12)?;
            check_range("max-period", *max_period as i64, 1, 1_000)?;
            let last = m_to.unwrap_or(default_sample_count(*degree, *max_period) - 1);
            check_range("m-to", last, 0, M_MAX)?;
            let req = FitRequest::from_fn(last + 1, *degree, *max_period, |m| {
                Rational::from(hsum(*n, m))
            });
            let q = match fit(&req) {
                Ok(q) => q,
                Err(e @ Error::NoPeriodFits { .. }) => return Err(CliError::Verify(e.to_string())),
                Err(e) => return Err(CliError::Invalid(e.to_string())),
            };
            let report = coefficient_report(&q);
            let mut header = vec!["residue"];
            let names = [
                "c0", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9", "c10", "c11", "c12",
            ];
            header.extend(&names[..=q.degree()]);
            Output {
                json: json!({"n": n, "period": q.period(), "branches": q.branches(), "coefficients": report.degrees}),
                header,
                rows: q
                    .branches()
                    .iter()
                    .enumerate()
                    .map(|(r, b)| std::iter::once(s(r)).chain(b.iter().map(s)).collect())
                    .collect(),
                verified: true,
            }
        }
        Command::IntegralCheck(a) => {
            check_nm(a)?;
            let r = integral_vs_sum_check(a.n, a.m);
            let row = vec![s(r.n), s(r.m), s(r.hsum), s(&r.integral), s(&r.residual)];
            Output::single(
                serde_json::to_value(&r).expect("record serializes"),
                vec!["n", "m", "hsum", "integral", "residual"],
                row,
            )
        }
        Command::Bigness { config } => {
            let cfg =
                SurfaceConfig::from_path(config).map_err(|e| CliError::Invalid(e.to_string()))?;
            let v = evaluate_criterion(&cfg);
            let row = vec![
                v.name.clone(),
                s(&v.local),
                s(&v.s2_over_6),
                s(&v.t),
                v.verdict.clone(),
            ];
            Output::single(
                serde_json::to_value(&v).expect("verdict serializes"),
                vec!["name", "local", "s2_over_6", "t", "verdict"],
                row,
            )
        }
        Command::Limits(a) => {
            check_range("n", a.n, 2, N_MAX_CLOSED)?;
            let rep = h1_omega_limit_report(a.n);
            let h0 = h0_omega_sequence(a.n);
            let h0_increasing = h0.windows(2).all(|w| w[0] < w[1]);
            let limit = crate::asymptotics::h0_omega_limit();
            let bounded = h0.iter().all(|v| v.to_f64() < limit);
            let mut out = Output {
                json: json!({
                    "n_max": a.n,
                    "h0_omega_increasing": h0_increasing,
                    "h0_omega_bounded": bounded,
                    "h0_omega_last": rep.h0_omega_last,
                    "h0_omega_limit": limit,
                    "h1_omega_increasing": rep.strictly_increasing,
                    "h1_omega_growth": rep.normalized_growth,
                }),
                header: vec!["n", "h0_omega", "h1_omega"],
                rows: h0
                    .iter()
                    .zip(&rep.values)
                    .zip(1..)
                    .map(|((a, b), n)| vec![s(n), s(a), s(b)])
                    .collect(),
                verified: true,
            };
            out.verified = h0_increasing && bounded && rep.strictly_increasing;
            out
        }
    })
}

fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}

fn timestamp() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                CliError::Verify(_) => EXIT_VERIFY,
                CliError::Core(Error::NotRational(_)) => EXIT_VERIFY,
                _ => EXIT_INVALID,
            };
        }
    };
    let written = if cli.csv {
        write_csv(out, &result.header, &result.rows)
    } else {
        let mut doc = result.json;
        if !cli.no_timestamp {
            if let Value::Object(map) = &mut doc {
                map.insert("timestamp".into(), json!(timestamp()));
            }
        }
        serde_json::to_writer(&mut *out, &doc)
            .map_err(std::io::Error::other)
            .and_then(|_| writeln!(out))
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_INVALID;
    }
    if result.verified {
        EXIT_OK
    } else {
        let _ = writeln!(err, "verification failed");
        EXIT_VERIFY
    }
}
