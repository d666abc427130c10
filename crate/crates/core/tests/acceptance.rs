//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.
//! Each criterion has a wall-clock budget; exceeding it is a failure.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use symdiff::asymptotics::{
    h0_omega, h0_omega_f64, h0_omega_limit, h0_omega_sequence, integral_sweep,
};
use symdiff::bigness::{evaluate_criterion, SurfaceConfig, VERDICT_BIG, VERDICT_INCONCLUSIVE};
use symdiff::exactmath::ceil_div;
use symdiff::exactmath::QuasiPolynomial;
use symdiff::extension::{divisor_d, divisor_d_bruteforce, extends_holomorphically};
use symdiff::invariants::{h1, h1_omega, mu};
use symdiff::latticesum::{admissible_triples, hsum, weight, LatticePoint, Polygon};
use symdiff::oracle::oracle_report;
use symdiff::quasifit::{coefficient_report, default_sample_count, fit, FitRequest};
use symdiff::Rational;

/// Criterion 8: distance of `h0_omega(10^4)` from its limit.
const LIMIT_TOLERANCE: f64 = 1e-3;
/// Criterion 6: the O(m) constant is fit on `1..=FIT_M_MAX`.
const FIT_M_MAX: i64 = 12;
/// Criterion 6: residuals are checked on `1..=CHECK_M_MAX`.
const CHECK_M_MAX: i64 = 60;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// The six branches of `h0(A_2, m)`, constant term first.
fn example_one() -> QuasiPolynomial {
    let tails = [
        (q(1, 12), q(0, 1)),
        (q(1, 8), q(-143, 216)),
        (q(7, 36), q(-2, 27)),
        (q(1, 8), q(3, 8)),
        (q(1, 12), q(-10, 27)),
        (q(17, 72), q(-7, 216)),
    ];
    let branches = tails
        .iter()
        .map(|(lin, c)| vec![c.clone(), lin.clone(), q(29, 72), q(29, 216)])
        .collect();
    QuasiPolynomial::new(branches).unwrap()
}

fn table_one() -> Result<String, String> {
    let table = [
        (1, 4, 27),
        (2, 67, 216),
        (3, 1283, 2700),
        (4, 577, 900),
        (5, 106819, 132300),
        (6, 1030727, 1058400),
        (7, 5431459, 4762800),
    ];
    for (n, a, b) in table {
        ensure(
            h1_omega(n) == q(a, b),
            format!("h1_omega({n}) = {}", h1_omega(n)),
        )?;
    }
    Ok("h1_omega(1..=7) matches the table".into())
}

fn example_one_values() -> Result<String, String> {
    let qp = example_one();
    for m in 0..=60 {
        let h = hsum(2, m);
        ensure(
            qp.eval(m) == h,
            format!("m = {m}: hsum {h}, branch {}", qp.eval(m)),
        )?;
    }
    Ok("hsum(2, 0..=60) equals the six-branch quasi-polynomial".into())
}

fn oracle_equivalence() -> Result<String, String> {
    let mut blocks = 0;
    for n in 1..=5 {
        for m in 0..=12 {
            let rep = oracle_report(n, m).map_err(|e| e.to_string())?;
            ensure(
                rep.oracle == hsum(n, m),
                format!("n={n} m={m}: oracle {} vs {}", rep.oracle, hsum(n, m)),
            )?;
            ensure(
                rep.non_general.is_empty(),
                format!("n={n} m={m}: {:?} not general", rep.non_general),
            )?;
            blocks += rep.blocks;
        }
    }
    Ok(format!(
        "n<=5, m<=12 agree; {blocks} blocks in general position"
    ))
}

fn integrality() -> Result<String, String> {
    for n in 1..=8 {
        for m in 0..=40 {
            let v = h1(n, m).map_err(|e| e.to_string())?;
            ensure(
                v.is_integer() && !v.is_negative(),
                format!("h1({n}, {m}) = {v}"),
            )?;
        }
    }
    Ok("h1(n, m) in Z>=0 for n<=8, m<=40".into())
}

fn quasi_fit() -> Result<String, String> {
    let a1 = fit(&FitRequest::from_fn(73, 3, 12, |m| {
        Rational::from(hsum(1, m))
    }))
    .map_err(|e| e.to_string())?;
    ensure(a1.period() == 6, format!("A_1 period {}", a1.period()))?;
    let rep = coefficient_report(&a1);
    ensure(rep.degrees[0].values == vec![q(11, 108)], "A_1 cubic")?;
    ensure(rep.degrees[1].values == vec![q(11, 36)], "A_1 quadratic")?;
    let a2 = fit(&FitRequest::from_fn(73, 3, 12, |m| {
        Rational::from(hsum(2, m))
    }))
    .map_err(|e| e.to_string())?;
    ensure(a2 == example_one(), "A_2 branches differ from the example")?;
    Ok("A_1 and A_2 fit with period 6, A_2 branches verbatim".into())
}

fn cubic_residual() -> Result<String, String> {
    let mut notes = Vec::new();
    for n in 1..=4 {
        let omega = h0_omega(n);
        let ratio = |m: i64| {
            let res = Rational::from(hsum(n, m)) - &omega * (m * m * m + 3 * m * m);
            res.abs() / m
        };
        let c = (1..=FIT_M_MAX).map(ratio).max().unwrap();
        for m in 1..=CHECK_M_MAX {
            ensure(
                ratio(m) <= c,
                format!("n={n} m={m}: |res|/m = {} > {c}", ratio(m)),
            )?;
        }
        notes.push(format!("C({n})={:.4}", c.to_f64()));
    }
    Ok(format!(
        "|residual| <= C m up to m={CHECK_M_MAX}; {}",
        notes.join(" ")
    ))
}

fn integral_vs_sum() -> Result<String, String> {
    let mut notes = Vec::new();
    for n in 1..=3 {
        let sw = integral_sweep(n, &[6, 12], &[24, 48]);
        ensure(
            sw.holds,
            format!("n={n}: C = {} violated: {:?}", sw.constant, sw.records),
        )?;
        notes.push(format!("C({n})={:.4}", sw.constant.to_f64()));
    }
    Ok(format!(
        "|hsum - U| <= C m at m in {{24, 48}}; {}",
        notes.join(" ")
    ))
}

fn limits() -> Result<String, String> {
    let vals = h0_omega_sequence(200);
    ensure(
        vals.windows(2).all(|w| w[0] < w[1]),
        "h0_omega not increasing",
    )?;
    let gap = (h0_omega_f64(10_000) - h0_omega_limit()).abs();
    ensure(gap < LIMIT_TOLERANCE, format!("gap {gap}"))?;
    Ok(format!(
        "increasing to n=200; |h0_omega(1e4) - limit| = {gap:.2e}"
    ))
}

fn divisor() -> Result<String, String> {
    for n in 1..=6 {
        for m in 0..=20 {
            let b =
                divisor_d_bruteforce(n, m, (n + 1) * m + 2 * (n + 1)).map_err(|e| e.to_string())?;
            ensure(b == divisor_d(n, m), format!("n={n} m={m}"))?;
        }
    }
    for n in 1..=20 {
        for m in 0..=50 {
            let a = divisor_d(n, m).coefficients;
            ensure(
                a.iter().all(|&x| x >= 0),
                format!("negative a_r at n={n} m={m}"),
            )?;
            ensure(
                a.iter().eq(a.iter().rev()),
                format!("asymmetric at n={n} m={m}"),
            )?;
        }
    }
    for n in 1..=10 {
        for m in 0..=30 {
            let a = divisor_d(n, m).coefficients;
            for r in 1..=n {
                let big_r = if r <= (n + 1) / 2 { r } else { n + 1 - r };
                let case: i64 = (1..=big_r).map(|j| ceil_div(m + 2 - 2 * j, n + 1)).sum();
                ensure(
                    a[(r - 1) as usize] == case,
                    format!("case formula n={n} m={m} r={r}"),
                )?;
            }
        }
    }
    Ok("brute force, symmetry, sign and case formula agree".into())
}

fn extension() -> Result<String, String> {
    let mut checked = 0;
    for n in 1..=6 {
        for m in 0..=15 {
            let poly = Polygon::new(n, m);
            for p in poly.lattice_points().filter(|p| p.x1 >= n * m) {
                ensure(
                    weight(n, m, p) == 0,
                    format!("weight at {p:?} for n={n} m={m}"),
                )?;
            }
            for t in admissible_triples(n, m, (n + 1) * m + n).filter(|t| t.i >= n * m) {
                ensure(
                    extends_holomorphically(&t) == Ok(true),
                    format!("{t:?} does not extend"),
                )?;
                checked += 1;
            }
            ensure(
                weight(n, m, LatticePoint::new(n * m, 0)) == 0,
                "corner weight",
            )?;
        }
    }
    Ok(format!(
        "zero weight past nm; {checked} triples with i >= nm extend"
    ))
}

fn mu_checks() -> Result<String, String> {
    for n in 1..=30 {
        for m in 0..=30 {
            mu(n, m).map_err(|e| format!("n={n} m={m}: {e}"))?;
        }
    }
    // Quasi-linearity is reported, not asserted.
    let mut periods = Vec::new();
    for n in 1..=10 {
        let max_period = 2 * (n as usize + 1);
        let req = FitRequest::from_fn(default_sample_count(1, max_period), 1, max_period, |m| {
            mu(n, m).expect("rational")
        });
        match fit(&req) {
            Ok(qp) => periods.push(format!("{n}:{}", qp.period())),
            Err(e) => periods.push(format!("{n}:none ({e})")),
        }
    }
    Ok(format!(
        "mu rational for n,m<=30; periods {}",
        periods.join(" ")
    ))
}

fn bigness() -> Result<String, String> {
    let cases = [
        (r#"{"s2": 1}"#, q(1, 6), VERDICT_BIG),
        (
            r#"{"s2": "-4/5", "singularities": [{"n": 1, "count": 6}]}"#,
            q(34, 45),
            VERDICT_BIG,
        ),
    ];
    for (text, t, verdict) in cases {
        let v = evaluate_criterion(&SurfaceConfig::from_json(text).map_err(|e| e.to_string())?);
        ensure(
            v.t == t && v.verdict == verdict,
            format!("{text}: T = {}", v.t),
        )?;
    }
    let v = evaluate_criterion(
        &SurfaceConfig::from_json(r#"{"s2": -100, "singularities": [{"n": 2, "count": 1}]}"#)
            .unwrap(),
    );
    ensure(
        v.t.is_negative() && v.verdict == VERDICT_INCONCLUSIVE,
        "negative case",
    )?;
    Ok("T = 1/6, 34/45 (big) and negative (inconclusive)".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Check, Duration); 12] = [
        (1, "table of h1_omega", table_one, Duration::from_secs(1)),
        (
            2,
            "example quasi-polynomial",
            example_one_values,
            Duration::from_secs(30),
        ),
        (
            3,
            "oracle equivalence",
            oracle_equivalence,
            Duration::from_secs(300),
        ),
        (4, "h1 integrality", integrality, Duration::from_secs(600)),
        (
            5,
            "quasi-polynomial fit",
            quasi_fit,
            Duration::from_secs(120),
        ),
        (
            6,
            "cubic asymptotics",
            cubic_residual,
            Duration::from_secs(300),
        ),
        (
            7,
            "integral versus sum",
            integral_vs_sum,
            Duration::from_secs(120),
        ),
        (8, "limits", limits, Duration::from_secs(60)),
        (9, "divisor D", divisor, Duration::from_secs(120)),
        (
            10,
            "extension criterion",
            extension,
            Duration::from_secs(60),
        ),
        (11, "mu rationality", mu_checks, Duration::from_secs(120)),
        (12, "bigness evaluator", bigness, Duration::from_secs(1)),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => {
                Err(format!("{msg}; took {elapsed:.1?}, budget {budget:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {id:>2} ({name}) [{elapsed:.2?}]: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {id:>2} ({name}) [{elapsed:.2?}]: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
