//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Failures listed in `KNOWN` are still printed as FAIL but do not change the
//! exit status; any other failure makes the run exit with status 1.

#[path = "../../core/tests/support/oracle.rs"]
#[allow(dead_code, unused_imports)]
mod oracle;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use lerch_cli::commands;
use lerch_cli::verify::{self, Suite, VerifyOptions, PAIRS};
use lerch_cli::TABLE_LAMBDAS;
use lerch_core::lerch::lerch_rational;
use lerch_core::symmetry::{
    classify_zeros, counterpart_test, theorem1_sum, twin_disc_report, ClassifyOptions,
    SymmetryReport, ZeroClass, ZeroClassification,
};
use lerch_core::zeros::{scan_window, scan_zeros, Evaluator, ScanConfig, ZeroRecord};
use lerch_core::{HpComplex, LerchParams, PrecisionPolicy, RationalParam, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

const T: f64 = 300.0;
const DIGITS: u32 = 30;

/// (criterion, item) pairs that fail for reasons recorded with the project
/// notes: the listed value and the computed one differ beyond rounding.
const KNOWN: [(u32, &str); 2] = [(1, "1/3,1/3 #3"), (2, "6/7")];

struct Outcome {
    id: u32,
    title: &'static str,
    failed_items: Vec<String>,
    detail: String,
    secs: f64,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.failed_items.is_empty()
    }

    fn unexpected(&self) -> bool {
        let known = |item: &str| {
            KNOWN.iter().any(|&(id, k)| {
                id == self.id && item.strip_prefix(k).is_some_and(|r| r.starts_with(' '))
            })
        };
        self.failed_items.iter().any(|item| !known(item))
    }

    fn print(&self) {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} [{}] {}: {} ({:.1}s)",
            self.id, self.title, self.detail, self.secs
        );
        if !self.passed() {
            line.push_str(&format!(" failed: {}", self.failed_items.join("; ")));
            if !self.unexpected() {
                line.push_str(" [known discrepancy]");
            }
        }
        println!("{line}");
    }
}

fn run(
    id: u32,
    title: &'static str,
    body: impl FnOnce() -> Result<(Vec<String>, String)>,
) -> Outcome {
    let start = Instant::now();
    let (failed_items, detail) = match body() {
        Ok(v) => v,
        Err(e) => (vec![format!("error: {e}")], String::new()),
    };
    let out = Outcome {
        id,
        title,
        failed_items,
        detail,
        secs: start.elapsed().as_secs_f64(),
    };
    out.print();
    out
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

fn trunc2(x: f64) -> f64 {
    (x * 100.0).floor() / 100.0
}

fn policy() -> PrecisionPolicy {
    PrecisionPolicy::digits(DIGITS).expect("30 digits")
}

fn param(text: &str) -> RationalParam {
    text.parse().expect("rational")
}

struct Row {
    lambda: RationalParam,
    zeros: Vec<ZeroRecord>,
    classes: Vec<ZeroClassification>,
    report: SymmetryReport,
    /// Argument count of the scanned strip.
    counted: i64,
}

fn scan_row(lambda: RationalParam) -> Result<Row> {
    let scan = ScanConfig::new(0.0, T).with_policy(policy());
    let out = scan_window(&LerchParams::equal(lambda), &scan)?;
    let (classes, report) = classify_zeros(lambda, T, &out.zeros, ClassifyOptions::default());
    Ok(Row {
        lambda,
        zeros: out.zeros,
        classes,
        report,
        counted: out.window.count,
    })
}

/// λ, α, scan height and the first four `(β, γ)`.
type Listed = (&'static str, &'static str, f64, [(f64, f64); 4]);

fn first_zeros() -> Result<(Vec<String>, String)> {
    let listed: [Listed; 4] = [
        (
            "1/3",
            "1/3",
            16.0,
            [(0.50, 3.99), (0.50, 7.28), (0.50, 9.54), (0.50, 12.18)],
        ),
        (
            "1/3",
            "2/3",
            16.0,
            [(0.86, 5.68), (0.53, 9.59), (0.86, 12.66), (0.49, 15.11)],
        ),
        (
            "3/4",
            "3/4",
            24.0,
            [(0.50, 9.69), (0.50, 15.26), (0.50, 18.65), (0.50, 23.05)],
        ),
        (
            "1/4",
            "3/4",
            15.0,
            [(1.03, 5.24), (0.64, 8.81), (0.76, 11.96), (0.88, 14.19)],
        ),
    ];
    let mut failed = Vec::new();
    let mut matched = 0;
    for (lambda, alpha, t_max, values) in listed {
        let zeros = scan_zeros(
            &LerchParams::parse(lambda, alpha)?,
            &ScanConfig::new(0.0, t_max).with_policy(policy()),
        )?;
        for (i, (b, g)) in values.into_iter().enumerate() {
            let item = format!("{lambda},{alpha} #{}", i + 1);
            match zeros.get(i) {
                Some(z) if (round2(z.beta_f64()), round2(z.gamma_f64())) == (b, g) => matched += 1,
                Some(z) => failed.push(format!(
                    "{item} {:.4}+{:.4}i vs {b:.2}+{g:.2}i",
                    z.beta_f64(),
                    z.gamma_f64()
                )),
                None => failed.push(format!("{item} missing")),
            }
        }
    }
    Ok((failed, format!("{matched}/16 values match to 2 decimals")))
}

fn table(rows: &[Result<Row>]) -> Result<(Vec<String>, String)> {
    let listed: BTreeMap<&str, (usize, usize)> = [
        ("1/2", (203, 0)),
        ("5/9", (193, 28)),
        ("4/7", (191, 24)),
        ("3/5", (186, 14)),
        ("5/8", (182, 22)),
        ("2/3", (176, 18)),
        ("7/10", (171, 28)),
        ("5/7", (169, 30)),
        ("3/4", (165, 20)),
        ("7/9", (161, 26)),
        ("4/5", (159, 22)),
        ("5/6", (155, 22)),
        ("6/7", (151, 28)),
        ("7/8", (150, 30)),
        ("8/9", (149, 22)),
        ("9/10", (147, 24)),
    ]
    .into_iter()
    .collect();
    let mut failed = Vec::new();
    let mut matched = 0;
    for (name, row) in TABLE_LAMBDAS.iter().zip(rows) {
        let expected = listed[name];
        match row {
            Ok(r) if (r.report.n1, r.report.n2) == expected => matched += 1,
            Ok(r) => failed.push(format!(
                "{name} {}/{} vs {}/{}",
                r.report.n1, r.report.n2, expected.0, expected.1
            )),
            Err(e) => failed.push(format!("{name} error: {e}")),
        }
    }
    Ok((failed, format!("{matched}/16 rows match N1 and N2 exactly")))
}

fn deep() -> Result<(Vec<String>, String)> {
    let listed = [7.16e-14, -6.08e-23, -4.53e-27, -1.11e-32];
    let params = LerchParams::parse("3/4", "3/4")?;
    let two_sig = |x: f64| {
        let e = x.abs().log10().floor();
        let m = x / 10f64.powf(e);
        ((m * 10.0).round() / 10.0, e as i32)
    };
    let mut failed = Vec::new();
    let mut worst = 0f64;
    for (i, expected) in listed.into_iter().enumerate() {
        let out = commands::deep(&params, i + 1, 60)?;
        worst = worst.max(out.report.agreement);
        let m = out.report.muller_deviation().to_f64();
        let c = out.report.contour_deviation().to_f64();
        for (method, v) in [("muller", m), ("contour", c)] {
            if two_sig(v) != two_sig(expected) {
                failed.push(format!("#{} {method} {v:.3e} vs {expected:.2e}", i + 1));
            }
        }
        if out.report.agreement >= 1e-30 {
            failed.push(format!("#{} agreement {:e}", i + 1, out.report.agreement));
        }
    }
    Ok((
        failed,
        format!("4 zeros, both methods, max disagreement {worst:.1e}"),
    ))
}

fn counterparts(row: &Row) -> Result<(Vec<String>, String)> {
    let p = policy();
    let mut failed = Vec::new();
    let nontrivial: Vec<usize> = row
        .classes
        .iter()
        .filter(|c| c.klass != ZeroClass::Trivial)
        .map(|c| c.zero_index)
        .collect();
    let mut firsts = Vec::new();
    for (&i, listed) in nontrivial.iter().zip([2.73, 0.13, 0.48, 1.15]) {
        let v = counterpart_test(row.lambda, &row.zeros[i], &p)?.counterpart_abs;
        firsts.push(format!("{v:.4}"));
        if trunc2(v) != listed {
            failed.push(format!("rho{} {v:.4} vs {listed}", firsts.len()));
        }
    }
    let mut pair: Vec<(f64, f64)> = row
        .classes
        .iter()
        .filter(|c| c.klass == ZeroClass::OffLine)
        .map(|c| &row.zeros[c.zero_index])
        .filter(|z| (z.gamma_f64() - 120.59).abs() < 0.05)
        .map(|z| {
            Ok((
                z.beta_f64(),
                counterpart_test(row.lambda, z, &p)?.counterpart_abs,
            ))
        })
        .collect::<Result<_>>()?;
    pair.sort_by(|a, b| b.0.total_cmp(&a.0));
    let got: Vec<f64> = pair.iter().map(|v| trunc2(v.1)).collect();
    if got != [3.94, 23.49] {
        failed.push(format!("pair near 120.59 gives {got:?}"));
    }
    Ok((
        failed,
        format!(
            "first four [{}], pair [{}]",
            firsts.join(", "),
            pair.iter()
                .map(|v| format!("{:.4}", v.1))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    ))
}

fn identities() -> Result<(Vec<String>, String)> {
    let mut failed = Vec::new();
    let mut parts = Vec::new();
    for (suite, samples) in [
        (Suite::Funceq, 100),
        (Suite::Conjugation, 100),
        (Suite::SpecialCases, 20),
    ] {
        let r = verify::run(
            suite,
            &VerifyOptions {
                samples,
                seed: 1,
                digits: DIGITS,
                ..VerifyOptions::default()
            },
        )?;
        parts.push(format!("{} {:.1e}", suite.name(), r.max_residual));
        if !r.passed {
            failed.push(r.to_string());
        }
    }
    let tol = 10f64.powi(10 - DIGITS as i32);
    Ok((
        failed,
        format!("{} (tolerance {tol:e}, {PAIRS} pairs)", parts.join(", ")),
    ))
}

/// `(T/2π) log(T/(2πeαλ))`.
fn counting_main_term(lambda: f64, alpha: f64) -> f64 {
    T / (2.0 * PI) * (T / (2.0 * PI * std::f64::consts::E * alpha * lambda)).ln()
}

fn counting(rows: &[Result<Row>]) -> Result<(Vec<String>, String)> {
    let window = 8.0 * T.ln();
    let mut failed = Vec::new();
    let mut worst = 0f64;
    for (name, row) in TABLE_LAMBDAS.iter().zip(rows) {
        let Ok(r) = row else {
            failed.push(format!("{name} has no scan"));
            continue;
        };
        let trivial = r.report.trivial as i64;
        let n = r.counted - trivial;
        if n != r.report.n1 as i64 {
            failed.push(format!(
                "{name} argument count {n} differs from {} refined zeros",
                r.report.n1
            ));
        }
        let l = r.lambda.to_f64();
        let dev = n as f64 - counting_main_term(l, l);
        worst = worst.max(dev.abs());
        if dev.abs() > window {
            failed.push(format!("{name} deviation {dev:.2}"));
        }
    }
    Ok((
        failed,
        format!("max |N - main term| {worst:.2} within {window:.2}"),
    ))
}

fn average(rows: &[Result<Row>]) -> Result<(Vec<String>, String)> {
    let mut failed = Vec::new();
    let mut parts = Vec::new();
    for name in ["1/2", "2/3", "3/4", "7/8"] {
        let i = TABLE_LAMBDAS
            .iter()
            .position(|l| *l == name)
            .expect("table row");
        let Ok(r) = &rows[i] else {
            failed.push(format!("{name} has no scan"));
            continue;
        };
        let s = theorem1_sum(&LerchParams::equal(r.lambda), &r.zeros, T)?;
        parts.push(format!("{name} {:.2e}", s.deviation));
        if !s.within() {
            failed.push(format!("{name} sum {:e}", s.computed_sum));
        }
    }
    let params = LerchParams::parse("1/3", "2/3")?;
    let zeros = scan_zeros(&params, &ScanConfig::new(0.0, T).with_policy(policy()))?;
    let s = theorem1_sum(&params, &zeros, T)?;
    let main = T / (4.0 * PI) * 2f64.ln();
    let dev = s.computed_sum - main;
    parts.push(format!("1/3,2/3 {dev:.3}"));
    if dev.abs() > 8.0 * T.ln() {
        failed.push(format!("1/3,2/3 sum {:.4} vs {main:.4}", s.computed_sum));
    }
    Ok((
        failed,
        format!("deviations {} within {:.2}", parts.join(", "), 8.0 * T.ln()),
    ))
}

fn twins(row: &Row) -> Result<(Vec<String>, String)> {
    let eval = Evaluator::new(&LerchParams::equal(row.lambda), policy())?;
    let report = twin_disc_report(&eval, &row.zeros, &row.classes, 0.05, None);
    let mut failed = Vec::new();
    for t in &report {
        match &t.result {
            Ok(a) if a.counts_equal() => {}
            Ok(a) => failed.push(format!(
                "gamma {:.2}: {} vs {}",
                a.center.gamma_f64(),
                a.count_right,
                a.count_left
            )),
            Err(e) => failed.push(format!("zero {}: {e}", t.zero_index)),
        }
    }
    if report.len() != row.report.n2 || report.is_empty() {
        failed.push(format!(
            "{} discs for {} off-line zeros",
            report.len(),
            row.report.n2
        ));
    }
    Ok((
        failed,
        format!("{} off-line zeros, equal twin counts", report.len()),
    ))
}

fn oracle_equivalence() -> Result<(Vec<String>, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let policy = PrecisionPolicy::digits(40)?;
    let rational = |rng: &mut ChaCha8Rng| loop {
        let d = rng.gen_range(1..=12u64);
        let n = rng.gen_range(1..=d);
        if RationalParam::new(n, d).is_ok() {
            return (n, d);
        }
    };
    let mut failed = Vec::new();
    let mut worst = 0f64;
    for _ in 0..10 {
        let (lambda, alpha) = (rational(&mut rng), rational(&mut rng));
        let params = LerchParams::rational(
            RationalParam::new(lambda.0, lambda.1)?,
            RationalParam::new(alpha.0, alpha.1)?,
        );
        let series = oracle::Series { lambda, alpha };
        for _ in 0..100 {
            let (sigma, t) = (rng.gen_range(1.2..4.0), rng.gen_range(-40.0..40.0));
            let v = lerch_rational(
                &params,
                &HpComplex::from_f64(policy.bits(), sigma, t),
                &policy,
            )?;
            let r = series.eval(sigma, t, 200, 1e-40);
            let err = Float::with_val(200, v.re() - &r.re)
                .hypot(&Float::with_val(200, v.im() - &r.im))
                .to_f64();
            worst = worst.max(err);
            if err >= 1e-30 {
                failed.push(format!(
                    "L({lambda:?}, {alpha:?}, {sigma}+{t}i) off by {err:e}"
                ));
            }
        }
    }
    Ok((failed, format!("1000 points, max error {worst:.1e}")))
}

fn main() {
    let start = Instant::now();
    let mut all = vec![run(1, "first zeros", first_zeros)];

    let mut rows: Vec<Result<Row>> = Vec::new();
    all.push(run(2, "distribution table", || {
        rows = TABLE_LAMBDAS.iter().map(|l| scan_row(param(l))).collect();
        table(&rows)
    }));

    let three_quarters = TABLE_LAMBDAS
        .iter()
        .position(|l| *l == "3/4")
        .expect("table row");
    all.push(run(3, "deep deviations", deep));
    all.push(run(4, "counterpart values", || {
        match &rows[three_quarters] {
            Ok(r) => counterparts(r),
            Err(e) => Ok((vec![format!("no scan: {e}")], String::new())),
        }
    }));
    all.push(run(5, "identity suites", identities));
    all.push(run(6, "counting formula", || counting(&rows)));
    all.push(run(7, "average deviation", || average(&rows)));
    all.push(run(8, "twin discs", || match &rows[three_quarters] {
        Ok(r) => twins(r),
        Err(e) => Ok((vec![format!("no scan: {e}")], String::new())),
    }));
    all.push(run(9, "oracle equivalence", oracle_equivalence));

    let passed = all.iter().filter(|o| o.passed()).count();
    let unexpected = all.iter().filter(|o| o.unexpected()).count();
    println!(
        "acceptance: {passed}/{} criteria pass, {} known discrepancies, {unexpected} unexpected failures ({:.0}s)",
        all.len(),
        all.len() - passed - unexpected,
        start.elapsed().as_secs_f64()
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
