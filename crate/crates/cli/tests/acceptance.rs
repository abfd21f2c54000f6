//! Acceptance gate: one line per criterion, non-zero exit if any fails.
//!
//! Grid: plus family m ∈ {1,2,3}, minus family m ∈ {3,4,5}; i ≤ 12;
//! j ∈ [−10⁴, 10⁴]; frequency at n = 10⁵ for i ≤ 10 with tolerance 10⁻³.

use std::process::{Command, ExitCode};

use beatty_cli::verify::{Suite, SuiteReport, Verifier, VerifyConfig, FREQ_TOLERANCE, POWER_MAX_I, SIGMA_B_RANGE};
use beatty_core::beatty::brute_force_mismatches;
use beatty_core::{BigInt, Family, GFib, QuadraticUnit};

const MAX_I: usize = 12;
const WINDOW: i64 = 10_000;
const FREQ_N: u64 = 100_000;
const FREQ_MAX_I: usize = 10;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    note: String,
}

fn from_report(r: SuiteReport) -> Outcome {
    let mut note = format!("{} checks, {} failures", r.checks, r.failures);
    if let Some(d) = r.details.first() {
        note.push_str(&format!("; first: {d}"));
    }
    Outcome { pass: r.passed(), note }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Outcome { pass: a.pass && b.pass, note: format!("{}; {}", a.note, b.note) }
}

/// The special elements: −G_i of U_i for odd i and the k = 0 element −G_i of
/// V_i must appear in the brute-force list whenever they fall in the window.
fn special_elements_present() -> Outcome {
    let mut checked = 0;
    let mut missing = Vec::new();
    let units = [1, 2, 3]
        .map(|m| QuadraticUnit::new(Family::Plus, m).unwrap())
        .into_iter()
        .chain([3, 4, 5].map(|m| QuadraticUnit::new(Family::Minus, m).unwrap()));
    for u in units {
        let g = GFib::build(u, MAX_I + 1).unwrap();
        for i in 1..=MAX_I {
            if u.family() == Family::Plus && i % 2 == 0 {
                continue;
            }
            let target = -g.get(i).unwrap().clone();
            if target < BigInt::from(-WINDOW) {
                continue;
            }
            let lo: i64 = (&target).try_into().unwrap();
            let found = brute_force_mismatches(&g, i, lo, lo).unwrap();
            checked += 1;
            if found.len() != 1 {
                missing.push(format!("{u} i={i}"));
            }
        }
    }
    Outcome { pass: missing.is_empty() && checked > 0, note: format!("{checked} special elements, missing {missing:?}") }
}

fn negative_control() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_beatty"))
        .args(["verify", "--suite", "criterion", "--inject-fault", "17"])
        .output()
        .expect("binary runs");
    let report = String::from_utf8_lossy(&out.stdout);
    let code = out.status.code();
    let failed_line = report.lines().any(|l| l.starts_with("FAIL criterion"));
    Outcome { pass: code == Some(2) && failed_line, note: format!("exit {code:?}, criterion suite failed: {failed_line}") }
}

fn main() -> ExitCode {
    assert_eq!(FREQ_TOLERANCE, 1e-3);
    assert_eq!(POWER_MAX_I, 60);
    assert_eq!(SIGMA_B_RANGE, 1000);
    let v = Verifier::new(VerifyConfig { max_i: MAX_I, window: WINDOW, n: FREQ_N, freq_max_i: FREQ_MAX_I, fault: None });

    let criteria: Vec<Criterion> = vec![
        ("1 range law", Box::new(|| from_report(v.run(Suite::Range)))),
        ("2 criterion equivalence", Box::new(|| from_report(v.run(Suite::Criterion)))),
        (
            "3 set equivalence",
            Box::new(|| both(from_report(v.run(Suite::Sets)), special_elements_present())),
        ),
        ("4 frequency", Box::new(|| from_report(v.run(Suite::Frequency)))),
        ("5 power identities", Box::new(|| from_report(v.run(Suite::Powers)))),
        ("6 unit-interval formula", Box::new(|| from_report(v.run(Suite::UnitInterval)))),
        ("7 sigma identities", Box::new(|| from_report(v.run(Suite::Sigma)))),
        ("8 sigma bridge to U_i", Box::new(|| from_report(v.run(Suite::Bridge)))),
        ("9 golden-ratio regression", Box::new(|| from_report(v.run(Suite::Golden)))),
        ("10 negative control", Box::new(negative_control)),
    ];

    let mut all = true;
    for (name, run) in criteria {
        let o = run();
        all &= o.pass;
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.note);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
