//! Oracle-versus-closed-form verification suites.
//!
//! Every suite sweeps the same grid of units: plus family `m ∈ {1, 2, 3}` and
//! minus family `m ∈ {3, 4, 5}`. All comparisons are exact except the
//! frequency suite, which checks `|count/(2n+1) − β^i| ≤ FREQ_TOLERANCE`.

use std::collections::BTreeSet;
use std::fmt;

use beatty_core::beatty::{
    brute_force_mismatches, epsilon, k_window, mismatch_set, mismatch_sign, MismatchTest, ScanSummary,
};
use beatty_core::cutproject::{scale_by_conjugate, sigma_points, translate, unit_interval_points, unscale_by_conjugate};
use beatty_core::{BigInt, Family, GFib, LatticePoint, QuadraticUnit, Window, ZBeta};
use rayon::prelude::*;

pub const FREQ_TOLERANCE: f64 = 1e-3;
pub const POWER_MAX_I: usize = 60;
pub const SIGMA_B_RANGE: i64 = 1000;
pub const GOLDEN_MAX_I: usize = 8;
const MAX_DETAILS: usize = 5;

pub const PLUS_MS: [u64; 3] = [1, 2, 3];
pub const MINUS_MS: [u64; 3] = [3, 4, 5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Range,
    Criterion,
    Sets,
    Frequency,
    Powers,
    UnitInterval,
    Sigma,
    Bridge,
    Golden,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Range,
        Suite::Criterion,
        Suite::Sets,
        Suite::Frequency,
        Suite::Powers,
        Suite::UnitInterval,
        Suite::Sigma,
        Suite::Bridge,
        Suite::Golden,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Range => "range",
            Suite::Criterion => "criterion",
            Suite::Sets => "sets",
            Suite::Frequency => "frequency",
            Suite::Powers => "powers",
            Suite::UnitInterval => "unit-interval",
            Suite::Sigma => "sigma",
            Suite::Bridge => "bridge",
            Suite::Golden => "golden",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_i: usize,
    pub window: i64,
    pub n: u64,
    pub freq_max_i: usize,
    /// Adds 1 to the discrepancy oracle at this position.
    pub fault: Option<i64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_i: 12, window: 10_000, n: 100_000, freq_max_i: 10, fault: None }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub checks: u64,
    pub failures: u64,
    pub details: Vec<String>,
}

impl SuiteReport {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.details.len() < MAX_DETAILS {
                self.details.push(detail());
            }
        }
    }

    fn merge(mut self, other: SuiteReport) -> SuiteReport {
        self.checks += other.checks;
        self.failures += other.failures;
        for d in other.details {
            if self.details.len() < MAX_DETAILS {
                self.details.push(d);
            }
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

pub fn grid_units() -> Vec<QuadraticUnit> {
    let plus = PLUS_MS.iter().map(|&m| QuadraticUnit::new(Family::Plus, m));
    let minus = MINUS_MS.iter().map(|&m| QuadraticUnit::new(Family::Minus, m));
    plus.chain(minus).map(|u| u.expect("grid units are admissible")).collect()
}

pub struct Verifier {
    config: VerifyConfig,
    tables: Vec<GFib>,
}

impl Verifier {
    pub fn new(config: VerifyConfig) -> Self {
        let len = (config.max_i.max(config.freq_max_i).max(POWER_MAX_I) + 2).max(8);
        let tables = grid_units().into_iter().map(|u| GFib::build(u, len).expect("nonzero length")).collect();
        Verifier { config, tables }
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.config
    }

    /// The discrepancy oracle, including the injected fault if any.
    fn epsilon(&self, g: &GFib, i: usize, j: i64) -> i8 {
        let e = epsilon(g, i, &j.into()).expect("index within table");
        if self.config.fault == Some(j) {
            e + 1
        } else {
            e
        }
    }

    fn cases(&self, max_i: usize) -> Vec<(&GFib, usize)> {
        self.tables.iter().flat_map(|g| (1..=max_i).map(move |i| (g, i))).collect()
    }

    fn par_cases(&self, max_i: usize, f: impl Fn(&GFib, usize) -> SuiteReport + Sync) -> SuiteReport {
        self.cases(max_i)
            .into_par_iter()
            .map(|(g, i)| f(g, i))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(SuiteReport::default(), SuiteReport::merge)
    }

    pub fn run(&self, suite: Suite) -> SuiteReport {
        match suite {
            Suite::Range => self.range_law(),
            Suite::Criterion => self.criterion(),
            Suite::Sets => self.sets(),
            Suite::Frequency => self.frequency(),
            Suite::Powers => self.powers(),
            Suite::UnitInterval => self.unit_interval(),
            Suite::Sigma => self.sigma(),
            Suite::Bridge => self.bridge(),
            Suite::Golden => self.golden(),
        }
    }

    fn range_law(&self) -> SuiteReport {
        let w = self.config.window;
        self.par_cases(self.config.max_i, |g, i| {
            let mut r = SuiteReport::default();
            let nonzero = mismatch_sign(g.unit().family(), i);
            for j in -w..=w {
                let e = self.epsilon(g, i, j);
                r.check(e == 0 || e == nonzero, || format!("{} i={i} j={j}: ε={e}", g.unit()));
            }
            r
        })
    }

    fn criterion(&self) -> SuiteReport {
        let w = self.config.window;
        self.par_cases(self.config.max_i, |g, i| {
            let mut r = SuiteReport::default();
            let test = MismatchTest::new(g, i).expect("index within table");
            for j in -w..=w {
                let e = self.epsilon(g, i, j);
                let predicted = test.is_mismatch_i64(j);
                r.check(predicted == (e != 0), || {
                    format!("{} i={i} j={j}: criterion says {predicted}, ε={e}", g.unit())
                });
            }
            r
        })
    }

    fn sets(&self) -> SuiteReport {
        let w = self.config.window;
        self.par_cases(self.config.max_i, |g, i| {
            let mut r = SuiteReport::default();
            let brute: Vec<BigInt> =
                brute_force_mismatches(g, i, -w, w).expect("valid range").into_iter().map(|(j, _)| j).collect();
            let closed = closed_form_positions(g, i, w);
            r.check(brute == closed, || {
                format!("{} i={i}: brute force has {} positions, closed form {}", g.unit(), brute.len(), closed.len())
            });
            r
        })
    }

    fn frequency(&self) -> SuiteReport {
        let n = self.config.n;
        self.par_cases(self.config.freq_max_i, |g, i| {
            let mut r = SuiteReport::default();
            let s = frequency_scan_par(g, i, n);
            let dev = (s.frequency_approx() - s.target).abs();
            r.check(dev <= FREQ_TOLERANCE, || {
                format!("{} i={i}: {}/{} deviates from β^i={:.6} by {dev:.2e}", g.unit(), s.mismatch_count, s.window_size(), s.target)
            });
            r
        })
    }

    fn powers(&self) -> SuiteReport {
        let mut r = SuiteReport::default();
        for g in &self.tables {
            let beta = g.unit().beta();
            let mut acc = g.unit().one();
            for i in 1..=POWER_MAX_I {
                acc = acc.try_mul(&beta).expect("same unit");
                let closed = g.beta_pow(i).expect("index within table");
                r.check(closed == acc, || format!("{} i={i}: closed form {closed} vs product {acc}", g.unit()));
                r.check(g.verify_power_identity(i) == Ok(true), || format!("{} i={i}: identity", g.unit()));
            }
        }
        r
    }

    fn unit_interval(&self) -> SuiteReport {
        let mut r = SuiteReport::default();
        for g in &self.tables {
            let u = g.unit();
            let a = sigma_points(&Window::unit_interval(u), -SIGMA_B_RANGE, SIGMA_B_RANGE).expect("valid range");
            let b = unit_interval_points(u, -SIGMA_B_RANGE, SIGMA_B_RANGE).expect("valid range");
            r.check(a == b, || format!("{u}: Σ[0,1) differs from the closed form"));
        }
        r
    }

    fn sigma(&self) -> SuiteReport {
        let mut r = SuiteReport::default();
        let range = 400;
        for g in &self.tables {
            let u = g.unit();
            for w in sample_windows(g) {
                let pts = sigma_points(&w, -range, range).expect("valid range");
                for p in &pts {
                    r.check(w.contains(&p.star(u)) == Ok(true), || format!("{u}: {p:?} outside window"));
                }
                for t in [-3i64, -1, 2] {
                    let t = BigInt::from(t);
                    let shifted = sigma_points(&w.shift(&t), -range, range).expect("valid range");
                    r.check(shifted == translate(&pts, &t), || format!("{u}: translation by {t}"));
                }
                let (lhs, rhs) = scaling_containment(u, &w, range);
                r.check(lhs.0 == 0 && rhs.0 == 0 && lhs.1 + rhs.1 > 0, || {
                    format!("{u}: scaling identity, {} images and {} preimages missing", lhs.0, rhs.0)
                });
            }
        }
        r
    }

    fn bridge(&self) -> SuiteReport {
        let mut r = SuiteReport::default();
        let n = self.config.window;
        for g in self.tables.iter().filter(|g| g.unit().family() == Family::Plus) {
            for i in [2, 4] {
                let w = Window::new(g.unit().zero(), g.beta_pow(i).expect("index")).expect("ordered window");
                let bs: Vec<BigInt> = sigma_points(&w, -n, n).expect("valid range").into_iter().map(|p| p.b).collect();
                let closed = closed_form_positions(g, i, n);
                r.check(bs == closed, || format!("{} i={i}: Σ[0,β^i) b-coordinates differ from U_i", g.unit()));
            }
        }
        r
    }

    fn golden(&self) -> SuiteReport {
        let mut r = SuiteReport::default();
        let g = GFib::build(QuadraticUnit::golden(), GOLDEN_MAX_I + 2).expect("nonzero length");
        let fib = g.values();
        let w = self.config.window;
        for i in 1..=GOLDEN_MAX_I {
            let brute: Vec<BigInt> =
                brute_force_mismatches(&g, i, 1, w).expect("valid range").into_iter().map(|(j, _)| j).collect();
            let mut expect = Vec::new();
            for k in 1i64.. {
                let j = &fib[i + 1] * k + g.unit().floor_mul_i64(k) * &fib[i];
                if j > BigInt::from(w) {
                    break;
                }
                expect.push(j);
            }
            r.check(brute == expect, || format!("i={i}: positive mismatches differ from kF_(i+1)+⌊kτ⌋F_i"));
        }
        r
    }
}

/// Closed-form positions over `k ∈ [−K, K]`, clipped to `[−n, n]`.
pub fn closed_form_positions(g: &GFib, i: usize, n: i64) -> Vec<BigInt> {
    let k = k_window(g, i, n.unsigned_abs()).expect("index within table");
    let (lo, hi) = (BigInt::from(-n), BigInt::from(n));
    mismatch_set(g, i, -k, k)
        .expect("valid range")
        .into_iter()
        .map(|r| r.j)
        .filter(|j| *j >= lo && *j <= hi)
        .collect()
}

/// Frequency scan split into j-chunks; counts are summed, so the result
/// does not depend on the number of workers.
pub fn frequency_scan_par(g: &GFib, i: usize, n: u64) -> ScanSummary {
    const CHUNK: i64 = 8192;
    let test = MismatchTest::new(g, i).expect("index within table");
    let half = i64::try_from(n).expect("window fits in i64");
    let starts: Vec<i64> = (-half..=half).step_by(CHUNK as usize).collect();
    let count = starts.into_par_iter().map(|s| test.count(s, (s + CHUNK - 1).min(half))).sum();
    ScanSummary { i, n, mismatch_count: count, target: beatty_core::beatty::beta_pow_approx(g.unit(), i) }
}

fn sample_windows(g: &GFib) -> Vec<Window> {
    let u = g.unit();
    let z = |a: i64, b: i64| ZBeta::new(u, a, b);
    vec![
        Window::unit_interval(u),
        Window::new(z(0, 0), z(0, 1)).expect("ordered"),
        Window::new(z(-1, 1), z(2, -1)).expect("ordered"),
        Window::new(u.zero(), g.beta_pow(3).expect("index")).expect("ordered"),
    ]
}

/// Two-sided containment for `β′Σ(Ω) = Σ(βΩ)` over `b ∈ [−range, range]`.
/// Returns `(missing, compared)` for images and for preimages; points whose
/// image or preimage leaves the compared range are skipped on both sides.
fn scaling_containment(u: QuadraticUnit, w: &Window, range: i64) -> ((usize, usize), (usize, usize)) {
    let in_range = |p: &LatticePoint| p.b >= BigInt::from(-range) && p.b <= BigInt::from(range);
    let src = sigma_points(w, -range, range).expect("valid range");
    let dst = sigma_points(&w.scale_by_beta(), -range, range).expect("valid range");
    let src_set: BTreeSet<_> = src.iter().cloned().collect();
    let dst_set: BTreeSet<_> = dst.iter().cloned().collect();
    let tally = |pts: Vec<LatticePoint>, target: &BTreeSet<LatticePoint>| {
        pts.into_iter().filter(in_range).fold((0, 0), |(miss, seen), p| (miss + usize::from(!target.contains(&p)), seen + 1))
    };
    (tally(scale_by_conjugate(u, &src), &dst_set), tally(unscale_by_conjugate(u, &dst), &src_set))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig { max_i: 5, window: 300, n: 2000, freq_max_i: 3, fault: None }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn small_grid_passes() {
        let v = Verifier::new(small());
        for s in Suite::ALL {
            if s == Suite::Frequency {
                continue;
            }
            let r = v.run(s);
            assert!(r.passed(), "{s}: {:?}", r.details);
        }
    }

    #[test]
    fn fault_breaks_criterion() {
        let v = Verifier::new(VerifyConfig { fault: Some(3), ..small() });
        let r = v.run(Suite::Criterion);
        assert!(!r.passed());
        assert!(r.failures > 0);
        assert!(v.run(Suite::Sets).passed());
    }

    #[test]
    fn parallel_scan_matches_serial() {
        let g = GFib::build(QuadraticUnit::golden(), 10).unwrap();
        for i in 1..5 {
            let serial = beatty_core::beatty::frequency_scan(&g, i, 20_000).unwrap();
            assert_eq!(frequency_scan_par(&g, i, 20_000), serial);
        }
    }
}
