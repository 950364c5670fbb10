//! The `verify` subcommand: runs the oracle module's checks and prints a
//! pass/fail table. Configurations are generated by a fixed splitmix64
//! stream so every run checks exactly the same cases.

use std::io::{self, Write};

use bisphere::geometry::{BisphericalConfig, SphereParams};
use bisphere::heatloss::{self, SeriesOptions};
use bisphere::oracle;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    All,
    Identity,
    Oracle,
    Lemma,
    Em,
}

pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn uniform(state: &mut u64, lo: f64, hi: f64) -> f64 {
    let u = (splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64;
    lo + u * (hi - lo)
}

pub fn run(selection: Selection) -> Result<Vec<CheckResult>, bisphere::Error> {
    let mut results = Vec::new();
    let want = |s: Selection| selection == Selection::All || selection == s;
    if want(Selection::Identity) {
        results.push(check_identity()?);
    }
    if want(Selection::Oracle) {
        results.push(check_oracle_vs_series()?);
    }
    if want(Selection::Lemma) {
        results.push(check_lemma()?);
    }
    if want(Selection::Em) {
        results.push(check_em_remainder()?);
        results.push(check_em_cross_method()?);
    }
    Ok(results)
}

/// Print the table; returns whether every check passed.
pub fn render(results: &[CheckResult], out: &mut impl Write) -> io::Result<bool> {
    let mut all_ok = true;
    for r in results {
        writeln!(
            out,
            "{:<18} {}  {}",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.detail
        )?;
        all_ok &= r.passed;
    }
    writeln!(
        out,
        "{}",
        if all_ok {
            "all checks passed"
        } else {
            "one or more checks FAILED"
        }
    )?;
    Ok(all_ok)
}

/// 5x5 grid of the closed-form integral identity, relative 1e-8.
fn check_identity() -> Result<CheckResult, bisphere::Error> {
    const TOL: f64 = 1e-8;
    let grid: Vec<f64> = (0..5).map(|i| 0.1 + 3.9 * i as f64 / 4.0).collect();
    let mut worst: f64 = 0.0;
    let mut failures = 0usize;
    for &a in &grid {
        for &b in &grid {
            let (lhs, rhs) = oracle::check_subtle_identity(a, b, 1e-11)?;
            let rel = ((lhs - rhs) / rhs).abs();
            worst = worst.max(rel);
            if rel >= TOL {
                failures += 1;
            }
        }
    }
    Ok(CheckResult {
        name: "identity",
        passed: failures == 0,
        detail: format!("{}/25 points within {TOL:.0e} (worst {worst:.2e})", 25 - failures),
    })
}

/// Boundary-coefficient quadrature vs the direct series on 20 fixed
/// pseudo-random configurations, relative 1e-6.
fn check_oracle_vs_series() -> Result<CheckResult, bisphere::Error> {
    const TOL: f64 = 1e-6;
    let mut state: u64 = 0x5eed_cafe_f00d_0001;
    let mut worst: f64 = 0.0;
    let mut failures = 0usize;
    for i in 0..20 {
        let r1 = uniform(&mut state, 1.0, 30.0);
        let d = 10f64.powf(uniform(&mut state, -1.0, 2.0));
        let (t1, t2) = if i % 2 == 0 {
            (1.0, 1.0)
        } else {
            (
                uniform(&mut state, 0.5, 2.0),
                uniform(&mut state, 0.5, 2.0),
            )
        };
        let p = SphereParams::new(r1, 1.0, d, t1, t2)?;
        let cfg = BisphericalConfig::from_params(&p)?;
        let n_max = oracle::suggested_n_max(&cfg, t1, t2, 1e-9);
        let coeffs = oracle::solve_boundary(&cfg, t1, t2, n_max)?;
        let nodes = if cfg.mu1 < 0.05 { 2048 } else { 256 };
        let quad = oracle::q1_quadrature(&cfg, &coeffs, nodes)?;
        let series = heatloss::q1_series_direct(
            &p,
            &SeriesOptions {
                tol: 1e-12,
                ..SeriesOptions::default()
            },
        )?;
        let rel = ((quad.value - series.value) / series.value).abs();
        worst = worst.max(rel);
        if rel >= TOL {
            failures += 1;
        }
    }
    Ok(CheckResult {
        name: "oracle-vs-series",
        passed: failures == 0,
        detail: format!("{}/20 configs within {TOL:.0e} (worst {worst:.2e})", 20 - failures),
    })
}

/// f''' >= -1e-12 on the (p, s) grid plus the series-coefficient closed forms.
fn check_lemma() -> Result<CheckResult, bisphere::Error> {
    let p_values = [-1.0, -0.75, -0.5, -0.25, -0.05, 0.0];
    let s_grid: Vec<f64> = (0..50)
        .map(|i| {
            let t = i as f64 / 49.0;
            10f64.powf(-3.0 + t * (30.0_f64.log10() + 3.0))
        })
        .collect();
    let report = oracle::lemma_f3_nonneg(&p_values, &s_grid)?;
    let total = p_values.len() * s_grid.len();
    Ok(CheckResult {
        name: "lemma-f3",
        passed: report.ok(),
        detail: format!(
            "{}/{} grid points >= -1e-12; a4/a5 dev {:.1e}/{:.1e}",
            total - report.violations.len(),
            total,
            report.a4_max_dev,
            report.a5_max_dev
        ),
    })
}

/// The Euler-Maclaurin remainder identity Int |g'''| = -g''(0) and the
/// g''(0) = O(d) scaling.
fn check_em_remainder() -> Result<CheckResult, bisphere::Error> {
    let configs = [(2.0, 1.0, 0.1), (5.0, 1.0, 0.05), (1.5, 1.0, 0.3)];
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for &(r1, r2, d) in &configs {
        let p = SphereParams::new(r1, r2, d, 1.0, 1.0)?;
        let cfg = BisphericalConfig::from_params(&p)?;
        let report = oracle::check_em_remainder_sign(&cfg)?;
        worst = worst.max(report.rel_diff);
        ok &= report.ok();
    }
    Ok(CheckResult {
        name: "em-remainder",
        passed: ok,
        detail: format!(
            "{} configs: |g'''| integral = -g''(0) (worst rel {worst:.2e}); g''(0)/d bounded",
            configs.len()
        ),
    })
}

/// Euler-Maclaurin route against direct summation within the combined
/// error estimates; this is the check a corrupted digamma (which feeds the
/// 2F1 expansion) would trip.
fn check_em_cross_method() -> Result<CheckResult, bisphere::Error> {
    let mut state: u64 = 0x5eed_cafe_f00d_0002;
    let opts = SeriesOptions {
        tol: 1e-12,
        ..SeriesOptions::default()
    };
    let mut failures = 0usize;
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let r1 = uniform(&mut state, 1.0, 10.0);
        let d = 10f64.powf(uniform(&mut state, -4.0, 0.0));
        let p = SphereParams::new(r1, 1.0, d, 1.0, 1.0)?;
        let cfg = BisphericalConfig::from_params(&p)?;
        let em = heatloss::f_euler_maclaurin(&cfg, &opts)?;
        let direct = heatloss::f_collapsed(&cfg, &opts)?;
        let budget = em.err + direct.err + 1e-13 * direct.value.abs();
        let diff = (em.value - direct.value).abs();
        worst = worst.max(diff / budget);
        if diff > budget {
            failures += 1;
        }
    }
    Ok(CheckResult {
        name: "em-cross-method",
        passed: failures == 0,
        detail: format!(
            "{}/10 configs within combined error (worst ratio {worst:.2})",
            10 - failures
        ),
    })
}
