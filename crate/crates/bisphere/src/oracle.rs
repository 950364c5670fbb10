//! Independent verification paths that share no code with the series
//! evaluators in `heatloss`.
//!
//! The flux oracle solves the per-mode boundary system for the Legendre
//! coefficients of the potential and integrates the normal derivative over
//! the sphere surface by Gauss–Legendre quadrature, using the raw mode sums
//! rather than the resummed closed forms — so the resummation identities of
//! the series route are genuinely tested, not assumed. The remaining checks
//! verify the integral identity behind the series collapse, the sign lemma
//! for f⁽³⁾, and the Euler–Maclaurin remainder structure.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::BisphericalConfig;

/// Largest exponent fed to `exp` when reconstructing mode amplitudes;
/// beyond this the surface combinations overflow f64.
const MAX_MODE_EXPONENT: f64 = 700.0;

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes
// ---------------------------------------------------------------------------

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1],
/// by Newton iteration on Pₙ with the Chebyshev-angle initial guess.
pub(crate) fn gauss_legendre_nodes(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2);
    let mut out = Vec::with_capacity(n);
    let nf = n as f64;
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_{n-1} by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out
}

// ---------------------------------------------------------------------------
// Boundary-coefficient quadrature for Q1
// ---------------------------------------------------------------------------

/// Legendre mode amplitudes (Aₙ, Bₙ) of the exterior potential, solving
/// Aₙ e^{(n+1/2)μⱼ} + Bₙ e^{−(n+1/2)μⱼ} = Tⱼ √2 e^{−(n+1/2)|μⱼ|} for j = 1, 2.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCoefficients {
    /// Highest mode index stored; arrays run over n = 0..=n_max.
    pub n_max: usize,
    pub a_n: Vec<f64>,
    pub b_n: Vec<f64>,
}

/// Solve the per-mode 2×2 boundary system.
///
/// Written in the scaled variables u₁ = e^{−2νμ₁}, u₂ = e^{2νμ₂} (both in
/// (0,1), ν = n + 1/2) the system reads Aₙ + u₁Bₙ = √2T₁u₁,
/// u₂Aₙ + Bₙ = √2T₂u₂ with determinant 1 − u₁u₂ → 1, so the solve itself
/// never degrades; what does overflow is the e^{νμ₁} reconstruction at
/// absurd n_max, which is rejected.
pub fn solve_boundary(
    config: &BisphericalConfig,
    t1: f64,
    t2: f64,
    n_max: usize,
) -> Result<BoundaryCoefficients> {
    if !(t1 >= 0.0 && t1.is_finite() && t2 >= 0.0 && t2.is_finite()) {
        return Err(Error::Domain(format!(
            "temperatures must be non-negative and finite, got {t1}, {t2}"
        )));
    }
    if (n_max as f64 + 0.5) * config.mu1 > MAX_MODE_EXPONENT {
        return Err(Error::IllConditioned(format!(
            "n_max = {n_max} puts e^{{(n+1/2) mu1}} out of range; cap n_max below {}",
            (MAX_MODE_EXPONENT / config.mu1) as usize
        )));
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut a_n = Vec::with_capacity(n_max + 1);
    let mut b_n = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let nu = n as f64 + 0.5;
        let u1 = (-2.0 * nu * config.mu1).exp();
        let u2 = (2.0 * nu * config.mu2).exp();
        let det = 1.0 - u1 * u2;
        a_n.push(sqrt2 * u1 * (t1 - t2 * u2) / det);
        b_n.push(sqrt2 * u2 * (t2 - t1 * u1) / det);
    }
    Ok(BoundaryCoefficients { n_max, a_n, b_n })
}

/// Mode count for which the surface sums are converged to `tol` relative,
/// from the geometric tail bound on the slowest combination (rate e^{−νμ₁}).
pub fn suggested_n_max(config: &BisphericalConfig, t1: f64, t2: f64, tol: f64) -> usize {
    let mu = config.mu1;
    let scale = (t1 + t2).max(1e-300);
    let denom = (1.0 - (-mu).exp()).max(1e-300);
    let mut n = 8usize;
    loop {
        let nu = n as f64 + 1.5;
        let bound = std::f64::consts::SQRT_2 * scale * nu * (-nu * mu).exp() / (denom * denom);
        if bound < tol * scale || (n as f64 + 0.5) * mu > MAX_MODE_EXPONENT - 10.0 {
            return n;
        }
        n += (n / 2).max(8);
    }
}

/// A quadrature value together with the node-doubling error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEval {
    pub value: f64,
    pub err: f64,
}

/// Q₁ by surface quadrature of ∂T/∂n over ∂B₁, evaluated from the raw mode
/// sums (not the resummed closed forms):
///
/// ```text
/// ∂T/∂n = sinh μ₁/(2a) √(cosh μ₁ − w) Σ Sₙ Pₙ(w)
///       + (cosh μ₁ − w)^{3/2}/a · Σ ν Dₙ Pₙ(w),        w = cos η,
/// ```
///
/// with Sₙ = Aₙe^{νμ₁} + Bₙe^{−νμ₁}, Dₙ = Aₙe^{νμ₁} − Bₙe^{−νμ₁}. The
/// surface element a² sin η/(cosh μ₁ − cos η)² and the φ rotation fold in,
/// and the integral over w ∈ [−1, 1] runs on `quad_nodes` and
/// 2×`quad_nodes` Gauss–Legendre points; the difference is the reported
/// error.
pub fn q1_quadrature(
    config: &BisphericalConfig,
    coeffs: &BoundaryCoefficients,
    quad_nodes: usize,
) -> Result<QuadratureEval> {
    if quad_nodes < 16 {
        return Err(Error::Domain(format!(
            "need at least 16 quadrature nodes, got {quad_nodes}"
        )));
    }
    if (coeffs.n_max as f64 + 0.5) * config.mu1 > MAX_MODE_EXPONENT {
        return Err(Error::IllConditioned(
            "mode reconstruction out of floating-point range".into(),
        ));
    }

    // Surface combinations S_n and nu * D_n.
    let m = coeffs.n_max + 1;
    let mut s_modes = Vec::with_capacity(m);
    let mut d_modes = Vec::with_capacity(m);
    for n in 0..m {
        let nu = n as f64 + 0.5;
        let e_plus = (nu * config.mu1).exp();
        let a = coeffs.a_n[n] * e_plus;
        let b = coeffs.b_n[n] / e_plus;
        s_modes.push(a + b);
        d_modes.push(nu * (a - b));
    }

    let cosh_mu1 = config.mu1.cosh();
    let sinh_mu1 = config.mu1.sinh();
    let integrate = |nodes: usize| -> f64 {
        let rule = gauss_legendre_nodes(nodes);
        let mut total = 0.0;
        for &(w, weight) in &rule {
            let base = cosh_mu1 - w;
            // one Legendre recurrence pass accumulates both mode sums
            let mut p0 = 1.0;
            let mut p1 = w;
            let mut s_sum = s_modes[0];
            let mut d_sum = d_modes[0];
            if m > 1 {
                s_sum += s_modes[1] * p1;
                d_sum += d_modes[1] * p1;
            }
            for n in 1..m.saturating_sub(1) {
                let nf = n as f64;
                let p2 = ((2.0 * nf + 1.0) * w * p1 - nf * p0) / (nf + 1.0);
                s_sum += s_modes[n + 1] * p2;
                d_sum += d_modes[n + 1] * p2;
                p0 = p1;
                p1 = p2;
            }
            let integrand =
                0.5 * sinh_mu1 * base.powf(-1.5) * s_sum + base.powf(-0.5) * d_sum;
            total += weight * integrand;
        }
        2.0 * PI * config.a * total
    };

    let coarse = integrate(quad_nodes);
    let fine = integrate(quad_nodes * 2);
    Ok(QuadratureEval {
        value: fine,
        err: (fine - coarse).abs(),
    })
}

// ---------------------------------------------------------------------------
// The integral identity behind the series collapse
// ---------------------------------------------------------------------------

/// Recursive adaptive Simpson on [a, b].
#[allow(clippy::too_many_arguments)] // recursion state
fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let left_mid = f(0.5 * (a + m));
    let right_mid = f(0.5 * (m + b));
    let left = (m - a) / 6.0 * (fa + 4.0 * left_mid + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * right_mid + fb);
    adaptive_simpson(&f, a, m, fa, left_mid, fm, left, 0.5 * tol, 48)
        + adaptive_simpson(&f, m, b, fm, right_mid, fb, right, 0.5 * tol, 48)
}

/// Check the closed form
///
/// ```text
/// sinh(B) ∫_{−1}^{1} (cosh A − x)^{−1/2} (cosh B − x)^{−3/2} dx = 2 / sinh((A+B)/2)
/// ```
///
/// returning (quadrature LHS, closed-form RHS). The substitution x = 1 − u²
/// concentrates nodes near the x = 1 end where the integrand peaks for
/// small A or B.
pub fn check_subtle_identity(a: f64, b: f64, quad_tol: f64) -> Result<(f64, f64)> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("identity arguments must be finite".into()));
    }
    if a.abs().min(b.abs()) < 1e-4 {
        return Err(Error::NonConvergence {
            what: "identity quadrature (arguments too close to the singular axis)",
            terms: 0,
        });
    }
    if (a + b).abs() < 1e-12 {
        return Err(Error::Domain("identity undefined for A + B = 0".into()));
    }
    if quad_tol.is_nan() || quad_tol <= 0.0 {
        return Err(Error::Domain(format!(
            "quadrature tolerance must be positive, got {quad_tol}"
        )));
    }
    // cosh X - 1 = 2 sinh^2(X/2), exact near zero
    let eps_a = 2.0 * (0.5 * a).sinh().powi(2);
    let eps_b = 2.0 * (0.5 * b).sinh().powi(2);
    let integrand =
        move |u: f64| 2.0 * u * (eps_a + u * u).powf(-0.5) * (eps_b + u * u).powf(-1.5);
    let rhs = 2.0 / (0.5 * (a + b)).sinh();
    let scale = rhs.abs().max(1.0);
    let integral = integrate_adaptive(integrand, 0.0, 2.0_f64.sqrt(), quad_tol * scale / 15.0);
    Ok((b.sinh() * integral, rhs))
}

// ---------------------------------------------------------------------------
// Technical lemma: f'''(s) >= 0 for f(s) = (e^{sp} - 1)/(e^s - 1), p in [-1, 0]
// ---------------------------------------------------------------------------

/// Coefficient aₖ of sᵏ/k! in the numerator of the explicit f⁽³⁾ formula:
///
/// ```text
/// aₖ = (p+3)ᵏ(p−1)³ + (p+2)ᵏ(−3p³+6p²−4) + (p+1)ᵏ(3p³−3p²−3p−1) − pᵏ⁺³ + 3ᵏ + 4·2ᵏ + 1.
/// ```
///
/// Vanishes for k ≤ 3; a₄ = 6p²(p−1)² and a₅ = 4p(p−1)(6p²(p+1)−14p+1).
pub fn f3_series_coeff(p: f64, k: u32) -> f64 {
    let k = k as i32;
    (p + 3.0).powi(k) * (p - 1.0).powi(3)
        + (p + 2.0).powi(k) * (-3.0 * p.powi(3) + 6.0 * p * p - 4.0)
        + (p + 1.0).powi(k) * (3.0 * p.powi(3) - 3.0 * p * p - 3.0 * p - 1.0)
        - p.powi(k + 3)
        + 3.0_f64.powi(k)
        + 4.0 * 2.0_f64.powi(k)
        + 1.0
}

/// Third derivative of f(s) = (e^{sp} − 1)/(e^s − 1) by the explicit
/// rational-exponential formula. Below s = 1/2 the numerator is evaluated
/// through its Taylor coefficients aₖ (all the exponential terms cancel
/// through order s³ there, so the direct form loses the leading digits).
pub fn lemma_f3(p: f64, s: f64) -> f64 {
    let den = s.exp_m1().powi(4);
    if s < 0.5 {
        let mut num = 0.0;
        let mut s_pow_over_fact = s.powi(4) / 24.0; // s^4 / 4!
        for k in 4..=60u32 {
            num += f3_series_coeff(p, k) * s_pow_over_fact;
            s_pow_over_fact *= s / (k as f64 + 1.0);
        }
        num / den
    } else {
        let num = (s * (p + 3.0)).exp() * (p - 1.0).powi(3)
            + (s * (p + 2.0)).exp() * (-3.0 * p.powi(3) + 6.0 * p * p - 4.0)
            + (s * (p + 1.0)).exp() * (3.0 * p.powi(3) - 3.0 * p * p - 3.0 * p - 1.0)
            - p.powi(3) * (s * p).exp()
            + (3.0 * s).exp()
            + 4.0 * (2.0 * s).exp()
            + s.exp();
        num / den
    }
}

/// Outcome of the f⁽³⁾ ≥ 0 sweep: grid violations, negative series
/// coefficients, and the deviation of a₄/a₅ from their closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    /// (p, s, f3) triples where f3 fell below −1e-12.
    pub violations: Vec<(f64, f64, f64)>,
    /// (p, k) pairs with a negative series coefficient for k ≤ 40.
    pub coefficient_violations: Vec<(f64, u32)>,
    /// Worst |a₄ − 6p²(p−1)²| over the sampled p.
    pub a4_max_dev: f64,
    /// Worst |a₅ − 4p(p−1)(6p²(p+1)−14p+1)| over the sampled p.
    pub a5_max_dev: f64,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
            && self.coefficient_violations.is_empty()
            && self.a4_max_dev < 1e-10
            && self.a5_max_dev < 1e-10
    }
}

const F3_FLOOR: f64 = -1e-12;

/// Evaluate f⁽³⁾ on a (p, s) grid and assert nonnegativity down to −1e-12,
/// spot-checking the series coefficients aₖ ≥ 0 for k ≤ 40 along the way.
pub fn lemma_f3_nonneg(p_values: &[f64], s_grid: &[f64]) -> Result<LemmaReport> {
    let mut report = LemmaReport {
        violations: Vec::new(),
        coefficient_violations: Vec::new(),
        a4_max_dev: 0.0,
        a5_max_dev: 0.0,
    };
    for &p in p_values {
        if !(-1.0..=0.0).contains(&p) {
            return Err(Error::Domain(format!("lemma requires p in [-1, 0], got {p}")));
        }
        for &s in s_grid {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::Domain(format!("grid points must be positive, got {s}")));
            }
            let v = lemma_f3(p, s);
            if v < F3_FLOOR {
                report.violations.push((p, s, v));
            }
        }
        for k in 0..=40u32 {
            // k <= 3 cancels to zero; allow rounding at the 1e-10 scale
            if f3_series_coeff(p, k) < -1e-10 {
                report.coefficient_violations.push((p, k));
            }
        }
        let a4_closed = 6.0 * p * p * (p - 1.0) * (p - 1.0);
        let a5_closed = 4.0 * p * (p - 1.0) * (6.0 * p * p * (p + 1.0) - 14.0 * p + 1.0);
        report.a4_max_dev = report
            .a4_max_dev
            .max((f3_series_coeff(p, 4) - a4_closed).abs());
        report.a5_max_dev = report
            .a5_max_dev
            .max((f3_series_coeff(p, 5) - a5_closed).abs());
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin remainder structure
// ---------------------------------------------------------------------------

/// g and its first three derivatives for g(s) = (x^{−2s−1} − 1)/(z^{2s+1} − 1),
/// evaluated through e^{−(2s+1)ln z} so nothing overflows at large s.
fn g_derivs(config: &BisphericalConfig, s: f64) -> (f64, f64, f64, f64) {
    let lx = config.mu1;
    let lz = config.ln_z();
    let m = 2.0 * s + 1.0;
    let en = (-m * lx).exp(); // x^{-2s-1}
    let n0 = (-m * lx).exp_m1(); // x^{-2s-1} - 1
    let np = -2.0 * lx * en;
    let npp = 4.0 * lx * lx * en;
    let nppp = -8.0 * lx * lx * lx * en;
    let f = (-m * lz).exp(); // z^{-(2s+1)} in (0,1)
    let r = 1.0 / (-(-m * lz).exp_m1()); // 1/(1 - F)
    // D = (1-F)/F, D^{(k)}/D = (2 lz)^k / (1-F)
    let g = n0 * f * r;
    let d1 = 2.0 * lz * r;
    let d2 = 4.0 * lz * lz * r;
    let d3 = 8.0 * lz * lz * lz * r;
    let gp = np * f * r - g * d1;
    let gpp = npp * f * r - 2.0 * gp * d1 - g * d2;
    let gppp = nppp * f * r - 3.0 * gpp * d1 - 3.0 * gp * d2 - g * d3;
    (g, gp, gpp, gppp)
}

/// Euler–Maclaurin remainder check for one configuration:
/// ∫₀^∞ |g‴| must equal −g″(0) (the sign lemma makes |g‴| = g‴), and
/// g″(0) must scale linearly with the gap.
#[derive(Debug, Clone, PartialEq)]
pub struct EmRemainderReport {
    /// Composite quadrature of |g‴| on [0, S] plus the analytic tail |g″(S)|.
    pub integral_abs_g3: f64,
    /// −g″(0) evaluated in closed form.
    pub neg_g2_at_zero: f64,
    /// Relative difference of the two.
    pub rel_diff: f64,
    /// (d, g″(0)/d) over the gap sweep at fixed radii.
    pub g2_over_d: Vec<(f64, f64)>,
}

impl EmRemainderReport {
    pub fn ok(&self) -> bool {
        if self.rel_diff >= 1e-8 {
            return false;
        }
        // every g''(0) negative and the ratios bounded within a decade
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &(_, ratio) in &self.g2_over_d {
            if !(ratio < 0.0 && ratio.is_finite()) {
                return false;
            }
            lo = lo.min(ratio.abs());
            hi = hi.max(ratio.abs());
        }
        hi / lo < 10.0
    }
}

pub fn check_em_remainder_sign(config: &BisphericalConfig) -> Result<EmRemainderReport> {
    let lz = config.ln_z();
    let (_, _, g2_zero, _) = g_derivs(config, 0.0);

    // Truncation point: extend until the analytic tail |g''(S)| is negligible.
    let mut s_max = 5.0 / lz;
    loop {
        let (_, _, g2s, _) = g_derivs(config, s_max);
        if g2s.abs() <= 1e-13 * g2_zero.abs() || s_max > 1e6 / lz {
            break;
        }
        s_max *= 2.0;
    }
    let (_, _, g2_tail, _) = g_derivs(config, s_max);

    // Composite Gauss-Legendre: panel width ~ the 1/(2 ln z) variation scale.
    let panels = ((s_max * 2.0 * lz).ceil() as usize).clamp(16, 4000);
    let rule = gauss_legendre_nodes(16);
    let width = s_max / panels as f64;
    let mut integral = 0.0;
    for i in 0..panels {
        let lo = i as f64 * width;
        let mid = lo + 0.5 * width;
        for &(t, w) in &rule {
            let s = mid + 0.5 * width * t;
            let (_, _, _, g3) = g_derivs(config, s);
            integral += 0.5 * width * w * g3.abs();
        }
    }
    let lhs = integral + g2_tail.abs();
    let rhs = -g2_zero;
    let rel_diff = ((lhs - rhs) / rhs).abs();

    // g''(0) = O(d): sweep the gap at fixed radii recovered from the chart.
    let (r1, r2) = config.radii();
    let mut g2_over_d = Vec::new();
    for &scale in &[1e-2, 1e-3, 1e-4] {
        let d = scale * r2;
        let p = crate::geometry::SphereParams::new(r1, r2, d, 1.0, 1.0)?;
        let cfg = BisphericalConfig::from_params(&p)?;
        let (_, _, g2, _) = g_derivs(&cfg, 0.0);
        g2_over_d.push((d, g2 / d));
    }

    Ok(EmRemainderReport {
        integral_abs_g3: lhs,
        neg_g2_at_zero: rhs,
        rel_diff,
        g2_over_d,
    })
}
