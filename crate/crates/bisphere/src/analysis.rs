//! Root finding and scanning built on the flux evaluators: the critical
//! radius ratio, the distance minimizing Q₁, and monotonicity reports over
//! distance grids.

use crate::error::{Error, Result};
use crate::heatloss::{self, SeriesOptions};
use crate::geometry::SphereParams;
use crate::specfun::{digamma, trigamma, EULER_GAMMA};

/// Left side of the critical-ratio equation at x = r₁/r₂, in units of r₂³:
///
/// ```text
/// 2(1+x³)(γ + ψ(1/(1+x))) + x² + x + 2(x² − x) ψ′(1/(1+x))
/// ```
///
/// This equals the contact-slope bracket scaled by r₂³; Q₁ decreases at
/// contact exactly when it is positive.
pub fn contact_slope_bracket(x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!(
            "radius ratio must be positive and finite, got {x}"
        )));
    }
    let u = 1.0 / (1.0 + x);
    let psi = digamma(u)?;
    let psi1 = trigamma(u)?;
    Ok(2.0 * (1.0 + x.powi(3)) * (EULER_GAMMA + psi) + x * x + x + 2.0 * (x * x - x) * psi1)
}

/// The critical radius ratio: the root on (1, ∞) of
/// [`contact_slope_bracket`], located by sign scan on [1, 10] followed by
/// bisection to an interval narrower than `tol`. The result is ≈ 1.95.
pub fn critical_ratio(tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(Error::Domain(format!(
            "tolerance must lie in (0, 1e-2], got {tol}"
        )));
    }
    // Scan for a sign change; the bracket is negative at x = 1 (2 - 8 ln 2).
    let mut lo = 1.0;
    let mut f_lo = contact_slope_bracket(lo)?;
    let mut hi = None;
    let steps = 90;
    for i in 1..=steps {
        let x = 1.0 + 9.0 * i as f64 / steps as f64;
        let f = contact_slope_bracket(x)?;
        if f_lo.signum() != f.signum() {
            hi = Some((x, f));
            break;
        }
        lo = x;
        f_lo = f;
    }
    let (mut hi, _) = hi.ok_or_else(|| {
        Error::BracketFailure("no sign change of the slope bracket on [1, 10]".into())
    })?;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = contact_slope_bracket(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Classification of dQ₁/dd at contact by the sign of the slope bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeSign {
    /// Bracket > 0: the larger sphere initially loses less heat as it moves away.
    DecreasingAtContact,
    /// Bracket < 0: Q₁ grows from d = 0, as for equal spheres.
    IncreasingAtContact,
    /// |bracket| below the slope resolution of double precision.
    Critical,
}

/// Half-width of the "critical" band on the bracket, in units of r₂³.
const CRITICAL_BAND: f64 = 1e-8;

pub fn slope_sign(r1: f64, r2: f64) -> Result<SlopeSign> {
    if !(r1 > 0.0 && r1.is_finite() && r2 > 0.0 && r2.is_finite()) {
        return Err(Error::Domain(format!(
            "radii must be positive and finite, got r1 = {r1}, r2 = {r2}"
        )));
    }
    let b = contact_slope_bracket(r1 / r2)?;
    Ok(if b.abs() < CRITICAL_BAND {
        SlopeSign::Critical
    } else if b > 0.0 {
        SlopeSign::DecreasingAtContact
    } else {
        SlopeSign::IncreasingAtContact
    })
}

/// Result of [`min_distance`]: the minimizer of Q₁(d) on [0, ∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinDistanceResult {
    pub d_star: f64,
    pub q1_star: f64,
    /// True when the minimum sits on the boundary d = 0 (ratio at or
    /// below critical), so no interior search was performed.
    pub boundary: bool,
}

const GOLDEN_INV: f64 = 0.618_033_988_749_894_9; // 1/phi

/// Locate the minimizer of Q₁(d) for equal temperatures t₀.
///
/// For r₁/r₂ at or below the critical ratio the minimum is the boundary
/// d = 0. Otherwise the search interval [0, D] grows geometrically until
/// Q₁(D) > Q₁(0), and golden-section search refines the minimizer until the
/// interval is narrower than `tol · r₁`.
pub fn min_distance(r1: f64, r2: f64, t0: f64, tol: f64) -> Result<MinDistanceResult> {
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(Error::Domain(format!(
            "tolerance must lie in (0, 1e-2], got {tol}"
        )));
    }
    let q0 = heatloss::q1_contact(r1, r2, t0)?;
    if slope_sign(r1, r2)? != SlopeSign::DecreasingAtContact {
        return Ok(MinDistanceResult {
            d_star: 0.0,
            q1_star: q0,
            boundary: true,
        });
    }

    let opts = SeriesOptions {
        tol: 1e-12,
        ..SeriesOptions::default()
    };
    let q1_at = |d: f64| -> Result<f64> {
        let p = SphereParams::new(r1, r2, d, t0, t0)?;
        Ok(heatloss::heat_loss(&p, &opts)?.q1)
    };

    let mut upper = r2;
    let mut grow = 0;
    while q1_at(upper)? <= q0 {
        upper *= 2.0;
        grow += 1;
        if grow > 80 {
            return Err(Error::BracketFailure(
                "Q1(D) never exceeded Q1(0) while growing the search interval".into(),
            ));
        }
    }

    let mut a = 0.0;
    let mut b = upper;
    let mut c = b - GOLDEN_INV * (b - a);
    let mut d = a + GOLDEN_INV * (b - a);
    let mut fc = q1_at(c)?;
    let mut fd = q1_at(d)?;
    while b - a > tol * r1 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN_INV * (b - a);
            fc = q1_at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN_INV * (b - a);
            fd = q1_at(d)?;
        }
    }
    let d_star = 0.5 * (a + b);
    Ok(MinDistanceResult {
        d_star,
        q1_star: q1_at(d_star)?,
        boundary: false,
    })
}

/// Per-column monotonicity over a scan grid, by sign of consecutive
/// differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    NonMonotone,
}

impl Monotonicity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Monotonicity::Increasing => "increasing",
            Monotonicity::Decreasing => "decreasing",
            Monotonicity::NonMonotone => "non-monotone",
        }
    }

    fn classify(values: &[f64]) -> Self {
        let mut up = false;
        let mut down = false;
        for w in values.windows(2) {
            if w[1] > w[0] {
                up = true;
            } else if w[1] < w[0] {
                down = true;
            }
        }
        match (up, down) {
            (true, false) => Monotonicity::Increasing,
            (false, true) => Monotonicity::Decreasing,
            _ => Monotonicity::NonMonotone,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub d: f64,
    pub q1: f64,
    pub q2: f64,
    pub q_total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotoneFlags {
    pub q1: Monotonicity,
    pub q2: Monotonicity,
    pub q_total: Monotonicity,
}

/// Tabulated (d, Q₁, Q₂, Q) rows with the grid minimum of Q₁ and
/// per-column monotonicity flags.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    /// Grid minimum of the Q₁ column as (d★, Q₁★).
    pub minimum: Option<(f64, f64)>,
    pub monotone_flags: MonotoneFlags,
}

/// Evaluate the heat loss over a distance grid.
///
/// `log_spacing` requires d_min > 0; a linear grid may start at d = 0 when
/// the temperatures are equal (the contact formulas cover that row). Any
/// failing row aborts the scan, reporting the offending distance.
pub fn scan(
    p: &SphereParams,
    d_min: f64,
    d_max: f64,
    steps: usize,
    log_spacing: bool,
    opts: &SeriesOptions,
) -> Result<ScanResult> {
    if !(d_min >= 0.0 && d_min < d_max && d_max.is_finite()) {
        return Err(Error::Domain(format!(
            "need 0 <= d_min < d_max, got [{d_min}, {d_max}]"
        )));
    }
    if steps < 2 {
        return Err(Error::Domain(format!("need at least 2 steps, got {steps}")));
    }
    if log_spacing && d_min <= 0.0 {
        return Err(Error::Domain(
            "logarithmic spacing requires d_min > 0".into(),
        ));
    }

    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let frac = i as f64 / (steps - 1) as f64;
        let d = if log_spacing {
            (d_min.ln() + frac * (d_max.ln() - d_min.ln())).exp()
        } else {
            d_min + frac * (d_max - d_min)
        };
        let pd = SphereParams { d, ..*p };
        let r = heatloss::heat_loss(&pd, opts).map_err(|e| {
            Error::UnsupportedConfiguration(format!("scan row at d = {d} failed: {e}"))
        })?;
        rows.push(ScanRow {
            d,
            q1: r.q1,
            q2: r.q2,
            q_total: r.q_total,
        });
    }

    let q1s: Vec<f64> = rows.iter().map(|r| r.q1).collect();
    let q2s: Vec<f64> = rows.iter().map(|r| r.q2).collect();
    let qts: Vec<f64> = rows.iter().map(|r| r.q_total).collect();
    let minimum = rows
        .iter()
        .min_by(|a, b| a.q1.total_cmp(&b.q1))
        .map(|r| (r.d, r.q1));
    Ok(ScanResult {
        rows,
        minimum,
        monotone_flags: MonotoneFlags {
            q1: Monotonicity::classify(&q1s),
            q2: Monotonicity::classify(&q2s),
            q_total: Monotonicity::classify(&qts),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn bracket_at_one_matches_closed_form() {
        // 2(1+1)(gamma + psi(1/2)) + 2 = 2 - 8 ln 2, since the trigamma term vanishes
        let b = contact_slope_bracket(1.0).unwrap();
        let want = 2.0 - 8.0 * std::f64::consts::LN_2;
        assert!((b - want).abs() < 1e-12, "{b} vs {want}");
    }

    #[test]
    fn critical_ratio_is_near_1_95() {
        let l = critical_ratio(1e-6).unwrap();
        assert!((1.94..=1.96).contains(&l), "l = {l}");
        // residual at the root
        let res = contact_slope_bracket(l).unwrap();
        assert!(res.abs() < 1e-4, "residual {res}");
    }

    #[test]
    fn critical_ratio_stable_under_refinement() {
        let coarse = critical_ratio(1e-4).unwrap();
        let fine = critical_ratio(1e-10).unwrap();
        assert!((coarse - fine).abs() < 1e-4, "{coarse} vs {fine}");
    }

    #[test]
    fn critical_ratio_validates_tolerance() {
        assert!(critical_ratio(0.0).is_err());
        assert!(critical_ratio(0.5).is_err());
    }

    #[test]
    fn slope_sign_classification() {
        assert_eq!(
            slope_sign(20.0, 1.0).unwrap(),
            SlopeSign::DecreasingAtContact
        );
        assert_eq!(slope_sign(1.0, 1.0).unwrap(), SlopeSign::IncreasingAtContact);
        let l = critical_ratio(1e-12).unwrap();
        assert_eq!(slope_sign(l, 1.0).unwrap(), SlopeSign::Critical);
        // scale invariance of the ratio classification
        assert_eq!(
            slope_sign(20.0e3, 1.0e3).unwrap(),
            SlopeSign::DecreasingAtContact
        );
    }

    #[test]
    fn slope_sign_flips_exactly_at_the_root() {
        let l = critical_ratio(1e-10).unwrap();
        assert_eq!(
            slope_sign(l + 0.01, 1.0).unwrap(),
            SlopeSign::DecreasingAtContact
        );
        assert_eq!(
            slope_sign(l - 0.01, 1.0).unwrap(),
            SlopeSign::IncreasingAtContact
        );
        // consistency with the dimensional slope from heatloss
        let s_plus = heatloss::q1_slope_at_contact(l + 0.01, 1.0, 1.0).unwrap();
        let s_minus = heatloss::q1_slope_at_contact(l - 0.01, 1.0, 1.0).unwrap();
        assert!(s_plus < 0.0 && s_minus > 0.0);
    }

    #[test]
    fn slope_sign_agrees_with_series_derivative() {
        let l = critical_ratio(1e-10).unwrap();
        let mut rng = StdRng::seed_from_u64(41);
        let mut tested = 0;
        while tested < 20 {
            let ratio: f64 = rng.random_range(1.1_f64..50.0);
            if (ratio - l).abs() < 0.05 {
                continue;
            }
            tested += 1;
            let d = 1e-6;
            let p = SphereParams::new(ratio, 1.0, d, 1.0, 1.0).unwrap();
            let o = SeriesOptions {
                tol: 1e-13,
                ..SeriesOptions::default()
            };
            let q = heatloss::q1_series_direct(&p, &o).unwrap().value;
            let q0 = heatloss::q1_contact(ratio, 1.0, 1.0).unwrap();
            let fd = (q - q0) / d;
            let expected = slope_sign(ratio, 1.0).unwrap();
            let got = if fd < 0.0 {
                SlopeSign::DecreasingAtContact
            } else {
                SlopeSign::IncreasingAtContact
            };
            assert_eq!(got, expected, "ratio {ratio}: fd = {fd}");
        }
    }

    #[test]
    fn min_distance_equal_spheres_is_boundary() {
        let m = min_distance(1.0, 1.0, 1.0, 1e-6).unwrap();
        assert!(m.boundary);
        assert_eq!(m.d_star, 0.0);
        assert_eq!(m.q1_star, heatloss::q1_contact(1.0, 1.0, 1.0).unwrap());
    }

    #[test]
    fn min_distance_large_ratio_interior() {
        let m = min_distance(20.0, 1.0, 1.0, 1e-4).unwrap();
        assert!(!m.boundary);
        assert!(
            m.d_star > 0.5 * 20.0 && m.d_star < 2.0 * 20.0,
            "d_star = {}",
            m.d_star
        );
        assert!(m.q1_star < heatloss::q1_contact(20.0, 1.0, 1.0).unwrap());
        assert!(m.q1_star < 4.0 * std::f64::consts::PI * 20.0);
    }

    #[test]
    fn min_distance_scale_invariance() {
        let m1 = min_distance(20.0, 1.0, 1.0, 1e-5).unwrap();
        let m2 = min_distance(40.0, 2.0, 1.0, 1e-5).unwrap();
        assert!(
            ((m2.d_star - 2.0 * m1.d_star) / (2.0 * m1.d_star)).abs() < 1e-3,
            "{} vs {}",
            m2.d_star,
            2.0 * m1.d_star
        );
    }

    #[test]
    fn min_distance_matches_fine_scan() {
        let m = min_distance(20.0, 1.0, 1.0, 1e-5).unwrap();
        let p = SphereParams::new(20.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        let s = scan(&p, 0.0, 80.0, 801, false, &SeriesOptions::default()).unwrap();
        let (d_grid, _) = s.minimum.unwrap();
        let cell = 80.0 / 800.0;
        assert!(
            (m.d_star - d_grid).abs() <= cell,
            "golden {} vs grid {d_grid}",
            m.d_star
        );
    }

    #[test]
    fn scan_figure_shape() {
        let p = SphereParams::new(20.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        let s = scan(&p, 0.0, 80.0, 201, false, &SeriesOptions::default()).unwrap();
        assert_eq!(s.rows.len(), 201);
        assert_eq!(s.monotone_flags.q1, Monotonicity::NonMonotone);
        assert_eq!(s.monotone_flags.q2, Monotonicity::Increasing);
        assert_eq!(s.monotone_flags.q_total, Monotonicity::Increasing);
        let (d_star, q1_star) = s.minimum.unwrap();
        assert!(d_star > 0.0 && d_star < 80.0);
        assert!(s.rows.iter().all(|r| r.q1 >= q1_star));
        // decreasing then increasing: the minimum splits the grid
        let idx = s.rows.iter().position(|r| r.d == d_star).unwrap();
        assert!(s.rows[..idx].windows(2).all(|w| w[1].q1 < w[0].q1));
        assert!(s.rows[idx..].windows(2).all(|w| w[1].q1 > w[0].q1));
    }

    #[test]
    fn scan_monotone_totals_for_benchmark_ratios() {
        for &(r1, r2) in &[(1.0, 1.0), (2.0, 1.0), (20.0, 1.0)] {
            let p = SphereParams::new(r1, r2, 0.0, 1.0, 1.0).unwrap();
            let s = scan(&p, 0.0, 40.0 * r2, 200, false, &SeriesOptions::default()).unwrap();
            assert_eq!(
                s.monotone_flags.q_total,
                Monotonicity::Increasing,
                "total heat loss must increase for {r1}:{r2}"
            );
            assert_eq!(s.monotone_flags.q2, Monotonicity::Increasing);
        }
    }

    #[test]
    fn scan_log_spacing_and_validation() {
        let p = SphereParams::new(2.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        let s = scan(&p, 1e-3, 10.0, 40, true, &SeriesOptions::default()).unwrap();
        assert_eq!(s.rows.len(), 40);
        assert!((s.rows[0].d - 1e-3).abs() < 1e-15);
        assert!((s.rows[39].d - 10.0).abs() < 1e-12);
        for w in s.rows.windows(2) {
            assert!(w[1].d > w[0].d);
        }
        assert!(scan(&p, 0.0, 10.0, 40, true, &SeriesOptions::default()).is_err());
        assert!(scan(&p, 5.0, 1.0, 40, false, &SeriesOptions::default()).is_err());
        assert!(scan(&p, 0.0, 10.0, 1, false, &SeriesOptions::default()).is_err());
    }

    #[test]
    fn scan_reports_failing_row() {
        // unequal temperatures cannot evaluate the d = 0 row
        let p = SphereParams::new(2.0, 1.0, 0.0, 1.0, 0.5).unwrap();
        let err = scan(&p, 0.0, 10.0, 5, false, &SeriesOptions::default()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("d = 0"), "message was: {msg}");
    }
}
