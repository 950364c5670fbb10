//! Physical sphere parameters and their bispherical-coordinate image.
//!
//! Both sphere surfaces are level sets μ = const of the bispherical chart
//! with focal scale a; the series modules consume the derived exponentials
//! x = e^{μ₁}, y = e^{−μ₂}, z = xy and the ratio α = ln x / ln z.

use crate::error::{Error, Result};

/// Gap-to-radius ratio below which the coordinate map refuses to evaluate:
/// x − 1 ~ √d there, so half the significant digits are already gone and
/// callers should use the contact formulas instead.
pub const CONTACT_THRESHOLD: f64 = 1e-12;

/// Two spheres held at constant surface temperature, separated by a gap `d`
/// between their surfaces (not their centers).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereParams {
    /// Radius of sphere 1.
    pub r1: f64,
    /// Radius of sphere 2.
    pub r2: f64,
    /// Surface-to-surface gap, ≥ 0.
    pub d: f64,
    /// Temperature on the surface of sphere 1.
    pub t1: f64,
    /// Temperature on the surface of sphere 2.
    pub t2: f64,
}

impl SphereParams {
    pub fn new(r1: f64, r2: f64, d: f64, t1: f64, t2: f64) -> Result<Self> {
        for (name, v) in [("r1", r1), ("r2", r2), ("d", d), ("t1", t1), ("t2", t2)] {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {v}")));
            }
        }
        if r1 <= 0.0 || r2 <= 0.0 {
            return Err(Error::Domain(format!(
                "radii must be positive, got r1 = {r1}, r2 = {r2}"
            )));
        }
        if d < 0.0 {
            return Err(Error::Domain(format!("gap must be non-negative, got {d}")));
        }
        if t1 < 0.0 || t2 < 0.0 {
            return Err(Error::Domain(format!(
                "temperatures must be non-negative, got t1 = {t1}, t2 = {t2}"
            )));
        }
        Ok(Self { r1, r2, d, t1, t2 })
    }

    /// Swap the roles of the two spheres (radius and temperature together).
    pub fn swapped(&self) -> Self {
        Self {
            r1: self.r2,
            r2: self.r1,
            d: self.d,
            t1: self.t2,
            t2: self.t1,
        }
    }

    /// Canonical orientation r1 ≥ r2. Returns the (possibly swapped)
    /// parameters and whether a swap happened, so callers can relabel
    /// Q1/Q2. Ties keep the input order.
    pub fn normalize(&self) -> (Self, bool) {
        if self.r2 > self.r1 {
            (self.swapped(), true)
        } else {
            (*self, false)
        }
    }

    /// Whether both boundary temperatures are the same constant.
    pub fn equal_temperatures(&self) -> bool {
        self.t1 == self.t2
    }
}

/// Bispherical coordinates of a two-sphere configuration with d > 0.
///
/// Sphere 1 sits at μ = μ₁ > 0, sphere 2 at μ = μ₂ < 0, and
/// r_j = a / |sinh μ_j|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisphericalConfig {
    /// Focal scale of the chart.
    pub a: f64,
    /// μ-coordinate of the surface of sphere 1 (positive).
    pub mu1: f64,
    /// μ-coordinate of the surface of sphere 2 (negative).
    pub mu2: f64,
    /// x = e^{μ₁} > 1.
    pub x: f64,
    /// y = e^{−μ₂} > 1.
    pub y: f64,
    /// z = xy > 1.
    pub z: f64,
    /// α = ln x / ln z ∈ (0, 1).
    pub alpha: f64,
}

impl BisphericalConfig {
    /// Map sphere parameters to bispherical coordinates.
    ///
    /// x and y come from the explicit surd forms
    ///
    /// ```text
    /// x = 1 + [d(d+2r₂) + √(d(d+2r₁)(d+2r₂)(d+2r₁+2r₂))] / (2(d+r₁+r₂)r₁)
    /// y = 1 + [d(d+2r₁) + √(same)] / (2(d+r₁+r₂)r₂)
    /// ```
    ///
    /// whose terms are all positive, so x − 1 and y − 1 keep full precision
    /// down to the contact threshold; μ₁ = ln x and μ₂ = −ln y follow via
    /// log1p. The cosh-formula/arccosh route is evaluated as a cross-check
    /// and must agree with e^{μ₁} to a relative 1e-10.
    pub fn from_params(p: &SphereParams) -> Result<Self> {
        let SphereParams { r1, r2, d, .. } = *p;
        if d == 0.0 || d < CONTACT_THRESHOLD * r1.min(r2) {
            return Err(Error::DegenerateContact { d });
        }

        let big_d = d + r1 + r2;
        let surd = (d * (d + 2.0 * r1) * (d + 2.0 * r2) * (d + 2.0 * (r1 + r2))).sqrt();
        let xm1 = (d * (d + 2.0 * r2) + surd) / (2.0 * big_d * r1);
        let ym1 = (d * (d + 2.0 * r1) + surd) / (2.0 * big_d * r2);
        let x = 1.0 + xm1;
        let y = 1.0 + ym1;
        if !(x > 1.0 && y > 1.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::Domain(format!(
                "coordinate map produced x = {x}, y = {y} for r1 = {r1}, r2 = {r2}, d = {d}"
            )));
        }

        let mu1 = xm1.ln_1p();
        let mu2 = -ym1.ln_1p();
        // sinh(mu1) = (x - 1/x)/2 = (x-1)(x+1)/(2x), cancellation-free
        let a = r1 * (xm1 * (x + 1.0)) / (2.0 * x);

        // Cross-check against cosh μ1 = ((d+r1+r2)^2 + r1^2 - r2^2)/(2(d+r1+r2)r1)
        // and the arccosh path ln(c + sqrt(c^2 - 1)), sqrt argument clamped at 0.
        let c1 = (big_d * big_d + r1 * r1 - r2 * r2) / (2.0 * big_d * r1);
        let mu1_acosh = (c1 + (c1 * c1 - 1.0).max(0.0).sqrt()).ln();
        let x_acosh = mu1_acosh.exp();
        if ((x_acosh - x) / x).abs() > 1e-10 {
            return Err(Error::Domain(format!(
                "coordinate cross-check failed: e^mu1 = {x_acosh} vs x = {x}"
            )));
        }

        let alpha = mu1 / (mu1 - mu2);
        Ok(Self {
            a,
            mu1,
            mu2,
            x,
            y,
            z: x * y,
            alpha,
        })
    }

    /// ln z = μ₁ − μ₂, the decay rate of every flux series.
    pub fn ln_z(&self) -> f64 {
        self.mu1 - self.mu2
    }

    /// Mirror the chart so sphere 2 plays the role of sphere 1.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.a,
            mu1: -self.mu2,
            mu2: -self.mu1,
            x: self.y,
            y: self.x,
            z: self.z,
            alpha: 1.0 - self.alpha,
        }
    }

    /// Surface element scale a² sin η / (cosh μ − cos η)²; integrating it
    /// over η ∈ [0, π], φ ∈ [0, 2π] at μ = μ_j recovers the sphere area.
    pub fn surface_element_scale(&self, eta: f64, mu: f64) -> f64 {
        let denom = mu.cosh() - eta.cos();
        self.a * self.a * eta.sin() / (denom * denom)
    }

    /// Radii recovered from the chart: r_j = a / |sinh μ_j|.
    pub fn radii(&self) -> (f64, f64) {
        (self.a / self.mu1.sinh(), self.a / (-self.mu2).sinh())
    }
}
