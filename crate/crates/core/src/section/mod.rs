//! The torus-plane section in plane coordinates `(t, w)`.
//!
//! Substituting the plane embedding into the torus equation collapses
//! `x^2 + y^2` to `t^2 + (rho cos phi - w sin phi)^2`, which gives the
//! square-root form
//!
//! ```text
//! t^2 + w^2 + rho^2 + R^2 - r^2 = 2R sqrt(t^2 + (rho cos phi - w sin phi)^2)
//! ```
//!
//! and, after squaring, a bicircular quartic with no `t`-odd terms.

mod nodes;
mod trace;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ToricError};
use crate::geometry::{
    plane_frame, torus_residual, PlaneFrame, PlaneParams, Point2, Point3, TorusParams,
};

pub use trace::{trace_section, DEFAULT_RESOLUTION, MIN_RESOLUTION};

/// `|cos phi|` below this is treated as a horizontal plane.
pub const HORIZONTAL_EPS: f64 = 1e-12;

/// Torus and cutting plane, with the plane frame derived once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionProblem {
    torus: TorusParams,
    plane: PlaneParams,
    frame: PlaneFrame,
    // rho^2 + R^2 - r^2
    offset: f64,
    rho_cos: f64,
    sin_phi: f64,
    cos_phi: f64,
}

impl SectionProblem {
    pub fn new(torus: TorusParams, plane: PlaneParams) -> Self {
        let (sin_phi, cos_phi) = plane.phi().sin_cos();
        let (big, small, rho) = (torus.major(), torus.minor(), plane.rho());
        Self {
            torus,
            plane,
            frame: plane_frame(&plane),
            offset: rho * rho + big * big - small * small,
            rho_cos: rho * cos_phi,
            sin_phi,
            cos_phi,
        }
    }

    pub fn torus(&self) -> &TorusParams {
        &self.torus
    }

    pub fn plane(&self) -> &PlaneParams {
        &self.plane
    }

    pub fn frame(&self) -> &PlaneFrame {
        &self.frame
    }

    pub fn is_horizontal(&self) -> bool {
        self.cos_phi.abs() < HORIZONTAL_EPS
    }

    /// The section is empty when the plane is farther from the tube center
    /// circle than the tube radius.
    pub fn is_empty_section(&self) -> bool {
        let reach = self.torus.major() * self.cos_phi.abs() + self.torus.minor();
        self.plane.rho() > reach
    }

    /// Half side of the square in plane coordinates containing the section.
    pub fn disk_radius(&self) -> f64 {
        let outer = self.torus.bounding_radius();
        let rho = self.plane.rho();
        (outer * outer - rho * rho).max(0.0).sqrt()
    }

    /// `rho cos phi - w sin phi`
    fn axis_offset(&self, w: f64) -> f64 {
        self.rho_cos - w * self.sin_phi
    }

    /// Gradient and Hessian `[htt, htw, hww]` of the square-root residual,
    /// `None` on the torus axis where the residual is not differentiable.
    pub(crate) fn residual_derivatives(&self, p: Point2) -> Option<([f64; 2], [f64; 3])> {
        let m = self.axis_offset(p.w);
        let q2 = p.t * p.t + m * m;
        if q2 <= 0.0 {
            return None;
        }
        let q = q2.sqrt();
        let q3 = q2 * q;
        let two_r = 2.0 * self.torus.major();
        let s = self.sin_phi;
        let gt = 2.0 * p.t - two_r * p.t / q;
        let gw = 2.0 * p.w + two_r * m * s / q;
        let htt = 2.0 - two_r * m * m / q3;
        let htw = -two_r * p.t * m * s / q3;
        let hww = 2.0 - two_r * s * s * p.t * p.t / q3;
        Some(([gt, gw], [htt, htw, hww]))
    }
}

/// Square-root form residual. Zero exactly on the section; its sign agrees
/// with the torus residual of the embedded point.
pub fn section_residual(t: f64, w: f64, sp: &SectionProblem) -> f64 {
    let m = sp.axis_offset(w);
    t * t + w * w + sp.offset - 2.0 * sp.torus.major() * (t * t + m * m).sqrt()
}

/// Squared form `(t^2+w^2+K)^2 - 4R^2(t^2 + (rho cos phi - w sin phi)^2)`.
pub fn section_poly_residual(t: f64, w: f64, sp: &SectionProblem) -> f64 {
    let m = sp.axis_offset(w);
    let s = t * t + w * w + sp.offset;
    let rr = sp.torus.major() * sp.torus.major();
    s * s - 4.0 * rr * (t * t + m * m)
}

/// Coefficients of `(t^2 + w^2)^2 + a t^2 + b w^2 + c w + d = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl QuarticCoeffs {
    pub fn eval(&self, t: f64, w: f64) -> f64 {
        let s = t * t + w * w;
        s * s + self.a * t * t + self.b * w * w + self.c * w + self.d
    }
}

pub fn section_coeffs(sp: &SectionProblem) -> QuarticCoeffs {
    let rr4 = 4.0 * sp.torus.major() * sp.torus.major();
    let k = sp.offset;
    let rho = sp.plane.rho();
    QuarticCoeffs {
        a: 2.0 * k - rr4,
        b: 2.0 * k - rr4 * sp.sin_phi * sp.sin_phi,
        c: 2.0 * rr4 * rho * sp.cos_phi * sp.sin_phi,
        d: k * k - rr4 * sp.rho_cos * sp.rho_cos,
    }
}

/// Sign selector for the two `+-` choices of the explicit branch formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Explicit branch `t(w)`:
///
/// ```text
/// t = +-sqrt( -(rho cos phi - w sin phi)^2 + (R +- sqrt(r^2 - (w cos phi + rho sin phi)^2))^2 )
/// ```
///
/// `outer` picks the sign in front of the outer root, `inner` the sign of
/// the tube term. Returns `Ok(None)` when either radicand is negative.
pub fn t_of_w(w: f64, outer: Sign, inner: Sign, sp: &SectionProblem) -> Result<Option<f64>> {
    if sp.is_horizontal() {
        return Err(ToricError::HorizontalPlane);
    }
    let small = sp.torus.minor();
    let z = w * sp.cos_phi + sp.plane.rho() * sp.sin_phi;
    let tube = small * small - z * z;
    if tube < 0.0 {
        return Ok(None);
    }
    let ring = sp.torus.major() + inner.value() * tube.sqrt();
    let m = sp.axis_offset(w);
    let rad = ring * ring - m * m;
    if rad < 0.0 {
        return Ok(None);
    }
    Ok(Some(outer.value() * rad.sqrt()))
}

/// Interval of `w` on which the tube radicand `r^2 - (w cos phi + rho sin phi)^2`
/// is non-negative.
pub fn t_of_w_domain(sp: &SectionProblem) -> Result<(f64, f64)> {
    if sp.is_horizontal() {
        return Err(ToricError::HorizontalPlane);
    }
    let small = sp.torus.minor();
    let shift = sp.plane.rho() * sp.sin_phi;
    let lo = (-small - shift) / sp.cos_phi;
    let hi = (small - shift) / sp.cos_phi;
    Ok((lo.min(hi), lo.max(hi)))
}

/// Samples every real `t(w)` branch value on a uniform `w` grid over the
/// branch domain.
pub fn sample_branches(sp: &SectionProblem, samples: usize) -> Result<Vec<Point2>> {
    let (lo, hi) = t_of_w_domain(sp)?;
    let n = samples.max(2);
    let mut out = Vec::new();
    for k in 0..n {
        let w = lo + (hi - lo) * k as f64 / (n - 1) as f64;
        for inner in Sign::BOTH {
            for outer in Sign::BOTH {
                if let Some(t) = t_of_w(w, outer, inner, sp)? {
                    out.push(Point2::new(t, w));
                }
            }
        }
    }
    Ok(out)
}

/// Traced section as plane-coordinate polylines plus their embedding.
///
/// Closed polylines do not repeat their first point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SectionCurve {
    pub polylines2d: Vec<Vec<Point2>>,
    pub polylines3d: Vec<Vec<Point3>>,
    pub closed: Vec<bool>,
    pub max_torus_residual: f64,
    pub max_plane_residual: f64,
    /// Half side of the square `[-e, e]^2` the curve was traced in.
    pub half_extent: f64,
}

impl SectionCurve {
    pub fn empty(half_extent: f64) -> Self {
        Self {
            half_extent,
            ..Self::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.polylines2d.is_empty()
    }

    pub fn point_count(&self) -> usize {
        self.polylines2d.iter().map(Vec::len).sum()
    }

    pub fn points2d(&self) -> impl Iterator<Item = Point2> + '_ {
        self.polylines2d.iter().flatten().copied()
    }
}

/// Horizontal cutting planes `z = +-rho` give concentric circles about the
/// axis with radii `R +- sqrt(r^2 - rho^2)`.
pub fn horizontal_radii(sp: &SectionProblem) -> Vec<f64> {
    let (big, small, rho) = (sp.torus.major(), sp.torus.minor(), sp.plane.rho());
    if (rho - small).abs() <= 1e-9 * small {
        vec![big]
    } else if rho < small {
        let half = (small * small - rho * rho).sqrt();
        vec![big + half, big - half]
    } else {
        Vec::new()
    }
}

/// Section of a horizontal plane, sampled with `samples` points per circle.
pub fn circles_horizontal(sp: &SectionProblem, samples: usize) -> Result<SectionCurve> {
    if !sp.is_horizontal() {
        return Err(ToricError::InvalidParams(format!(
            "|phi| = 90 degrees required for the horizontal circles (got phi={} deg)",
            sp.plane.phi().to_degrees()
        )));
    }
    let n = samples.max(8);
    let mut curve = SectionCurve::empty(sp.disk_radius());
    for radius in horizontal_radii(sp) {
        let ring = (0..n)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / n as f64;
                Point2::new(radius * a.cos(), radius * a.sin())
            })
            .collect();
        curve.polylines2d.push(ring);
        curve.closed.push(true);
    }
    Ok(embed_section(curve, sp))
}

/// Maps every traced point into model space and records the worst torus
/// and plane residuals.
pub fn embed_section(mut curve: SectionCurve, sp: &SectionProblem) -> SectionCurve {
    let frame = sp.frame();
    let mut max_torus = 0.0f64;
    let mut max_plane = 0.0f64;
    curve.polylines3d = curve
        .polylines2d
        .iter()
        .map(|line| {
            line.iter()
                .map(|p| {
                    let q = frame.embed(p.t, p.w);
                    max_torus = max_torus.max(torus_residual(q, sp.torus()).abs());
                    max_plane = max_plane.max(frame.plane_residual(q).abs());
                    q
                })
                .collect()
        })
        .collect();
    curve.max_torus_residual = max_torus;
    curve.max_plane_residual = max_plane;
    curve
}
