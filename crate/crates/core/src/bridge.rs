//! Cone-cylinder construction of a toric section.
//!
//! Substituting `x^2 = k^2 z^2 - (rho cos phi - y sin phi)^2` into the
//! square-root section equation removes the root and leaves a pair of
//! ellipses in the `(z, y)` plane; `k = cos phi` makes them circles
//!
//! ```text
//! (z +- R / cos phi)^2 + (y + rho tan phi)^2 = r^2 / cos^2 phi
//! ```
//!
//! Lifting a circle point perpendicular to the `(z, y)` plane onto the cone
//! `z^2 = (x / cos phi)^2 + (rho - y tan phi)^2` and projecting onto the
//! `(x, y)` plane lands on the section (with `(x, y)` read as `(t, w)`).
//!
//! Axis order: every 2D point of the source circles is stored as `(z, y)`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ToricError};
use crate::geometry::{Point2, Point3};
use crate::section::{section_residual, SectionProblem};

/// A point of the `(z, y)` working plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZyPoint {
    pub z: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "point", rename_all = "snake_case")]
pub enum ConeVertex {
    Finite(Point3),
    /// `tan phi = 0` with `rho > 0`: the cone degenerates to a cylinder.
    AtInfinity,
    /// `tan phi = 0` and `rho = 0`: the cone is the plane pair `z = +-x`.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BridgeGeometry {
    /// Centers `(+-R / cos phi, -rho tan phi)` as `(z, y)`; the first has
    /// positive `z`.
    pub circle_centers: [ZyPoint; 2],
    pub circle_radius: f64,
    pub cone_vertex: ConeVertex,
    pub k: f64,
}

const TAN_EPS: f64 = 1e-12;

fn ensure_defined(sp: &SectionProblem) -> Result<(f64, f64)> {
    let (s, c) = sp.plane().phi().sin_cos();
    if c.abs() < 1e-12 {
        return Err(ToricError::BridgeUndefined);
    }
    Ok((s, c))
}

pub fn bridge_geometry(sp: &SectionProblem) -> Result<BridgeGeometry> {
    let (_, c) = ensure_defined(sp)?;
    let tan = sp.plane().phi().tan();
    let (big, small, rho) = (sp.torus().major(), sp.torus().minor(), sp.plane().rho());
    let y = -rho * tan;
    let cone_vertex = if tan.abs() >= TAN_EPS {
        ConeVertex::Finite(Point3::new(0.0, rho / tan, 0.0))
    } else if rho > 0.0 {
        ConeVertex::AtInfinity
    } else {
        ConeVertex::Degenerate
    };
    Ok(BridgeGeometry {
        circle_centers: [ZyPoint { z: big / c, y }, ZyPoint { z: -big / c, y }],
        circle_radius: small / c,
        cone_vertex,
        k: c,
    })
}

/// `z^2 - (x / cos phi)^2 - (rho - y tan phi)^2`
pub fn bridge_cone_residual(p: Point3, sp: &SectionProblem) -> Result<f64> {
    let (_, c) = ensure_defined(sp)?;
    let tan = sp.plane().phi().tan();
    let a = p.x / c;
    let b = sp.plane().rho() - p.y * tan;
    Ok(p.z * p.z - a * a - b * b)
}

/// Residual of `(z +- R/cos phi)^2 + (y + rho tan phi)^2 = r^2/cos^2 phi` for
/// the given source circle, evaluated at a lifted point.
pub fn bridge_circle_residual(p: Point3, circle: SourceCircle, geom: &BridgeGeometry) -> f64 {
    let center = geom.circle_centers[circle.index()];
    let dz = p.z - center.z;
    let dy = p.y - center.y;
    dz * dz + dy * dy - geom.circle_radius * geom.circle_radius
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SourceCircle {
    First,
    Second,
}

impl SourceCircle {
    pub fn index(self) -> usize {
        match self {
            SourceCircle::First => 0,
            SourceCircle::Second => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BridgePoint {
    pub source: SourceCircle,
    /// Intersection of the perpendicular through the circle point with the
    /// cone.
    pub lifted: Point3,
    /// Projection of `lifted` onto the `(x, y)` plane.
    pub projected: Point2,
}

/// Sweeps both source circles with `samples` uniformly spaced angles each.
/// Circle points whose perpendicular misses the cone contribute nothing;
/// the others contribute the `+-x` pair.
pub fn bridge_construct(sp: &SectionProblem, samples: usize) -> Result<Vec<BridgePoint>> {
    if samples < 8 {
        return Err(ToricError::InvalidParams(format!(
            "samples >= 8 required (got {samples})"
        )));
    }
    let (s, c) = ensure_defined(sp)?;
    let geom = bridge_geometry(sp)?;
    let rho = sp.plane().rho();
    let mut out = Vec::new();
    for source in [SourceCircle::First, SourceCircle::Second] {
        let center = geom.circle_centers[source.index()];
        for k in 0..samples {
            let a = std::f64::consts::TAU * k as f64 / samples as f64;
            let z = center.z + geom.circle_radius * a.cos();
            let y = center.y + geom.circle_radius * a.sin();
            let m = rho * c - y * s;
            let rad = z * z * c * c - m * m;
            if rad < 0.0 {
                continue;
            }
            let x = rad.sqrt();
            for x in [x, -x] {
                out.push(BridgePoint {
                    source,
                    lifted: Point3::new(x, y, z),
                    projected: Point2::new(x, y),
                });
            }
        }
    }
    Ok(out)
}

/// Max `|section_residual|` over the constructed points; zero when nothing
/// is constructed.
pub fn verify_bridge_equivalence(sp: &SectionProblem, samples: usize) -> Result<f64> {
    let pts = bridge_construct(sp, samples)?;
    Ok(max_residual(&pts, sp))
}

pub fn max_residual(pts: &[BridgePoint], sp: &SectionProblem) -> f64 {
    pts.iter()
        .map(|p| section_residual(p.projected.t, p.projected.w, sp).abs())
        .fold(0.0, f64::max)
}
