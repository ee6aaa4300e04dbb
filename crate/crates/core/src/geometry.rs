//! Torus, cone and plane primitives.
//!
//! All angles are radians. The plane is described by the spherical
//! coordinates of its normal foot point `Q`: azimuth `alpha`, elevation
//! `phi` and distance `rho` from the torus center.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Result, ToricError};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub t: f64,
    pub w: f64,
}

impl Point2 {
    pub const fn new(t: f64, w: f64) -> Self {
        Self { t, w }
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self.t - other.t).hypot(self.w - other.w)
    }

    pub fn norm(self) -> f64 {
        self.t.hypot(self.w)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.t - rhs.t, self.w - rhs.w)
    }
}

/// A point or vector in model space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Point3> for f64 {
    type Output = Point3;
    fn mul(self, p: Point3) -> Point3 {
        Point3::new(self * p.x, self * p.y, self * p.z)
    }
}

/// Ring torus centered at the origin, revolving about the z axis.
///
/// Invariant: `major >= minor > 0`. Spindle and horn-crossing tori
/// (`minor > major`) are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusParams {
    major: f64,
    minor: f64,
}

impl TorusParams {
    pub fn new(major: f64, minor: f64) -> Result<Self> {
        if !major.is_finite() || !minor.is_finite() {
            return Err(ToricError::InvalidParams(format!(
                "R and r must be finite (got R={major}, r={minor})"
            )));
        }
        if minor <= 0.0 {
            return Err(ToricError::InvalidParams(format!(
                "r > 0 required (got r={minor})"
            )));
        }
        if major < minor {
            return Err(ToricError::InvalidParams(format!(
                "R >= r required (got R={major}, r={minor})"
            )));
        }
        Ok(Self { major, minor })
    }

    /// Major radius `R`: distance from the axis to the tube center.
    pub fn major(&self) -> f64 {
        self.major
    }

    /// Minor radius `r`: tube radius.
    pub fn minor(&self) -> f64 {
        self.minor
    }

    /// Radius of a ball centered at the origin that contains the torus.
    pub fn bounding_radius(&self) -> f64 {
        self.major + self.minor
    }
}

/// Right circular double cone with apex at the origin and axis z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeParams {
    half_aperture: f64,
}

impl ConeParams {
    pub fn new(half_aperture: f64) -> Result<Self> {
        if !(half_aperture > 0.0 && half_aperture < FRAC_PI_2) {
            return Err(ToricError::InvalidParams(format!(
                "0 < theta < pi/2 required (got theta={half_aperture})"
            )));
        }
        Ok(Self { half_aperture })
    }

    pub fn half_aperture(&self) -> f64 {
        self.half_aperture
    }

    /// Point on the generator at signed distance `s` from the apex,
    /// rotated by `psi` about z.
    pub fn point(&self, s: f64, psi: f64) -> Point3 {
        let (st, ct) = self.half_aperture.sin_cos();
        Point3::new(s * st * psi.cos(), s * st * psi.sin(), s * ct)
    }
}

/// Cutting plane given by the normal foot point `Q = rho * n(alpha, phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneParams {
    alpha: f64,
    phi: f64,
    rho: f64,
}

impl PlaneParams {
    /// `alpha` is normalized to `[0, 2pi)`. `phi` must lie in
    /// `[-pi/2, pi/2]` and `rho` must be non-negative.
    pub fn new(alpha: f64, phi: f64, rho: f64) -> Result<Self> {
        if !alpha.is_finite() || !phi.is_finite() || !rho.is_finite() {
            return Err(ToricError::InvalidParams(format!(
                "plane parameters must be finite (got alpha={alpha}, phi={phi}, rho={rho})"
            )));
        }
        if rho < 0.0 {
            return Err(ToricError::InvalidParams(format!(
                "rho >= 0 required (got rho={rho})"
            )));
        }
        if phi.abs() > FRAC_PI_2 {
            return Err(ToricError::InvalidParams(format!(
                "|phi| <= 90 degrees required (got phi={} deg)",
                phi.to_degrees()
            )));
        }
        let mut alpha = alpha.rem_euclid(TAU);
        if alpha >= TAU {
            alpha = 0.0;
        }
        Ok(Self { alpha, phi, rho })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// Orthonormal frame of the cutting plane.
///
/// `axis_t` is horizontal (zero z component) and `axis_w` is the in-plane
/// direction perpendicular to it. The orientation is fixed by
/// `axis_w x axis_t = normal`, so `(t, w)` is counter-clockwise when the
/// plane is viewed from the side the normal points away from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneFrame {
    pub origin: Point3,
    pub axis_t: Point3,
    pub axis_w: Point3,
    pub normal: Point3,
    pub rho: f64,
}

pub fn plane_frame(pp: &PlaneParams) -> PlaneFrame {
    let (sa, ca) = pp.alpha.sin_cos();
    let (sp, cp) = pp.phi.sin_cos();
    let normal = Point3::new(ca * cp, sa * cp, sp);
    PlaneFrame {
        origin: pp.rho * normal,
        axis_t: Point3::new(sa, -ca, 0.0),
        axis_w: Point3::new(-ca * sp, -sa * sp, cp),
        normal,
        rho: pp.rho,
    }
}

impl PlaneFrame {
    /// Maps in-plane coordinates to model space.
    pub fn embed(&self, t: f64, w: f64) -> Point3 {
        self.origin + t * self.axis_t + w * self.axis_w
    }

    /// Orthogonal projection of a model-space point to in-plane coordinates.
    pub fn project(&self, p: Point3) -> Point2 {
        let d = p - self.origin;
        Point2::new(d.dot(self.axis_t), d.dot(self.axis_w))
    }

    /// Signed distance `n . p - rho`.
    pub fn plane_residual(&self, p: Point3) -> f64 {
        self.normal.dot(p) - self.rho
    }
}

pub fn plane_embed(t: f64, w: f64, frame: &PlaneFrame) -> Point3 {
    frame.embed(t, w)
}

/// `u` runs around the tube, `v` around the z axis.
pub fn torus_point(u: f64, v: f64, tp: &TorusParams) -> Point3 {
    let ring = tp.major + tp.minor * u.cos();
    Point3::new(ring * v.cos(), ring * v.sin(), tp.minor * u.sin())
}

/// `(sqrt(x^2 + y^2) - R)^2 + z^2 - r^2`: negative inside the tube,
/// positive outside.
pub fn torus_residual(p: Point3, tp: &TorusParams) -> f64 {
    let d = p.x.hypot(p.y) - tp.major;
    d * d + p.z * p.z - tp.minor * tp.minor
}

/// Polynomial form `(x^2+y^2+z^2+R^2-r^2)^2 - 4R^2(x^2+y^2)`.
pub fn torus_poly_residual(p: Point3, tp: &TorusParams) -> f64 {
    let rr = tp.major * tp.major;
    let planar = p.x * p.x + p.y * p.y;
    let s = planar + p.z * p.z + rr - tp.minor * tp.minor;
    s * s - 4.0 * rr * planar
}

pub fn cone_residual(p: Point3, cp: &ConeParams) -> f64 {
    let (st, ct) = cp.half_aperture.sin_cos();
    (p.x * p.x + p.y * p.y) * ct * ct - p.z * p.z * st * st
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn close(a: Point3, b: Point3, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn torus_point_examples() {
        let tp = TorusParams::new(3.0, 1.0).unwrap();
        assert!(close(
            torus_point(0.0, 0.0, &tp),
            Point3::new(4.0, 0.0, 0.0),
            1e-15
        ));
        assert!(close(
            torus_point(PI, 0.0, &tp),
            Point3::new(2.0, 0.0, 0.0),
            1e-15
        ));
        // (R + r cos u) = 3, (cos v, sin v) = (0, 1), z = r sin u = 1
        assert!(close(
            torus_point(FRAC_PI_2, FRAC_PI_2, &tp),
            Point3::new(0.0, 3.0, 1.0),
            1e-15
        ));
    }

    #[test]
    fn residual_examples() {
        let tp = TorusParams::new(3.0, 1.0).unwrap();
        assert_eq!(torus_residual(Point3::new(4.0, 0.0, 0.0), &tp), 0.0);
        assert_eq!(torus_residual(Point3::new(3.0, 0.0, 0.0), &tp), -1.0);
        assert_eq!(torus_residual(Point3::new(0.0, 0.0, 5.0), &tp), 33.0);
        assert_eq!(torus_poly_residual(Point3::new(4.0, 0.0, 0.0), &tp), 0.0);
        assert_eq!(torus_poly_residual(Point3::new(2.0, 0.0, 0.0), &tp), 0.0);
    }

    #[test]
    fn cone_examples() {
        let cp = ConeParams::new(FRAC_PI_4).unwrap();
        assert_eq!(cone_residual(Point3::default(), &cp), 0.0);
        assert!(cone_residual(Point3::new(1.0, 0.0, 1.0), &cp).abs() < 1e-15);
        let cp = ConeParams::new(0.3).unwrap();
        let s = 2.0;
        let p = Point3::new(0.3f64.sin() * s, 0.0, 0.3f64.cos() * s);
        assert!(cone_residual(p, &cp).abs() < 1e-15);
        assert!(cone_residual(cp.point(1.7, 2.1), &cp).abs() < 1e-15);
        assert!(ConeParams::new(0.0).is_err());
        assert!(ConeParams::new(FRAC_PI_2).is_err());
    }

    #[test]
    fn validation() {
        assert!(TorusParams::new(1.0, 2.0).is_err());
        assert!(TorusParams::new(1.0, 0.0).is_err());
        assert!(TorusParams::new(f64::NAN, 1.0).is_err());
        assert!(TorusParams::new(1.0, 1.0).is_ok());
        let msg = TorusParams::new(1.0, 2.0).unwrap_err().to_string();
        assert!(msg.contains("R >= r"), "{msg}");
        assert!(PlaneParams::new(0.0, 0.0, -1.0).is_err());
        assert!(PlaneParams::new(0.0, 1.6, 1.0).is_err());
        assert!(PlaneParams::new(0.0, -FRAC_PI_2, 1.0).is_ok());
        let pp = PlaneParams::new(-FRAC_PI_2, 0.0, 0.0).unwrap();
        assert!((pp.alpha() - 1.5 * PI).abs() < 1e-15);
        let pp = PlaneParams::new(3.0 * TAU, 0.0, 0.0).unwrap();
        assert!(pp.alpha() >= 0.0 && pp.alpha() < TAU);
    }

    #[test]
    fn frame_examples() {
        let f = plane_frame(&PlaneParams::new(0.0, 0.0, 2.0).unwrap());
        assert!(close(f.origin, Point3::new(2.0, 0.0, 0.0), 1e-15));
        assert!(close(f.normal, Point3::new(1.0, 0.0, 0.0), 1e-15));
        assert!(close(f.axis_t, Point3::new(0.0, -1.0, 0.0), 1e-15));
        assert!(close(f.axis_w, Point3::new(0.0, 0.0, 1.0), 1e-15));

        let f = plane_frame(&PlaneParams::new(0.0, FRAC_PI_2, 1.0).unwrap());
        assert!(close(f.origin, Point3::new(0.0, 0.0, 1.0), 1e-15));
        assert!(close(f.normal, Point3::new(0.0, 0.0, 1.0), 1e-15));

        let f = plane_frame(&PlaneParams::new(0.0, 0.0, 0.0).unwrap());
        assert!(close(
            plane_embed(1.0, 0.0, &f),
            Point3::new(0.0, -1.0, 0.0),
            1e-15
        ));
        assert_eq!(plane_embed(0.0, 0.0, &f), f.origin);
    }

    #[test]
    fn frame_orientation() {
        for k in 0..50 {
            let a = k as f64 * 0.37;
            let p = (k as f64 * 0.11).sin() * FRAC_PI_2;
            let f = plane_frame(&PlaneParams::new(a, p, 1.5).unwrap());
            assert!(close(f.axis_w.cross(f.axis_t), f.normal, 1e-12));
            assert!(close(f.axis_t.cross(f.axis_w), -f.normal, 1e-12));
            assert_eq!(f.axis_t.z, 0.0);
        }
    }
}
