//! Named toric sections and checks of their defining metric properties.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Result, ToricError};
use crate::geometry::{Point2, TorusParams};
use crate::section::{horizontal_radii, SectionCurve, SectionProblem};

/// Tolerance for programmatic classification.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Tolerance used by interactive front ends so that quantized slider
/// positions can land on a named class.
pub const UI_TOL: f64 = 1e-3;

/// Section taxonomy. Tags are mutually exclusive; when several conditions
/// hold the most specific one wins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", content = "detail")]
pub enum SectionClass {
    Empty,
    HorizontalCircles {
        radii: Vec<f64>,
    },
    CentralGeneric,
    /// `plane_angle` is the inclination to the equatorial plane,
    /// `axis_angle` the angle to the rotation axis; both in radians.
    Villarceau {
        plane_angle: f64,
        axis_angle: f64,
    },
    SpiricGeneric,
    CassiniOval {
        b_squared: f64,
        c: f64,
    },
    BernoulliLemniscate {
        b_squared: f64,
        c: f64,
    },
    HippopedeOfProclus,
    Generic,
}

impl SectionClass {
    pub fn tag(&self) -> &'static str {
        match self {
            SectionClass::Empty => "Empty",
            SectionClass::HorizontalCircles { .. } => "HorizontalCircles",
            SectionClass::CentralGeneric => "CentralGeneric",
            SectionClass::Villarceau { .. } => "Villarceau",
            SectionClass::SpiricGeneric => "SpiricGeneric",
            SectionClass::CassiniOval { .. } => "CassiniOval",
            SectionClass::BernoulliLemniscate { .. } => "BernoulliLemniscate",
            SectionClass::HippopedeOfProclus => "HippopedeOfProclus",
            SectionClass::Generic => "Generic",
        }
    }

    pub fn is_cassini(&self) -> bool {
        matches!(
            self,
            SectionClass::CassiniOval { .. } | SectionClass::BernoulliLemniscate { .. }
        )
    }

    /// Finite-ness of every payload number.
    pub fn is_finite(&self) -> bool {
        match self {
            SectionClass::HorizontalCircles { radii } => radii.iter().all(|r| r.is_finite()),
            SectionClass::Villarceau {
                plane_angle,
                axis_angle,
            } => plane_angle.is_finite() && axis_angle.is_finite(),
            SectionClass::CassiniOval { b_squared, c }
            | SectionClass::BernoulliLemniscate { b_squared, c } => {
                b_squared.is_finite() && c.is_finite()
            }
            _ => true,
        }
    }
}

/// One-line human readable report, angles in degrees.
impl fmt::Display for SectionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionClass::HorizontalCircles { radii } if !radii.is_empty() => {
                let list: Vec<String> = radii.iter().map(|r| format!("{r:.3}")).collect();
                write!(f, "HorizontalCircles (radii {})", list.join(", "))
            }
            SectionClass::Villarceau { plane_angle, .. } => {
                write!(
                    f,
                    "Villarceau (plane angle {:.3}°)",
                    plane_angle.to_degrees()
                )
            }
            SectionClass::CassiniOval { b_squared, c }
            | SectionClass::BernoulliLemniscate { b_squared, c } => {
                write!(f, "{} (b² = {b_squared:.3}, c = {c:.3})", self.tag())
            }
            _ => f.write_str(self.tag()),
        }
    }
}

/// `arctan(sqrt(R^2 - r^2) / r)`: the angle between the bitangent plane
/// through the center and the rotation axis. A central plane whose normal
/// has this elevation cuts the torus in two circles of radius `R`; its
/// inclination to the equatorial plane is the complement, `arcsin(r / R)`.
pub fn villarceau_angle(tp: &TorusParams) -> f64 {
    let (big, small) = (tp.major(), tp.minor());
    ((big * big - small * small).max(0.0).sqrt() / small).atan()
}

pub fn classify(sp: &SectionProblem, tol: f64) -> Result<SectionClass> {
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(ToricError::InvalidParams(format!(
            "classification tolerance must lie in (0, 1e-2] (got {tol})"
        )));
    }
    let tp = sp.torus();
    let (big, small) = (tp.major(), tp.minor());
    let (phi, rho) = (sp.plane().phi().abs(), sp.plane().rho());

    // farther from the tube center circle than the tube radius
    if rho - (big * phi.cos() + small) > tol * big {
        return Ok(SectionClass::Empty);
    }
    if (FRAC_PI_2 - phi).abs() <= tol {
        return Ok(SectionClass::HorizontalCircles {
            radii: horizontal_radii(sp),
        });
    }
    if rho <= tol * big {
        let axis_angle = villarceau_angle(tp);
        return Ok(if (phi - axis_angle).abs() <= tol {
            SectionClass::Villarceau {
                plane_angle: FRAC_PI_2 - phi,
                axis_angle: phi,
            }
        } else {
            SectionClass::CentralGeneric
        });
    }
    if phi <= tol {
        let cassini = (rho - small).abs() <= tol * small;
        let class = if cassini && (big - 2.0 * small).abs() <= tol * small {
            SectionClass::BernoulliLemniscate {
                b_squared: 2.0 * big * small,
                c: big,
            }
        } else if cassini {
            SectionClass::CassiniOval {
                b_squared: 2.0 * big * small,
                c: big,
            }
        } else if (rho - (big - small)).abs() <= tol * big {
            SectionClass::HippopedeOfProclus
        } else {
            SectionClass::SpiricGeneric
        };
        return Ok(class);
    }
    Ok(SectionClass::Generic)
}

/// Largest relative deviation of `|P F1| |P F2|` from `b^2 = 2Rr` over the
/// traced points, with foci `(+-R, 0)` in plane coordinates.
pub fn verify_cassini_property(curve: &SectionCurve, sp: &SectionProblem) -> Result<f64> {
    let class = classify(sp, DEFAULT_TOL)?;
    if !class.is_cassini() {
        return Err(ToricError::NotCassini(class.tag().to_string()));
    }
    let big = sp.torus().major();
    let b2 = 2.0 * big * sp.torus().minor();
    let (f1, f2) = (Point2::new(big, 0.0), Point2::new(-big, 0.0));
    Ok(curve
        .points2d()
        .map(|p| ((p.dist(f1) * p.dist(f2) - b2) / b2).abs())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleFit {
    pub center: Point2,
    pub radius: f64,
    pub max_radial_deviation: f64,
}

/// Least-squares circle: algebraic fit refined by Gauss-Newton on the
/// geometric distances. `None` for fewer than three points or collinear
/// input.
pub fn fit_circle(points: &[Point2]) -> Option<CircleFit> {
    if points.len() < 3 {
        return None;
    }
    let n = points.len() as f64;
    let mean = points.iter().fold(Point2::default(), |acc, p| {
        Point2::new(acc.t + p.t / n, acc.w + p.w / n)
    });
    // x^2 + y^2 + D x + E y + F = 0 on centered coordinates
    let mut ata = Matrix3::<f64>::zeros();
    let mut atb = Vector3::<f64>::zeros();
    for p in points {
        let (x, y) = (p.t - mean.t, p.w - mean.w);
        let row = Vector3::new(x, y, 1.0);
        ata += row * row.transpose();
        atb += row * (-(x * x + y * y));
    }
    let sol = ata.lu().solve(&atb)?;
    let (mut cx, mut cy) = (-0.5 * sol[0], -0.5 * sol[1]);
    let mut radius = (cx * cx + cy * cy - sol[2]).max(0.0).sqrt();

    for _ in 0..20 {
        let mut jtj = Matrix3::<f64>::zeros();
        let mut jtr = Vector3::<f64>::zeros();
        for p in points {
            let (dx, dy) = (p.t - mean.t - cx, p.w - mean.w - cy);
            let d = dx.hypot(dy);
            if d == 0.0 {
                continue;
            }
            let j = Vector3::new(-dx / d, -dy / d, -1.0);
            let res = d - radius;
            jtj += j * j.transpose();
            jtr += j * res;
        }
        let Some(step) = jtj.lu().solve(&(-jtr)) else {
            break;
        };
        cx += step[0];
        cy += step[1];
        radius += step[2];
        if step.norm() <= 1e-15 * (1.0 + radius) {
            break;
        }
    }
    let center = Point2::new(cx + mean.t, cy + mean.w);
    let max_radial_deviation = points
        .iter()
        .map(|p| (p.dist(center) - radius).abs())
        .fold(0.0, f64::max);
    Some(CircleFit {
        center,
        radius,
        max_radial_deviation,
    })
}

/// Circle fit for every polyline of a curve.
pub fn fit_components(curve: &SectionCurve) -> Vec<Option<CircleFit>> {
    curve.polylines2d.iter().map(|l| fit_circle(l)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VillarceauReport {
    pub fits: Vec<CircleFit>,
    pub expected_radius: f64,
    /// max over components of `|radius - R| / R`
    pub max_radius_error: f64,
    /// max over components of the radial deviation relative to `R`
    pub max_deviation: f64,
}

impl VillarceauReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_radius_error <= tol && self.max_deviation <= tol
    }
}

pub fn verify_villarceau_circles(
    curve: &SectionCurve,
    sp: &SectionProblem,
) -> Result<VillarceauReport> {
    let class = classify(sp, DEFAULT_TOL)?;
    if !matches!(class, SectionClass::Villarceau { .. }) {
        return Err(ToricError::NotVillarceau(class.tag().to_string()));
    }
    if curve.polylines2d.len() != 2 {
        return Err(ToricError::ComponentCount(curve.polylines2d.len()));
    }
    let big = sp.torus().major();
    let fits: Vec<CircleFit> = curve
        .polylines2d
        .iter()
        .map(|l| fit_circle(l).ok_or(ToricError::ComponentCount(curve.polylines2d.len())))
        .collect::<Result<_>>()?;
    let max_radius_error = fits
        .iter()
        .map(|f| (f.radius - big).abs() / big)
        .fold(0.0, f64::max);
    let max_deviation = fits
        .iter()
        .map(|f| f.max_radial_deviation / big)
        .fold(0.0, f64::max);
    Ok(VillarceauReport {
        fits,
        expected_radius: big,
        max_radius_error,
        max_deviation,
    })
}
