//! The canonical section document shared by the command line tool and the
//! HTTP service, and the single code path that builds it.

use serde::{Deserialize, Serialize};

use crate::bridge::{bridge_geometry, BridgeGeometry, ConeVertex};
use crate::classify::{classify, villarceau_angle, SectionClass, DEFAULT_TOL};
use crate::error::{Result, ToricError};
use crate::geometry::{PlaneParams, TorusParams};
use crate::section::{section_coeffs, trace_section, QuarticCoeffs, SectionCurve, SectionProblem};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_RESOLUTION: usize = 4096;

/// User-facing parameters. Angles are degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionRequest {
    #[serde(rename = "R")]
    pub major: f64,
    #[serde(rename = "r")]
    pub minor: f64,
    pub rho: f64,
    pub alpha_deg: f64,
    pub phi_deg: f64,
    pub resolution: usize,
    pub tol: f64,
}

impl SectionRequest {
    pub fn new(major: f64, minor: f64, rho: f64, alpha_deg: f64, phi_deg: f64) -> Self {
        Self {
            major,
            minor,
            rho,
            alpha_deg,
            phi_deg,
            resolution: crate::section::DEFAULT_RESOLUTION,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.resolution = resolution;
        self
    }

    /// Checks every range invariant and builds the kernel problem.
    pub fn problem(&self) -> Result<SectionProblem> {
        if !self.phi_deg.is_finite() || self.phi_deg.abs() > 90.0 {
            return Err(ToricError::InvalidParams(format!(
                "|phi| <= 90 degrees required (got phi={})",
                self.phi_deg
            )));
        }
        if !(crate::section::MIN_RESOLUTION..=MAX_RESOLUTION).contains(&self.resolution) {
            return Err(ToricError::InvalidParams(format!(
                "resolution in [{}, {MAX_RESOLUTION}] required (got {})",
                crate::section::MIN_RESOLUTION,
                self.resolution
            )));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-2) {
            return Err(ToricError::InvalidParams(format!(
                "tolerance in (0, 1e-2] required (got {})",
                self.tol
            )));
        }
        let torus = TorusParams::new(self.major, self.minor)?;
        let plane = PlaneParams::new(
            self.alpha_deg.to_radians(),
            self.phi_deg.to_radians(),
            self.rho,
        )?;
        Ok(SectionProblem::new(torus, plane))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub max_torus: f64,
    pub max_plane: f64,
}

/// Schema v1. Field order here is the serialized order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionDocument {
    pub schema_version: u32,
    pub params: SectionRequest,
    pub classification: SectionClass,
    pub coefficients: QuarticCoeffs,
    /// Half side of the square the curve was traced in.
    pub half_extent: f64,
    pub polylines2d: Vec<Vec<[f64; 2]>>,
    pub polylines3d: Vec<Vec<[f64; 3]>>,
    pub closed: Vec<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bridge: Option<BridgeGeometry>,
    pub residuals: Residuals,
}

impl SectionDocument {
    pub fn new(
        params: SectionRequest,
        classification: SectionClass,
        coefficients: QuarticCoeffs,
        curve: &SectionCurve,
        bridge: Option<BridgeGeometry>,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            params,
            classification,
            coefficients,
            half_extent: curve.half_extent,
            polylines2d: curve
                .polylines2d
                .iter()
                .map(|l| l.iter().map(|p| [p.t, p.w]).collect())
                .collect(),
            polylines3d: curve
                .polylines3d
                .iter()
                .map(|l| l.iter().map(|p| [p.x, p.y, p.z]).collect())
                .collect(),
            closed: curve.closed.clone(),
            bridge,
            residuals: Residuals {
                max_torus: curve.max_torus_residual,
                max_plane: curve.max_plane_residual,
            },
        }
    }

    /// Finite numbers everywhere and matching polyline shapes.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| {
            Err(ToricError::InvalidDocument(format!(
                "{what} must be finite"
            )))
        };
        let p = &self.params;
        if ![p.major, p.minor, p.rho, p.alpha_deg, p.phi_deg, p.tol]
            .iter()
            .all(|v| v.is_finite())
        {
            return bad("params");
        }
        let q = &self.coefficients;
        if ![q.a, q.b, q.c, q.d, self.half_extent]
            .iter()
            .all(|v| v.is_finite())
        {
            return bad("coefficients");
        }
        if !self.classification.is_finite() {
            return bad("classification detail");
        }
        if !(self.residuals.max_torus.is_finite() && self.residuals.max_plane.is_finite()) {
            return bad("residuals");
        }
        if self.polylines2d.len() != self.polylines3d.len()
            || self.polylines2d.len() != self.closed.len()
        {
            return Err(ToricError::InvalidDocument(
                "polylines2d, polylines3d and closed must have equal lengths".into(),
            ));
        }
        for (a, b) in self.polylines2d.iter().zip(&self.polylines3d) {
            if a.len() != b.len() {
                return Err(ToricError::InvalidDocument(
                    "polylines2d and polylines3d must have equal point counts".into(),
                ));
            }
            if !a
                .iter()
                .flatten()
                .chain(b.iter().flatten())
                .all(|v| v.is_finite())
            {
                return bad("polyline coordinates");
            }
        }
        if let Some(bridge) = &self.bridge {
            let mut nums = vec![bridge.circle_radius, bridge.k];
            for c in &bridge.circle_centers {
                nums.extend([c.z, c.y]);
            }
            if let ConeVertex::Finite(v) = bridge.cone_vertex {
                nums.extend([v.x, v.y, v.z]);
            }
            if !nums.iter().all(|v| v.is_finite()) {
                return bad("bridge");
            }
        }
        Ok(())
    }
}

/// Validates, traces, classifies and assembles the document.
pub fn build_document(req: &SectionRequest) -> Result<SectionDocument> {
    let sp = req.problem()?;
    let curve = trace_section(&sp, req.resolution)?;
    let class = classify(&sp, req.tol)?;
    let bridge = bridge_geometry(&sp).ok();
    Ok(SectionDocument::new(
        *req,
        class,
        section_coeffs(&sp),
        &curve,
        bridge,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preset {
    pub name: String,
    /// Tag the preset classifies as.
    pub class: String,
    #[serde(rename = "R")]
    pub major: f64,
    #[serde(rename = "r")]
    pub minor: f64,
    pub rho: f64,
    pub alpha_deg: f64,
    pub phi_deg: f64,
}

/// Named parameter sets derived from the defining conditions of each class
/// for a torus `(R, r)`. The lemniscate preset keeps `r` and sets `R = 2r`.
/// `class` is what the parameters classify as; on a torus with `R = 2r`
/// the Cassini and hippopede presets coincide with the lemniscate.
pub fn presets(tp: &TorusParams) -> Vec<Preset> {
    let (big, small) = (tp.major(), tp.minor());
    let preset = |name: &str, big: f64, rho: f64, phi_deg: f64| {
        let class = SectionRequest::new(big, small, rho, 0.0, phi_deg)
            .problem()
            .and_then(|sp| classify(&sp, DEFAULT_TOL))
            .map(|c| c.tag())
            .unwrap_or("Generic");
        Preset {
            name: name.to_string(),
            class: class.to_string(),
            major: big,
            minor: small,
            rho,
            alpha_deg: 0.0,
            phi_deg,
        }
    };
    vec![
        preset("Villarceau", big, 0.0, villarceau_angle(tp).to_degrees()),
        preset("Cassini", big, small, 0.0),
        preset("Lemniscate", 2.0 * small, small, 0.0),
        preset("Hippopede", big, big - small, 0.0),
        preset("Central", big, 0.0, 30.0),
        preset("Horizontal", big, 0.0, 90.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_validation_names_invariant() {
        let err = SectionRequest::new(1.0, 2.0, 0.0, 0.0, 0.0)
            .problem()
            .unwrap_err();
        assert!(err.to_string().contains("R >= r"), "{err}");
        let err = SectionRequest::new(3.0, 1.0, -1.0, 0.0, 0.0)
            .problem()
            .unwrap_err();
        assert!(err.to_string().contains("rho >= 0"), "{err}");
        let err = SectionRequest::new(3.0, 1.0, 0.0, 0.0, 91.0)
            .problem()
            .unwrap_err();
        assert!(err.to_string().contains("|phi| <= 90"), "{err}");
        let err = SectionRequest::new(3.0, 1.0, 0.0, 0.0, 0.0)
            .with_resolution(8)
            .problem()
            .unwrap_err();
        assert!(err.to_string().contains("resolution"), "{err}");
        let err = SectionRequest::new(3.0, 1.0, 0.0, 0.0, 0.0)
            .with_resolution(MAX_RESOLUTION + 1)
            .problem()
            .unwrap_err();
        assert!(err.to_string().contains("resolution"), "{err}");
    }

    #[test]
    fn degrees_round_trip() {
        for deg in [-90.0, -37.5, 0.0, 12.25, 60.0, 90.0] {
            let rad: f64 = f64::to_radians(deg);
            assert!((rad.to_degrees().to_radians() - rad).abs() <= 1e-12);
        }
    }

    #[test]
    fn presets_classify_as_named() {
        let tp = TorusParams::new(3.0, 1.0).unwrap();
        for p in presets(&tp) {
            let req = SectionRequest::new(p.major, p.minor, p.rho, p.alpha_deg, p.phi_deg);
            let class = classify(&req.problem().unwrap(), DEFAULT_TOL).unwrap();
            assert_eq!(class.tag(), p.class, "preset {}", p.name);
        }
        let named: Vec<String> = presets(&tp).into_iter().map(|p| p.class).collect();
        assert_eq!(
            named,
            [
                "Villarceau",
                "CassiniOval",
                "BernoulliLemniscate",
                "HippopedeOfProclus",
                "CentralGeneric",
                "HorizontalCircles"
            ]
        );
        let tp = TorusParams::new(2.0, 1.0).unwrap();
        assert_eq!(presets(&tp)[1].class, "BernoulliLemniscate");
    }

    #[test]
    fn empty_section_document() {
        let doc =
            build_document(&SectionRequest::new(3.0, 1.0, 5.0, 0.0, 10.0).with_resolution(64))
                .unwrap();
        assert_eq!(doc.classification, SectionClass::Empty);
        assert!(doc.polylines2d.is_empty());
        doc.validate().unwrap();
    }
}
