//! Torus-plane sections.
//!
//! Builds the in-plane equation of the curve cut from a ring torus by an
//! arbitrary plane, traces it as polylines, classifies the named special
//! cases (Villarceau circles, Cassini ovals, the lemniscate of Bernoulli,
//! hippopedes), reproduces the curve as the projection of a cone-cylinder
//! intersection and serializes the results.
//!
//! Angles are radians throughout the kernel; [`document::SectionRequest`]
//! is the degree-based boundary used by the CLI and the HTTP service.

pub mod bridge;
pub mod classify;
pub mod document;
pub mod error;
pub mod export;
pub mod geometry;
pub mod section;

pub use bridge::{
    bridge_circle_residual, bridge_cone_residual, bridge_construct, bridge_geometry,
    verify_bridge_equivalence, BridgeGeometry, BridgePoint, ConeVertex, SourceCircle, ZyPoint,
};
pub use classify::{
    classify, fit_circle, verify_cassini_property, verify_villarceau_circles, villarceau_angle,
    CircleFit, SectionClass, VillarceauReport, DEFAULT_TOL, UI_TOL,
};
pub use document::{build_document, SectionDocument, SectionRequest};
pub use error::{Result, ToricError};
pub use geometry::{
    cone_residual, plane_embed, plane_frame, torus_point, torus_poly_residual, torus_residual,
    ConeParams, PlaneFrame, PlaneParams, Point2, Point3, TorusParams,
};
pub use section::{
    circles_horizontal, embed_section, section_coeffs, section_residual, t_of_w, t_of_w_domain,
    trace_section, QuarticCoeffs, SectionCurve, SectionProblem, Sign,
};
