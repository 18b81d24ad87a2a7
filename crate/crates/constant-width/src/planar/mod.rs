//! The planar pipeline: curvature-radius profiles, the differential relation
//! between profiles and polar seed coefficients, curve synthesis, Reuleaux
//! polygons and Cantor profiles, arc embedding and mollification.

pub mod curve;
pub mod embed;
pub mod profile;
pub mod relation;
pub mod smooth;

pub use curve::{barbier_perimeter, curve_from_beta, curve_from_beta_unchecked, PlanarCurve};
pub use embed::{
    containment_residual, embed_arc, min_distance_to_polyline, ArcPiece, EmbeddedArc,
};
pub use profile::{
    cantor_profile, mirror_extend_beta, reuleaux_beta, BetaProfile, HalfProfile, Harmonic,
};
pub use relation::{a_from_beta, beta_from_a, AngularFunction};
pub use smooth::smooth_beta_sequence;
