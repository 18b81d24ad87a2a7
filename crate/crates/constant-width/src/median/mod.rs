//! The n-dimensional construction: odd degree-1 homogeneous seed, its
//! gradient (the median surface), Hessian eigenvalue scans for the critical
//! width, and the boundary map `G(u) = H(u) + (r/2) u`.

pub mod body;
pub mod seed;
pub mod surface;

pub use body::{build_body, build_body_override, family, surface_of, ConstantWidthBody};
pub use seed::{FdSteps, MonomialTerm, OddSeedFunction};
pub use surface::{
    check_median_inequality, check_median_inequality_on_set, r_star, r_star_refined,
    MedianInequalityReport, MedianSurface, Provenance, RStar,
};
