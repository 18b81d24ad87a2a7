//! Construction and numerical verification of solids and curves of constant
//! width.
//!
//! The library builds bodies of constant width `r` two ways: in any dimension
//! from the gradient of an odd degree-1 homogeneous seed function (the median
//! surface construction), and in the plane from curvature-radius profiles.
//! It also completes bounded point sets to diametrically maximal sets on a
//! grid and checks the defining invariants numerically: constant width in
//! every direction, the antipodal condition, r-convexity, Barbier's perimeter
//! law and Hausdorff continuity of homotopies.
//!
//! Heavy scans (pairwise distances, grid duals, eigenvalue sweeps) run on
//! rayon when the default `parallel` feature is enabled and fall back to
//! sequential loops otherwise; reductions are associative and commutative, so
//! results do not depend on partitioning.

pub mod dual;
pub mod error;
pub mod export;
pub mod geom;
pub mod median;
pub mod planar;
pub mod verify;

pub use error::{Error, Result};
pub use geom::{Direction, DirectionSet, Norm, PointCloud, SphereScheme, SymMatrix};

/// Sequential kernel entry points for the benchmark suite.
///
/// These always compile, independent of the `parallel` feature, so a single
/// build can measure the rayon path against the plain loop.
#[doc(hidden)]
pub mod kernels {
    use crate::geom::cloud;
    use crate::geom::{Norm, PointCloud};

    pub fn diameter_seq(c: &PointCloud) -> f64 {
        cloud::diameter_seq(c.points(), c.norm())
    }

    pub fn directed_sup_inf_seq(a: &PointCloud, b: &PointCloud) -> f64 {
        let inf = |p: &Vec<f64>| {
            b.points()
                .iter()
                .fold(f64::INFINITY, |m, q| m.min(Norm::Euclidean.distance(p, q)))
        };
        a.points().iter().map(inf).fold(0.0, f64::max)
    }
}
