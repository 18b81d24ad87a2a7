//! Norm-aware point primitives, sphere sampling, a symmetric eigensolver and
//! set distances. Everything here is pure and safe to call concurrently.

pub mod align;
pub mod cloud;
pub mod direction;
pub mod matrix;
pub mod norm;
pub mod sampling;

pub use align::{rigid_align_2d, RigidTransform2};
pub use cloud::PointCloud;
pub use direction::Direction;
pub use matrix::SymMatrix;
pub use norm::Norm;
pub use sampling::{icosphere_mesh, sample_sphere, DirectionSet, SphereScheme};
