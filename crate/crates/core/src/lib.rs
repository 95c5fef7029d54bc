//! Convex-geometry toolkit for planar and spatial convex bodies.
//!
//! The crate computes and certifies quantities from the geometry of numbers:
//! support functions, polar and difference bodies, critical determinants and
//! critical lattices of symmetric planar bodies, lattice widths and
//! non-separability certificates, projection bodies and their polar volumes,
//! and the layered lattice-packing construction that yields certified upper
//! bounds on the minimal density of non-separable lattices of translates
//! (`d21` in the plane, `d32_upper_bound` in space).
//!
//! All operations are pure functions of immutable values; everything is
//! `Send + Sync` and safe to share across threads.

pub mod bodygen;
pub mod calculus2d;
pub mod critical2d;
pub mod error;
pub mod geom2d;
pub mod geom3d;
pub mod la;
pub mod lattice;
pub mod nonsep3d;
pub mod trig;

pub use error::{GeomError, Result};
pub use la::{Mat2, Mat3, Vec2, Vec3};
