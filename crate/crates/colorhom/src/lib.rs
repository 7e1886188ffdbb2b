//! Exact computations for Γ-graded color Hom-Lie algebras.
//!
//! Scalars live in ℚ(ζ_m). Linear maps are matrices in the column convention:
//! column j holds the image of the j-th basis vector.

pub mod algebra;
pub mod bichar;
pub mod catalog;
pub mod cohomology;
pub mod deformation;
pub mod error;
pub mod group;
pub mod hls;
pub mod linalg;
pub mod morphisms;
mod poly;
pub mod report;
pub mod representation;
pub mod scalar;
pub mod structure;

pub use bichar::BiCharacter;
pub use error::{Error, Result};
pub use group::{Group, GroupElement};
pub use linalg::{Matrix, Vector};
pub use scalar::Scalar;
