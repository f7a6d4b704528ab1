//! Discrete mean curvature on closed triangle meshes, and an iterative
//! curvature-weighted transformation that morphs such meshes toward round
//! spheres.
//!
//! ```no_run
//! use curvmorph::{generate, mesh, morph};
//!
//! let cube = generate::subdivided_cube(3);
//! let adj = mesh::validate(&cube)?;
//! let c = 0.0025 * cube.bbox_diagonal();
//! let rounder = morph::morph_preset(&cube, &adj, 1, c)?;
//! # Ok::<(), curvmorph::Error>(())
//! ```

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curvature;
pub mod error;
pub mod generate;
pub mod mesh;
pub mod metrics;
pub mod morph;
pub mod obj;

pub use curvature::{compute_field, CurvatureField, Tolerances};
pub use error::{Error, Result};
pub use mesh::{build_adjacency, EdgeAdjacency, TriMesh, Vec3};
pub use metrics::MetricsRecord;
pub use morph::{MorphParams, Morpher, Refresh, Schedule};
