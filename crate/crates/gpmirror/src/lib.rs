//! Exact-arithmetic toolkit for Greene--Plesser mirror families: reflexive
//! simplices and their toric data, relation-lattice monoids, cone-graded
//! sparse power series, mirror-map integrality checks, GKZ verification, and
//! tropical smoothness criteria for regular subdivisions.
//!
//! No floating point is used anywhere; coefficients are arbitrary-precision
//! rationals and all geometry is decided by exact linear algebra and exact
//! linear programming.

pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod monoid;
pub mod series;
pub mod mirrormap;
pub mod gkz;
pub mod gf;
pub mod subdivision;
pub mod formats;
