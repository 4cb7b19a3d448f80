//! Exact-arithmetic Moebius sphere geometry of S^4 = R^4 ∪ {∞}.
//!
//! The crate builds prescribed configurations of round balls over compact
//! subcomplexes of the 2-skeleton of the unit cubulation of R^4, audits the
//! angle and nerve structure of those configurations, enumerates the
//! reflection group generated by the sphere inversions, and reduces it to
//! finite congruence quotients. All geometric predicates are decided over
//! arbitrary-precision rationals; floats are confined to reporting and
//! cross-check oracles.
//!
//! Modules:
//! - [`cubical`]: cubical 2-complexes and barycentric subdivision
//! - [`inversive`]: spheres, points, and inversions in Lorentzian
//!   coordinates on R^{5,1}, with exact pair classification
//! - [`construction`]: the per-square ball configuration, its global audit,
//!   nerve, and coverage checks
//! - [`coxeter`]: reflection-group enumeration, abstract Coxeter oracle,
//!   orbit tilings, and mod-p congruence quotients
//! - [`plinv`]: the piecewise inversion in the boundary of a cube
//! - [`report`]: machine-readable report structures with exact rationals

pub mod construction;
pub mod coxeter;
pub mod cubical;
pub mod inversive;
pub mod plinv;
pub mod report;
pub mod rat;

pub use construction::{AuditReport, Ball, BallConfiguration};
pub use cubical::{CubicalCell, CubicalComplex2, SimplicialComplex};
pub use inversive::{MoebiusMatrix, PointOrInfinity, Sphere};
pub use rat::Rat;
