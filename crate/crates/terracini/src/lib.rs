//! Nondefectivity and filling certificates for unions of affine cones.
//!
//! The library answers dimension questions about joins and secants of
//! reducible varieties through two complementary routes:
//!
//! * **Closed-form bounds** ([`bounds`]): inequality criteria that guarantee
//!   a component type is nondefective or filling, evaluated in exact
//!   arbitrary-precision arithmetic.
//! * **Rank certificates** ([`certify`]): sample points on each component
//!   over a prime field, stack the fiber matrices of the attached vector
//!   bundle, and compute the exact rank. A full-rank hit proves the generic
//!   dimension by semicontinuity; a stable gap across primes and seeds is
//!   reported as defect evidence, never as a certificate.
//!
//! Four concrete bundle families are built in ([`bundle`]): graded pieces of
//! ideals generated by general forms, powers of linear forms arising from
//! fat point schemes, tangent bundles of partition-rank-one varieties, and
//! tangent bundles of degree-5 moment varieties of Gaussian and Laplace
//! distributions.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability, and the `nd` binary for scenario-driven runs.

pub mod bounds;
pub mod bundle;
pub mod certify;
pub mod cli;
pub mod error;
pub mod fieldcore;
pub mod linalg;
pub mod sequences;

pub use error::{Error, Result};
