//! Tensor-field calculus for gradient elasticity and couple stress models,
//! with executable checks of differential identities, transformation rules
//! under simultaneous rotation of spatial and referential coordinates, and
//! SO(3)-invariance classification of energy densities.
//!
//! The crate is organized as:
//!
//! * [`tensor`] — pointwise linear algebra on ℝ³ tensors of rank 1..3,
//!   axl/anti, the Cartan split, Levi-Civita identities, Rayleigh products
//!   and rational rotations from integer quaternions;
//! * [`expr`] / [`field`] — closed-form field expressions with exact
//!   differentiation, rotation fields, and the random polynomial corpus;
//! * [`ops`] — the differential operators (grad/Grad/GRAD, div/Div/DIV,
//!   curl/Curl, curvature, inc) and the identity suite;
//! * [`transform`] — the ♯-transformation and the transformation-rule
//!   catalog with verifiers;
//! * [`model`] — energy densities, stress and couple-stress constitutive
//!   maps, and balance residual fields;
//! * [`probe`] — the invariance probe engine, balance probes, and the
//!   model × invariance classification matrix.
//!
//! Runnable walkthroughs live in `examples/`; the `invlab` binary exposes
//! the same checks as subcommands.

pub mod error;
pub mod expr;
pub mod field;
pub mod model;
pub mod ops;
pub mod probe;
pub mod tensor;
pub mod tol;
pub mod transform;

pub use error::{Error, Result};
