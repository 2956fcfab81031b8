//! Tolerance constants shared across the crate.
//!
//! All arithmetic here is short chains of multiply-adds in f64, so the
//! thresholds can sit close to machine precision.

/// Componentwise tolerance for structural predicates (`is_sym`, `is_skew`,
/// `is_tracefree`, skewness precondition of `axl`).
pub const PREDICATE: f64 = 1e-10;

/// Tolerance for algebraic round-trip identities (Cartan reconstruction,
/// `anti(axl(A)) = A`, Rayleigh round trips, rotation orthogonality).
pub const ALGEBRAIC: f64 = 1e-12;

/// Default tolerance for normalized residuals of field identities and
/// invariance probes.
pub const FIELD_IDENTITY: f64 = 1e-9;
