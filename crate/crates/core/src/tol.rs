//! Numeric thresholds used across the crate.
//!
//! Identity checks are relative to the scale of the matrices involved, so
//! these are dimensionless unless noted.

/// A moving basis is rank-deficient when ||w1 x w2|| falls at or below this
/// times its column-norm scale.
pub const RANK_TOL: f64 = 1e-10;

/// Relative Frobenius residual ||DF - Omega Lambda^T|| / scale above which
/// Omega is rejected as a tangent moving basis of F.
pub const TANGENCY_TOL: f64 = 1e-8;

/// Relative Frobenius asymmetry ||M - M^T|| / ||M|| for the normality tests.
pub const SYMMETRY_TOL: f64 = 1e-8;

/// Target |f| at emitted vertices of implicit zero-level curves.
pub const ISO_TOL: f64 = 1e-8;

/// Coefficient-magnitude-scaled threshold below which a direction equation
/// counts as identically zero (umbilic).
pub const ZERO_TOL: f64 = 1e-12;

/// Allowed negativity of the principal-equation discriminant (it is
/// non-negative in exact arithmetic).
pub const DISC_TOL: f64 = 1e-12;

/// Angular root separation below which integral-curve tracing stops rather
/// than risk hopping branches.
pub const BRANCH_COLLISION_RAD: f64 = 1e-3;

/// |det| threshold at which tracing reports the singular set.
pub const SINGULAR_DET_TOL: f64 = 1e-10;

/// Default step in (u1, u2) for integral-curve tracing.
pub const DEFAULT_TRACE_STEP: f64 = 1e-3;

/// Default step cap for integral-curve tracing.
pub const DEFAULT_MAX_STEPS: usize = 100_000;

/// Points with |det| below this times the local scale are treated as
/// singular when sampling "regular" points.
pub const REGULAR_DET_FLOOR: f64 = 1e-6;
