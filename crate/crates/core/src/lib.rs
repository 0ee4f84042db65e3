//! Differential geometry of line congruences {x, xi} where the direction
//! field xi is a frontal.
//!
//! A congruence is the two-parameter family of lines t -> x(q) + t xi(q)
//! over a chart domain. The crate parses closed-form scene descriptions,
//! evaluates them with forward-mode jets (exact first derivatives), and
//! computes their Kummer fundamental forms, central-point curvature
//! functions, principal and developable direction equations, integral
//! curves, focal/limit coordinates, striction lines and ruled-surface
//! meshes. The direction field may degenerate (its singular set is where
//! det Delta vanishes); the basis-relative quantities remain defined there,
//! which is the point of the construction.

pub mod bde;
pub mod congruence;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod frontal;
pub mod marching;
pub mod mat;
pub mod rng;
pub mod scene;
pub mod tol;
pub mod verify;

pub use bde::{
    discriminant_zero_set, solve_directions, trace, BdeCoeffs, BdeKind, DirectionField,
    DirectionPair, DiscriminantZeroSet, IntegralCurve, Multiplicity, Termination,
};
pub use congruence::{
    classical_forms, developable_bde, developable_bde_triple, extremum_system_residual,
    focal_and_limit, is_normal, kummer_curvature_classical, kummer_curvature_omega, omega_forms,
    principal_bde, principal_bde_via_alpha, principal_directions_eigen, scene_bde,
    striction_curve, surface_of_congruence, theorem_residual, CongruenceFrame, FocalLimitData,
    KummerFormsClassical, KummerFormsOmega, NormalityReport, PrincipalBde, PrincipalDirections,
    QuadMesh, RootPair, StrictionCurve, TheoremResidual,
};
pub use congruence::linspace;
pub use error::GeomError;
pub use expr::{
    eval_jet, eval_vector_jet, parse_curve, parse_scalar, parse_scene, parse_vector, EvalError,
    Jet, ParseError, ScalarExpr, VectorExpr,
};
pub use frontal::{
    curvature_line_bde, decompose, relative_curvatures, singular_set, DecompositionSample,
    MovingBasisSample, RelativeCurvatureSample,
};
pub use rng::SplitMix64;
pub use scene::{CongruenceScene, CurveExpr, DomainRect};
pub use verify::{run_suite, CheckStatus, IdentityCheck, VerifyReport};
