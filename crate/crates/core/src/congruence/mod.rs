//! Congruence-level quantities of the pair {x, xi}: classical and
//! basis-relative Kummer fundamental forms, the central-point curvature
//! functions, normality tests, the principal/developable direction
//! equations and the factorization identity tying them together, focal and
//! limit coordinates, striction lines, and ruled-surface sampling.

mod curvature;
mod direction_eqs;
mod focal;
mod forms;
mod normality;
mod ruled;

pub use curvature::{
    extremum_system_residual, kummer_curvature_classical, kummer_curvature_omega,
    principal_directions_eigen, PrincipalDirection, PrincipalDirections, SwapCheck,
};
pub use direction_eqs::{
    developable_bde, developable_bde_triple, principal_bde, principal_bde_via_alpha, scene_bde,
    scene_singular_det, PrincipalBde,
};
pub use focal::{focal_and_limit, FocalLimitData, RootPair};
pub use forms::{classical_forms, omega_forms, KummerFormsClassical, KummerFormsOmega};
pub use normality::{is_normal, theorem_residual, NormalityReport, TheoremResidual};
pub use ruled::{linspace, striction_curve, surface_of_congruence, QuadMesh, StrictionCurve};

use crate::error::GeomError;
use crate::expr::jet::JetVec3;
use crate::mat::{Mat2, Mat32, Vec3};
use crate::scene::{jet_jacobian, jet_value, CongruenceScene};

/// Everything the point operations need, evaluated once: Jacobians of x and
/// xi, the moving basis for xi, both families of fundamental forms, and the
/// decomposition D(xi) = Omega Delta^T.
#[derive(Debug, Clone)]
pub struct CongruenceFrame {
    pub q: [f64; 2],
    pub x_jets: JetVec3,
    pub xi_jets: JetVec3,
    pub x: Vec3,
    pub xi: Vec3,
    pub dx: Mat32,
    pub dxi: Mat32,
    pub omega: Mat32,
    /// Classical first form DxI^T DxI of the direction field.
    pub i_cl: Mat2,
    /// Classical second form -Dxi^T Dx = [[L, M1], [M2, N]].
    pub ii_cl: Mat2,
    /// Basis first form Omega^T Omega.
    pub i_om: Mat2,
    /// Basis second form -Omega^T Dx = [[L_O, M1_O], [M2_O, N_O]].
    pub ii_om: Mat2,
    /// Delta with Dxi = Omega Delta^T.
    pub delta: Mat2,
    pub delta_det: f64,
    /// ||Dxi - Omega Delta^T||_F.
    pub xi_tangency_residual: f64,
}

impl CongruenceFrame {
    pub fn at(scene: &CongruenceScene, q: [f64; 2]) -> Result<CongruenceFrame, GeomError> {
        let x_jets = scene.eval_x(q)?;
        let xi_jets = scene.eval_xi(q)?;
        let dx = jet_jacobian(&x_jets);
        let dxi = jet_jacobian(&xi_jets);
        let omega = scene.xi_basis(q)?;
        let i_om = omega.tr_mul(omega);
        let i_inv = i_om.inverse().expect("basis rank checked in xi_basis");
        let delta = dxi.tr_mul(omega) * i_inv;
        let residual = dxi.sub(omega.mul_mat2(delta.transpose())).frobenius();
        Ok(CongruenceFrame {
            q,
            x: jet_value(&x_jets),
            xi: jet_value(&xi_jets),
            x_jets,
            xi_jets,
            dx,
            dxi,
            omega,
            i_cl: dxi.tr_mul(dxi),
            ii_cl: -dxi.tr_mul(dx),
            i_om,
            ii_om: -omega.tr_mul(dx),
            delta,
            delta_det: delta.det(),
            xi_tangency_residual: residual,
        })
    }

    /// Reject frames where omega is not actually a tangent moving basis of xi.
    pub fn require_tangent(self) -> Result<CongruenceFrame, GeomError> {
        let rel = self.xi_tangency_residual / self.dxi.frobenius().max(f64::MIN_POSITIVE);
        if rel > crate::tol::TANGENCY_TOL {
            return Err(GeomError::TangencyViolation { residual: rel });
        }
        Ok(self)
    }

    /// Scale of the form products entering the direction equations.
    pub fn eq_scale(&self) -> f64 {
        self.i_om.frobenius() * self.ii_om.frobenius() * self.delta.frobenius().max(1.0)
    }
}
