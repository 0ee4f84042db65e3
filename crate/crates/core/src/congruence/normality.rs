//! Normality of the congruence and the factorization identity tying the
//! principal and developable equations together on normal congruences.

use super::CongruenceFrame;
use crate::error::GeomError;
use crate::mat::Mat2;
use crate::scene::CongruenceScene;

/// Both routes to the normality test: symmetry of II_O adj(Delta^T) over the
/// moving basis, and the classical M1 = M2 condition.
#[derive(Debug, Clone, Copy)]
pub struct NormalityReport {
    pub is_normal: bool,
    /// ||M - M^T||_F / ||M||_F for M = II_O adj(Delta^T); zero matrix counts
    /// as symmetric.
    pub omega_asymmetry: f64,
    /// |M1 - M2| of the classical second form.
    pub classical_gap: f64,
    /// |M1 - M2| / ||II||_F.
    pub classical_asymmetry: f64,
}

pub fn is_normal(
    scene: &CongruenceScene,
    q: [f64; 2],
    tol: f64,
) -> Result<NormalityReport, GeomError> {
    let fr = CongruenceFrame::at(scene, q)?.require_tangent()?;
    Ok(is_normal_frame(&fr, tol))
}

pub(crate) fn is_normal_frame(fr: &CongruenceFrame, tol: f64) -> NormalityReport {
    let m = fr.ii_om * fr.delta.transpose().adj();
    let norm = m.frobenius();
    let omega_asymmetry = if norm > 0.0 { m.asymmetry() / norm } else { 0.0 };
    let classical_gap = (fr.ii_cl.0[0][1] - fr.ii_cl.0[1][0]).abs();
    let ii_norm = fr.ii_cl.frobenius();
    let classical_asymmetry = if ii_norm > 0.0 { classical_gap / ii_norm } else { 0.0 };
    NormalityReport {
        is_normal: omega_asymmetry <= tol,
        omega_asymmetry,
        classical_gap,
        classical_asymmetry,
    }
}

/// Residual of the identity
/// Delta P adj(II_O)^T Delta I_O Delta^T = det(Delta) P adj(II_O) I_O Delta^T,
/// which holds exactly on normal congruences (including on the singular set
/// of xi). On non-normal scenes the residual is reported, not failed.
#[derive(Debug, Clone, Copy)]
pub struct TheoremResidual {
    /// ||LHS - RHS||_F.
    pub residual: f64,
    pub lhs_norm: f64,
    /// residual / (1 + ||LHS||).
    pub relative: f64,
    /// Whether the normality precondition held at q.
    pub normal_here: bool,
}

pub fn theorem_residual(
    scene: &CongruenceScene,
    q: [f64; 2],
) -> Result<TheoremResidual, GeomError> {
    let fr = CongruenceFrame::at(scene, q)?.require_tangent()?;
    let p = Mat2::rot90();
    let lhs = fr.delta * p * fr.ii_om.adj().transpose() * fr.delta * fr.i_om * fr.delta.transpose();
    let rhs = (p * fr.ii_om.adj() * fr.i_om * fr.delta.transpose()).scale(fr.delta_det);
    let residual = (lhs - rhs).frobenius();
    let lhs_norm = lhs.frobenius();
    let normal_here = is_normal_frame(&fr, crate::tol::SYMMETRY_TOL).is_normal;
    Ok(TheoremResidual {
        residual,
        lhs_norm,
        relative: residual / (1.0 + lhs_norm),
        normal_here,
    })
}
