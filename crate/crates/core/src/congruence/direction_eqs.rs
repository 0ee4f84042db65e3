//! The direction equations of the congruence: principal surfaces (extrema
//! of the central-point curvature) and developable surfaces, with the
//! independent triple-product route and the frontal-side route as
//! cross-checks.

use super::CongruenceFrame;
use crate::bde::{BdeCoeffs, BdeKind};
use crate::error::GeomError;
use crate::expr::ast::VectorExpr;
use crate::mat::{Mat2, Vec3};
use crate::scene::CongruenceScene;

/// The principal-surface equation, both in basis coordinates b and pulled
/// back to chart directions via b = Delta^T (u1', u2')^T.
#[derive(Debug, Clone, Copy)]
pub struct PrincipalBde {
    /// C1 b1^2 + C2 b1 b2 + C3 b2^2 in basis coordinates.
    pub b_coords: BdeCoeffs,
    /// The same equation as a quadratic in (u1', u2').
    pub pulled_back: BdeCoeffs,
}

pub fn principal_bde(scene: &CongruenceScene, q: [f64; 2]) -> Result<PrincipalBde, GeomError> {
    let fr = CongruenceFrame::at(scene, q)?.require_tangent()?;
    Ok(principal_bde_frame(&fr))
}

pub(crate) fn principal_bde_frame(fr: &CongruenceFrame) -> PrincipalBde {
    let d = fr.delta.0;
    let ii = fr.ii_om.0;
    let (l_o, m1_o, m2_o, n_o) = (ii[0][0], ii[0][1], ii[1][0], ii[1][1]);
    let (e_o, f_o, g_o) = (fr.i_om.0[0][0], fr.i_om.0[0][1], fr.i_om.0[1][1]);
    let cal_l = 2.0 * (d[1][1] * l_o - d[0][1] * m1_o);
    let cal_n = 2.0 * (d[0][0] * n_o - d[1][0] * m2_o);
    let cal_m = d[0][0] * m1_o - d[1][0] * l_o + d[1][1] * m2_o - d[0][1] * n_o;
    let c1 = f_o * cal_l - e_o * cal_m;
    let c2 = g_o * cal_l - e_o * cal_n;
    let c3 = g_o * cal_m - f_o * cal_n;
    let scale = fr.eq_scale();
    let b_coords = BdeCoeffs::new(c1, c2, c3, BdeKind::Principal, scale);
    // pull back through b = Delta^T u': S_u = Delta S_b Delta^T
    let s_b = Mat2([[c1, 0.5 * c2], [0.5 * c2, c3]]);
    let s_u = fr.delta * s_b * fr.delta.transpose();
    let pull_scale = scale * fr.delta.frobenius().powi(2).max(f64::MIN_POSITIVE);
    let pulled_back = BdeCoeffs::new(
        s_u.0[0][0],
        2.0 * s_u.0[0][1],
        s_u.0[1][1],
        BdeKind::Principal,
        pull_scale,
    );
    PrincipalBde { b_coords, pulled_back }
}

/// Developable-surface equation from the matrix form
/// P adj(II_O) I_O Delta^T, a quadratic in (u1', u2'). Requires unit xi.
pub fn developable_bde(scene: &CongruenceScene, q: [f64; 2]) -> Result<BdeCoeffs, GeomError> {
    scene.require_unit_xi(q)?;
    let fr = CongruenceFrame::at(scene, q)?.require_tangent()?;
    Ok(developable_bde_frame(&fr))
}

pub(crate) fn developable_bde_frame(fr: &CongruenceFrame) -> BdeCoeffs {
    let w = Mat2::rot90() * fr.ii_om.adj() * fr.i_om * fr.delta.transpose();
    BdeCoeffs::new(
        w.0[0][0],
        w.0[0][1] + w.0[1][0],
        w.0[1][1],
        BdeKind::Developable,
        fr.eq_scale(),
    )
}

/// Developable-surface equation from the raw scalar triple products
/// [x_ui, xi_uj, xi]; the independent oracle for `developable_bde` (the two
/// differ by the exact factor -||w1 x w2||).
pub fn developable_bde_triple(
    scene: &CongruenceScene,
    q: [f64; 2],
) -> Result<BdeCoeffs, GeomError> {
    let x_jets = scene.eval_x(q)?;
    let xi_jets = scene.eval_xi(q)?;
    let dx = crate::scene::jet_jacobian(&x_jets);
    let dxi = crate::scene::jet_jacobian(&xi_jets);
    let xi = crate::scene::jet_value(&xi_jets);
    let a = Vec3::triple(dx.col[0], dxi.col[0], xi);
    let b = Vec3::triple(dx.col[0], dxi.col[1], xi) + Vec3::triple(dx.col[1], dxi.col[0], xi);
    let c = Vec3::triple(dx.col[1], dxi.col[1], xi);
    let scale = dx.frobenius() * dxi.frobenius() * xi.norm();
    Ok(BdeCoeffs::new(a, b, c, BdeKind::Developable, scale))
}

/// Principal-surface equation computed purely from the frontal data of x:
/// -K_rel det(I_O) gamma'^T P alpha^T gamma'. Only defined for exact normal
/// scenes (xi induced by the scene basis). Equals half the pulled-back
/// principal equation.
pub fn principal_bde_via_alpha(
    scene: &CongruenceScene,
    q: [f64; 2],
) -> Result<BdeCoeffs, GeomError> {
    if !matches!(scene.xi, VectorExpr::Normal) || scene.omega.is_none() {
        return Err(GeomError::NotExactNormal);
    }
    let omega = scene.omega.as_ref().unwrap();
    let rc = crate::frontal::relative_curvatures(&scene.x, omega, q)?;
    let det_i = rc.i_omega.det();
    let m = (Mat2::rot90() * rc.alpha.transpose()).scale(-rc.k_rel * det_i);
    let scale = rc.k_rel.abs() * det_i * rc.alpha.frobenius();
    Ok(BdeCoeffs::new(
        m.0[0][0],
        m.0[0][1] + m.0[1][0],
        m.0[1][1],
        BdeKind::Principal,
        scale,
    ))
}

/// The chart-direction equation of the requested kind at q, for tracing and
/// grid sweeps.
pub fn scene_bde(
    scene: &CongruenceScene,
    kind: BdeKind,
    q: [f64; 2],
) -> Result<BdeCoeffs, GeomError> {
    match kind {
        BdeKind::Principal => Ok(principal_bde(scene, q)?.pulled_back),
        BdeKind::Developable => developable_bde(scene, q),
        BdeKind::CurvatureLine => {
            let omega = scene.omega.as_ref().ok_or(GeomError::NoBasis {
                u1: q[0],
                u2: q[1],
                reason: "lines of curvature need the scene's moving basis".into(),
            })?;
            crate::frontal::curvature_line_bde(&scene.x, omega, q)
        }
    }
}

/// The determinant guarding the singular set relevant to a given equation
/// kind: det(Delta) for the congruence equations, det(Lambda) for lines of
/// curvature.
pub fn scene_singular_det(
    scene: &CongruenceScene,
    kind: BdeKind,
    q: [f64; 2],
) -> Result<f64, GeomError> {
    match kind {
        BdeKind::Principal | BdeKind::Developable => {
            Ok(CongruenceFrame::at(scene, q)?.delta_det)
        }
        BdeKind::CurvatureLine => {
            let omega = scene.omega.as_ref().ok_or(GeomError::NoBasis {
                u1: q[0],
                u2: q[1],
                reason: "lines of curvature need the scene's moving basis".into(),
            })?;
            Ok(crate::frontal::decompose(&scene.x, omega, q)?.det)
        }
    }
}
