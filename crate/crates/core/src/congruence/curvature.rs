//! Central-point curvature functions and the Kummer principal directions.
//!
//! The classical function K_q(a) = II(a)/I(a) gives the coordinate of the
//! central point of the generator through q in direction a; its
//! desingularized counterpart over the moving basis is
//! K_q^O(b) = (b^T II_O adj(Delta^T) b)/(b^T I_O b), which stays defined on
//! the singular set of xi. The two are linked by det(Delta): see the
//! rescaling test.

use super::CongruenceFrame;
use crate::error::GeomError;
use crate::mat::{Mat2, Vec3};
use crate::scene::CongruenceScene;
use crate::tol;

/// II(a)/I(a): requires the denominator to be positive (fails at directions
/// collapsed by D(xi), in particular everywhere on the singular set only if
/// the direction itself degenerates).
pub fn kummer_curvature_classical(
    scene: &CongruenceScene,
    q: [f64; 2],
    a: [f64; 2],
) -> Result<f64, GeomError> {
    if a == [0.0, 0.0] {
        return Err(GeomError::ZeroDirection);
    }
    let x_jets = scene.eval_x(q)?;
    let xi_jets = scene.eval_xi(q)?;
    let dx = crate::scene::jet_jacobian(&x_jets);
    let dxi = crate::scene::jet_jacobian(&xi_jets);
    let i = dxi.tr_mul(dxi);
    let ii = -dxi.tr_mul(dx);
    let denom = i.quad_form(a);
    let a2 = a[0] * a[0] + a[1] * a[1];
    if denom <= 1e-14 * a2 * i.frobenius().max(f64::MIN_POSITIVE) {
        return Err(GeomError::SingularClassicalForm { u1: q[0], u2: q[1] });
    }
    Ok(ii.quad_form(a) / denom)
}

/// (b^T II_O adj(Delta^T) b)/(b^T I_O b); scale-invariant in b and defined
/// on the singular set of xi.
pub fn kummer_curvature_omega(
    scene: &CongruenceScene,
    q: [f64; 2],
    b: [f64; 2],
) -> Result<f64, GeomError> {
    if b == [0.0, 0.0] {
        return Err(GeomError::ZeroDirection);
    }
    let fr = CongruenceFrame::at(scene, q)?.require_tangent()?;
    Ok(kummer_curvature_omega_frame(&fr, b))
}

pub(crate) fn kummer_curvature_omega_frame(fr: &CongruenceFrame, b: [f64; 2]) -> f64 {
    let num = (fr.ii_om * fr.delta.transpose().adj()).quad_form(b);
    let den = fr.i_om.quad_form(b);
    num / den
}

/// Residuals of the two linear extremum equations at (b, k0); both vanish
/// exactly when b is a Kummer principal direction with value k0.
pub fn extremum_system_residual(
    scene: &CongruenceScene,
    q: [f64; 2],
    b: [f64; 2],
    k0: f64,
) -> Result<(f64, f64), GeomError> {
    if b == [0.0, 0.0] {
        return Err(GeomError::ZeroDirection);
    }
    let fr = CongruenceFrame::at(scene, q)?.require_tangent()?;
    let d = fr.delta.0;
    let ii = fr.ii_om.0;
    let (l_o, m1_o, m2_o, n_o) = (ii[0][0], ii[0][1], ii[1][0], ii[1][1]);
    let (e_o, f_o, g_o) = (fr.i_om.0[0][0], fr.i_om.0[0][1], fr.i_om.0[1][1]);
    let p = d[1][1] * l_o - d[0][1] * m1_o;
    let qq = d[0][0] * n_o - d[1][0] * m2_o;
    let m = d[0][0] * m1_o - d[1][0] * l_o + d[1][1] * m2_o - d[0][1] * n_o;
    let r1 = b[0] * p + 0.5 * b[1] * m - k0 * (b[0] * e_o + b[1] * f_o);
    let r2 = b[1] * qq + 0.5 * b[0] * m - k0 * (b[1] * g_o + b[0] * f_o);
    Ok((r1, r2))
}

/// One extremal direction of K_q^O with its value.
#[derive(Debug, Clone, Copy)]
pub struct PrincipalDirection {
    /// Coordinates in the orthonormalized basis.
    pub b_ortho: [f64; 2],
    /// Coordinates in the basis as given in the scene.
    pub b_original: [f64; 2],
    /// The direction as a vector of R^3 in the basis plane.
    pub dir3: Vec3,
    /// Eigenvalue: the extremal value of K_q^O taken with respect to the
    /// orthonormalized basis.
    pub value: f64,
}

/// Consistency data for the eigenvalue swap against the x-side matrix
/// II_O adj(Lambda^T) (available on exact normal scenes).
#[derive(Debug, Clone, Copy)]
pub struct SwapCheck {
    /// Eigenvalues of II_O adj(Delta^T), ascending.
    pub xi_side: (f64, f64),
    /// Eigenvalues of the frontal-side matrix -Delta^T adj(Lambda^T),
    /// ascending.
    pub x_side: (f64, f64),
    /// ||adj(xi-side matrix) - x-side matrix||_F (the identity behind the
    /// pairing swap).
    pub adj_identity_residual: f64,
}

#[derive(Debug, Clone)]
pub struct PrincipalDirections {
    pub umbilic: bool,
    /// Ascending by eigenvalue; empty when umbilic.
    pub directions: Vec<PrincipalDirection>,
    pub swap: Option<SwapCheck>,
}

/// Kummer principal directions as eigenvectors of II_O adj(Delta^T) in an
/// internally orthonormalized basis (Gram-Schmidt on the columns). Errors
/// when the congruence is not normal at q, since only then is the matrix
/// symmetric.
pub fn principal_directions_eigen(
    scene: &CongruenceScene,
    q: [f64; 2],
) -> Result<PrincipalDirections, GeomError> {
    let fr = CongruenceFrame::at(scene, q)?.require_tangent()?;
    // Gram-Schmidt: omega = omega_tilde * R with R upper triangular
    let w1 = fr.omega.col[0];
    let w2 = fr.omega.col[1];
    let r11 = w1.norm();
    let e1 = w1.scale(1.0 / r11);
    let r12 = e1.dot(w2);
    let w2p = w2 - e1.scale(r12);
    let r22 = w2p.norm();
    let e2 = w2p.scale(1.0 / r22);
    let om_t = crate::mat::Mat32::new(e1, e2);
    let r_inv = Mat2([[1.0 / r11, -r12 / (r11 * r22)], [0.0, 1.0 / r22]]);

    // in the orthonormal frame I_O = id
    let delta_t = fr.dxi.tr_mul(om_t);
    let ii_t = -om_t.tr_mul(fr.dx);
    let m = ii_t * delta_t.transpose().adj();
    let asym = m.asymmetry();
    let scale = m.frobenius().max(f64::MIN_POSITIVE);
    if asym > tol::SYMMETRY_TOL * scale && asym > 1e-12 {
        return Err(GeomError::NotNormal { u1: q[0], u2: q[1], asymmetry: asym / scale });
    }
    let ((l1, v1), (l2, v2)) = m.sym().eigen_sym();

    // umbilic: the two extremal values agree at round-off
    let umbilic = (l2 - l1).abs() <= 1e-9 * scale;

    // x-side matrix for the pairing swap, defined when omega is tangent to x
    let swap = {
        let lam_t = fr.dx.tr_mul(om_t);
        let x_res = fr
            .dx
            .sub(om_t.mul_mat2(lam_t.transpose()))
            .frobenius();
        if x_res <= tol::TANGENCY_TOL * fr.dx.frobenius().max(f64::MIN_POSITIVE) {
            let mx = -(delta_t.transpose() * lam_t.transpose().adj());
            let ((a1, _), (a2, _)) = mx.sym().eigen_sym();
            let adj_res = (m.adj() - mx).frobenius();
            Some(SwapCheck { xi_side: (l1, l2), x_side: (a1, a2), adj_identity_residual: adj_res })
        } else {
            None
        }
    };

    let directions = if umbilic {
        Vec::new()
    } else {
        [(l1, v1), (l2, v2)]
            .into_iter()
            .map(|(l, v)| PrincipalDirection {
                b_ortho: v,
                b_original: r_inv.mul_vec(v),
                dir3: om_t.mul_vec(v),
                value: l,
            })
            .collect()
    };
    Ok(PrincipalDirections { umbilic, directions, swap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rng::SplitMix64;

    #[test]
    fn sphere_central_point_is_center() {
        // xi = x: the central point coordinate is -1 in every direction
        let sc = fixtures::builtin("sphere").unwrap();
        for a in [[1.0, 0.0], [0.3, -0.8], [0.0, 2.0]] {
            let k = kummer_curvature_classical(&sc, [0.4, 0.2], a).unwrap();
            assert!((k + 1.0).abs() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn helicoid_central_point_vanishes() {
        // <x', xi'> = 0 for the axis direction even though I is singular
        let sc = fixtures::builtin("helicoid").unwrap();
        let k = kummer_curvature_classical(&sc, [0.5, 0.0], [1.0, 0.0]).unwrap();
        assert!(k.abs() < 1e-14);
    }

    #[test]
    fn zero_direction_rejected() {
        let sc = fixtures::builtin("sphere").unwrap();
        assert!(matches!(
            kummer_curvature_omega(&sc, [0.1, 0.1], [0.0, 0.0]),
            Err(GeomError::ZeroDirection)
        ));
    }

    #[test]
    fn omega_curvature_is_degree_zero_homogeneous() {
        let sc = fixtures::builtin("example43").unwrap();
        let q = [0.3, 0.6];
        let b = [0.7, -1.1];
        let k1 = kummer_curvature_omega(&sc, q, b).unwrap();
        let k2 = kummer_curvature_omega(&sc, q, [2.0 * b[0], 2.0 * b[1]]).unwrap();
        assert!((k1 - k2).abs() <= 1e-12 * k1.abs().max(1.0));
    }

    #[test]
    fn rescaling_identity_prop_43() {
        // det(Delta) K_q(a) = K_q^O(Delta^T a) at regular points
        for name in ["parabolic", "example43", "sphere", "skew"] {
            let sc = fixtures::builtin(name).unwrap();
            let mut rng = SplitMix64::new(23);
            let mut checked = 0;
            while checked < 50 {
                let q = sc.domain.sample(&mut rng, 0.02);
                let fr = match CongruenceFrame::at(&sc, q) {
                    Ok(f) => f,
                    Err(_) => continue,
                };
                if fr.delta_det.abs() < tol::REGULAR_DET_FLOOR {
                    continue;
                }
                let a = [rng.in_range(-1.0, 1.0), rng.in_range(-1.0, 1.0)];
                if a[0].abs() + a[1].abs() < 0.1 {
                    continue;
                }
                let kc = match kummer_curvature_classical(&sc, q, a) {
                    Ok(k) => k,
                    Err(_) => continue,
                };
                let b = fr.delta.transpose().mul_vec(a);
                let ko = kummer_curvature_omega(&sc, q, b).unwrap();
                assert!(
                    (fr.delta_det * kc - ko).abs() <= 1e-9 * (1.0 + ko.abs()),
                    "rescaling fails for {name} at {q:?}: {} vs {}",
                    fr.delta_det * kc,
                    ko
                );
                checked += 1;
            }
        }
    }

    #[test]
    fn sphere_omega_curvature_consistent_with_center() {
        // K^O = det(Delta) * K_q with K_q = -1 on the sphere
        let sc = fixtures::builtin("sphere").unwrap();
        let q = [0.7, 0.5];
        let fr = CongruenceFrame::at(&sc, q).unwrap();
        let k = kummer_curvature_omega(&sc, q, [1.0, 0.3]).unwrap();
        assert!((k - fr.delta_det * (-1.0)).abs() < 1e-12);
    }

    #[test]
    fn eigen_directions_match_extremum_system() {
        let sc = fixtures::builtin("example43").unwrap();
        for q in [[0.3, 0.5], [-0.4, 0.7], [0.2, -0.5]] {
            let pd = principal_directions_eigen(&sc, q).unwrap();
            assert!(!pd.umbilic);
            for d in &pd.directions {
                let b = d.b_original;
                let k0 = kummer_curvature_omega(&sc, q, b).unwrap();
                let (r1, r2) = extremum_system_residual(&sc, q, b, k0).unwrap();
                let n = (b[0] * b[0] + b[1] * b[1]).sqrt();
                assert!(
                    r1.abs() / n <= 1e-8 && r2.abs() / n <= 1e-8,
                    "extremum residuals ({r1}, {r2}) at {q:?}"
                );
            }
        }
    }

    #[test]
    fn random_direction_is_not_extremal() {
        let sc = fixtures::builtin("example43").unwrap();
        let q = [0.3, 0.5];
        let b = [0.9, 0.4];
        let k0 = kummer_curvature_omega(&sc, q, b).unwrap();
        let (r1, r2) = extremum_system_residual(&sc, q, b, k0).unwrap();
        assert!(r1.abs().max(r2.abs()) > 1e-4, "({r1}, {r2})");
    }

    #[test]
    fn umbilic_extremum_residuals_vanish_for_all_b() {
        let sc = fixtures::builtin("sphere").unwrap();
        let q = [0.4, -0.3];
        for b in [[1.0, 0.0], [0.6, 0.8], [-0.3, 1.1]] {
            let k0 = kummer_curvature_omega(&sc, q, b).unwrap();
            let (r1, r2) = extremum_system_residual(&sc, q, b, k0).unwrap();
            assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12);
        }
    }

    #[test]
    fn sphere_is_umbilic() {
        let sc = fixtures::builtin("sphere").unwrap();
        let pd = principal_directions_eigen(&sc, [0.5, 0.4]).unwrap();
        assert!(pd.umbilic);
        assert!(pd.directions.is_empty());
    }

    #[test]
    fn skew_scene_rejected_as_not_normal() {
        let sc = fixtures::builtin("skew").unwrap();
        assert!(matches!(
            principal_directions_eigen(&sc, [0.4, 0.3]),
            Err(GeomError::NotNormal { .. })
        ));
    }

    #[test]
    fn eigenvalue_swap_identity() {
        // adj(II_O adj(Delta^T)) equals the x-side matrix, so the two
        // eigenvalue pairs coincide with swapped pairing
        let sc = fixtures::builtin("example43").unwrap();
        for q in [[0.3, 0.5], [-0.6, 0.4]] {
            let pd = principal_directions_eigen(&sc, q).unwrap();
            let swap = pd.swap.expect("exact normal scene has the x-side matrix");
            assert!(swap.adj_identity_residual <= 1e-9 * (1.0 + swap.xi_side.1.abs()));
            // equal as sets
            assert!((swap.xi_side.0 - swap.x_side.0).abs() <= 1e-9 * (1.0 + swap.x_side.0.abs()));
            assert!((swap.xi_side.1 - swap.x_side.1).abs() <= 1e-9 * (1.0 + swap.x_side.1.abs()));
        }
    }
}
