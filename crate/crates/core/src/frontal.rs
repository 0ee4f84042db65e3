//! Moving-basis machinery for frontals: the decomposition DF = Omega
//! Lambda^T, singular sets, the induced unit normal and its relative
//! curvatures, and the lines-of-curvature direction equation.
//!
//! Conventions (all verified against the congruence identities in the
//! integration tests):
//!
//! ```text
//! I_O   = Omega^T Omega
//! II_O  = -Omega^T Dn          n = (w1 x w2)/||w1 x w2||
//! mu    = -II_O^T I_O^-1       so Dn = Omega mu^T
//! Lambda = Dx^T Omega I_O^-1   so Dx = Omega Lambda^T, Sigma(x) = {det = 0}
//! alpha = mu adj(Lambda)
//! K_rel = det mu,  H_rel = -tr(alpha)/2
//! k_{1,2} = H -+ sqrt(H^2 - det(Lambda) K_rel)
//! ```

use crate::bde::{BdeCoeffs, BdeKind};
use crate::error::GeomError;
use crate::expr::ast::VectorExpr;
use crate::expr::eval::eval_vector_jet;
use crate::marching::{self, Polyline};
use crate::mat::{Mat2, Mat32};
use crate::scene::{jet_jacobian, jet_value, DomainRect};
use crate::tol;

/// A moving basis evaluated at a point; construction enforces linear
/// independence of the columns.
#[derive(Debug, Clone, Copy)]
pub struct MovingBasisSample {
    pub q: [f64; 2],
    pub omega: Mat32,
}

impl MovingBasisSample {
    pub fn eval(omega: &[VectorExpr; 2], q: [f64; 2]) -> Result<MovingBasisSample, GeomError> {
        let w1 = eval_vector_jet(&omega[0], None, q)?;
        let w2 = eval_vector_jet(&omega[1], None, q)?;
        let m = Mat32::new(jet_value(&w1), jet_value(&w2));
        let cn = m.col_cross().norm();
        let scale = (m.col[0].norm() * m.col[1].norm()).max(f64::MIN_POSITIVE);
        if cn <= tol::RANK_TOL * scale {
            return Err(GeomError::RankDeficientBasis { u1: q[0], u2: q[1], cross_norm: cn });
        }
        Ok(MovingBasisSample { q, omega: m })
    }
}

/// Result of decomposing a map F as DF = Omega Lambda^T.
#[derive(Debug, Clone, Copy)]
pub struct DecompositionSample {
    pub lambda: Mat2,
    pub det: f64,
    /// ||DF - Omega Lambda^T||_F (absolute).
    pub tangency_residual: f64,
    /// ||DF||_F, for relative residual checks.
    pub map_scale: f64,
}

impl DecompositionSample {
    pub fn relative_residual(&self) -> f64 {
        self.tangency_residual / self.map_scale.max(f64::MIN_POSITIVE)
    }

    pub fn is_tangent(&self) -> bool {
        self.relative_residual() <= tol::TANGENCY_TOL
    }
}

/// Decompose the Jacobian of `map` over the basis `omega` at q. No error at
/// singular points of the map: Lambda simply becomes rank-deficient there.
pub fn decompose(
    map: &VectorExpr,
    omega: &[VectorExpr; 2],
    q: [f64; 2],
) -> Result<DecompositionSample, GeomError> {
    let basis = MovingBasisSample::eval(omega, q)?;
    let jets = eval_vector_jet(map, Some(omega), q)?;
    let df = jet_jacobian(&jets);
    Ok(decompose_mat(df, basis.omega))
}

/// The matrix-level core of `decompose`, shared with the congruence frame.
pub fn decompose_mat(df: Mat32, omega: Mat32) -> DecompositionSample {
    let i_o = omega.tr_mul(omega);
    // I_O is positive definite for a full-rank basis
    let i_inv = i_o.inverse().expect("basis verified full rank");
    let lambda = df.tr_mul(omega) * i_inv;
    let residual = df.sub(omega.mul_mat2(lambda.transpose())).frobenius();
    DecompositionSample {
        lambda,
        det: lambda.det(),
        tangency_residual: residual,
        map_scale: df.frobenius(),
    }
}

/// Relative curvature data of a frontal x with tangent moving basis Omega.
#[derive(Debug, Clone, Copy)]
pub struct RelativeCurvatureSample {
    pub i_omega: Mat2,
    pub ii_omega: Mat2,
    pub mu: Mat2,
    pub alpha: Mat2,
    pub lambda: Mat2,
    pub lambda_det: f64,
    /// K_Omega = det(mu).
    pub k_rel: f64,
    /// H_Omega = -tr(alpha)/2.
    pub h_rel: f64,
    /// Relative principal curvatures, ascending; None when H^2 - lambda K < 0.
    pub k1: Option<f64>,
    pub k2: Option<f64>,
    /// (re, im) of the conjugate pair when the curvatures are complex.
    pub complex_pair: Option<(f64, f64)>,
}

/// Relative curvatures of x with respect to omega; the normal Jacobian Dn
/// is produced by differentiating normalize(cross(w1, w2)) with jets, not
/// numerically.
pub fn relative_curvatures(
    x: &VectorExpr,
    omega: &[VectorExpr; 2],
    q: [f64; 2],
) -> Result<RelativeCurvatureSample, GeomError> {
    let basis = MovingBasisSample::eval(omega, q)?;
    let om = basis.omega;
    let x_jets = eval_vector_jet(x, Some(omega), q)?;
    let dx = jet_jacobian(&x_jets);
    let omega_pair: &[VectorExpr; 2] = omega;
    let n_jets = eval_vector_jet(&VectorExpr::Normal, Some(omega_pair), q)?;
    let dn = jet_jacobian(&n_jets);

    let i_o = om.tr_mul(om);
    let i_inv = i_o.inverse().expect("basis verified full rank");
    let ii_o = -om.tr_mul(dn);
    let mu = -(ii_o.transpose() * i_inv);
    let lambda = dx.tr_mul(om) * i_inv;
    let alpha = mu * lambda.adj();
    let lambda_det = lambda.det();
    let k_rel = mu.det();
    let h_rel = -0.5 * alpha.trace();
    let disc = h_rel * h_rel - lambda_det * k_rel;
    let (k1, k2, complex_pair) = if disc >= 0.0 {
        let r = disc.sqrt();
        (Some(h_rel - r), Some(h_rel + r), None)
    } else {
        (None, None, Some((h_rel, (-disc).sqrt())))
    };
    Ok(RelativeCurvatureSample {
        i_omega: i_o,
        ii_omega: ii_o,
        mu,
        alpha,
        lambda,
        lambda_det,
        k_rel,
        h_rel,
        k1,
        k2,
        complex_pair,
    })
}

/// Zero-level curves of det(Lambda) = lambda_Omega on a grid_n x grid_n grid
/// (the singular set of x). Empty when x is an immersion on the grid.
pub fn singular_set(
    x: &VectorExpr,
    omega: &[VectorExpr; 2],
    domain: DomainRect,
    grid_n: usize,
) -> Vec<Polyline> {
    assert!(grid_n >= 8, "grid_n must be at least 8");
    let mut f = |q: [f64; 2]| decompose(x, omega, q).ok().map(|d| d.det);
    marching::zero_curves(&mut f, domain, grid_n, tol::ISO_TOL)
}

/// Lines-of-curvature direction equation of the frontal x: the quadratic
/// lambda * gamma'^T P alpha^T gamma' expanded in (u1', u2').
pub fn curvature_line_bde(
    x: &VectorExpr,
    omega: &[VectorExpr; 2],
    q: [f64; 2],
) -> Result<BdeCoeffs, GeomError> {
    let rc = relative_curvatures(x, omega, q)?;
    let m = (Mat2::rot90() * rc.alpha.transpose()).scale(rc.lambda_det);
    let scale = rc.lambda_det.abs() * rc.alpha.frobenius();
    Ok(BdeCoeffs::new(
        m.0[0][0],
        m.0[0][1] + m.0[1][0],
        m.0[1][1],
        BdeKind::CurvatureLine,
        scale,
    ))
}
