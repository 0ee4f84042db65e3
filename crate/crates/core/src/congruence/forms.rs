//! Classical and basis-relative Kummer fundamental forms.

use super::CongruenceFrame;
use crate::error::GeomError;
use crate::mat::Mat2;
use crate::scene::CongruenceScene;

/// Classical Kummer coefficients: I = Dxi^T Dxi, II = -Dxi^T Dx.
#[derive(Debug, Clone, Copy)]
pub struct KummerFormsClassical {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m1: f64,
    pub m2: f64,
    pub n: f64,
    pub i: Mat2,
    pub ii: Mat2,
}

impl KummerFormsClassical {
    /// det I; zero on the singular set of xi.
    pub fn det_i(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// Whether the classical quantities (central points, focal coordinates)
    /// are defined here.
    pub fn regular(&self) -> bool {
        let scale = (self.e + self.g).max(f64::MIN_POSITIVE);
        self.det_i() > 1e-12 * scale * scale
    }
}

pub fn classical_forms(
    scene: &CongruenceScene,
    q: [f64; 2],
) -> Result<KummerFormsClassical, GeomError> {
    let x_jets = scene.eval_x(q)?;
    let xi_jets = scene.eval_xi(q)?;
    let dx = crate::scene::jet_jacobian(&x_jets);
    let dxi = crate::scene::jet_jacobian(&xi_jets);
    let i = dxi.tr_mul(dxi);
    let ii = -dxi.tr_mul(dx);
    Ok(KummerFormsClassical {
        e: i.0[0][0],
        f: i.0[0][1],
        g: i.0[1][1],
        l: ii.0[0][0],
        m1: ii.0[0][1],
        m2: ii.0[1][0],
        n: ii.0[1][1],
        i,
        ii,
    })
}

/// Basis-relative Kummer coefficients: I_O = Omega^T Omega,
/// II_O = -Omega^T Dx, plus the decomposition Dxi = Omega Delta^T.
#[derive(Debug, Clone, Copy)]
pub struct KummerFormsOmega {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m1: f64,
    pub m2: f64,
    pub n: f64,
    pub i_o: Mat2,
    pub ii_o: Mat2,
    pub delta: Mat2,
    pub delta_det: f64,
    pub tangency_residual: f64,
}

pub fn omega_forms(scene: &CongruenceScene, q: [f64; 2]) -> Result<KummerFormsOmega, GeomError> {
    let fr = CongruenceFrame::at(scene, q)?.require_tangent()?;
    Ok(KummerFormsOmega {
        e: fr.i_om.0[0][0],
        f: fr.i_om.0[0][1],
        g: fr.i_om.0[1][1],
        l: fr.ii_om.0[0][0],
        m1: fr.ii_om.0[0][1],
        m2: fr.ii_om.0[1][0],
        n: fr.ii_om.0[1][1],
        i_o: fr.i_om,
        ii_o: fr.ii_om,
        delta: fr.delta,
        delta_det: fr.delta_det,
        tangency_residual: fr.xi_tangency_residual,
    })
}
