//! Ruled surfaces of the congruence along a directrix curve: striction
//! lines, central points, and quad-mesh sampling of Y(t, w) = x(t) + w xi(t).

use crate::error::GeomError;
use crate::mat::Vec3;
use crate::scene::{jet_jacobian, jet_value, CongruenceScene, CurveExpr};

#[derive(Debug, Clone)]
pub struct StrictionCurve {
    pub ts: Vec<f64>,
    /// beta(t) = x(t) + k(t) xi(t).
    pub points: Vec<Vec3>,
    /// Central-point coordinates k(t).
    pub central: Vec<f64>,
}

/// Sample the striction line of the ruled surface along `curve`. Fails when
/// xi'(t) vanishes at a sample (the central point is undefined there).
pub fn striction_curve(
    scene: &CongruenceScene,
    curve: &CurveExpr,
    t_samples: &[f64],
) -> Result<StrictionCurve, GeomError> {
    let mut points = Vec::with_capacity(t_samples.len());
    let mut central = Vec::with_capacity(t_samples.len());
    for &t in t_samples {
        let (ju, jv) = curve.eval(t)?;
        let q = [ju.v, jv.v];
        if !scene.domain.contains(q) {
            return Err(GeomError::OutsideDomain { u1: q[0], u2: q[1] });
        }
        let a_dot = [ju.d1, jv.d1];
        let x_jets = scene.eval_x(q)?;
        let xi_jets = scene.eval_xi(q)?;
        let x_dot = jet_jacobian(&x_jets).mul_vec(a_dot);
        let xi_dot = jet_jacobian(&xi_jets).mul_vec(a_dot);
        let denom = xi_dot.dot(xi_dot);
        if denom <= 1e-24 {
            return Err(GeomError::ZeroXiDerivative { t });
        }
        let k = -x_dot.dot(xi_dot) / denom;
        let beta = jet_value(&x_jets) + jet_value(&xi_jets).scale(k);
        points.push(beta);
        central.push(k);
    }
    Ok(StrictionCurve { ts: t_samples.to_vec(), points, central })
}

/// A sampled surface of the congruence: a (t, w) grid of points, row-major
/// with t as the row index, plus the developability indicator
/// [x', xi', xi] per t sample.
#[derive(Debug, Clone)]
pub struct QuadMesh {
    pub nt: usize,
    pub nw: usize,
    pub vertices: Vec<Vec3>,
    pub developability: Vec<f64>,
    pub ts: Vec<f64>,
    pub ws: Vec<f64>,
}

pub fn surface_of_congruence(
    scene: &CongruenceScene,
    curve: &CurveExpr,
    t_samples: &[f64],
    w_range: (f64, f64),
    w_samples: usize,
) -> Result<QuadMesh, GeomError> {
    assert!(w_samples >= 1);
    let ws: Vec<f64> = if w_samples == 1 {
        vec![w_range.0]
    } else {
        (0..w_samples)
            .map(|i| w_range.0 + (w_range.1 - w_range.0) * i as f64 / (w_samples - 1) as f64)
            .collect()
    };
    let mut vertices = Vec::with_capacity(t_samples.len() * ws.len());
    let mut developability = Vec::with_capacity(t_samples.len());
    for &t in t_samples {
        let (ju, jv) = curve.eval(t)?;
        let q = [ju.v, jv.v];
        if !scene.domain.contains(q) {
            return Err(GeomError::OutsideDomain { u1: q[0], u2: q[1] });
        }
        let a_dot = [ju.d1, jv.d1];
        let x_jets = scene.eval_x(q)?;
        let xi_jets = scene.eval_xi(q)?;
        let x = jet_value(&x_jets);
        let xi = jet_value(&xi_jets);
        let x_dot = jet_jacobian(&x_jets).mul_vec(a_dot);
        let xi_dot = jet_jacobian(&xi_jets).mul_vec(a_dot);
        developability.push(Vec3::triple(x_dot, xi_dot, xi));
        for &w in &ws {
            vertices.push(x + xi.scale(w));
        }
    }
    Ok(QuadMesh {
        nt: t_samples.len(),
        nw: ws.len(),
        vertices,
        developability,
        ts: t_samples.to_vec(),
        ws,
    })
}

/// Evenly spaced parameter samples over [a, b].
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}
