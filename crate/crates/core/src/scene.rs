//! The congruence scene: the pair {x, xi} with an optional moving basis and
//! a rectangular chart domain, plus the pointwise evaluation bundle every
//! operation starts from.

use crate::error::GeomError;
use crate::expr::ast::{ScalarExpr, VectorExpr};
use crate::expr::eval::{eval_jet, eval_vector_jet, EvalError};
use crate::expr::jet::{Jet, JetVec3};
use crate::expr::parser;
use crate::mat::{Mat32, Vec3};
use crate::rng::SplitMix64;
use crate::tol;

/// Open rectangle (u1_min, u1_max) x (u2_min, u2_max).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainRect {
    pub u1_min: f64,
    pub u1_max: f64,
    pub u2_min: f64,
    pub u2_max: f64,
}

impl DomainRect {
    pub fn new(u1_min: f64, u1_max: f64, u2_min: f64, u2_max: f64) -> Result<DomainRect, String> {
        if !(u1_min < u1_max) || !(u2_min < u2_max) {
            return Err(format!(
                "domain bounds must be strictly ordered, got u1 in ({u1_min}, {u1_max}), u2 in ({u2_min}, {u2_max})"
            ));
        }
        Ok(DomainRect { u1_min, u1_max, u2_min, u2_max })
    }

    pub fn contains(&self, q: [f64; 2]) -> bool {
        q[0] > self.u1_min && q[0] < self.u1_max && q[1] > self.u2_min && q[1] < self.u2_max
    }

    pub fn center(&self) -> [f64; 2] {
        [0.5 * (self.u1_min + self.u1_max), 0.5 * (self.u2_min + self.u2_max)]
    }

    /// Uniform sample strictly inside, keeping `margin` (as a fraction of
    /// each side) away from the boundary.
    pub fn sample(&self, rng: &mut SplitMix64, margin: f64) -> [f64; 2] {
        let w1 = self.u1_max - self.u1_min;
        let w2 = self.u2_max - self.u2_min;
        [
            rng.in_range(self.u1_min + margin * w1, self.u1_max - margin * w1),
            rng.in_range(self.u2_min + margin * w2, self.u2_max - margin * w2),
        ]
    }

    /// Cell-centered n x n grid (all points interior).
    pub fn grid(&self, n: usize) -> Vec<[f64; 2]> {
        let mut pts = Vec::with_capacity(n * n);
        let w1 = self.u1_max - self.u1_min;
        let w2 = self.u2_max - self.u2_min;
        for i in 0..n {
            for j in 0..n {
                pts.push([
                    self.u1_min + (i as f64 + 0.5) * w1 / n as f64,
                    self.u2_min + (j as f64 + 0.5) * w2 / n as f64,
                ]);
            }
        }
        pts
    }
}

/// A curve t -> (u1(t), u2(t)) in the chart, both components expressions in
/// the parameter t.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveExpr {
    pub u1: ScalarExpr,
    pub u2: ScalarExpr,
}

impl CurveExpr {
    pub fn parse(text: &str) -> Result<CurveExpr, crate::expr::parser::ParseError> {
        parser::parse_curve(text)
    }

    /// Value and t-derivative of both components; the jets' d1 slot carries
    /// d/dt.
    pub fn eval(&self, t: f64) -> Result<(Jet, Jet), EvalError> {
        Ok((eval_jet(&self.u1, [t, 0.0])?, eval_jet(&self.u2, [t, 0.0])?))
    }

    /// (u1, u2) point at t.
    pub fn point(&self, t: f64) -> Result<[f64; 2], EvalError> {
        let (a, b) = self.eval(t)?;
        Ok([a.v, b.v])
    }

    /// (u1', u2') at t.
    pub fn tangent(&self, t: f64) -> Result<[f64; 2], EvalError> {
        let (a, b) = self.eval(t)?;
        Ok([a.d1, b.d1])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CongruenceScene {
    pub name: String,
    pub domain: DomainRect,
    pub x: VectorExpr,
    pub xi: VectorExpr,
    /// Moving basis columns (w1, w2) when the file supplies one. Serves as
    /// the tangent moving basis of xi (and of x for exact normal scenes).
    pub omega: Option<[VectorExpr; 2]>,
    /// True when ||xi|| == 1 held at every probe point of the domain.
    pub unitize_xi: bool,
}

impl CongruenceScene {
    /// Build a scene from parsed parts, probing whether xi is unit.
    pub fn assemble(
        name: String,
        domain: DomainRect,
        x: VectorExpr,
        omega: Option<[VectorExpr; 2]>,
        xi: VectorExpr,
    ) -> CongruenceScene {
        let mut scene = CongruenceScene { name, domain, x, xi, omega, unitize_xi: false };
        scene.unitize_xi = scene.xi.is_normalized_form() || scene.probe_xi_unit();
        scene
    }

    pub fn from_text(text: &str) -> Result<CongruenceScene, crate::expr::parser::ParseError> {
        parser::parse_scene(text)
    }

    fn probe_points(&self) -> Vec<[f64; 2]> {
        let d = &self.domain;
        let w1 = d.u1_max - d.u1_min;
        let w2 = d.u2_max - d.u2_min;
        let fr = [0.131, 0.377, 0.5, 0.613, 0.887];
        let mut pts = Vec::new();
        for a in fr {
            for b in fr {
                pts.push([d.u1_min + a * w1, d.u2_min + b * w2]);
            }
        }
        pts
    }

    fn probe_xi_unit(&self) -> bool {
        self.probe_points().iter().all(|&q| match self.eval_xi(q) {
            Ok(j) => {
                let n = (j[0].v * j[0].v + j[1].v * j[1].v + j[2].v * j[2].v).sqrt();
                (n - 1.0).abs() <= 1e-10
            }
            Err(_) => false,
        })
    }

    /// Replace xi by normalize(xi) unless it is already unit by construction.
    pub fn with_unitized_xi(mut self) -> CongruenceScene {
        if !self.unitize_xi {
            self.xi = VectorExpr::Normalize(Box::new(self.xi));
            self.unitize_xi = true;
        }
        self
    }

    pub fn eval_x(&self, q: [f64; 2]) -> Result<JetVec3, EvalError> {
        eval_vector_jet(&self.x, self.omega.as_ref(), q)
    }

    pub fn eval_xi(&self, q: [f64; 2]) -> Result<JetVec3, EvalError> {
        eval_vector_jet(&self.xi, self.omega.as_ref(), q)
    }

    /// Jets of the unit normal induced by the scene's moving basis.
    pub fn eval_normal(&self, q: [f64; 2]) -> Result<JetVec3, GeomError> {
        let om = self.omega.as_ref().ok_or(GeomError::NoBasis {
            u1: q[0],
            u2: q[1],
            reason: "scene has no omega to induce a normal from".into(),
        })?;
        Ok(eval_vector_jet(&VectorExpr::Normal, Some(om), q)?)
    }

    /// The moving basis used for xi at q, as value columns. Prefers the
    /// scene's omega; otherwise falls back to (xi_u1, xi_u2), refusing when
    /// that pair is rank-deficient (near the singular set of xi only a
    /// user-supplied basis can work).
    pub fn xi_basis(&self, q: [f64; 2]) -> Result<Mat32, GeomError> {
        if let Some(om) = &self.omega {
            let w1 = eval_vector_jet(&om[0], None, q)?;
            let w2 = eval_vector_jet(&om[1], None, q)?;
            let m = Mat32::new(jet_value(&w1), jet_value(&w2));
            check_basis_rank(m, q)?;
            return Ok(m);
        }
        let xi = self.eval_xi(q)?;
        let m = jet_jacobian(&xi);
        check_basis_rank(m, q).map_err(|_| GeomError::NoBasis {
            u1: q[0],
            u2: q[1],
            reason: "no omega in the file and xi is not immersive here".into(),
        })?;
        Ok(m)
    }

    /// Whether the scene's omega is present (needed for derivative-level
    /// quantities of the basis, e.g. the induced normal's Jacobian).
    pub fn has_omega(&self) -> bool {
        self.omega.is_some()
    }

    /// ||xi(q)|| == 1 within tol, as required by the direction-equation
    /// operations.
    pub fn require_unit_xi(&self, q: [f64; 2]) -> Result<(), GeomError> {
        let xi = self.eval_xi(q)?;
        let n = jet_value(&xi).norm();
        if (n - 1.0).abs() > 1e-8 {
            return Err(GeomError::XiNotUnit { u1: q[0], u2: q[1], norm: n });
        }
        Ok(())
    }
}

pub fn jet_value(j: &JetVec3) -> Vec3 {
    Vec3([j[0].v, j[1].v, j[2].v])
}

/// The Jacobian columns packed in a 3x2 matrix.
pub fn jet_jacobian(j: &JetVec3) -> Mat32 {
    Mat32::new(
        Vec3([j[0].d1, j[1].d1, j[2].d1]),
        Vec3([j[0].d2, j[1].d2, j[2].d2]),
    )
}

fn check_basis_rank(m: Mat32, q: [f64; 2]) -> Result<(), GeomError> {
    let cn = m.col_cross().norm();
    let scale = m.col[0].norm() * m.col[1].norm();
    if cn <= tol::RANK_TOL * scale.max(1e-300) {
        return Err(GeomError::RankDeficientBasis { u1: q[0], u2: q[1], cross_norm: cn });
    }
    Ok(())
}
