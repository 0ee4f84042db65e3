//! Jet evaluation of expression trees.
//!
//! Evaluation is pure: identical inputs give bit-identical jets within one
//! build. Domain faults (square root of a non-positive value, division by
//! zero, normalizing a zero vector) are hard errors carrying the offending
//! subexpression rather than NaNs, so they cannot leak into the linear
//! algebra downstream.

use super::ast::{ScalarExpr, Var, VectorExpr};
use super::jet::{jv_cross, jv_dot, Jet, JetVec3};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("sqrt of a non-positive value ({value}) in `{expr}` at ({u1}, {u2})")]
    SqrtDomain { expr: String, value: f64, u1: f64, u2: f64 },
    #[error("division by zero in `{expr}` at ({u1}, {u2})")]
    DivByZero { expr: String, u1: f64, u2: f64 },
    #[error("zero raised to a negative power in `{expr}` at ({u1}, {u2})")]
    ZeroToNegativePower { expr: String, u1: f64, u2: f64 },
    #[error("normalize of a zero vector in `{expr}` at ({u1}, {u2})")]
    ZeroNormalize { expr: String, u1: f64, u2: f64 },
    #[error("normal(omega) evaluated without a moving basis in scope")]
    MissingOmega,
    #[error("non-finite result in `{expr}` at ({u1}, {u2})")]
    NonFinite { expr: String, u1: f64, u2: f64 },
}

/// Evaluate a scalar expression at q, returning its value and both partials.
pub fn eval_jet(e: &ScalarExpr, q: [f64; 2]) -> Result<Jet, EvalError> {
    let j = eval_scalar(e, q)?;
    if !j.is_finite() {
        return Err(EvalError::NonFinite { expr: e.to_string(), u1: q[0], u2: q[1] });
    }
    Ok(j)
}

fn eval_scalar(e: &ScalarExpr, q: [f64; 2]) -> Result<Jet, EvalError> {
    Ok(match e {
        ScalarExpr::Var(Var::U1) => Jet::var1(q[0]),
        ScalarExpr::Var(Var::U2) => Jet::var2(q[1]),
        ScalarExpr::Const(c) => Jet::constant(*c),
        ScalarExpr::Neg(a) => -eval_scalar(a, q)?,
        ScalarExpr::Add(a, b) => eval_scalar(a, q)? + eval_scalar(b, q)?,
        ScalarExpr::Sub(a, b) => eval_scalar(a, q)? - eval_scalar(b, q)?,
        ScalarExpr::Mul(a, b) => eval_scalar(a, q)? * eval_scalar(b, q)?,
        ScalarExpr::Div(a, b) => {
            let num = eval_scalar(a, q)?;
            let den = eval_scalar(b, q)?;
            if den.v == 0.0 {
                return Err(EvalError::DivByZero { expr: e.to_string(), u1: q[0], u2: q[1] });
            }
            num / den
        }
        ScalarExpr::Pow(a, k) => {
            let base = eval_scalar(a, q)?;
            if *k < 0 && base.v == 0.0 {
                return Err(EvalError::ZeroToNegativePower {
                    expr: e.to_string(),
                    u1: q[0],
                    u2: q[1],
                });
            }
            base.powi(*k)
        }
        ScalarExpr::Sqrt(a) => {
            let arg = eval_scalar(a, q)?;
            if arg.v <= 0.0 {
                return Err(EvalError::SqrtDomain {
                    expr: e.to_string(),
                    value: arg.v,
                    u1: q[0],
                    u2: q[1],
                });
            }
            arg.sqrt()
        }
        ScalarExpr::Sin(a) => eval_scalar(a, q)?.sin(),
        ScalarExpr::Cos(a) => eval_scalar(a, q)?.cos(),
    })
}

/// Evaluate a vector expression componentwise. `omega` supplies the basis
/// for `normal(omega)` nodes; cross and normalize are differentiated through
/// by the jet arithmetic itself, not numerically.
pub fn eval_vector_jet(
    v: &VectorExpr,
    omega: Option<&[VectorExpr; 2]>,
    q: [f64; 2],
) -> Result<JetVec3, EvalError> {
    let out = match v {
        VectorExpr::Components(c) => [
            eval_scalar(&c[0], q)?,
            eval_scalar(&c[1], q)?,
            eval_scalar(&c[2], q)?,
        ],
        VectorExpr::Cross(a, b) => {
            let ja = eval_vector_jet(a, omega, q)?;
            let jb = eval_vector_jet(b, omega, q)?;
            jv_cross(&ja, &jb)
        }
        VectorExpr::Normalize(inner) => {
            let ji = eval_vector_jet(inner, omega, q)?;
            let n2 = jv_dot(&ji, &ji);
            if n2.v <= 0.0 {
                return Err(EvalError::ZeroNormalize {
                    expr: v.to_string(),
                    u1: q[0],
                    u2: q[1],
                });
            }
            let n = n2.sqrt();
            [ji[0] / n, ji[1] / n, ji[2] / n]
        }
        VectorExpr::Normal => {
            let om = omega.ok_or(EvalError::MissingOmega)?;
            let w1 = eval_vector_jet(&om[0], None, q)?;
            let w2 = eval_vector_jet(&om[1], None, q)?;
            let c = jv_cross(&w1, &w2);
            let n2 = jv_dot(&c, &c);
            if n2.v <= 0.0 {
                return Err(EvalError::ZeroNormalize {
                    expr: v.to_string(),
                    u1: q[0],
                    u2: q[1],
                });
            }
            let n = n2.sqrt();
            [c[0] / n, c[1] / n, c[2] / n]
        }
    };
    for j in &out {
        if !j.is_finite() {
            return Err(EvalError::NonFinite { expr: v.to_string(), u1: q[0], u2: q[1] });
        }
    }
    Ok(out)
}
