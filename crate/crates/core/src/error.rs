//! Error type shared by the geometric operations.

use crate::expr::eval::EvalError;
use crate::expr::parser::ParseError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("moving basis is rank-deficient at ({u1}, {u2}): ||w1 x w2|| = {cross_norm:.3e}")]
    RankDeficientBasis { u1: f64, u2: f64, cross_norm: f64 },

    #[error("no usable moving basis at ({u1}, {u2}): {reason}")]
    NoBasis { u1: f64, u2: f64, reason: String },

    #[error("omega is not a tangent moving basis here: relative residual {residual:.3e}")]
    TangencyViolation { residual: f64 },

    #[error("xi is not unit length at ({u1}, {u2}): ||xi|| = {norm}")]
    XiNotUnit { u1: f64, u2: f64, norm: f64 },

    #[error("classical Kummer form is singular at ({u1}, {u2}) (point of the singular set of xi)")]
    SingularClassicalForm { u1: f64, u2: f64 },

    #[error("congruence is not normal at ({u1}, {u2}): relative asymmetry {asymmetry:.3e}")]
    NotNormal { u1: f64, u2: f64, asymmetry: f64 },

    #[error("operation requires xi = normal(omega) (an exact normal congruence)")]
    NotExactNormal,

    #[error("direction coordinates must be nonzero")]
    ZeroDirection,

    #[error("xi'(t) vanishes at t = {t}; the striction point is undefined there")]
    ZeroXiDerivative { t: f64 },

    #[error("point ({u1}, {u2}) is outside the scene domain")]
    OutsideDomain { u1: f64, u2: f64 },

    #[error("bad seed for tracing at ({u1}, {u2}): {reason}")]
    BadSeed { u1: f64, u2: f64, reason: String },
}
