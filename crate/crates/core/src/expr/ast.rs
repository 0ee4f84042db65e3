//! Expression trees for the closed-form maps a congruence file defines.
//!
//! Scalar expressions are functions of the two chart variables `u1`, `u2`
//! (curve expressions reuse the first slot for their parameter `t`).
//! Vector expressions are triples of scalars plus the three composite
//! constructors `cross`, `normalize` and `normal(omega)`; the latter is
//! shorthand for `normalize(cross(w1, w2))` over the basis in scope and is
//! the unit normal induced by a moving basis.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    U1,
    U2,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScalarExpr {
    Var(Var),
    Const(f64),
    Neg(Box<ScalarExpr>),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
    /// Integer power; negative exponents allowed.
    Pow(Box<ScalarExpr>, i32),
    Sqrt(Box<ScalarExpr>),
    Sin(Box<ScalarExpr>),
    Cos(Box<ScalarExpr>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum VectorExpr {
    Components(Box<[ScalarExpr; 3]>),
    Cross(Box<VectorExpr>, Box<VectorExpr>),
    Normalize(Box<VectorExpr>),
    /// The unit normal induced by the moving basis in scope,
    /// normalize(cross(w1, w2)) in the file's column order.
    Normal,
}

impl ScalarExpr {
    pub fn constant(v: f64) -> ScalarExpr {
        ScalarExpr::Const(v)
    }
}

impl VectorExpr {
    pub fn components(e1: ScalarExpr, e2: ScalarExpr, e3: ScalarExpr) -> VectorExpr {
        VectorExpr::Components(Box::new([e1, e2, e3]))
    }

    /// Whether the expression is unit-length by construction.
    pub fn is_normalized_form(&self) -> bool {
        matches!(self, VectorExpr::Normalize(_) | VectorExpr::Normal)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::U1 => write!(f, "u1"),
            Var::U2 => write!(f, "u2"),
        }
    }
}

impl fmt::Display for ScalarExpr {
    /// Canonical fully-parenthesized print; `parse(print(e))` is structurally `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarExpr::Var(v) => write!(f, "{v}"),
            ScalarExpr::Const(c) => {
                if *c < 0.0 {
                    write!(f, "({c})")
                } else {
                    write!(f, "{c}")
                }
            }
            ScalarExpr::Neg(e) => write!(f, "(-{e})"),
            ScalarExpr::Add(a, b) => write!(f, "({a} + {b})"),
            ScalarExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            ScalarExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            ScalarExpr::Div(a, b) => write!(f, "({a} / {b})"),
            ScalarExpr::Pow(b, k) => {
                if *k < 0 {
                    write!(f, "({b}^-{})", -(*k as i64))
                } else {
                    write!(f, "({b}^{k})")
                }
            }
            ScalarExpr::Sqrt(e) => write!(f, "sqrt({e})"),
            ScalarExpr::Sin(e) => write!(f, "sin({e})"),
            ScalarExpr::Cos(e) => write!(f, "cos({e})"),
        }
    }
}

impl fmt::Display for VectorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VectorExpr::Components(c) => write!(f, "({}, {}, {})", c[0], c[1], c[2]),
            VectorExpr::Cross(a, b) => write!(f, "cross({a}, {b})"),
            VectorExpr::Normalize(v) => write!(f, "normalize({v})"),
            VectorExpr::Normal => write!(f, "normal(omega)"),
        }
    }
}
