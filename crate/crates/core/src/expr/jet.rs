//! First-order jets: a value together with its exact partial derivatives
//! with respect to the two chart variables.
//!
//! This is plain forward-mode automatic differentiation with a two-slot
//! gradient. Everything downstream (fundamental forms, Jacobians of unit
//! normal fields, direction equations) needs only first derivatives of the
//! user's maps, so one jet level closes the whole formula set.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn constant(v: f64) -> Jet {
        Jet { v, d1: 0.0, d2: 0.0 }
    }

    /// The jet of the coordinate u1 at value v: derivative (1, 0).
    pub const fn var1(v: f64) -> Jet {
        Jet { v, d1: 1.0, d2: 0.0 }
    }

    /// The jet of the coordinate u2 at value v: derivative (0, 1).
    pub const fn var2(v: f64) -> Jet {
        Jet { v, d1: 0.0, d2: 1.0 }
    }

    pub fn sqrt(self) -> Jet {
        let r = self.v.sqrt();
        let s = 0.5 / r;
        Jet { v: r, d1: s * self.d1, d2: s * self.d2 }
    }

    pub fn sin(self) -> Jet {
        let c = self.v.cos();
        Jet { v: self.v.sin(), d1: c * self.d1, d2: c * self.d2 }
    }

    pub fn cos(self) -> Jet {
        let s = -self.v.sin();
        Jet { v: self.v.cos(), d1: s * self.d1, d2: s * self.d2 }
    }

    /// Integer power with the derivative k * v^(k-1); k may be negative
    /// (the caller guards v = 0 for those).
    pub fn powi(self, k: i32) -> Jet {
        match k {
            0 => Jet::constant(1.0),
            1 => self,
            _ => {
                let p = self.v.powi(k - 1);
                let d = k as f64 * p;
                Jet { v: p * self.v, d1: d * self.d1, d2: d * self.d2 }
            }
        }
    }

    pub fn is_finite(self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { v: self.v - o.v, d1: self.d1 - o.d1, d2: self.d2 - o.d2 }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + self.v * o.d2,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let inv = 1.0 / o.v;
        let q = self.v * inv;
        Jet {
            v: q,
            d1: (self.d1 - q * o.d1) * inv,
            d2: (self.d2 - q * o.d2) * inv,
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { v: -self.v, d1: -self.d1, d2: -self.d2 }
    }
}

/// A vector of three jets: the value of a map U -> R^3 together with its
/// Jacobian columns.
pub type JetVec3 = [Jet; 3];

pub fn jv_dot(a: &JetVec3, b: &JetVec3) -> Jet {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn jv_cross(a: &JetVec3, b: &JetVec3) -> JetVec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn jv_norm(a: &JetVec3) -> Jet {
    jv_dot(a, a).sqrt()
}

pub fn jv_scale(a: &JetVec3, s: Jet) -> JetVec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        // d/du1 (u1 * u1) = 2 u1
        let x = Jet::var1(3.0);
        let y = x * x;
        assert_eq!(y.v, 9.0);
        assert_eq!(y.d1, 6.0);
        assert_eq!(y.d2, 0.0);
    }

    #[test]
    fn quotient_rule() {
        // d/du2 (u1 / u2) at (1, 2) = -1/4
        let x = Jet::var1(1.0);
        let y = Jet::var2(2.0);
        let q = x / y;
        assert!((q.v - 0.5).abs() < 1e-15);
        assert!((q.d1 - 0.5).abs() < 1e-15);
        assert!((q.d2 + 0.25).abs() < 1e-15);
    }

    #[test]
    fn negative_power() {
        // d/du1 u1^-2 at 2 = -2 * 2^-3 = -0.25
        let x = Jet::var1(2.0);
        let p = x.powi(-2);
        assert!((p.v - 0.25).abs() < 1e-15);
        assert!((p.d1 + 0.25).abs() < 1e-15);
    }

    #[test]
    fn chain_rule_sqrt() {
        let x = Jet::var1(3.0);
        let y = Jet::var2(4.0);
        let r = (x * x + y * y).sqrt();
        assert!((r.v - 5.0).abs() < 1e-15);
        assert!((r.d1 - 0.6).abs() < 1e-15);
        assert!((r.d2 - 0.8).abs() < 1e-15);
    }
}
