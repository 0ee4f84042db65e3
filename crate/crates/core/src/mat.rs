//! Small fixed-size linear algebra: 3-vectors, 2x2 matrices and 3x2
//! column-pair matrices.
//!
//! Everything in the congruence machinery reduces to products of these
//! three shapes. `adj` is the 2x2 adjugate, so `m * m.adj() == det(m) * I`
//! holds exactly (it is used as an identity, not just as an inverse step).

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub fn dot(self, o: Vec3) -> f64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3([
            self.0[1] * o.0[2] - self.0[2] * o.0[1],
            self.0[2] * o.0[0] - self.0[0] * o.0[2],
            self.0[0] * o.0[1] - self.0[1] * o.0[0],
        ])
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    /// Scalar triple product [a, b, c] = <a, b x c>.
    pub fn triple(a: Vec3, b: Vec3, c: Vec3) -> f64 {
        a.dot(b.cross(c))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

/// Row-major 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[0.0; 2]; 2]);

    pub fn identity() -> Mat2 {
        Mat2([[1.0, 0.0], [0.0, 1.0]])
    }

    /// The rotation [[0,1],[-1,0]] used by the direction equations.
    pub fn rot90() -> Mat2 {
        Mat2([[0.0, 1.0], [-1.0, 0.0]])
    }

    pub fn det(self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn transpose(self) -> Mat2 {
        Mat2([[self.0[0][0], self.0[1][0]], [self.0[0][1], self.0[1][1]]])
    }

    /// Adjugate: adj(m) * m = m * adj(m) = det(m) * I.
    pub fn adj(self) -> Mat2 {
        Mat2([[self.0[1][1], -self.0[0][1]], [-self.0[1][0], self.0[0][0]]])
    }

    pub fn inverse(self) -> Option<Mat2> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        Some(self.adj().scale(1.0 / d))
    }

    pub fn scale(self, s: f64) -> Mat2 {
        Mat2([
            [self.0[0][0] * s, self.0[0][1] * s],
            [self.0[1][0] * s, self.0[1][1] * s],
        ])
    }

    pub fn trace(self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn frobenius(self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    pub fn sym(self) -> Mat2 {
        let off = 0.5 * (self.0[0][1] + self.0[1][0]);
        Mat2([[self.0[0][0], off], [off, self.0[1][1]]])
    }

    /// Frobenius norm of m - m^T.
    pub fn asymmetry(self) -> f64 {
        let d = self.0[0][1] - self.0[1][0];
        (2.0 * d * d).sqrt()
    }

    pub fn mul_vec(self, v: [f64; 2]) -> [f64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    /// v^T m v.
    pub fn quad_form(self, v: [f64; 2]) -> f64 {
        let mv = self.mul_vec(v);
        v[0] * mv[0] + v[1] * mv[1]
    }

    /// Eigen-decomposition of a symmetric matrix: ((l1, v1), (l2, v2)) with
    /// l1 <= l2 and unit eigenvectors. The caller is responsible for the
    /// matrix actually being symmetric; only the lower/upper average is used.
    pub fn eigen_sym(self) -> ((f64, [f64; 2]), (f64, [f64; 2])) {
        let a = self.0[0][0];
        let b = 0.5 * (self.0[0][1] + self.0[1][0]);
        let c = self.0[1][1];
        let half_tr = 0.5 * (a + c);
        let r = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        let l1 = half_tr - r;
        let l2 = half_tr + r;
        // Eigenvector for l2 along (b, l2 - a) or (l2 - c, b), whichever is
        // better conditioned; the l1 vector is its rotation by 90 degrees.
        let v2 = if b.abs() > 0.0 {
            if (l2 - a).abs() > (l2 - c).abs() {
                normalize2([b, l2 - a])
            } else {
                normalize2([l2 - c, b])
            }
        } else if a >= c {
            [1.0, 0.0]
        } else {
            [0.0, 1.0]
        };
        let v1 = [-v2[1], v2[0]];
        ((l1, v1), (l2, v2))
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2([
            [self.0[0][0] + o.0[0][0], self.0[0][1] + o.0[0][1]],
            [self.0[1][0] + o.0[1][0], self.0[1][1] + o.0[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2([
            [self.0[0][0] - o.0[0][0], self.0[0][1] - o.0[0][1]],
            [self.0[1][0] - o.0[1][0], self.0[1][1] - o.0[1][1]],
        ])
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let mut m = [[0.0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j];
            }
        }
        Mat2(m)
    }
}

pub fn normalize2(v: [f64; 2]) -> [f64; 2] {
    let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
    [v[0] / n, v[1] / n]
}

/// A 3x2 matrix stored as its two columns (a moving basis, a Jacobian of a
/// map U -> R^3, ...).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat32 {
    pub col: [Vec3; 2],
}

impl Mat32 {
    pub fn new(c1: Vec3, c2: Vec3) -> Mat32 {
        Mat32 { col: [c1, c2] }
    }

    /// self^T * other, a 2x2 Gram-style product.
    pub fn tr_mul(self, o: Mat32) -> Mat2 {
        Mat2([
            [self.col[0].dot(o.col[0]), self.col[0].dot(o.col[1])],
            [self.col[1].dot(o.col[0]), self.col[1].dot(o.col[1])],
        ])
    }

    /// self * m for a 2x2 m (columns recombine).
    pub fn mul_mat2(self, m: Mat2) -> Mat32 {
        Mat32::new(
            self.col[0].scale(m.0[0][0]) + self.col[1].scale(m.0[1][0]),
            self.col[0].scale(m.0[0][1]) + self.col[1].scale(m.0[1][1]),
        )
    }

    pub fn mul_vec(self, v: [f64; 2]) -> Vec3 {
        self.col[0].scale(v[0]) + self.col[1].scale(v[1])
    }

    pub fn sub(self, o: Mat32) -> Mat32 {
        Mat32::new(self.col[0] - o.col[0], self.col[1] - o.col[1])
    }

    pub fn frobenius(self) -> f64 {
        (self.col[0].dot(self.col[0]) + self.col[1].dot(self.col[1])).sqrt()
    }

    pub fn col_cross(self) -> Vec3 {
        self.col[0].cross(self.col[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjugate_identity() {
        let m = Mat2([[3.0, -1.5], [2.0, 0.25]]);
        let p = m * m.adj();
        let d = m.det();
        assert!((p.0[0][0] - d).abs() < 1e-14);
        assert!((p.0[1][1] - d).abs() < 1e-14);
        assert!(p.0[0][1].abs() < 1e-14 && p.0[1][0].abs() < 1e-14);
    }

    #[test]
    fn rot90_squares_to_minus_identity() {
        let p = Mat2::rot90();
        assert_eq!(p * p, Mat2::identity().scale(-1.0));
    }

    #[test]
    fn eigen_sym_reconstructs() {
        let m = Mat2([[2.0, 0.7], [0.7, -1.0]]);
        let ((l1, v1), (l2, v2)) = m.eigen_sym();
        assert!(l1 <= l2);
        for (l, v) in [(l1, v1), (l2, v2)] {
            let mv = m.mul_vec(v);
            assert!((mv[0] - l * v[0]).abs() < 1e-12);
            assert!((mv[1] - l * v[1]).abs() < 1e-12);
        }
        // orthogonal eigenvectors
        assert!((v1[0] * v2[0] + v1[1] * v2[1]).abs() < 1e-12);
    }

    #[test]
    fn cross_right_handed() {
        let e1 = Vec3([1.0, 0.0, 0.0]);
        let e2 = Vec3([0.0, 1.0, 0.0]);
        assert_eq!(e1.cross(e2), Vec3([0.0, 0.0, 1.0]));
    }
}
