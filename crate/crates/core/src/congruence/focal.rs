//! Focal coordinates and Kummer principal curvature values of a generator.
//!
//! Focal points solve
//! (EG - F^2) rho^2 + (F M2 - N E + F M1 - G L) rho + (N L - M1 M2) = 0;
//! the extremal central-point values come from the determinant of the pencil
//! sym(II) - k I, i.e.
//! (EG - F^2) k^2 - (G L + E N - F (M1 + M2)) k + (L N - ((M1 + M2)/2)^2) = 0.
//! The two quadratics share the sum of roots, and the difference of their
//! root gaps is (M1 - M2)^2 / (EG - F^2) — both identities are checked as
//! coefficient algebra so the complex-root case needs no special casing.

use super::forms::classical_forms;
use crate::error::GeomError;
use crate::scene::CongruenceScene;

/// Roots of a real quadratic, kept as a conjugate pair when complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootPair {
    Real(f64, f64),
    Complex { re: f64, im: f64 },
}

impl RootPair {
    pub fn as_real(&self) -> Option<(f64, f64)> {
        match self {
            RootPair::Real(a, b) => Some((*a, *b)),
            RootPair::Complex { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FocalLimitData {
    /// Focal coordinates, ascending when real.
    pub rho: RootPair,
    /// Kummer principal curvature values, ascending.
    pub kappa: (f64, f64),
    pub is_normal_point: bool,
    /// |(rho1 + rho2) - (kappa1 + kappa2)| and
    /// |(kappa1-kappa2)^2 - (rho1-rho2)^2 - (M1-M2)^2/(EG-F^2)|.
    pub midpoint_residuals: (f64, f64),
}

pub fn focal_and_limit(scene: &CongruenceScene, q: [f64; 2]) -> Result<FocalLimitData, GeomError> {
    let c = classical_forms(scene, q)?;
    if !c.regular() {
        return Err(GeomError::SingularClassicalForm { u1: q[0], u2: q[1] });
    }
    let (e, f, g) = (c.e, c.f, c.g);
    let (l, m1, m2, n) = (c.l, c.m1, c.m2, c.n);
    let a = e * g - f * f;
    // focal quadratic
    let bf = f * m2 - n * e + f * m1 - g * l;
    let cf = n * l - m1 * m2;
    // pencil quadratic for the curvature values
    let bk = -(g * l + e * n - f * (m1 + m2));
    let msum = 0.5 * (m1 + m2);
    let ck = l * n - msum * msum;

    let disc_f = bf * bf - 4.0 * a * cf;
    // a double root computes as disc ~ -eps * scale; only a meaningful
    // negative margin is genuinely complex
    let disc_scale = bf * bf + 4.0 * (a * cf).abs();
    let rho = if disc_f >= -1e-12 * disc_scale {
        let r = disc_f.max(0.0).sqrt();
        let r1 = (-bf - r) / (2.0 * a);
        let r2 = (-bf + r) / (2.0 * a);
        RootPair::Real(r1.min(r2), r1.max(r2))
    } else {
        RootPair::Complex { re: -bf / (2.0 * a), im: (-disc_f).sqrt() / (2.0 * a.abs()) }
    };

    let disc_k = bk * bk - 4.0 * a * ck;
    // non-negative in exact arithmetic (I positive definite); clamp round-off
    let disc_k = disc_k.max(0.0);
    let rk = disc_k.sqrt();
    let k1 = (-bk - rk) / (2.0 * a);
    let k2 = (-bk + rk) / (2.0 * a);
    let kappa = (k1.min(k2), k1.max(k2));

    // midpoint identities via coefficient algebra
    let sum_gap = ((-bf / a) - (-bk / a)).abs();
    let gap2_f = disc_f / (a * a);
    let gap2_k = disc_k / (a * a);
    let mdiff = m1 - m2;
    let second = (gap2_k - gap2_f - mdiff * mdiff / a).abs();

    let ii_scale = c.ii.frobenius().max(f64::MIN_POSITIVE);
    Ok(FocalLimitData {
        rho,
        kappa,
        is_normal_point: mdiff.abs() <= crate::tol::SYMMETRY_TOL * ii_scale,
        midpoint_residuals: (sum_gap, second),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rng::SplitMix64;

    #[test]
    fn sphere_focal_point_is_center() {
        // II = -I gives (EG - F^2)(rho + 1)^2 = 0
        let sc = fixtures::builtin("sphere").unwrap();
        let d = focal_and_limit(&sc, [0.4, 0.3]).unwrap();
        let (r1, r2) = d.rho.as_real().unwrap();
        assert!((r1 + 1.0).abs() < 1e-10 && (r2 + 1.0).abs() < 1e-10);
        assert!((d.kappa.0 + 1.0).abs() < 1e-10 && (d.kappa.1 + 1.0).abs() < 1e-10);
    }

    #[test]
    fn normal_scene_focal_equals_curvature_values() {
        let sc = fixtures::builtin("parabolic").unwrap();
        let mut rng = SplitMix64::new(19);
        let mut checked = 0;
        while checked < 60 {
            let q = sc.domain.sample(&mut rng, 0.02);
            let d = match focal_and_limit(&sc, q) {
                Ok(d) => d,
                Err(_) => continue, // singular set of xi
            };
            assert!(d.is_normal_point);
            if let Some((r1, r2)) = d.rho.as_real() {
                let scale = 1.0 + r1.abs().max(r2.abs());
                assert!((r1 - d.kappa.0).abs() <= 1e-8 * scale, "at {q:?}");
                assert!((r2 - d.kappa.1).abs() <= 1e-8 * scale, "at {q:?}");
            } else {
                panic!("normal congruence must have real focal points at {q:?}");
            }
            checked += 1;
        }
    }

    #[test]
    fn midpoint_identities_hold_everywhere_regular() {
        for name in ["parabolic", "skew", "sphere"] {
            let sc = fixtures::builtin(name).unwrap();
            let mut rng = SplitMix64::new(29);
            let mut checked = 0;
            while checked < 100 {
                let q = sc.domain.sample(&mut rng, 0.02);
                let d = match focal_and_limit(&sc, q) {
                    Ok(d) => d,
                    Err(_) => continue,
                };
                assert!(
                    d.midpoint_residuals.0 <= 1e-8 * (1.0 + d.kappa.1.abs()),
                    "{name} sum identity at {q:?}: {}",
                    d.midpoint_residuals.0
                );
                assert!(
                    d.midpoint_residuals.1 <= 1e-8 * (1.0 + d.kappa.1.abs()).powi(2),
                    "{name} gap identity at {q:?}: {}",
                    d.midpoint_residuals.1
                );
                checked += 1;
            }
        }
    }

    #[test]
    fn skew_scene_separates_focal_and_curvature_values() {
        let sc = fixtures::builtin("skew").unwrap();
        let mut rng = SplitMix64::new(37);
        let mut separated = 0;
        let mut total = 0;
        while total < 50 {
            let q = sc.domain.sample(&mut rng, 0.1);
            if q[0].abs() + q[1].abs() < 0.3 {
                continue;
            }
            let d = match focal_and_limit(&sc, q) {
                Ok(d) => d,
                Err(_) => continue,
            };
            total += 1;
            assert!(!d.is_normal_point, "skew flagged normal at {q:?}");
            let gap = match d.rho.as_real() {
                Some((r1, r2)) => (r1 - d.kappa.0).abs().max((r2 - d.kappa.1).abs()),
                None => f64::INFINITY, // complex focal pair certainly differs
            };
            if gap > 1e-3 {
                separated += 1;
            }
        }
        assert!(separated >= 45, "only {separated}/{total} points separated");
    }

    #[test]
    fn singular_point_rejected() {
        let sc = fixtures::builtin("example43").unwrap();
        assert!(matches!(
            focal_and_limit(&sc, [0.3, 0.0]),
            Err(GeomError::SingularClassicalForm { .. })
        ));
    }
}
