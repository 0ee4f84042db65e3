//! Quadratic direction equations A du1^2 + B du1 du2 + C du2^2 = 0:
//! pointwise solving, branch-continuous integral-curve tracing, and
//! discriminant zero-set extraction.

use crate::error::GeomError;
use crate::marching::{self, Polyline};
use crate::scene::DomainRect;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BdeKind {
    Principal,
    Developable,
    CurvatureLine,
}

impl BdeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BdeKind::Principal => "principal",
            BdeKind::Developable => "developable",
            BdeKind::CurvatureLine => "curvature_line",
        }
    }
}

/// Coefficients of a direction equation. `scale` records the magnitude of
/// the products the coefficients were assembled from, so that "identically
/// zero" can be told apart from round-off without external context.
#[derive(Debug, Clone, Copy)]
pub struct BdeCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub kind: BdeKind,
    pub scale: f64,
}

impl BdeCoeffs {
    pub fn new(a: f64, b: f64, c: f64, kind: BdeKind, scale: f64) -> BdeCoeffs {
        BdeCoeffs { a, b, c, kind, scale: scale.max(f64::MIN_POSITIVE) }
    }

    pub fn discriminant(&self) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c
    }

    pub fn magnitude(&self) -> f64 {
        self.a.abs() + self.b.abs() + self.c.abs()
    }

    /// All three coefficients at round-off level relative to the assembly
    /// scale (umbilic point / degenerate equation).
    pub fn is_identically_zero(&self) -> bool {
        self.magnitude() <= tol::ZERO_TOL * self.scale
    }

    /// Residual of the quadratic at a direction, normalized so it is
    /// invariant under rescaling of both the coefficients and the direction.
    pub fn normalized_residual(&self, d: [f64; 2]) -> f64 {
        let q = self.a * d[0] * d[0] + self.b * d[0] * d[1] + self.c * d[1] * d[1];
        let n2 = d[0] * d[0] + d[1] * d[1];
        q.abs() / (self.magnitude().max(f64::MIN_POSITIVE) * n2)
    }

    /// Residual relative to the assembly scale instead of the coefficient
    /// magnitude; meaningful where the whole equation degenerates (then any
    /// direction is a solution and this stays at round-off).
    pub fn assembly_residual(&self, d: [f64; 2]) -> f64 {
        let q = self.a * d[0] * d[0] + self.b * d[0] * d[1] + self.c * d[1] * d[1];
        let n2 = d[0] * d[0] + d[1] * d[1];
        q.abs() / (self.scale * n2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    TwoDistinct,
    DoubleRoot,
    IdenticallyZero,
    NoneReal,
}

/// Solutions of a direction equation at a point: up to two projective
/// directions, unit length, first nonzero component positive, sorted by
/// polar angle in [0, pi).
#[derive(Debug, Clone)]
pub struct DirectionPair {
    pub dirs: Vec<[f64; 2]>,
    pub multiplicity: Multiplicity,
}

fn canonicalize(d: [f64; 2]) -> [f64; 2] {
    let n = (d[0] * d[0] + d[1] * d[1]).sqrt();
    let mut d = [d[0] / n, d[1] / n];
    if d[0] < 0.0 || (d[0] == 0.0 && d[1] < 0.0) {
        d = [-d[0], -d[1]];
    }
    // -0.0 would break the sign canon on reparse
    if d[0] == 0.0 {
        d[0] = 0.0;
    }
    if d[1] == 0.0 {
        d[1] = 0.0;
    }
    d
}

fn proj_angle(d: [f64; 2]) -> f64 {
    let mut a = d[1].atan2(d[0]);
    if a < 0.0 {
        a += std::f64::consts::PI;
    }
    if a >= std::f64::consts::PI {
        a -= std::f64::consts::PI;
    }
    a
}

/// Solve the quadratic projectively, handling the degenerate leading
/// coefficients exactly.
pub fn solve_directions(c: &BdeCoeffs) -> DirectionPair {
    let (a, b, cc) = (c.a, c.b, c.c);
    if c.is_identically_zero() {
        return DirectionPair { dirs: vec![], multiplicity: Multiplicity::IdenticallyZero };
    }
    let mag = c.magnitude();
    let near_zero = |v: f64| v.abs() <= tol::ZERO_TOL * mag.max(c.scale);
    if near_zero(a) && near_zero(cc) {
        // b du1 du2 = 0
        let mut dirs = vec![canonicalize([1.0, 0.0]), canonicalize([0.0, 1.0])];
        dirs.sort_by(|x, y| proj_angle(*x).total_cmp(&proj_angle(*y)));
        return DirectionPair { dirs, multiplicity: Multiplicity::TwoDistinct };
    }
    let disc = b * b - 4.0 * a * cc;
    let disc_scale = b * b + 4.0 * (a * cc).abs();
    if disc < -1e-12 * disc_scale {
        return DirectionPair { dirs: vec![], multiplicity: Multiplicity::NoneReal };
    }
    let double = disc.abs() <= 1e-12 * disc_scale;
    let sq = disc.max(0.0).sqrt();
    // Parametrize along the larger of |a|, |c| for stability; the dropped
    // degree corresponds to an exact axis direction.
    let mut dirs: Vec<[f64; 2]> = Vec::new();
    if a.abs() >= cc.abs() {
        // roots t of a t^2 + b t + c, direction (t, 1)
        if double {
            dirs.push(canonicalize([-b / (2.0 * a), 1.0]));
        } else {
            let q = -0.5 * (b + b.signum() * sq);
            let q = if q == 0.0 { -0.5 * sq } else { q };
            dirs.push(canonicalize([q / a, 1.0]));
            if q.abs() > 0.0 {
                dirs.push(canonicalize([cc / q, 1.0]));
            } else {
                dirs.push(canonicalize([0.0, 1.0]));
            }
        }
    } else {
        // roots s of c s^2 + b s + a, direction (1, s); c != 0 here
        if double {
            dirs.push(canonicalize([1.0, -b / (2.0 * cc)]));
        } else if near_zero(a) {
            // du1 (b + c s) with s = du2/du1: directions (1, -b/c) and (0, 1)
            dirs.push(canonicalize([1.0, -b / cc]));
            dirs.push(canonicalize([0.0, 1.0]));
        } else {
            let q = -0.5 * (b + b.signum() * sq);
            let q = if q == 0.0 { -0.5 * sq } else { q };
            dirs.push(canonicalize([1.0, q / cc]));
            dirs.push(canonicalize([1.0, a / q]));
        }
    }
    dirs.sort_by(|x, y| proj_angle(*x).total_cmp(&proj_angle(*y)));
    dirs.dedup_by(|x, y| (x[0] - y[0]).abs() < 1e-14 && (x[1] - y[1]).abs() < 1e-14);
    let multiplicity = if double || dirs.len() == 1 {
        Multiplicity::DoubleRoot
    } else {
        Multiplicity::TwoDistinct
    };
    DirectionPair { dirs, multiplicity }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    LeftDomain,
    HitDiscriminantZero,
    HitSingularSet,
    MaxSteps,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::LeftDomain => "left_domain",
            Termination::HitDiscriminantZero => "hit_discriminant_zero",
            Termination::HitSingularSet => "hit_singular_set",
            Termination::MaxSteps => "max_steps",
        }
    }
}

#[derive(Debug, Clone)]
pub struct IntegralCurve {
    /// (t, point) samples; t is arc-length-like (step * index).
    pub samples: Vec<(f64, [f64; 2])>,
    pub branch: u8,
    pub termination: Termination,
}

/// The data a tracer needs at each point: the direction equation and the
/// determinant whose zero set the curve must not cross (delta for
/// principal/developable equations, lambda for lines of curvature).
pub struct DirectionField<'a> {
    pub coeffs: &'a dyn Fn([f64; 2]) -> Result<BdeCoeffs, GeomError>,
    pub singular_det: &'a dyn Fn([f64; 2]) -> Result<f64, GeomError>,
    pub domain: DomainRect,
}

impl<'a> DirectionField<'a> {
    /// The unit root direction nearest (and sign-aligned with) `reference`.
    /// None when the equation is degenerate there or its two roots have
    /// collided within the branch-continuity tolerance — continuing would
    /// risk a silent branch swap.
    fn direction_near(
        &self,
        q: [f64; 2],
        reference: [f64; 2],
    ) -> Result<Option<[f64; 2]>, GeomError> {
        let c = (self.coeffs)(q)?;
        let sol = solve_directions(&c);
        if sol.multiplicity != Multiplicity::TwoDistinct {
            return Ok(None);
        }
        let a0 = proj_angle(sol.dirs[0]);
        let a1 = proj_angle(sol.dirs[1]);
        let mut gap = (a0 - a1).abs();
        gap = gap.min(std::f64::consts::PI - gap);
        if gap <= tol::BRANCH_COLLISION_RAD {
            return Ok(None);
        }
        let mut best: Option<([f64; 2], f64)> = None;
        for d in &sol.dirs {
            for s in [1.0, -1.0] {
                let cand = [s * d[0], s * d[1]];
                let dot = cand[0] * reference[0] + cand[1] * reference[1];
                if best.map_or(true, |(_, bd)| dot > bd) {
                    best = Some((cand, dot));
                }
            }
        }
        Ok(best.map(|(d, _)| d))
    }

    fn roots_collide(&self, q: [f64; 2]) -> Result<bool, GeomError> {
        let c = (self.coeffs)(q)?;
        let sol = solve_directions(&c);
        Ok(match sol.multiplicity {
            Multiplicity::TwoDistinct => {
                let a0 = proj_angle(sol.dirs[0]);
                let a1 = proj_angle(sol.dirs[1]);
                let mut gap = (a0 - a1).abs();
                gap = gap.min(std::f64::consts::PI - gap);
                gap <= tol::BRANCH_COLLISION_RAD
            }
            _ => true,
        })
    }
}

/// Trace the integral curve of one branch from a seed with fixed-step RK4,
/// keeping branch continuity by angular nearness at every stage.
pub fn trace(
    field: &DirectionField,
    seed: [f64; 2],
    branch: u8,
    step: f64,
    max_steps: usize,
) -> Result<IntegralCurve, GeomError> {
    if !field.domain.contains(seed) {
        return Err(GeomError::OutsideDomain { u1: seed[0], u2: seed[1] });
    }
    let c0 = (field.coeffs)(seed)?;
    let sol0 = solve_directions(&c0);
    if sol0.multiplicity != Multiplicity::TwoDistinct {
        return Err(GeomError::BadSeed {
            u1: seed[0],
            u2: seed[1],
            reason: format!("direction equation has no two distinct roots ({:?})", sol0.multiplicity),
        });
    }
    if field.roots_collide(seed)? {
        return Err(GeomError::BadSeed {
            u1: seed[0],
            u2: seed[1],
            reason: "seed lies on the discriminant zero set".into(),
        });
    }
    let det0 = (field.singular_det)(seed)?;
    if det0.abs() <= tol::SINGULAR_DET_TOL {
        return Err(GeomError::BadSeed {
            u1: seed[0],
            u2: seed[1],
            reason: "seed lies on the singular set".into(),
        });
    }
    let idx = (branch.max(1).min(2) - 1) as usize;
    let d0 = sol0.dirs[idx];
    trace_from_direction(field, seed, d0, step, max_steps, branch)
}

/// Trace with an explicit initial direction (used for branch-reversal and
/// round-trip checks).
pub fn trace_from_direction(
    field: &DirectionField,
    seed: [f64; 2],
    initial_dir: [f64; 2],
    step: f64,
    max_steps: usize,
    branch: u8,
) -> Result<IntegralCurve, GeomError> {
    let mut samples = vec![(0.0, seed)];
    let mut q = seed;
    let mut dir = initial_dir;
    let mut det_prev = (field.singular_det)(seed)?;
    if det_prev.abs() <= tol::SINGULAR_DET_TOL {
        return Ok(IntegralCurve { samples, branch, termination: Termination::HitSingularSet });
    }
    let mut termination = Termination::MaxSteps;
    'steps: for k in 1..=max_steps {
        let stage = |p: [f64; 2], r: [f64; 2]| field.direction_near(p, r);
        let k1 = match stage(q, dir)? {
            Some(d) => d,
            None => {
                termination = Termination::HitDiscriminantZero;
                break 'steps;
            }
        };
        let half = 0.5 * step;
        let p2 = [q[0] + half * k1[0], q[1] + half * k1[1]];
        let k2 = match stage(p2, k1)? {
            Some(d) => d,
            None => {
                termination = Termination::HitDiscriminantZero;
                break 'steps;
            }
        };
        let p3 = [q[0] + half * k2[0], q[1] + half * k2[1]];
        let k3 = match stage(p3, k2)? {
            Some(d) => d,
            None => {
                termination = Termination::HitDiscriminantZero;
                break 'steps;
            }
        };
        let p4 = [q[0] + step * k3[0], q[1] + step * k3[1]];
        let k4 = match stage(p4, k3)? {
            Some(d) => d,
            None => {
                termination = Termination::HitDiscriminantZero;
                break 'steps;
            }
        };
        let qn = [
            q[0] + step / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            q[1] + step / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ];
        if !field.domain.contains(qn) {
            termination = Termination::LeftDomain;
            break 'steps;
        }
        let det = (field.singular_det)(qn)?;
        if det.abs() <= tol::SINGULAR_DET_TOL {
            samples.push((k as f64 * step, qn));
            termination = Termination::HitSingularSet;
            break 'steps;
        }
        if det.signum() != det_prev.signum() {
            // the step jumped across the singular set; bisect the segment
            // onto the crossing and stop there
            let cross = bisect_det_zero(field, q, qn, det_prev, det)?;
            samples.push((k as f64 * step, cross));
            termination = Termination::HitSingularSet;
            break 'steps;
        }
        if field.roots_collide(qn)? {
            samples.push((k as f64 * step, qn));
            termination = Termination::HitDiscriminantZero;
            break 'steps;
        }
        dir = match field.direction_near(qn, dir)? {
            Some(d) => d,
            None => {
                termination = Termination::HitDiscriminantZero;
                break 'steps;
            }
        };
        det_prev = det;
        q = qn;
        samples.push((k as f64 * step, qn));
    }
    Ok(IntegralCurve { samples, branch, termination })
}

fn bisect_det_zero(
    field: &DirectionField,
    a: [f64; 2],
    b: [f64; 2],
    fa: f64,
    _fb: f64,
) -> Result<[f64; 2], GeomError> {
    let mut lo = a;
    let mut hi = b;
    let mut flo = fa;
    for _ in 0..60 {
        let mid = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
        let fm = (field.singular_det)(mid)?;
        if fm.abs() <= tol::SINGULAR_DET_TOL {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok([0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])])
}

/// Zero set of the discriminant of a direction-equation field.
#[derive(Debug)]
pub enum DiscriminantZeroSet {
    /// The equation is degenerate (all coefficients at round-off) across the
    /// whole grid — umbilic everywhere, no meaningful zero curves.
    DegenerateEverywhere,
    Curves(Vec<Polyline>),
}

pub fn discriminant_zero_set(
    coeffs: &dyn Fn([f64; 2]) -> Result<BdeCoeffs, GeomError>,
    domain: DomainRect,
    grid_n: usize,
    iso_tol: f64,
) -> DiscriminantZeroSet {
    assert!(grid_n >= 8, "grid_n must be at least 8");
    // degenerate probe
    let probe = domain.grid(16);
    let mut any_nondegenerate = false;
    for q in probe {
        if let Ok(c) = coeffs(q) {
            if !c.is_identically_zero() {
                any_nondegenerate = true;
                break;
            }
        }
    }
    if !any_nondegenerate {
        return DiscriminantZeroSet::DegenerateEverywhere;
    }
    let mut f = |q: [f64; 2]| coeffs(q).ok().map(|c| c.discriminant());
    DiscriminantZeroSet::Curves(marching::zero_curves(&mut f, domain, grid_n, iso_tol))
}
