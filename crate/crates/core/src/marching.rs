//! Zero-level curve extraction for scalar fields on a rectangle.
//!
//! Marching squares over a cell-vertex grid, with two kinds of edge points:
//! sign-change crossings (refined by bisection) and tangential touches —
//! local minima of |f| below the iso tolerance on edges without a sign
//! change. The touch pass is what picks up even-order zero sets such as
//! a non-negative discriminant vanishing along a curve. Segment endpoints
//! are keyed by quantized position so curves passing exactly through grid
//! vertices still chain up.

use crate::scene::DomainRect;
use std::collections::HashMap;

pub type Polyline = Vec<[f64; 2]>;

/// Position key: quantized coordinates, so coincident points from different
/// edges merge.
type PosKey = (i64, i64);

#[derive(Debug, Clone, Copy)]
struct EdgePoint {
    key: PosKey,
    p: [f64; 2],
}

/// Extract the zero set of `f` on `rect` with an n x n cell grid. Evaluation
/// failures (None) poison the incident cells. Every emitted vertex satisfies
/// |f| <= iso_tol.
pub fn zero_curves(
    f: &mut dyn FnMut([f64; 2]) -> Option<f64>,
    rect: DomainRect,
    n: usize,
    iso_tol: f64,
) -> Vec<Polyline> {
    assert!(n >= 8, "grid must be at least 8x8");
    let nv = n + 1;
    let h1 = (rect.u1_max - rect.u1_min) / n as f64;
    let h2 = (rect.u2_max - rect.u2_min) / n as f64;
    let vx = |i: usize| rect.u1_min + i as f64 * h1;
    let vy = |j: usize| rect.u2_min + j as f64 * h2;
    let quant = h1.min(h2) / 1048576.0;
    let key_of = move |p: [f64; 2]| -> PosKey {
        ((p[0] / quant).round() as i64, (p[1] / quant).round() as i64)
    };

    let mut vals = vec![f64::NAN; nv * nv];
    let mut max_abs = 0.0f64;
    for j in 0..nv {
        for i in 0..nv {
            if let Some(v) = f([vx(i), vy(j)]) {
                vals[j * nv + i] = v;
                max_abs = max_abs.max(v.abs());
            }
        }
    }
    let touch_trigger = (1e-2 * max_abs).max(iso_tol);

    // one zero point per edge at most; edges are indexed (horizontal?, i, j)
    let mut edge_points: HashMap<(bool, usize, usize), EdgePoint> = HashMap::new();
    for j in 0..nv {
        for i in 0..nv {
            let fa = vals[j * nv + i];
            if !fa.is_finite() {
                continue;
            }
            if i + 1 < nv {
                let fb = vals[j * nv + i + 1];
                if fb.is_finite() {
                    if let Some(p) =
                        edge_zero(f, [vx(i), vy(j)], [vx(i + 1), vy(j)], fa, fb, iso_tol, touch_trigger)
                    {
                        edge_points.insert((true, i, j), EdgePoint { key: key_of(p), p });
                    }
                }
            }
            if j + 1 < nv {
                let fb = vals[(j + 1) * nv + i];
                if fb.is_finite() {
                    if let Some(p) =
                        edge_zero(f, [vx(i), vy(j)], [vx(i), vy(j + 1)], fa, fb, iso_tol, touch_trigger)
                    {
                        edge_points.insert((false, i, j), EdgePoint { key: key_of(p), p });
                    }
                }
            }
        }
    }

    // assemble per-cell segments
    let mut segments: Vec<(EdgePoint, EdgePoint)> = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let corners = [
                vals[j * nv + i],
                vals[j * nv + i + 1],
                vals[(j + 1) * nv + i],
                vals[(j + 1) * nv + i + 1],
            ];
            if corners.iter().any(|v| !v.is_finite()) {
                continue;
            }
            // order: bottom, top, left, right
            let keys = [
                (true, i, j),
                (true, i, j + 1),
                (false, i, j),
                (false, i + 1, j),
            ];
            let mut pts: Vec<EdgePoint> = Vec::new();
            for k in keys {
                if let Some(ep) = edge_points.get(&k) {
                    // drop duplicates at the same quantized position (zero
                    // curve through a grid vertex)
                    if !pts.iter().any(|e| e.key == ep.key) {
                        pts.push(*ep);
                    }
                }
            }
            match pts.len() {
                2 => segments.push((pts[0], pts[1])),
                3 => {
                    // degenerate contact: connect the closest pair, then the
                    // leftover point to the nearer end
                    let d01 = dist2(pts[0].p, pts[1].p);
                    let d02 = dist2(pts[0].p, pts[2].p);
                    let d12 = dist2(pts[1].p, pts[2].p);
                    let (a, b, c) = if d01 <= d02 && d01 <= d12 {
                        (0, 1, 2)
                    } else if d02 <= d01 && d02 <= d12 {
                        (0, 2, 1)
                    } else {
                        (1, 2, 0)
                    };
                    segments.push((pts[a], pts[b]));
                    let near = if dist2(pts[a].p, pts[c].p) < dist2(pts[b].p, pts[c].p) {
                        pts[a]
                    } else {
                        pts[b]
                    };
                    segments.push((near, pts[c]));
                }
                4 => {
                    // saddle: split by the center sample when the corner
                    // signs alternate, otherwise pair by proximity
                    let (bottom, top, left, right) = (pts[0], pts[1], pts[2], pts[3]);
                    let center = [vx(i) + 0.5 * h1, vy(j) + 0.5 * h2];
                    let fc = f(center).unwrap_or(0.0);
                    let f00 = corners[0];
                    if (fc >= 0.0) == (f00 >= 0.0) {
                        segments.push((bottom, right));
                        segments.push((left, top));
                    } else {
                        segments.push((bottom, left));
                        segments.push((right, top));
                    }
                }
                _ => {}
            }
        }
    }
    segments.retain(|(a, b)| a.key != b.key);

    chain(segments)
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    let d0 = a[0] - b[0];
    let d1 = a[1] - b[1];
    d0 * d0 + d1 * d1
}

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

/// Zero point on the edge [a, b], or None. Crossings are bisected to
/// |f| <= iso_tol; same-sign edges get a bounded golden-section search for a
/// |f| minimum when an endpoint is already suspiciously small.
fn edge_zero(
    f: &mut dyn FnMut([f64; 2]) -> Option<f64>,
    a: [f64; 2],
    b: [f64; 2],
    fa: f64,
    fb: f64,
    iso_tol: f64,
    touch_trigger: f64,
) -> Option<[f64; 2]> {
    if fa.abs() <= iso_tol && fa.abs() <= fb.abs() {
        return Some(a);
    }
    if fb.abs() <= iso_tol {
        return Some(b);
    }
    let sa = fa >= 0.0;
    let sb = fb >= 0.0;
    if sa != sb {
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        let mut f0 = fa;
        for _ in 0..80 {
            let tm = 0.5 * (t0 + t1);
            let fm = f(lerp(a, b, tm))?;
            if fm.abs() <= iso_tol {
                return Some(lerp(a, b, tm));
            }
            if (fm >= 0.0) == (f0 >= 0.0) {
                t0 = tm;
                f0 = fm;
            } else {
                t1 = tm;
            }
        }
        let tm = 0.5 * (t0 + t1);
        let fm = f(lerp(a, b, tm))?;
        return (fm.abs() <= iso_tol).then(|| lerp(a, b, tm));
    }
    // tangential touch: minimize |f| along the edge
    if fa.abs().min(fb.abs()) > touch_trigger {
        return None;
    }
    let phi = 0.5 * (3.0 - 5.0f64.sqrt());
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    let mut m0 = t0 + phi * (t1 - t0);
    let mut m1 = t1 - phi * (t1 - t0);
    let mut g0 = f(lerp(a, b, m0))?.abs();
    let mut g1 = f(lerp(a, b, m1))?.abs();
    for _ in 0..70 {
        if g0 < g1 {
            t1 = m1;
            m1 = m0;
            g1 = g0;
            m0 = t0 + phi * (t1 - t0);
            g0 = f(lerp(a, b, m0))?.abs();
        } else {
            t0 = m0;
            m0 = m1;
            g0 = g1;
            m1 = t1 - phi * (t1 - t0);
            g1 = f(lerp(a, b, m1))?.abs();
        }
    }
    let candidates = [(0.0, fa.abs()), (1.0, fb.abs()), (m0, g0), (m1, g1)];
    let (tbest, gbest) = candidates
        .iter()
        .copied()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap();
    (gbest <= iso_tol).then(|| lerp(a, b, tbest))
}

/// Merge segments sharing endpoint keys into polylines.
fn chain(segments: Vec<(EdgePoint, EdgePoint)>) -> Vec<Polyline> {
    let mut adj: HashMap<PosKey, Vec<usize>> = HashMap::new();
    for (si, (a, b)) in segments.iter().enumerate() {
        adj.entry(a.key).or_default().push(si);
        adj.entry(b.key).or_default().push(si);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segments[start];
        let mut line: Vec<EdgePoint> = vec![a, b];
        for forward in [true, false] {
            loop {
                let end = if forward { *line.last().unwrap() } else { line[0] };
                let next = adj
                    .get(&end.key)
                    .and_then(|v| v.iter().copied().find(|&si| !used[si]));
                match next {
                    Some(si) => {
                        used[si] = true;
                        let (sa, sb) = segments[si];
                        let add = if sa.key == end.key { sb } else { sa };
                        if forward {
                            line.push(add);
                        } else {
                            line.insert(0, add);
                        }
                    }
                    None => break,
                }
            }
        }
        out.push(line.into_iter().map(|e| e.p).collect());
    }
    out
}
