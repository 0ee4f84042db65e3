//! File/stdout writers: JSON reports, CSV tables, OBJ meshes.

use kummer_core::mat::Vec3;
use kummer_core::{IntegralCurve, QuadMesh, StrictionCurve};
use std::fs;
use std::io::Write;
use std::path::Path;

pub fn write_text(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())
        }
    }
}

pub fn mat2_json(m: kummer_core::mat::Mat2) -> serde_json::Value {
    // row-major
    serde_json::json!([m.0[0][0], m.0[0][1], m.0[1][0], m.0[1][1]])
}

/// CSV for traced curves: one row per sample with the space lift through x.
pub fn curves_csv(curves: &[(usize, &IntegralCurve, Vec<Vec3>)]) -> String {
    let mut s = String::from("curve,branch,t,u1,u2,x,y,z\n");
    for (id, curve, lift) in curves {
        for ((t, q), p) in curve.samples.iter().zip(lift) {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                id, curve.branch, t, q[0], q[1], p.0[0], p.0[1], p.0[2]
            ));
        }
    }
    s
}

/// CSV for zero-set families: family,curve_id,u1,u2.
pub fn zeroset_csv(families: &[(&str, Vec<Vec<[f64; 2]>>)]) -> String {
    let mut s = String::from("family,curve_id,u1,u2\n");
    let mut any = false;
    for (family, curves) in families {
        for (ci, c) in curves.iter().enumerate() {
            for p in c {
                any = true;
                s.push_str(&format!("{},{},{},{}\n", family, ci, p[0], p[1]));
            }
        }
    }
    if !any {
        s.push_str("# no singular points\n");
    }
    s
}

pub fn striction_csv(sc: &StrictionCurve, chart: &[[f64; 2]]) -> String {
    let mut s = String::from("t,u1,u2,x,y,z,central\n");
    for i in 0..sc.ts.len() {
        let p = sc.points[i];
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            sc.ts[i], chart[i][0], chart[i][1], p.0[0], p.0[1], p.0[2], sc.central[i]
        ));
    }
    s
}

/// Wavefront OBJ with v/f records for the quad mesh; the optional striction
/// polyline is appended as an l record.
pub fn mesh_obj(mesh: &QuadMesh, striction: Option<&StrictionCurve>) -> String {
    let mut s = String::new();
    for v in &mesh.vertices {
        s.push_str(&format!("v {} {} {}\n", v.0[0], v.0[1], v.0[2]));
    }
    let idx = |i: usize, j: usize| i * mesh.nw + j + 1; // 1-based
    if mesh.nw >= 2 {
        for i in 0..mesh.nt.saturating_sub(1) {
            for j in 0..mesh.nw - 1 {
                s.push_str(&format!(
                    "f {} {} {} {}\n",
                    idx(i, j),
                    idx(i + 1, j),
                    idx(i + 1, j + 1),
                    idx(i, j + 1)
                ));
            }
        }
    }
    if let Some(st) = striction {
        let base = mesh.vertices.len();
        for p in &st.points {
            s.push_str(&format!("v {} {} {}\n", p.0[0], p.0[1], p.0[2]));
        }
        if st.points.len() >= 2 {
            s.push_str("l");
            for k in 0..st.points.len() {
                s.push_str(&format!(" {}", base + k + 1));
            }
            s.push('\n');
        }
    }
    s
}

/// CSV grid of pointwise quantities.
pub fn grid_csv(rows: &[(f64, f64, Vec<(&str, f64)>)]) -> String {
    let mut s = String::from("u1,u2");
    if let Some((_, _, cols)) = rows.first() {
        for (name, _) in cols {
            s.push(',');
            s.push_str(name);
        }
    }
    s.push('\n');
    for (u1, u2, cols) in rows {
        s.push_str(&format!("{},{}", u1, u2));
        for (_, v) in cols {
            s.push_str(&format!(",{}", v));
        }
        s.push('\n');
    }
    s
}
