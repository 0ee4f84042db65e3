//! Subcommand definitions and dispatch.

use crate::output;
use clap::{Args, Parser, Subcommand, ValueEnum};
use kummer_core::{
    self as core, fixtures, BdeKind, CongruenceScene, CurveExpr, DirectionField, GeomError,
};
use serde_json::json;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "kummer",
    about = "Geometry of line congruences {x, xi} with frontal direction fields",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args)]
pub struct SceneArgs {
    /// Built-in fixture name or a path to a congruence file.
    #[arg(value_name = "SCENE")]
    pub scene_pos: Option<String>,
    /// Path to a congruence file.
    #[arg(long, value_name = "PATH")]
    pub scene: Option<PathBuf>,
    /// Built-in fixture name (parabolic, example43, sphere, skew, helicoid,
    /// example41).
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
}

impl SceneArgs {
    fn load(&self) -> Result<CongruenceScene, String> {
        let mut sources = 0;
        sources += self.scene_pos.is_some() as u32;
        sources += self.scene.is_some() as u32;
        sources += self.fixture.is_some() as u32;
        if sources != 1 {
            return Err("exactly one scene source required: NAME, --scene PATH or --fixture NAME"
                .to_string());
        }
        if let Some(name) = &self.fixture {
            return fixtures::builtin(name)
                .ok_or_else(|| format!("unknown fixture '{name}' (have {:?})", fixtures::NAMES));
        }
        if let Some(path) = &self.scene {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            return CongruenceScene::from_text(&text).map_err(|e| e.to_string());
        }
        let name = self.scene_pos.as_ref().unwrap();
        if let Some(sc) = fixtures::builtin(name) {
            return Ok(sc);
        }
        let text = std::fs::read_to_string(name).map_err(|e| {
            format!("'{name}' is neither a fixture ({:?}) nor a readable file: {e}", fixtures::NAMES)
        })?;
        CongruenceScene::from_text(&text).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum KindArg {
    Principal,
    Developable,
    Curvature,
}

impl From<KindArg> for BdeKind {
    fn from(k: KindArg) -> BdeKind {
        match k {
            KindArg::Principal => BdeKind::Principal,
            KindArg::Developable => BdeKind::Developable,
            KindArg::Curvature => BdeKind::CurvatureLine,
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Fundamental forms, curvatures, normality and direction equations at a
    /// point (JSON), or over a grid (CSV).
    Forms {
        #[command(flatten)]
        scene: SceneArgs,
        /// Evaluation point u1,u2.
        #[arg(long, value_name = "U1,U2", allow_hyphen_values = true)]
        point: Option<String>,
        /// Emit an N x N grid as CSV instead of a point report.
        #[arg(long, value_name = "N")]
        grid: Option<usize>,
        /// Normality tolerance (relative asymmetry).
        #[arg(long, default_value_t = core::tol::SYMMETRY_TOL)]
        tol: f64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the identity suite at seeded random points; exit 0 iff every
    /// applicable identity holds.
    Verify {
        #[command(flatten)]
        scene: SceneArgs,
        /// RNG seed for the sample points.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sample points.
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Trace integral curves of a direction equation (both branches) and
    /// export them as CSV with the space lift through x.
    Lines {
        #[command(flatten)]
        scene: SceneArgs,
        #[arg(long, value_enum, default_value = "principal")]
        kind: KindArg,
        /// Seed point u1,u2 (repeatable).
        #[arg(long = "seed", value_name = "U1,U2", allow_hyphen_values = true)]
        seeds: Vec<String>,
        /// Auto-seed from an N x N grid when no explicit seeds are given.
        #[arg(long, value_name = "N")]
        grid: Option<usize>,
        /// Integration step in the chart.
        #[arg(long, default_value_t = core::tol::DEFAULT_TRACE_STEP)]
        step: f64,
        #[arg(long, default_value_t = core::tol::DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Quad-mesh a surface of the congruence along a directrix curve (OBJ).
    Mesh {
        #[command(flatten)]
        scene: SceneArgs,
        /// Directrix u1(t),u2(t) in the parameter t.
        #[arg(long, value_name = "U1(T),U2(T)", allow_hyphen_values = true)]
        curve: String,
        /// Parameter range a:b.
        #[arg(long, value_name = "A:B", default_value = "-0.5:0.5", allow_hyphen_values = true)]
        t_range: String,
        #[arg(long, default_value_t = 64)]
        t_samples: usize,
        /// Ruling parameter range a:b.
        #[arg(long, value_name = "A:B", default_value = "-0.5:0.5", allow_hyphen_values = true)]
        w_range: String,
        #[arg(long, default_value_t = 16)]
        w_samples: usize,
        /// Append the striction polyline as an OBJ line record.
        #[arg(long)]
        striction: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Singular sets (det Lambda and det Delta zero curves) as CSV, with
    /// optional direction-equation discriminant overlays.
    Singular {
        #[command(flatten)]
        scene: SceneArgs,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Also extract the discriminant zero set of this equation kind.
        #[arg(long, value_enum, value_name = "KIND")]
        also_discriminant: Option<KindArg>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Striction line of the ruled surface along a directrix curve (CSV).
    Striction {
        #[command(flatten)]
        scene: SceneArgs,
        /// Directrix u1(t),u2(t) in the parameter t.
        #[arg(long, value_name = "U1(T),U2(T)", allow_hyphen_values = true)]
        curve: String,
        #[arg(long, value_name = "A:B", default_value = "-0.5:0.5", allow_hyphen_values = true)]
        t_range: String,
        #[arg(long, default_value_t = 128)]
        t_samples: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected 'a,b', got '{s}'"));
    }
    let a = parts[0].trim().parse().map_err(|e| format!("bad number '{}': {e}", parts[0]))?;
    let b = parts[1].trim().parse().map_err(|e| format!("bad number '{}': {e}", parts[1]))?;
    Ok([a, b])
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(format!("expected 'a:b', got '{s}'"));
    }
    let a: f64 = parts[0].trim().parse().map_err(|e| format!("bad number '{}': {e}", parts[0]))?;
    let b: f64 = parts[1].trim().parse().map_err(|e| format!("bad number '{}': {e}", parts[1]))?;
    if !(a < b) {
        return Err(format!("range must be increasing, got {a}:{b}"));
    }
    Ok((a, b))
}

pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(RunError::Math(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    }
}

enum RunError {
    Usage(String),
    Math(String),
}

impl From<GeomError> for RunError {
    fn from(e: GeomError) -> RunError {
        match e {
            GeomError::Parse(p) => RunError::Usage(p.to_string()),
            other => RunError::Math(other.to_string()),
        }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> RunError {
        RunError::Math(format!("i/o error: {e}"))
    }
}

fn dispatch(cli: Cli) -> Result<i32, RunError> {
    match cli.command {
        Command::Forms { scene, point, grid, tol, out } => {
            let sc = scene.load().map_err(RunError::Usage)?;
            if let Some(n) = grid {
                let text = forms_grid(&sc, n, tol)?;
                output::write_text(out.as_deref(), &text)?;
                return Ok(0);
            }
            let q = match point {
                Some(p) => parse_pair(&p).map_err(RunError::Usage)?,
                None => sc.domain.center(),
            };
            if !sc.domain.contains(q) {
                return Err(RunError::Math(format!(
                    "point ({}, {}) is outside the domain",
                    q[0], q[1]
                )));
            }
            let report = forms_report(&sc, q, tol)?;
            output::write_text(out.as_deref(), &format!("{:#}\n", report))?;
            Ok(0)
        }
        Command::Verify { scene, seed, points, out } => {
            let sc = scene.load().map_err(RunError::Usage)?;
            let rep = core::run_suite(&sc, seed, points);
            let checks: Vec<serde_json::Value> = rep
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "status": c.status.as_str(),
                        "max_residual": c.max_residual,
                        "tolerance": c.tolerance,
                        "samples": c.samples,
                        "note": c.note,
                    })
                })
                .collect();
            let doc = json!({
                "schema": 1,
                "scene": rep.scene,
                "seed": rep.seed,
                "points": rep.points,
                "all_passed": rep.all_passed(),
                "checks": checks,
            });
            output::write_text(out.as_deref(), &format!("{:#}\n", doc))?;
            Ok(if rep.all_passed() { 0 } else { 1 })
        }
        Command::Lines { scene, kind, seeds, grid, step, max_steps, out } => {
            let sc = scene.load().map_err(RunError::Usage)?;
            let kind: BdeKind = kind.into();
            let mut seed_points = Vec::new();
            for s in &seeds {
                seed_points.push(parse_pair(s).map_err(RunError::Usage)?);
            }
            if seed_points.is_empty() {
                let n = grid.unwrap_or(5);
                seed_points = sc.domain.grid(n);
            }
            let coeffs = |q: [f64; 2]| core::scene_bde(&sc, kind, q);
            let det = |q: [f64; 2]| core::congruence::scene_singular_det(&sc, kind, q);
            let field = DirectionField {
                coeffs: &coeffs,
                singular_det: &det,
                domain: sc.domain,
            };
            let mut curves = Vec::new();
            let mut skipped = 0;
            for (i, &seed) in seed_points.iter().enumerate() {
                for branch in [1u8, 2u8] {
                    match core::trace(&field, seed, branch, step, max_steps) {
                        Ok(c) => curves.push((i, c)),
                        Err(e) => {
                            skipped += 1;
                            eprintln!("skipped seed ({}, {}) branch {branch}: {e}", seed[0], seed[1]);
                        }
                    }
                }
            }
            // lift to space through x
            let mut lifted = Vec::new();
            for (i, c) in &curves {
                let mut pts = Vec::with_capacity(c.samples.len());
                for (_, q) in &c.samples {
                    let x_jets = sc.eval_x(*q).map_err(GeomError::from)?;
                    pts.push(core::scene::jet_value(&x_jets));
                }
                lifted.push((*i, c, pts));
            }
            let text = output::curves_csv(&lifted);
            output::write_text(out.as_deref(), &text)?;
            if skipped > 0 {
                eprintln!("{skipped} seed/branch pairs skipped");
            }
            Ok(0)
        }
        Command::Mesh { scene, curve, t_range, t_samples, w_range, w_samples, striction, out } => {
            let sc = scene.load().map_err(RunError::Usage)?;
            let cv = CurveExpr::parse(&curve).map_err(|e| RunError::Usage(e.to_string()))?;
            let (t0, t1) = parse_range(&t_range).map_err(RunError::Usage)?;
            let (w0, w1) = parse_range(&w_range).map_err(RunError::Usage)?;
            if t_samples < 2 {
                return Err(RunError::Usage("t_samples must be at least 2".into()));
            }
            let ts = core::linspace(t0, t1, t_samples);
            let mesh = core::surface_of_congruence(&sc, &cv, &ts, (w0, w1), w_samples)?;
            let st = if striction {
                Some(core::striction_curve(&sc, &cv, &ts)?)
            } else {
                None
            };
            let text = output::mesh_obj(&mesh, st.as_ref());
            output::write_text(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Singular { scene, grid, also_discriminant, out } => {
            let sc = scene.load().map_err(RunError::Usage)?;
            let mut families: Vec<(&str, Vec<Vec<[f64; 2]>>)> = Vec::new();
            // lambda family needs the basis as expressions
            if let Some(omega) = sc.omega.clone() {
                let curves = core::singular_set(&sc.x, &omega, sc.domain, grid);
                families.push(("lambda", curves));
            } else {
                return Err(RunError::Math(
                    "singular needs a scene with omega (the det Lambda family)".into(),
                ));
            }
            // delta family: zero set of det Delta (singular set of xi)
            {
                let sc2 = sc.clone();
                let mut f = |q: [f64; 2]| {
                    core::CongruenceFrame::at(&sc2, q).ok().map(|fr| fr.delta_det)
                };
                let curves =
                    core::marching::zero_curves(&mut f, sc.domain, grid, core::tol::ISO_TOL);
                families.push(("delta", curves));
            }
            if let Some(kind) = also_discriminant {
                let kind: BdeKind = kind.into();
                let sc3 = sc.clone();
                let coeffs = move |q: [f64; 2]| core::scene_bde(&sc3, kind, q);
                match core::discriminant_zero_set(&coeffs, sc.domain, grid, 1e-8) {
                    core::DiscriminantZeroSet::DegenerateEverywhere => {
                        eprintln!("discriminant of {} is degenerate everywhere", kind.as_str());
                    }
                    core::DiscriminantZeroSet::Curves(curves) => {
                        families.push((
                            match kind {
                                BdeKind::Principal => "discriminant_principal",
                                BdeKind::Developable => "discriminant_developable",
                                BdeKind::CurvatureLine => "discriminant_curvature",
                            },
                            curves,
                        ));
                    }
                }
            }
            let empty = families.iter().all(|(_, c)| c.iter().all(|p| p.is_empty()));
            let text = output::zeroset_csv(&families);
            output::write_text(out.as_deref(), &text)?;
            if empty {
                eprintln!("no singular points");
            }
            Ok(0)
        }
        Command::Striction { scene, curve, t_range, t_samples, out } => {
            let sc = scene.load().map_err(RunError::Usage)?;
            let cv = CurveExpr::parse(&curve).map_err(|e| RunError::Usage(e.to_string()))?;
            let (t0, t1) = parse_range(&t_range).map_err(RunError::Usage)?;
            if t_samples < 2 {
                return Err(RunError::Usage("t_samples must be at least 2".into()));
            }
            let ts = core::linspace(t0, t1, t_samples);
            let st = core::striction_curve(&sc, &cv, &ts)?;
            let mut chart = Vec::with_capacity(ts.len());
            for &t in &ts {
                chart.push(cv.point(t).map_err(GeomError::from)?);
            }
            let text = output::striction_csv(&st, &chart);
            output::write_text(out.as_deref(), &text)?;
            Ok(0)
        }
    }
}

fn forms_report(
    sc: &CongruenceScene,
    q: [f64; 2],
    tol: f64,
) -> Result<serde_json::Value, RunError> {
    let mut flags: Vec<String> = Vec::new();

    let classical = core::classical_forms(sc, q)?;
    let omega = core::omega_forms(sc, q)?;
    if omega.delta_det.abs() <= core::tol::SINGULAR_DET_TOL {
        flags.push("delta_singular".into());
    }
    let classical_defined = classical.regular();
    if !classical_defined {
        flags.push("classical_undefined".into());
    }
    let normality = core::is_normal(sc, q, tol)?;
    let principal = core::principal_bde(sc, q)?;
    let umbilic = principal.b_coords.is_identically_zero();
    if umbilic {
        flags.push("umbilic".into());
    }
    let developable = match core::developable_bde(sc, q) {
        Ok(d) => Some(d),
        Err(GeomError::XiNotUnit { .. }) => {
            flags.push("xi_not_unit".into());
            None
        }
        Err(e) => return Err(e.into()),
    };
    let theorem = core::theorem_residual(sc, q)?;
    let relative = sc
        .omega
        .as_ref()
        .and_then(|om| core::relative_curvatures(&sc.x, om, q).ok());
    let focal = if classical_defined {
        Some(core::focal_and_limit(sc, q)?)
    } else {
        None
    };

    let classical_json = if classical_defined || classical.i.frobenius() > 0.0 {
        let v = json!({
            "E": classical.e, "F": classical.f, "G": classical.g,
            "L": classical.l, "M1": classical.m1, "M2": classical.m2, "N": classical.n,
            "I": output::mat2_json(classical.i),
            "II": output::mat2_json(classical.ii),
            "regular": classical_defined,
        });
        if classical_defined {
            v
        } else {
            // coefficients are finite but the point sits on the singular
            // set: central-point quantities are undefined
            json!({ "defined": false, "coefficients": v })
        }
    } else {
        serde_json::Value::Null
    };

    let doc = json!({
        "schema": 1,
        "scene": sc.name,
        "point": [q[0], q[1]],
        "classical": classical_json,
        "omega": {
            "E": omega.e, "F": omega.f, "G": omega.g,
            "L": omega.l, "M1": omega.m1, "M2": omega.m2, "N": omega.n,
            "I": output::mat2_json(omega.i_o),
            "II": output::mat2_json(omega.ii_o),
            "delta": output::mat2_json(omega.delta),
            "delta_det": omega.delta_det,
            "tangency_residual": omega.tangency_residual,
        },
        "normality": {
            "is_normal": normality.is_normal,
            "omega_asymmetry": normality.omega_asymmetry,
            "classical_gap": normality.classical_gap,
        },
        "principal": {
            "b_coords": [principal.b_coords.a, principal.b_coords.b, principal.b_coords.c],
            "pulled_back": [principal.pulled_back.a, principal.pulled_back.b, principal.pulled_back.c],
            "discriminant": principal.b_coords.discriminant(),
            "umbilic": umbilic,
        },
        "developable": developable.map(|d| json!([d.a, d.b, d.c])),
        "theorem_residual": {
            "residual": theorem.residual,
            "relative": theorem.relative,
            "normal_here": theorem.normal_here,
        },
        "relative_curvatures": relative.map(|rc| json!({
            "K": rc.k_rel,
            "H": rc.h_rel,
            "k1": rc.k1,
            "k2": rc.k2,
            "lambda_det": rc.lambda_det,
            "mu": output::mat2_json(rc.mu),
            "alpha": output::mat2_json(rc.alpha),
        })),
        "focal": focal.map(|fl| {
            let rho = match fl.rho {
                core::RootPair::Real(a, b) => json!([a, b]),
                core::RootPair::Complex { re, im } => json!({"re": re, "im": im}),
            };
            json!({
                "rho": rho,
                "kappa": [fl.kappa.0, fl.kappa.1],
                "midpoint_residuals": [fl.midpoint_residuals.0, fl.midpoint_residuals.1],
                "is_normal_point": fl.is_normal_point,
            })
        }),
        "flags": flags,
    });
    Ok(doc)
}

fn forms_grid(sc: &CongruenceScene, n: usize, tol: f64) -> Result<String, RunError> {
    if n < 2 {
        return Err(RunError::Usage("grid must be at least 2".into()));
    }
    let mut rows = Vec::new();
    for q in sc.domain.grid(n) {
        let classical = match core::classical_forms(sc, q) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let omega = match core::omega_forms(sc, q) {
            Ok(o) => o,
            Err(_) => continue,
        };
        let normal = core::is_normal(sc, q, tol).map(|r| r.is_normal).unwrap_or(false);
        let principal = core::principal_bde(sc, q).ok();
        let mut cols: Vec<(&str, f64)> = vec![
            ("E", classical.e),
            ("F", classical.f),
            ("G", classical.g),
            ("L", classical.l),
            ("M1", classical.m1),
            ("M2", classical.m2),
            ("N", classical.n),
            ("delta_det", omega.delta_det),
            ("is_normal", if normal { 1.0 } else { 0.0 }),
        ];
        cols.push((
            "principal_disc",
            principal.map(|p| p.b_coords.discriminant()).unwrap_or(f64::NAN),
        ));
        rows.push((q[0], q[1], cols));
    }
    Ok(output::grid_csv(&rows))
}
