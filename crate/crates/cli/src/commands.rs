//! The four subcommands: classify, portrait, trajectory, stability.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use serde_json::json;

use moebius_floquet_core::{
    circular, classify_monodromy, elliptical, extract_boundaries, floquet_spectrum, is_floquet_ep,
    monodromy, poincare_portrait, quadratic_pair, rectangular, run_sweep, stroboscopic_eigenstates,
    trajectory, AxisSpec, C64, ClassGrid64, CurveFamily, Hamiltonian64,
    IntegratorOptions64, MoebiusClass, ModulationCurve64, Polarisation, State64, SweepSpec64,
};

use crate::cnum::{parse_complex, CNum};
use crate::config::FileConfig;
use crate::svg::{viridis, Frame, Svg};

pub enum CmdError {
    Config(String),
    Numerical(String),
}

pub enum Outcome {
    Full,
    Partial,
}

pub struct Ctx {
    pub out_dir: PathBuf,
    pub seed: u64,
    pub integrator: IntegratorOptions64,
    pub file: FileConfig,
}

impl Ctx {
    fn ensure_out(&self) -> Result<(), CmdError> {
        fs::create_dir_all(&self.out_dir)
            .map_err(|e| CmdError::Config(format!("cannot create output dir: {}", e)))
    }

    fn write(&self, name: &str, content: &str) -> Result<PathBuf, CmdError> {
        let path = self.out_dir.join(name);
        fs::write(&path, content)
            .map_err(|e| CmdError::Config(format!("cannot write {}: {}", path.display(), e)))?;
        Ok(path)
    }
}

fn numerical<E: std::fmt::Display>(e: E) -> CmdError {
    CmdError::Numerical(e.to_string())
}

fn config<E: std::fmt::Display>(e: E) -> CmdError {
    CmdError::Config(e.to_string())
}

fn cjson(z: C64) -> serde_json::Value {
    json!([z.re, z.im])
}

// ---------------------------------------------------------------- curves

#[derive(Debug, Args, Clone)]
pub struct CurveFlags {
    /// Curve family: circular | elliptical | rectangular | quadratic-pair
    #[arg(long)]
    pub curve: Option<String>,
    /// Center of the modulation curve (complex, e.g. "0.7+0.25i")
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<CNum>,
    /// Modulation depth (radius / width / lens scale)
    #[arg(long)]
    pub rho: Option<f64>,
    /// Aspect ratio (rectangular, elliptical)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Angular frequency (circular, elliptical)
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Time-scale factor on the traversal
    #[arg(long)]
    pub speed: Option<f64>,
    /// Coupling b (complex); a calibrated default for quadratic-pair
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<CNum>,
    /// Constant detuning eta (complex)
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<CNum>,
}

pub fn parse_family(name: &str) -> Result<CurveFamily, CmdError> {
    match name.to_ascii_lowercase().as_str() {
        "circular" | "circle" => Ok(CurveFamily::Circular),
        "elliptical" | "elliptic" | "ellipse" => Ok(CurveFamily::Elliptical),
        "rectangular" | "rectangle" | "rect" => Ok(CurveFamily::Rectangular),
        "quadratic-pair" | "quadratic_pair" | "quadratic" | "lens" => Ok(CurveFamily::QuadraticPair),
        other => Err(CmdError::Config(format!("unknown curve family '{}'", other))),
    }
}

fn build_curve(flags: &CurveFlags, ctx: &Ctx) -> Result<ModulationCurve64, CmdError> {
    let section = ctx.file.curve();
    let family_name = flags
        .curve
        .clone()
        .or(section.family.clone())
        .ok_or_else(|| CmdError::Config("no curve family given (--curve or [curve].family)".into()))?;
    let family = parse_family(&family_name)?;
    let delta = flags.delta.or(section.delta).map(|c| c.value()).unwrap_or(C64::new(0.0, 0.0));
    let rho = flags.rho.or(section.rho).unwrap_or(1.0);
    let alpha = flags.alpha.or(section.alpha).unwrap_or(1.0);
    let omega = flags.omega.or(section.omega).unwrap_or(2.0 * std::f64::consts::PI);
    let speed = flags.speed.or(section.speed).unwrap_or(1.0);

    let mut curve = match family {
        CurveFamily::Circular => circular(delta, rho, omega).map_err(config)?,
        CurveFamily::Elliptical => elliptical(delta, rho, alpha, omega).map_err(config)?,
        CurveFamily::Rectangular => rectangular(delta, rho, alpha).map_err(config)?,
        CurveFamily::QuadraticPair => quadratic_pair(delta).map_err(config)?,
    };
    if let Some(b) = flags.b.or(section.b) {
        curve = curve.with_coupling(b.value()).map_err(config)?;
    }
    if let Some(eta) = flags.eta.or(section.eta) {
        curve = curve.with_detuning(eta.value());
    }
    if speed != 1.0 {
        curve = curve.with_speed(speed).map_err(config)?;
    }
    if !curve.is_closed(1e-9) {
        eprintln!(
            "warning: modulation curve is not closed (residual {:.3e})",
            curve.closure_residual()
        );
    }
    Ok(curve)
}

fn spectrum_json(curve: &ModulationCurve64, ctx: &Ctx, tol: f64) -> Result<serde_json::Value, CmdError> {
    let m = monodromy(curve, &ctx.integrator).map_err(numerical)?;
    let sp = floquet_spectrum(&m).map_err(numerical)?;
    let class = classify_monodromy(&m, tol).map_err(numerical)?;
    let ep = is_floquet_ep(&m, tol).map_err(numerical)?;
    let det_residual = (m.m.det() - C64::new(1.0, 0.0)).norm();
    Ok(json!({
        "class": class.name(),
        "is_floquet_ep": ep,
        "multipliers": [cjson(sp.multipliers[0]), cjson(sp.multipliers[1])],
        "exponents": [cjson(sp.exponents[0]), cjson(sp.exponents[1])],
        "lambda": [cjson(sp.lambda[0]), cjson(sp.lambda[1])],
        "lambda_modulo": 2.0 * std::f64::consts::PI / m.period,
        "period": m.period,
        "det_residual": det_residual,
    }))
}

// ---------------------------------------------------------------- classify

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Static Hamiltonian entries a,b,c,d (complex, comma-separated)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "curve")]
    pub matrix: Option<Vec<String>>,
    #[command(flatten)]
    pub curve_flags: CurveFlags,
    /// Classification tolerance (default 1e-9 static, 1e-7 monodromy)
    #[arg(long)]
    pub tol: Option<f64>,
}

pub fn cmd_classify(args: &ClassifyArgs, ctx: &Ctx) -> Result<Outcome, CmdError> {
    let report = if let Some(entries) = &args.matrix {
        let tol = args.tol.unwrap_or(1e-9);
        if entries.len() != 4 {
            return Err(CmdError::Config(format!(
                "--matrix needs exactly 4 complex entries a,b,c,d (got {})",
                entries.len()
            )));
        }
        let mut vals = [C64::new(0.0, 0.0); 4];
        for (k, raw) in entries.iter().enumerate() {
            vals[k] = parse_complex(raw).map_err(config)?;
        }
        let h = Hamiltonian64::from_matrix(vals[0], vals[1], vals[2], vals[3]).map_err(config)?;
        let sp = h.eigenvalues();
        json!({
            "class": h.classify(tol).name(),
            "is_ep": h.is_exceptional(tol),
            "eigenvalues": [cjson(sp.lambda_plus), cjson(sp.lambda_minus)],
            "dominant": sp.dominant.map(|d| match d {
                moebius_floquet_core::Dominant::Plus => "plus",
                moebius_floquet_core::Dominant::Minus => "minus",
            }),
            "b_mu": cjson(h.b_mu()),
            "pseudo_hermitian_s": h.pseudo_hermitian_parameter(tol),
        })
    } else if args.curve_flags.curve.is_some() || ctx.file.curve().family.is_some() {
        let tol = args.tol.unwrap_or(1e-7);
        let curve = build_curve(&args.curve_flags, ctx)?;
        spectrum_json(&curve, ctx, tol)?
    } else {
        return Err(CmdError::Config("classify needs --matrix or a curve spec".into()));
    };
    println!("{}", report);
    Ok(Outcome::Full)
}

// ---------------------------------------------------------------- portrait

#[derive(Debug, Args)]
pub struct PortraitArgs {
    /// Mean diagonal tau (complex)
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<CNum>,
    /// Half detuning eta (complex)
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<CNum>,
    /// Coupling b (complex)
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<CNum>,
    /// EP deformation mu (complex)
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<CNum>,
    /// Number of random initial polarisations
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Evolution time span
    #[arg(long = "t-max", default_value_t = 10.0)]
    pub t_max: f64,
    /// Number of samples along each trajectory
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
}

pub fn cmd_portrait(args: &PortraitArgs, ctx: &Ctx) -> Result<Outcome, CmdError> {
    let section = ctx.file.hamiltonian();
    let get = |flag: Option<CNum>, file: Option<CNum>, default: (f64, f64)| {
        flag.or(file).map(|c| c.value()).unwrap_or(C64::new(default.0, default.1))
    };
    let h = Hamiltonian64::new(
        get(args.tau, section.tau, (0.0, 0.0)),
        get(args.eta, section.eta, (0.0, 0.0)),
        get(args.b, section.b, (1.0, 0.0)),
        get(args.mu, section.mu, (0.0, 1.0)),
    )
    .map_err(config)?;

    let portrait = poincare_portrait(&h, args.samples, args.t_max, args.steps, ctx.seed)
        .map_err(numerical)?;

    ctx.ensure_out()?;
    let mut csv = Vec::new();
    portrait.write_csv(&mut csv).map_err(numerical)?;
    let csv = String::from_utf8(csv).expect("csv is utf8");
    let csv_path = ctx.write("portrait.csv", &csv)?;

    // projected plane view: the top hemisphere fills the unit disk
    let size = 820.0;
    let frame = Frame { x0: -1.6, x1: 1.6, y0: -1.6, y1: 1.6, px: 10.0, py: 10.0, pw: 800.0, ph: 800.0 };
    let mut svg = Svg::new(size, size);
    let (cx, cy) = frame.map(0.0, 0.0);
    let (ex, _) = frame.map(1.0, 0.0);
    svg.circle(cx, cy, ex - cx, "#f3f5f8");
    for (sid, traj) in portrait.samples.iter().enumerate() {
        let hue_shift = (sid % 7) as f64 / 7.0;
        let color = viridis(0.15 + 0.5 * hue_shift);
        let mut run: Vec<(f64, f64)> = Vec::new();
        for p in &traj.points {
            let ok = match p {
                Polarisation::Finite(v) if v.norm() < 50.0 => {
                    let (x, y) = frame.map(v.re, v.im);
                    run.push((x, y));
                    true
                }
                _ => false,
            };
            if !ok && run.len() > 1 {
                svg.polyline(&run, &color, 0.7, 0.35);
                run.clear();
            } else if !ok {
                run.clear();
            }
        }
        if run.len() > 1 {
            svg.polyline(&run, &color, 0.7, 0.35);
        }
    }
    for marker in &portrait.markers {
        if let Polarisation::Finite(v) = marker {
            if v.norm() < 1.6 {
                let (x, y) = frame.map(v.re, v.im);
                svg.star(x, y, 9.0, "#3b6fb6");
            }
        }
    }
    svg.text(14.0, 806.0, 12.0, &format!(
        "polarisation portrait: {} samples, t in [0, {}], class {}",
        args.samples, args.t_max, h.classify(1e-9).name()
    ));
    let svg_path = ctx.write("portrait.svg", &svg.finish())?;

    eprintln!("wrote {} and {}", csv_path.display(), svg_path.display());
    Ok(Outcome::Full)
}

// ---------------------------------------------------------------- trajectory

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    #[command(flatten)]
    pub curve_flags: CurveFlags,
    /// Initial state: "eig0", "eig1", or explicit "psi1,psi2" components
    #[arg(long, default_value = "eig0", allow_hyphen_values = true)]
    pub state: String,
    /// Number of modulation periods
    #[arg(long, default_value_t = 6)]
    pub periods: usize,
    /// Samples per period
    #[arg(long = "samples-per-period", default_value_t = 64)]
    pub samples_per_period: usize,
}

pub fn cmd_trajectory(args: &TrajectoryArgs, ctx: &Ctx) -> Result<Outcome, CmdError> {
    let curve = build_curve(&args.curve_flags, ctx)?;
    let m = monodromy(&curve, &ctx.integrator).map_err(numerical)?;

    let s0 = match args.state.as_str() {
        "eig0" | "eig1" => {
            let eigs = stroboscopic_eigenstates(&m, 1e-7);
            let idx = if args.state == "eig0" { 0 } else { 1 };
            let k = idx.min(eigs.len() - 1);
            eigs[k].1
        }
        raw => {
            let parts: Vec<&str> = raw.split(',').collect();
            if parts.len() != 2 {
                return Err(CmdError::Config(
                    "state must be eig0, eig1 or two comma-separated complex components".into(),
                ));
            }
            let a = parse_complex(parts[0]).map_err(config)?;
            let b = parse_complex(parts[1]).map_err(config)?;
            State64::new(a, b).map_err(config)?
        }
    };

    let traj = trajectory(&curve, &s0, args.periods, args.samples_per_period, &ctx.integrator)
        .map_err(numerical)?;

    ctx.ensure_out()?;
    let mut csv = Vec::new();
    traj.write_csv(&mut csv).map_err(numerical)?;
    let csv_path = ctx.write("trajectory.csv", &String::from_utf8(csv).expect("utf8"))?;

    let spectrum = spectrum_json(&curve, ctx, 1e-7)?;
    let json_path = ctx.write("spectrum.json", &format!("{:#}\n", spectrum))?;

    // two complex-plane panels with time encoded as colour
    let width = 1040.0;
    let height = 560.0;
    let mut svg = Svg::new(width, height);
    let t_end = *traj.times.last().unwrap();
    for (panel, label) in [(0usize, "psi1"), (1usize, "psi2")] {
        let comp = |s: &State64| if panel == 0 { s.psi1 } else { s.psi2 };
        let xs: Vec<f64> = traj.states.iter().map(|s| comp(s).re).collect();
        let ys: Vec<f64> = traj.states.iter().map(|s| comp(s).im).collect();
        let finite = |v: &f64| v.is_finite();
        let x_lo = xs.iter().filter(|v| finite(v)).cloned().fold(f64::INFINITY, f64::min);
        let x_hi = xs.iter().filter(|v| finite(v)).cloned().fold(f64::NEG_INFINITY, f64::max);
        let y_lo = ys.iter().filter(|v| finite(v)).cloned().fold(f64::INFINITY, f64::min);
        let y_hi = ys.iter().filter(|v| finite(v)).cloned().fold(f64::NEG_INFINITY, f64::max);
        let pad = 0.08 * ((x_hi - x_lo).max(y_hi - y_lo).max(1e-12));
        let frame = Frame {
            x0: x_lo - pad,
            x1: x_hi + pad,
            y0: y_lo - pad,
            y1: y_hi + pad,
            px: 20.0 + panel as f64 * 510.0,
            py: 30.0,
            pw: 480.0,
            ph: 480.0,
        };
        // axes through the origin where visible
        if frame.x0 < 0.0 && frame.x1 > 0.0 {
            let (x, _) = frame.map(0.0, 0.0);
            svg.line(x, frame.py, x, frame.py + frame.ph, "#cccccc", 1.0);
        }
        if frame.y0 < 0.0 && frame.y1 > 0.0 {
            let (_, y) = frame.map(0.0, 0.0);
            svg.line(frame.px, y, frame.px + frame.pw, y, "#cccccc", 1.0);
        }
        for w in traj.states.windows(2).zip(traj.times.windows(2)) {
            let (pair, ts) = w;
            let a = comp(&pair[0]);
            let b = comp(&pair[1]);
            if a.is_finite() && b.is_finite() {
                let (x1, y1) = frame.map(a.re, a.im);
                let (x2, y2) = frame.map(b.re, b.im);
                svg.polyline(&[(x1, y1), (x2, y2)], &viridis(ts[0] / t_end), 1.4, 0.95);
            }
        }
        svg.text(frame.px, 20.0, 13.0, label);
    }
    svg.text(
        20.0,
        height - 14.0,
        12.0,
        &format!("state trajectory over {} periods; colour encodes time", args.periods),
    );
    let svg_path = ctx.write("trajectory.svg", &svg.finish())?;

    eprintln!(
        "wrote {}, {} and {}",
        csv_path.display(),
        json_path.display(),
        svg_path.display()
    );
    Ok(Outcome::Full)
}

// ---------------------------------------------------------------- stability

#[derive(Debug, Args)]
pub struct StabilityArgs {
    /// Curve family to sweep
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub speed: Option<f64>,
    /// Coupling b (complex)
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<CNum>,
    #[arg(long = "delta-min", allow_negative_numbers = true)]
    pub delta_min: Option<f64>,
    #[arg(long = "delta-max", allow_negative_numbers = true)]
    pub delta_max: Option<f64>,
    #[arg(long = "delta-count")]
    pub delta_count: Option<usize>,
    #[arg(long = "rho-min", allow_negative_numbers = true)]
    pub rho_min: Option<f64>,
    #[arg(long = "rho-max", allow_negative_numbers = true)]
    pub rho_max: Option<f64>,
    #[arg(long = "rho-count")]
    pub rho_count: Option<usize>,
    /// Classification tolerance on the trace-square diagnostic
    #[arg(long = "class-tol")]
    pub class_tol: Option<f64>,
    /// Bisect class boundaries to 1e-6 in parameter space
    #[arg(long, default_value_t = false)]
    pub refine: bool,
}

fn class_fill(class: Option<MoebiusClass>) -> &'static str {
    match class {
        Some(MoebiusClass::Elliptic) => "#3b6fb6",
        Some(MoebiusClass::Hyperbolic) => "#f4d35e",
        Some(MoebiusClass::Parabolic) => "#111111",
        Some(MoebiusClass::Loxodromic) => "#c0392b",
        Some(MoebiusClass::Identity) => "#9ecbff",
        None => "#999999",
    }
}

pub fn cmd_stability(args: &StabilityArgs, ctx: &Ctx) -> Result<Outcome, CmdError> {
    let section = ctx.file.sweep();
    let family_name = args
        .family
        .clone()
        .or(section.family.clone())
        .unwrap_or_else(|| "elliptical".into());
    let family = parse_family(&family_name)?;
    let delta_axis = AxisSpec::new(
        args.delta_min.or(section.delta_min).unwrap_or(-1.0),
        args.delta_max.or(section.delta_max).unwrap_or(6.0),
        args.delta_count.or(section.delta_count).unwrap_or(400),
    )
    .map_err(config)?;
    let rho_axis = AxisSpec::new(
        args.rho_min.or(section.rho_min).unwrap_or(0.0),
        args.rho_max.or(section.rho_max).unwrap_or(4.0),
        args.rho_count.or(section.rho_count).unwrap_or(300),
    )
    .map_err(config)?;

    let mut spec = SweepSpec64::new(family, delta_axis, rho_axis);
    spec.alpha = args.alpha.or(section.alpha).unwrap_or(0.0);
    spec.omega = args.omega.or(section.omega).unwrap_or(std::f64::consts::FRAC_PI_2);
    spec.speed = args.speed.or(section.speed).unwrap_or(1.0);
    if let Some(b) = args.b.or(section.b) {
        spec.b = b.value();
    } else if family == CurveFamily::QuadraticPair {
        spec.b = moebius_floquet_core::quadratic_pair_coupling::<f64>();
    }
    spec.integrator = ctx.integrator;
    spec.class_tol = args.class_tol.or(section.class_tol).unwrap_or(1e-7);

    let grid = run_sweep(&spec).map_err(numerical)?;
    let unresolved = grid.cells.iter().filter(|c| c.class.is_none()).count();

    ctx.ensure_out()?;
    let csv_path = ctx.write("grid.csv", &grid.to_csv_string())?;
    let mut bin = Vec::new();
    grid.write_binary(&mut bin).map_err(numerical)?;
    fs::write(ctx.out_dir.join("grid.bin"), &bin)
        .map_err(|e| CmdError::Config(format!("cannot write grid.bin: {}", e)))?;

    let sets = extract_boundaries(&grid, args.refine);
    let mut btext = String::from("delta,rho,class_a,class_b\n");
    for set in &sets {
        for p in &set.points {
            btext.push_str(&format!(
                "{},{},{},{}\n",
                p.delta, p.rho, set.classes.0.name(), set.classes.1.name()
            ));
        }
    }
    let bounds_path = ctx.write("boundaries.csv", &btext)?;

    let svg_path = ctx.write("stability.svg", &render_stability(&grid, &sets, &spec))?;
    eprintln!(
        "wrote {}, grid.bin, {} and {} ({} unresolved cells)",
        csv_path.display(),
        bounds_path.display(),
        svg_path.display(),
        unresolved
    );

    Ok(if unresolved > 0 { Outcome::Partial } else { Outcome::Full })
}

fn render_stability(
    grid: &ClassGrid64,
    sets: &[moebius_floquet_core::BoundarySet<f64>],
    spec: &SweepSpec64,
) -> String {
    let width = 900.0;
    let height = 640.0;
    let frame = Frame {
        x0: grid.deltas[0],
        x1: *grid.deltas.last().unwrap(),
        y0: grid.rhos[0],
        y1: *grid.rhos.last().unwrap(),
        px: 60.0,
        py: 20.0,
        pw: 800.0,
        ph: 560.0,
    };
    let mut svg = Svg::new(width, height);
    let nd = grid.deltas.len() as f64;
    let nr = grid.rhos.len() as f64;
    let cw = frame.pw / nd;
    let ch = frame.ph / nr;
    for (di, _) in grid.deltas.iter().enumerate() {
        for (ri, _) in grid.rhos.iter().enumerate() {
            let cell = grid.cell(di, ri);
            let x = frame.px + di as f64 * cw;
            let y = frame.py + frame.ph - (ri as f64 + 1.0) * ch;
            svg.rect(x, y, cw + 0.6, ch + 0.6, class_fill(cell.class));
        }
    }
    for set in sets {
        for p in &set.points {
            let (x, y) = frame.map(p.delta, p.rho);
            svg.circle(x, y, 0.9, "#000000");
        }
    }
    // modulation-curve inset, drawn for mid-grid parameters
    let inset = Frame { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0, px: frame.px + frame.pw - 170.0, py: frame.py + 10.0, pw: 150.0, ph: 110.0 };
    svg.rect(inset.px, inset.py, inset.pw, inset.ph, "#ffffffcc");
    let mid_delta = 0.5 * (frame.x0 + frame.x1);
    let mid_rho = 0.5 * (frame.y0 + frame.y1).max(0.2);
    if let Ok(curve) = spec.cell_curve(mid_delta, mid_rho) {
        let n = 160;
        let pts: Vec<C64> = (0..=n)
            .map(|k| curve.mu_at(curve.period() * k as f64 / n as f64))
            .collect();
        let x_lo = pts.iter().map(|p| p.re).fold(f64::INFINITY, f64::min);
        let x_hi = pts.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max);
        let y_lo = pts.iter().map(|p| p.im).fold(f64::INFINITY, f64::min);
        let y_hi = pts.iter().map(|p| p.im).fold(f64::NEG_INFINITY, f64::max);
        let pad = 0.15 * (x_hi - x_lo).max(y_hi - y_lo).max(0.2);
        let f = Frame {
            x0: x_lo - pad,
            x1: x_hi + pad,
            y0: y_lo - pad,
            y1: y_hi + pad,
            px: inset.px + 4.0,
            py: inset.py + 4.0,
            pw: inset.pw - 8.0,
            ph: inset.ph - 8.0,
        };
        let mapped: Vec<(f64, f64)> = pts.iter().map(|p| f.map(p.re, p.im)).collect();
        svg.polyline(&mapped, "#333333", 1.2, 1.0);
        if f.x0 < 0.0 && f.x1 > 0.0 && f.y0 < 0.0 && f.y1 > 0.0 {
            let (sx, sy) = f.map(0.0, 0.0);
            svg.star(sx, sy, 5.0, "#c0392b");
        }
    }
    // axis labels and legend
    svg.text(frame.px, height - 28.0, 12.0, &format!("delta in [{}, {}]", frame.x0, frame.x1));
    svg.text(8.0, frame.py + 12.0, 12.0, &format!("rho up to {}", frame.y1));
    svg.text(
        frame.px,
        height - 10.0,
        12.0,
        &format!(
            "{} family, alpha = {}: stable (blue), unstable (yellow), parabolic boundary (black), loxodromic (red), unresolved (gray)",
            spec.family.name(), spec.alpha
        ),
    );
    svg.finish()
}
