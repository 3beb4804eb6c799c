use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bandsolve::analysis::{
    compare_kappa_bvp, compare_kappa_ivp, compare_kappa_pendent, compare_u0, compare_u0_pendent,
    open_grid, pendent_summary, ComparisonVerdict,
};
use bandsolve::bounds::{bounds_report_for, envelope_sessile, Hyperbola, Status};
use bandsolve::io::{
    curvature_residual, plot_profiles, profile_csv, profile_record, write_atomic, Envelope,
    Overlay, PlotOptions, Series, SurfaceMesh,
};
use bandsolve::tolerances::{TOL_BVP, TOL_CONSERVE, TOL_INTEGRATOR};
use bandsolve::{
    extend_by_symmetry, integrate_ivp, normalize_lambda, solve_bvp_with, solve_foliation_with,
    BvpProblem, Error, IntegratorCtrl, ModelParams, ShootingOptions, ShootingResult,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

/// Stationary band profiles: solve, check and export.
///
/// Results go to stdout (or --out) as JSON; a short summary goes to stderr.
/// Exit status: 0 all checks pass, 1 a check failed, 2 usage error,
/// 3 numerical or I/O failure.
#[derive(Parser)]
#[command(name = "bandsolve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the initial value problem u(0) = u0, u'(0) = 0.
    SolveIvp(IvpArgs),
    /// Solve the strip problem with contact angle beta at |r| = a.
    SolveBvp(BvpArgs),
    /// Find the sessile leaf through the point (a, b).
    Foliate(FoliateArgs),
    /// Structure of a pendent profile: first zero, period, amplitude, slope.
    Pendent(PendentArgs),
    /// Every comparison estimate that applies to a strip problem.
    Bounds(BoundsArgs),
    /// Monotonicity of profiles in kappa or in the initial height.
    Compare(CompareArgs),
    /// Write the band as a Wavefront OBJ mesh.
    ExportMesh(MeshArgs),
    /// Write an SVG plot of profiles and comparison hyperbolas.
    Plot(PlotArgs),
    /// Solve a grid of strip problems in parallel.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct IntegratorArgs {
    /// Relative and absolute tolerance of the adaptive integrator.
    #[arg(long, env = "BANDSOLVE_TOL", default_value_t = TOL_INTEGRATOR)]
    tol: f64,
    /// Use fixed steps of at most this length instead of adaptive control.
    #[arg(long, env = "BANDSOLVE_FIXED_STEP")]
    fixed_step: Option<f64>,
    /// Largest distance between stored samples.
    #[arg(long, env = "BANDSOLVE_MAX_STEP", default_value_t = 0.05)]
    max_step: f64,
    /// Also store samples on a uniform grid with this spacing.
    #[arg(long, env = "BANDSOLVE_OUTPUT_STEP")]
    output_step: Option<f64>,
}

impl IntegratorArgs {
    fn ctrl(&self) -> IntegratorCtrl {
        let mut c = match self.fixed_step {
            Some(h) => IntegratorCtrl::fixed(h),
            None => IntegratorCtrl::adaptive(self.tol),
        };
        c = c.with_max_step(self.max_step);
        if let Some(s) = self.output_step {
            c = c.with_output_step(s);
        }
        c
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct IvpArgs {
    #[arg(long, env = "BANDSOLVE_KAPPA")]
    kappa: f64,
    #[arg(long, env = "BANDSOLVE_U0")]
    u0: f64,
    #[arg(long, env = "BANDSOLVE_RMAX")]
    rmax: f64,
    /// Constant part of the curvature, 2H = kappa x3 + lambda.
    #[arg(long, env = "BANDSOLVE_LAMBDA", default_value_t = 0.0)]
    lambda: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct BvpArgs {
    #[arg(long, env = "BANDSOLVE_A")]
    a: f64,
    #[arg(long, env = "BANDSOLVE_BETA")]
    beta: f64,
    #[arg(long, env = "BANDSOLVE_KAPPA")]
    kappa: f64,
    #[arg(long, env = "BANDSOLVE_LAMBDA", default_value_t = 0.0)]
    lambda: f64,
    /// Largest accepted |u'(a) - tanh(beta)|.
    #[arg(long, env = "BANDSOLVE_TOL_BVP", default_value_t = TOL_BVP)]
    tol_bvp: f64,
    /// Also write the solved profile (.csv or .json).
    #[arg(long)]
    profile: Option<PathBuf>,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct FoliateArgs {
    #[arg(long, env = "BANDSOLVE_A")]
    a: f64,
    #[arg(long, env = "BANDSOLVE_B")]
    b: f64,
    #[arg(long, env = "BANDSOLVE_KAPPA")]
    kappa: f64,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct PendentArgs {
    #[arg(long, env = "BANDSOLVE_KAPPA")]
    kappa: f64,
    #[arg(long, env = "BANDSOLVE_U0")]
    u0: f64,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct BoundsArgs {
    #[arg(long, env = "BANDSOLVE_A")]
    a: f64,
    #[arg(long, env = "BANDSOLVE_BETA")]
    beta: f64,
    #[arg(long, env = "BANDSOLVE_KAPPA")]
    kappa: f64,
    #[arg(long, env = "BANDSOLVE_TOL_BVP", default_value_t = TOL_BVP)]
    tol_bvp: f64,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CompareMode {
    Kappa,
    U0,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CompareArgs {
    #[arg(long, value_enum)]
    mode: CompareMode,
    #[arg(long)]
    u0: Option<f64>,
    #[arg(long)]
    k1: Option<f64>,
    #[arg(long)]
    k2: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Compare solved strip problems instead of initial value problems.
    #[arg(long, requires = "beta")]
    a: Option<f64>,
    #[arg(long, requires = "a")]
    beta: Option<f64>,
    /// Right end of the comparison grid for sessile profiles.
    #[arg(long, default_value_t = 3.0)]
    rmax: f64,
    /// Right end of the window for pendent profiles (default: half the first zero).
    #[arg(long)]
    window: Option<f64>,
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct MeshArgs {
    #[arg(long, env = "BANDSOLVE_KAPPA")]
    kappa: f64,
    #[arg(long, env = "BANDSOLVE_U0")]
    u0: f64,
    #[arg(long, env = "BANDSOLVE_RMAX")]
    rmax: f64,
    #[arg(long, env = "BANDSOLVE_LAMBDA", default_value_t = 0.0)]
    lambda: f64,
    /// Extend the ruling direction to |x2| <= half-width.
    #[arg(long, default_value_t = 1.0)]
    half_width: f64,
    /// Number of rulings (evenly spaced stations along the directrix).
    #[arg(long, default_value_t = 201)]
    rulings: usize,
    /// Quads per ruling.
    #[arg(long, default_value_t = 8)]
    segments: usize,
    /// Mesh [-rmax, rmax] instead of [0, rmax].
    #[arg(long)]
    symmetric: bool,
    #[command(flatten)]
    integrator: IntegratorArgs,
    /// Mesh file to write.
    #[arg(long)]
    mesh: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct PlotArgs {
    #[arg(long, env = "BANDSOLVE_KAPPA")]
    kappa: f64,
    /// One or more initial heights (comma separated).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["a", "beta"])]
    u0: Vec<f64>,
    #[arg(long, requires = "u0")]
    rmax: Option<f64>,
    #[arg(long, env = "BANDSOLVE_LAMBDA", default_value_t = 0.0)]
    lambda: f64,
    /// Plot a solved strip problem.
    #[arg(long, requires = "beta")]
    a: Option<f64>,
    #[arg(long, requires = "a")]
    beta: Option<f64>,
    /// Draw the comparison hyperbolas (and the envelope, when there is one).
    #[arg(long)]
    overlays: bool,
    #[arg(long)]
    title: Option<String>,
    #[command(flatten)]
    integrator: IntegratorArgs,
    /// SVG file to write.
    #[arg(long)]
    svg: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    a: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    beta: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    kappa: Vec<f64>,
    /// Worker threads (default: all cores).
    #[arg(long, env = "BANDSOLVE_JOBS")]
    jobs: Option<usize>,
    #[arg(long, env = "BANDSOLVE_TOL_BVP", default_value_t = TOL_BVP)]
    tol_bvp: f64,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Numeric(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_) | Error::Domain(_) | Error::Unsupported(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Numeric(other),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(value: &impl Serialize, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Numeric(e.into()))?;
    text.push('\n');
    match out {
        Some(p) => write_atomic(p, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn options(tol_bvp: f64, integrator: &IntegratorArgs) -> ShootingOptions {
    ShootingOptions {
        tol_bvp,
        ctrl: integrator.ctrl(),
        ..ShootingOptions::default()
    }
}

fn solve_ivp(args: IvpArgs) -> Outcome {
    let ctrl = args.integrator.ctrl();
    let raw = ModelParams::new(args.kappa, args.u0).with_lambda(args.lambda);
    let (params, shift) = normalize_lambda(&raw)?;
    let p = integrate_ivp(&params, args.rmax, &ctrl)?;
    let residual = p.max_first_integral_residual();
    let ok = residual < TOL_CONSERVE;
    match args.format {
        Format::Json => emit(&profile_record(&p, Some(ctrl), shift), args.out.as_deref())?,
        Format::Csv => {
            let text = profile_csv(&p, shift)?;
            match &args.out {
                Some(path) => write_atomic(path, text.as_bytes())?,
                None => print!("{text}"),
            }
        }
    }
    let end = p.last();
    eprintln!(
        "solve-ivp: kappa = {}, u0 = {}, {} samples on [0, {}]; u = {:.10}, u' = {:.10} at the end; \
         first-integral residual {:.2e} ({})",
        args.kappa,
        args.u0,
        p.samples().len(),
        p.r_end(),
        end.u - shift,
        end.slope(),
        residual,
        verdict(ok)
    );
    Ok(ok)
}

fn closed_form_height(s: &ShootingResult) -> f64 {
    let k = s.problem.kappa;
    let h = (s.u0 * s.u0 + 2.0 / k * (s.problem.beta.cosh() - 1.0)).sqrt();
    if s.u0 < 0.0 {
        -h
    } else {
        h
    }
}

fn write_profile(path: &Path, s: &ShootingResult, ctrl: IntegratorCtrl, shift: f64) -> Result<(), Failure> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => write_atomic(path, profile_csv(&s.profile, shift)?.as_bytes())?,
        Some("json") => profile_record(&s.profile, Some(ctrl), shift).write(path)?,
        _ => return Err(usage("--profile must end in .csv or .json")),
    }
    Ok(())
}

fn solve_bvp(args: BvpArgs) -> Outcome {
    let opts = options(args.tol_bvp, &args.integrator);
    let raw = ModelParams::new(args.kappa, 0.0).with_lambda(args.lambda);
    let (_, shift) = normalize_lambda(&raw)?;
    let s = solve_bvp_with(&BvpProblem::new(args.a, args.beta, args.kappa), &opts)?;
    let closed = closed_form_height(&s);
    let height_error = (s.boundary_height() - closed).abs();
    let ok = s.young_residual.abs() <= args.tol_bvp && height_error <= 1e-7;
    if let Some(path) = &args.profile {
        write_profile(path, &s, opts.ctrl, shift)?;
    }
    emit(
        &json!({
            "problem": s.problem,
            "lambda": args.lambda,
            "u0": s.u0 - shift,
            "young_residual": s.young_residual,
            "boundary_height": s.boundary_height() - shift,
            "closed_form_boundary_height": closed - shift,
            "branch": s.branch,
            "reflected": s.reflected,
            "iterations": s.iterations,
            "bracket": s.bracket,
            "height_shift": shift,
            "passed": ok,
        }),
        args.out.as_deref(),
    )?;
    eprintln!(
        "solve-bvp: a = {}, beta = {}, kappa = {}: u0 = {:.12}, u(a) = {:.12}, \
         |u'(a) - tanh(beta)| = {:.2e}, closed-form height error {:.2e} ({})",
        args.a,
        args.beta,
        args.kappa,
        s.u0 - shift,
        s.boundary_height() - shift,
        s.young_residual.abs(),
        height_error,
        verdict(ok)
    );
    Ok(ok)
}

fn foliate(args: FoliateArgs) -> Outcome {
    let opts = options(TOL_BVP, &args.integrator);
    let leaf = solve_foliation_with(args.a, args.b, args.kappa, &opts)?;
    let ok = leaf.residual.abs() <= 1e-8;
    emit(&json!({ "leaf": leaf, "passed": ok }), args.out.as_deref())?;
    eprintln!(
        "foliate: leaf through ({}, {}) has u0 = {:.12}, residual {:.2e} ({})",
        args.a,
        args.b,
        leaf.u0,
        leaf.residual,
        verdict(ok)
    );
    Ok(ok)
}

fn pendent(args: PendentArgs) -> Outcome {
    let s = pendent_summary(&ModelParams::new(args.kappa, args.u0), &args.integrator.ctrl())?;
    let ok = s.passed(1e-6, 1e-6, 1e-6);
    emit(&json!({ "summary": s, "passed": ok }), args.out.as_deref())?;
    eprintln!(
        "pendent: r_o = {:.10} (> {:.10}), period {:.10}, amplitude {}, max slope {:.10} \
         (closed form {:.10}) ({})",
        s.r_o,
        s.zero_lower_bounds.1,
        s.period,
        s.amplitude,
        s.max_slope,
        s.max_slope_closed_form,
        verdict(ok)
    );
    Ok(ok)
}

fn bounds(args: BoundsArgs) -> Outcome {
    let opts = options(args.tol_bvp, &args.integrator);
    let s = solve_bvp_with(&BvpProblem::new(args.a, args.beta, args.kappa), &opts)?;
    let rep = bounds_report_for(&s, &opts.ctrl)?;
    emit(&rep, args.out.as_deref())?;
    eprintln!(
        "bounds: a = {}, beta = {}, kappa = {}, u0 = {:.10}",
        args.a, args.beta, args.kappa, rep.u0
    );
    for r in &rep.records {
        let status = match r.status {
            Status::Passed => "pass",
            Status::Failed => "FAIL",
            Status::Degenerate => "skip",
        };
        match r.slack {
            Some(slack) => eprintln!("  {status}  {:<28} slack {slack:.3e}", r.name),
            None => eprintln!("  {status}  {:<28} degenerate", r.name),
        }
    }
    Ok(rep.passed)
}

fn compare(args: CompareArgs) -> Outcome {
    let ctrl = args.integrator.ctrl();
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| usage(format!("--{name} is required in this mode")));
    let forbid = |present: bool, name: &str| {
        if present {
            Err(usage(format!("--{name} does not apply to this mode")))
        } else {
            Ok(())
        }
    };
    let v: ComparisonVerdict = match args.mode {
        CompareMode::Kappa => {
            forbid(args.kappa.is_some(), "kappa")?;
            forbid(args.delta.is_some(), "delta")?;
            let (k1, k2) = (need(args.k1, "k1")?, need(args.k2, "k2")?);
            if let (Some(a), Some(beta)) = (args.a, args.beta) {
                forbid(args.u0.is_some(), "u0")?;
                let grid: Vec<f64> = (0..=args.points).map(|i| a * i as f64 / args.points as f64).collect();
                let opts = ShootingOptions {
                    ctrl,
                    ..ShootingOptions::default()
                };
                compare_kappa_bvp(a, beta, k1, k2, &grid, &opts)?
            } else {
                let u0 = need(args.u0, "u0")?;
                if k1 > 0.0 && k2 > 0.0 {
                    compare_kappa_ivp(u0, k1, k2, &open_grid(0.0, args.rmax, args.points), &ctrl)?
                } else if k1 < 0.0 && k2 < 0.0 {
                    compare_kappa_pendent(u0, k1, k2, args.window, args.points, &ctrl)?
                } else {
                    return Err(usage("--k1 and --k2 must have the same sign"));
                }
            }
        }
        CompareMode::U0 => {
            forbid(args.k1.is_some(), "k1")?;
            forbid(args.k2.is_some(), "k2")?;
            forbid(args.a.is_some(), "a")?;
            let (kappa, u0, delta) = (need(args.kappa, "kappa")?, need(args.u0, "u0")?, need(args.delta, "delta")?);
            if kappa > 0.0 {
                compare_u0(kappa, u0, delta, &open_grid(0.0, args.rmax, args.points), &ctrl)?
            } else {
                compare_u0_pendent(kappa, u0, delta, args.window, args.points, &ctrl)?
            }
        }
    };
    emit(&v, args.out.as_deref())?;
    eprintln!(
        "compare: {:?} on {} points, min slack {:.3e} at r = {} ({}){}",
        v.relation,
        v.grid.len(),
        v.min_slack,
        v.argmin,
        verdict(v.passed),
        v.note.as_deref().map(|n| format!("; {n}")).unwrap_or_default()
    );
    Ok(v.passed)
}

fn export_mesh(args: MeshArgs) -> Outcome {
    let raw = ModelParams::new(args.kappa, args.u0).with_lambda(args.lambda);
    let (params, shift) = normalize_lambda(&raw)?;
    let mut p = integrate_ivp(&params, args.rmax, &args.integrator.ctrl())?;
    if args.symmetric {
        p = extend_by_symmetry(&p)?;
    }
    let mesh = SurfaceMesh::from_profile(&p, args.half_width, args.rulings, args.segments, shift)?;
    mesh.write_obj(&args.mesh)?;
    let residual = if args.rulings >= 3 {
        Some(curvature_residual(&mesh, raw.kappa, raw.lambda)?)
    } else {
        None
    };
    let horizontal = mesh.rulings_horizontal();
    let ((r_lo, lo), (r_hi, hi)) = mesh.height_extremes();
    emit(
        &json!({
            "mesh": args.mesh,
            "vertices": mesh.vertices.len(),
            "faces": mesh.faces.len(),
            "rulings": mesh.rulings,
            "segments": mesh.segments,
            "half_width": mesh.half_width,
            "height_shift": shift,
            "min_height": { "x1": r_lo, "x3": lo },
            "max_height": { "x1": r_hi, "x3": hi },
            "curvature_residual": residual,
            "rulings_horizontal": horizontal,
            "passed": horizontal,
        }),
        args.out.as_deref(),
    )?;
    eprintln!(
        "export-mesh: {} vertices, {} quads -> {}; x3 in [{lo:.6}, {hi:.6}], curvature residual {}",
        mesh.vertices.len(),
        mesh.faces.len(),
        args.mesh.display(),
        residual.map(|e| format!("{e:.2e}")).unwrap_or_else(|| "n/a".into())
    );
    Ok(horizontal)
}

fn overlay(label: &str, h: Hyperbola, hi: f64) -> Overlay {
    Overlay {
        label: label.into(),
        hyperbola: h,
        range: (0.0, hi),
    }
}

fn plot(args: PlotArgs) -> Outcome {
    let ctrl = args.integrator.ctrl();
    let mut series = Vec::new();
    let mut overlays = Vec::new();
    let mut envelope = None;
    let mut ok = true;
    if let (Some(a), Some(beta)) = (args.a, args.beta) {
        let raw = ModelParams::new(args.kappa, 0.0).with_lambda(args.lambda);
        let (_, shift) = normalize_lambda(&raw)?;
        let opts = ShootingOptions {
            ctrl,
            ..ShootingOptions::default()
        };
        let s = solve_bvp_with(&BvpProblem::new(a, beta, args.kappa), &opts)?;
        series.push(Series::from_profile(
            format!("a = {a}, beta = {beta}"),
            &s.profile,
            shift,
        ));
        if args.overlays && !s.reflected && beta != 0.0 {
            let lift = |h: Hyperbola| Hyperbola { c: h.c - shift, ..h };
            if args.kappa > 0.0 {
                let env = envelope_sessile(&s)?;
                ok = env.lower.status != Status::Failed && env.upper.status != Status::Failed;
                let (y1, y2) = (lift(env.y1.unwrap()), lift(env.y2.unwrap()));
                let y3 = y2.through(a, s.boundary_height() - shift);
                overlays.push(overlay("y1", y1, a));
                overlays.push(overlay("y2", y2, a));
                overlays.push(overlay("y3", y3, a));
                envelope = Some(Envelope {
                    lower: y1,
                    upper: y2,
                    range: (0.0, a),
                });
            } else {
                let y4 = Hyperbola::with_vertex(s.u0, args.kappa * s.u0)?;
                overlays.push(overlay("y4", lift(y4), a));
            }
        }
    } else {
        let rmax = args.rmax.ok_or_else(|| usage("--rmax is required with --u0"))?;
        if args.u0.is_empty() {
            return Err(usage("give either --u0 and --rmax, or --a and --beta"));
        }
        for &u0 in &args.u0 {
            let raw = ModelParams::new(args.kappa, u0).with_lambda(args.lambda);
            let (params, shift) = normalize_lambda(&raw)?;
            let p = integrate_ivp(&params, rmax, &ctrl)?;
            series.push(Series::from_profile(format!("u0 = {u0}"), &p, shift));
            if args.overlays && params.u0 != 0.0 && params.kappa * params.u0 > 0.0 {
                let h = Hyperbola::with_vertex(params.u0, params.kappa * params.u0)?;
                let label = if params.kappa > 0.0 { "y1" } else { "y4" };
                overlays.push(overlay(label, Hyperbola { c: h.c - shift, ..h }, rmax));
            }
        }
    }
    let opts = PlotOptions {
        title: args.title.clone(),
        ..PlotOptions::default()
    };
    let svg = plot_profiles(&series, &overlays, envelope.as_ref(), &opts);
    write_atomic(&args.svg, svg.as_bytes())?;
    emit(
        &json!({
            "svg": args.svg,
            "series": series.iter().map(|s| &s.label).collect::<Vec<_>>(),
            "overlays": overlays.iter().map(|o| &o.label).collect::<Vec<_>>(),
            "envelope": envelope.is_some(),
            "passed": ok,
        }),
        args.out.as_deref(),
    )?;
    eprintln!(
        "plot: {} profile(s), {} overlay(s) -> {}",
        series.len(),
        overlays.len(),
        args.svg.display()
    );
    Ok(ok)
}

#[derive(Serialize)]
struct SweepRow {
    a: f64,
    beta: f64,
    kappa: f64,
    u0: Option<f64>,
    young_residual: Option<f64>,
    boundary_height: Option<f64>,
    bounds_passed: Option<bool>,
    error: Option<String>,
}

fn sweep_one(a: f64, beta: f64, kappa: f64, opts: &ShootingOptions) -> SweepRow {
    let mut row = SweepRow {
        a,
        beta,
        kappa,
        u0: None,
        young_residual: None,
        boundary_height: None,
        bounds_passed: None,
        error: None,
    };
    match solve_bvp_with(&BvpProblem::new(a, beta, kappa), opts) {
        Ok(s) => {
            row.u0 = Some(s.u0);
            row.young_residual = Some(s.young_residual);
            row.boundary_height = Some(s.boundary_height());
            match bounds_report_for(&s, &opts.ctrl) {
                Ok(rep) => row.bounds_passed = Some(rep.passed),
                Err(e) => row.error = Some(e.to_string()),
            }
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

fn sweep(args: SweepArgs) -> Outcome {
    let opts = options(args.tol_bvp, &args.integrator);
    let mut cases = Vec::new();
    for &a in &args.a {
        for &beta in &args.beta {
            for &kappa in &args.kappa {
                cases.push((a, beta, kappa));
            }
        }
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| usage(e.to_string()))?;
    let rows: Vec<SweepRow> = pool.install(|| {
        cases
            .par_iter()
            .map(|&(a, beta, kappa)| sweep_one(a, beta, kappa, &opts))
            .collect()
    });
    let ok = rows.iter().all(|r| r.error.is_none() && r.bounds_passed == Some(true));
    emit(&rows, args.out.as_deref())?;
    let failed = rows.iter().filter(|r| r.error.is_some() || r.bounds_passed == Some(false)).count();
    eprintln!("sweep: {} problems, {} with failures ({})", rows.len(), failed, verdict(ok));
    Ok(ok)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::SolveIvp(a) => solve_ivp(a),
        Command::SolveBvp(a) => solve_bvp(a),
        Command::Foliate(a) => foliate(a),
        Command::Pendent(a) => pendent(a),
        Command::Bounds(a) => bounds(a),
        Command::Compare(a) => compare(a),
        Command::ExportMesh(a) => export_mesh(a),
        Command::Plot(a) => plot(a),
        Command::Sweep(a) => sweep(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
