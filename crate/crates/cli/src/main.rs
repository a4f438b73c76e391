//! `adsflat`: build and verify flat Lorentzian surfaces in H³₁ from front specs.
//!
//! Exit status: 0 when every check passes, 1 when a check fails (the report is
//! still written), 2 on a malformed configuration.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use adsflat_core::fronts::prepare;
use adsflat_core::gallery::{build_from_fronts, reach, torus_checks, SCENARIOS};
use adsflat_core::hopf::h;
use adsflat_core::lift::{asymptotic_lift, closure_detect, CLOSED_TOL, LIFT_TOL};
use adsflat_core::selftest::{run_all, DEFAULT_SEED};
use adsflat_core::surface::export::{write_csv, write_obj, Projection};
use adsflat_core::surface::parse_axis;
use adsflat_core::{
    run_scenario, Check, CurveSpec, Error, FlatSurfacePatch, Grid, ScenarioOptions, Tolerances, VerificationReport,
};

#[derive(Parser)]
#[command(name = "adsflat", version, about = "Flat Lorentzian immersions and tori in anti-de Sitter 3-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the algebra, Hopf and causal invariant suites.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write report.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift one front to its asymptotic curve and report closure and causal character.
    Lift {
        #[arg(long)]
        front: PathBuf,
        /// Parameter reach `r` for specs without an explicit domain.
        #[arg(long, default_value_t = 2.2)]
        reach: f64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Synthesize and verify the surface of a front pair.
    Surface(PairArgs),
    /// As `surface`, plus closure, binormal and torus checks.
    Torus(PairArgs),
    /// Run a named scenario from the gallery.
    Scenario(ScenarioArgs),
    /// Write one export of a front pair's surface to a file or stdout, without verification.
    Export {
        #[command(flatten)]
        fronts: Fronts,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum)]
        format: MeshFormat,
        #[arg(long, value_enum, default_value_t = Proj::DropX1)]
        projection: Proj,
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Fronts {
    #[arg(long)]
    front1: PathBuf,
    #[arg(long)]
    front2: PathBuf,
}

#[derive(Args)]
struct GridArgs {
    /// `min:max:step`, used for both axes unless `--grid-v` is given.
    #[arg(long, default_value = "-2:2:0.02", allow_hyphen_values = true)]
    grid: String,
    /// `min:max:step` for the v axis.
    #[arg(long = "grid-v", allow_hyphen_values = true)]
    grid_v: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Tolerance override, e.g. `--tol forms=1e-5`; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Artifacts to write; all three when omitted.
    #[arg(long, value_enum, value_delimiter = ',')]
    format: Vec<Format>,
    #[arg(long, value_enum, default_value_t = Proj::DropX1)]
    projection: Proj,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    fronts: Fronts,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ScenarioArgs {
    #[arg(long, required_unless_present = "list")]
    name: Option<String>,
    /// List the registered scenarios.
    #[arg(long)]
    list: bool,
    /// Largest diagonal parameter for dn-q2.
    #[arg(long = "T", default_value_t = 1e4)]
    t: f64,
    /// Profile constant for dn-q2, in (0, 1).
    #[arg(long, default_value_t = 0.99)]
    c0: f64,
    /// Skip the generic patch verification.
    #[arg(long)]
    no_verify: bool,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Obj,
    Report,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshFormat {
    Csv,
    Obj,
}

#[derive(Clone, Copy, ValueEnum)]
enum Proj {
    DropX1,
    Hopf,
}

impl From<Proj> for Projection {
    fn from(p: Proj) -> Self {
        match p {
            Proj::DropX1 => Projection::DropX1,
            Proj::Hopf => Projection::Hopf,
        }
    }
}

/// Malformed configuration; maps to exit status 2.
struct ConfigError(String);

type Run<T> = Result<T, ConfigError>;

fn config(field: &str, e: impl std::fmt::Display) -> ConfigError {
    ConfigError(format!("{field}: {e}"))
}

fn is_config_error(e: &Error) -> bool {
    matches!(e, Error::Spec(_) | Error::InvalidGrid(_) | Error::Io(_) | Error::Json(_))
}

impl GridArgs {
    fn parse(&self) -> Run<Grid> {
        let u = parse_axis(&self.grid).map_err(|e| config("--grid", e))?;
        let v = match &self.grid_v {
            Some(s) => parse_axis(s).map_err(|e| config("--grid-v", e))?,
            None => u,
        };
        for (flag, ax) in [("--grid", &u), ("--grid-v", &v)] {
            if ax.node_of(0.0).is_none() {
                return Err(config(flag, "the axis must have a node at 0"));
            }
        }
        Ok(Grid::new(u, v))
    }
}

impl OutputArgs {
    fn tolerances(&self) -> Run<Tolerances> {
        let mut t = Tolerances::default();
        for item in &self.tol {
            let (name, value) = item.split_once('=').ok_or_else(|| config("--tol", format!("expected NAME=VALUE, got `{item}`")))?;
            let value: f64 = value.trim().parse().map_err(|_| config("--tol", format!("`{value}` is not a number")))?;
            t.set(name.trim(), value).map_err(|e| config("--tol", e))?;
        }
        Ok(t)
    }

    fn wants(&self, f: Format) -> bool {
        self.format.is_empty() || self.format.contains(&f)
    }
}

fn load(field: &str, path: &Path, r: f64) -> Run<adsflat_core::FrontCurve> {
    let spec = CurveSpec::from_path(path).map_err(|e| match e {
        Error::Io(io) => config(field, format!("{}: {io}", path.display())),
        other => config(field, other),
    })?;
    spec.build(r).map_err(|e| config(field, e))
}

/// Write through a temporary file in the target directory, then rename.
fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> adsflat_core::Result<()>) -> Run<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let field = format!("{}", path.display());
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| config(&field, e))?;
    // tempfile creates 0600; artifacts are ordinary outputs
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(fs::Permissions::from_mode(0o644)).map_err(|e| config(&field, e))?;
    }
    {
        let mut w = std::io::BufWriter::new(tmp.as_file_mut());
        fill(&mut w).map_err(|e| config(&field, e))?;
        w.flush().map_err(|e| config(&field, e))?;
    }
    tmp.persist(path).map_err(|e| config(&field, e.error))?;
    Ok(())
}

fn prepare_out(dir: &Path) -> Run<()> {
    fs::create_dir_all(dir).map_err(|e| config("--out", format!("{}: {e}", dir.display())))
}

fn write_report(dir: &Path, report: &VerificationReport, command: serde_json::Value) -> Run<()> {
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).ok();
    let mut doc = report.to_json(now);
    doc["command"] = command;
    write_atomic(&dir.join("report.json"), |w| {
        serde_json::to_writer_pretty(&mut *w, &doc)?;
        writeln!(w)?;
        Ok(())
    })
}

fn write_patch(dir: &Path, patch: &FlatSurfacePatch, out: &OutputArgs) -> Run<()> {
    if out.wants(Format::Csv) {
        write_atomic(&dir.join("patch.csv"), |w| write_csv(patch, w))?;
    }
    if out.wants(Format::Obj) {
        write_atomic(&dir.join("patch.obj"), |w| write_obj(patch, out.projection.into(), w))?;
    }
    Ok(())
}

fn summarize(report: &VerificationReport) -> ExitCode {
    for c in &report.checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        println!("{tag}  {:<28} {:>11.3e}  (tol {:.1e})", c.invariant, c.max_residual, c.tolerance);
    }
    let failed = report.failures().count();
    if failed == 0 {
        println!("all {} checks pass", report.checks.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} checks failed", report.checks.len());
        ExitCode::from(1)
    }
}

/// A pipeline error that is not a configuration problem becomes a failed check.
fn pipeline_failure(e: &Error) -> VerificationReport {
    let mut r = VerificationReport::default();
    r.push(Check::flag("pipeline", false));
    r.note("error", e.to_string());
    r
}

fn selftest(seed: u64, out: Option<PathBuf>) -> Run<ExitCode> {
    let r = run_all(seed);
    if let Some(dir) = out {
        prepare_out(&dir)?;
        write_report(&dir, &r, json!({ "name": "selftest", "seed": seed }))?;
    }
    Ok(summarize(&r))
}

fn lift(front: &Path, r: f64, dir: &Path) -> Run<ExitCode> {
    let g = load("--front", front, r)?;
    prepare_out(dir)?;
    let mut rep = VerificationReport::default();
    let built = prepare(&g).and_then(|p| asymptotic_lift(&p, 1).map(|a| (p, a)));
    let cmd = json!({ "name": "lift", "front": front.display().to_string(), "reach": r });
    let (p, a) = match built {
        Ok(x) => x,
        Err(e) if is_config_error(&e) => return Err(config("--front", e)),
        Err(e) => {
            let rep = pipeline_failure(&e);
            write_report(dir, &rep, cmd)?;
            eprintln!("adsflat: {e}");
            return Ok(summarize(&rep));
        }
    };
    let (mut quadric, mut projection) = (0.0f64, 0.0f64);
    for u in a.axis().nodes() {
        let z = a.point(u).expect("node inside the domain");
        quadric = quadric.max(z.quadric_residual());
        if let Ok(gamma) = p.gamma(u) {
            projection = projection.max((h(z) - gamma).euclid_norm());
        }
    }
    rep.push(Check::at_most("quadric", quadric, 1e-10));
    rep.push(Check::at_most("projection", projection, LIFT_TOL));
    let speeds = a.speed_sq();
    let (lo, hi) = speeds.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), s| (l.min(*s), h.max(*s)));
    rep.note("speed_sq_range", [lo, hi]);
    rep.note("causal", if hi < 0.0 { "timelike" } else if lo > 0.0 { "spacelike" } else { "mixed" });
    if let Some(l) = p.period().or_else(|| a.period()) {
        let c = closure_detect(&a, l);
        rep.push(Check::at_most("closure", c.residual, CLOSED_TOL));
        rep.note("closure", c);
    }
    write_atomic(&dir.join("lift.csv"), |w| {
        writeln!(w, "u,a0,a1,a2,a3,omega")?;
        for (n, u) in a.axis().nodes().enumerate() {
            let q = a.points()[n];
            writeln!(w, "{u:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}", q.re, q.i_c, q.j_c, q.k_c, a.omega_samples()[n])?;
        }
        Ok(())
    })?;
    write_report(dir, &rep, cmd)?;
    Ok(summarize(&rep))
}

fn pair(args: &PairArgs, torus: bool) -> Run<ExitCode> {
    let grid = args.grid.parse()?;
    let tol = args.output.tolerances()?;
    let r = reach(&grid);
    let g1 = load("--front1", &args.fronts.front1, r)?;
    let g2 = load("--front2", &args.fronts.front2, r)?;
    let dir = &args.output.out;
    prepare_out(dir)?;
    let cmd = json!({
        "name": if torus { "torus" } else { "surface" },
        "front1": args.fronts.front1.display().to_string(),
        "front2": args.fronts.front2.display().to_string(),
        "grid": [args.grid.grid.clone(), args.grid.grid_v.clone().unwrap_or_else(|| args.grid.grid.clone())],
        "tol": tol,
    });
    let outcome = build_from_fronts(&g1, &g2, &grid).and_then(|b| {
        let mut rep = VerificationReport::default();
        if torus {
            torus_checks(&b.patch, &mut rep);
        }
        rep.note("separation", b.pair.separation);
        rep.extend(adsflat_core::verify_patch(&b.patch, &tol)?);
        Ok((b.patch, rep))
    });
    let rep = match outcome {
        Ok((patch, rep)) => {
            write_patch(dir, &patch, &args.output)?;
            rep
        }
        Err(e) if is_config_error(&e) => return Err(ConfigError(e.to_string())),
        Err(e) => {
            eprintln!("adsflat: {e}");
            pipeline_failure(&e)
        }
    };
    if args.output.wants(Format::Report) {
        write_report(dir, &rep, cmd)?;
    }
    Ok(summarize(&rep))
}

fn scenario(args: &ScenarioArgs) -> Run<ExitCode> {
    if args.list {
        for (name, about) in SCENARIOS {
            println!("{name:<16} {about}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let name = args.name.as_deref().expect("clap enforces --name");
    if !SCENARIOS.iter().any(|s| s.0 == name) {
        let known: Vec<&str> = SCENARIOS.iter().map(|s| s.0).collect();
        return Err(config("--name", format!("unknown scenario `{name}`; known: {}", known.join(", "))));
    }
    if !(args.c0 > 0.0 && args.c0 < 1.0) {
        return Err(config("--c0", format!("must lie in (0, 1), got {}", args.c0)));
    }
    if !(args.t >= 10.0) || !args.t.is_finite() {
        return Err(config("--T", format!("must be a finite value ≥ 10, got {}", args.t)));
    }
    let opts = ScenarioOptions { grid: args.grid.parse()?, tol: args.output.tolerances()?, c0: args.c0, t: args.t, verify: !args.no_verify };
    let dir = &args.output.out;
    prepare_out(dir)?;
    let cmd = json!({ "name": "scenario", "scenario": name, "T": args.t, "c0": args.c0, "verify": opts.verify, "tol": opts.tol });
    let rep = match run_scenario(name, &opts) {
        Ok(o) => {
            if let Some(p) = &o.patch {
                write_patch(dir, p, &args.output)?;
            }
            o.report
        }
        Err(e) if is_config_error(&e) => return Err(ConfigError(e.to_string())),
        Err(e) => {
            eprintln!("adsflat: {e}");
            pipeline_failure(&e)
        }
    };
    if args.output.wants(Format::Report) {
        write_report(dir, &rep, cmd)?;
    }
    Ok(summarize(&rep))
}

fn export(fronts: &Fronts, grid: &GridArgs, format: MeshFormat, proj: Proj, output: Option<&Path>) -> Run<ExitCode> {
    let grid = grid.parse()?;
    let r = reach(&grid);
    let g1 = load("--front1", &fronts.front1, r)?;
    let g2 = load("--front2", &fronts.front2, r)?;
    let patch = match build_from_fronts(&g1, &g2, &grid) {
        Ok(b) => b.patch,
        Err(e) if is_config_error(&e) => return Err(ConfigError(e.to_string())),
        Err(e) => {
            eprintln!("adsflat: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let fill = |w: &mut dyn Write| match format {
        MeshFormat::Csv => write_csv(&patch, w),
        MeshFormat::Obj => write_obj(&patch, proj.into(), w),
    };
    match output {
        Some(path) => write_atomic(path, fill)?,
        None => {
            let stdout = std::io::stdout();
            let mut w = std::io::BufWriter::new(stdout.lock());
            fill(&mut w).and_then(|_| Ok(w.flush()?)).map_err(|e| config("stdout", e))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match &cli.command {
        Command::Selftest { seed, out } => selftest(*seed, out.clone()),
        Command::Lift { front, reach, out } => lift(front, *reach, out),
        Command::Surface(a) => pair(a, false),
        Command::Torus(a) => pair(a, true),
        Command::Scenario(a) => scenario(a),
        Command::Export { fronts, grid, format, projection, output } => export(fronts, grid, *format, *projection, output.as_deref()),
    };
    match run {
        Ok(code) => code,
        Err(ConfigError(msg)) => {
            eprintln!("adsflat: {msg}");
            ExitCode::from(2)
        }
    }
}
