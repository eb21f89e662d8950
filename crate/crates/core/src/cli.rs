//! The `lsl` command-line front end.
//!
//! Exit codes: 0 when every check in the report passes, 1 when a check fails or
//! the surface is unsuitable for the request (not of general type, kind change,
//! reconstruction abort), 2 for malformed input and violated preconditions.
//! `LSL_THREADS` sets the worker count.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bonnet::{self, analyze_mesh, FrameState, ReconstructionResult, Seed};
use crate::canonical;
use crate::corpus::{self, CorpusSurface, ReferenceKind};
use crate::error::{Error, Result};
use crate::grid::{Chart, Field, Grid};
use crate::io::{self, report::digest, Check, Report};
use crate::natural;
use crate::numerics::linspace;
use crate::surface::{analyze_grid, classify, default_classify_tol, pseudo_arc_check, SurfaceKind, SurfaceProvider};

#[derive(Debug, Parser)]
#[command(name = "lsl", version, about = "Lorentz surfaces in Minkowski 3-space")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Record wall time in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fundamental forms, invariants and classification of a surface or chart.
    Analyze(AnalyzeArgs),
    /// Canonical coordinates with a chosen initial point.
    Canonicalize(CanonicalizeArgs),
    /// Natural-equation residuals of a chart.
    Residual(ResidualArgs),
    /// Rebuild a surface from (F, H, eps1, eps2).
    Reconstruct(ReconstructArgs),
    /// The built-in reference surfaces.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec(pub usize, pub usize);

impl FromStr for GridSpec {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s
            .split_once(['x', 'X', '×'])
            .ok_or_else(|| format!("expected NUxNV, got `{s}`"))?;
        let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
        let (nu, nv) = (n(a)?, n(b)?);
        if nu < 3 || nv < 3 {
            return Err("grids need at least 3 nodes per axis".into());
        }
        Ok(GridSpec(nu, nv))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainSpec(pub (f64, f64), pub (f64, f64));

impl FromStr for DomainSpec {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once(',').ok_or_else(|| format!("expected umin:umax,vmin:vmax, got `{s}`"))?;
        let range = |t: &str| -> std::result::Result<(f64, f64), String> {
            let (lo, hi) = t.split_once(':').ok_or_else(|| format!("expected min:max, got `{t}`"))?;
            let p = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
            let (lo, hi) = (p(lo)?, p(hi)?);
            if !(lo < hi) {
                return Err(format!("empty range {lo}:{hi}"));
            }
            Ok((lo, hi))
        };
        Ok(DomainSpec(range(a)?, range(b)?))
    }
}

#[derive(Debug, Clone, Args)]
struct GridArgs {
    /// Node counts along u and v.
    #[arg(long, default_value = "101x101")]
    grid: GridSpec,
    /// Parameter rectangle; defaults to the surface's domain.
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<DomainSpec>,
    /// Initial point; snapped to the nearest node. Defaults to the centre.
    #[arg(long, allow_hyphen_values = true)]
    u0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    v0: Option<f64>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Corpus name or chart file.
    source: String,
    #[command(flatten)]
    grid: GridArgs,
    /// Report path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write `<STEM>.obj` and `<STEM>.csv` of the sampled surface.
    #[arg(long)]
    mesh: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    tol_closed_form: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol_isotropy: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol_canonical: f64,
}

#[derive(Debug, Args)]
struct CanonicalizeArgs {
    /// Corpus name or chart file carrying L and N.
    source: String,
    #[command(flatten)]
    grid: GridArgs,
    /// Canonical coordinate of the initial point; defaults to u0.
    #[arg(long, allow_hyphen_values = true)]
    tilde_u0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tilde_v0: Option<f64>,
    /// Canonical chart path.
    #[arg(long)]
    chart: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-6)]
    tol_canonical: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol_closed_form: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    General,
    Cmc,
    Minimal,
}

#[derive(Debug, Args)]
struct ResidualArgs {
    /// Chart file or corpus name.
    source: String,
    #[arg(long, value_enum, default_value = "general")]
    mode: Mode,
    /// Same chart on a grid with half the step, for the order estimate.
    #[arg(long)]
    refined: Option<String>,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-3)]
    tol_residual: f64,
    #[arg(long, default_value_t = 1.9)]
    tol_order: f64,
}

#[derive(Debug, Args)]
struct ReconstructArgs {
    /// Chart file or corpus name.
    source: String,
    /// `standard` or a JSON file with X, Y, l, x.
    #[arg(long, default_value = "standard")]
    seed: String,
    /// Mesh stem; `.obj` and `.csv` are appended.
    #[arg(long)]
    mesh: PathBuf,
    /// Reconstruct both constant-H surfaces (suffixes `_p` and `_m`).
    #[arg(long)]
    pair: bool,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-6)]
    tol_drift: f64,
}

#[derive(Debug, Subcommand)]
enum CorpusCommand {
    /// Names and kinds.
    List,
    /// Parametrization, domain and reference values of one surface.
    Show { name: String },
    /// Write the closed-form chart of a surface.
    Chart {
        name: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Map an error to the process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotGeneralType { .. } | Error::KindChange { .. } | Error::Abort { .. } => 1,
        _ => 2,
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let threads = std::env::var("LSL_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()).filter(|&n| n > 0);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("lsl: error: thread pool: {e}");
            return 2;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("lsl: error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let start = Instant::now();
    let report = match &cli.command {
        Command::Analyze(a) => analyze(a)?,
        Command::Canonicalize(a) => canonicalize(a)?,
        Command::Residual(a) => residual(a)?,
        Command::Reconstruct(a) => reconstruct(a)?,
        Command::Corpus(c) => return corpus_command(c),
    };
    let (mut report, output) = report;
    if cli.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    for w in &report.warnings {
        eprintln!("lsl: warning: {w}");
    }
    match output {
        Some(p) => report.write(&p)?,
        None => print!("{}", report.to_json()?),
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

enum Source {
    Corpus(CorpusSurface),
    File { path: PathBuf, chart: Chart, digest: String },
}

impl Source {
    fn open(s: &str) -> Result<Self> {
        if let Ok(surface) = CorpusSurface::from_name(s) {
            return Ok(Source::Corpus(surface));
        }
        let path = PathBuf::from(s);
        if !path.exists() {
            return Err(Error::Format(format!(
                "`{s}` is neither a corpus surface ({}) nor a chart file",
                corpus::NAMES.join(", ")
            )));
        }
        let bytes = std::fs::read(&path)?;
        let text = String::from_utf8(bytes.clone()).map_err(|e| Error::Format(e.to_string()))?;
        let chart = io::chart_file::chart_from_str(&text)?;
        Ok(Source::File { path, chart, digest: digest(&bytes) })
    }

    fn id(&self) -> Value {
        match self {
            Source::Corpus(s) => json!({ "corpus": s.name() }),
            Source::File { digest, .. } => json!({ "chart_sha256": digest }),
        }
    }
}

/// Grid and snapped initial node for a corpus surface.
fn corpus_grid(surface: CorpusSurface, g: &GridArgs) -> Result<(Grid, (usize, usize))> {
    let domain = match g.domain {
        Some(DomainSpec(u, v)) => (u, v),
        None => {
            let d = surface.default_domain();
            ((d.u_min, d.u_max), (d.v_min, d.v_max))
        }
    };
    let grid = Grid::new(linspace(domain.0 .0, domain.0 .1, g.grid.0), linspace(domain.1 .0, domain.1 .1, g.grid.1))?;
    let base = snap(&grid, g.u0, g.v0);
    Ok((grid, base))
}

fn nearest(axis: &[f64], x: f64) -> usize {
    let mut best = 0;
    for (k, a) in axis.iter().enumerate() {
        if (a - x).abs() < (axis[best] - x).abs() {
            best = k;
        }
    }
    best
}

fn snap(grid: &Grid, u0: Option<f64>, v0: Option<f64>) -> (usize, usize) {
    let i = u0.map_or(grid.nu() / 2, |u| nearest(&grid.u, u));
    let j = v0.map_or(grid.nv() / 2, |v| nearest(&grid.v, v));
    (i, j)
}

fn grid_inputs(g: &GridArgs) -> Value {
    json!({
        "grid": [g.grid.0, g.grid.1],
        "domain": g.domain.map(|DomainSpec(u, v)| [u.0, u.1, v.0, v.1]),
        "u0": g.u0,
        "v0": g.v0,
    })
}

/// Chart for a source: the file chart, or the closed-form chart of a corpus surface.
fn source_chart(src: &Source, g: &GridArgs) -> Result<Chart> {
    match src {
        Source::File { chart, .. } => Ok(chart.clone()),
        Source::Corpus(s) => {
            let (grid, (i, j)) = corpus_grid(*s, g)?;
            let (u0, v0) = (grid.u[i], grid.v[j]);
            corpus::reference_chart(s.name(), grid.u, grid.v, u0, v0)
        }
    }
}

fn range(f: &Field) -> Value {
    let (lo, hi) = f.values().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(*x), b.max(*x)));
    json!({ "min": lo, "max": hi })
}

fn kind_name(k: SurfaceKind) -> &'static str {
    match k {
        SurfaceKind::GeneralFirstKind => "first",
        SurfaceKind::GeneralSecondKind => "second",
        SurfaceKind::NotGeneralType => "not_general_type",
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

fn analyze(a: &AnalyzeArgs) -> Result<(Report, Option<PathBuf>)> {
    let src = Source::open(&a.source)?;
    let inputs = json!({ "source": src.id(), "grid": grid_inputs(&a.grid) });
    let mut rep = Report::new("analyze", &inputs);
    let tol_cf = rep.tolerance("closed_form", a.tol_closed_form);
    let tol_iso = rep.tolerance("isotropy", a.tol_isotropy);
    let tol_can = rep.tolerance("canonical", a.tol_canonical);

    let chart = match &src {
        Source::Corpus(surface) => {
            let (grid, base) = corpus_grid(*surface, &a.grid)?;
            let analysis = analyze_grid(surface, &grid)?;
            if analysis.excluded > 0 {
                rep.warnings.push(format!("{} node(s) on the singular set were skipped", analysis.excluded));
            }
            let (mut cf, mut iso, mut ident) = (0.0_f64, 0.0_f64, 0.0_f64);
            let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
            for j in 0..grid.nv() {
                for i in 0..grid.nu() {
                    let Some(fd) = analysis.at(i, j) else { continue };
                    let r = surface.reference(grid.u[i], grid.v[j]);
                    for (x, y) in [(fd.E, r.E), (fd.F, r.F), (fd.G, r.G), (fd.L, r.L), (fd.M, r.M), (fd.N, r.N), (fd.K, r.K), (fd.H, r.H)] {
                        cf = cf.max(rel(x, y));
                    }
                    iso = iso.max(fd.E.abs().max(fd.G.abs()) / (1.0 + fd.F.abs()));
                    let disc = fd.H * fd.H - fd.K;
                    ident = ident.max(rel(disc, fd.L * fd.N / (fd.F * fd.F)));
                    let kind = classify(fd, default_classify_tol(fd)).map(|c| kind_name(c.kind)).unwrap_or("unclassified");
                    *counts.entry(kind).or_default() += 1;
                }
            }
            rep.check(Check::new("closed_form", cf, tol_cf));
            rep.check(Check::new("isotropy", iso, tol_iso));
            rep.check(Check::new("h2k_identity", ident, 1e-8));
            rep.property("kind", if counts.len() == 1 { *counts.keys().next().unwrap() } else { "mixed" });
            rep.property("kind_counts", &counts);
            rep.property("reference_kind", surface.kind());
            let (i0, j0) = base;
            let (u0, v0) = (grid.u[i0], grid.v[j0]);
            rep.property("base_point", [u0, v0]);
            if let Some(stem) = &a.mesh {
                let mesh = (0..grid.nu() * grid.nv())
                    .map(|p| surface.position(grid.u[p % grid.nu()], grid.v[p / grid.nu()]))
                    .collect::<Result<Vec<_>>>()?;
                io::write_mesh(stem, &grid, &mesh)?;
            }
            match pseudo_arc_check(surface, u0, v0, &grid.u, &grid.v, tol_can) {
                Ok(p) => rep.property("pseudo_arc", p),
                Err(e) => rep.property("pseudo_arc", format!("unavailable: {e}")),
            }
            match analysis.to_chart(i0, j0) {
                Ok(c) => Some(c),
                Err(e @ (Error::NotGeneralType { .. } | Error::SingularGrid { .. })) => {
                    rep.property("canonical", format!("unavailable: {e}"));
                    None
                }
                Err(e) => return Err(e),
            }
        }
        Source::File { path, chart, .. } => {
            rep.property("chart", path.file_name().map(|n| n.to_string_lossy().into_owned()));
            let full = if chart.l.is_some() && chart.n.is_some() && chart.m.is_some() {
                rep.property("second_form_source", "file");
                chart.clone()
            } else {
                rep.property("second_form_source", "accumulated");
                natural::accumulate_LN(chart)?
            };
            let (l, m, n) = (full.l.as_ref().unwrap(), full.m.as_ref().unwrap(), full.n.as_ref().unwrap());
            let (nu, nv) = (full.grid.nu(), full.grid.nv());
            let disc = Field::from_indexed(nu, nv, |i, j| l.at(i, j) * n.at(i, j) / full.f.at(i, j).powi(2));
            let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
            for (k, d) in disc.values().iter().enumerate() {
                let (i, j) = (k % nu, k / nu);
                let h = full.h.at(i, j);
                let kk = h * h - d;
                let tol = 1e-8 * (1.0 + h * h + kk.abs());
                let name = if *d > tol {
                    "first"
                } else if *d < -tol {
                    "second"
                } else {
                    "not_general_type"
                };
                *counts.entry(name).or_default() += 1;
            }
            let k_field = Field::from_indexed(nu, nv, |i, j| {
                let f = full.f.at(i, j);
                (m.at(i, j).powi(2) - l.at(i, j) * n.at(i, j)) / (f * f)
            });
            rep.property("kind", if counts.len() == 1 { *counts.keys().next().unwrap() } else { "mixed" });
            rep.property("kind_counts", &counts);
            rep.property("K_range", range(&k_field));
            rep.property("base_point", [full.u0(), full.v0()]);
            if a.mesh.is_some() {
                return Err(Error::Precondition("mesh export from a chart file needs `reconstruct`".into()));
            }
            Some(full)
        }
    };
    if let Some(c) = chart {
        rep.property("F_range", range(&c.f));
        rep.property("H_range", range(&c.h));
        rep.property("eps", [i32::from(c.eps1), i32::from(c.eps2)]);
        let v = canonical::verify_canonical(&c, tol_can)?;
        rep.property("canonical", if v.pass { "pass" } else { "fail" });
        rep.property("canonical_detail", v);
    }
    Ok((rep, a.output.clone()))
}

fn canonicalize(a: &CanonicalizeArgs) -> Result<(Report, Option<PathBuf>)> {
    let src = Source::open(&a.source)?;
    let inputs = json!({
        "source": src.id(),
        "grid": grid_inputs(&a.grid),
        "tilde_u0": a.tilde_u0,
        "tilde_v0": a.tilde_v0,
    });
    let mut rep = Report::new("canonicalize", &inputs);
    let tol_can = rep.tolerance("canonical", a.tol_canonical);
    let (chart, maps, surface) = match &src {
        Source::Corpus(surface) => {
            let (grid, (i0, j0)) = corpus_grid(*surface, &a.grid)?;
            let (u0, v0) = (grid.u[i0], grid.v[j0]);
            let (tu0, tv0) = (a.tilde_u0.unwrap_or(u0), a.tilde_v0.unwrap_or(v0));
            let maps = canonical::canonical_maps(surface, u0, v0, &grid.u, &grid.v, tu0, tv0)?;
            let chart = analyze_grid(surface, &grid)?.to_chart(i0, j0)?;
            (chart, maps, Some(*surface))
        }
        Source::File { chart, .. } => {
            let (tu0, tv0) = (a.tilde_u0.unwrap_or(chart.u0()), a.tilde_v0.unwrap_or(chart.v0()));
            let maps = canonical::canonical_maps_from_chart(chart, tu0, tv0)?;
            (chart.clone(), maps, None)
        }
    };
    let tu = canonical::canonical_axis(&maps.0, chart.grid.nu());
    let tv = canonical::canonical_axis(&maps.1, chart.grid.nv());
    let out = canonical::resample_to_canonical(&chart, &maps, &tu, &tv, tol_can)?;
    let v = canonical::verify_canonical(&out, tol_can)?;
    rep.check(Check::new("canonical_L_line", v.l_line_max_dev, tol_can));
    rep.check(Check::new("canonical_N_line", v.n_line_max_dev, tol_can));
    rep.property("source_base_point", [chart.u0(), chart.v0()]);
    rep.property("canonical_base_point", [out.u0(), out.v0()]);
    rep.property("eps", [i32::from(out.eps1), i32::from(out.eps2)]);
    rep.property("canonical_u_range", maps.0.range());
    rep.property("canonical_v_range", maps.1.range());
    rep.property("F_range", range(&out.f));
    rep.property("H_range", range(&out.h));

    if let Some(s) = surface {
        let exact = corpus::canonical_reference_chart(
            s.name(),
            out.grid.u.clone(),
            out.grid.v.clone(),
            (chart.u0(), chart.v0()),
            (out.u0(), out.v0()),
        )?;
        let tol_cf = rep.tolerance("closed_form", a.tol_closed_form);
        let rel_max = |x: &Field, y: &Field| {
            x.values()
                .iter()
                .zip(y.values())
                .fold(0.0_f64, |m, (p, q)| m.max(if *q == 0.0 { p.abs() } else { ((p - q) / q).abs() }))
        };
        rep.check(Check::new("closed_form_F", rel_max(&out.f, &exact.f), tol_cf));
        rep.check(Check::new("closed_form_H", rel_max(&out.h, &exact.h), tol_cf));
    }
    let mut meta = BTreeMap::new();
    meta.insert("produced_by".to_string(), json!("lsl canonicalize"));
    meta.insert("source".to_string(), src.id());
    io::write_chart(&a.chart, &out, meta)?;
    Ok((rep, a.output.clone()))
}

/// Below this level a residual is rounding noise and its order is meaningless.
const ROUNDING_FLOOR: f64 = 1e-12;

fn mode_residual(chart: &Chart, mode: Mode) -> Result<natural::ResidualReport> {
    match mode {
        Mode::General => natural::natural_residual(chart),
        Mode::Cmc | Mode::Minimal => {
            let k = chart
                .k
                .as_ref()
                .ok_or_else(|| Error::Precondition("constant-H residuals need a K field in the chart".into()))?;
            if mode == Mode::Minimal {
                return natural::minimal_residual(k, &chart.grid);
            }
            let h = chart.h.at(0, 0);
            if chart.h.values().iter().any(|x| (x - h).abs() > 1e-12 * (1.0 + h.abs())) {
                return Err(Error::Precondition("cmc mode needs a constant H field".into()));
            }
            natural::cmc_residual(k, h, &chart.grid)
        }
    }
}

fn residual(a: &ResidualArgs) -> Result<(Report, Option<PathBuf>)> {
    let src = Source::open(&a.source)?;
    let refined = a.refined.as_deref().map(Source::open).transpose()?;
    let inputs = json!({
        "source": src.id(),
        "refined": refined.as_ref().map(Source::id),
        "mode": format!("{:?}", a.mode).to_lowercase(),
        "grid": grid_inputs(&a.grid),
    });
    let mut rep = Report::new("residual", &inputs);
    let tol = rep.tolerance("residual", a.tol_residual);
    let coarse = mode_residual(&source_chart(&src, &a.grid)?, a.mode)?;
    let name = format!("{}_residual", format!("{:?}", a.mode).to_lowercase());
    let mut check = Check::new(name, coarse.max_abs, tol).with_l2(coarse.l2);
    if let Some(r) = &refined {
        let min_order = rep.tolerance("min_order", a.tol_order);
        let fine_args = GridArgs {
            grid: GridSpec(2 * a.grid.grid.0 - 1, 2 * a.grid.grid.1 - 1),
            ..a.grid.clone()
        };
        let fine = mode_residual(&source_chart(r, &fine_args)?, a.mode)?;
        rep.property("refined_max_abs", fine.max_abs);
        rep.property("refined_l2", fine.l2);
        let order = if coarse.max_abs <= ROUNDING_FLOOR && fine.max_abs <= ROUNDING_FLOOR {
            rep.property("order_note", "both residuals at rounding level; order not estimated");
            None
        } else {
            coarse.clone().with_refinement(&fine).h_order_estimate
        };
        check = check.with_order(order, min_order);
    }
    rep.check(check);
    Ok((rep, a.output.clone()))
}

fn read_seed(spec: &str) -> Result<(Seed, Value)> {
    if spec == "standard" {
        return Ok((Seed::Standard, json!("standard")));
    }
    let bytes = std::fs::read(spec)?;
    let frame: FrameState = serde_json::from_slice(&bytes).map_err(|e| Error::Format(format!("seed: {e}")))?;
    Ok((Seed::Custom(frame), json!({ "seed_sha256": digest(&bytes) })))
}

fn suffixed(stem: &Path, suffix: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn describe(rep: &mut Report, prefix: &str, r: &ReconstructionResult, tol_drift: f64) -> Result<()> {
    rep.check(Check::new(format!("{prefix}invariant_drift"), r.max_drift(), tol_drift));
    let p = |k: &str| format!("{prefix}{k}");
    rep.property(&p("eps"), [i32::from(r.chart.eps1), i32::from(r.chart.eps2)]);
    rep.property(&p("compat_residual_max"), r.compat_residual.max_abs());
    rep.property(&p("normal_compat_residual_max"), r.normal_compat_residual.max_abs());
    rep.property(&p("transposed_order_mismatch"), r.transposed_mismatch);
    rep.property(&p("natural_residual_max"), r.natural.max_abs);
    rep.property(&p("natural_warning"), !r.warnings.is_empty());
    rep.property(&p("form_mismatch"), r.form_mismatch);
    if r.grid.nu() >= 5 && r.grid.nv() >= 5 {
        let forms = analyze_mesh(&r.mesh, &r.grid)?;
        let mean = |f: &Field| f.values().iter().sum::<f64>() / f.values().len() as f64;
        rep.property(&p("second_form_mean"), [mean(&forms.l), mean(&forms.m), mean(&forms.n)]);
    }
    for w in &r.warnings {
        rep.warnings.push(format!("{prefix}{w}"));
    }
    Ok(())
}

fn reconstruct(a: &ReconstructArgs) -> Result<(Report, Option<PathBuf>)> {
    let src = Source::open(&a.source)?;
    let (seed, seed_id) = read_seed(&a.seed)?;
    let inputs = json!({
        "source": src.id(),
        "seed": seed_id,
        "pair": a.pair,
        "grid": grid_inputs(&a.grid),
    });
    let mut rep = Report::new("reconstruct", &inputs);
    let tol_drift = rep.tolerance("invariant_drift", a.tol_drift);
    rep.tolerance("natural_warning_rel", bonnet::NATURAL_WARN_REL);
    let chart = source_chart(&src, &a.grid)?;
    if a.pair {
        let k = chart
            .k
            .as_ref()
            .ok_or_else(|| Error::Precondition("--pair needs a K field in the chart".into()))?;
        let h = chart.h.at(0, 0);
        if chart.h.values().iter().any(|x| (x - h).abs() > 1e-12 * (1.0 + h.abs())) {
            return Err(Error::Precondition("--pair needs a constant H field".into()));
        }
        let (p, m) = bonnet::cmc_pair(k, h, &chart.grid, (chart.u0_index, chart.v0_index), &seed)?;
        io::write_mesh(&suffixed(&a.mesh, "_p"), &p.grid, &p.mesh)?;
        io::write_mesh(&suffixed(&a.mesh, "_m"), &m.grid, &m.mesh)?;
        describe(&mut rep, "p.", &p, tol_drift)?;
        describe(&mut rep, "m.", &m, tol_drift)?;
        let c = bonnet::congruence_check(&p.mesh, &m.mesh, &p.grid, 1e-4)?;
        rep.property("pair_relation", c);
    } else {
        let r = bonnet::reconstruct(&chart, &seed)?;
        io::write_mesh(&a.mesh, &r.grid, &r.mesh)?;
        describe(&mut rep, "", &r, tol_drift)?;
    }
    Ok((rep, a.output.clone()))
}

fn corpus_command(c: &CorpusCommand) -> Result<i32> {
    match c {
        CorpusCommand::List => {
            for e in corpus::list() {
                let kind = match e.kind {
                    ReferenceKind::First => "first kind",
                    ReferenceKind::Second => "second kind",
                    ReferenceKind::Degenerate => "not of general type",
                };
                println!("{:<20} {kind}", e.name);
            }
            Ok(0)
        }
        CorpusCommand::Show { name } => {
            let e = corpus::get(name)?;
            let (u, v) = e.default_domain.center();
            let doc = json!({
                "name": e.name,
                "parametrization": e.parametrization,
                "default_domain": e.default_domain,
                "kind": e.kind,
                "notes": e.notes,
                "reference_at_center": { "u": u, "v": v, "forms": e.reference(u, v) },
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(0)
        }
        CorpusCommand::Chart { name, grid, output } => {
            let s = CorpusSurface::from_name(name)?;
            let chart = source_chart(&Source::Corpus(s), grid)?;
            let mut meta = BTreeMap::new();
            meta.insert("produced_by".to_string(), json!("lsl corpus chart"));
            meta.insert("corpus".to_string(), json!(s.name()));
            io::write_chart(output, &chart, meta)?;
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!("101x51".parse::<GridSpec>().unwrap(), GridSpec(101, 51));
        assert_eq!("11×11".parse::<GridSpec>().unwrap(), GridSpec(11, 11));
        assert!("2x5".parse::<GridSpec>().is_err());
        let d: DomainSpec = "1:2,-1:0".parse().unwrap();
        assert_eq!(d, DomainSpec((1.0, 2.0), (-1.0, 0.0)));
        assert!("1:1,0:1".parse::<DomainSpec>().is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::NotGeneralType { coefficient: "L", param: "u", value: 0.0 }), 1);
        assert_eq!(exit_code(&Error::Format("x".into())), 2);
    }
}
