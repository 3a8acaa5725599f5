//! `capvertex`: run the exact checks, print generating series and capped vertex tables,
//! and freeze calibrated conventions.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use capvertex::combinat::Orientation;
use capvertex::exactalg::domain::{check_generic, parse_assignment, Domain};
use capvertex::exactalg::guard::{catch_limit, set_max_terms, LimitExceeded};
use capvertex::exactalg::{Specialized, Symbolic, TruncatedSeries, Var};
use capvertex::fock::{to_json, to_rows, FockElement};
use capvertex::pipeline::vertex::degree_budget;
use capvertex::pipeline::{
    calibrate_pinned, check_bounds, check_prop1, check_prop4, Coeff, Conventions, Engine, Outcome, PipelineError,
    Shift, VerificationReport, MAX_N, MAX_VERTEX_Z,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "capvertex", version, about = "Exact checks of the capped vertex generating function of Hilb^n(C^2)")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Order in y.
    #[arg(long, global = true, env = "CAPVERTEX_YMAX", default_value_t = 4)]
    ymax: u32,
    /// Order in z (vertex: defaults to 2·Σ_{k<=n} k + 2).
    #[arg(long, global = true, env = "CAPVERTEX_ZMAX")]
    zmax: Option<u32>,
    /// Instanton number for prop1, prop4 and vertex.
    #[arg(long, global = true, env = "CAPVERTEX_N", default_value_t = 3)]
    n: u32,
    #[arg(long, global = true, env = "CAPVERTEX_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file (stdout if absent).
    #[arg(long, global = true, env = "CAPVERTEX_OUT")]
    out: Option<PathBuf>,
    /// Worker threads (0: one per core).
    #[arg(long, global = true, env = "CAPVERTEX_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Evaluate at rationals, e.g. t1=4/9; t1, t2, q and u must all be given.
    #[arg(long, global = true, env = "CAPVERTEX_SPECIALIZE", value_delimiter = ',')]
    specialize: Vec<String>,
    /// Conventions file written by `calibrate`.
    #[arg(long, global = true, env = "CAPVERTEX_CONVENTIONS")]
    conventions: Option<PathBuf>,
    #[arg(long, global = true, env = "CAPVERTEX_ORIENTATION", value_enum)]
    orientation: Option<OrientationArg>,
    /// Power applied to tangent weights before Λ•.
    #[arg(long, global = true, env = "CAPVERTEX_WEIGHT_SCALE")]
    weight_scale: Option<u32>,
    /// Take Λ• of the dual tangent character.
    #[arg(long, global = true, env = "CAPVERTEX_DUAL")]
    dual: Option<bool>,
    /// Configured shift as sign,hbar,q (e.g. -1,1,1).
    #[arg(long, global = true, env = "CAPVERTEX_SHIFT", allow_hyphen_values = true)]
    shift: Option<String>,
    /// Abort (exit 3) when a polynomial exceeds this many terms.
    #[arg(long, global = true, env = "CAPVERTEX_MAX_TERMS")]
    max_terms: Option<usize>,
    /// Include wall-clock time in reports.
    #[arg(long, global = true, env = "CAPVERTEX_TIMING")]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run checks; exit 0 iff all pass.
    Verify {
        #[arg(value_enum, required = true)]
        targets: Vec<Target>,
    },
    /// Print a generating series.
    Series {
        #[arg(value_enum)]
        target: SeriesTarget,
    },
    /// Reconstruct the per-fixed-point capped vertex functions at --n.
    Vertex,
    /// Search the conventions and write them to --out.
    Calibrate,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Kernel,
    Mellit,
    Osum,
    Ook,
    Main,
    Degenerate,
    Prop1,
    Prop4,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SeriesTarget {
    /// Closed form.
    #[value(name = "F")]
    F,
    /// Derived from the tensor-square substitution.
    Built,
    Osum,
    Taubar,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OrientationArg {
    Standard,
    Swapped,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Standard => Orientation::Standard,
            OrientationArg::Swapped => Orientation::Swapped,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Limit(LimitExceeded),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Pipeline(PipelineError::Bound(_) | PipelineError::Domain(_)) => 2,
            CliError::Pipeline(_) => 1,
            CliError::Limit(_) => 3,
        }
    }
}

/// What a command produced: output text and whether everything passed.
struct Produced {
    text: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        if info.payload().downcast_ref::<LimitExceeded>().is_none() {
            default_hook(info);
        }
    }));
    let result = catch_limit(|| run(&cli)).unwrap_or_else(|l| Err(CliError::Limit(l)));
    match result {
        Ok(p) => ExitCode::from(if p.passed { 0 } else { 1 }),
        Err(e) => {
            eprintln!("capvertex: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<Produced, CliError> {
    let o = &cli.opts;
    if o.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(o.jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if let Some(m) = o.max_terms {
        set_max_terms(m);
    }
    let conventions = load_conventions(o)?;
    let produced = match &cli.cmd {
        Command::Calibrate => calibrate_cmd(o, &conventions)?,
        cmd => match specialization(o)? {
            Some(dom) => dispatch(cmd, o, dom, conventions)?,
            None => dispatch(cmd, o, Symbolic, conventions)?,
        },
    };
    if !matches!(cli.cmd, Command::Calibrate) {
        emit(o.out.as_ref(), &produced.text)?;
    }
    Ok(produced)
}

fn load_conventions(o: &Opts) -> Result<Conventions, CliError> {
    let mut c = match &o.conventions {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            Conventions::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => Conventions::default(),
    };
    if let Some(or) = o.orientation {
        c.tangent.orientation = or.into();
    }
    if let Some(w) = o.weight_scale {
        if w == 0 {
            return Err(CliError::Usage("--weight-scale must be positive".into()));
        }
        c.tangent.weight_scale = w;
    }
    if let Some(d) = o.dual {
        c.tangent.dual = d;
    }
    if let Some(s) = &o.shift {
        c.main_shift = Some(parse_shift(s)?);
    }
    Ok(c)
}

fn parse_shift(s: &str) -> Result<Shift, CliError> {
    let bad = || CliError::Usage(format!("--shift expects sign,hbar,q with entries in {{-1,0,1}}, got {s:?}"));
    let parts: Vec<i32> = s.split(',').map(|p| p.trim().parse::<i32>().map_err(|_| bad())).collect::<Result<_, _>>()?;
    let [sign, hbar, q] = parts[..] else { return Err(bad()) };
    let shift = Shift { sign: sign as i8, hbar, q };
    if !Shift::family().contains(&shift) {
        return Err(bad());
    }
    Ok(shift)
}

fn specialization(o: &Opts) -> Result<Option<Specialized>, CliError> {
    if o.specialize.is_empty() {
        return Ok(None);
    }
    let vals = o.specialize.iter().map(|s| parse_assignment(s)).collect::<Result<Vec<_>, _>>().map_err(CliError::Usage)?;
    check_generic(&vals).map_err(CliError::Usage)?;
    for v in [Var::T1, Var::T2, Var::Q, Var::U] {
        if !vals.iter().any(|(w, _)| *w == v) {
            return Err(CliError::Usage(format!("--specialize needs a value for {}", v.name())));
        }
    }
    Ok(Some(Specialized::new(vals)))
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source: e }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_err(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch<D: Domain>(cmd: &Command, o: &Opts, dom: D, conventions: Conventions) -> Result<Produced, CliError>
where
    D::S: Coeff,
{
    match cmd {
        Command::Verify { targets } => verify(o, dom, conventions, targets),
        Command::Series { target } => series(o, dom, conventions, *target),
        Command::Vertex => vertex(o, dom, conventions),
        Command::Calibrate => unreachable!("handled before dispatch"),
    }
}

fn verify<D: Domain>(o: &Opts, dom: D, conventions: Conventions, targets: &[Target]) -> Result<Produced, CliError>
where
    D::S: Coeff,
{
    let all = targets.contains(&Target::All);
    let want = |t: Target| all || targets.contains(&t);
    let zmax = o.zmax.unwrap_or(6);
    check_bounds(Some(o.ymax), Some(zmax), None)?;
    if want(Target::Prop1) && o.n > 3 {
        return Err(PipelineError::Bound(format!("prop1 needs n <= 3, got {}", o.n)).into());
    }
    if want(Target::Prop4) {
        check_bounds(None, None, Some(o.n))?;
    }
    let needs_basis = [Target::Kernel, Target::Mellit, Target::Osum].iter().any(|t| want(*t));
    let engine = Engine::new(dom, conventions.clone(), if needs_basis { o.ymax } else { 0 })?.with_timing(o.timing);
    let mut reports = Vec::new();
    if want(Target::Kernel) {
        reports.push(engine.check_kernel_identity(o.ymax)?);
    }
    if want(Target::Mellit) {
        reports.push(engine.check_mellit(o.ymax)?);
    }
    if want(Target::Osum) {
        reports.push(engine.check_osum(o.ymax)?);
    }
    if want(Target::Ook) {
        reports.push(engine.check_ook(o.ymax, zmax)?);
    }
    if want(Target::Main) {
        reports.push(engine.check_main(o.ymax, zmax)?);
    }
    if want(Target::Degenerate) {
        reports.push(engine.check_degenerate(o.ymax)?);
    }
    if want(Target::Prop1) {
        reports.push(check_prop1(o.n, &conventions)?);
    }
    if want(Target::Prop4) {
        for m in 1..=o.n {
            for k in 1..=m as usize {
                reports.push(check_prop4(m, k, conventions.tangent.orientation)?);
            }
        }
    }
    let passed = reports.iter().all(VerificationReport::passed);
    Ok(Produced { text: render_reports(&reports, o.format), passed })
}

fn render_reports(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize") + "\n",
        Format::Text => reports
            .iter()
            .map(|r| {
                let t = r.to_text();
                if t.ends_with('\n') {
                    t
                } else {
                    t + "\n"
                }
            })
            .collect(),
        Format::Csv => {
            let mut s = String::from("check,y,z,n,domain,outcome,location,left,right\n");
            for r in reports {
                let (kind, loc, left, right) = match &r.outcome {
                    Outcome::ExactMatch => ("exact_match", String::new(), String::new(), String::new()),
                    Outcome::Mismatch { witness } => {
                        ("mismatch", witness.location.clone(), witness.left.clone(), witness.right.clone())
                    }
                    Outcome::LimitNonexistent { point, valuation } => {
                        ("limit_nonexistent", point.clone(), valuation.clone(), String::new())
                    }
                };
                let ord = |x: Option<u32>| x.map(|v| v.to_string()).unwrap_or_default();
                s += &format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.check,
                    ord(r.orders.y),
                    ord(r.orders.z),
                    ord(r.orders.n),
                    csv_field(&r.domain),
                    kind,
                    csv_field(&loc),
                    csv_field(&left),
                    csv_field(&right)
                );
            }
            s
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn series<D: Domain>(o: &Opts, dom: D, conventions: Conventions, target: SeriesTarget) -> Result<Produced, CliError>
where
    D::S: Coeff,
{
    let zmax = o.zmax.unwrap_or(6);
    check_bounds(Some(o.ymax), Some(zmax), None)?;
    let engine = Engine::new(dom, conventions, 0)?;
    let f = match target {
        SeriesTarget::F => engine.closed_f(o.ymax, zmax)?,
        SeriesTarget::Built => engine.build_f(o.ymax, zmax)?,
        SeriesTarget::Osum => engine.osum_f(o.ymax, zmax)?,
        SeriesTarget::Taubar => engine.taubar_f(o.ymax, zmax)?,
    };
    let text = match o.format {
        Format::Json => to_json(&f, o.ymax, zmax),
        Format::Csv => {
            let mut s = String::from("y,z,p,num,den\n");
            for r in to_rows(&f) {
                let p: Vec<String> = r.p.iter().map(|k| k.to_string()).collect();
                s += &format!("{},{},\"{}\",{},{}\n", r.y, r.z, p.join(","), csv_field(&r.num), csv_field(&r.den));
            }
            s
        }
        Format::Text => series_text(&f),
    };
    Ok(Produced { text, passed: true })
}

fn series_text<S: Coeff>(f: &FockElement<TruncatedSeries<S>>) -> String {
    let mut s = String::new();
    for r in to_rows(f) {
        let coeff = if r.den == "1" { r.num.clone() } else { format!("({})/({})", r.num, r.den) };
        let mut factors = Vec::new();
        if r.y > 0 {
            factors.push(format!("y^{}", r.y));
        }
        if r.z > 0 {
            factors.push(format!("z^{}", r.z));
        }
        for k in &r.p {
            factors.push(format!("p{k}"));
        }
        if factors.is_empty() {
            s += &format!("{coeff}\n");
        } else {
            s += &format!("{coeff} * {}\n", factors.join("*"));
        }
    }
    s
}

fn vertex<D: Domain>(o: &Opts, dom: D, conventions: Conventions) -> Result<Produced, CliError>
where
    D::S: Coeff,
{
    if o.n > MAX_N {
        return Err(PipelineError::Bound(format!("n = {} exceeds the bound {MAX_N}", o.n)).into());
    }
    let zmax = o.zmax.unwrap_or(2 * degree_budget(o.n) as u32 + 2);
    if zmax > MAX_VERTEX_Z {
        return Err(PipelineError::Bound(format!("z order {zmax} exceeds the bound {MAX_VERTEX_Z}")).into());
    }
    let engine = Engine::new(dom, conventions, o.n)?;
    let table = engine.capped_vertex_table(o.n, zmax)?;
    let text = match o.format {
        Format::Json => serde_json::to_string_pretty(&table).expect("table serializes") + "\n",
        Format::Csv => table.to_csv(),
        Format::Text => table.to_text(),
    };
    Ok(Produced { passed: table.certified(), text })
}

fn calibrate_cmd(o: &Opts, base: &Conventions) -> Result<Produced, CliError> {
    if !o.specialize.is_empty() {
        return Err(CliError::Usage("calibrate always runs symbolically; drop --specialize".into()));
    }
    let pinned = o.orientation.map(Orientation::from);
    let outcome = calibrate_pinned(base, pinned)?;
    let summary = render_reports(&outcome.reports, if o.format == Format::Text { Format::Text } else { o.format });
    eprint!("{summary}");
    let json = outcome.conventions.to_json();
    match &o.out {
        Some(path) => {
            let same = fs::read_to_string(path).map(|old| old == json).unwrap_or(false);
            if same {
                eprintln!("{}: unchanged", path.display());
            } else {
                fs::write(path, &json).map_err(|e| io_err(path, e))?;
                eprintln!("{}: written", path.display());
            }
        }
        None => print!("{json}"),
    }
    if !outcome.consistent {
        eprintln!("capvertex: no consistent convention (see the witnesses above)");
    }
    Ok(Produced { text: json, passed: outcome.consistent })
}
