//! The `rowlab` command line: orbit listings, claim verification, statistics,
//! the phi bijection, LP audits and the combined report.

pub mod cache;
pub mod manifest;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rowlab_core::audit::{self, AuditConfig, Status, CHECKS};
use rowlab_core::lp::{ddeg_range, AuditVerdict, Mode};
use rowlab_core::phi::{commute_audit, phi_on_ideals, phi_traced, Action, CommuteReport, Pair};
use rowlab_core::shapes::{rectangle, trapezoid, Kind, NamedPoset};
use rowlab_core::stats::{self, fmt_rational, rat, Trapezoid};
use rowlab_core::tableau::{ideal_to_tableau, IncreasingTableau, TableauJson};
use rowlab_core::{Error, OrbitDecomposition, Poset, RowmotionMethod, DEFAULT_IDEAL_CAP};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{Lookup, OrbitCache};
use crate::manifest::Manifest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "rowlab", version, about = "Rowmotion, K-theoretic slides and the rectangle/trapezoid bijection")]
pub struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Refuse posets with more order ideals than this.
    #[arg(long, global = true, default_value_t = DEFAULT_IDEAL_CAP)]
    pub cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for the artifact and its manifest; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Ascii,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Ascii => "txt",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rowmotion orbit sizes of a named poset.
    Orbits(OrbitsArgs),
    /// Check a claim exhaustively.
    Verify {
        #[command(subcommand)]
        claim: Claim,
    },
    /// Per-orbit averages of a statistic.
    Homomesy(HomomesyArgs),
    /// Evaluate every rook statistic on every ideal of a trapezoid.
    RookCheck(RookArgs),
    /// Apply phi to a rectangle tableau or ideal.
    Phi(PhiArgs),
    /// Exact range of expected down-degree over a symmetry polytope.
    Lp(LpArgs),
    /// Run every check and write one document.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
pub struct OrbitsArgs {
    /// rect:a,b, trap:a,b, og612, h3, q:n or i2:m.
    #[arg(long)]
    pub poset: String,
    #[arg(long, value_enum, default_value_t = Method::Generators)]
    pub method: Method,
    /// Include every ideal of every orbit.
    #[arg(long)]
    pub list: bool,
    /// Skip the orbit cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Generators,
    Toggles,
}

impl From<Method> for RowmotionMethod {
    fn from(m: Method) -> RowmotionMethod {
        match m {
            Method::Generators => RowmotionMethod::Generators,
            Method::Toggles => RowmotionMethod::Toggles,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Claim {
    /// phi commutes with rowmotion (or the pair has equal orbit multisets).
    Commute(CommuteArgs),
    /// R(a,b) and T(a,b) have equal orbit multisets.
    Orbits {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// One check of the report by number or key.
    Check {
        id: String,
        #[arg(long, default_value_t = 10)]
        max_sum: usize,
        #[arg(long, default_value_t = 12)]
        max_boxes: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairKind {
    RectTrap,
    #[value(name = "q-i2")]
    QI2,
    Og612H3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ActionArg {
    Rowmotion,
    Pl,
}

#[derive(Args, Debug)]
pub struct CommuteArgs {
    #[arg(long, value_enum)]
    pub pair: PairKind,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub height: u32,
    #[arg(long, value_enum, default_value_t = ActionArg::Rowmotion)]
    pub action: ActionArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    Ddeg,
    Cardinality,
}

#[derive(Args, Debug)]
pub struct HomomesyArgs {
    #[arg(long)]
    pub poset: String,
    #[arg(long, value_enum, default_value_t = Stat::Ddeg)]
    pub stat: Stat,
}

#[derive(Args, Debug)]
pub struct RookArgs {
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
}

#[derive(Args, Debug)]
pub struct PhiArgs {
    /// JSON tableau on a rectangle.
    #[arg(long, conflicts_with_all = ["ideal", "example"])]
    pub tableau: Option<PathBuf>,
    /// Ideal of R(a,b) as space-separated boxes, e.g. "(1,1) (2,1)".
    #[arg(long, requires_all = ["a", "b"])]
    pub ideal: Option<String>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    /// The worked 3x3 example.
    #[arg(long)]
    pub example: bool,
    /// Include every slide diagram.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Args, Debug)]
pub struct LpArgs {
    #[arg(long)]
    pub poset: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Antichains)]
    pub mode: ModeArg,
    #[arg(long, default_value = "ddeg")]
    pub objective: String,
    /// Report SIZE-SKIPPED above this many ideals.
    #[arg(long, default_value_t = rowlab_core::lp::DEFAULT_LP_VARIABLES)]
    pub max_variables: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Elements,
    Antichains,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 10)]
    pub max_sum: usize,
    #[arg(long, default_value_t = 12)]
    pub max_boxes: usize,
    /// Random slide sequences for the Hecke check.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

/// What a command produced: the artifact text, a one-line summary, and the exit code.
pub struct Output {
    pub body: String,
    pub summary: String,
    pub code: i32,
    pub extra: Vec<(String, String)>,
    pub inputs: BTreeMap<String, String>,
}

impl Output {
    fn new(body: String, summary: impl Into<String>, ok: bool) -> Output {
        Output {
            body,
            summary: summary.into(),
            code: if ok { EXIT_OK } else { EXIT_REFUTED },
            extra: Vec::new(),
            inputs: BTreeMap::new(),
        }
    }
}

#[derive(Debug)]
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(e.to_string())
    }
}

type CmdResult = Result<Output, Failure>;

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(out) => match emit(&cli, &argv, &out) {
            Ok(()) => out.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

pub fn execute(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Orbits(args) => orbits(cli, args),
        Command::Verify { claim } => verify(cli, claim),
        Command::Homomesy(args) => homomesy(cli, args),
        Command::RookCheck(args) => rook_check(cli, args),
        Command::Phi(args) => phi(cli, args),
        Command::Lp(args) => lp(cli, args),
        Command::Report(args) => {
            let config = AuditConfig {
                seed: cli.seed,
                cap: cli.cap,
                max_boxes: args.max_boxes,
                slide_samples: args.samples,
                ..AuditConfig::with_max_sum(args.max_sum)
            };
            Ok(report::output(&report::build(&config, args.max_sum), cli.format))
        }
    }
}

fn emit(cli: &Cli, argv: &[OsString], out: &Output) -> std::io::Result<()> {
    let Some(dir) = &cli.out else {
        print!("{}", out.body);
        return Ok(());
    };
    fs::create_dir_all(dir)?;
    let name = command_name(&cli.command);
    let primary = format!("{name}.{}", cli.format.extension());
    let mut artifacts = vec![(primary, out.body.clone())];
    artifacts.extend(out.extra.iter().cloned());
    for (file, text) in &artifacts {
        fs::write(dir.join(file), text)?;
    }
    let manifest = Manifest::new(name, argv, &out.inputs, &artifacts, &out.summary, out.code);
    fs::write(dir.join("manifest.json"), manifest.to_json())?;
    Ok(())
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Orbits(_) => "orbits",
        Command::Verify { .. } => "verify",
        Command::Homomesy(_) => "homomesy",
        Command::RookCheck(_) => "rook-check",
        Command::Phi(_) => "phi",
        Command::Lp(_) => "lp",
        Command::Report(_) => "report",
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn named(spec: &str) -> Result<NamedPoset, Failure> {
    spec.parse::<NamedPoset>().map_err(Failure::from)
}

fn no_csv(format: Format, what: &str) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(Failure(format!("{what} has no CSV form; use json or ascii")));
    }
    Ok(())
}

/// Orbit decomposition through the cache.
pub fn cached_orbits(poset: &Poset, method: RowmotionMethod, cap: usize, use_cache: bool) -> Result<(OrbitDecomposition, Lookup), Error> {
    let cache = OrbitCache::from_env();
    if use_cache {
        if let (Lookup::Hit, Some(d)) = cache.load(poset, method) {
            if d.total() <= cap {
                return Ok((d, Lookup::Hit));
            }
        }
    }
    let d = poset.orbit_decomposition_by(cap, |i| poset.rowmotion(i, method))?;
    if use_cache {
        if let Err(e) = cache.store(poset, method, &d) {
            eprintln!("warning: could not write the orbit cache in {}: {e}", cache.dir().display());
        }
    }
    Ok((d, Lookup::Miss))
}

fn orbits(cli: &Cli, args: &OrbitsArgs) -> CmdResult {
    let name = named(&args.poset)?;
    let poset = name.poset()?;
    let (d, lookup) = cached_orbits(&poset, args.method.into(), cli.cap, !args.no_cache)?;
    if lookup == Lookup::Hit {
        eprintln!("cache: hit");
    }
    let sizes = d.sizes();
    let summary = format!("{} ideals in {} orbits", d.total(), d.len());
    let body = match cli.format {
        Format::Json => {
            let mut v = json!({
                "poset": name.to_string(),
                "elements": poset.len(),
                "ideals": d.total(),
                "orbit_count": d.len(),
                "sizes": sizes,
            });
            if args.list {
                let listed: Vec<Vec<Vec<String>>> =
                    d.orbits.iter().map(|o| o.iter().map(|i| poset.ideal_names(i)).collect()).collect();
                v["orbits"] = json!(listed);
            }
            to_json(&v)
        }
        Format::Csv => {
            let mut s = String::from("orbit_id,size\n");
            for (k, o) in d.orbits.iter().enumerate() {
                s.push_str(&format!("{k},{}\n", o.len()));
            }
            s
        }
        Format::Ascii => {
            let list: Vec<String> = sizes.iter().map(usize::to_string).collect();
            format!("{name}: {summary}; sizes {}\n", list.join(" "))
        }
    };
    let mut out = Output::new(body, summary, true);
    out.inputs.insert("poset".into(), cache::cache_key(&poset, cache::action_name(args.method.into())));
    Ok(out)
}

fn commute_ascii(r: &CommuteReport) -> String {
    let mut s = format!(
        "{} action={:?} height={}: checked {}, violations {}, {}\n",
        r.pair,
        r.action,
        r.height,
        r.checked,
        r.violation_count,
        if r.commutes { "commutes" } else { "does not commute" }
    );
    if let (Some(l), Some(rt)) = (&r.left_orbits, &r.right_orbits) {
        s.push_str(&format!("orbits: {l:?} vs {rt:?}\n"));
    }
    for v in &r.violations {
        s.push_str(&format!("  input {:?}: phi then row {:?}, row then phi {:?}\n", v.input, v.phi_then_row, v.row_then_phi));
    }
    s
}

fn verify(cli: &Cli, claim: &Claim) -> CmdResult {
    match claim {
        Claim::Commute(args) => {
            let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure(format!("--{flag} is required for this pair")));
            let pair = match args.pair {
                PairKind::RectTrap => Pair::RectTrap { a: need(args.a, "a")?, b: need(args.b, "b")? },
                PairKind::QI2 => Pair::QI2 { n: need(args.n, "n")? },
                PairKind::Og612H3 => Pair::Og612H3,
            };
            let action = match args.action {
                ActionArg::Rowmotion => Action::Rowmotion,
                ActionArg::Pl => Action::PlRowmotion,
            };
            no_csv(cli.format, "verify commute")?;
            let r = commute_audit(pair, args.height, action, cli.cap)?;
            let body = if cli.format == Format::Json { to_json(&r) } else { commute_ascii(&r) };
            let summary = format!("{pair}: {} violations in {}", r.violation_count, r.checked);
            Ok(Output::new(body, summary, r.commutes))
        }
        Claim::Orbits { a, b } => {
            no_csv(cli.format, "verify orbits")?;
            let r = rectangle(*a, *b)?;
            let t = trapezoid(*a, *b)?;
            let left = cached_orbits(&r.poset, RowmotionMethod::Generators, cli.cap, true)?.0.sizes();
            let right = cached_orbits(&t.poset, RowmotionMethod::Generators, cli.cap, true)?.0.sizes();
            let ok = left == right;
            let body = match cli.format {
                Format::Ascii => format!("R({a},{b}) {left:?}\nT({a},{b}) {right:?}\n{}\n", if ok { "equal" } else { "different" }),
                _ => to_json(&json!({"a": a, "b": b, "rectangle": left, "trapezoid": right, "equal": ok})),
            };
            Ok(Output::new(body, if ok { "orbit multisets equal" } else { "orbit multisets differ" }, ok))
        }
        Claim::Check { id, max_sum, max_boxes } => {
            let number = CHECKS
                .iter()
                .find(|(n, key, _)| n.to_string() == *id || key == id)
                .map(|c| c.0)
                .ok_or_else(|| Failure(format!("unknown check {id:?}")))?;
            no_csv(cli.format, "verify check")?;
            let config = AuditConfig { seed: cli.seed, cap: cli.cap, max_boxes: *max_boxes, ..AuditConfig::with_max_sum(*max_sum) };
            let c = audit::run_check(number, &config);
            let body = match cli.format {
                Format::Ascii => format!("{} {} {}: {}\n", c.status, c.id, c.key, c.detail),
                _ => to_json(&c),
            };
            Ok(Output::new(body, format!("{} {}", c.status, c.key), c.status != Status::Fail))
        }
    }
}

type StatFn<'a> = dyn Fn(&rowlab_core::Ideal) -> num_rational::BigRational + 'a;

fn homomesy(cli: &Cli, args: &HomomesyArgs) -> CmdResult {
    let name = named(&args.poset)?;
    let poset = name.poset()?;
    let (label, stat): (&str, Box<StatFn>) = match args.stat {
        Stat::Ddeg => ("ddeg", Box::new(|i| rat(stats::down_degree(&poset, i) as i64))),
        Stat::Cardinality => ("cardinality", Box::new(|i| rat(i.len() as i64))),
    };
    let report = stats::homomesy_audit(&poset, cli.cap, stat)?;
    let summary = format!(
        "{label} on {name}: {} orbits, global average {}, {}",
        report.orbits.len(),
        fmt_rational(&report.global_average),
        if report.homomesic { "homomesic" } else { "not homomesic" }
    );
    let body = match cli.format {
        Format::Csv => report.to_csv(label),
        Format::Json => to_json(&json!({"poset": name.to_string(), "statistic": label, "report": report})),
        Format::Ascii => {
            let mut s = format!("{summary}\n");
            for o in &report.orbits {
                s.push_str(&format!("orbit {:>3}  size {:>4}  average {}\n", o.orbit_id, o.size, fmt_rational(&o.average)));
            }
            s
        }
    };
    Ok(Output::new(body, summary, report.homomesic))
}

fn rook_check(cli: &Cli, args: &RookArgs) -> CmdResult {
    no_csv(cli.format, "rook-check")?;
    let t = Trapezoid::new(args.a, args.b)?;
    let ideals = t.sp.poset.enumerate_ideals(cli.cap)?;
    let mut failures = Vec::new();
    let mut evaluations = 0;
    for &c in t.sp.cells() {
        let (i, j) = (c.row() as usize, c.col() as usize);
        for ideal in &ideals {
            evaluations += 1;
            let v = stats::rook_statistic(&t, i, j, ideal)?;
            if v != rat(1) {
                failures.push(json!({"box": [i, j], "ideal": t.sp.poset.ideal_names(ideal), "value": fmt_rational(&v)}));
            }
        }
    }
    let ok = failures.is_empty();
    let summary = format!("T({},{}): {evaluations} evaluations, {} not equal to 1", args.a, args.b, failures.len());
    let body = match cli.format {
        Format::Ascii => format!("{summary}\n"),
        _ => to_json(&json!({"a": args.a, "b": args.b, "boxes": t.sp.len(), "ideals": ideals.len(), "evaluations": evaluations, "failures": failures})),
    };
    Ok(Output::new(body, summary, ok))
}

fn phi(cli: &Cli, args: &PhiArgs) -> CmdResult {
    no_csv(cli.format, "phi")?;
    let mut inputs = BTreeMap::new();
    let mut ideal_in = None;
    let t = if let Some(path) = &args.tableau {
        let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        inputs.insert(path.display().to_string(), manifest::sha256_hex(text.as_bytes()));
        let json: TableauJson = serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        IncreasingTableau::from_json(&json)?
    } else if let Some(list) = &args.ideal {
        let (a, b) = (args.a.expect("required by clap"), args.b.expect("required by clap"));
        let r = rectangle(a, b)?;
        let names: Vec<&str> = list.split_whitespace().collect();
        let ideal = r.poset.ideal_from_names(&names)?;
        ideal_in = Some((r, ideal));
        let (r, ideal) = ideal_in.as_ref().expect("just set");
        ideal_to_tableau(r, ideal)?
    } else if args.example {
        let rows: Vec<Vec<u32>> = audit::PHI_INPUT.iter().map(|r| r.to_vec()).collect();
        IncreasingTableau::from_rows_top_first(Kind::Ordinary, &[], &rows, 6)?
    } else {
        return Err(Failure("give --tableau, --ideal with --a/--b, or --example".into()));
    };
    let (image, trace) = phi_traced(&t)?;
    let ideal_out = match &ideal_in {
        Some((r, ideal)) => {
            let trap = trapezoid(r.shape.rows(), r.shape.outer[0])?;
            Some(trap.poset.ideal_names(&phi_on_ideals(r, &trap, ideal)?))
        }
        None => None,
    };
    let body = match cli.format {
        Format::Ascii => {
            let mut s = format!("input\n{}", t.render());
            if args.trace {
                for step in &trace.steps {
                    match step.label {
                        Some(k) => s.push_str(&format!("after slide {k}\n")),
                        None => s.push_str("embedded\n"),
                    }
                    s.push_str(&step.render());
                }
            }
            s.push_str(&format!("output\n{}", image.render()));
            if let Some(names) = &ideal_out {
                s.push_str(&format!("ideal {}\n", names.join(" ")));
            }
            s
        }
        _ => {
            let mut v = json!({"input": t.to_json(), "output": image.to_json()});
            if let Some(names) = &ideal_out {
                v["ideal"] = json!(names);
            }
            if args.trace {
                let steps: Vec<Value> = trace
                    .steps
                    .iter()
                    .map(|s| json!({"label": s.label, "grid": audit::encode_grid(&s.grid()), "diagram": s.render()}))
                    .collect();
                v["trace"] = json!(steps);
            }
            to_json(&v)
        }
    };
    let mut out = Output::new(body, format!("phi output with {} rows", image.shape().rows()), true);
    out.inputs = inputs;
    Ok(out)
}

fn lp(cli: &Cli, args: &LpArgs) -> CmdResult {
    no_csv(cli.format, "lp")?;
    if args.objective != "ddeg" {
        return Err(Failure(format!("unsupported objective {:?}; only ddeg", args.objective)));
    }
    let (a, b) = match named(&args.poset)? {
        NamedPoset::Trap(a, b) => (a, b),
        other => return Err(Failure(format!("lp needs a trapezoid, got {other}"))),
    };
    let mode = match args.mode {
        ModeArg::Elements => Mode::Elements,
        ModeArg::Antichains => Mode::Antichains,
    };
    let r = ddeg_range(a, b, mode, cli.cap, args.max_variables)?;
    let show = |v: &Option<num_rational::BigRational>| v.as_ref().map(fmt_rational).unwrap_or_else(|| "-".into());
    let summary = format!("T({a},{b}) {:?}: min {} max {} target {} {}", mode, show(&r.min), show(&r.max), fmt_rational(&r.target), r.verdict);
    let body = match cli.format {
        Format::Ascii => format!("{summary}\n"),
        _ => to_json(&r),
    };
    Ok(Output::new(body, summary, r.verdict != AuditVerdict::Counterexample))
}
