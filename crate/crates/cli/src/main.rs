//! Command-line surface for the finite-plane workbench: every subcommand
//! prints a short text summary by default and a schema-versioned JSON report
//! with `--json`. Exit codes: 0 success, 1 verification failure, 2 usage
//! error.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use planelab_core::arcs::{arc_analyze, extend_to_hyperoval, is_conic, ArcError};
use planelab_core::battery::{run_criterion, BatteryConfig, CRITERIA};
use planelab_core::blocking::{
    analyze, construct, lower_bound, BoundModel, BoundQuery, Construction,
};
use planelab_core::directions::{
    check_intervals, classify, example_function, expected_direction_count, ExampleKind, FieldFn,
    RedeiInterval,
};
use planelab_core::fpoly::{
    classify_lacunary_cases, classify_xq_plus_g, lacunary_split, TraceNormForm, TrichotomyTag,
};
use planelab_core::gf::{make_field, FieldElem, FieldSpec};
use planelab_core::io::{
    factor_prime_power, format_point_set, format_poly, format_subspace, format_table,
    parse_point_set, parse_poly, parse_subspace, parse_table,
};
use planelab_core::linearsets::{
    b_of_w, is_scattered, max_scattered_dim, max_scattered_randomized, LinearSetError,
    ReductionContext,
};
use planelab_core::plane::{point_triple, Plane, PointSet};
use planelab_core::redei::{blocking_redei, redei_poly_of_function, vanishing_profile, RedeiError};
use planelab_core::search::{
    certify_nonexistence, run, SearchError, SearchKind, SearchMode, SearchProblem, DEFAULT_BUDGET,
};

use report::{Outcome, Report};

#[derive(Parser)]
#[command(name = "planelab", version, about = "Exact workbench for PG(2,q)")]
struct Cli {
    /// Worker threads for searches; results are identical for every value
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Emit the machine-readable JSON report instead of the text summary
    #[arg(long, global = true)]
    json: bool,
    /// Permit work that may run for many minutes
    #[arg(long, global = true)]
    allow_long: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Field tables and trace/norm maps
    #[command(subcommand)]
    Field(FieldCmd),
    /// Direction sets of functions on GF(q)
    #[command(subcommand)]
    Directions(DirCmd),
    /// Classifiers for fully reducible lacunary polynomials
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Rédei polynomials of graphs and of blocking sets
    #[command(subcommand)]
    Redei(RedeiCmd),
    /// Blocking-set analysis, constructions, and size bounds
    #[command(subcommand)]
    Blocking(BlockingCmd),
    /// Arc analysis, conic recognition, hyperoval extension
    #[command(subcommand)]
    Arcs(ArcsCmd),
    /// Field reduction and linear point sets
    #[command(subcommand)]
    Linearset(LinearsetCmd),
    /// Exhaustive search for blocking sets and arcs
    #[command(subcommand)]
    Search(SearchCmd),
    /// Acceptance batteries
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Args)]
struct FieldArgs {
    /// Field order q = p^n (prime power)
    #[arg(long)]
    q: u64,
    /// Irreducible modulus, prime-field coefficients low to high
    #[arg(long)]
    irr: Option<String>,
}

#[derive(Args)]
struct FnArgs {
    /// Named example function: half_power, frob_power, subfield_trace
    #[arg(long = "fn")]
    fn_name: Option<String>,
    /// Subfield degree parameter for frob_power / subfield_trace
    #[arg(long)]
    e: Option<u32>,
    /// Function table: q element reps, comma-separated, in index order
    #[arg(long)]
    table: Option<String>,
    /// File holding a function table
    #[arg(long)]
    table_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Addition and multiplication tables
    Tables(FieldArgs),
    /// Trace and norm onto the subfield GF(p^e)
    Trace {
        #[command(flatten)]
        field: FieldArgs,
        /// Subfield degree over the prime field
        #[arg(long)]
        e: u32,
    },
}

#[derive(Subcommand)]
enum DirCmd {
    /// Direction set of a function with f(0) = 0
    Compute {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        func: FnArgs,
    },
    /// Direction set plus interval membership and linearity conclusion
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        func: FnArgs,
    },
    /// Emit a named example function and its direction count
    Examples {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        func: FnArgs,
    },
}

#[derive(Args)]
struct PolyArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Coefficient reps, low to high, comma-separated
    #[arg(long)]
    coeffs: String,
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Tags of a fully reducible X^q + g with vanishing X^(q-1) term
    Trichotomy(PolyArgs),
    /// Nine-case classification of a fully reducible X^q·g + h
    LacunaryCases(PolyArgs),
    /// Split f = X^q·g + h and report reducibility/coprimality
    Lacunary(PolyArgs),
}

#[derive(Subcommand)]
enum RedeiCmd {
    /// Rédei polynomial of the graph of a function
    Graph {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        func: FnArgs,
    },
    /// Rédei/lacunary analysis of a blocking set of size ≤ 2q
    Blocking {
        /// Point-set file
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Baer,
    BaerMember,
    RedeiGraph,
    ThreeLines,
    PartitionUnion,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Bruen,
    BlokhuisPrime,
    BbsTfold,
    DoubleBallBlokhuis,
}

#[derive(Subcommand)]
enum BlockingCmd {
    /// Line-intersection analysis of a point set
    Analyze {
        /// Point-set file
        #[arg(long)]
        file: PathBuf,
    },
    /// Build a named blocking set
    Construct {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        kind: ConstructKind,
        /// Partition member index (baer-member)
        #[arg(long)]
        index: Option<usize>,
        /// Fold count (partition-union)
        #[arg(long)]
        t: Option<usize>,
        #[command(flatten)]
        func: FnArgs,
        /// Write the set to a point-set file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower bounds on blocking-set size
    Bounds {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        model: Model,
        /// Fold count for the t-fold model
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
}

#[derive(Subcommand)]
enum ArcsCmd {
    /// Line-intersection analysis of an arc candidate
    Analyze {
        #[arg(long)]
        file: PathBuf,
        /// Intersection budget n of the queried (k,n)-arc
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Decide whether a (q+1)-set is a nondegenerate conic
    Conic {
        #[arg(long)]
        file: PathBuf,
    },
    /// Extend a (q+1)-arc in even characteristic by its nucleus
    Extend {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ReductionArgs {
    /// Order of the big field (plane coordinates)
    #[arg(long)]
    q: u64,
    /// Order of the small field of the reduction
    #[arg(long)]
    subq: u64,
}

#[derive(Subcommand)]
enum LinearsetCmd {
    /// Parameters of the field reduction PG(2,q) → V(3s, q₀)
    Reduce(ReductionArgs),
    /// Linear point set B(W) of a subspace file
    Bw {
        #[command(flatten)]
        reduction: ReductionArgs,
        /// Subspace file over the small field
        #[arg(long)]
        file: PathBuf,
        /// Write B(W) to a point-set file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest scattered subspace dimension
    Scattered {
        #[command(flatten)]
        reduction: ReductionArgs,
        /// Largest dimension to try
        #[arg(long)]
        limit: usize,
        /// Randomized lower bound instead of exhaustive maximum
        #[arg(long)]
        randomized: bool,
        /// Seed (mandatory with --randomized)
        #[arg(long)]
        seed: Option<u64>,
        /// Greedy restarts in randomized mode
        #[arg(long, default_value_t = 1000)]
        restarts: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Blocking,
    Arc,
    MaximalArc,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exists,
    All,
    Classes,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum, default_value_t = KindArg::Blocking)]
    kind: KindArg,
    /// Fold count for blocking-set searches
    #[arg(long, default_value_t = 1)]
    t: u32,
    /// Line-intersection budget for arc searches
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Size bound (blocking: maximum; arcs: exact size)
    #[arg(long)]
    max_size: u32,
    /// Exclude blocking sets that contain a full line
    #[arg(long)]
    nontrivial: bool,
    /// Node budget; values above the default need --allow-long
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Run a search and report witnesses
    Run {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Exists)]
        mode: ModeArg,
        /// Write the first witness to a point-set file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaust the space and certify that no witness exists
    Certify {
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Run acceptance batteries (one pass/fail line each)
    Run {
        /// Seed for the randomized sweeps
        #[arg(long)]
        seed: u64,
        /// Comma-separated battery names (default: all)
        #[arg(long)]
        criteria: Option<String>,
    },
    /// List battery names
    List,
}

enum CliError {
    Usage(String),
    Verification(String),
}

type CliResult = Result<Outcome, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<planelab_core::io::IoError> for CliError {
    fn from(e: planelab_core::io::IoError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        // A pre-existing global pool (impossible here) would be kept as-is.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    let t0 = Instant::now();
    match dispatch(&cli) {
        Ok(out) => {
            let code = if out.failed { 1 } else { 0 };
            let report = Report::finish(out, t0.elapsed());
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                for line in &report.human {
                    println!("{line}");
                }
            }
            ExitCode::from(code)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult {
    match &cli.cmd {
        Cmd::Field(c) => match c {
            FieldCmd::Tables(f) => field_tables(f),
            FieldCmd::Trace { field, e } => field_trace(field, *e),
        },
        Cmd::Directions(c) => match c {
            DirCmd::Compute { field, func } => dir_compute(field, func, false),
            DirCmd::Classify { field, func } => dir_compute(field, func, true),
            DirCmd::Examples { field, func } => dir_examples(field, func),
        },
        Cmd::Poly(c) => match c {
            PolyCmd::Trichotomy(a) => poly_trichotomy(a),
            PolyCmd::LacunaryCases(a) => poly_lacunary_cases(a),
            PolyCmd::Lacunary(a) => poly_lacunary(a),
        },
        Cmd::Redei(c) => match c {
            RedeiCmd::Graph { field, func } => redei_graph(field, func),
            RedeiCmd::Blocking { file } => redei_blocking(file),
        },
        Cmd::Blocking(c) => match c {
            BlockingCmd::Analyze { file } => blocking_analyze(file),
            BlockingCmd::Construct {
                field,
                kind,
                index,
                t,
                func,
                out,
            } => blocking_construct(field, *kind, *index, *t, func, out),
            BlockingCmd::Bounds { field, model, t } => blocking_bounds(field, *model, *t),
        },
        Cmd::Arcs(c) => match c {
            ArcsCmd::Analyze { file, n } => arcs_analyze(file, *n),
            ArcsCmd::Conic { file } => arcs_conic(file),
            ArcsCmd::Extend { file, out } => arcs_extend(file, out),
        },
        Cmd::Linearset(c) => match c {
            LinearsetCmd::Reduce(r) => linearset_reduce(r),
            LinearsetCmd::Bw { reduction, file, out } => linearset_bw(reduction, file, out),
            LinearsetCmd::Scattered {
                reduction,
                limit,
                randomized,
                seed,
                restarts,
            } => linearset_scattered(reduction, *limit, *randomized, *seed, *restarts),
        },
        Cmd::Search(c) => match c {
            SearchCmd::Run { search, mode, out } => {
                search_run(search, *mode, out, cli.allow_long)
            }
            SearchCmd::Certify { search } => search_certify(search, cli.allow_long),
        },
        Cmd::Suite(c) => match c {
            SuiteCmd::Run { seed, criteria } => suite_run(*seed, criteria, cli.allow_long),
            SuiteCmd::List => suite_list(),
        },
    }
}

// ---------------------------------------------------------------------------
// Shared helpers

fn parse_u64_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| usage(format!("bad number {t:?}: {e}"))))
        .collect()
}

fn field_of(args: &FieldArgs) -> Result<FieldSpec, CliError> {
    let (p, n) =
        factor_prime_power(args.q).ok_or_else(|| usage(format!("{} is not a prime power", args.q)))?;
    let irr = match &args.irr {
        Some(s) => Some(parse_u64_list(s)?),
        None => None,
    };
    make_field(p, n, irr.as_deref()).map_err(|e| usage(e.to_string()))
}

fn function_of(spec: &FieldSpec, args: &FnArgs) -> Result<FieldFn, CliError> {
    let sources =
        args.fn_name.is_some() as u8 + args.table.is_some() as u8 + args.table_file.is_some() as u8;
    if sources != 1 {
        return Err(usage("give exactly one of --fn, --table, --table-file"));
    }
    if let Some(name) = &args.fn_name {
        let kind = example_kind(name, args.e)?;
        return example_function(kind, spec).map_err(|e| usage(e.to_string()));
    }
    let text = match (&args.table, &args.table_file) {
        (Some(t), _) => t.clone(),
        (_, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?,
        _ => unreachable!(),
    };
    Ok(parse_table(spec, text.trim())?)
}

fn example_kind(name: &str, e: Option<u32>) -> Result<ExampleKind, CliError> {
    let need_e = || e.ok_or_else(|| usage(format!("--fn {name} needs --e")));
    match name {
        "half_power" => Ok(ExampleKind::HalfPower),
        "frob_power" => Ok(ExampleKind::FrobPower { e: need_e()? }),
        "subfield_trace" => Ok(ExampleKind::SubfieldTrace { e: need_e()? }),
        _ => Err(usage(format!(
            "unknown function {name:?}; expected half_power, frob_power, or subfield_trace"
        ))),
    }
}

fn read_point_set(path: &PathBuf) -> Result<(FieldSpec, PointSet), CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(parse_point_set(&text)?)
}

fn write_out(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn point_strings(spec: &FieldSpec, s: &PointSet) -> Vec<String> {
    s.members()
        .iter()
        .map(|&i| {
            let t = point_triple(spec, i);
            format!("{}:{}:{}", t[0].rep(), t[1].rep(), t[2].rep())
        })
        .collect()
}

fn reps(xs: &[FieldElem]) -> Vec<u32> {
    xs.iter().map(|x| x.rep()).collect()
}

fn spectrum_json(spectrum: &std::collections::BTreeMap<usize, usize>) -> serde_json::Value {
    json!(spectrum)
}

// ---------------------------------------------------------------------------
// field

fn field_tables(args: &FieldArgs) -> CliResult {
    let spec = field_of(args)?;
    let q = spec.q();
    let row = |op: &dyn Fn(FieldElem, FieldElem) -> FieldElem, a: u32| -> Vec<u32> {
        (0..q)
            .map(|b| op(FieldElem::from_rep(a), FieldElem::from_rep(b)).rep())
            .collect()
    };
    let add: Vec<Vec<u32>> = (0..q).map(|a| row(&|x, y| spec.add(x, y), a)).collect();
    let mul: Vec<Vec<u32>> = (0..q).map(|a| row(&|x, y| spec.mul(x, y), a)).collect();
    let mut out = Outcome::with_field("field tables", &spec);
    out.human.push(format!("GF({q}), modulus coefficients {:?}", spec.irr()));
    out.human.push("add:".into());
    for r in &add {
        out.human.push(format!(
            "  {}",
            r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        ));
    }
    out.human.push("mul:".into());
    for r in &mul {
        out.human.push(format!(
            "  {}",
            r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        ));
    }
    out.payload = json!({ "q": q, "add": add, "mul": mul });
    Ok(out)
}

fn field_trace(args: &FieldArgs, e: u32) -> CliResult {
    let spec = field_of(args)?;
    let q = spec.q();
    let sub_order = (spec.p() as u64).pow(e);
    let mut trace = Vec::with_capacity(q as usize);
    for a in spec.elements() {
        trace.push(spec.trace_to(e, a).map_err(|err| usage(err.to_string()))?.rep());
    }
    // norm of a nonzero element: a^((q-1)/(q0-1)); norm of zero: zero
    let exp = (q as u64 - 1) / (sub_order - 1);
    let norm: Vec<u32> = spec
        .elements()
        .map(|a| if a.is_zero() { 0 } else { spec.pow(a, exp).rep() })
        .collect();
    let mut out = Outcome::with_field("field trace", &spec);
    out.human.push(format!("trace and norm GF({q}) → GF({sub_order})"));
    out.human.push(format!("trace: {trace:?}"));
    out.human.push(format!("norm:  {norm:?}"));
    out.payload = json!({ "e": e, "subfield": sub_order, "trace": trace, "norm": norm });
    Ok(out)
}

// ---------------------------------------------------------------------------
// directions

fn dir_report(
    spec: &FieldSpec,
    args: &FnArgs,
) -> Result<(planelab_core::directions::DirectionReport, bool), CliError> {
    let f = function_of(spec, args)?;
    let (f, shifted) = if f.table()[0].is_zero() {
        (f, false)
    } else {
        (f.normalized_zero(spec), true)
    };
    let report = classify(spec, &f).map_err(|e| usage(e.to_string()))?;
    Ok((report, shifted))
}

fn dir_compute(field: &FieldArgs, func: &FnArgs, with_intervals: bool) -> CliResult {
    let spec = field_of(field)?;
    let (report, shifted) = dir_report(&spec, func)?;
    let dirs: Vec<u32> = report.dirs.iter().map(|d| d.rep()).collect();
    let command = if with_intervals {
        "directions classify"
    } else {
        "directions compute"
    };
    let mut out = Outcome::with_field(command, &spec);
    out.human.push(format!("N = {} directions: {dirs:?}", report.n_dirs));
    if shifted {
        out.human.push("note: f normalized to f(0) = 0 (directions unchanged)".into());
    }
    out.human.push(format!(
        "e = {}, cases {:?}, linear over subfield of order: {:?}",
        report.e, report.cases, report.linear_over_subfield
    ));
    let mut payload = json!({
        "n_dirs": report.n_dirs,
        "dirs": dirs,
        "e": report.e,
        "cases": report.cases.iter().copied().collect::<Vec<u8>>(),
        "linear_over_subfield": report.linear_over_subfield,
    });
    if with_intervals {
        let intervals: Vec<serde_json::Value> = if report.n_dirs == 1 {
            Vec::new()
        } else {
            check_intervals(&spec, report.n_dirs)
                .map_err(|e| usage(e.to_string()))?
                .into_iter()
                .map(|iv| match iv {
                    RedeiInterval::Subfield { e } => json!({ "kind": "subfield", "e": e }),
                    RedeiInterval::Large => json!({ "kind": "large" }),
                })
                .collect()
        };
        let applicable = report.linearity_applicable(&spec);
        let holds = report.linearity_holds();
        let interval_names: Vec<String> = intervals
            .iter()
            .map(|iv| match iv["kind"].as_str() {
                Some("subfield") => format!("subfield e={}", iv["e"]),
                _ => "large".into(),
            })
            .collect();
        out.human.push(format!(
            "intervals: {interval_names:?}; linearity applicable: {applicable}, holds: {holds}"
        ));
        let obj = payload.as_object_mut().expect("object");
        obj.insert("intervals".into(), json!(intervals));
        obj.insert("linearity_applicable".into(), json!(applicable));
        obj.insert("linearity_holds".into(), json!(holds));
    }
    out.payload = payload;
    Ok(out)
}

fn dir_examples(field: &FieldArgs, func: &FnArgs) -> CliResult {
    let spec = field_of(field)?;
    let name = func
        .fn_name
        .as_deref()
        .ok_or_else(|| usage("examples needs --fn"))?;
    let kind = example_kind(name, func.e)?;
    let f = example_function(kind, &spec).map_err(|e| usage(e.to_string()))?;
    let expected = expected_direction_count(kind, &spec);
    let report = classify(&spec, &f).map_err(|e| usage(e.to_string()))?;
    let table = format_table(&f);
    let mut out = Outcome::with_field("directions examples", &spec);
    out.human.push(format!("table: {table}"));
    out.human.push(format!("N = {} (expected {expected})", report.n_dirs));
    out.payload = json!({
        "fn": name,
        "e": func.e,
        "table": table,
        "expected_n_dirs": expected,
        "n_dirs": report.n_dirs,
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// poly

fn parsed_poly(args: &PolyArgs) -> Result<(FieldSpec, planelab_core::fpoly::Poly), CliError> {
    let spec = field_of(&args.field)?;
    let f = parse_poly(&spec, &args.coeffs)?;
    Ok((spec, f))
}

fn tag_name(t: TrichotomyTag) -> &'static str {
    match t {
        TrichotomyTag::InXp => "in-x-p",
        TrichotomyTag::GIsMinusX => "g-is-minus-x",
        TrichotomyTag::DegreeLarge => "degree-large",
    }
}

fn poly_trichotomy(args: &PolyArgs) -> CliResult {
    let (spec, f) = parsed_poly(args)?;
    let tags = classify_xq_plus_g(&f, &spec).map_err(|e| usage(e.to_string()))?;
    let names: Vec<&str> = tags.iter().map(|&t| tag_name(t)).collect();
    let mut out = Outcome::with_field("poly trichotomy", &spec);
    out.human.push(format!("tags: {names:?}"));
    out.payload = json!({ "tags": names });
    Ok(out)
}

fn poly_lacunary_cases(args: &PolyArgs) -> CliResult {
    let (spec, f) = parsed_poly(args)?;
    let cases = classify_lacunary_cases(&f, &spec).map_err(|e| usage(e.to_string()))?;
    let trace_norm = cases.trace_norm.as_ref().map(|tn| match tn {
        TraceNormForm::Trace { a, b, c, d } => {
            json!({ "form": "trace", "a": a.rep(), "b": b.rep(), "c": c.rep(), "d": d.rep() })
        }
        TraceNormForm::Norm { a, b, c, d } => {
            json!({ "form": "norm", "a": a.rep(), "b": b.rep(), "c": c.rep(), "d": d.rep() })
        }
    });
    let mut out = Outcome::with_field("poly lacunary-cases", &spec);
    out.human.push(format!(
        "e = {}, k = {}, cases {:?}, trace/norm form: {}",
        cases.e,
        cases.k,
        cases.cases,
        if trace_norm.is_some() { "recognized" } else { "none" }
    ));
    out.payload = json!({
        "e": cases.e,
        "k": cases.k,
        "cases": cases.cases.iter().copied().collect::<Vec<u8>>(),
        "trace_norm": trace_norm,
    });
    Ok(out)
}

fn poly_lacunary(args: &PolyArgs) -> CliResult {
    let (spec, f) = parsed_poly(args)?;
    let profile = lacunary_split(&f, &spec).map_err(|e| usage(e.to_string()))?;
    let mut out = Outcome::with_field("poly lacunary", &spec);
    out.human.push(format!(
        "g = {}; h = {}; k = {}, e = {}, fully reducible: {}, coprime: {}",
        format_poly(&profile.g),
        format_poly(&profile.h),
        profile.k,
        profile.e,
        profile.fully_reducible,
        profile.coprime
    ));
    out.payload = json!({
        "g": format_poly(&profile.g),
        "h": format_poly(&profile.h),
        "k": profile.k,
        "e": profile.e,
        "fully_reducible": profile.fully_reducible,
        "coprime": profile.coprime,
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// redei

fn redei_graph(field: &FieldArgs, func: &FnArgs) -> CliResult {
    let spec = field_of(field)?;
    let (report, shifted) = dir_report(&spec, func)?;
    let f = function_of(&spec, func)?;
    let f = if shifted { f.normalized_zero(&spec) } else { f };
    let r = redei_poly_of_function(&spec, &f);
    let profile = vanishing_profile(&spec, &r, &report.dirs);
    let q = spec.q() as usize;
    let mut out = Outcome::with_field("redei graph", &spec);
    out.human.push(format!(
        "degree {} Rédei polynomial of a graph; N = {} directions",
        r.degree(),
        report.n_dirs
    ));
    out.human.push(format!(
        "identically zero coefficients: {:?}",
        profile.identically_zero
    ));
    out.human.push(format!(
        "zero off the direction set: {:?}; max specialization degree: {:?}",
        profile.zero_off_dirs, profile.deg_g_max
    ));
    out.human.push(format!(
        "low-index vanishing law holds: {}",
        profile.low_indices_vanish(q, report.n_dirs)
    ));
    out.payload = json!({
        "degree": r.degree(),
        "n_dirs": report.n_dirs,
        "dirs": report.dirs.iter().map(|d| d.rep()).collect::<Vec<u32>>(),
        "identically_zero": profile.identically_zero,
        "zero_off_dirs": profile.zero_off_dirs,
        "deg_g_max": profile.deg_g_max,
        "low_indices_vanish": profile.low_indices_vanish(q, report.n_dirs),
    });
    Ok(out)
}

fn redei_blocking(file: &PathBuf) -> CliResult {
    let (spec, set) = read_point_set(file)?;
    let plane = Plane::new(spec.clone());
    let analysis = blocking_redei(&plane, &set).map_err(|e| match e {
        RedeiError::SetTooLarge { .. } => usage(e.to_string()),
        RedeiError::NotBlocking | RedeiError::NoTangent => CliError::Verification(e.to_string()),
    })?;
    let mut out = Outcome::with_field("redei blocking", &spec);
    out.human.push(format!(
        "size {} = q + 1 + d with d = {}; f = {}",
        set.len(),
        analysis.d,
        format_poly(&analysis.f_x)
    ));
    out.human.push(format!(
        "divisibility: {}, vanishing: {}, shape: {}",
        analysis.divisibility_ok, analysis.vanishing_ok, analysis.shape_ok
    ));
    out.payload = json!({
        "size": set.len(),
        "d": analysis.d,
        "f": format_poly(&analysis.f_x),
        "g": format_poly(&analysis.profile.g),
        "h": format_poly(&analysis.profile.h),
        "e": analysis.profile.e,
        "divisibility_ok": analysis.divisibility_ok,
        "vanishing_ok": analysis.vanishing_ok,
        "shape_ok": analysis.shape_ok,
    });
    out.failed = !(analysis.divisibility_ok && analysis.vanishing_ok);
    Ok(out)
}

// ---------------------------------------------------------------------------
// blocking

fn blocking_report_json(report: &planelab_core::blocking::BlockingReport, size: usize, q: u32) -> serde_json::Value {
    json!({
        "size": size,
        "t_max": report.t_max,
        "spectrum": spectrum_json(&report.spectrum),
        "minimal": report.minimal,
        "redei_type": report.redei_type,
        "mod_p_spectrum": report.szonyi_ok,
        "d": report.d,
        "contains_line": report.contains_line(q),
    })
}

fn blocking_analyze(file: &PathBuf) -> CliResult {
    let (spec, set) = read_point_set(file)?;
    let plane = Plane::new(spec.clone());
    let report = analyze(&plane, &set);
    let mut out = Outcome::with_field("blocking analyze", &spec);
    out.human.push(format!(
        "size {}, t_max = {}, minimal: {}, Rédei type: {}, contains a line: {}",
        set.len(),
        report.t_max,
        report.minimal,
        report.redei_type,
        report.contains_line(spec.q())
    ));
    out.human.push(format!("spectrum: {:?}", report.spectrum));
    out.payload = blocking_report_json(&report, set.len(), spec.q());
    Ok(out)
}

fn blocking_construct(
    field: &FieldArgs,
    kind: ConstructKind,
    index: Option<usize>,
    t: Option<usize>,
    func: &FnArgs,
    out_path: &Option<PathBuf>,
) -> CliResult {
    let spec = field_of(field)?;
    let plane = Plane::new(spec.clone());
    let f_storage;
    let construction = match kind {
        ConstructKind::Baer => Construction::BaerSubplane,
        ConstructKind::BaerMember => Construction::BaerPartitionMember {
            index: index.ok_or_else(|| usage("--kind baer-member needs --index"))?,
        },
        ConstructKind::RedeiGraph => {
            f_storage = function_of(&spec, func)?;
            Construction::RedeiGraph { f: &f_storage }
        }
        ConstructKind::ThreeLines => Construction::ThreeLines,
        ConstructKind::PartitionUnion => Construction::PartitionUnion {
            t: t.ok_or_else(|| usage("--kind partition-union needs --t"))?,
        },
    };
    let set = construct(&plane, construction).map_err(|e| usage(e.to_string()))?;
    let report = analyze(&plane, &set);
    let mut out = Outcome::with_field("blocking construct", &spec);
    out.human.push(format!(
        "constructed {} points; t_max = {}, minimal: {}, Rédei type: {}",
        set.len(),
        report.t_max,
        report.minimal,
        report.redei_type
    ));
    out.human.push(format!("spectrum: {:?}", report.spectrum));
    if let Some(path) = out_path {
        write_out(path, &format_point_set(&spec, &set))?;
        out.human.push(format!("written to {}", path.display()));
    }
    let mut payload = blocking_report_json(&report, set.len(), spec.q());
    payload
        .as_object_mut()
        .expect("object")
        .insert("points".into(), json!(point_strings(&spec, &set)));
    out.payload = payload;
    Ok(out)
}

fn blocking_bounds(field: &FieldArgs, model: Model, t: u32) -> CliResult {
    let (p, n) = factor_prime_power(field.q)
        .ok_or_else(|| usage(format!("{} is not a prime power", field.q)))?;
    let (model_kind, model_name) = match model {
        Model::Bruen => (BoundModel::Bruen, "bruen"),
        Model::BlokhuisPrime => (BoundModel::BlokhuisPrime, "blokhuis-prime"),
        Model::BbsTfold => (BoundModel::BbsTFold, "bbs-tfold"),
        Model::DoubleBallBlokhuis => (BoundModel::DoubleBallBlokhuis, "double-ball-blokhuis"),
    };
    let bound = lower_bound(&BoundQuery {
        p,
        n,
        t,
        model: model_kind,
    })
    .map_err(|e| usage(e.to_string()))?;
    let spec = field_of(field)?;
    let mut out = Outcome::with_field("blocking bounds", &spec);
    out.human.push(format!("{model_name} lower bound for q = {}: {bound}", field.q));
    out.payload = json!({ "model": model_name, "q": field.q, "t": t, "bound": bound });
    Ok(out)
}

// ---------------------------------------------------------------------------
// arcs

fn arcs_analyze(file: &PathBuf, n: usize) -> CliResult {
    let (spec, set) = read_point_set(file)?;
    let plane = Plane::new(spec.clone());
    let report = arc_analyze(&plane, &set, n);
    let mut out = Outcome::with_field("arcs analyze", &spec);
    out.human.push(format!(
        "k = {}, max line intersection {}, bound {}, maximal: {}, complete: {}",
        report.k, report.n_max, report.barlotti_bound, report.is_maximal, report.complete
    ));
    out.payload = json!({
        "k": report.k,
        "n": n,
        "n_max": report.n_max,
        "barlotti_bound": report.barlotti_bound,
        "is_maximal": report.is_maximal,
        "complete": report.complete,
    });
    Ok(out)
}

fn arc_error(e: ArcError) -> CliError {
    match e {
        ArcError::WrongSize { .. } | ArcError::OddCharacteristic => usage(e.to_string()),
        _ => CliError::Verification(e.to_string()),
    }
}

fn arcs_conic(file: &PathBuf) -> CliResult {
    let (spec, set) = read_point_set(file)?;
    let plane = Plane::new(spec.clone());
    let form = is_conic(&plane, &set).map_err(arc_error)?;
    let mut out = Outcome::with_field("arcs conic", &spec);
    match &form {
        Some(f) => out.human.push(format!("conic with form coefficients {:?}", reps(f))),
        None => out.human.push("not a nondegenerate conic".into()),
    }
    out.payload = json!({
        "is_conic": form.is_some(),
        "form": form.as_ref().map(|f| reps(f)),
    });
    Ok(out)
}

fn arcs_extend(file: &PathBuf, out_path: &Option<PathBuf>) -> CliResult {
    let (spec, set) = read_point_set(file)?;
    let plane = Plane::new(spec.clone());
    let extended = extend_to_hyperoval(&plane, &set).map_err(arc_error)?;
    let mut out = Outcome::with_field("arcs extend", &spec);
    out.human.push(format!(
        "extended {} → {} points by adjoining the nucleus",
        set.len(),
        extended.len()
    ));
    if let Some(path) = out_path {
        write_out(path, &format_point_set(&spec, &extended))?;
        out.human.push(format!("written to {}", path.display()));
    }
    out.payload = json!({
        "size": extended.len(),
        "points": point_strings(&spec, &extended),
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// linearset

fn reduction_of(args: &ReductionArgs) -> Result<(FieldSpec, FieldSpec, ReductionContext), CliError> {
    let big = field_of(&FieldArgs { q: args.q, irr: None })?;
    let small = field_of(&FieldArgs { q: args.subq, irr: None })?;
    let ctx = ReductionContext::new(&big, &small).map_err(|e| usage(e.to_string()))?;
    Ok((big, small, ctx))
}

fn linearset_reduce(args: &ReductionArgs) -> CliResult {
    let (big, _small, ctx) = reduction_of(args)?;
    let mut out = Outcome::with_field("linearset reduce", &big);
    out.human.push(format!(
        "PG(2,{}) → V({},{}) with s = {}; {} spread elements",
        args.q,
        ctx.ambient_dim(),
        args.subq,
        ctx.s(),
        ctx.num_points()
    ));
    out.payload = json!({
        "big_q": args.q,
        "small_q": args.subq,
        "s": ctx.s(),
        "ambient_dim": ctx.ambient_dim(),
        "points": ctx.num_points(),
    });
    Ok(out)
}

fn linearset_bw(args: &ReductionArgs, file: &PathBuf, out_path: &Option<PathBuf>) -> CliResult {
    let (big, small, ctx) = reduction_of(args)?;
    let text =
        std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let w = parse_subspace(&small, ctx.ambient_dim(), &text)?;
    let set = b_of_w(&ctx, &w);
    let plane = Plane::new(big.clone());
    let spectrum = plane.spectrum(&set);
    let blocks = !spectrum.contains_key(&0);
    let scattered = is_scattered(&ctx, &w);
    let mut out = Outcome::with_field("linearset bw", &big);
    out.human.push(format!(
        "B(W) has {} points for dim W = {}; scattered: {scattered}, blocks PG(2,{}): {blocks}",
        set.len(),
        w.dim(),
        args.q
    ));
    out.human.push(format!("spectrum: {spectrum:?}"));
    if let Some(path) = out_path {
        write_out(path, &format_point_set(&big, &set))?;
        out.human.push(format!("written to {}", path.display()));
    }
    out.payload = json!({
        "dim": w.dim(),
        "size": set.len(),
        "scattered": scattered,
        "blocks": blocks,
        "spectrum": spectrum_json(&spectrum),
        "points": point_strings(&big, &set),
    });
    Ok(out)
}

fn linearset_scattered(
    args: &ReductionArgs,
    limit: usize,
    randomized: bool,
    seed: Option<u64>,
    restarts: u32,
) -> CliResult {
    let (big, _small, ctx) = reduction_of(args)?;
    let mut out = Outcome::with_field("linearset scattered", &big);
    if randomized {
        let seed = seed.ok_or_else(|| usage("--randomized needs --seed (reproducibility)"))?;
        let (dim, witness) = max_scattered_randomized(&ctx, limit, seed, restarts);
        out.human.push(format!(
            "randomized lower bound: a scattered subspace of dimension {dim} (limit {limit})"
        ));
        out.payload = json!({
            "method": "randomized",
            "dim": dim,
            "restarts": restarts,
            "witness": witness.as_ref().map(format_subspace),
        });
        out.seed = Some(seed);
    } else {
        let dim = max_scattered_dim(&ctx, limit).map_err(|e| match e {
            LinearSetError::TooLarge { .. } => {
                usage(format!("{e}; use --randomized --seed for a lower bound"))
            }
            other => usage(other.to_string()),
        })?;
        out.human.push(format!("maximum scattered dimension ≤ {limit}: {dim}"));
        out.payload = json!({ "method": "exhaustive", "dim": dim, "limit": limit });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// search

fn search_problem(args: &SearchArgs, mode: SearchMode, allow_long: bool) -> Result<SearchProblem, CliError> {
    let spec = field_of(&args.field)?;
    let kind = match args.kind {
        KindArg::Blocking => SearchKind::TFoldBlocking { t: args.t },
        KindArg::Arc => SearchKind::KnArc { n: args.n },
        KindArg::MaximalArc => SearchKind::MaximalArc { n: args.n },
    };
    let mut problem = SearchProblem::new(spec, kind, args.max_size, mode);
    problem.nontrivial = args.nontrivial;
    problem.budget = match args.budget {
        Some(b) if b > DEFAULT_BUDGET && !allow_long => {
            return Err(usage(format!(
                "budget {b} exceeds the default {DEFAULT_BUDGET}; add --allow-long"
            )));
        }
        Some(b) => b,
        None if allow_long => u64::MAX,
        None => DEFAULT_BUDGET,
    };
    problem.validate().map_err(|e| usage(e.to_string()))?;
    Ok(problem)
}

fn search_run(
    args: &SearchArgs,
    mode: ModeArg,
    out_path: &Option<PathBuf>,
    allow_long: bool,
) -> CliResult {
    let mode = match mode {
        ModeArg::Exists => SearchMode::Exists,
        ModeArg::All => SearchMode::EnumerateAll,
        ModeArg::Classes => SearchMode::EnumerateUpToIso,
    };
    let problem = search_problem(args, mode, allow_long)?;
    let spec = problem.spec.clone();
    let outcome = run(&problem).map_err(|e| usage(e.to_string()))?;
    let mut out = Outcome::with_field("search run", &spec);
    out.human.push(format!("{problem}"));
    out.human.push(format!(
        "{} witness(es), exhausted: {}, nodes: {}{}",
        outcome.witnesses.len(),
        outcome.exhausted,
        outcome.nodes,
        match outcome.iso_classes {
            Some(c) => format!(", isomorphism classes: {c}"),
            None => String::new(),
        }
    ));
    for w in outcome.witnesses.iter().take(3) {
        out.human.push(format!("  {:?}", point_strings(&spec, w)));
    }
    if outcome.witnesses.len() > 3 {
        out.human.push(format!("  … {} more", outcome.witnesses.len() - 3));
    }
    if let (Some(path), Some(first)) = (out_path, outcome.witnesses.first()) {
        write_out(path, &format_point_set(&spec, first))?;
        out.human.push(format!("first witness written to {}", path.display()));
    }
    out.payload = json!({
        "problem": problem.to_string(),
        "count": outcome.witnesses.len(),
        "iso_classes": outcome.iso_classes,
        "witnesses": outcome
            .witnesses
            .iter()
            .map(|w| point_strings(&spec, w))
            .collect::<Vec<_>>(),
    });
    out.nodes = Some(outcome.nodes);
    out.exhausted = Some(outcome.exhausted);
    Ok(out)
}

fn search_certify(args: &SearchArgs, allow_long: bool) -> CliResult {
    let problem = search_problem(args, SearchMode::Exists, allow_long)?;
    let spec = problem.spec.clone();
    let mut out = Outcome::with_field("search certify", &spec);
    match certify_nonexistence(&problem) {
        Ok(cert) => {
            out.human.push(format!("nonexistence certified: {}", cert.problem));
            out.human.push(format!(
                "digest {}, {} nodes, engine {}",
                cert.digest, cert.nodes, cert.engine_version
            ));
            for case in &cert.root_cases {
                out.human.push(format!("  root case: {case}"));
            }
            out.nodes = Some(cert.nodes);
            out.exhausted = Some(true);
            out.payload = json!({
                "certified": true,
                "problem": cert.problem,
                "digest": cert.digest,
                "root_cases": cert.root_cases,
                "engine_version": cert.engine_version,
            });
        }
        Err(SearchError::WitnessFound { witness }) => {
            out.human.push(format!(
                "refuted: witness {:?}",
                point_strings(&spec, &witness)
            ));
            out.payload = json!({
                "certified": false,
                "witness": point_strings(&spec, &witness),
            });
            out.failed = true;
        }
        Err(SearchError::NotExhausted { nodes }) => {
            out.human.push(format!(
                "no conclusion: budget exhausted after {nodes} nodes (raise --budget/--allow-long)"
            ));
            out.nodes = Some(nodes);
            out.exhausted = Some(false);
            out.payload = json!({ "certified": false, "budget_exhausted": true });
            out.failed = true;
        }
        Err(e) => return Err(usage(e.to_string())),
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// suite

fn suite_run(seed: u64, criteria: &Option<String>, allow_long: bool) -> CliResult {
    let names: Vec<&str> = match criteria {
        Some(list) => {
            let mut picked = Vec::new();
            for name in list.split(',') {
                let name = name.trim();
                let known = CRITERIA
                    .iter()
                    .find(|&&c| c == name)
                    .ok_or_else(|| usage(format!("unknown battery {name:?}")))?;
                picked.push(*known);
            }
            picked
        }
        None => CRITERIA.to_vec(),
    };
    let cfg = BatteryConfig { allow_long, seed };
    let mut out = Outcome::bare("suite run");
    let mut results = Vec::new();
    for name in names {
        let r = run_criterion(name, &cfg).expect("known battery");
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        let gate = if r.skipped_long { " [long part skipped]" } else { "" };
        out.human.push(format!("{name}: {verdict}{gate} — {}", r.details));
        if !r.passed {
            out.failed = true;
        }
        results.push(json!({
            "name": r.name,
            "passed": r.passed,
            "skipped_long": r.skipped_long,
            "details": r.details,
        }));
    }
    out.payload = json!(results);
    out.seed = Some(seed);
    Ok(out)
}

fn suite_list() -> CliResult {
    let mut out = Outcome::bare("suite list");
    for name in CRITERIA {
        out.human.push(name.to_string());
    }
    out.payload = json!(CRITERIA);
    Ok(out)
}
