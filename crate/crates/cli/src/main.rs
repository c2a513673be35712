mod input;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degprobe::boolfun::Degree;
use degprobe::catalog::{
    check_expected, derive_complement_reps, histogram, histogram_values, read_sweep_dt, sweep,
    write_sweep_csv, write_sweep_json, HistogramMode, HistogramSpec,
};
use degprobe::degtest::{
    add_from_dt, bounds, decide, dt_by_derivative_recursion, dt_from_add, estimate_dt,
    exact_add_auto, exact_add_bitsliced, exact_dt_homogeneous, exact_dt_tuples, pochhammer_floor,
    Sampling, Verdict,
};
use degprobe::{Error, ExactProb};

use input::{load_source, FunctionArgs};
use report::{OutputFormat, Report};

const DEFAULT_SEED: u64 = 0x5eed_de90;

#[derive(Clone, Copy, Debug)]
enum SeedArg {
    Fixed(u64),
    Random,
}

impl FromStr for SeedArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "random" {
            return Ok(SeedArg::Random);
        }
        s.parse()
            .map(SeedArg::Fixed)
            .map_err(|_| format!("expected an integer or \"random\", got {s:?}"))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "degprobe",
    version,
    about = "Exact and sampled failure probabilities of the deg(f) < k test"
)]
struct Cli {
    /// RNG seed, or "random"
    #[arg(long, global = true, default_value_t = SeedArg::Fixed(DEFAULT_SEED).to_string())]
    seed: String,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    output: OutputFormat,
    /// Decimal digits (round half to even)
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,
    /// Worker threads; 0 uses every core
    #[arg(long, global = true, default_value_t = 0)]
    parallelism: usize,
    /// Also print exact rationals
    #[arg(long, global = true)]
    exact: bool,
    #[command(subcommand)]
    command: Command,
}

impl std::fmt::Display for SeedArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeedArg::Fixed(s) => write!(f, "{s}"),
            SeedArg::Random => f.write_str("random"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert between truth table and ANF; report degree and dd_k
    Anf(FunctionArgs),
    /// Exact dt_k and add_k
    Exact(ExactArgs),
    /// Run the randomized test t times and decide deg(f) < k
    Test(TestArgs),
    /// Monte-Carlo estimate of dt_k (or add_k with --independent)
    Estimate(EstimateArgs),
    /// Exact values for a list of class representatives
    Sweep(SweepArgs),
    /// Lower and upper bounds on dt_k for degree-k functions
    Bounds(BoundsArgs),
    /// Histogram of the dt_k column of a sweep CSV
    Hist(HistArgs),
    /// List class representatives
    Reps(RepsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Tuples,
    Subspaces,
    Recursion,
    Homogeneous,
    Auto,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Run every feasible method and require identical rationals
    #[arg(long)]
    self_check: bool,
}

#[derive(Args, Debug)]
struct TestArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long)]
    k: usize,
    /// Number of runs
    #[arg(long, default_value_t = 9)]
    t: u32,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Sample only independent u_1..u_k
    #[arg(long)]
    independent: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// builtin:<degree> or a file of "id: ANF" lines
    #[arg(long)]
    reps: String,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Degree of the entries in a file source; defaults to k
    #[arg(long)]
    degree: Option<usize>,
    /// Replace every entry by its monomial-wise complement
    #[arg(long)]
    complement: bool,
    /// Compare against stored expected values (exit 4 on mismatch)
    #[arg(long)]
    check: bool,
    /// CSV output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON mirror of the CSV
    #[arg(long)]
    json: Option<PathBuf>,
    /// distinct, bins or bins:<count>
    #[arg(long)]
    hist: Option<HistMode>,
    /// Histogram output file; stdout when absent
    #[arg(long)]
    hist_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Args, Debug)]
struct HistArgs {
    /// Sweep CSV
    #[arg(long)]
    input: PathBuf,
    /// distinct, bins or bins:<count>
    #[arg(long, default_value = "bins")]
    mode: HistMode,
    /// Bin range as "min,max" decimals or rationals
    #[arg(long)]
    range: Option<String>,
}

#[derive(Args, Debug)]
struct RepsArgs {
    /// builtin:<degree> or a file of "id: ANF" lines
    #[arg(long)]
    source: String,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    complement: bool,
}

#[derive(Clone, Copy, Debug)]
struct HistMode(HistogramMode);

impl FromStr for HistMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "distinct" => Ok(HistMode(HistogramMode::PerDistinctValue)),
            "bins" => Ok(HistMode(HistogramMode::default())),
            _ => s
                .strip_prefix("bins:")
                .and_then(|c| c.parse().ok())
                .filter(|&c| c > 0)
                .map(|c| HistMode(HistogramMode::EqualWidthBins(c)))
                .ok_or_else(|| format!("expected distinct, bins or bins:<count>, got {s:?}")),
        }
    }
}

/// Everything that ends a command early, with its exit code.
enum Failure {
    Lib(Error),
    CheckFailed(Vec<String>),
    MethodsDisagree(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::TooExpensive { .. }) => 3,
            Failure::Lib(Error::Io(_)) => 5,
            Failure::Lib(_) => 2,
            Failure::CheckFailed(_) => 4,
            Failure::MethodsDisagree(_) => 6,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::CheckFailed(ids) => format!("check failed for: {}", ids.join(", ")),
            Failure::MethodsDisagree(m) => format!("methods disagree: {m}"),
        }
    }
}

struct Ctx {
    seed: u64,
    output: OutputFormat,
    precision: usize,
    exact: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = match cli.seed.parse::<SeedArg>() {
        Ok(SeedArg::Fixed(s)) => s,
        Ok(SeedArg::Random) => {
            let s = rand::random();
            eprintln!("seed: {s}");
            s
        }
        Err(e) => {
            eprintln!("error: --seed: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.parallelism > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.parallelism)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        seed,
        output: cli.output,
        precision: cli.precision,
        exact: cli.exact,
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&ctx, cli.command, &mut out);
    let flushed = out.flush();
    match result {
        Ok(code) => {
            if let Err(e) = flushed {
                eprintln!("error: {e}");
                return ExitCode::from(5);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(ctx: &Ctx, command: Command, out: &mut impl Write) -> Result<u8, Failure> {
    match command {
        Command::Anf(args) => cmd_anf(ctx, &args, out),
        Command::Exact(args) => cmd_exact(ctx, &args, out),
        Command::Test(args) => cmd_test(ctx, &args, out),
        Command::Estimate(args) => cmd_estimate(ctx, &args, out),
        Command::Sweep(args) => cmd_sweep(ctx, &args, out),
        Command::Bounds(args) => cmd_bounds(ctx, &args, out),
        Command::Hist(args) => cmd_hist(ctx, &args, out),
        Command::Reps(args) => cmd_reps(ctx, &args, out),
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn degree_text(d: Degree) -> String {
    match d {
        Degree::ZeroFunction => "zero function".into(),
        Degree::Exactly(d) => d.to_string(),
    }
}

fn cmd_anf(ctx: &Ctx, args: &FunctionArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let f = args.load()?;
    let n = f.anf.n();
    let degree = f.anf.degree();
    let anf_text = f.anf.to_string();
    let mut r = if f.anf.is_zero() {
        Report::new().headline(format!("0, zero function in {n} variables"))
    } else {
        Report::new().headline(format!("{anf_text}, degree {}", degree_text(degree)))
    };
    r.field("n", n);
    r.field("anf", &anf_text);
    r.field("degree", degree_text(degree));
    if !f.from_table || ctx.exact {
        let table = if args.hex {
            f.table.to_hex_string()
        } else {
            f.table.to_bit_string()
        };
        r.field("table", table);
    }
    for k in 1..=n {
        let count = f.anf.count_of_degree(k);
        let total = binomial(n, k);
        let dd = ExactProb::from_ratio(count as u64, total as u64);
        r.field(
            format!("dd_{k}"),
            format!("{count}/{total} ({})", dd.to_decimal(ctx.precision)),
        );
    }
    r.write(ctx.output, out)?;
    Ok(0)
}

fn dt_by_method(
    tt: &degprobe::boolfun::TruthTable,
    k: usize,
    method: Method,
) -> Result<ExactProb, Error> {
    let n = tt.n();
    match method {
        Method::Tuples => exact_dt_tuples(tt, k),
        Method::Subspaces => Ok(dt_from_add(&exact_add_bitsliced(tt, k)?, n, k)),
        Method::Recursion => dt_by_derivative_recursion(tt, k),
        Method::Homogeneous => exact_dt_homogeneous(tt, k),
        Method::Auto => {
            if k > n {
                Ok(ExactProb::zero())
            } else {
                Ok(dt_from_add(&exact_add_auto(tt, k)?, n, k))
            }
        }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Tuples => "tuples",
        Method::Subspaces => "subspaces",
        Method::Recursion => "recursion",
        Method::Homogeneous => "homogeneous",
        Method::Auto => "auto",
    }
}

fn cmd_exact(ctx: &Ctx, args: &ExactArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let f = args.function.load()?;
    let n = f.table.n();
    let k = args.k;
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()).into());
    }
    let dt = dt_by_method(&f.table, k, args.method)?;
    let mut used = vec![method_name(args.method)];
    if args.self_check {
        for m in [
            Method::Tuples,
            Method::Subspaces,
            Method::Recursion,
            Method::Homogeneous,
        ] {
            if m == args.method {
                continue;
            }
            match dt_by_method(&f.table, k, m) {
                Ok(other) if other == dt => used.push(method_name(m)),
                Ok(other) => {
                    return Err(Failure::MethodsDisagree(format!(
                        "{} gives {}, {} gives {}",
                        method_name(args.method),
                        dt.rational_string(),
                        method_name(m),
                        other.rational_string()
                    )))
                }
                Err(_) => {}
            }
        }
    }
    let mut r = Report::new();
    r.field("method", used.join(","));
    r.field("n", n);
    r.field("k", k);
    r.field("dt_k_rational", dt.rational_string());
    r.field("dt_k", dt.to_decimal(ctx.precision));
    match add_from_dt(&dt, n, k) {
        Ok(add) => {
            r.field("add_k_rational", add.rational_string());
            r.field("add_k", add.to_decimal(ctx.precision));
        }
        Err(_) => {
            r.field("add_k_rational", "undefined");
            r.field("add_k", "undefined");
        }
    }
    r.write(ctx.output, out)?;
    Ok(0)
}

fn cmd_test(ctx: &Ctx, args: &TestArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let f = args.function.load()?;
    let d = decide(&f.table, args.k, args.t, ctx.seed)?;
    let mut r = Report::new();
    let verdict = match d.verdict {
        Verdict::DegLessThanK => "DegLessThanK",
        Verdict::DegAtLeastK => "DegAtLeastK",
    };
    r.field("verdict", verdict);
    r.field("failures", format!("{}/{}", d.failures, d.runs_requested));
    r.field("runs_used", d.runs_used);
    r.field(
        "false_positive_bound",
        d.false_positive_bound.map_or_else(
            || "n/a".to_string(),
            |b| format!("{b:.*}", ctx.precision.min(17)),
        ),
    );
    r.field("seed", ctx.seed);
    r.write(ctx.output, out)?;
    Ok(match d.verdict {
        Verdict::DegLessThanK => 0,
        Verdict::DegAtLeastK => 1,
    })
}

fn cmd_estimate(ctx: &Ctx, args: &EstimateArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let f = args.function.load()?;
    let sampling = if args.independent {
        Sampling::IndependentOnly
    } else {
        Sampling::AllTuples
    };
    let e = estimate_dt(&f.table, args.k, args.trials, ctx.seed, sampling)?;
    let p = ctx.precision.min(17);
    let mut r = Report::new();
    r.field("target", if args.independent { "add_k" } else { "dt_k" });
    r.field("p_hat", format!("{:.*}", p, e.p_hat));
    r.field("stderr", format!("{:.*}", p, e.stderr));
    r.field("trials", e.trials);
    r.field("seed", e.seed);
    r.write(ctx.output, out)?;
    Ok(0)
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, Failure> {
    Ok(BufWriter::new(File::create(path)?))
}

fn cmd_sweep(ctx: &Ctx, args: &SweepArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let mut reps = load_source(&args.reps, args.n, Some(args.degree.unwrap_or(args.k)))?;
    if args.complement {
        reps = derive_complement_reps(&reps, args.n)?;
    }
    let rows = sweep(&reps, args.k, 0)?;
    match (&args.out, ctx.output) {
        (Some(path), _) => {
            let mut w = create(path)?;
            write_sweep_csv(&rows, ctx.precision, &mut w)?;
            w.flush()?;
        }
        (None, OutputFormat::Json) => write_sweep_json(&rows, ctx.precision, &mut *out)?,
        (None, _) => write_sweep_csv(&rows, ctx.precision, &mut *out)?,
    }
    if let Some(path) = &args.json {
        let mut w = create(path)?;
        write_sweep_json(&rows, ctx.precision, &mut w)?;
        w.flush()?;
    }
    if let Some(mode) = args.hist {
        if !rows.is_empty() {
            let h = histogram(
                &rows,
                &HistogramSpec {
                    mode: mode.0,
                    range: None,
                },
            )?;
            match &args.hist_out {
                Some(path) => {
                    let mut w = create(path)?;
                    h.write_csv(ctx.precision, &mut w)?;
                    w.flush()?;
                }
                None => {
                    if args.out.is_none() {
                        writeln!(out)?;
                    }
                    h.write_csv(ctx.precision, &mut *out)?;
                }
            }
            eprintln!("{} rows, {} histogram buckets", rows.len(), h.len());
        }
    }
    if args.check {
        let mismatches = check_expected(&rows, &reps);
        for m in &mismatches {
            eprintln!(
                "{}: {} expected {}, computed {}",
                m.id, m.column, m.expected, m.computed
            );
        }
        if !mismatches.is_empty() {
            let mut ids: Vec<String> = mismatches.iter().map(|m| m.id.clone()).collect();
            ids.dedup();
            return Err(Failure::CheckFailed(ids));
        }
        eprintln!("check passed: {} rows", rows.len());
    }
    Ok(0)
}

fn cmd_bounds(ctx: &Ctx, args: &BoundsArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let b = bounds(args.n, args.k)?;
    let mut r = Report::new();
    r.field("n", b.n);
    r.field("k", b.k);
    r.prob("lower", &b.lower, ctx.precision, ctx.exact);
    r.prob("upper", &b.upper, ctx.precision, ctx.exact);
    r.field("floor", pochhammer_floor(ctx.precision));
    r.write(ctx.output, out)?;
    Ok(0)
}

fn parse_prob(s: &str) -> Result<ExactProb, Error> {
    ExactProb::parse_rational(s.trim())
        .or_else(|| ExactProb::parse_decimal(s.trim()))
        .ok_or_else(|| Error::Parse {
            location: "--range".into(),
            message: format!("bad number {s:?}"),
        })
}

fn cmd_hist(ctx: &Ctx, args: &HistArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let values = read_sweep_dt(File::open(&args.input)?)?;
    let range = match &args.range {
        None => None,
        Some(text) => {
            let (lo, hi) = text.split_once(',').ok_or_else(|| Error::Parse {
                location: "--range".into(),
                message: "expected min,max".into(),
            })?;
            Some((parse_prob(lo)?, parse_prob(hi)?))
        }
    };
    let h = histogram_values(
        &values,
        &HistogramSpec {
            mode: args.mode.0,
            range,
        },
    )?;
    h.write_csv(ctx.precision, &mut *out)?;
    Ok(0)
}

fn cmd_reps(ctx: &Ctx, args: &RepsArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let mut reps = load_source(&args.source, args.n, args.degree)?;
    if args.complement {
        reps = derive_complement_reps(&reps, args.n)?;
    }
    match ctx.output {
        OutputFormat::Plain => {
            for e in &reps {
                writeln!(out, "{}: {}", e.id, e.anf_text)?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "id",
                "n",
                "degree",
                "monomials",
                "anf",
                "expected_add",
                "expected_dt",
            ])
            .map_err(io::Error::from)?;
            for e in &reps {
                w.write_record([
                    e.id.clone(),
                    e.n.to_string(),
                    e.degree.to_string(),
                    e.monomial_count().to_string(),
                    e.anf_text.clone(),
                    e.expected_add.clone().unwrap_or_default(),
                    e.expected_dt.clone().unwrap_or_default(),
                ])
                .map_err(io::Error::from)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let list: Vec<serde_json::Value> = reps
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "id": e.id,
                        "n": e.n,
                        "degree": e.degree,
                        "monomials": e.monomial_count(),
                        "anf": e.anf_text,
                        "expected_add": e.expected_add,
                        "expected_dt": e.expected_dt,
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &list).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(0)
}
