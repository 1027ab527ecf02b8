//! Command-line driver: decompose generating functions, enumerate chambers,
//! evaluate counting functions, verify against the brute-force oracle, and
//! report periods.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input parse error,
//! 3 invalid or unsupported root-system selector, 4 point outside the span.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use sha2::{Digest, Sha256};

use vpf_core::arith::Rational;
use vpf_core::error::Error;
use vpf_core::evaluate::{
    chamber_formula, verify_chamber, vpf_bruteforce, ChamberFormula,
};
use vpf_core::genfunc::{series_truncate, FractionSum};
use vpf_core::geometry::chambers;
use vpf_core::jsonio;
use vpf_core::latex;
use vpf_core::laurent::IntVector;
use vpf_core::pfd::{decompose_with, DecomposeOptions, PfdResult, Strategy};
use vpf_core::quasi::QuasiPolynomial;
use vpf_core::rootsys::{kostant_input, positive_roots, vectors_input, ClassicalLabel, Label};

#[derive(Parser)]
#[command(name = "vpf", about = "Exact vector partition functions", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partial fraction decomposition of the generating function
    Decompose(DecomposeArgs),
    /// Print the generating-function product of a root system
    Kostant(KostantArgs),
    /// Chamber complex of the input vectors (JSON)
    Chambers(InputArgs),
    /// Count the representations of a lattice point
    Evaluate(EvaluateArgs),
    /// Possible period of the Kostant counting function
    Period(PeriodArgs),
    /// Checksum, series, and oracle verification sweep
    Verify(VerifyArgs),
}

#[derive(Args)]
struct InputArgs {
    /// File with one space-separated integer row per line, or a JSON array of
    /// integer arrays
    #[arg(long, conflicts_with = "type_")]
    vectors: Option<PathBuf>,
    /// Root-system family (A, B, C, D, E, F, G)
    #[arg(long = "type", value_name = "LABEL")]
    type_: Option<String>,
    /// Root-system rank
    #[arg(long, requires = "type_")]
    rank: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    /// Smallest absolute gaining coefficient over all circuits
    MinAbs,
    /// Greedy independent-prefix scan
    NonBrokenCircuit,
    /// Classical root-system reduction (types A-D)
    Classical,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "min-abs")]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "latex")]
    format: Format,
}

#[derive(Args)]
struct KostantArgs {
    #[arg(long = "type", value_name = "LABEL")]
    type_: String,
    #[arg(long)]
    rank: usize,
    #[arg(long, value_enum, default_value = "latex")]
    format: Format,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Comma-separated integer coordinates
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long, value_enum, default_value = "formula")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "min-abs")]
    strategy: StrategyArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Oracle,
    Formula,
}

#[derive(Args)]
struct PeriodArgs {
    #[arg(long = "type", value_name = "LABEL")]
    type_: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Box side for series and oracle sweeps
    #[arg(long = "box", default_value_t = 8)]
    box_side: i64,
    /// Reference decomposition file (LaTeX fraction lines) to check against
    #[arg(long)]
    golden: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "min-abs")]
    strategy: StrategyArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads: usize = std::env::var("VPF_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1);
    let run = || -> Result<ExitCode, AppError> {
        match cli.command {
            Command::Decompose(args) => cmd_decompose(args, threads),
            Command::Kostant(args) => cmd_kostant(args),
            Command::Chambers(args) => cmd_chambers(args),
            Command::Evaluate(args) => cmd_evaluate(args, threads),
            Command::Period(args) => cmd_period(args),
            Command::Verify(args) => cmd_verify(args),
        }
    };
    if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(run).unwrap_or_else(AppError::exit)
    } else {
        run().unwrap_or_else(AppError::exit)
    }
}

/// Error carrying the documented exit code.
struct AppError {
    code: u8,
    message: String,
}

impl AppError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        AppError {
            code,
            message: message.into(),
        }
    }

    fn exit(self) -> ExitCode {
        eprintln!("error: {}", self.message);
        ExitCode::from(self.code)
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) => 2,
            Error::InvalidRank(_) => 3,
            _ => 1,
        };
        AppError::new(code, e.to_string())
    }
}

// ---------------------------------------------------------------------------
// input handling

struct LoadedInput {
    vectors: Vec<IntVector>,
    /// file the vectors came from, when applicable (enables caching)
    source: Option<PathBuf>,
    classical: Option<ClassicalLabel>,
}

fn parse_label(s: &str) -> Result<Label, AppError> {
    Label::parse(s).ok_or_else(|| AppError::new(3, format!("unknown root-system label `{s}`")))
}

fn load_input(args: &InputArgs) -> Result<LoadedInput, AppError> {
    match (&args.vectors, &args.type_) {
        (Some(path), None) => {
            let vectors = read_vector_file(path)?;
            Ok(LoadedInput {
                vectors,
                source: Some(path.clone()),
                classical: None,
            })
        }
        (None, Some(label)) => {
            let label = parse_label(label)?;
            let rank = args
                .rank
                .ok_or_else(|| AppError::new(3, "--rank is required with --type"))?;
            let rs = positive_roots(label, rank)
                .map_err(|e| AppError::new(3, e.to_string()))?;
            let classical = matches!(label, Label::A | Label::B | Label::C | Label::D)
                .then(|| ClassicalLabel::new(label, rank));
            Ok(LoadedInput {
                vectors: rs.positive_roots,
                source: None,
                classical,
            })
        }
        _ => Err(AppError::new(
            2,
            "exactly one of --vectors or --type/--rank must be given",
        )),
    }
}

/// Rows of nonzero, nonnegative integer vectors of one common dimension.
fn read_vector_file(path: &Path) -> Result<Vec<IntVector>, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::new(2, format!("cannot read {}: {e}", path.display())))?;
    let trimmed = text.trim_start();
    let rows: Vec<Vec<BigInt>> = if trimmed.starts_with('[') {
        let v: serde_json::Value = serde_json::from_str(trimmed)
            .map_err(|e| AppError::new(2, format!("bad JSON vector file: {e}")))?;
        let arr = v
            .as_array()
            .ok_or_else(|| AppError::new(2, "expected a JSON array of arrays"))?;
        arr.iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| AppError::new(2, "expected a JSON array of arrays"))?
                    .iter()
                    .map(|c| {
                        c.as_i64()
                            .map(BigInt::from)
                            .ok_or_else(|| AppError::new(2, "vector entries must be integers"))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?
    } else {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| {
                        tok.parse::<BigInt>()
                            .map_err(|_| AppError::new(2, format!("bad integer `{tok}`")))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?
    };
    if rows.is_empty() {
        return Err(AppError::new(2, "vector file is empty"));
    }
    let dim = rows[0].len();
    let mut vectors = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != dim {
            return Err(AppError::new(2, "rows have inconsistent dimensions"));
        }
        let v = IntVector::new(row);
        if v.is_zero() {
            return Err(AppError::new(2, "vectors must be nonzero"));
        }
        if !v.is_nonnegative() {
            return Err(AppError::new(2, "vectors must have nonnegative coordinates"));
        }
        vectors.push(v);
    }
    Ok(vectors)
}

fn parse_point(s: &str, dim: usize) -> Result<IntVector, AppError> {
    let coords: Vec<BigInt> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| AppError::new(2, format!("bad point coordinate `{t}`")))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != dim {
        return Err(AppError::new(
            2,
            format!("point has {} coordinates, expected {dim}", coords.len()),
        ));
    }
    Ok(IntVector::new(coords))
}

fn strategy_of(arg: StrategyArg, classical: &Option<ClassicalLabel>) -> Result<Strategy, AppError> {
    Ok(match arg {
        StrategyArg::MinAbs => Strategy::MinAbsCoefficient,
        StrategyArg::NonBrokenCircuit => Strategy::NonBrokenCircuit,
        StrategyArg::Classical => {
            let c = classical.clone().ok_or_else(|| {
                AppError::new(3, "--strategy classical needs a classical --type A|B|C|D")
            })?;
            Strategy::ClassicalOrder(c)
        }
    })
}

fn run_decompose(
    vectors: &[IntVector],
    strategy: &Strategy,
    threads: usize,
    checksum: bool,
) -> Result<PfdResult, AppError> {
    let input = vectors_input(vectors);
    let opts = DecomposeOptions {
        parallel: threads > 1,
        checksum_point: checksum.then(|| default_checksum_point(&input)),
        ..Default::default()
    };
    Ok(decompose_with(&input, strategy, &opts)?)
}

/// A small pole-free rational point for value checksums.
fn default_checksum_point(input: &FractionSum) -> Vec<Rational> {
    checksum_points(input, 1).remove(0)
}

/// Deterministic scan over small fractions, keeping pole-free points.
fn checksum_points(input: &FractionSum, count: usize) -> Vec<Vec<Rational>> {
    let dim = input.dim();
    let mut out = Vec::new();
    let mut k = 2i64;
    while out.len() < count {
        let pt: Vec<Rational> = (0..dim)
            .map(|j| Rational::new(BigInt::from(1), BigInt::from(k + j as i64 + 1)))
            .collect();
        if input.substitute(&pt).is_ok() {
            out.push(pt);
        }
        k += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// commands

fn cmd_decompose(args: DecomposeArgs, threads: usize) -> Result<ExitCode, AppError> {
    let input = load_input(&args.input)?;
    let strategy = strategy_of(args.strategy, &input.classical)?;
    let pfd = run_decompose(&input.vectors, &strategy, threads, false)?;
    match args.format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&jsonio::pfd_to_json(&pfd)).unwrap())
        }
        Format::Latex => {
            let product = vectors_input(&input.vectors);
            print!("{}", latex::render_fraction_sum(&product));
            println!("=");
            print!("{}", latex::render_fraction_sum(&pfd.fractions));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kostant(args: KostantArgs) -> Result<ExitCode, AppError> {
    let label = parse_label(&args.type_)?;
    let product =
        kostant_input(label, args.rank).map_err(|e| AppError::new(3, e.to_string()))?;
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&jsonio::fraction_sum_to_json(&product)).unwrap()
        ),
        Format::Latex => print!("{}", latex::render_fraction_sum(&product)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_chambers(args: InputArgs) -> Result<ExitCode, AppError> {
    let input = load_input(&args)?;
    let cc = chambers(&input.vectors)?;
    let doc = serde_json::json!({
        "vectors": input.vectors.iter().map(jsonio::vector_to_json).collect::<Vec<_>>(),
        "chambers": cc.chambers.iter().map(jsonio::cone_to_json).collect::<Vec<_>>(),
    });
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    Ok(ExitCode::SUCCESS)
}

fn cmd_evaluate(args: EvaluateArgs, threads: usize) -> Result<ExitCode, AppError> {
    let input = load_input(&args.input)?;
    let dim = input.vectors[0].dim();
    let point = parse_point(&args.point, dim)?;
    match args.mode {
        Mode::Oracle => {
            if !point.is_nonnegative() {
                return Err(AppError::new(4, "point outside the nonnegative span"));
            }
            println!("{}", vpf_bruteforce(&input.vectors, &point));
        }
        Mode::Formula => {
            let strategy = strategy_of(args.strategy, &input.classical)?;
            let formulas = cached_formulas(&input, &strategy, threads)?;
            let rat_point: Vec<Rational> = point
                .coords()
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect();
            let holder = formulas
                .iter()
                .find(|cf| cf.chamber.contains(&rat_point).unwrap_or(false));
            let Some(cf) = holder else {
                return Err(AppError::new(4, "point outside the span of the vectors"));
            };
            let value = cf.formula.eval(&point);
            assert!(value.is_integer() && !value.is_negative());
            println!("{}", value.numer());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_period(args: PeriodArgs) -> Result<ExitCode, AppError> {
    let label = parse_label(&args.type_)?;
    if matches!(label, Label::E | Label::F) {
        return Err(AppError::new(
            3,
            format!("type {} is beyond desk scale for periods", label.as_str()),
        ));
    }
    let rs = positive_roots(label, args.rank).map_err(|e| AppError::new(3, e.to_string()))?;
    let pfd = run_decompose(&rs.positive_roots, &Strategy::MinAbsCoefficient, 1, false)?;
    let cc = chambers(&rs.positive_roots)?;
    let mut period = BigInt::from(1);
    for ch in &cc.chambers {
        let cf = chamber_formula(&pfd, ch)?;
        period = num_integer::lcm(period, cf.formula.possible_period());
    }
    println!("{period}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, AppError> {
    let input = load_input(&args.input)?;
    let dim = input.vectors[0].dim();
    let strategy = strategy_of(args.strategy, &input.classical)?;
    let product = vectors_input(&input.vectors);
    let mut failures = 0usize;

    // reference decomposition, when given: series equality against the product
    if let Some(golden) = &args.golden {
        let text = std::fs::read_to_string(golden)
            .map_err(|e| AppError::new(2, format!("cannot read golden file: {e}")))?;
        let sum = latex::parse_fraction_sum(&text, dim)?;
        let series_box = vec![BigInt::from(args.box_side.min(8)); dim];
        let lo = vec![BigInt::zero(); dim];
        let ok = series_truncate(&sum, &lo, &series_box)?
            == series_truncate(&product, &lo, &series_box)?;
        report_line("golden-series", ok, &mut failures);
    }

    // decomposition value checksum at pole-free points
    let pfd = run_decompose(&input.vectors, &strategy, 1, false)?;
    let mut checks_ok = true;
    for pt in checksum_points(&product, 3) {
        if product.substitute(&pt)? != pfd.fractions.substitute(&pt)? {
            checks_ok = false;
        }
    }
    report_line("checksum", checks_ok, &mut failures);

    // series equivalence on the default box
    let hi = vec![BigInt::from(if dim <= 2 { 8 } else { 5 }); dim];
    let lo = vec![BigInt::zero(); dim];
    let series_ok =
        series_truncate(&product, &lo, &hi)? == series_truncate(&pfd.fractions, &lo, &hi)?;
    report_line("series", series_ok, &mut failures);

    // oracle sweep over every chamber
    let cc = chambers(&input.vectors)?;
    for (i, ch) in cc.chambers.iter().enumerate() {
        let cf = chamber_formula(&pfd, ch)?;
        let report = verify_chamber(&cf, &input.vectors, args.box_side, i);
        let doc = serde_json::json!({
            "chamber_id": report.chamber_id,
            "points_tested": report.points_tested,
            "mismatches": report.mismatches.iter().map(|(g, expect, got)| {
                serde_json::json!({
                    "point": jsonio::vector_to_json(g),
                    "oracle": expect.to_string(),
                    "formula": jsonio::rational_to_json(got),
                })
            }).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string(&doc).unwrap());
        if !report.passed() {
            failures += 1;
        }
    }

    if failures == 0 {
        println!("verify: all checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verify: {failures} check(s) failed");
        Ok(ExitCode::from(1))
    }
}

fn report_line(name: &str, ok: bool, failures: &mut usize) {
    println!("{name}: {}", if ok { "ok" } else { "FAILED" });
    if !ok {
        *failures += 1;
    }
}

// ---------------------------------------------------------------------------
// chamber formula cache

fn cached_formulas(
    input: &LoadedInput,
    strategy: &Strategy,
    threads: usize,
) -> Result<Vec<ChamberFormula>, AppError> {
    let cache_path = input.source.as_ref().map(|p| {
        let mut name = p.as_os_str().to_owned();
        name.push(".vpf-cache.json");
        PathBuf::from(name)
    });
    let key = cache_key(&input.vectors, strategy);
    if let Some(path) = &cache_path {
        if let Some(formulas) = try_load_cache(path, &key, input.vectors[0].dim()) {
            return Ok(formulas);
        }
    }
    let pfd = run_decompose(&input.vectors, strategy, threads, false)?;
    let cc = chambers(&input.vectors)?;
    let formulas: Vec<ChamberFormula> = cc
        .chambers
        .iter()
        .map(|ch| chamber_formula(&pfd, ch))
        .collect::<Result<_, _>>()?;
    if let Some(path) = &cache_path {
        let doc = serde_json::json!({
            "key": key,
            "chambers": formulas.iter().map(|cf| serde_json::json!({
                "cone": jsonio::cone_to_json(&cf.chamber),
                "formula": jsonio::quasipoly_to_json(&cf.formula),
            })).collect::<Vec<_>>(),
        });
        // cache write failures are not fatal
        let _ = std::fs::write(path, serde_json::to_string(&doc).unwrap());
    }
    Ok(formulas)
}

fn cache_key(vectors: &[IntVector], strategy: &Strategy) -> String {
    let mut hasher = Sha256::new();
    for v in vectors {
        for c in v.coords() {
            hasher.update(c.to_string().as_bytes());
            hasher.update(b",");
        }
        hasher.update(b";");
    }
    hasher.update(format!("{strategy:?}").as_bytes());
    format!("{:x}", hasher.finalize())
}

fn try_load_cache(path: &Path, key: &str, dim: usize) -> Option<Vec<ChamberFormula>> {
    let text = std::fs::read_to_string(path).ok()?;
    let doc: serde_json::Value = serde_json::from_str(&text).ok()?;
    if doc["key"].as_str() != Some(key) {
        return None;
    }
    let mut out = Vec::new();
    for entry in doc["chambers"].as_array()? {
        let cone = jsonio::cone_from_json(&entry["cone"], dim).ok()?;
        let formula: QuasiPolynomial = jsonio::quasipoly_from_json(&entry["formula"]).ok()?;
        out.push(ChamberFormula {
            chamber: cone,
            formula,
        });
    }
    Some(out)
}
