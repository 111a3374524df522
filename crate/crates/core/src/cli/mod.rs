//! The `mve` command line: instance files, `solve`, `verify`, `bench`,
//! `gen` and `reduce`.

mod bench;
pub mod format;
mod solve;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::generators::{
    gen_complete_reduction, gen_gap_reduction, gen_random, gen_split_reduction, gen_subdivision,
    gen_vc_reduction, Family, RandomSpec, TripartiteGraph,
};
use crate::instance::{Instance, Solution};

pub use bench::{bench, BenchRow};
pub use format::{emit_instance, parse_document, parse_instance, Document, ParseError, ParseErrorKind};
pub use solve::{solve, Algorithm, Answer, SolveOptions, SolveReport, Variant, Verdict};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PARSE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Malformed(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Solver(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse { .. } | CliError::Malformed(_) | CliError::Io { .. } => EXIT_PARSE,
            CliError::Solver(_) => EXIT_FAIL,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "mve", version, about = "Shortest path most vital edges solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance file, or a generated one when --family is given.
    Solve(SolveArgs),
    /// Check a solution JSON against an instance.
    Verify(VerifyArgs),
    /// Run algorithms over every file of a directory.
    Bench(BenchArgs),
    /// Write a random instance.
    Gen(GenArgs),
    /// Apply one of the hardness constructions.
    Reduce(ReduceArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Args, Debug, Clone)]
struct RandomArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 12)]
    m: usize,
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 2)]
    x: usize,
    #[arg(long, default_value_t = 3)]
    cliques: usize,
    #[arg(long, default_value_t = 3)]
    f: usize,
    #[arg(long)]
    max_length: Option<u64>,
}

impl RandomArgs {
    fn spec(&self, family: Family, seed: u64, k: Option<usize>, ell: Option<u64>) -> RandomSpec {
        RandomSpec {
            family,
            n: self.n,
            m: self.m,
            p: self.p,
            x: self.x,
            cliques: self.cliques,
            f: self.f,
            max_length: self.max_length,
            k,
            ell,
            seed,
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Instance file; omit together with --family to solve a generated one.
    input: Option<PathBuf>,
    #[arg(long, default_value = "auto")]
    alg: Algorithm,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long, default_value = "decision")]
    variant: Variant,
    #[arg(long, value_enum, default_value = "on")]
    kernelize: Switch,
    #[arg(long)]
    timeout_ms: Option<u64>,
    /// Constant of the parameterized approximation.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Leave out wall_ms so the output is reproducible.
    #[arg(long)]
    omit_timing: bool,
    #[arg(long, conflicts_with = "input")]
    family: Option<Family>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    random: RandomArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    instance: PathBuf,
    /// JSON with a 1-indexed "solution_edges" list, as printed by solve.
    solution: PathBuf,
    /// Budget; defaults to the solution's "k", then the instance file.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    ell: Option<u64>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    dir: PathBuf,
    /// Comma-separated algorithm list.
    #[arg(long, value_delimiter = ',', default_value = "searchtree")]
    algs: Vec<Algorithm>,
    #[arg(long, default_value = "decision")]
    variant: Variant,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long, value_enum, default_value = "on")]
    kernelize: Switch,
    #[arg(long)]
    timeout_ms: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long)]
    omit_timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    ell: Option<u64>,
    #[command(flatten)]
    random: RandomArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[command(subcommand)]
    kind: Reduction,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Reduction {
    /// Vertex cover on a tripartite graph ("p tri" file).
    Vc {
        input: PathBuf,
        #[arg(long)]
        h: usize,
    },
    /// Gap version of the vertex cover construction.
    Gap {
        input: PathBuf,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        x: u64,
    },
    /// Subdivide every edge.
    Subdivide { input: PathBuf },
    /// Split-graph construction.
    Split {
        input: PathBuf,
        #[arg(long)]
        multiplicity: Option<usize>,
    },
    /// Complete the graph with long edges.
    Complete { input: PathBuf },
}

/// Entry point of the `mve` binary.
pub fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Verify(a) => run_verify(a),
        Command::Bench(a) => run_bench(a),
        Command::Gen(a) => run_gen(a),
        Command::Reduce(a) => run_reduce(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_document(path: &Path) -> Result<Document, CliError> {
    parse_document(&read(path)?).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn timeout(ms: Option<u64>) -> Option<Duration> {
    ms.map(Duration::from_millis)
}

fn run_solve(a: SolveArgs) -> Result<u8, CliError> {
    let instance = match (&a.input, a.family) {
        (Some(path), _) => load_document(path)?.instance(a.k, a.ell)?,
        (None, Some(family)) => gen_random(&a.random.spec(family, a.seed, a.k, a.ell))?,
        (None, None) => return Err(CliError::Usage("give an instance file or --family".into())),
    };
    let options = SolveOptions {
        algorithm: a.alg,
        variant: a.variant,
        kernelize: a.kernelize == Switch::On,
        timeout: timeout(a.timeout_ms),
        c: a.c,
        record_timing: !a.omit_timing,
    };
    let report = solve(&instance, &options)?;
    let json = serde_json::to_string(&report).expect("report serializes");
    println!("{json}");
    Ok(EXIT_OK)
}

fn run_verify(a: VerifyArgs) -> Result<u8, CliError> {
    let doc = load_document(&a.instance)?;
    let text = read(&a.solution)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", a.solution.display())))?;
    let malformed = |what: &str| CliError::Malformed(format!("{}: {what}", a.solution.display()));
    let edges = value
        .get("solution_edges")
        .and_then(|v| v.as_array())
        .ok_or_else(|| malformed("missing \"solution_edges\" array"))?
        .iter()
        .map(|v| v.as_u64().map(|e| e as usize).ok_or_else(|| malformed("edge ids must be integers")))
        .collect::<Result<Vec<usize>, _>>()?;
    let k = a.k.or_else(|| value.get("k").and_then(|v| v.as_u64()).map(|k| k as usize));
    let ell = a.ell.or_else(|| value.get("ell").and_then(|v| v.as_u64()));
    let instance = doc.instance(k, ell)?;

    let m = instance.graph.edge_count();
    let verdict = match edges.iter().find(|&&e| e == 0 || e > m) {
        Some(&e) => Err(crate::Violation::EdgeNotInGraph(e)),
        None => {
            let deleted: Vec<usize> = edges.iter().map(|e| e - 1).collect();
            let mut sol = Solution::new(&instance.graph, instance.s, instance.t, deleted);
            if let Some(claimed) = value.get("distance_after").filter(|v| !v.is_null()) {
                sol.achieved_distance = serde_json::from_value(claimed.clone())
                    .map_err(|_| malformed("\"distance_after\" is not a distance"))?;
            }
            sol.verify(&instance)
        }
    };
    match verdict {
        Ok(()) => {
            println!("PASS");
            Ok(EXIT_OK)
        }
        Err(v) => {
            println!("FAIL {}: {v}", v.code());
            Ok(EXIT_FAIL)
        }
    }
}

fn run_bench(a: BenchArgs) -> Result<u8, CliError> {
    let options = SolveOptions {
        algorithm: Algorithm::Auto,
        variant: a.variant,
        kernelize: a.kernelize == Switch::On,
        timeout: timeout(a.timeout_ms),
        c: 1.0,
        record_timing: !a.omit_timing,
    };
    let rows = bench(&a.dir, &a.algs, &options, a.k, a.ell)?;
    let text = match a.format {
        TableFormat::Csv => bench::to_csv(&rows),
        TableFormat::Text => bench::to_text(&rows),
    };
    write_output(None, &text)?;
    Ok(EXIT_OK)
}

fn run_gen(a: GenArgs) -> Result<u8, CliError> {
    let instance = gen_random(&a.random.spec(a.family, a.seed, a.k, a.ell))?;
    let text = format!("# {} seed {}\n{}", a.family, a.seed, emit_instance(&instance));
    write_output(a.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn load_tripartite(path: &Path) -> Result<TripartiteGraph, CliError> {
    let text = read(path)?;
    format::parse_tripartite(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn run_reduce(a: ReduceArgs) -> Result<u8, CliError> {
    let load = |p: &Path| -> Result<Instance, CliError> { Ok(load_document(p)?.instance(None, None)?) };
    let text = match &a.kind {
        Reduction::Vc { input, h } => emit_instance(&gen_vc_reduction(&load_tripartite(input)?, *h)?),
        Reduction::Gap { input, h, x } => {
            let gap = gen_gap_reduction(&load_tripartite(input)?, *h, *x)?;
            format!(
                "# yes-threshold {}\n# no-threshold {}\n{}",
                gap.yes_threshold,
                gap.no_threshold,
                emit_instance(&gap.instance)
            )
        }
        Reduction::Subdivide { input } => emit_instance(&gen_subdivision(&load(input)?)?),
        Reduction::Split { input, multiplicity } => {
            emit_instance(&gen_split_reduction(&load(input)?, *multiplicity)?)
        }
        Reduction::Complete { input } => emit_instance(&gen_complete_reduction(&load(input)?)?),
    };
    write_output(a.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}
