//! The `pmod` command-line front end.
//!
//! Exit codes: 0 success, 2 usage, 3 input parse, 4 solver failure,
//! 5 validation failure.

pub mod bench;
pub mod input;
pub mod validate;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::embedding::{embeddability, square_eigencurve, square_p_threshold, DEFAULT_RANK_TOL};
use crate::error::Error;
use crate::exponent::{format_real, Exponent};
use crate::graph::Graph;
use crate::metrics::{
    default_p_grid, distance_matrix, er_experiment, DistanceMatrix, ExperimentConfig,
};
use crate::modulus::{modulus, Method, SolverConfig};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_SOLVE: i32 = 4;
pub const EXIT_VALIDATION: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "pmod", version, about = "p-modulus and d_p metrics on graphs")]
pub struct Cli {
    /// Worker threads for pairwise and per-graph work.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// d_p between two nodes, with the modulus bracket.
    Dist(DistArgs),
    /// All pairwise d_p.
    Matrix(MatrixArgs),
    /// Antisnowflaking exponents on random graphs.
    Experiment(ExperimentArgs),
    /// Isometric embeddability of d_p (or a distance matrix) into R^n.
    Embed(EmbedArgs),
    /// Eigenvalues of the square's Schoenberg matrix and the p threshold.
    Square(SquareArgs),
    /// Closed-form checks of the solvers.
    Validate(ValidateArgs),
    /// Corner-to-corner timings on square grids.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Relative width of the certified modulus bracket.
    #[arg(long = "tol", default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_iterations: usize,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig, Error> {
        let cfg = SolverConfig {
            max_iterations: self.max_iterations,
            ..SolverConfig::with_tolerance(self.tolerance)
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// Graph file (edge list or JSON) or generator spec such as `gen:cycle:4`.
    pub graph: String,
    pub a: String,
    pub b: String,
    /// Exponent: a real >= 1 or `inf`.
    #[arg(long, default_value = "2")]
    pub p: Exponent,
    /// auto, potential (alias opt) or greedy.
    #[arg(long, default_value = "auto")]
    pub method: Method,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    pub graph: String,
    #[arg(long, default_value = "2")]
    pub p: Exponent,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, default_value_t = 50)]
    pub graphs: usize,
    #[arg(long, default_value_t = 10)]
    pub nodes: usize,
    /// Expected average degree.
    #[arg(long, default_value_t = 6.0)]
    pub degree: f64,
    /// Comma list of exponents or LO:HI:COUNT; defaults to 15 points on [1.2, 5].
    #[arg(long)]
    pub p_grid: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Graph file or generator spec; with --matrix, a distance matrix CSV.
    pub input: String,
    /// Read INPUT as a labelled distance matrix instead of a graph.
    #[arg(long)]
    pub matrix: bool,
    #[arg(long, default_value = "2")]
    pub p: Exponent,
    /// Target dimension n.
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Label of the base point; the first node when absent.
    #[arg(long)]
    pub base: Option<String>,
    /// Relative eigenvalue tolerance for the PSD and rank verdicts.
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    pub rank_tol: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// text: verdict summary; json: full report; csv: coordinates.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SquareArgs {
    /// Diagonal lengths: comma list or LO:HI:COUNT within (0, 2].
    #[arg(long, default_value = "0.05:2:40")]
    pub betas: String,
    /// Absolute tolerance of the threshold bisection.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Case groups to run: parallel, cycle, complete, path. Repeatable or comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Largest accepted relative error.
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Grid sizes: A..B (step 3), A..B:STEP or a comma list.
    #[arg(long, default_value = "3..33")]
    pub sizes: String,
    /// Comma list of exponents.
    #[arg(long, default_value = "1,1.5,2,2.5,inf")]
    pub p: String,
    /// Solvers for 1 < p < inf: lap (p = 2 only), opt, greedy.
    #[arg(long, value_delimiter = ',', default_value = "lap,opt")]
    pub methods: Vec<bench::BenchMethod>,
    #[arg(long, default_value_t = 20)]
    pub reps: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::SelfLoop { .. }
            | Error::DuplicateEdge { .. }
            | Error::Syntax { .. }
            | Error::Disconnected { .. }
            | Error::EmptyGraph
            | Error::Json(_)
            | Error::Io(_)
            | Error::Csv(_) => EXIT_PARSE,
            Error::InvalidNode { .. }
            | Error::UnknownLabel(_)
            | Error::SameEndpoints
            | Error::InvalidExponent(_)
            | Error::InvalidArgument(_) => EXIT_USAGE,
            _ => EXIT_SOLVE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError {
            code: EXIT_SOLVE,
            message: format!("cannot write output: {e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first), runs the command, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    if cli.jobs == 0 {
        return Err(CliError {
            code: EXIT_USAGE,
            message: "--jobs must be at least 1".into(),
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError {
            code: EXIT_USAGE,
            message: format!("cannot start worker pool: {e}"),
        })?;
    pool.install(|| match cli.command {
        Command::Dist(args) => cmd_dist(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Embed(args) => cmd_embed(args),
        Command::Square(args) => cmd_square(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Bench(args) => cmd_bench(args),
    })
}

fn open_output(out: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            CliError {
                code: EXIT_USAGE,
                message: format!("cannot create {}: {e}", path.display()),
            }
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn metadata(command: &str, fields: &[(&str, String)]) -> String {
    let mut line = format!("pmod {} {command}", env!("CARGO_PKG_VERSION"));
    for (k, v) in fields {
        line.push_str(&format!(" {k}={v}"));
    }
    line
}

fn node(g: &Graph, label: &str) -> CliResult<usize> {
    Ok(g.node_by_label(label)?)
}

fn cmd_dist(args: DistArgs) -> CliResult<()> {
    let g = input::load_graph(&args.graph)?;
    let cfg = args.solver.config()?;
    let (a, b) = (node(&g, &args.a)?, node(&g, &args.b)?);
    let r = modulus(&g, a, b, args.p, &cfg, args.method)?;
    let d = r.distance();
    let mut out = io::stdout().lock();
    match args.format {
        Format::Json => {
            let mut v = serde_json::to_value(&r).expect("results serialize");
            v["distance"] = serde_json::json!(d);
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        _ => {
            writeln!(out, "d_{}({}, {}) = {:.6}", args.p, args.a, args.b, d)?;
            writeln!(
                out,
                "modulus {} in [{}, {}] (relative gap {:.1e})",
                format_real(r.value),
                format_real(r.lower_bound),
                format_real(r.upper_bound),
                r.relative_gap()
            )?;
            writeln!(
                out,
                "solved by {:?}, {} iterations, {} active paths, converged {}",
                r.solved_by, r.iterations, r.active_paths, r.converged
            )?;
        }
    }
    Ok(())
}

fn cmd_matrix(args: MatrixArgs) -> CliResult<()> {
    let g = input::load_graph(&args.graph)?;
    let cfg = args.solver.config()?;
    let m = distance_matrix(&g, args.p, &cfg)?;
    let mut out = open_output(&args.output.out)?;
    match args.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&m.to_json()).expect("json")
        )?,
        _ => {
            let meta = metadata(
                "matrix",
                &[
                    ("p", args.p.to_string()),
                    ("tolerance", format_real(cfg.tolerance)),
                ],
            );
            m.write_csv(&mut out, &[meta])?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> CliResult<()> {
    let cfg = args.solver.config()?;
    let p_grid = match &args.p_grid {
        Some(text) => input::parse_p_grid(text)?,
        None => default_p_grid(),
    };
    let exp = ExperimentConfig {
        graphs: args.graphs,
        nodes: args.nodes,
        expected_degree: args.degree,
        p_grid,
        seed: args.seed,
    };
    let estimate = er_experiment(&exp, &cfg)?;
    let mut out = open_output(&args.output.out)?;
    match args.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&estimate).expect("json")
        )?,
        _ => estimate.write_csv(&mut out)?,
    }
    out.flush()?;
    let margin = estimate.margin();
    let verdict = if margin >= -cfg.tolerance {
        "no counterexample"
    } else {
        "counterexample found"
    };
    eprintln!(
        "min over grid of t(p) - p/(p-1) = {}: {verdict}",
        format_real(margin)
    );
    Ok(())
}

fn cmd_embed(args: EmbedArgs) -> CliResult<()> {
    let m = if args.matrix {
        DistanceMatrix::read_csv(File::open(&args.input).map_err(Error::from)?)?
    } else {
        let g = input::load_graph(&args.input)?;
        distance_matrix(&g, args.p, &args.solver.config()?)?
    };
    let base = match &args.base {
        None => 0,
        Some(label) => m
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.clone()))?,
    };
    let report = embeddability(&m, args.dim, base, args.rank_tol)?;
    let mut out = open_output(&args.output.out)?;
    match args.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("json")
        )?,
        Format::Csv => {
            let meta = metadata(
                "embed",
                &[
                    ("p", m.p.map_or("none".into(), |p| p.to_string())),
                    ("base", m.labels()[base].clone()),
                ],
            );
            report.write_coordinates_csv(&mut out, &[meta])?;
        }
        Format::Text => {
            writeln!(out, "embeddable in R^{}: {}", args.dim, report.embeddable)?;
            writeln!(out, "psd: {}", report.psd)?;
            writeln!(
                out,
                "rank: {} (interval {}..={})",
                report.rank, report.rank_interval.0, report.rank_interval.1
            )?;
            let eig: Vec<String> = report
                .eigenvalues
                .iter()
                .map(|x| format!("{x:.6e}"))
                .collect();
            writeln!(out, "eigenvalues: {}", eig.join(" "))?;
            if let Some(err) = report.roundtrip_error {
                writeln!(out, "coordinate round-trip error: {err:.1e}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_square(args: SquareArgs) -> CliResult<()> {
    let betas = input::parse_reals(&args.betas)?;
    let curve = square_eigencurve(&betas)?;
    let p0 = square_p_threshold(args.tol)?;
    let mut out = open_output(&args.output.out)?;
    curve.write_csv(&mut out, &[metadata("square", &[("p0", format!("{p0}"))])])?;
    out.flush()?;
    match curve.crossing {
        Some((lo, hi)) => {
            eprintln!("smallest eigenvalue turns negative between beta={lo} and beta={hi}")
        }
        None => eprintln!("smallest eigenvalue does not change sign on the grid"),
    }
    eprintln!("p0 = {p0:.6}");
    Ok(())
}

fn cmd_validate(args: ValidateArgs) -> CliResult<()> {
    if let Some(bad) = args
        .only
        .iter()
        .find(|g| !validate::GROUPS.contains(&g.as_str()))
    {
        return Err(CliError {
            code: EXIT_USAGE,
            message: format!(
                "unknown group `{bad}` (expected one of {})",
                validate::GROUPS.join(", ")
            ),
        });
    }
    if !(args.tol > 0.0) {
        return Err(CliError {
            code: EXIT_USAGE,
            message: "--tol must be positive".into(),
        });
    }
    let results = validate::run(&args.only, args.tol, &SolverConfig::default())?;
    let mut out = io::stdout().lock();
    match args.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&results).expect("json")
        )?,
        _ => write!(out, "{}", validate::render(&results, args.tol))?,
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(CliError {
            code: EXIT_VALIDATION,
            message: format!(
                "{failed} of {} cases exceed tolerance {:e}",
                results.len(),
                args.tol
            ),
        });
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> CliResult<()> {
    let sizes = input::parse_sizes(&args.sizes)?;
    let ps = input::parse_exponents(&args.p)?;
    let cfg = args.solver.config()?;
    let series = bench::series(&ps, &args.methods);
    let rows = bench::run(&sizes, &series, args.reps, &cfg)?;
    let meta = metadata(
        "bench",
        &[
            ("reps", args.reps.to_string()),
            ("tolerance", format_real(cfg.tolerance)),
            ("unit", "seconds".into()),
        ],
    );
    let mut out = open_output(&args.output.out)?;
    bench::write_csv(&mut out, &meta, &series, &rows)?;
    out.flush()?;
    Ok(())
}
