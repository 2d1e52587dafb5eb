use std::fmt::Display;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use paircomp::graphs::enumerate_connected;
use paircomp::io::{
    graph_records, parse_pairs, parse_pcm_with_tol, rank_report, read_results, report,
    write_results, Figure, FormatError, Method, RankInput, RankReport, DEFAULT_RECIPROCITY_TOL,
};
use paircomp::simulation::run_with_progress;
use paircomp::{
    data_consistency, pcm_consistency, ConsistencyReport, ModelKind, SimulationConfig,
    DEFAULT_CONSISTENCY_TOL,
};

/// Paired-comparison evaluation and comparison-structure experiments.
#[derive(Parser)]
#[command(name = "paircomp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate weights from a pairs or PCM file.
    Rank(RankArgs),
    /// Check cycle consistency of a pairs or PCM file.
    Consistency(ConsistencyArgs),
    /// Catalog comparison structures.
    #[command(subcommand)]
    Graphs(GraphsCommand),
    /// Run the Monte-Carlo information-retrieval experiment.
    Simulate(SimulateArgs),
    /// Build plot-ready tables from simulation results.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pairs,
    Pcm,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Llsm,
    Em,
    Bt,
    Thurstone,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Llsm => Method::Llsm,
            MethodArg::Em => Method::Em,
            MethodArg::Bt => Method::Bt,
            MethodArg::Thurstone => Method::Thurstone,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Logistic,
    Normal,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    AveragesByEdges,
    BestByEdges,
    SpanningTrees,
    PerturbSweep,
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Format,
    /// Number of items for pairs files; defaults to the largest index.
    #[arg(long)]
    n: Option<usize>,
    /// Allowed |a_ij * a_ji - 1| in PCM files.
    #[arg(long, default_value_t = DEFAULT_RECIPROCITY_TOL)]
    reciprocity_tol: f64,
    /// Allowed |ln(product of ratios)| along a cycle.
    #[arg(long, default_value_t = DEFAULT_CONSISTENCY_TOL)]
    tol: f64,
    /// Print JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    method: MethodArg,
}

#[derive(Args)]
struct ConsistencyArgs {
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Subcommand)]
enum GraphsCommand {
    /// List connected graphs up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Keep only graphs with this many edges.
        #[arg(long)]
        edges: Option<usize>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    perturb: f64,
    #[arg(long, default_value_t = 10_000)]
    sims: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "logistic")]
    model: ModelArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suppress progress output.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// One results file per perturbation level.
    #[arg(long, num_args = 1.., required = true)]
    results: Vec<PathBuf>,
    #[arg(long, value_enum)]
    figure: FigureArg,
    /// Graph id for perturb-sweep; the star when omitted.
    #[arg(long)]
    graph: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Error with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }

    fn context(path: &Path, err: FormatError) -> Self {
        let code = match &err {
            FormatError::Model(e) => model_code(e),
            _ => 1,
        };
        Self::new(code, format!("{}: {err}", path.display()))
    }
}

/// Estimator precondition failures exit with 2.
fn model_code(err: &paircomp::Error) -> u8 {
    match err {
        paircomp::Error::DisconnectedGraph | paircomp::Error::FordViolation => 2,
        _ => 1,
    }
}

impl From<paircomp::Error> for Failure {
    fn from(err: paircomp::Error) -> Self {
        Self::new(model_code(&err), err)
    }
}

impl From<FormatError> for Failure {
    fn from(err: FormatError) -> Self {
        match err {
            FormatError::Model(e) => e.into(),
            other => Self::new(1, other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Self::new(1, err)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(err: serde_json::Error) -> Self {
        Self::new(1, err)
    }
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::new(1, format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(args: &InputArgs) -> Result<RankInput, Failure> {
    let reader = open(&args.input)?;
    let input = match args.format {
        Format::Pairs => parse_pairs(reader, args.n).map(RankInput::Pairs),
        Format::Pcm => parse_pcm_with_tol(reader, args.reciprocity_tol).map(RankInput::Pcm),
    };
    input.map_err(|e| Failure::context(&args.input, e))
}

/// Files number items from 1.
fn one_based(report: &mut ConsistencyReport) {
    if let Some(cycle) = &mut report.witness {
        cycle.iter_mut().for_each(|v| *v += 1);
    }
}

fn opt<T: Display>(v: Option<T>) -> String {
    v.map_or(String::new(), |v| v.to_string())
}

fn print_rank(r: &RankReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "# method: {}", r.method)?;
    if let Some(l) = r.lambda_max {
        writeln!(out, "# lambda_max: {l}")?;
    }
    if let Some(l) = r.loglik {
        writeln!(out, "# loglik: {l}")?;
    }
    writeln!(out, "# connected: {}", r.connected)?;
    if let Some(f) = r.ford_condition {
        writeln!(out, "# ford_condition: {f}")?;
    }
    match &r.consistency {
        Some(c) => writeln!(
            out,
            "# consistent: {} (max cycle deviation {})",
            c.consistent, c.max_cycle_deviation
        )?,
        None => writeln!(
            out,
            "# consistent: undefined (comparison graph is disconnected)"
        )?,
    }
    writeln!(out, "item,weight,m,rank")?;
    for i in 0..r.n {
        let m = r.m.as_ref().map(|m| m[i]);
        writeln!(out, "{},{},{},{}", i + 1, r.weights[i], opt(m), r.ranks[i])?;
    }
    Ok(())
}

fn rank(args: RankArgs) -> Result<(), Failure> {
    let input = load(&args.input)?;
    let mut r = rank_report(&input, args.method.into(), args.input.tol)
        .map_err(|e| Failure::context(&args.input.input, e))?;
    if let Some(c) = &mut r.consistency {
        one_based(c);
    }
    let mut out = output(None)?;
    if args.input.json {
        serde_json::to_writer_pretty(&mut out, &r)?;
        writeln!(out)?;
    } else {
        print_rank(&r, &mut out)?;
    }
    out.flush()?;
    Ok(())
}

fn consistency(args: ConsistencyArgs) -> Result<(), Failure> {
    let args = args.input;
    let mut verdict = match load(&args)? {
        RankInput::Pairs(d) => data_consistency(&d, args.tol),
        RankInput::Pcm(a) => pcm_consistency(&a, args.tol),
    }
    .map_err(|e| Failure::context(&args.input, e.into()))?;
    one_based(&mut verdict);
    let mut out = output(None)?;
    if args.json {
        serde_json::to_writer_pretty(&mut out, &verdict)?;
        writeln!(out)?;
    } else {
        let witness = verdict.witness.as_ref().map(|cycle| {
            cycle
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("-")
        });
        writeln!(out, "consistent,max_cycle_deviation,witness")?;
        writeln!(
            out,
            "{},{},{}",
            verdict.consistent,
            verdict.max_cycle_deviation,
            opt(witness)
        )?;
    }
    out.flush()?;
    Ok(())
}

fn graphs(cmd: GraphsCommand) -> Result<(), Failure> {
    let GraphsCommand::Enumerate { n, edges, out } = cmd;
    let classes: Vec<_> = enumerate_connected(n)?
        .into_iter()
        .filter(|c| edges.is_none_or(|e| c.edge_count == e))
        .collect();
    let records = graph_records(&classes)?;
    let mut out = output(out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &records)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn simulate(args: SimulateArgs) -> Result<(), Failure> {
    let model = match args.model {
        ModelArg::Logistic => ModelKind::Logistic,
        ModelArg::Normal => ModelKind::Normal,
    };
    let config =
        SimulationConfig::new(args.n, args.perturb, args.sims, args.seed).with_model(model);
    let quiet = args.quiet;
    let summary = run_with_progress(&config, |done, total| {
        if !quiet {
            eprint!("\rreplications {done}/{total}");
            if done == total {
                eprintln!();
            }
        }
    })?;
    if summary.excluded_replications > 0 {
        eprintln!(
            "warning: {} replications excluded (complete-data fit did not converge)",
            summary.excluded_replications
        );
    }
    let out = output(args.out.as_deref())?;
    write_results(out, &summary)?;
    Ok(())
}

fn report_cmd(args: ReportArgs) -> Result<(), Failure> {
    let figure = match args.figure {
        FigureArg::AveragesByEdges => Figure::AveragesByEdges,
        FigureArg::BestByEdges => Figure::BestByEdges,
        FigureArg::SpanningTrees => Figure::SpanningTrees,
        FigureArg::PerturbSweep => Figure::PerturbSweep,
    };
    let runs = args
        .results
        .iter()
        .map(|p| read_results(open(p)?).map_err(|e| Failure::context(p, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let table = report(&runs, figure, args.graph)?;
    table.write_csv(output(args.out.as_deref())?)?;
    Ok(())
}

fn init_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("PAIRCOMP_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure::new(
            1,
            format!("PAIRCOMP_THREADS must be a positive integer, got `{value}`"),
        )
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::new(1, e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match cli.command {
        Command::Rank(args) => rank(args),
        Command::Consistency(args) => consistency(args),
        Command::Graphs(cmd) => graphs(cmd),
        Command::Simulate(args) => simulate(args),
        Command::Report(args) => report_cmd(args),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
