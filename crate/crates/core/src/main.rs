use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use altergraph::experiments::{load_graph_file, reproduce, ExperimentSpec, Figure};
use altergraph::gain::{node_table, Aggregator};
use altergraph::generators::{GeneratorConfig, Model};
use altergraph::netstats::summary_with;
use altergraph::report::{gain_table, stats_row, trials_table, Schema, Table};
use altergraph::survey::{run_graph_trials, FractionPolicy};
use altergraph::{write_edge_list, Error, Execution, Result};

/// Alter sampling analysis: gains, estimators, and synthetic networks.
#[derive(Parser, Debug)]
#[command(name = "altergraph", version)]
struct Cli {
    /// Master random seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "ALTERGRAPH_THREADS")]
    threads: Option<usize>,

    /// Output file, or output directory for `reproduce`. Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Edge-list file(s): one whitespace-separated pair per line.
    #[arg(long = "input", required = true)]
    inputs: Vec<PathBuf>,

    /// Treat edges as directed (u follows v).
    #[arg(long)]
    directed: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summary statistics row per input graph.
    Stats(InputArgs),

    /// Per-node degree, percentile rank and gains of one graph.
    Gain(InputArgs),

    /// Generate a synthetic network as a canonical edge list.
    Generate {
        #[arg(long)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        b: usize,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0.0)]
        pt: f64,
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
    },

    /// Repeated surveys of one graph, comparing the estimate with the true gain.
    Estimate {
        #[command(flatten)]
        input: InputArgs,
        /// Respondent fraction; drawn uniformly from [0.1, 0.2] per trial when omitted.
        #[arg(long)]
        fraction: Option<f64>,
        #[arg(long, default_value_t = 1)]
        nominations: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },

    /// Reproduce a figure or table as CSV files plus a manifest in --out.
    Reproduce {
        #[arg(long)]
        figure: Figure,
        #[arg(long = "input")]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        directed: bool,
        /// Aggregators (comma separated); both by default.
        #[arg(long, value_delimiter = ',')]
        aggregator: Vec<Aggregator>,
        #[arg(long)]
        bins: Option<usize>,
        /// Histogram bin edges (comma separated, ascending).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        edges: Vec<f64>,
        /// Models for fig5 (comma separated); all four by default.
        #[arg(long, value_delimiter = ',')]
        models: Vec<Model>,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 1)]
        nominations: usize,
        #[arg(long)]
        fraction: Option<f64>,
    },
}

fn open_out(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(table: &Table, out: Option<&Path>) -> Result<()> {
    let mut w = open_out(out)?;
    table.write(&mut w)?;
    w.flush().map_err(|e| Error::Usage(format!("write failed: {e}")))
}

fn fraction_policy(fraction: Option<f64>) -> FractionPolicy {
    match fraction {
        Some(value) => FractionPolicy::Fixed { value },
        None => FractionPolicy::default(),
    }
}

fn run(cli: Cli) -> Result<()> {
    let exec = Execution::Parallel;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Stats(input) => {
            let mut table = Table::new(Schema::Stats);
            for path in &input.inputs {
                let g = load_graph_file(path, input.directed)?;
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                table.push(stats_row(&name, &summary_with(&g, exec)?));
            }
            emit(&table, out)
        }
        Command::Gain(input) => {
            let [path] = input.inputs.as_slice() else {
                return Err(Error::Usage("gain takes exactly one --input".into()));
            };
            let g = load_graph_file(path, input.directed)?;
            emit(&gain_table(&g, &node_table(&g, exec)?), out)
        }
        Command::Generate { model, n, b, p, m, pt, mu } => {
            let config = GeneratorConfig { model, n, b, p, m, p_t: pt, mu, seed: cli.seed };
            let g = config.generate()?;
            let mut w = open_out(out)?;
            write_edge_list(&g, &mut w)
                .and_then(|_| w.flush())
                .map_err(|e| Error::Usage(format!("write failed: {e}")))
        }
        Command::Estimate { input, fraction, nominations, trials } => {
            let [path] = input.inputs.as_slice() else {
                return Err(Error::Usage("estimate takes exactly one --input".into()));
            };
            let g = load_graph_file(path, input.directed)?;
            let rows = run_graph_trials(
                &g,
                trials,
                fraction_policy(fraction),
                nominations,
                cli.seed,
                exec,
            )?;
            emit(&trials_table(&rows), out)
        }
        Command::Reproduce {
            figure,
            inputs,
            directed,
            aggregator,
            bins,
            edges,
            models,
            sizes,
            trials,
            nominations,
            fraction,
        } => {
            let out_dir = out.ok_or_else(|| Error::Usage("reproduce needs --out <dir>".into()))?;
            let mut spec = ExperimentSpec::new(figure, out_dir);
            spec.inputs = inputs;
            spec.directed = spec.directed || directed;
            if !aggregator.is_empty() {
                spec.aggregators = aggregator;
            }
            if let Some(bins) = bins {
                spec.bins = bins;
            }
            if !edges.is_empty() {
                spec.histogram_edges = edges;
            }
            if !models.is_empty() {
                spec.models = models;
            }
            if !sizes.is_empty() {
                spec.sizes = sizes;
            }
            if let Some(trials) = trials {
                spec.trials = trials;
            }
            spec.nominations = nominations;
            spec.fraction = fraction_policy(fraction);
            spec.seed = cli.seed;
            for path in reproduce(&spec, exec)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
    }
}

#[cfg(feature = "parallel")]
fn with_threads(threads: Option<usize>, job: impl FnOnce() -> Result<()> + Send) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(job)
}

#[cfg(not(feature = "parallel"))]
fn with_threads(_threads: Option<usize>, job: impl FnOnce() -> Result<()> + Send) -> Result<()> {
    job()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.threads;
    match with_threads(threads, move || run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
