//! Figure and table reproduction: resolves an [`ExperimentSpec`], computes
//! every output table in memory, then writes the CSVs and a JSON manifest.

use std::collections::BTreeSet;
use std::fmt;
use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gain::{
    exceedance_by_percentile, gain_histogram, gain_summary_with, influence_ranks,
    log_spaced_edges, mean_gain_by_percentile, Aggregator, DEFAULT_BINS,
};
use crate::generators::Model;
use crate::graph::{load_edge_list, Graph};
use crate::netstats::summary_with;
use crate::report::{
    configs_table, curve_table, histogram_table, stats_row, trials_table, Schema, Table,
};
use crate::survey::{run_trials, FractionPolicy, TrialPlan};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    /// Exceedance curves (share of nodes with gain > 1) of directed inputs.
    Fig1,
    /// Exceedance curves of undirected inputs.
    Fig2,
    /// Gain histograms.
    Fig3,
    /// Mean gain by degree percentile.
    Fig4,
    /// Estimator ratio over synthetic trials.
    Fig5,
    /// Summary statistics of the inputs.
    Table,
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Table => "table",
        })
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Figure::Fig1),
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            "fig4" => Ok(Figure::Fig4),
            "fig5" => Ok(Figure::Fig5),
            "table" => Ok(Figure::Table),
            other => Err(Error::usage(format!(
                "unknown figure `{other}` (expected fig1..fig5 or table)"
            ))),
        }
    }
}

/// Fully resolved experiment configuration; serialized verbatim into the
/// manifest.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub figure: Figure,
    pub inputs: Vec<PathBuf>,
    pub directed: bool,
    pub aggregators: Vec<Aggregator>,
    pub bins: usize,
    pub histogram_edges: Vec<f64>,
    pub models: Vec<Model>,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub nominations: usize,
    pub fraction: FractionPolicy,
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl ExperimentSpec {
    /// Defaults for `figure`: both aggregators, 100 percentile buckets,
    /// log-spaced histogram edges from 1e-3 to 1e4, all four models at sizes
    /// 5000, 7000 and 9000 with 100 trials each.
    pub fn new(figure: Figure, out_dir: impl Into<PathBuf>) -> Self {
        ExperimentSpec {
            figure,
            inputs: Vec::new(),
            directed: figure == Figure::Fig1,
            aggregators: Aggregator::ALL.to_vec(),
            bins: DEFAULT_BINS,
            histogram_edges: log_spaced_edges(-3, 4, 10),
            models: Model::ALL.to_vec(),
            sizes: vec![5000, 7000, 9000],
            trials: 100,
            nominations: 1,
            fraction: FractionPolicy::default(),
            seed: 0,
            out_dir: out_dir.into(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self.figure {
            Figure::Fig5 => {
                if self.models.is_empty() {
                    return Err(Error::usage("fig5 needs at least one model"));
                }
                if self.sizes.is_empty() || self.trials == 0 {
                    return Err(Error::usage("fig5 needs sizes and at least one trial"));
                }
            }
            _ => {
                if self.inputs.is_empty() {
                    return Err(Error::usage(format!("{} needs at least one --input", self.figure)));
                }
                if self.aggregators.is_empty() {
                    return Err(Error::usage("at least one aggregator is required"));
                }
            }
        }
        if self.bins == 0 {
            return Err(Error::usage("bins must be at least 1"));
        }
        let stems: BTreeSet<String> = self.inputs.iter().map(|p| input_name(p)).collect();
        if stems.len() != self.inputs.len() {
            return Err(Error::usage("input file names must have distinct stems"));
        }
        Ok(())
    }
}

/// Loads an edge-list file, attaching the path to any error.
pub fn load_graph_file(path: &Path, directed: bool) -> Result<Graph> {
    let shown = path.display().to_string();
    let file = File::open(path).map_err(|e| Error::io(&shown, e))?;
    load_edge_list(BufReader::new(file), directed).map_err(|e| Error::in_file(shown, e))
}

fn input_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".to_owned())
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    spec: &'a ExperimentSpec,
    outputs: Vec<String>,
}

pub const MANIFEST_NAME: &str = "manifest.json";

/// Runs `spec` and returns the paths written, manifest last. On failure no
/// output of this run is left behind.
pub fn reproduce(spec: &ExperimentSpec, exec: Execution) -> Result<Vec<PathBuf>> {
    spec.validate()?;
    let tables = build_tables(spec, exec)?;

    fs::create_dir_all(&spec.out_dir)
        .map_err(|e| Error::io(spec.out_dir.display().to_string(), e))?;
    let mut written: Vec<PathBuf> = Vec::new();
    let result = write_outputs(spec, &tables, &mut written);
    if result.is_err() {
        for path in &written {
            let _ = fs::remove_file(path);
        }
    }
    result.map(|_| written)
}

fn write_outputs(spec: &ExperimentSpec, tables: &[(String, Table)], written: &mut Vec<PathBuf>) -> Result<()> {
    for (name, table) in tables {
        let path = spec.out_dir.join(name);
        let bytes = table.to_bytes()?;
        written.push(path.clone());
        fs::write(&path, bytes).map_err(|e| Error::io(path.display().to_string(), e))?;
    }
    let manifest = Manifest {
        tool: "altergraph",
        version: env!("CARGO_PKG_VERSION"),
        spec,
        outputs: tables.iter().map(|(n, _)| n.clone()).collect(),
    };
    let path = spec.out_dir.join(MANIFEST_NAME);
    let json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::Internal(format!("manifest serialization: {e}")))?;
    written.push(path.clone());
    fs::write(&path, json + "\n").map_err(|e| Error::io(path.display().to_string(), e))?;
    Ok(())
}

fn build_tables(spec: &ExperimentSpec, exec: Execution) -> Result<Vec<(String, Table)>> {
    let mut tables = Vec::new();
    if spec.figure == Figure::Fig5 {
        for &model in &spec.models {
            let plan = TrialPlan {
                model,
                sizes: spec.sizes.clone(),
                trials_per_size: spec.trials,
                master_seed: spec.seed,
                nominations: spec.nominations,
                fraction: spec.fraction,
            };
            let rows = run_trials(&plan, exec)?;
            tables.push((format!("fig5_{model}.csv"), trials_table(&rows)));
            tables.push((format!("fig5_{model}_configs.csv"), configs_table(&rows)));
        }
        return Ok(tables);
    }

    let mut stats = Table::new(Schema::Stats);
    for path in &spec.inputs {
        let name = input_name(path);
        let g = load_graph_file(path, spec.directed)?;
        if spec.figure == Figure::Table {
            stats.push(stats_row(&name, &summary_with(&g, exec)?));
            continue;
        }
        let ranks = influence_ranks(&g)?;
        for &agg in &spec.aggregators {
            let gains = gain_summary_with(&g, agg, exec)?;
            let table = match spec.figure {
                Figure::Fig1 | Figure::Fig2 => {
                    curve_table(&exceedance_by_percentile(&gains, &ranks, spec.bins)?)
                }
                Figure::Fig3 => histogram_table(&gain_histogram(&gains, &spec.histogram_edges)?),
                Figure::Fig4 => curve_table(&mean_gain_by_percentile(&gains, &ranks, spec.bins)?),
                Figure::Fig5 | Figure::Table => unreachable!(),
            };
            tables.push((format!("{}_{name}_{agg}.csv", spec.figure), table));
        }
    }
    if spec.figure == Figure::Table {
        tables.push(("table.csv".to_owned(), stats));
    }
    Ok(tables)
}
