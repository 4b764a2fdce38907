//! Alter sampling on networks.
//!
//! Picking a random neighbour of a random node reaches, on average, a
//! better-connected node than picking a random node. This crate measures that
//! advantage per node ([`gain`]) and per network (`μ2 μh / μ1`), estimates it
//! from survey data alone ([`survey`]), and validates the estimate on
//! synthetic social-network models ([`generators`]).
//!
//! Data-parallel loops (per-node gains, clustering, Monte Carlo trials) use
//! rayon when the `parallel` feature is on and run sequentially otherwise;
//! see [`Execution`].

pub mod error;
pub mod exec;
pub mod experiments;
pub mod gain;
pub mod generators;
pub mod graph;
pub mod netstats;
pub mod report;
pub mod survey;

pub use error::{Error, Result};
pub use exec::Execution;
pub use gain::{
    exceedance_by_percentile, gain_histogram, gain_summary, mean_gain_by_percentile, node_gain,
    Aggregator, CurveBin, GainRecord, GainSummary, Histogram,
};
pub use generators::{
    gen_holme_kim, gen_klemm_eguiluz, gen_pref_attachment, gen_small_world, sample_config,
    GeneratorConfig, Model,
};
pub use graph::{load_edge_list, write_edge_list, DegreeSequence, Direction, Graph, NodeId};
pub use netstats::{
    assortativity, avg_clustering, moments, percentile_ranks, summary, DegreeMoments,
    NetworkStats, PercentileRanks,
};
pub use survey::{
    alter_vs_random, draw_respondents, estimate_gain, interview, run_trial, run_trials,
    EstimatorResult, Survey, TrialPlan,
};
