//! Per-node gain of alter sampling over uniform sampling, its distribution
//! across percentile buckets, and the network-level closed form.
//!
//! For node `x` the gain is `agg(alter degrees) / k_x`, where the alters are
//! the neighbours of `x` (undirected) or the nodes `x` points to (directed)
//! and every degree is an in-degree in the directed case. A node with no
//! alters, or with own degree zero, has no gain.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_range, Execution};
use crate::graph::{Graph, NodeId};
use crate::netstats::{moments, percentile_ranks, PercentileRanks};

/// How the alter degrees of one node are summarized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregator {
    Mean,
    Median,
}

impl Aggregator {
    pub const ALL: [Aggregator; 2] = [Aggregator::Mean, Aggregator::Median];

    pub fn as_str(self) -> &'static str {
        match self {
            Aggregator::Mean => "mean",
            Aggregator::Median => "median",
        }
    }
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Aggregator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(Aggregator::Mean),
            "median" => Ok(Aggregator::Median),
            other => Err(Error::usage(format!("unknown aggregator `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GainRecord {
    pub node: NodeId,
    pub degree: usize,
    pub gain: f64,
    pub aggregator: Aggregator,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GainSummary {
    pub aggregator: Aggregator,
    pub node_count: usize,
    pub records: Vec<GainRecord>,
    /// Nodes without a defined gain.
    pub excluded: usize,
    pub empirical_mean_gain: f64,
    pub formula_gain: f64,
}

impl GainSummary {
    /// Share of defined-gain nodes whose gain is strictly above one.
    pub fn fraction_above_one(&self) -> f64 {
        let above = self.records.iter().filter(|r| r.gain > 1.0).count();
        above as f64 / self.records.len() as f64
    }
}

pub fn node_gain(g: &Graph, node: NodeId, aggregator: Aggregator) -> Result<Option<f64>> {
    if node as usize >= g.node_count() {
        return Err(Error::usage(format!(
            "node {node} out of range 0..{}",
            g.node_count()
        )));
    }
    Ok(gain_of(g, node as usize, aggregator))
}

fn gain_of(g: &Graph, x: usize, aggregator: Aggregator) -> Option<f64> {
    let own = g.influence_degree(x);
    let alters = g.out_list(x);
    if own == 0 || alters.is_empty() {
        return None;
    }
    let own = own as f64;
    match aggregator {
        Aggregator::Mean => {
            let total: u64 = alters
                .iter()
                .map(|&a| g.influence_degree(a as usize) as u64)
                .sum();
            Some(total as f64 / (alters.len() as f64 * own))
        }
        Aggregator::Median => {
            let mut degrees: Vec<usize> = alters
                .iter()
                .map(|&a| g.influence_degree(a as usize))
                .collect();
            degrees.sort_unstable();
            let n = degrees.len();
            let median = if n % 2 == 1 {
                degrees[n / 2] as f64
            } else {
                (degrees[n / 2 - 1] + degrees[n / 2]) as f64 / 2.0
            };
            Some(median / own)
        }
    }
}

pub fn gain_summary(g: &Graph, aggregator: Aggregator) -> Result<GainSummary> {
    gain_summary_with(g, aggregator, Execution::default())
}

pub fn gain_summary_with(g: &Graph, aggregator: Aggregator, exec: Execution) -> Result<GainSummary> {
    let gains = map_range(exec, g.node_count(), |x| gain_of(g, x, aggregator));
    let records: Vec<GainRecord> = gains
        .iter()
        .enumerate()
        .filter_map(|(x, gain)| {
            gain.map(|gain| GainRecord {
                node: x as NodeId,
                degree: g.influence_degree(x),
                gain,
                aggregator,
            })
        })
        .collect();
    if records.is_empty() {
        return Err(Error::degenerate("no node has a defined gain"));
    }
    let empirical_mean_gain =
        records.iter().map(|r| r.gain).sum::<f64>() / records.len() as f64;
    let formula_gain = moments(&g.degree_sequence(g.influence_mode())?)?.formula_gain();
    Ok(GainSummary {
        aggregator,
        node_count: g.node_count(),
        excluded: g.node_count() - records.len(),
        records,
        empirical_mean_gain,
        formula_gain,
    })
}

/// Degree percentile ranks in the influence sense (degree or in-degree).
pub fn influence_ranks(g: &Graph) -> Result<PercentileRanks> {
    Ok(percentile_ranks(&g.degree_sequence(g.influence_mode())?))
}

/// One equal-width percentile bucket `[low, high)`. `value` is `None` when no
/// defined-gain node falls in the bucket.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveBin {
    pub low: f64,
    pub high: f64,
    pub value: Option<f64>,
    pub count: usize,
}

/// Default bucket count for percentile curves.
pub const DEFAULT_BINS: usize = 100;

fn bucketed<F>(summary: &GainSummary, ranks: &PercentileRanks, bins: usize, reduce: F) -> Result<Vec<CurveBin>>
where
    F: Fn(&[f64]) -> f64,
{
    if bins == 0 {
        return Err(Error::usage("bins must be at least 1"));
    }
    if ranks.ranks.len() != summary.node_count {
        return Err(Error::usage(format!(
            "ranks cover {} nodes but the gain summary covers {}",
            ranks.ranks.len(),
            summary.node_count
        )));
    }
    let mut buckets: Vec<Vec<f64>> = vec![Vec::new(); bins];
    for r in &summary.records {
        let rank = ranks.ranks[r.node as usize];
        let idx = ((rank / 100.0 * bins as f64).floor() as usize).min(bins - 1);
        buckets[idx].push(r.gain);
    }
    Ok(buckets
        .iter()
        .enumerate()
        .map(|(i, gains)| CurveBin {
            low: 100.0 * i as f64 / bins as f64,
            high: 100.0 * (i + 1) as f64 / bins as f64,
            value: (!gains.is_empty()).then(|| reduce(gains)),
            count: gains.len(),
        })
        .collect())
}

/// Per bucket, the fraction of defined-gain nodes with gain strictly above 1.
pub fn exceedance_by_percentile(summary: &GainSummary, ranks: &PercentileRanks, bins: usize) -> Result<Vec<CurveBin>> {
    bucketed(summary, ranks, bins, |gains| {
        gains.iter().filter(|&&x| x > 1.0).count() as f64 / gains.len() as f64
    })
}

/// Per bucket, the mean gain of defined-gain nodes.
pub fn mean_gain_by_percentile(summary: &GainSummary, ranks: &PercentileRanks, bins: usize) -> Result<Vec<CurveBin>> {
    bucketed(summary, ranks, bins, |gains| {
        gains.iter().sum::<f64>() / gains.len() as f64
    })
}

/// Gain counts over half-open bins `[edges[i], edges[i+1])`.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
    pub underflow: usize,
    pub overflow: usize,
}

pub fn gain_histogram(summary: &GainSummary, edges: &[f64]) -> Result<Histogram> {
    if edges.len() < 2 {
        return Err(Error::usage("a histogram needs at least two bin edges"));
    }
    if edges.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
        return Err(Error::usage("bin edges must be strictly ascending"));
    }
    let mut hist = Histogram {
        edges: edges.to_vec(),
        counts: vec![0; edges.len() - 1],
        underflow: 0,
        overflow: 0,
    };
    let last = edges[edges.len() - 1];
    for r in &summary.records {
        if r.gain < edges[0] {
            hist.underflow += 1;
        } else if r.gain >= last {
            hist.overflow += 1;
        } else {
            let idx = edges.partition_point(|&e| e <= r.gain) - 1;
            hist.counts[idx] += 1;
        }
    }
    Ok(hist)
}

/// `per_decade` logarithmically spaced edges from `10^lo_exp` to `10^hi_exp`.
pub fn log_spaced_edges(lo_exp: i32, hi_exp: i32, per_decade: usize) -> Vec<f64> {
    let steps = (hi_exp - lo_exp) as usize * per_decade;
    (0..=steps)
        .map(|i| 10f64.powf(lo_exp as f64 + i as f64 / per_decade as f64))
        .collect()
}

/// Both gains and the percentile rank of every node.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeGains {
    pub node: NodeId,
    pub degree: usize,
    pub percentile_rank: f64,
    pub gain_mean: Option<f64>,
    pub gain_median: Option<f64>,
}

pub fn node_table(g: &Graph, exec: Execution) -> Result<Vec<NodeGains>> {
    let ranks = influence_ranks(g)?;
    Ok(map_range(exec, g.node_count(), |x| NodeGains {
        node: x as NodeId,
        degree: g.influence_degree(x),
        percentile_rank: ranks.ranks[x],
        gain_mean: gain_of(g, x, Aggregator::Mean),
        gain_median: gain_of(g, x, Aggregator::Median),
    }))
}
