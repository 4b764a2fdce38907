//! Degree moments, summary statistics, assortativity, clustering, and
//! percentile ranks.

use crate::error::{Error, Result};
use crate::exec::{map_range, Execution};
use crate::graph::{DegreeSequence, Graph};

/// Raw moments and order statistics of a degree sequence.
///
/// `mu1`, `mu2`, `sigma` and `median` are taken over every node; `muh`, the
/// mean reciprocal degree, over nodes of degree at least one. Degree-zero
/// nodes are counted in `n_zero`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeMoments {
    pub n: usize,
    pub mu1: f64,
    pub mu2: f64,
    pub muh: f64,
    pub sigma: f64,
    pub median: f64,
    pub n_zero: usize,
    gain: f64,
}

impl DegreeMoments {
    /// Expected ratio of a random alter's degree to a random node's degree,
    /// `mu2 * muh / mu1`, evaluated without intermediate rounding of the
    /// moments.
    pub fn formula_gain(&self) -> f64 {
        self.gain
    }
}

/// Exact power sums over the positive entries of a degree multiset, with
/// the per-degree counts kept in ascending degree order.
#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct PowerSums {
    pub positive: usize,
    pub zeros: usize,
    pub sum: u128,
    pub sum_sq: u128,
    /// `(degree, count)` for every positive degree present, ascending.
    pub histogram: Vec<(usize, u64)>,
}

impl PowerSums {
    pub(crate) fn from_degrees(degrees: impl IntoIterator<Item = usize>) -> Self {
        let mut counts: Vec<u64> = Vec::new();
        let mut sums = PowerSums::default();
        for k in degrees {
            if k == 0 {
                sums.zeros += 1;
                continue;
            }
            if k >= counts.len() {
                counts.resize(k + 1, 0);
            }
            counts[k] += 1;
            sums.positive += 1;
            sums.sum += k as u128;
            sums.sum_sq += (k as u128) * (k as u128);
        }
        sums.histogram = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (k, c))
            .collect();
        sums
    }

    /// `Σ_k count_k / k`.
    pub(crate) fn reciprocal(&self) -> f64 {
        self.histogram.iter().map(|&(k, c)| c as f64 / k as f64).sum()
    }

    /// `S2 · Σ(1/k) / (P · S1)` over the positive entries, evaluated as a sum
    /// of exact integer ratios `count_k · S2 / (k · P · S1)`. A constant
    /// multiset gives exactly 1, and the result does not depend on the order
    /// of the input.
    pub(crate) fn gain_ratio(&self) -> f64 {
        let denom_base = self.positive as u128 * self.sum;
        self.histogram
            .iter()
            .map(|&(k, c)| (c as u128 * self.sum_sq) as f64 / (k as u128 * denom_base) as f64)
            .sum()
    }
}

pub fn moments(seq: &DegreeSequence) -> Result<DegreeMoments> {
    if seq.is_empty() {
        return Err(Error::usage("degree sequence is empty"));
    }
    let sums = PowerSums::from_degrees(seq.values.iter().copied());
    if sums.positive == 0 {
        return Err(Error::degenerate("every node has degree zero"));
    }
    let n = seq.len();
    let n128 = n as u128;
    // Population variance as an exact rational: (n*S2 - S1^2) / n^2.
    let var_num = n128 * sums.sum_sq - sums.sum * sums.sum;
    let variance = var_num as f64 / (n128 * n128) as f64;

    let mut sorted = seq.values.clone();
    sorted.sort_unstable();
    let median = if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] as f64 + sorted[n / 2] as f64) / 2.0
    };

    Ok(DegreeMoments {
        n,
        mu1: sums.sum as f64 / n as f64,
        mu2: sums.sum_sq as f64 / n as f64,
        muh: sums.reciprocal() / sums.positive as f64,
        sigma: variance.sqrt(),
        median,
        n_zero: sums.zeros,
        gain: sums.gain_ratio(),
    })
}

/// Pearson correlation of end-point degrees over all edges, each edge
/// counted in both orientations. `None` when the end-point degree variance
/// is zero (regular graphs).
pub fn assortativity(g: &Graph) -> Result<Option<f64>> {
    assortativity_with(g, Execution::default())
}

pub fn assortativity_with(g: &Graph, exec: Execution) -> Result<Option<f64>> {
    if g.is_directed() {
        return Err(Error::usage("assortativity is defined here for undirected graphs"));
    }
    if g.edge_count() == 0 {
        return Err(Error::degenerate("assortativity needs at least one edge"));
    }
    // Per node: (k^2, k^3, sum over higher-id neighbours of k * k_nbr).
    let per_node = map_range(exec, g.node_count(), |u| {
        let nbrs = g.out_list(u);
        let k = nbrs.len() as u128;
        let cross: u128 = nbrs
            .iter()
            .filter(|&&v| v as usize > u)
            .map(|&v| k * g.out_list(v as usize).len() as u128)
            .sum();
        (k * k, k * k * k, cross)
    });
    let (mut sx, mut sxx, mut sxy) = (0u128, 0u128, 0u128);
    for (a, b, c) in per_node {
        sx += a;
        sxx += b;
        sxy += 2 * c;
    }
    let arcs = 2 * g.edge_count() as i128;
    let (sx, sxx, sxy) = (sx as i128, sxx as i128, sxy as i128);
    let numerator = arcs * sxy - sx * sx;
    let denominator = arcs * sxx - sx * sx;
    if denominator == 0 {
        return Ok(None);
    }
    Ok(Some(numerator as f64 / denominator as f64))
}

/// Mean local clustering coefficient; nodes of degree below two count as 0.
pub fn avg_clustering(g: &Graph) -> Result<f64> {
    avg_clustering_with(g, Execution::default())
}

pub fn avg_clustering_with(g: &Graph, exec: Execution) -> Result<f64> {
    if g.is_directed() {
        return Err(Error::usage("clustering is defined here for undirected graphs"));
    }
    let n = g.node_count();
    if n == 0 {
        return Ok(0.0);
    }
    let local = map_range(exec, n, |v| local_clustering(g, v));
    Ok(local.iter().sum::<f64>() / n as f64)
}

fn local_clustering(g: &Graph, v: usize) -> f64 {
    let nbrs = g.out_list(v);
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let linked: usize = nbrs
        .iter()
        .map(|&u| sorted_intersection_len(nbrs, g.out_list(u as usize)))
        .sum();
    // Each neighbour pair was seen from both ends.
    linked as f64 / (k * (k - 1)) as f64
}

fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Per-node degree percentile rank in `[0, 100)`, midrank convention:
/// `100 * (#{k < k_x} + #{k = k_x} / 2) / N`.
#[derive(Clone, Debug, PartialEq)]
pub struct PercentileRanks {
    pub ranks: Vec<f64>,
}

pub fn percentile_ranks(seq: &DegreeSequence) -> PercentileRanks {
    let n = seq.len();
    let mut sorted = seq.values.clone();
    sorted.sort_unstable();
    let ranks = seq
        .values
        .iter()
        .map(|&k| {
            let below = sorted.partition_point(|&d| d < k);
            let through = sorted.partition_point(|&d| d <= k);
            100.0 * (below as f64 + 0.5 * (through - below) as f64) / n as f64
        })
        .collect();
    PercentileRanks { ranks }
}

/// One row of the network summary tables. Moments are of the degree
/// sequence for undirected graphs and of the in-degree sequence for directed
/// ones; assortativity and clustering are only computed when undirected.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkStats {
    pub directed: bool,
    pub nodes: usize,
    pub edges: usize,
    pub mean: f64,
    pub median: f64,
    pub std: f64,
    pub assortativity: Option<f64>,
    pub avg_clustering: Option<f64>,
}

pub fn summary(g: &Graph) -> Result<NetworkStats> {
    summary_with(g, Execution::default())
}

pub fn summary_with(g: &Graph, exec: Execution) -> Result<NetworkStats> {
    let seq = g.degree_sequence(g.influence_mode())?;
    let m = moments(&seq)?;
    let (assortativity, avg_clustering) = if g.is_directed() {
        (None, None)
    } else {
        (
            assortativity_with(g, exec)?,
            Some(avg_clustering_with(g, exec)?),
        )
    };
    Ok(NetworkStats {
        directed: g.is_directed(),
        nodes: g.node_count(),
        edges: g.edge_count(),
        mean: m.mu1,
        median: m.median,
        std: m.sigma,
        assortativity,
        avg_clustering,
    })
}
