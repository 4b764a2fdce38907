//! Interview simulation and the survey-only gain estimator.
//!
//! A survey interviews a uniform sample of respondents. Each one reports its
//! degree and names a few alters. From the reported degrees alone,
//!
//! ```text
//! Ĝ = (Σ k̃²)(Σ 1/k̃) / (r Σ k̃)
//! ```
//!
//! estimates the network gain `μ2 μh / μ1`. Only respondents with a positive
//! reported degree enter the sums and `r`.

use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{child_seed, map_slice, Execution};
use crate::gain::{gain_summary_with, Aggregator};
use crate::generators::{rng_from_seed, sample_config, GeneratorConfig, Model, SimRng};
use crate::graph::{Graph, NodeId};
use crate::netstats::{moments, PowerSums};

#[derive(Clone, Debug, PartialEq)]
pub struct Survey {
    pub respondents: Vec<NodeId>,
    pub reported_degrees: Vec<usize>,
    /// Alters named by each respondent, parallel to `respondents`.
    pub nominations: Vec<Vec<NodeId>>,
    /// Respondents as a share of the population.
    pub fraction: f64,
}

impl Survey {
    /// Respondents whose reported degree is zero; they are kept in the survey
    /// but do not enter the estimator.
    pub fn zero_degree_respondents(&self) -> usize {
        self.reported_degrees.iter().filter(|&&k| k == 0).count()
    }
}

/// `⌊fraction · N⌋` distinct nodes drawn uniformly, in ascending id order.
pub fn draw_respondents(g: &Graph, fraction: f64, rng: &mut SimRng) -> Result<Vec<NodeId>> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::usage(format!("fraction must lie in (0, 1], got {fraction}")));
    }
    let n = g.node_count();
    // Largest count with count / n <= fraction; the plain product can land
    // just below an integer (0.145 * 200 = 28.999...).
    let mut count = (fraction * n as f64).floor() as usize;
    if count < n && (count + 1) as f64 / n as f64 <= fraction {
        count += 1;
    }
    if count == 0 {
        return Err(Error::usage(format!(
            "fraction {fraction} of {n} nodes selects no respondent"
        )));
    }
    let mut chosen: Vec<NodeId> = index::sample(rng, n, count)
        .into_iter()
        .map(|i| i as NodeId)
        .collect();
    chosen.sort_unstable();
    Ok(chosen)
}

/// Each respondent reports its degree (out-degree when directed) and names
/// `min(per_respondent, degree)` distinct alters uniformly at random.
pub fn interview(
    g: &Graph,
    respondents: &[NodeId],
    per_respondent: usize,
    rng: &mut SimRng,
) -> Result<Survey> {
    if per_respondent == 0 {
        return Err(Error::usage("each respondent must be asked for at least one alter"));
    }
    let direction = g.alter_direction();
    let mut reported_degrees = Vec::with_capacity(respondents.len());
    let mut nominations = Vec::with_capacity(respondents.len());
    for &x in respondents {
        let alters = g.neighbors(x, direction)?;
        reported_degrees.push(alters.len());
        let take = per_respondent.min(alters.len());
        let named = index::sample(rng, alters.len(), take)
            .into_iter()
            .map(|i| alters[i])
            .collect();
        nominations.push(named);
    }
    Ok(Survey {
        respondents: respondents.to_vec(),
        reported_degrees,
        nominations,
        fraction: respondents.len() as f64 / g.node_count() as f64,
    })
}

/// Estimator value and the number of respondents that entered it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GainEstimate {
    pub g_hat: f64,
    pub r_used: usize,
}

pub fn estimate_from_degrees(degrees: impl IntoIterator<Item = usize>) -> Result<GainEstimate> {
    let sums = PowerSums::from_degrees(degrees);
    if sums.positive == 0 {
        return Err(Error::degenerate("no respondent reported a positive degree"));
    }
    Ok(GainEstimate {
        g_hat: sums.gain_ratio(),
        r_used: sums.positive,
    })
}

pub fn estimate_gain(survey: &Survey) -> Result<f64> {
    estimate_from_degrees(survey.reported_degrees.iter().copied()).map(|e| e.g_hat)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EstimatorResult {
    /// Requested respondent fraction.
    pub fraction: f64,
    pub r_used: usize,
    pub g_hat: f64,
    /// `μ2 μh / μ1` of the full influence-degree sequence.
    pub g_true: f64,
    pub ratio: f64,
    /// Mean of the per-node (mean-aggregated) gain, for reference.
    pub g_empirical: f64,
}

/// Draw respondents, interview them, and compare the estimate with the
/// graph's formula gain.
pub fn run_trial(
    g: &Graph,
    fraction: f64,
    per_respondent: usize,
    rng: &mut SimRng,
) -> Result<EstimatorResult> {
    let respondents = draw_respondents(g, fraction, rng)?;
    let survey = interview(g, &respondents, per_respondent, rng)?;
    let estimate = estimate_from_degrees(survey.reported_degrees.iter().copied())?;
    let g_true = moments(&g.degree_sequence(g.influence_mode())?)?.formula_gain();
    let g_empirical =
        gain_summary_with(g, Aggregator::Mean, Execution::Sequential)?.empirical_mean_gain;
    Ok(EstimatorResult {
        fraction,
        r_used: estimate.r_used,
        g_hat: estimate.g_hat,
        g_true,
        ratio: estimate.g_hat / g_true,
        g_empirical,
    })
}

/// Mean degree of the nominated alters (in-degree when directed) against the
/// mean reported degree of the respondents.
pub fn alter_vs_random(survey: &Survey, g: &Graph) -> Result<(f64, f64)> {
    let named: Vec<NodeId> = survey.nominations.iter().flatten().copied().collect();
    if named.is_empty() {
        return Err(Error::degenerate("the survey contains no nominations"));
    }
    let mode = g.influence_mode();
    let degrees = g.degree_sequence(mode)?;
    let alter_total: u64 = named.iter().map(|&a| degrees.values[a as usize] as u64).sum();
    let own_total: u64 = survey.reported_degrees.iter().map(|&k| k as u64).sum();
    Ok((
        alter_total as f64 / named.len() as f64,
        own_total as f64 / survey.reported_degrees.len() as f64,
    ))
}

/// How each trial picks its respondent fraction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FractionPolicy {
    Fixed { value: f64 },
    Uniform { low: f64, high: f64 },
}

impl Default for FractionPolicy {
    fn default() -> Self {
        FractionPolicy::Uniform { low: 0.1, high: 0.2 }
    }
}

impl FractionPolicy {
    fn draw(self, rng: &mut SimRng) -> f64 {
        match self {
            FractionPolicy::Fixed { value } => value,
            FractionPolicy::Uniform { low, high } => rng.gen_range(low..=high),
        }
    }
}

/// One row of an estimator-performance table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialRow {
    pub trial: usize,
    pub size: usize,
    pub config: Option<GeneratorConfig>,
    pub result: EstimatorResult,
}

/// Synthetic-network trial protocol: for each size, `trials_per_size`
/// independent draws of (configuration, graph, survey).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialPlan {
    pub model: Model,
    pub sizes: Vec<usize>,
    pub trials_per_size: usize,
    pub master_seed: u64,
    pub nominations: usize,
    pub fraction: FractionPolicy,
}

impl TrialPlan {
    pub fn new(model: Model, sizes: Vec<usize>, trials_per_size: usize, master_seed: u64) -> Self {
        TrialPlan {
            model,
            sizes,
            trials_per_size,
            master_seed,
            nominations: 1,
            fraction: FractionPolicy::default(),
        }
    }
}

/// Runs every trial of `plan`. Trial `t` at size `n` draws everything from a
/// generator seeded by `(master_seed, n, t)`, so the rows do not depend on
/// execution order or thread count.
pub fn run_trials(plan: &TrialPlan, exec: Execution) -> Result<Vec<TrialRow>> {
    if plan.sizes.is_empty() {
        return Err(Error::usage("at least one network size is required"));
    }
    if plan.trials_per_size == 0 {
        return Err(Error::usage("trials per size must be at least 1"));
    }
    let jobs: Vec<(usize, usize)> = plan
        .sizes
        .iter()
        .flat_map(|&n| (0..plan.trials_per_size).map(move |t| (n, t)))
        .collect();
    map_slice(exec, &jobs, |&(n, t)| {
        let mut rng = rng_from_seed(child_seed(plan.master_seed, &[n as u64, t as u64]));
        let config = sample_config(plan.model, n, &mut rng)?;
        let graph = config.generate()?;
        let fraction = plan.fraction.draw(&mut rng);
        let result = run_trial(&graph, fraction, plan.nominations, &mut rng)?;
        Ok(TrialRow {
            trial: t,
            size: n,
            config: Some(config),
            result,
        })
    })
    .into_iter()
    .collect()
}

/// Repeated surveys of one fixed graph; trial `t` is seeded by
/// `(master_seed, N, t)`.
pub fn run_graph_trials(
    g: &Graph,
    trials: usize,
    fraction: FractionPolicy,
    per_respondent: usize,
    master_seed: u64,
    exec: Execution,
) -> Result<Vec<TrialRow>> {
    if trials == 0 {
        return Err(Error::usage("trials must be at least 1"));
    }
    let n = g.node_count();
    let ids: Vec<usize> = (0..trials).collect();
    map_slice(exec, &ids, |&t| {
        let mut rng = rng_from_seed(child_seed(master_seed, &[n as u64, t as u64]));
        let f = fraction.draw(&mut rng);
        let result = run_trial(g, f, per_respondent, &mut rng)?;
        Ok(TrialRow {
            trial: t,
            size: n,
            config: None,
            result,
        })
    })
    .into_iter()
    .collect()
}
