//! Synthetic network models: small-world with shortcuts, preferential
//! attachment, Holme–Kim triad formation, and Klemm–Eguíluz active-node
//! growth, plus randomized configuration sampling over the validation ranges.
//!
//! All generators are driven by a seeded ChaCha8 stream, so the same
//! configuration always yields the same edge list.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// The seedable generator used everywhere randomness is needed.
pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    #[serde(rename = "sw")]
    SmallWorld,
    #[serde(rename = "pa")]
    PrefAttachment,
    #[serde(rename = "hk")]
    HolmeKim,
    #[serde(rename = "ke")]
    KlemmEguiluz,
}

impl Model {
    pub const ALL: [Model; 4] = [
        Model::SmallWorld,
        Model::PrefAttachment,
        Model::HolmeKim,
        Model::KlemmEguiluz,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Model::SmallWorld => "sw",
            Model::PrefAttachment => "pa",
            Model::HolmeKim => "hk",
            Model::KlemmEguiluz => "ke",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sw" => Ok(Model::SmallWorld),
            "pa" => Ok(Model::PrefAttachment),
            "hk" => Ok(Model::HolmeKim),
            "ke" => Ok(Model::KlemmEguiluz),
            other => Err(Error::usage(format!(
                "unknown model `{other}` (expected sw, pa, hk or ke)"
            ))),
        }
    }
}

/// A fully resolved generator configuration. Parameters a model does not use
/// are left at zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub model: Model,
    pub n: usize,
    /// Ring half-degree (SW).
    pub b: usize,
    /// Shortcut probability per non-ring pair (SW).
    pub p: f64,
    /// Links per new node (PA, HK, KE).
    pub m: usize,
    /// Triad-formation probability (HK).
    pub p_t: f64,
    /// Probability that a KE link is degree-proportional rather than to an
    /// active node.
    pub mu: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn small_world(n: usize, b: usize, p: f64, seed: u64) -> Self {
        Self { model: Model::SmallWorld, n, b, p, m: 0, p_t: 0.0, mu: 0.0, seed }
    }

    pub fn pref_attachment(n: usize, m: usize, seed: u64) -> Self {
        Self { model: Model::PrefAttachment, n, b: 0, p: 0.0, m, p_t: 0.0, mu: 0.0, seed }
    }

    pub fn holme_kim(n: usize, m: usize, p_t: f64, seed: u64) -> Self {
        Self { model: Model::HolmeKim, n, b: 0, p: 0.0, m, p_t, mu: 0.0, seed }
    }

    pub fn klemm_eguiluz(n: usize, m: usize, mu: f64, seed: u64) -> Self {
        Self { model: Model::KlemmEguiluz, n, b: 0, p: 0.0, m, p_t: 0.0, mu, seed }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, x: f64| {
            if (0.0..=1.0).contains(&x) {
                Ok(())
            } else {
                Err(Error::usage(format!("{name} must lie in [0, 1], got {x}")))
            }
        };
        match self.model {
            Model::SmallWorld => {
                if self.b < 1 {
                    return Err(Error::usage("b must be at least 1"));
                }
                if self.n <= 2 * self.b {
                    return Err(Error::usage(format!(
                        "small-world needs n > 2b (n = {}, b = {})",
                        self.n, self.b
                    )));
                }
                unit("p", self.p)
            }
            Model::PrefAttachment | Model::HolmeKim => {
                if self.m < 1 {
                    return Err(Error::usage("m must be at least 1"));
                }
                if self.n <= self.m + 1 {
                    return Err(Error::usage(format!(
                        "growth model needs n > m + 1 (n = {}, m = {})",
                        self.n, self.m
                    )));
                }
                unit("p_t", self.p_t)
            }
            Model::KlemmEguiluz => {
                if self.m < 1 {
                    return Err(Error::usage("m must be at least 1"));
                }
                if self.n <= self.m {
                    return Err(Error::usage(format!(
                        "KE needs n > m (n = {}, m = {})",
                        self.n, self.m
                    )));
                }
                unit("mu", self.mu)
            }
        }
    }

    /// Edge count for the growth models, which is fixed by `(n, m)`.
    pub fn exact_edge_count(&self) -> Option<usize> {
        let (n, m) = (self.n, self.m);
        match self.model {
            Model::SmallWorld => None,
            Model::PrefAttachment | Model::HolmeKim => Some(m * (m + 1) / 2 + m * (n - m - 1)),
            Model::KlemmEguiluz => Some(m * (m - 1) / 2 + m * (n - m)),
        }
    }

    /// Mean degree: exact for the growth models, expected for SW.
    pub fn expected_mean_degree(&self) -> f64 {
        match self.exact_edge_count() {
            Some(e) => 2.0 * e as f64 / self.n as f64,
            None => {
                let ring = 2 * self.b;
                ring as f64 + self.p * (self.n - 1 - ring) as f64
            }
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        match self.model {
            Model::SmallWorld => gen_small_world(self.n, self.b, self.p, self.seed),
            Model::PrefAttachment => gen_pref_attachment(self.n, self.m, self.seed),
            Model::HolmeKim => gen_holme_kim(self.n, self.m, self.p_t, self.seed),
            Model::KlemmEguiluz => gen_klemm_eguiluz(self.n, self.m, self.mu, self.seed),
        }
    }
}

/// Ring of `n` nodes each linked to its `b` nearest neighbours on either
/// side, plus every other pair independently with probability `p`.
pub fn gen_small_world(n: usize, b: usize, p: f64, seed: u64) -> Result<Graph> {
    GeneratorConfig::small_world(n, b, p, seed).validate()?;
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(n * b);
    for u in 0..n {
        for step in 1..=b {
            edges.push((u as NodeId, ((u + step) % n) as NodeId));
        }
    }
    let on_ring = |u: usize, v: usize| {
        let d = u.abs_diff(v);
        d.min(n - d) <= b
    };
    if p >= 1.0 {
        for v in 1..n {
            for w in 0..v {
                if !on_ring(v, w) {
                    edges.push((w as NodeId, v as NodeId));
                }
            }
        }
    } else if p > 0.0 {
        // Geometric skipping over the pairs (v, w), w < v, in row order: every
        // pair is visited with probability p independently. Ring pairs that
        // come up are already present and are skipped.
        let log_q = (1.0 - p).ln();
        let (mut v, mut w) = (1usize, -1i64);
        loop {
            let u: f64 = rng.gen();
            let skip = ((1.0 - u).ln() / log_q).floor();
            if skip >= (n * n) as f64 {
                break;
            }
            w += 1 + skip as i64;
            while v < n && w >= v as i64 {
                w -= v as i64;
                v += 1;
            }
            if v >= n {
                break;
            }
            let w_u = w as usize;
            if !on_ring(v, w_u) {
                edges.push((w_u as NodeId, v as NodeId));
            }
        }
    }
    Graph::from_edges(n, false, edges)
}

/// Incremental state shared by the preferential-attachment style models.
struct Growth {
    edges: Vec<(NodeId, NodeId)>,
    /// Every edge end-point; a uniform draw is a degree-proportional draw.
    endpoints: Vec<NodeId>,
    /// `stamp[x] == v` marks `x` as already linked to the node `v` being added.
    stamp: Vec<usize>,
    adjacency: Option<Vec<Vec<NodeId>>>,
    degree: Vec<usize>,
}

impl Growth {
    fn new(n: usize, track_adjacency: bool) -> Self {
        Growth {
            edges: Vec::new(),
            endpoints: Vec::new(),
            stamp: vec![usize::MAX; n],
            adjacency: track_adjacency.then(|| vec![Vec::new(); n]),
            degree: vec![0; n],
        }
    }

    fn seed_clique(&mut self, size: usize) {
        for u in 0..size {
            for v in u + 1..size {
                self.link(u, v);
            }
        }
        for u in 0..size {
            for _ in 0..self.degree[u] {
                self.endpoints.push(u as NodeId);
            }
        }
    }

    fn link(&mut self, u: usize, v: usize) {
        self.edges.push((u as NodeId, v as NodeId));
        self.degree[u] += 1;
        self.degree[v] += 1;
        if let Some(adj) = &mut self.adjacency {
            adj[u].push(v as NodeId);
            adj[v].push(u as NodeId);
        }
    }

    /// Links new node `v` to `t` and records it as taken for this step.
    fn attach(&mut self, v: usize, t: usize) {
        self.stamp[t] = v;
        self.link(v, t);
    }

    fn taken(&self, v: usize, t: usize) -> bool {
        self.stamp[t] == v
    }

    /// Degree-proportional draw among nodes not yet linked to `v`.
    fn preferential(&self, v: usize, rng: &mut SimRng) -> usize {
        loop {
            let t = self.endpoints[rng.gen_range(0..self.endpoints.len())] as usize;
            if !self.taken(v, t) {
                return t;
            }
        }
    }

    /// Registers the end-points of the edges node `v` just created.
    fn commit(&mut self, v: usize, targets: &[usize]) {
        for &t in targets {
            self.endpoints.push(t as NodeId);
            self.endpoints.push(v as NodeId);
        }
    }

    /// Uniform neighbour of `anchor` that `v` is not linked to yet.
    fn triad_candidate(&self, v: usize, anchor: usize, rng: &mut SimRng) -> Option<usize> {
        let nbrs = &self.adjacency.as_ref().expect("triad steps track adjacency")[anchor];
        let free = |x: NodeId| x as usize != v && !self.taken(v, x as usize);
        for _ in 0..8 {
            let x = *nbrs.choose(rng)?;
            if free(x) {
                return Some(x as usize);
            }
        }
        let candidates: Vec<NodeId> = nbrs.iter().copied().filter(|&x| free(x)).collect();
        candidates.choose(rng).map(|&x| x as usize)
    }
}

fn grow_preferential(n: usize, m: usize, p_t: f64, seed: u64) -> Result<Graph> {
    let mut rng = rng_from_seed(seed);
    let mut state = Growth::new(n, p_t > 0.0);
    state.seed_clique(m + 1);
    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        let mut anchor = None;
        for event in 0..m {
            let triad = event > 0 && p_t > 0.0 && rng.gen_bool(p_t);
            let via_triad = match (triad, anchor) {
                (true, Some(a)) => state.triad_candidate(v, a, &mut rng),
                _ => None,
            };
            let t = match via_triad {
                Some(t) => t,
                None => {
                    let t = state.preferential(v, &mut rng);
                    anchor = Some(t);
                    t
                }
            };
            state.attach(v, t);
            targets.push(t);
        }
        state.commit(v, &targets);
    }
    Graph::from_edges(n, false, state.edges)
}

/// Preferential attachment grown from a clique on `m + 1` nodes; each new
/// node links to `m` distinct existing nodes drawn degree-proportionally.
pub fn gen_pref_attachment(n: usize, m: usize, seed: u64) -> Result<Graph> {
    GeneratorConfig::pref_attachment(n, m, seed).validate()?;
    grow_preferential(n, m, 0.0, seed)
}

/// Holme–Kim growth: after the first preferential link of a new node, each
/// further link is, with probability `p_t`, closed onto a random neighbour of
/// the last preferential target (falling back to preferential attachment
/// when that neighbourhood is used up).
///
/// With `p_t = 0` the output is identical to [`gen_pref_attachment`] for the
/// same seed.
pub fn gen_holme_kim(n: usize, m: usize, p_t: f64, seed: u64) -> Result<Graph> {
    GeneratorConfig::holme_kim(n, m, p_t, seed).validate()?;
    grow_preferential(n, m, p_t, seed)
}

/// Klemm–Eguíluz growth with `m` active nodes. Each new node makes `m`
/// links, each degree-proportional with probability `mu` and otherwise to a
/// not-yet-linked active node; it then joins the active set and one
/// previously active node leaves it with probability proportional to
/// `1 / degree`.
pub fn gen_klemm_eguiluz(n: usize, m: usize, mu: f64, seed: u64) -> Result<Graph> {
    GeneratorConfig::klemm_eguiluz(n, m, mu, seed).validate()?;
    let mut rng = rng_from_seed(seed);
    let mut state = Growth::new(n, false);
    state.seed_clique(m);
    let mut active: Vec<usize> = (0..m).collect();
    let mut targets = Vec::with_capacity(m);
    let mut free_active = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for v in m..n {
        targets.clear();
        for _ in 0..m {
            let preferential = mu > 0.0 && rng.gen_bool(mu) && !state.endpoints.is_empty();
            let t = if preferential {
                state.preferential(v, &mut rng)
            } else {
                free_active.clear();
                free_active.extend(active.iter().copied().filter(|&a| !state.taken(v, a)));
                *free_active
                    .choose(&mut rng)
                    .expect("fewer links made than active nodes")
            };
            state.attach(v, t);
            targets.push(t);
        }
        state.commit(v, &targets);

        weights.clear();
        weights.extend(active.iter().map(|&a| 1.0 / state.degree[a] as f64));
        let total: f64 = weights.iter().sum();
        let mut draw = rng.gen::<f64>() * total;
        let mut slot = active.len() - 1;
        for (i, w) in weights.iter().enumerate() {
            if draw < *w {
                slot = i;
                break;
            }
            draw -= w;
        }
        active[slot] = v;
    }
    Graph::from_edges(n, false, state.edges)
}

/// Upper bound on the expected SW mean degree.
pub const SW_MAX_MEAN_DEGREE: f64 = 200.0;
/// HK networks are accepted only below this mean degree.
pub const HK_MAX_MEAN_DEGREE: f64 = 150.0;
/// Accepted KE mean-degree window.
pub const KE_MEAN_DEGREE: (f64, f64) = (100.0, 200.0);

const MAX_ATTEMPTS: usize = 1000;

/// Draws a configuration for a network of `n` nodes from the validation
/// ranges of `model`:
///
/// * SW: `b` uniform in 5..=10, `p` uniform over the values keeping the
///   expected mean degree at or below 200;
/// * PA: `m` uniform in 50..=75;
/// * HK: `m` uniform in 50..=100, `p_t` uniform in [0, 0.5], rejected
///   unless the mean degree is below 150;
/// * KE: `m` uniform in 50..=100, `mu` uniform in [0, 1], rejected unless
///   the mean degree lies in [100, 200].
pub fn sample_config(model: Model, n: usize, rng: &mut SimRng) -> Result<GeneratorConfig> {
    for _ in 0..MAX_ATTEMPTS {
        let seed = rng.gen::<u64>();
        let config = match model {
            Model::SmallWorld => {
                let b = rng.gen_range(5..=10usize);
                if n <= 2 * b + 1 {
                    return Err(Error::usage(format!("n = {n} too small for a small-world ring")));
                }
                let free = (n - 1 - 2 * b) as f64;
                let p_max = ((SW_MAX_MEAN_DEGREE - 2.0 * b as f64) / free).min(1.0);
                GeneratorConfig::small_world(n, b, rng.gen_range(0.0..=p_max), seed)
            }
            Model::PrefAttachment => {
                GeneratorConfig::pref_attachment(n, rng.gen_range(50..=75usize), seed)
            }
            Model::HolmeKim => {
                let m = rng.gen_range(50..=100usize);
                let p_t = rng.gen_range(0.0..=0.5);
                GeneratorConfig::holme_kim(n, m, p_t, seed)
            }
            Model::KlemmEguiluz => {
                let m = rng.gen_range(50..=100usize);
                let mu = rng.gen_range(0.0..=1.0);
                GeneratorConfig::klemm_eguiluz(n, m, mu, seed)
            }
        };
        if config.validate().is_err() {
            continue;
        }
        let mean = config.expected_mean_degree();
        let accepted = match model {
            Model::SmallWorld => mean <= SW_MAX_MEAN_DEGREE,
            Model::PrefAttachment => true,
            Model::HolmeKim => mean < HK_MAX_MEAN_DEGREE,
            Model::KlemmEguiluz => (KE_MEAN_DEGREE.0..=KE_MEAN_DEGREE.1).contains(&mean),
        };
        if accepted {
            return Ok(config);
        }
    }
    Err(Error::usage(format!(
        "no acceptable {model} configuration for n = {n} after {MAX_ATTEMPTS} draws"
    )))
}
