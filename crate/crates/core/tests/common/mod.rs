//! Dense-matrix reference implementations and small graph fixtures shared by
//! the integration tests. Everything here is deliberately naive: O(N^2) or
//! O(N^3) loops over a boolean adjacency matrix, plain float arithmetic.

#![allow(dead_code)]

use altergraph::{load_edge_list, Graph, NodeId};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn graph(text: &str, directed: bool) -> Graph {
    load_edge_list(text.as_bytes(), directed).expect("fixture parses")
}

/// `a[i][j]` is true when there is an edge (arc) from `i` to `j`.
pub struct Dense {
    pub directed: bool,
    pub a: Vec<Vec<bool>>,
}

impl Dense {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if self.a[i][j] && (self.directed || i < j) {
                    edges.push((i as NodeId, j as NodeId));
                }
            }
        }
        Graph::from_edges(self.n(), self.directed, edges).expect("valid edges")
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.a[i].iter().filter(|&&x| x).count()
    }

    pub fn in_degree(&self, j: usize) -> usize {
        (0..self.n()).filter(|&i| self.a[i][j]).count()
    }

    /// Degree used to measure influence: in-degree when directed.
    pub fn influence(&self, i: usize) -> usize {
        if self.directed {
            self.in_degree(i)
        } else {
            self.out_degree(i)
        }
    }

    pub fn gain_mean(&self, x: usize) -> Option<f64> {
        let own = self.influence(x) as f64;
        let alters: Vec<f64> = (0..self.n())
            .filter(|&j| self.a[x][j])
            .map(|j| self.influence(j) as f64)
            .collect();
        if own == 0.0 || alters.is_empty() {
            return None;
        }
        let mean = alters.iter().sum::<f64>() / alters.len() as f64;
        Some(mean / own)
    }

    pub fn gain_median(&self, x: usize) -> Option<f64> {
        let own = self.influence(x) as f64;
        let mut alters: Vec<f64> = (0..self.n())
            .filter(|&j| self.a[x][j])
            .map(|j| self.influence(j) as f64)
            .collect();
        if own == 0.0 || alters.is_empty() {
            return None;
        }
        alters.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let m = alters.len();
        let median = if m % 2 == 1 {
            alters[m / 2]
        } else {
            0.5 * (alters[m / 2 - 1] + alters[m / 2])
        };
        Some(median / own)
    }

    /// Two-pass Pearson correlation over every ordered pair `(i, j)` with
    /// `a[i][j]`, using total degrees at both ends.
    pub fn assortativity(&self) -> Option<f64> {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if self.a[i][j] {
                    xs.push(self.out_degree(i) as f64);
                    ys.push(self.out_degree(j) as f64);
                }
            }
        }
        let m = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / m;
        let my = ys.iter().sum::<f64>() / m;
        let (mut cov, mut vx, mut vy) = (0.0, 0.0, 0.0);
        for (x, y) in xs.iter().zip(&ys) {
            cov += (x - mx) * (y - my);
            vx += (x - mx) * (x - mx);
            vy += (y - my) * (y - my);
        }
        if vx == 0.0 || vy == 0.0 {
            return None;
        }
        Some(cov / (vx * vy).sqrt())
    }

    /// Triangle counting over all neighbour pairs of each node.
    pub fn avg_clustering(&self) -> f64 {
        let n = self.n();
        let mut total = 0.0;
        for i in 0..n {
            let nbrs: Vec<usize> = (0..n).filter(|&j| self.a[i][j]).collect();
            let k = nbrs.len();
            if k < 2 {
                continue;
            }
            let mut links = 0usize;
            for (p, &u) in nbrs.iter().enumerate() {
                for &v in &nbrs[p + 1..] {
                    if self.a[u][v] {
                        links += 1;
                    }
                }
            }
            total += links as f64 / (k * (k - 1) / 2) as f64;
        }
        total / n as f64
    }
}

/// A random graph on `n` nodes with exactly `round(density * pairs)` edges
/// (at least one), chosen uniformly among all node pairs (ordered pairs when
/// directed).
pub fn random_dense(n: usize, density: f64, directed: bool, rng: &mut ChaCha8Rng) -> Dense {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| if directed { i != j } else { i < j })
        .collect();
    let m = ((density * pairs.len() as f64).round() as usize).clamp(1, pairs.len());
    let mut a = vec![vec![false; n]; n];
    for idx in index::sample(rng, pairs.len(), m) {
        let (i, j) = pairs[idx];
        a[i][j] = true;
        if !directed {
            a[j][i] = true;
        }
    }
    Dense { directed, a }
}

/// The `i`-th graph of a seeded family: `N` in `[5, 50]`, density in
/// `[0.05, 0.5]`.
pub fn seeded_dense(seed: u64, directed: bool) -> Dense {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(5..=50);
    let density = rng.gen_range(0.05..=0.5);
    random_dense(n, density, directed, &mut rng)
}

/// Relative closeness, treating two values that are both within `1e-15` of
/// zero as equal.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs());
    scale < 1e-15 || (a - b).abs() <= tol * scale
}

pub fn ring(n: usize, half: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for s in 1..=half {
            edges.push((i as NodeId, ((i + s) % n) as NodeId));
        }
    }
    Graph::from_edges(n, false, edges).expect("ring")
}
