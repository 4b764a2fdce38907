//! Immutable simple graphs in compressed adjacency form, plus edge-list
//! ingestion and canonical emission.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type NodeId = u32;

/// Which adjacency of a node to look at. For degree sequences this doubles as
/// the degree mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Undirected,
    Out,
    In,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Undirected => "undirected",
            Direction::Out => "out",
            Direction::In => "in",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Adjacency {
    /// Builds sorted adjacency lists from `(source, target)` arcs.
    fn from_arcs(node_count: usize, arcs: impl Iterator<Item = (NodeId, NodeId)> + Clone) -> Self {
        let mut offsets = vec![0usize; node_count + 1];
        for (s, _) in arcs.clone() {
            offsets[s as usize + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0 as NodeId; offsets[node_count]];
        for (s, t) in arcs {
            let slot = &mut cursor[s as usize];
            targets[*slot] = t;
            *slot += 1;
        }
        for i in 0..node_count {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Adjacency { offsets, targets }
    }

    #[inline]
    fn list(&self, node: usize) -> &[NodeId] {
        &self.targets[self.offsets[node]..self.offsets[node + 1]]
    }

    #[inline]
    fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }
}

/// A simple graph (no self-loops, no parallel edges) on dense node ids
/// `0..N`. Neighbor lists are sorted ascending.
///
/// Equality compares structure only; ingestion labels are ignored.
#[derive(Clone)]
pub struct Graph {
    directed: bool,
    edge_count: usize,
    /// Neighbor lists (undirected) or out-neighbor lists (directed).
    out: Adjacency,
    /// In-neighbor lists, directed graphs only.
    inc: Option<Adjacency>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.directed == other.directed
            && self.edge_count == other.edge_count
            && self.out == other.out
            && self.inc == other.inc
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("directed", &self.directed)
            .field("nodes", &self.node_count())
            .field("edges", &self.edge_count)
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `node_count` nodes. Self-loops are dropped and
    /// duplicate edges collapsed (for undirected graphs `(u, v)` and `(v, u)`
    /// are the same edge).
    pub fn from_edges<I>(node_count: usize, directed: bool, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        if node_count > NodeId::MAX as usize {
            return Err(Error::usage(format!("{node_count} nodes exceeds the id range")));
        }
        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u as usize >= node_count || v as usize >= node_count {
                return Err(Error::usage(format!(
                    "edge ({u}, {v}) references a node outside 0..{node_count}"
                )));
            }
            if u == v {
                continue;
            }
            pairs.push(if directed || u < v { (u, v) } else { (v, u) });
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_canonical_pairs(node_count, directed, &pairs))
    }

    /// `pairs` must be sorted, deduplicated, loop-free, and `u < v` when
    /// undirected.
    fn from_canonical_pairs(node_count: usize, directed: bool, pairs: &[(NodeId, NodeId)]) -> Graph {
        if directed {
            let out = Adjacency::from_arcs(node_count, pairs.iter().copied());
            let inc = Adjacency::from_arcs(node_count, pairs.iter().map(|&(u, v)| (v, u)));
            Graph {
                directed,
                edge_count: pairs.len(),
                out,
                inc: Some(inc),
                labels: None,
            }
        } else {
            let both = pairs.iter().flat_map(|&(u, v)| [(u, v), (v, u)]);
            Graph {
                directed,
                edge_count: pairs.len(),
                out: Adjacency::from_arcs(node_count, both),
                inc: None,
                labels: None,
            }
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_count(&self) -> usize {
        self.out.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted adjacency of `node` in the requested direction.
    ///
    /// On an undirected graph `Out` and `In` are the same as `Undirected`.
    /// Asking a directed graph for `Undirected` adjacency is a usage error.
    pub fn neighbors(&self, node: NodeId, direction: Direction) -> Result<&[NodeId]> {
        self.check_node(node)?;
        match (self.directed, direction) {
            (true, Direction::Undirected) => Err(Error::usage(
                "undirected adjacency requested on a directed graph",
            )),
            (true, Direction::In) => Ok(self.in_list(node as usize)),
            _ => Ok(self.out.list(node as usize)),
        }
    }

    /// Degree sequence for `mode`: `Undirected` on undirected graphs, `In` or
    /// `Out` on directed ones.
    pub fn degree_sequence(&self, mode: Direction) -> Result<DegreeSequence> {
        let adjacency = match (self.directed, mode) {
            (false, Direction::Undirected) | (true, Direction::Out) => &self.out,
            (true, Direction::In) => self.inc.as_ref().expect("directed graph has in-lists"),
            (false, _) => {
                return Err(Error::usage(format!(
                    "{mode}-degrees requested on an undirected graph"
                )))
            }
            (true, Direction::Undirected) => {
                return Err(Error::usage("undirected degrees requested on a directed graph"))
            }
        };
        let values = (0..self.node_count()).map(|v| adjacency.degree(v)).collect();
        Ok(DegreeSequence { mode, values })
    }

    /// The degree notion that measures influence: plain degree when
    /// undirected, in-degree when directed.
    pub fn influence_mode(&self) -> Direction {
        if self.directed {
            Direction::In
        } else {
            Direction::Undirected
        }
    }

    /// The adjacency from which a node names its alters: neighbors when
    /// undirected, out-neighbors (people the node follows) when directed.
    pub fn alter_direction(&self) -> Direction {
        if self.directed {
            Direction::Out
        } else {
            Direction::Undirected
        }
    }

    /// Label of `node` as it appeared in the ingested edge list, or the
    /// numeric id for generated graphs.
    pub fn label(&self, node: NodeId) -> Cow<'_, str> {
        match &self.labels {
            Some(labels) => Cow::Borrowed(labels[node as usize].as_str()),
            None => Cow::Owned(node.to_string()),
        }
    }

    /// Id of the node that was ingested under `label`.
    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        match &self.labels {
            Some(labels) => labels.iter().position(|l| l == label).map(|i| i as NodeId),
            None => label
                .parse::<NodeId>()
                .ok()
                .filter(|&id| (id as usize) < self.node_count()),
        }
    }

    /// Iterates edges in canonical order: ascending `(u, v)`, with `u < v`
    /// for undirected graphs.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        let directed = self.directed;
        (0..self.node_count()).flat_map(move |u| {
            self.out
                .list(u)
                .iter()
                .filter(move |&&v| directed || (u as NodeId) < v)
                .map(move |&v| (u as NodeId, v))
        })
    }

    #[inline]
    pub(crate) fn out_list(&self, node: usize) -> &[NodeId] {
        self.out.list(node)
    }

    #[inline]
    pub(crate) fn in_list(&self, node: usize) -> &[NodeId] {
        match &self.inc {
            Some(inc) => inc.list(node),
            None => self.out.list(node),
        }
    }

    /// Degree in the influence sense (see [`Graph::influence_mode`]).
    #[inline]
    pub(crate) fn influence_degree(&self, node: usize) -> usize {
        self.in_list(node).len()
    }

    fn check_node(&self, node: NodeId) -> Result<()> {
        if (node as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "node {node} out of range 0..{}",
                self.node_count()
            )))
        }
    }
}

/// Per-node degree counts in a given mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    pub mode: Direction,
    pub values: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(mode: Direction, values: Vec<usize>) -> Self {
        DegreeSequence { mode, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.values.iter().map(|&k| k as u64).sum()
    }
}

/// Parses a whitespace-separated edge list (one `u v` pair per line, `#`
/// comments, blank lines ignored) into a simple graph.
///
/// Labels are mapped to dense ids in sorted order: numerically when every
/// label is an integer, lexicographically otherwise. Self-loops are dropped
/// before labels are collected, so a label that only occurs on self-loops
/// does not become a node.
pub fn load_edge_list<R: BufRead>(source: R, directed: bool) -> Result<Graph> {
    let mut raw: Vec<(String, String)> = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(u), Some(v), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: line_no,
                message: format!(
                    "expected exactly two node labels, found {}",
                    trimmed.split_whitespace().count()
                ),
            });
        };
        if u != v {
            raw.push((u.to_owned(), v.to_owned()));
        }
    }
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }

    let (owned_labels, edges): (Vec<String>, Vec<(NodeId, NodeId)>) = if raw
        .iter()
        .all(|(u, v)| u.parse::<i128>().is_ok() && v.parse::<i128>().is_ok())
    {
        // Keyed by value so "01" and "1" name the same node.
        let value = |l: &str| l.parse::<i128>().expect("checked numeric");
        let mut by_value: BTreeMap<i128, &str> = BTreeMap::new();
        for (u, v) in &raw {
            by_value.entry(value(u)).or_insert(u);
            by_value.entry(value(v)).or_insert(v);
        }
        let index: HashMap<i128, NodeId> = by_value
            .keys()
            .enumerate()
            .map(|(i, &k)| (k, i as NodeId))
            .collect();
        let edges = raw
            .iter()
            .map(|(u, v)| (index[&value(u)], index[&value(v)]))
            .collect();
        (by_value.values().map(|l| (*l).to_owned()).collect(), edges)
    } else {
        let sorted: BTreeSet<&str> = raw.iter().flat_map(|(u, v)| [u.as_str(), v.as_str()]).collect();
        let index: HashMap<&str, NodeId> = sorted
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as NodeId))
            .collect();
        let edges = raw
            .iter()
            .map(|(u, v)| (index[u.as_str()], index[v.as_str()]))
            .collect();
        (sorted.into_iter().map(str::to_owned).collect(), edges)
    };
    let mut graph = Graph::from_edges(owned_labels.len(), directed, edges)?;
    graph.labels = Some(owned_labels);
    Ok(graph)
}

/// Writes the canonical edge list: a `#` header with N, E and directedness,
/// then one `u v` line per edge in ascending id order.
pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(
        out,
        "# nodes={} edges={} directed={}",
        graph.node_count(),
        graph.edge_count(),
        graph.is_directed()
    )?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
