//! Finite simple undirected graphs with string-labeled vertices.
//!
//! Vertex order is part of a graph's identity: generated families fix it, and
//! multiplication tables index elements by it. Two graphs compare equal only
//! when labels, order, and adjacency all agree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite simple undirected graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.labels.clone(),
            edges: self
                .edges()
                .iter()
                .map(|&(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Graph, D::Error> {
        let doc = GraphJson::deserialize(d)?;
        Graph::new(&doc.vertices, &doc.edges).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Builds a graph from vertex labels and label-pair edges.
    ///
    /// Rejects duplicate labels, unknown endpoints, self-loops, and edges
    /// listed twice (in either orientation).
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph> {
        let labels: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut adj = vec![BTreeSet::new(); labels.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index.get(a).ok_or_else(|| Error::UnknownVertex(a.into()))?;
            let j = *index.get(b).ok_or_else(|| Error::UnknownVertex(b.into()))?;
            if i == j {
                return Err(Error::SelfLoop(a.into()));
            }
            if !adj[i].insert(j) {
                return Err(Error::DuplicateEdge(a.into(), b.into()));
            }
            adj[j].insert(i);
        }
        Ok(Graph { labels, index, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.labels.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.labels.len()];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Ok for connected graphs. Err names a concrete unreachable pair.
    pub fn check_connected(&self) -> Result<()> {
        if self.labels.is_empty() {
            return Ok(());
        }
        let dist = self.distances(0);
        match dist.iter().position(|&d| d == usize::MAX) {
            None => Ok(()),
            Some(v) => Err(Error::Disconnected(
                self.labels[0].clone(),
                self.labels[v].clone(),
            )),
        }
    }

    /// The graph with the same labels and every edge `(u, v)` replaced by
    /// `(perm(u), perm(v))`. An automorphism maps a graph to itself.
    pub fn apply_permutation(&self, perm: &crate::iso::Permutation) -> Graph {
        let mut adj = vec![BTreeSet::new(); self.labels.len()];
        for (u, v) in self.edges() {
            let (a, b) = (perm.apply(u), perm.apply(v));
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Graph {
            labels: self.labels.clone(),
            index: self.index.clone(),
            adj,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialization cannot fail")
    }

    /// Parses and validates the `{"vertices": [...], "edges": [[a,b], ...]}`
    /// format. Structural violations are rejected, not repaired.
    pub fn from_json(text: &str) -> Result<Graph> {
        let doc: GraphJson = serde_json::from_str(text)?;
        Graph::new(&doc.vertices, &doc.edges)
    }

    /// Undirected DOT, one node line per vertex and one `--` line per edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for l in &self.labels {
            // Labels are arbitrary strings; quoting keeps the output valid DOT.
            let _ = writeln!(out, "  \"{}\";", l.replace('\"', "\\\""));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                self.labels[u].replace('\"', "\\\""),
                self.labels[v].replace('\"', "\\\"")
            );
        }
        out.push_str("}\n");
        out
    }

    /// Plain-text adjacency listing.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} vertices, {} edges\n",
            self.vertex_count(),
            self.edge_count()
        );
        for u in 0..self.labels.len() {
            let nbrs: Vec<&str> = self.adj[u]
                .iter()
                .map(|&v| self.labels[v].as_str())
                .collect();
            let _ = writeln!(out, "{}: {}", self.labels[u], nbrs.join(" "));
        }
        out
    }
}

/// Complete graph on `n` vertices labeled `a1..an`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParam("complete graph needs n >= 1".into()));
    }
    let labels: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((labels[i].clone(), labels[j].clone()));
        }
    }
    Graph::new(&labels, &edges)
}

/// Complete bipartite graph with parts `a1..am` and `b1..bn`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParam(
            "complete bipartite graph needs both parts nonempty".into(),
        ));
    }
    let mut labels: Vec<String> = (1..=m).map(|i| format!("a{i}")).collect();
    labels.extend((1..=n).map(|j| format!("b{j}")));
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            edges.push((labels[i].clone(), labels[m + j].clone()));
        }
    }
    Graph::new(&labels, &edges)
}

/// Adds one new degree-1 vertex `xk` adjacent to the k-th listed host.
///
/// Hosts must be distinct existing vertices; the generated labels `x1..xk`
/// must not collide with existing labels.
pub fn attach_end_vertices(g: &Graph, hosts: &[&str]) -> Result<Graph> {
    let mut seen = BTreeSet::new();
    for h in hosts {
        if g.vertex(h).is_none() {
            return Err(Error::UnknownVertex((*h).into()));
        }
        if !seen.insert(*h) {
            return Err(Error::InvalidParam(format!(
                "host `{h}` listed more than once; end vertices go on distinct hosts"
            )));
        }
    }
    let mut labels = g.labels.clone();
    let mut edges: Vec<(String, String)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (g.labels[u].clone(), g.labels[v].clone()))
        .collect();
    for (k, h) in hosts.iter().enumerate() {
        let new = format!("x{}", k + 1);
        if g.vertex(&new).is_some() {
            return Err(Error::DuplicateLabel(new));
        }
        labels.push(new.clone());
        edges.push((h.to_string(), new));
    }
    Graph::new(&labels, &edges)
}
