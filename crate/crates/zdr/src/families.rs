//! Parameterized graph families used throughout the search and verification
//! layers.
//!
//! Vertex order is fixed per family (core vertices first, attached blocks in
//! index order) so that generated graphs, fixture tables, and enumeration
//! reports stay byte-stable.

use crate::graph::{attach_end_vertices, complete_bipartite, complete_graph, Graph};
use crate::{Error, Result};

/// Practical cap on the subset-graph parameter: the graph has `2^n - 2`
/// vertices.
const MAX_GAMMA_N: usize = 16;

/// Graph on the nonempty proper subsets of `{1..n}`, with two subsets
/// adjacent exactly when they are disjoint.
///
/// Vertices are ordered by subset bitmask and labeled `x` followed by the
/// member digits, e.g. `x13` for `{1,3}`.
pub fn gamma_n(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParam("subset graph needs n >= 2".into()));
    }
    if n > MAX_GAMMA_N {
        return Err(Error::InvalidParam(format!(
            "subset graph on {n} symbols would have 2^{n} - 2 vertices; maximum n is {MAX_GAMMA_N}"
        )));
    }
    let masks: Vec<usize> = (1..(1usize << n) - 1).collect();
    let labels: Vec<String> = masks.iter().map(|&m| subset_label(m)).collect();
    let mut edges = Vec::new();
    for (i, &b) in masks.iter().enumerate() {
        for (j, &c) in masks.iter().enumerate().skip(i + 1) {
            if b & c == 0 {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Graph::new(&labels, &edges)
}

pub(crate) fn subset_label(mask: usize) -> String {
    let mut s = String::from("x");
    for bit in 0..usize::BITS {
        if mask >> bit & 1 == 1 {
            s.push_str(&(bit + 1).to_string());
        }
    }
    s
}

/// Expected edge count of [`gamma_n`], computed from the closed form
/// `sum_{i=1}^{n-1} C(n,i) 2^(n-1-i) - 2^(n-1) + 1` rather than from the
/// generated graph.
pub fn gamma_n_edge_formula(n: usize) -> usize {
    let mut sum: usize = 0;
    for i in 1..n {
        sum += binomial(n, i) * (1usize << (n - 1 - i));
    }
    sum - (1usize << (n - 1)) + 1
}

fn binomial(n: usize, k: usize) -> usize {
    let mut num = 1usize;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

/// Complete graph `a1..an` with end vertices `x1..xk` attached to the first
/// `k` core vertices (`k <= n`).
pub fn m_nk(n: usize, k: usize) -> Result<Graph> {
    if k > n {
        return Err(Error::InvalidParam(format!(
            "cannot attach {k} end vertices to distinct vertices of a {n}-vertex complete graph"
        )));
    }
    let core = complete_graph(n)?;
    let hosts: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    let host_refs: Vec<&str> = hosts.iter().map(|s| s.as_str()).collect();
    attach_end_vertices(&core, &host_refs)
}

/// Complete graph `a1..an` with a block `X_i` hung on each `a_i`.
///
/// Block vertices are adjacent to their own `a_i` and carry the block's
/// internal edges verbatim; there are no other block edges. Blocks are
/// relabeled `x{i}_{j}` in their own vertex order. The first four blocks
/// must be nonempty; later blocks may be empty.
pub fn l_n_family(n: usize, x_specs: &[Graph]) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidParam(
            "decorated complete graph needs n >= 4".into(),
        ));
    }
    if x_specs.len() != n {
        return Err(Error::InvalidParam(format!(
            "expected {n} attached blocks, got {}",
            x_specs.len()
        )));
    }
    for (i, x) in x_specs.iter().enumerate().take(4) {
        if x.vertex_count() == 0 {
            return Err(Error::InvalidParam(format!(
                "attached block {} must be nonempty",
                i + 1
            )));
        }
    }
    let mut labels: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((format!("a{}", i + 1), format!("a{}", j + 1)));
        }
    }
    for (i, x) in x_specs.iter().enumerate() {
        let block: Vec<String> = (1..=x.vertex_count())
            .map(|j| format!("x{}_{}", i + 1, j))
            .collect();
        for b in &block {
            labels.push(b.clone());
            edges.push((format!("a{}", i + 1), b.clone()));
        }
        for (u, v) in x.edges() {
            edges.push((block[u].clone(), block[v].clone()));
        }
    }
    Graph::new(&labels, &edges)
}

/// Complete bipartite graph `a1..am | b1..bn` with a block `X` hung on `a1`
/// and a block `Y` hung on `b1`, both nonempty.
///
/// Block vertices are adjacent to their host only, plus the block's internal
/// edges; they are relabeled `x{j}` and `y{j}`.
pub fn h_mn_family(m: usize, n: usize, x_spec: &Graph, y_spec: &Graph) -> Result<Graph> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParam(
            "decorated complete bipartite graph needs both parts of size >= 2".into(),
        ));
    }
    if x_spec.vertex_count() == 0 || y_spec.vertex_count() == 0 {
        return Err(Error::InvalidParam(
            "both attached blocks must be nonempty".into(),
        ));
    }
    let base = complete_bipartite(m, n)?;
    let mut labels: Vec<String> = base.labels().to_vec();
    let mut edges: Vec<(String, String)> = base
        .edges()
        .iter()
        .map(|&(u, v)| (base.label(u).to_string(), base.label(v).to_string()))
        .collect();
    for (host, spec, prefix) in [("a1", x_spec, "x"), ("b1", y_spec, "y")] {
        let block: Vec<String> = (1..=spec.vertex_count())
            .map(|j| format!("{prefix}{j}"))
            .collect();
        for b in &block {
            labels.push(b.clone());
            edges.push((host.to_string(), b.clone()));
        }
        for (u, v) in spec.edges() {
            edges.push((block[u].clone(), block[v].clone()));
        }
    }
    Graph::new(&labels, &edges)
}

/// Single vertex, used as the trivial attached block.
pub fn singleton_block() -> Graph {
    Graph::new(&["1"], &[]).expect("single vertex graph is valid")
}

/// Triangle and a square sharing one edge: triangle `a1 a2 a3` plus the
/// 4-cycle `a1 x1 x2 a2`. Five vertices, six edges.
pub fn glued_triangle_square() -> Graph {
    Graph::new(
        &["a1", "a2", "a3", "x1", "x2"],
        &[
            ("a1", "a2"),
            ("a1", "a3"),
            ("a2", "a3"),
            ("a1", "x1"),
            ("a2", "x2"),
            ("x1", "x2"),
        ],
    )
    .expect("fixed graph is valid")
}

/// Named small graphs exposed by the command-line `generate fig` family.
///
/// - `2.4`: [`glued_triangle_square`]
/// - `3.1`: triangle with an end vertex on each corner (`m_nk(3, 3)`)
/// - `3.2`: 4-clique with an end vertex on each corner (`m_nk(4, 4)`)
/// - `3.3`: `3.2` plus `u1` adjacent to `a1, a2` and `u2` adjacent to `a3, a4`
/// - `3.4`: `3.2` plus `u1` adjacent to `a1, a2`
/// - `3.5`: 4-cycle with one end vertex on each of two adjacent corners
///   (`h_mn_family(2, 2)` with singleton blocks)
pub fn figure(name: &str) -> Result<Graph> {
    match name {
        "2.4" => Ok(glued_triangle_square()),
        "3.1" => m_nk(3, 3),
        "3.2" => m_nk(4, 4),
        "3.3" | "3.4" => {
            let base = m_nk(4, 4)?;
            let mut labels: Vec<String> = base.labels().to_vec();
            let mut edges: Vec<(String, String)> = base
                .edges()
                .iter()
                .map(|&(u, v)| (base.label(u).to_string(), base.label(v).to_string()))
                .collect();
            labels.push("u1".into());
            edges.push(("a1".into(), "u1".into()));
            edges.push(("a2".into(), "u1".into()));
            if name == "3.3" {
                labels.push("u2".into());
                edges.push(("a3".into(), "u2".into()));
                edges.push(("a4".into(), "u2".into()));
            }
            Graph::new(&labels, &edges)
        }
        "3.5" => h_mn_family(2, 2, &singleton_block(), &singleton_block()),
        _ => Err(Error::InvalidParam(format!(
            "unknown figure `{name}`; known figures: 2.4, 3.1, 3.2, 3.3, 3.4, 3.5"
        ))),
    }
}
