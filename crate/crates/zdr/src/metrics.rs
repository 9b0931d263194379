//! Structural graph measurements: diameter, end vertices, cycle core, and
//! exact clique number.

use serde::Serialize;

use crate::graph::Graph;
use crate::{Error, Result};

/// Bitset-backed computations cap the vertex count.
const MAX_METRIC_VERTICES: usize = 64;

/// Diameter of a graph; the infinite marker is reserved for disconnected
/// inputs, which [`metrics`] rejects instead of returning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Diameter {
    Finite(usize),
    #[serde(serialize_with = "serialize_infinite")]
    Infinite,
}

fn serialize_infinite<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("infinite")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub diameter: Diameter,
    /// Labels of the degree-1 vertices, in vertex order.
    pub end_vertices: Vec<String>,
    /// Labels of the vertices lying on at least one cycle, in vertex order.
    pub core: Vec<String>,
    pub clique_number: usize,
}

/// Measures a connected graph. Disconnected input is rejected with a witness
/// naming two mutually unreachable vertices.
pub fn metrics(g: &Graph) -> Result<GraphMetrics> {
    g.check_connected()?;
    let n = g.vertex_count();
    if n > MAX_METRIC_VERTICES {
        return Err(Error::TooLarge {
            got: n,
            limit: MAX_METRIC_VERTICES,
        });
    }
    let diameter = Diameter::Finite(
        (0..n)
            .map(|v| g.distances(v).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0),
    );
    let end_vertices = (0..n)
        .filter(|&v| g.degree(v) == 1)
        .map(|v| g.label(v).to_string())
        .collect();
    let core = core_vertices(g)
        .into_iter()
        .map(|v| g.label(v).to_string())
        .collect();
    Ok(GraphMetrics {
        diameter,
        end_vertices,
        core,
        clique_number: clique_number(g),
    })
}

/// Vertices lying on at least one cycle: exactly those incident to some
/// non-bridge edge.
pub fn core_vertices(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut on_cycle = vec![false; n];
    for (u, v) in g.edges() {
        if !is_bridge(g, u, v) {
            on_cycle[u] = true;
            on_cycle[v] = true;
        }
    }
    (0..n).filter(|&v| on_cycle[v]).collect()
}

/// An edge is a bridge when removing it separates its endpoints. Edges on a
/// cycle are exactly the non-bridges.
pub fn is_bridge(g: &Graph, u: usize, v: usize) -> bool {
    // BFS from u avoiding the edge (u, v).
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[u] = true;
    queue.push_back(u);
    while let Some(w) = queue.pop_front() {
        for x in g.neighbors(w) {
            if w == u && x == v || w == v && x == u {
                continue;
            }
            if !seen[x] {
                if x == v {
                    return false;
                }
                seen[x] = true;
                queue.push_back(x);
            }
        }
    }
    true
}

/// Exact maximum clique size by branch and bound over candidate bitsets.
pub fn clique_number(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    assert!(n <= MAX_METRIC_VERTICES, "clique search uses 64-bit masks");
    let mut adj = vec![0u64; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut best = 0;
    let all = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
    extend_clique(&adj, all, 0, &mut best);
    best
}

fn extend_clique(adj: &[u64], candidates: u64, size: usize, best: &mut usize) {
    if size + candidates.count_ones() as usize <= *best {
        return;
    }
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    let mut rest = candidates;
    while rest != 0 {
        if size + rest.count_ones() as usize <= *best {
            return;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        extend_clique(adj, rest & adj[v], size + 1, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gamma_n, m_nk};
    use crate::graph::{complete_bipartite, complete_graph, Graph};

    #[test]
    fn measures_subset_graph() {
        let m = metrics(&gamma_n(4).unwrap()).unwrap();
        assert_eq!(m.diameter, Diameter::Finite(3));
        assert_eq!(m.end_vertices.len(), 4);
        assert_eq!(m.clique_number, 4);
        // Everything except the four end vertices lies on a triangle.
        assert_eq!(m.core.len(), 10);
    }

    #[test]
    fn measures_complete_graph() {
        let m = metrics(&complete_graph(3).unwrap()).unwrap();
        assert_eq!(m.diameter, Diameter::Finite(1));
        assert!(m.end_vertices.is_empty());
        assert_eq!(m.core, vec!["a1", "a2", "a3"]);
        assert_eq!(m.clique_number, 3);
    }

    #[test]
    fn path_has_empty_core() {
        let p3 = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let m = metrics(&p3).unwrap();
        assert_eq!(m.diameter, Diameter::Finite(2));
        assert_eq!(m.end_vertices, vec!["a", "c"]);
        assert!(m.core.is_empty());
        assert_eq!(m.clique_number, 2);
    }

    #[test]
    fn end_vertices_and_core_are_disjoint() {
        for g in [
            m_nk(4, 3).unwrap(),
            gamma_n(4).unwrap(),
            m_nk(5, 2).unwrap(),
        ] {
            let m = metrics(&g).unwrap();
            assert!(m.end_vertices.iter().all(|v| !m.core.contains(v)));
        }
    }

    #[test]
    fn bridge_endpoints_can_still_lie_on_cycles() {
        // Two triangles joined by a bridge: all six vertices are core, the
        // bridge is the only non-cycle edge.
        let g = Graph::new(
            &["a", "b", "c", "d", "e", "f"],
            &[
                ("a", "b"),
                ("a", "c"),
                ("b", "c"),
                ("d", "e"),
                ("d", "f"),
                ("e", "f"),
                ("c", "d"),
            ],
        )
        .unwrap();
        assert!(is_bridge(
            &g,
            g.vertex("c").unwrap(),
            g.vertex("d").unwrap()
        ));
        assert!(!is_bridge(
            &g,
            g.vertex("a").unwrap(),
            g.vertex("b").unwrap()
        ));
        assert_eq!(core_vertices(&g).len(), 6);

        // A degree-2 vertex between the triangles is not on any cycle.
        let h = Graph::new(
            &["a", "b", "c", "m", "d", "e", "f"],
            &[
                ("a", "b"),
                ("a", "c"),
                ("b", "c"),
                ("d", "e"),
                ("d", "f"),
                ("e", "f"),
                ("c", "m"),
                ("m", "d"),
            ],
        )
        .unwrap();
        let m = metrics(&h).unwrap();
        assert!(!m.core.contains(&"m".to_string()));
        assert!(!m.end_vertices.contains(&"m".to_string()));
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&complete_graph(6).unwrap()), 6);
        assert_eq!(clique_number(&complete_bipartite(3, 3).unwrap()), 2);
        assert_eq!(clique_number(&gamma_n(5).unwrap()), 5);
    }

    #[test]
    fn rejects_disconnected_input() {
        let g = Graph::new(&["a", "b"], &[]).unwrap();
        assert!(matches!(metrics(&g), Err(crate::Error::Disconnected(_, _))));
    }
}
