//! Fast necessary conditions for realizability.
//!
//! A FAIL verdict certifies that no commutative semigroup realizes the
//! graph, so enumeration can be skipped. PASS is inconclusive: graphs exist
//! that satisfy all four conditions yet have no realization.

use serde::Serialize;

use crate::graph::Graph;
use crate::metrics::{core_vertices, is_bridge};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScreenStatus {
    Pass,
    Fail,
}

/// One condition's outcome; FAIL always carries a witness naming concrete
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScreenVerdict {
    pub status: ScreenStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub vertices: Vec<String>,
}

impl ScreenVerdict {
    fn pass() -> ScreenVerdict {
        ScreenVerdict {
            status: ScreenStatus::Pass,
            witness: None,
            vertices: Vec::new(),
        }
    }

    fn fail(witness: String, vertices: Vec<String>) -> ScreenVerdict {
        ScreenVerdict {
            status: ScreenStatus::Fail,
            witness: Some(witness),
            vertices,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == ScreenStatus::Pass
    }
}

/// Outcomes of the four necessary conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScreenReport {
    /// Every pair of vertices is at distance at most 3.
    pub diameter_le_3: ScreenVerdict,
    /// Every edge lying on a cycle lies on a triangle or a square.
    pub core_triangles_squares: ScreenVerdict,
    /// When the graph has a cycle, every vertex is an end vertex or lies on
    /// a cycle.
    pub end_or_core_dichotomy: ScreenVerdict,
    /// For non-adjacent `x`, `y` some `z` has
    /// `N(x) union N(y)  subset of  N(z) union {z}`.
    pub neighborhood_domination: ScreenVerdict,
}

impl ScreenReport {
    pub fn all_pass(&self) -> bool {
        self.diameter_le_3.is_pass()
            && self.core_triangles_squares.is_pass()
            && self.end_or_core_dichotomy.is_pass()
            && self.neighborhood_domination.is_pass()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Screens a connected graph against the four necessary conditions.
pub fn screen(g: &Graph) -> Result<ScreenReport> {
    g.check_connected()?;
    Ok(ScreenReport {
        diameter_le_3: check_diameter(g),
        core_triangles_squares: check_core_cycles(g),
        end_or_core_dichotomy: check_dichotomy(g),
        neighborhood_domination: check_domination(g),
    })
}

fn check_diameter(g: &Graph) -> ScreenVerdict {
    for u in 0..g.vertex_count() {
        let dist = g.distances(u);
        for (v, &d) in dist.iter().enumerate() {
            if d != usize::MAX && d > 3 {
                return ScreenVerdict::fail(
                    format!(
                        "vertices `{}` and `{}` are at distance {d}",
                        g.label(u),
                        g.label(v)
                    ),
                    vec![g.label(u).to_string(), g.label(v).to_string()],
                );
            }
        }
    }
    ScreenVerdict::pass()
}

/// Cycle edges must each lie on a 3-cycle or 4-cycle. Acyclic graphs pass
/// vacuously.
fn check_core_cycles(g: &Graph) -> ScreenVerdict {
    for (u, v) in g.edges() {
        if is_bridge(g, u, v) {
            continue;
        }
        if on_triangle(g, u, v) || on_square(g, u, v) {
            continue;
        }
        return ScreenVerdict::fail(
            format!(
                "cycle edge `{}` -- `{}` lies on no triangle or square",
                g.label(u),
                g.label(v)
            ),
            vec![g.label(u).to_string(), g.label(v).to_string()],
        );
    }
    ScreenVerdict::pass()
}

fn on_triangle(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u).any(|w| w != v && g.has_edge(w, v))
}

fn on_square(g: &Graph, u: usize, v: usize) -> bool {
    // A 4-cycle u - v - t - w - u with all four vertices distinct.
    for t in g.neighbors(v) {
        if t == u {
            continue;
        }
        for w in g.neighbors(u) {
            if w != v && w != t && g.has_edge(t, w) {
                return true;
            }
        }
    }
    false
}

/// In a graph containing a cycle, every vertex must be an end vertex or lie
/// on a cycle. Acyclic graphs pass vacuously.
fn check_dichotomy(g: &Graph) -> ScreenVerdict {
    let core = core_vertices(g);
    if core.is_empty() {
        return ScreenVerdict::pass();
    }
    let on_cycle: std::collections::BTreeSet<usize> = core.into_iter().collect();
    for v in 0..g.vertex_count() {
        if g.degree(v) != 1 && !on_cycle.contains(&v) {
            return ScreenVerdict::fail(
                format!(
                    "vertex `{}` is neither an end vertex nor on a cycle",
                    g.label(v)
                ),
                vec![g.label(v).to_string()],
            );
        }
    }
    ScreenVerdict::pass()
}

fn check_domination(g: &Graph) -> ScreenVerdict {
    let n = g.vertex_count();
    for x in 0..n {
        for y in x + 1..n {
            if g.has_edge(x, y) {
                continue;
            }
            let mut needed: Vec<usize> = g.neighbors(x).chain(g.neighbors(y)).collect();
            needed.sort_unstable();
            needed.dedup();
            let dominated = (0..n).any(|z| needed.iter().all(|&w| w == z || g.has_edge(z, w)));
            if !dominated {
                return ScreenVerdict::fail(
                    format!(
                        "no vertex dominates the joint neighborhood of non-adjacent `{}` and `{}`",
                        g.label(x),
                        g.label(y)
                    ),
                    vec![g.label(x).to_string(), g.label(y).to_string()],
                );
            }
        }
    }
    ScreenVerdict::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::screener_fail_corpus;
    use crate::families::{figure, m_nk};
    use crate::graph::complete_graph;

    #[test]
    fn passes_known_realizable_graphs() {
        for g in [
            complete_graph(3).unwrap(),
            m_nk(3, 2).unwrap(),
            crate::families::gamma_n(3).unwrap(),
            crate::families::glued_triangle_square(),
        ] {
            assert!(screen(&g).unwrap().all_pass());
        }
    }

    #[test]
    fn passing_is_not_sufficient() {
        // This graph passes all four conditions yet admits no realization.
        let f = figure("3.5").unwrap();
        assert!(screen(&f).unwrap().all_pass());
    }

    #[test]
    fn fail_corpus_trips_the_expected_condition() {
        for (condition, g) in screener_fail_corpus() {
            let report = screen(&g).unwrap();
            let verdict = match condition {
                "diameter_le_3" => &report.diameter_le_3,
                "core_triangles_squares" => &report.core_triangles_squares,
                "end_or_core_dichotomy" => &report.end_or_core_dichotomy,
                "neighborhood_domination" => &report.neighborhood_domination,
                other => panic!("unknown condition {other}"),
            };
            assert!(!verdict.is_pass(), "{condition} should fail");
            assert!(verdict.witness.is_some());
            assert!(!verdict.vertices.is_empty());
        }
    }

    #[test]
    fn distance_4_witness_names_the_ends() {
        let (_, g) = screener_fail_corpus().remove(0);
        let report = screen(&g).unwrap();
        let v = &report.diameter_le_3;
        assert_eq!(v.vertices, vec!["x1", "x2"]);
        assert!(v.witness.as_deref().unwrap().contains("distance 4"));
    }

    #[test]
    fn acyclic_graphs_pass_the_cycle_conditions() {
        let p4 =
            crate::graph::Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")])
                .unwrap();
        let report = screen(&p4).unwrap();
        assert!(report.core_triangles_squares.is_pass());
        assert!(report.end_or_core_dichotomy.is_pass());
    }

    #[test]
    fn rejects_disconnected_input() {
        let g = crate::graph::Graph::new(&["a", "b"], &[]).unwrap();
        assert!(screen(&g).is_err());
    }
}
