//! Frozen reference objects: the multiplication tables that uniqueness
//! claims compare against, and the small graph corpora that the oracle and
//! screener tests run over.
//!
//! The tables are entered literally and are independently re-checked by the
//! test suite (validation, associativity, induced graph).

use crate::families::m_nk;
use crate::graph::{attach_end_vertices, complete_bipartite, complete_graph, Graph};
use crate::semigroup::MulTable;

fn m32_elements() -> Vec<String> {
    ["0", "a1", "a2", "a3", "x1", "x2"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// Shared entries of the three realizations on the 5-vertex graph
/// `m_nk(3, 2)`: only the squares of `a1` and `a2` vary between classes.
fn m32_base(a1_sq: usize, a2_sq: usize) -> MulTable {
    MulTable::new(
        m32_elements(),
        vec![
            vec![0, 0, 0, 0, 0, 0],
            vec![0, a1_sq, 0, 0, 0, 1],
            vec![0, 0, a2_sq, 0, 2, 0],
            vec![0, 0, 0, 3, 3, 3],
            vec![0, 0, 2, 3, 4, 3],
            vec![0, 1, 0, 3, 3, 5],
        ],
    )
    .expect("fixture shape is valid")
}

/// Realization of `m_nk(3, 2)` with `a1^2 = a2^2 = 0`.
pub fn m32_table_null_squares() -> MulTable {
    m32_base(0, 0)
}

/// Realization of `m_nk(3, 2)` with `a1^2 = 0`, `a2^2 = a2`.
pub fn m32_table_one_idempotent() -> MulTable {
    m32_base(0, 2)
}

/// The relabeled twin of [`m32_table_one_idempotent`]: `a1^2 = a1`,
/// `a2^2 = 0`. Same class under the graph's automorphism swap.
pub fn m32_table_one_idempotent_mirror() -> MulTable {
    m32_base(1, 0)
}

/// Realization of `m_nk(3, 2)` with `a1^2 = a1`, `a2^2 = a2`.
pub fn m32_table_two_idempotents() -> MulTable {
    m32_base(1, 2)
}

/// The unique realization of [`crate::families::glued_triangle_square`].
pub fn glued_triangle_square_table() -> MulTable {
    MulTable::new(
        m32_elements(),
        vec![
            vec![0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1],
            vec![0, 0, 0, 0, 2, 0],
            vec![0, 0, 0, 0, 2, 1],
            vec![0, 0, 2, 2, 4, 0],
            vec![0, 1, 0, 1, 0, 5],
        ],
    )
    .expect("fixture shape is valid")
}

/// All nine connected graphs on two to four vertices, smallest first.
pub fn connected_graphs_up_to_4() -> Vec<Graph> {
    let path = |labels: &[&str]| {
        let edges: Vec<(&str, &str)> = labels.windows(2).map(|w| (w[0], w[1])).collect();
        Graph::new(labels, &edges).expect("path is valid")
    };
    let diamond = Graph::new(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .expect("diamond is valid");
    vec![
        complete_graph(2).expect("valid"),
        path(&["a", "b", "c"]),
        complete_graph(3).expect("valid"),
        path(&["a", "b", "c", "d"]),
        complete_bipartite(1, 3).expect("valid"),
        m_nk(3, 1).expect("valid"),
        complete_bipartite(2, 2).expect("valid"),
        diamond,
        complete_graph(4).expect("valid"),
    ]
}

/// Connected graphs that fail exactly one screening condition each, paired
/// with the condition's name. Every entry must also enumerate to zero
/// realizations.
pub fn screener_fail_corpus() -> Vec<(&'static str, Graph)> {
    // 4-cycle with both end vertices on the same part: distance 4 between
    // the two ends.
    let same_part_ends =
        attach_end_vertices(&complete_bipartite(2, 2).expect("valid"), &["a1", "a2"])
            .expect("valid");
    let c5 = Graph::new(
        &["a", "b", "c", "d", "e"],
        &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
    )
    .expect("valid");
    // Triangle with a 2-path tail: the middle tail vertex is neither an end
    // vertex nor on a cycle.
    let lollipop = Graph::new(
        &["a", "b", "c", "d", "e"],
        &[("a", "b"), ("a", "c"), ("b", "c"), ("c", "d"), ("d", "e")],
    )
    .expect("valid");
    // Two triangles joined by a bridge: no vertex dominates the combined
    // neighborhoods of the far corners.
    let bowtie_bridge = Graph::new(
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
    .expect("valid");
    vec![
        ("diameter_le_3", same_part_ends),
        ("core_triangles_squares", c5),
        ("end_or_core_dichotomy", lollipop),
        ("neighborhood_domination", bowtie_bridge),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    #[test]
    fn corpus_has_nine_distinct_graphs() {
        let corpus = connected_graphs_up_to_4();
        assert_eq!(corpus.len(), 9);
        for g in &corpus {
            assert!(g.vertex_count() >= 2 && g.vertex_count() <= 4);
            g.check_connected().unwrap();
        }
        for (i, g) in corpus.iter().enumerate() {
            for h in corpus.iter().skip(i + 1) {
                assert!(
                    are_isomorphic(g, h).is_none(),
                    "corpus entries must be distinct"
                );
            }
        }
    }

    #[test]
    fn fail_corpus_is_connected() {
        for (_, g) in screener_fail_corpus() {
            g.check_connected().unwrap();
        }
    }
}
