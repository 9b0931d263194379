//! Graph automorphisms and isomorphism by partition refinement plus
//! backtracking.
//!
//! Colors start from degrees and are refined by neighbor-color multisets
//! until stable; the backtracking phase only maps vertices within matching
//! color classes, checking adjacency against every previously mapped vertex,
//! so a completed map is an isomorphism by construction.

use crate::graph::Graph;
use crate::{Error, Result};

/// Maximum vertex count accepted by the search-based operations here.
pub const MAX_VERTICES: usize = 32;

/// A bijection on `0..n` vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n).collect())
    }

    pub fn from_mapping(mapping: Vec<usize>) -> Result<Permutation> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &v in &mapping {
            if v >= n || seen[v] {
                return Err(Error::InvalidParam(format!(
                    "mapping {mapping:?} is not a bijection on 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(mapping))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.0
    }

    /// `self` after `other`: `(self.compose(other)).apply(v) = self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }
}

/// Stable vertex coloring: start from degrees, refine by sorted neighbor
/// color multisets, and renumber colors canonically each round.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.neighbors(v).map(|u| colors[u]).collect();
                nc.sort_unstable();
                (colors[v], nc)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs
            .drain(..)
            .map(|s| sorted.binary_search(&s).unwrap())
            .collect();
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

/// Multiset signature of a coloring, comparable across graphs.
fn color_histogram(colors: &[usize]) -> Vec<(usize, usize)> {
    let mut hist = std::collections::BTreeMap::new();
    for &c in colors {
        *hist.entry(c).or_insert(0usize) += 1;
    }
    hist.into_iter().collect()
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    gc: Vec<usize>,
    hc: Vec<usize>,
    order: Vec<usize>,
    all: bool,
    found: Vec<Permutation>,
}

impl Matcher<'_> {
    fn run(mut self) -> Vec<Permutation> {
        let n = self.g.vertex_count();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(0, &mut map, &mut used);
        self.found
    }

    fn extend(&mut self, depth: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) {
        if !self.all && !self.found.is_empty() {
            return;
        }
        if depth == self.order.len() {
            self.found.push(Permutation(map.clone()));
            return;
        }
        let u = self.order[depth];
        for v in 0..self.h.vertex_count() {
            if used[v] || self.hc[v] != self.gc[u] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&w| self.g.has_edge(u, w) == self.h.has_edge(v, map[w]));
            if !consistent {
                continue;
            }
            map[u] = v;
            used[v] = true;
            self.extend(depth + 1, map, used);
            map[u] = usize::MAX;
            used[v] = false;
        }
    }
}

/// Vertices ordered so small color classes are mapped first.
fn matching_order(colors: &[usize]) -> Vec<usize> {
    let hist = color_histogram(colors);
    let class_size = |c: usize| {
        hist.iter()
            .find(|&&(col, _)| col == c)
            .map(|&(_, n)| n)
            .unwrap()
    };
    let mut order: Vec<usize> = (0..colors.len()).collect();
    order.sort_by_key(|&v| (class_size(colors[v]), colors[v], v));
    order
}

/// The full automorphism group of `g`, identity included.
///
/// Every returned permutation maps the edge set onto itself. Graphs larger
/// than [`MAX_VERTICES`] are rejected.
pub fn automorphisms(g: &Graph) -> Result<Vec<Permutation>> {
    if g.vertex_count() > MAX_VERTICES {
        return Err(Error::TooLarge {
            got: g.vertex_count(),
            limit: MAX_VERTICES,
        });
    }
    let colors = refine_colors(g);
    let order = matching_order(&colors);
    let mut auts = Matcher {
        g,
        h: g,
        gc: colors.clone(),
        hc: colors,
        order,
        all: true,
        found: Vec::new(),
    }
    .run();
    auts.sort();
    Ok(auts)
}

/// One edge-preserving vertex bijection from `g` to `h`, if any exists.
///
/// Deterministic: the lexicographically first map in the refined matching
/// order is returned.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<Permutation> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let gc = refine_colors(g);
    let hc = refine_colors(h);
    if color_histogram(&gc) != color_histogram(&hc) {
        return None;
    }
    let order = matching_order(&gc);
    Matcher {
        g,
        h,
        gc,
        hc,
        order,
        all: false,
        found: Vec::new(),
    }
    .run()
    .into_iter()
    .next()
}
