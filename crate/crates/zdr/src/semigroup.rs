//! Finite commutative multiplication tables with a zero element.
//!
//! Element 0 is always the zero of the semigroup; elements `1..=n` correspond
//! to the vertices of the associated graph in order. Tables are plain data:
//! construction checks shape only, and [`validate`] reports semantic
//! violations instead of repairing them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::iso::Permutation;
use crate::{Error, Result};

/// A commutative multiplication table on `{0, e1, .., en}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulTable {
    /// Labels; index 0 is the zero element.
    pub elements: Vec<String>,
    /// `product[i][j]` is the index of `e_i * e_j`.
    pub product: Vec<Vec<usize>>,
}

/// A semantic violation reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `0 * e` or `e * 0` is not 0.
    ZeroRow { index: usize },
    /// `product[i][j] != product[j][i]`.
    Asymmetric { i: usize, j: usize },
    /// An entry indexes outside the element list.
    OutOfRange { i: usize, j: usize, value: usize },
    /// A nonzero element annihilating no nonzero element.
    NotZeroDivisor { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroRow { index } => {
                write!(f, "product with zero at index {index} is not zero")
            }
            Violation::Asymmetric { i, j } => {
                write!(f, "product is not commutative at ({i}, {j})")
            }
            Violation::OutOfRange { i, j, value } => {
                write!(f, "entry ({i}, {j}) = {value} is out of range")
            }
            Violation::NotZeroDivisor { index } => {
                write!(f, "element at index {index} is not a zero-divisor")
            }
        }
    }
}

/// A concrete failure of associativity: `(xy)z != x(yz)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssocWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl MulTable {
    /// Builds a table, checking only shape: the matrix must be square of the
    /// element count, and labels must be unique and nonempty as a list.
    pub fn new(elements: Vec<String>, product: Vec<Vec<usize>>) -> Result<MulTable> {
        if elements.is_empty() {
            return Err(Error::InvalidTable("element list is empty".into()));
        }
        let mut sorted = elements.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != elements.len() {
            return Err(Error::InvalidTable("duplicate element label".into()));
        }
        let n = elements.len();
        if product.len() != n || product.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!(
                "product matrix must be {n} x {n}"
            )));
        }
        Ok(MulTable { elements, product })
    }

    /// Number of nonzero elements.
    pub fn rank(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.product[i][j]
    }

    /// Row-major matrix bytes; the fixed serialization used for canonical
    /// keys and deterministic ordering. Requires at most 256 elements.
    pub fn serialize_bytes(&self) -> Vec<u8> {
        assert!(
            self.elements.len() <= 256,
            "byte serialization needs <= 256 elements"
        );
        self.product
            .iter()
            .flat_map(|row| row.iter().map(|&v| v as u8))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialization cannot fail")
    }

    /// Parses table JSON and rejects any table whose shape or structural
    /// invariants (zero row, commutativity, closure) fail.
    pub fn from_json(text: &str) -> Result<MulTable> {
        let doc: MulTable = serde_json::from_str(text)?;
        let t = MulTable::new(doc.elements, doc.product)?;
        let structural: Vec<Violation> = validate(&t)
            .into_iter()
            .filter(|v| !matches!(v, Violation::NotZeroDivisor { .. }))
            .collect();
        if let Some(first) = structural.first() {
            return Err(Error::InvalidTable(format!(
                "{first} ({} structural violations)",
                structural.len()
            )));
        }
        Ok(t)
    }

    /// The table with element `i` renamed to `perm(i-1)+1` for nonzero `i`;
    /// zero stays fixed and labels stay in place.
    pub fn relabel(&self, perm: &Permutation) -> MulTable {
        let n = self.rank();
        assert_eq!(
            perm.len(),
            n,
            "permutation size must match nonzero element count"
        );
        let ext = |i: usize| if i == 0 { 0 } else { perm.apply(i - 1) + 1 };
        let mut product = vec![vec![0usize; n + 1]; n + 1];
        for i in 0..=n {
            for j in 0..=n {
                product[ext(i)][ext(j)] = ext(self.product[i][j]);
            }
        }
        MulTable {
            elements: self.elements.clone(),
            product,
        }
    }
}

/// Reports every semantic violation: zero-row, commutativity, closure, and
/// the zero-divisor property, in that order, row-major within each kind.
pub fn validate(t: &MulTable) -> Vec<Violation> {
    let n = t.elements.len();
    let mut out = Vec::new();
    for k in 0..n {
        if t.product[0][k] != 0 || t.product[k][0] != 0 {
            out.push(Violation::ZeroRow { index: k });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if t.product[i][j] != t.product[j][i] {
                out.push(Violation::Asymmetric { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let v = t.product[i][j];
            if v >= n {
                out.push(Violation::OutOfRange { i, j, value: v });
            }
        }
    }
    for i in 1..n {
        if !(1..n).any(|j| t.product[i][j] == 0) {
            out.push(Violation::NotZeroDivisor { index: i });
        }
    }
    out
}

/// Checks all ordered triples in lexicographic order and returns the first
/// associativity failure, if any.
pub fn is_associative(t: &MulTable) -> std::result::Result<(), AssocWitness> {
    let n = t.elements.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = t.product[t.product[x][y]][z];
                let rhs = t.product[x][t.product[y][z]];
                if lhs != rhs {
                    return Err(AssocWitness { x, y, z, lhs, rhs });
                }
            }
        }
    }
    Ok(())
}

/// The zero-divisor graph of a valid, associative table: vertices are the
/// nonzero elements in table order; distinct `x`, `y` are adjacent exactly
/// when `xy = 0`. Squares (`x * x`) never contribute edges.
pub fn zero_divisor_graph(t: &MulTable) -> Graph {
    let n = t.elements.len();
    let labels: Vec<String> = t.elements[1..].to_vec();
    let mut edges = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            if t.product[i][j] == 0 {
                edges.push((labels[i - 1].clone(), labels[j - 1].clone()));
            }
        }
    }
    Graph::new(&labels, &edges).expect("a valid table induces a valid graph")
}

/// Practical cap on the power-set semigroup parameter: the table has
/// `(2^n - 1)^2` entries.
const MAX_POWER_SET_N: usize = 10;

/// The semigroup of nonempty-proper-subset masks of `{1..n}` together with 0,
/// under set intersection. Element index equals the subset bitmask; the zero
/// element is the empty set.
pub fn power_set_zd_semigroup(n: usize) -> Result<MulTable> {
    if n < 2 {
        return Err(Error::InvalidParam(
            "power-set semigroup needs n >= 2".into(),
        ));
    }
    if n > MAX_POWER_SET_N {
        return Err(Error::InvalidParam(format!(
            "power-set semigroup on {n} symbols has {} elements; maximum n is {MAX_POWER_SET_N}",
            (1usize << n) - 1
        )));
    }
    let count = (1usize << n) - 1;
    let mut elements = vec!["0".to_string()];
    elements.extend((1..count).map(crate::families::subset_label));
    let product: Vec<Vec<usize>> = (0..count)
        .map(|b| (0..count).map(|c| b & c).collect())
        .collect();
    MulTable::new(elements, product)
}

/// Isomorphism-invariant fingerprint used to bucket elements before the
/// backtracking search.
fn profile(t: &MulTable, i: usize) -> (usize, bool, bool) {
    let n = t.elements.len();
    let annihilator_count = (1..n).filter(|&j| t.product[i][j] == 0).count();
    (
        annihilator_count,
        t.product[i][i] == i,
        t.product[i][i] == 0,
    )
}

/// A zero-fixing bijection `f` with `f(xy) = f(x)f(y)`, if one exists.
///
/// The returned permutation maps nonzero indices of `t1` to those of `t2`
/// (as 0-based vertex slots). Candidates are restricted to elements with
/// matching annihilator-count and idempotency profiles, then matched by
/// backtracking; the full homomorphism property is checked on completion.
pub fn are_semigroups_isomorphic(t1: &MulTable, t2: &MulTable) -> Option<Permutation> {
    let n = t1.rank();
    if n != t2.rank() {
        return None;
    }
    let p1: Vec<_> = (1..=n).map(|i| profile(t1, i)).collect();
    let p2: Vec<_> = (1..=n).map(|i| profile(t2, i)).collect();
    {
        let mut s1 = p1.clone();
        let mut s2 = p2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return None;
        }
    }
    // map[i] is the image of element i+1, as element index in t2, or 0.
    let mut map = vec![0usize; n];
    let mut used = vec![false; n + 1];
    if extend_semigroup_iso(t1, t2, &p1, &p2, 0, &mut map, &mut used) {
        let perm = Permutation::from_mapping(map.iter().map(|&v| v - 1).collect())
            .expect("completed map is a bijection");
        return Some(perm);
    }
    None
}

fn extend_semigroup_iso(
    t1: &MulTable,
    t2: &MulTable,
    p1: &[(usize, bool, bool)],
    p2: &[(usize, bool, bool)],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = t1.rank();
    if depth == n {
        return homomorphism_holds(t1, t2, map);
    }
    for y in 1..=n {
        if used[y] || p1[depth] != p2[y - 1] {
            continue;
        }
        map[depth] = y;
        used[y] = true;
        if partial_consistent(t1, t2, map, depth)
            && extend_semigroup_iso(t1, t2, p1, p2, depth + 1, map, used)
        {
            return true;
        }
        used[y] = false;
        map[depth] = 0;
    }
    false
}

/// Checks every product among mapped elements whose result is also mapped
/// (or zero).
fn partial_consistent(t1: &MulTable, t2: &MulTable, map: &[usize], depth: usize) -> bool {
    let image = |i: usize| {
        if i == 0 {
            Some(0)
        } else if i <= depth + 1 && map[i - 1] != 0 {
            Some(map[i - 1])
        } else {
            None
        }
    };
    for a in 1..=depth + 1 {
        let b = depth + 1;
        let prod = t1.product[a][b];
        if let (Some(fa), Some(fb), Some(fp)) = (image(a), image(b), image(prod)) {
            if t2.product[fa][fb] != fp {
                return false;
            }
        }
        // Products that land on not-yet-mapped elements are settled by the
        // full check at completion.
    }
    true
}

fn homomorphism_holds(t1: &MulTable, t2: &MulTable, map: &[usize]) -> bool {
    let n = t1.rank();
    let image = |i: usize| if i == 0 { 0 } else { map[i - 1] };
    for a in 0..=n {
        for b in 0..=n {
            if image(t1.product[a][b]) != t2.product[image(a)][image(b)] {
                return false;
            }
        }
    }
    true
}

/// Lexicographically minimal serialization of `t` over relabelings by the
/// given graph automorphisms. Two realizations on the same graph are
/// equivalent exactly when their keys agree.
pub fn canonical_key(t: &MulTable, auts: &[Permutation]) -> Vec<u8> {
    auts.iter()
        .map(|p| t.relabel(p).serialize_bytes())
        .min()
        .unwrap_or_else(|| t.serialize_bytes())
}

/// The relabeling of `t` whose serialization equals [`canonical_key`].
pub fn canonical_form(t: &MulTable, auts: &[Permutation]) -> MulTable {
    auts.iter()
        .map(|p| t.relabel(p))
        .min_by(|a, b| a.serialize_bytes().cmp(&b.serialize_bytes()))
        .unwrap_or_else(|| t.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::families::gamma_n;

    #[test]
    fn power_set_products_are_intersections() {
        let t = power_set_zd_semigroup(3).unwrap();
        let at = |l: &str| t.elements.iter().position(|e| e == l).unwrap();
        assert_eq!(t.product[at("x12")][at("x13")], at("x1"));
        assert_eq!(t.product[at("x12")][at("x3")], 0);
        assert!(validate(&t).is_empty());
        is_associative(&t).unwrap();
        assert!(power_set_zd_semigroup(1).is_err());
        assert!(power_set_zd_semigroup(11).is_err());
    }

    #[test]
    fn power_set_matches_componentwise_minimum() {
        // Reading each mask as a {0,1}-vector, intersection is the
        // componentwise product.
        for n in 2..=5 {
            let t = power_set_zd_semigroup(n).unwrap();
            let count = (1usize << n) - 1;
            for b in 0..count {
                for c in 0..count {
                    let mut expected = 0usize;
                    for bit in 0..n {
                        let min = (b >> bit & 1).min(c >> bit & 1);
                        expected |= min << bit;
                    }
                    assert_eq!(t.product[b][c], expected);
                }
            }
        }
    }

    #[test]
    fn zero_divisor_graph_of_power_set_is_subset_graph() {
        for n in 2..=5 {
            let g = zero_divisor_graph(&power_set_zd_semigroup(n).unwrap());
            assert_eq!(g, gamma_n(n).unwrap());
        }
    }

    #[test]
    fn squares_never_create_edges() {
        // ab = 0 with both squares zero: the graph is a single edge, no loops.
        let t = MulTable::new(
            vec!["0".into(), "a".into(), "b".into()],
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0]],
        )
        .unwrap();
        let g = zero_divisor_graph(&t);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn validate_reports_each_violation() {
        let mut t = power_set_zd_semigroup(2).unwrap();
        t.product[0][1] = 1;
        assert!(matches!(validate(&t)[0], Violation::ZeroRow { index: 1 }));

        let t = MulTable::new(
            vec!["0".into(), "a".into(), "b".into()],
            vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 2, 0]],
        )
        .unwrap();
        assert!(validate(&t).contains(&Violation::Asymmetric { i: 1, j: 2 }));

        let t = MulTable::new(vec!["0".into(), "a".into()], vec![vec![0, 0], vec![0, 9]]).unwrap();
        assert!(validate(&t).contains(&Violation::OutOfRange {
            i: 1,
            j: 1,
            value: 9
        }));

        // {0, a} with a*a = a: a annihilates nothing nonzero.
        let t = MulTable::new(vec!["0".into(), "a".into()], vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(validate(&t), vec![Violation::NotZeroDivisor { index: 1 }]);
    }

    #[test]
    fn associativity_witness_is_first_in_lex_order() {
        // ab = 0, a^2 = a, b^2 = a: (ab)b = 0 but a(bb) = a.
        let t = MulTable::new(
            vec!["0".into(), "a".into(), "b".into()],
            vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let mut t = t;
        t.product[2][2] = 1;
        let w = is_associative(&t).unwrap_err();
        assert_eq!((w.x, w.y, w.z), (1, 2, 2));
        assert_eq!((w.lhs, w.rhs), (0, 1));
    }

    #[test]
    fn fixture_tables_are_valid_realizations() {
        for (t, g) in [
            (
                catalog::m32_table_null_squares(),
                crate::families::m_nk(3, 2).unwrap(),
            ),
            (
                catalog::m32_table_one_idempotent(),
                crate::families::m_nk(3, 2).unwrap(),
            ),
            (
                catalog::m32_table_two_idempotents(),
                crate::families::m_nk(3, 2).unwrap(),
            ),
            (
                catalog::glued_triangle_square_table(),
                crate::families::glued_triangle_square(),
            ),
        ] {
            assert!(validate(&t).is_empty());
            is_associative(&t).unwrap();
            assert_eq!(zero_divisor_graph(&t), g);
        }
    }

    #[test]
    fn table_json_round_trip_and_rejection() {
        let t = catalog::m32_table_null_squares();
        let back = MulTable::from_json(&t.to_json()).unwrap();
        assert_eq!(t, back);

        // Asymmetric product must be rejected on load.
        let bad = r#"{"elements":["0","a","b"],"product":[[0,0,0],[0,0,1],[0,0,0]]}"#;
        assert!(MulTable::from_json(bad).is_err());
        // Nonzero zero row must be rejected on load.
        let bad = r#"{"elements":["0","a"],"product":[[0,1],[1,0]]}"#;
        assert!(MulTable::from_json(bad).is_err());
        // Out-of-range entry must be rejected on load.
        let bad = r#"{"elements":["0","a"],"product":[[0,0],[0,7]]}"#;
        assert!(MulTable::from_json(bad).is_err());
        // Ragged matrix must be rejected on load.
        let bad = r#"{"elements":["0","a"],"product":[[0,0],[0]]}"#;
        assert!(MulTable::from_json(bad).is_err());
    }

    #[test]
    fn relabel_preserves_structure() {
        let t = catalog::m32_table_null_squares();
        let perm = Permutation::from_mapping(vec![1, 0, 2, 4, 3]).unwrap();
        let r = t.relabel(&perm);
        assert!(validate(&r).is_empty());
        is_associative(&r).unwrap();
        assert_eq!(r.relabel(&perm.inverse()), t);
    }

    #[test]
    fn semigroup_iso_distinguishes_fixture_classes() {
        let a = catalog::m32_table_null_squares();
        let b = catalog::m32_table_one_idempotent();
        let c = catalog::m32_table_two_idempotents();
        assert!(are_semigroups_isomorphic(&a, &b).is_none());
        assert!(are_semigroups_isomorphic(&a, &c).is_none());
        assert!(are_semigroups_isomorphic(&b, &c).is_none());
        for t in [&a, &b, &c] {
            assert!(are_semigroups_isomorphic(t, t).is_some());
        }
    }

    #[test]
    fn semigroup_iso_finds_relabelings() {
        let t = catalog::m32_table_one_idempotent();
        let perm = Permutation::from_mapping(vec![2, 1, 0, 4, 3]).unwrap();
        let r = t.relabel(&perm);
        let found = are_semigroups_isomorphic(&t, &r).expect("relabeling is an isomorphism");
        // The found map must carry products to products.
        let n = t.rank();
        let image = |i: usize| if i == 0 { 0 } else { found.apply(i - 1) + 1 };
        for a in 0..=n {
            for b in 0..=n {
                assert_eq!(image(t.product[a][b]), r.product[image(a)][image(b)]);
            }
        }
    }

    #[test]
    fn canonical_keys_identify_orbits() {
        let g = crate::families::m_nk(3, 2).unwrap();
        let auts = crate::iso::automorphisms(&g).unwrap();
        assert_eq!(auts.len(), 2);

        // The swap (a1 a2)(x1 x2) fixes every fixture table's orbit: the
        // one-idempotent table maps to its mirror, so both carry one key.
        let t = catalog::m32_table_one_idempotent();
        let mirror = catalog::m32_table_one_idempotent_mirror();
        assert_ne!(t.serialize_bytes(), mirror.serialize_bytes());
        assert_eq!(canonical_key(&t, &auts), canonical_key(&mirror, &auts));

        let a = catalog::m32_table_null_squares();
        let c = catalog::m32_table_two_idempotents();
        assert_eq!(canonical_key(&a, &auts), a.serialize_bytes());
        assert_ne!(canonical_key(&a, &auts), canonical_key(&c, &auts));

        // With only the identity, the key is the table's own serialization.
        let id = vec![Permutation::identity(5)];
        assert_eq!(canonical_key(&t, &id), t.serialize_bytes());
        assert_eq!(
            canonical_form(&t, &auts).serialize_bytes(),
            canonical_key(&t, &auts)
        );
    }

    #[test]
    fn gamma_3_table_is_isomorphic_to_power_set_semigroup() {
        let t = power_set_zd_semigroup(3).unwrap();
        let perm = Permutation::from_mapping(vec![5, 4, 3, 2, 1, 0]).unwrap();
        let r = t.relabel(&perm);
        assert!(are_semigroups_isomorphic(&r, &t).is_some());
    }
}
