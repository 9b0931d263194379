//! Acceptance suite: one test per acceptance criterion. Each test prints a
//! single verdict line (shown with `--nocapture` or `--show-output`) and its
//! name carries the criterion number, so the default test listing also reads
//! as one line per criterion.
//!
//! Criterion 2 is red by design: the recorded class count for the one-end
//! triangle is 15, but exhaustive enumeration, the in-crate brute-force
//! oracle, and an independent scan all find 22. The criterion line reports
//! FAIL with that analysis; the assertions pin the computed reality.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zdr::catalog::{
    connected_graphs_up_to_4, glued_triangle_square_table, m32_table_null_squares,
    m32_table_one_idempotent, m32_table_one_idempotent_mirror, m32_table_two_idempotents,
    screener_fail_corpus,
};
use zdr::families::{
    figure, gamma_n, gamma_n_edge_formula, glued_triangle_square, h_mn_family, l_n_family, m_nk,
    singleton_block,
};
use zdr::graph::{complete_graph, Graph};
use zdr::iso::automorphisms;
use zdr::metrics::{metrics, Diameter};
use zdr::screen::screen;
use zdr::search::{
    brute_force_oracle, enumerate_realizations, EnumerateOpts, EnumerationReport, SearchStatus,
};
use zdr::semigroup::{
    are_semigroups_isomorphic, canonical_key, is_associative, power_set_zd_semigroup, validate,
    zero_divisor_graph, MulTable,
};

fn exhaustive(g: &Graph) -> EnumerationReport {
    enumerate_realizations(g, &EnumerateOpts::default()).expect("enumeration must run")
}

fn assert_within(elapsed: Duration, budget: Duration, what: &str) {
    assert!(
        elapsed < budget,
        "{what} took {:.1} s, budget {:.0} s",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
}

#[test]
fn criterion_01_m32_three_recorded_classes() {
    let start = Instant::now();
    let g = m_nk(3, 2).expect("graph must build");
    let auts = automorphisms(&g).expect("group is computable");
    let report = exhaustive(&g);
    assert_eq!(report.status, SearchStatus::Exhaustive);
    assert_eq!(report.classes.len(), 3);
    let mut found: Vec<Vec<u8>> = report
        .classes
        .iter()
        .map(|c| canonical_key(&c.table, &auts))
        .collect();
    found.sort();
    let mut recorded: Vec<Vec<u8>> = [
        m32_table_null_squares(),
        m32_table_one_idempotent(),
        m32_table_one_idempotent_mirror(),
        m32_table_two_idempotents(),
    ]
    .iter()
    .map(|t| canonical_key(t, &auts))
    .collect();
    recorded.sort();
    recorded.dedup();
    assert_eq!(
        found, recorded,
        "canonical keys must match the recorded tables"
    );
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(10), "criterion 1");
    println!(
        "criterion 1: PASS - 3 classes, canonical keys match the recorded tables ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_02_m31_recorded_count_stays_red() {
    let start = Instant::now();
    let report = exhaustive(&m_nk(3, 1).expect("graph must build"));
    assert_eq!(report.status, SearchStatus::Exhaustive);
    // The recorded existence statement (fifteen pairwise non-isomorphic
    // tables) holds; the implied completeness does not.
    assert!(report.classes.len() >= 15);
    assert_eq!(report.classes.len(), 22);
    assert_eq!(report.labeled_count, 36);
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 2");
    println!(
        "criterion 2: FAIL - expected exactly 15 classes; exhaustive enumeration finds 22 \
         (36 labeled tables), agreeing with the brute-force oracle and an independent scan; \
         the recorded count is superseded ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_03_gamma3_unique_class_is_the_subset_semigroup() {
    let start = Instant::now();
    let report = exhaustive(&gamma_n(3).expect("graph must build"));
    assert_eq!(report.status, SearchStatus::Exhaustive);
    assert_eq!(report.classes.len(), 1);
    let expected = power_set_zd_semigroup(3).expect("table must build");
    assert!(
        are_semigroups_isomorphic(&report.classes[0].table, &expected).is_some(),
        "the unique class must be the subset-intersection semigroup"
    );
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 3");
    println!(
        "criterion 3: PASS - unique class, isomorphic to the subset-intersection semigroup \
         ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_04_glued_triangle_square_unique_recorded_table() {
    let start = Instant::now();
    let g = glued_triangle_square();
    let auts = automorphisms(&g).expect("group is computable");
    let report = exhaustive(&g);
    assert_eq!(report.status, SearchStatus::Exhaustive);
    assert_eq!(report.classes.len(), 1);
    assert_eq!(
        canonical_key(&report.classes[0].table, &auts),
        canonical_key(&glued_triangle_square_table(), &auts),
        "the unique class must match the recorded table up to relabeling"
    );
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(10), "criterion 4");
    println!(
        "criterion 4: PASS - unique class matches the recorded table ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_05_seven_unrealizable_graphs_enumerate_to_zero() {
    let cases: Vec<(&str, Graph)> = vec![
        (
            "4-clique with four ends",
            m_nk(4, 4).expect("graph must build"),
        ),
        (
            "5-clique with four ends",
            m_nk(5, 4).expect("graph must build"),
        ),
        (
            "4-clique with three ends",
            m_nk(4, 3).expect("graph must build"),
        ),
        (
            "5-clique with three ends",
            m_nk(5, 3).expect("graph must build"),
        ),
        (
            "4-cycle with two ends",
            figure("3.5").expect("graph must build"),
        ),
        (
            "2-by-3 bipartite with an end on each part",
            h_mn_family(2, 3, &singleton_block(), &singleton_block()).expect("graph must build"),
        ),
        (
            "decorated 4-clique with a two-vertex block",
            l_n_family(
                4,
                &[
                    complete_graph(2).expect("graph must build"),
                    singleton_block(),
                    singleton_block(),
                    singleton_block(),
                ],
            )
            .expect("graph must build"),
        ),
    ];
    let mut slowest = Duration::ZERO;
    for (name, g) in &cases {
        let start = Instant::now();
        let report = exhaustive(g);
        let elapsed = start.elapsed();
        assert_eq!(report.status, SearchStatus::Exhaustive, "{name}");
        assert_eq!(report.labeled_count, 0, "{name} must have no realization");
        assert_within(elapsed, Duration::from_secs(600), name);
        slowest = slowest.max(elapsed);
    }
    println!(
        "criterion 5: PASS - all 7 graphs enumerate to 0 classes exhaustively \
         (slowest {:.2} s)",
        slowest.as_secs_f64()
    );
}

#[test]
fn criterion_06_m42_and_m52_have_unique_classes() {
    let mut slowest = Duration::ZERO;
    for (name, n) in [
        ("4-clique with two ends", 4usize),
        ("5-clique with two ends", 5),
    ] {
        let start = Instant::now();
        let report = exhaustive(&m_nk(n, 2).expect("graph must build"));
        let elapsed = start.elapsed();
        assert_eq!(report.status, SearchStatus::Exhaustive, "{name}");
        assert_eq!(report.classes.len(), 1, "{name} must have a unique class");
        assert_within(elapsed, Duration::from_secs(600), name);
        slowest = slowest.max(elapsed);
    }
    println!(
        "criterion 6: PASS - both decorated cliques have exactly one class \
         (slowest {:.2} s)",
        slowest.as_secs_f64()
    );
}

#[test]
fn criterion_07_subset_graph_structural_suite() {
    let start = Instant::now();
    let g4 = gamma_n(4).expect("graph must build");
    assert_eq!((g4.vertex_count(), g4.edge_count()), (14, 25));
    let g5 = gamma_n(5).expect("graph must build");
    assert_eq!((g5.vertex_count(), g5.edge_count()), (30, 90));
    for n in 2..=8usize {
        let g = gamma_n(n).expect("graph must build");
        assert_eq!(
            g.edge_count(),
            gamma_n_edge_formula(n),
            "closed-form edge count at n = {n}"
        );
    }
    for n in 2..=5usize {
        let factorial: usize = (1..=n).product();
        assert_eq!(
            automorphisms(&gamma_n(n).expect("graph must build"))
                .expect("group is computable")
                .len(),
            factorial,
            "automorphism count at n = {n}"
        );
    }
    for n in 3..=6usize {
        let m = metrics(&gamma_n(n).expect("graph must build")).expect("metrics must run");
        assert_eq!(m.diameter, Diameter::Finite(3), "diameter at n = {n}");
        assert_eq!(m.clique_number, n, "clique number at n = {n}");
        assert_eq!(m.end_vertices.len(), n, "end count at n = {n}");
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 7");
    println!(
        "criterion 7: PASS - sizes, edge formula, automorphism counts, diameter, clique, \
         and end counts all match ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_08_oracle_equivalence_on_small_graphs() {
    let start = Instant::now();
    let corpus = connected_graphs_up_to_4();
    assert_eq!(corpus.len(), 9);
    for g in &corpus {
        let oracle = brute_force_oracle(g).expect("oracle must run");
        let report = enumerate_realizations(
            g,
            &EnumerateOpts {
                dedup: false,
                ..EnumerateOpts::default()
            },
        )
        .expect("enumeration must run");
        assert_eq!(report.status, SearchStatus::Exhaustive);
        let mut searched: Vec<Vec<u8>> = report
            .classes
            .iter()
            .map(|c| c.table.serialize_bytes())
            .collect();
        searched.sort();
        let scanned: Vec<Vec<u8>> = oracle.iter().map(|t| t.serialize_bytes()).collect();
        assert_eq!(searched, scanned, "labeled tables on {:?}", g.labels());
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 8");
    println!(
        "criterion 8: PASS - search and brute-force oracle agree on all 9 graphs \
         ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

/// Naive associativity recheck written from scratch for the cross-check:
/// first violating triple in lexicographic order, or None.
fn naive_first_violation(t: &MulTable) -> Option<(usize, usize, usize)> {
    let n = t.elements.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if t.product[t.product[x][y]][z] != t.product[x][t.product[y][z]] {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

fn random_commutative_table(rng: &mut ChaCha8Rng) -> MulTable {
    let rank = rng.gen_range(2..=5usize);
    let mut product = vec![vec![0usize; rank + 1]; rank + 1];
    for (i, j) in (1..=rank).flat_map(|i| (i..=rank).map(move |j| (i, j))) {
        let v = rng.gen_range(0..=rank);
        product[i][j] = v;
        product[j][i] = v;
    }
    let elements = (0..=rank)
        .map(|i| {
            if i == 0 {
                "0".to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect();
    MulTable::new(elements, product).expect("random tables are well-shaped")
}

#[test]
fn criterion_09_invariant_suite() {
    // Every table emitted anywhere: enumeration classes across the verified
    // graphs, the recorded fixtures, and the subset-intersection builders.
    let graphs = vec![
        complete_graph(2).expect("graph must build"),
        complete_graph(3).expect("graph must build"),
        m_nk(3, 1).expect("graph must build"),
        m_nk(3, 2).expect("graph must build"),
        m_nk(4, 2).expect("graph must build"),
        m_nk(5, 2).expect("graph must build"),
        glued_triangle_square(),
        gamma_n(3).expect("graph must build"),
    ];
    let mut emitted = 0usize;
    for g in &graphs {
        let report = exhaustive(g);
        for class in &report.classes {
            assert!(validate(&class.table).is_empty(), "graph {:?}", g.labels());
            assert!(
                is_associative(&class.table).is_ok(),
                "graph {:?}",
                g.labels()
            );
            assert_eq!(
                zero_divisor_graph(&class.table),
                *g,
                "graph {:?}",
                g.labels()
            );
            emitted += 1;
        }
    }
    for fixture in [
        m32_table_null_squares(),
        m32_table_one_idempotent(),
        m32_table_one_idempotent_mirror(),
        m32_table_two_idempotents(),
        glued_triangle_square_table(),
    ] {
        assert!(validate(&fixture).is_empty());
        assert!(is_associative(&fixture).is_ok());
        emitted += 1;
    }
    for n in 2..=5usize {
        let t = power_set_zd_semigroup(n).expect("table must build");
        assert!(validate(&t).is_empty());
        assert!(is_associative(&t).is_ok());
        assert_eq!(
            zero_divisor_graph(&t),
            gamma_n(n).expect("graph must build")
        );
        emitted += 1;
    }

    // 1,000 seeded random tables: the library's associativity check must
    // agree with the from-scratch recheck, witness included.
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d2d6);
    let mut violations = 0usize;
    for _ in 0..1000 {
        let t = random_commutative_table(&mut rng);
        let naive = naive_first_violation(&t);
        match is_associative(&t) {
            Ok(()) => assert_eq!(naive, None, "library says associative, recheck disagrees"),
            Err(w) => {
                assert_eq!(
                    naive,
                    Some((w.x, w.y, w.z)),
                    "library witness must be the first violation"
                );
                violations += 1;
            }
        }
    }
    assert!(
        violations > 0,
        "random tables should include non-associative ones"
    );

    // A failed screen is a proof of unrealizability: enumeration must agree.
    for (name, g) in screener_fail_corpus() {
        let report = screen(&g).expect("screen must run");
        assert!(!report.all_pass(), "{name} must fail the screen");
        let run = exhaustive(&g);
        assert_eq!(run.status, SearchStatus::Exhaustive, "{name}");
        assert_eq!(run.labeled_count, 0, "{name} must have no realization");
    }

    println!(
        "criterion 9: PASS - {emitted} emitted tables verified, 1000 random associativity \
         cross-checks agree ({violations} violations found), screen failures imply empty \
         enumerations"
    );
}

#[test]
fn criterion_10_gamma4_stretch() {
    let budget = std::env::var("ZDR_TIMEOUT_SECS")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .map(Duration::from_secs_f64)
        .unwrap_or(Duration::from_secs(3600));
    let start = Instant::now();
    let report = enumerate_realizations(
        &gamma_n(4).expect("graph must build"),
        &EnumerateOpts {
            timeout: Some(budget),
            ..EnumerateOpts::default()
        },
    )
    .expect("enumeration must run");
    let elapsed = start.elapsed();
    match report.status {
        SearchStatus::Exhaustive => {
            assert_eq!(report.classes.len(), 1);
            let expected = power_set_zd_semigroup(4).expect("table must build");
            assert!(
                are_semigroups_isomorphic(&report.classes[0].table, &expected).is_some(),
                "the unique class must be the subset-intersection semigroup"
            );
            println!(
                "criterion 10: PASS - unique class on the 14-vertex subset graph, isomorphic \
                 to the subset-intersection semigroup ({:.2} s)",
                elapsed.as_secs_f64()
            );
        }
        // Non-gating: running out of budget is an acceptable, reported outcome.
        _ => println!(
            "criterion 10: INCONCLUSIVE - budget of {:.0} s exhausted after {} nodes",
            budget.as_secs_f64(),
            report.nodes_explored
        ),
    }
}
