//! Exhaustive enumeration of the commutative zero-divisor semigroups whose
//! zero-divisor graph is a given graph.
//!
//! The unknowns are the products of a commutative multiplication table over
//! `{0, x_1, ..., x_n}`: one cell per unordered pair of distinct vertices and
//! one per diagonal. The graph pins every off-diagonal cell between adjacent
//! vertices to zero and removes zero from every off-diagonal cell between
//! non-adjacent vertices; diagonal cells are unconstrained. The search
//! assigns the remaining cells depth-first, narrowing cell domains after
//! every assignment with associativity-derived rules, and re-verifies each
//! complete table from scratch before recording it.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::graph::Graph;
use crate::iso::{automorphisms, MAX_VERTICES};
use crate::semigroup::{
    canonical_form, canonical_key, is_associative, validate, zero_divisor_graph, MulTable,
};
use crate::{Error, Result};

/// How many search nodes pass between deadline checks.
const TIMEOUT_CHECK_INTERVAL: u64 = 4096;

/// Knobs for [`enumerate_realizations`].
#[derive(Debug, Clone, Serialize)]
pub struct EnumerateOpts {
    /// Stop once storing another solution would exceed this many labeled
    /// tables. A run that finishes with exactly `limit` solutions without a
    /// further one arriving still counts as exhaustive.
    pub limit: Option<u64>,
    /// Wall-clock budget for the search phase.
    #[serde(rename = "timeout_secs", serialize_with = "serialize_opt_duration")]
    pub timeout: Option<Duration>,
    /// Group labeled solutions into isomorphism classes (on by default).
    pub dedup: bool,
    /// Worker threads for the search phase. Results are identical for any
    /// thread count on runs that complete exhaustively.
    #[serde(skip)]
    pub threads: usize,
    /// Disable domain narrowing and run pure generate-and-test over the
    /// graph-constrained cells. Exists so tests can check that narrowing
    /// never changes the solution set; not exposed on the command line.
    #[serde(skip)]
    pub propagate: bool,
}

impl Default for EnumerateOpts {
    fn default() -> Self {
        EnumerateOpts {
            limit: None,
            timeout: None,
            dedup: true,
            threads: 1,
            propagate: true,
        }
    }
}

fn serialize_opt_duration<S: serde::Serializer>(
    d: &Option<Duration>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    d.map(|d| d.as_secs_f64()).serialize(s)
}

/// How an enumeration run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchStatus {
    /// Every labeled table was visited; counts and classes are complete.
    Exhaustive,
    /// The solution cap cut the run short; results are a prefix.
    LimitReached,
    /// The wall-clock budget cut the run short; results are a prefix.
    Timeout,
}

/// One isomorphism class of realizations.
#[derive(Debug, Clone, Serialize)]
pub struct RealizationClass {
    /// Canonical representative: the lexicographically least relabeling of
    /// the class under the graph's automorphisms.
    pub table: MulTable,
    /// Number of labeled tables in the class.
    pub orbit_size: usize,
}

/// Everything a finished (or cut-short) enumeration run reports.
#[derive(Debug, Clone, Serialize)]
pub struct EnumerationReport {
    pub graph: Graph,
    pub opts: EnumerateOpts,
    pub status: SearchStatus,
    /// Labeled tables found (all of them when the status is exhaustive).
    pub labeled_count: u64,
    /// Classes sorted by canonical key; singleton classes when dedup is off.
    pub classes: Vec<RealizationClass>,
    /// Candidate cell assignments tried. Deterministic only for runs that
    /// complete exhaustively; cut-short runs stop mid-tree at a point that
    /// depends on timing and thread interleaving.
    pub nodes_explored: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

impl EnumerationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Drops wall-clock fields so two runs with equal results serialize
    /// byte-for-byte equal.
    pub fn strip_timing(&mut self) {
        self.wall_time_secs = None;
    }
}

/// Upper-triangle cell index for 1-based elements `i <= j`.
fn cell(i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i <= j);
    j * (j - 1) / 2 + i - 1
}

fn cell_of(x: usize, y: usize) -> usize {
    cell(x.min(y), x.max(y))
}

fn single(dom: u64) -> Option<usize> {
    if dom.count_ones() == 1 {
        Some(dom.trailing_zeros() as usize)
    } else {
        None
    }
}

/// Why a search stopped before exhausting the tree.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Cut {
    None,
    Limit,
    Timeout,
}

struct Engine<'a> {
    graph: &'a Graph,
    n: usize,
    dom: Vec<u64>,
    trail: Vec<(usize, u64)>,
    /// Initially-open cells in decision order.
    order: &'a [usize],
    solutions: Vec<MulTable>,
    nodes: u64,
    limit: Option<u64>,
    deadline: Option<Instant>,
    /// Set by whichever worker hits the deadline first; checked by all.
    abort: &'a AtomicBool,
    cut: Cut,
    propagate: bool,
}

impl<'a> Engine<'a> {
    /// Domain of `x * w` where either factor may be zero.
    fn value_set(&self, x: usize, w: usize) -> u64 {
        if x == 0 || w == 0 {
            1
        } else {
            self.dom[cell_of(x, w)]
        }
    }

    fn assign(&mut self, c: usize, dom: u64) {
        self.trail.push((c, self.dom[c]));
        self.dom[c] = dom;
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (c, dom) = self.trail.pop().expect("trail cannot underflow past mark");
            self.dom[c] = dom;
        }
    }

    /// Narrows domains with three associativity-derived rules until nothing
    /// changes. Returns false on a wiped-out domain. Each rule only removes
    /// values that appear in no completion, so narrowing never loses a
    /// solution: for fixed `xy = p` and `yz = q`, any completion must give
    /// `(xy)z = x(yz)` a single value in both `pz`'s and `xq`'s domains; and
    /// for fixed `xy = p` only, a candidate `w` for `yz` survives only if
    /// some value is common to `xw`'s and `pz`'s domains.
    fn propagate_fixpoint(&mut self) -> bool {
        loop {
            let mut changed = false;
            // Commutativity makes the x <= z half of the triples sufficient:
            // (x, y, z) and (z, y, x) induce the same constraint.
            for x in 1..=self.n {
                for z in x..=self.n {
                    for y in 1..=self.n {
                        let dxy = self.dom[cell_of(x, y)];
                        let dyz = self.dom[cell_of(y, z)];
                        match (single(dxy), single(dyz)) {
                            (Some(p), Some(q)) => {
                                let lhs = self.value_set(p, z);
                                let rhs = self.value_set(x, q);
                                let both = lhs & rhs;
                                if both == 0 {
                                    return false;
                                }
                                if p != 0 && self.dom[cell_of(p, z)] != both {
                                    self.assign(cell_of(p, z), both);
                                    changed = true;
                                }
                                if q != 0 && self.dom[cell_of(x, q)] != both {
                                    self.assign(cell_of(x, q), both);
                                    changed = true;
                                }
                            }
                            (Some(p), None) => {
                                let lhs = self.value_set(p, z);
                                let mut keep = 0u64;
                                let mut rest = dyz;
                                while rest != 0 {
                                    let w = rest.trailing_zeros() as usize;
                                    rest &= rest - 1;
                                    if self.value_set(x, w) & lhs != 0 {
                                        keep |= 1 << w;
                                    }
                                }
                                if keep != dyz {
                                    if keep == 0 {
                                        return false;
                                    }
                                    self.assign(cell_of(y, z), keep);
                                    changed = true;
                                }
                            }
                            (None, Some(q)) => {
                                let rhs = self.value_set(x, q);
                                let mut keep = 0u64;
                                let mut rest = dxy;
                                while rest != 0 {
                                    let w = rest.trailing_zeros() as usize;
                                    rest &= rest - 1;
                                    if self.value_set(w, z) & rhs != 0 {
                                        keep |= 1 << w;
                                    }
                                }
                                if keep != dxy {
                                    if keep == 0 {
                                        return false;
                                    }
                                    self.assign(cell_of(x, y), keep);
                                    changed = true;
                                }
                            }
                            (None, None) => {}
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn stopped(&self) -> bool {
        self.cut != Cut::None
    }

    fn count_node(&mut self) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(TIMEOUT_CHECK_INTERVAL) {
            if self.abort.load(Ordering::Relaxed) {
                self.cut = Cut::Timeout;
            } else if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.abort.store(true, Ordering::Relaxed);
                    self.cut = Cut::Timeout;
                }
            }
        }
    }

    fn search(&mut self, from: usize) {
        let mut at = from;
        while at < self.order.len() && single(self.dom[self.order[at]]).is_some() {
            at += 1;
        }
        if at == self.order.len() {
            self.record_leaf();
            return;
        }
        let c = self.order[at];
        let mut rest = self.dom[c];
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            self.count_node();
            if self.stopped() {
                return;
            }
            let mark = self.trail.len();
            self.assign(c, 1 << v);
            if !self.propagate || self.propagate_fixpoint() {
                self.search(at + 1);
            }
            self.undo_to(mark);
            if self.stopped() {
                return;
            }
        }
    }

    /// Rebuilds the table from the (now singleton) domains and re-checks it
    /// from scratch: structural validity, associativity, and an exact graph
    /// round trip. With narrowing on, every leaf passes (the final fixpoint
    /// checked all fixed-product triples); without it this is the filter.
    fn record_leaf(&mut self) {
        let table = self.build_table();
        if !validate(&table).is_empty()
            || is_associative(&table).is_err()
            || zero_divisor_graph(&table) != *self.graph
        {
            return;
        }
        if let Some(limit) = self.limit {
            if self.solutions.len() as u64 >= limit {
                self.cut = Cut::Limit;
                return;
            }
        }
        self.solutions.push(table);
    }

    fn build_table(&self) -> MulTable {
        let n = self.n;
        let mut elements = Vec::with_capacity(n + 1);
        elements.push("0".to_string());
        elements.extend(self.graph.labels().iter().cloned());
        let mut product = vec![vec![0usize; n + 1]; n + 1];
        for (i, row) in product.iter_mut().enumerate().skip(1) {
            for (j, slot) in row.iter_mut().enumerate().skip(1) {
                *slot = single(self.dom[cell_of(i, j)])
                    .expect("leaf domains are singletons by construction");
            }
        }
        MulTable::new(elements, product).expect("leaf tables are square and label-complete")
    }
}

/// Initial cell domains: edges pinned to zero, non-edges anything nonzero,
/// diagonals anything.
fn initial_domains(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let full: u64 = (1u64 << (n + 1)) - 1;
    let mut dom = vec![0u64; n * (n + 1) / 2];
    for i in 1..=n {
        for j in i..=n {
            dom[cell(i, j)] = if i == j {
                full
            } else if g.has_edge(i - 1, j - 1) {
                1
            } else {
                full & !1
            };
        }
    }
    dom
}

/// Decision order over the initially-open cells: off-diagonal cells by
/// descending endpoint degree sum (ties by index), each diagonal right after
/// the last off-diagonal cell touching its vertex. Diagonals of vertices
/// with no open off-diagonal cell come first; their squares are the only
/// freedom left at those vertices.
fn decision_order(g: &Graph, dom: &[u64]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut off: Vec<(usize, usize)> = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            if single(dom[cell(i, j)]).is_none() {
                off.push((i, j));
            }
        }
    }
    off.sort_by_key(|&(i, j)| {
        let weight = g.degree(i - 1) + g.degree(j - 1);
        (std::cmp::Reverse(weight), i, j)
    });
    let mut last_touch = vec![usize::MAX; n + 1];
    for (pos, &(i, j)) in off.iter().enumerate() {
        last_touch[i] = pos;
        last_touch[j] = pos;
    }
    let mut order = Vec::with_capacity(n * (n + 1) / 2);
    for (v, &touch) in last_touch.iter().enumerate().skip(1) {
        if touch == usize::MAX {
            order.push(cell(v, v));
        }
    }
    for (pos, &(i, j)) in off.iter().enumerate() {
        order.push(cell(i, j));
        for (v, &touch) in last_touch.iter().enumerate().skip(1) {
            if touch == pos {
                order.push(cell(v, v));
            }
        }
    }
    order
}

struct BranchOutcome {
    solutions: Vec<MulTable>,
    nodes: u64,
    cut: Cut,
}

/// Runs one branch of the root split: pins the first open cell to `v`, then
/// searches the rest of the order.
fn run_branch(
    g: &Graph,
    base_dom: &[u64],
    order: &[usize],
    v: u32,
    opts: &EnumerateOpts,
    deadline: Option<Instant>,
    abort: &AtomicBool,
) -> BranchOutcome {
    let mut engine = Engine {
        graph: g,
        n: g.vertex_count(),
        dom: base_dom.to_vec(),
        trail: Vec::new(),
        order,
        solutions: Vec::new(),
        nodes: 0,
        limit: opts.limit,
        deadline,
        abort,
        cut: Cut::None,
        propagate: opts.propagate,
    };
    engine.count_node();
    if !engine.stopped() {
        engine.assign(order[0], 1 << v);
        if !engine.propagate || engine.propagate_fixpoint() {
            engine.search(1);
        }
    }
    BranchOutcome {
        solutions: engine.solutions,
        nodes: engine.nodes,
        cut: engine.cut,
    }
}

/// Enumerates every commutative zero-divisor semigroup on `{0} ∪ V(g)` whose
/// zero-divisor graph is exactly `g`, up to the limits in `opts`.
///
/// The graph must be connected and have 2 to 32 vertices. Solutions are
/// discovered in a fixed depth-first order, so reports from exhaustive runs
/// are identical across thread counts and repeat runs.
pub fn enumerate_realizations(g: &Graph, opts: &EnumerateOpts) -> Result<EnumerationReport> {
    g.check_connected()?;
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "enumeration needs at least 2 vertices, got {n}"
        )));
    }
    if n > MAX_VERTICES {
        return Err(Error::TooLarge {
            got: n,
            limit: MAX_VERTICES,
        });
    }
    let auts = automorphisms(g)?;
    let start = Instant::now();
    let deadline = opts.timeout.map(|t| start + t);
    let abort = AtomicBool::new(false);
    // The deadline is otherwise only polled between batches of nodes; an
    // upfront check makes an already-expired budget deterministic.
    let expired = deadline.is_some_and(|d| Instant::now() >= d);

    let mut base_dom = initial_domains(g);
    let mut root = Engine {
        graph: g,
        n,
        dom: std::mem::take(&mut base_dom),
        trail: Vec::new(),
        order: &[],
        solutions: Vec::new(),
        nodes: 0,
        limit: opts.limit,
        deadline,
        abort: &abort,
        cut: Cut::None,
        propagate: opts.propagate,
    };
    let feasible = !opts.propagate || root.propagate_fixpoint();
    let root_dom = root.dom;

    let (mut solutions, mut nodes, mut cut) = (Vec::new(), 0u64, Cut::None);
    if expired {
        cut = Cut::Timeout;
    } else if feasible {
        let order = decision_order(g, &root_dom);
        let first_open = order.iter().position(|&c| single(root_dom[c]).is_none());
        match first_open {
            None => {
                // Root narrowing fixed everything; the lone candidate still
                // goes through the full leaf re-check.
                let mut engine = Engine {
                    graph: g,
                    n,
                    dom: root_dom,
                    trail: Vec::new(),
                    order: &order,
                    solutions: Vec::new(),
                    nodes: 0,
                    limit: opts.limit,
                    deadline,
                    abort: &abort,
                    cut: Cut::None,
                    propagate: opts.propagate,
                };
                engine.record_leaf();
                solutions = engine.solutions;
                cut = engine.cut;
            }
            Some(skip) => {
                // Split the first open cell's candidates into one branch per
                // value and run them on a fixed-size worker pool. Merging in
                // branch order reproduces the sequential solution order.
                let order = &order[skip..];
                let mut values: Vec<u32> = Vec::new();
                let mut rest = root_dom[order[0]];
                while rest != 0 {
                    values.push(rest.trailing_zeros());
                    rest &= rest - 1;
                }
                let workers = opts.threads.max(1).min(values.len());
                let mut outcomes: Vec<Option<BranchOutcome>> = Vec::new();
                outcomes.resize_with(values.len(), || None);
                if workers <= 1 {
                    for (slot, &v) in values.iter().enumerate() {
                        let mut engine = Engine {
                            graph: g,
                            n,
                            dom: root_dom.clone(),
                            trail: Vec::new(),
                            order,
                            solutions: Vec::new(),
                            nodes,
                            limit: opts.limit,
                            deadline,
                            abort: &abort,
                            cut: Cut::None,
                            propagate: opts.propagate,
                        };
                        engine.count_node();
                        if !engine.stopped() {
                            engine.assign(order[0], 1 << v);
                            if !engine.propagate || engine.propagate_fixpoint() {
                                engine.search(1);
                            }
                        }
                        nodes = engine.nodes;
                        outcomes[slot] = Some(BranchOutcome {
                            solutions: engine.solutions,
                            nodes: 0,
                            cut: engine.cut,
                        });
                        let branch_cut = outcomes[slot].as_ref().map(|o| o.cut);
                        if branch_cut == Some(Cut::Timeout) {
                            break;
                        }
                        // A limit cut in one branch caps the total, because
                        // sequential branches share the running count.
                        if branch_cut == Some(Cut::Limit) {
                            break;
                        }
                    }
                } else {
                    let next = AtomicUsize::new(0);
                    let results: Mutex<Vec<Option<BranchOutcome>>> = Mutex::new(outcomes);
                    std::thread::scope(|scope| {
                        for _ in 0..workers {
                            scope.spawn(|| loop {
                                let i = next.fetch_add(1, Ordering::Relaxed);
                                if i >= values.len() {
                                    return;
                                }
                                let outcome = run_branch(
                                    g, &root_dom, order, values[i], opts, deadline, &abort,
                                );
                                results
                                    .lock()
                                    .expect("branch result mutex cannot be poisoned")[i] =
                                    Some(outcome);
                            });
                        }
                    });
                    outcomes = results
                        .into_inner()
                        .expect("branch result mutex cannot be poisoned");
                }
                for outcome in outcomes.into_iter().flatten() {
                    nodes += outcome.nodes;
                    if outcome.cut == Cut::Timeout {
                        cut = Cut::Timeout;
                    } else if outcome.cut == Cut::Limit && cut == Cut::None {
                        cut = Cut::Limit;
                    }
                    solutions.extend(outcome.solutions);
                }
                if let Some(limit) = opts.limit {
                    if solutions.len() as u64 > limit {
                        solutions.truncate(limit as usize);
                        if cut == Cut::None {
                            cut = Cut::Limit;
                        }
                    }
                }
            }
        }
    }

    let status = match cut {
        Cut::Timeout => SearchStatus::Timeout,
        Cut::Limit => SearchStatus::LimitReached,
        Cut::None => SearchStatus::Exhaustive,
    };
    let classes = if opts.dedup {
        group_into_classes(&solutions, &auts)
    } else {
        let mut singletons: Vec<RealizationClass> = solutions
            .iter()
            .map(|t| RealizationClass {
                table: t.clone(),
                orbit_size: 1,
            })
            .collect();
        singletons.sort_by_key(|c| c.table.serialize_bytes());
        singletons
    };
    Ok(EnumerationReport {
        graph: g.clone(),
        opts: opts.clone(),
        status,
        labeled_count: solutions.len() as u64,
        classes,
        nodes_explored: nodes,
        wall_time_secs: Some(start.elapsed().as_secs_f64()),
    })
}

/// Buckets labeled tables by canonical key under the graph's automorphisms.
/// BTreeMap iteration yields the classes sorted by key.
fn group_into_classes(
    solutions: &[MulTable],
    auts: &[crate::iso::Permutation],
) -> Vec<RealizationClass> {
    let mut groups: BTreeMap<Vec<u8>, (MulTable, usize)> = BTreeMap::new();
    for t in solutions {
        match groups.entry(canonical_key(t, auts)) {
            Entry::Vacant(slot) => {
                slot.insert((canonical_form(t, auts), 1));
            }
            Entry::Occupied(mut slot) => slot.get_mut().1 += 1,
        }
    }
    groups
        .into_values()
        .map(|(table, orbit_size)| RealizationClass { table, orbit_size })
        .collect()
}

/// Reference enumerator for graphs with at most 4 vertices: walks every
/// commutative table over `{0} ∪ V` outright, including the cells the graph
/// already determines, and keeps the tables that pass the full check. No
/// narrowing, no ordering heuristics, no shared code with the search engine
/// beyond the table type itself.
pub fn brute_force_oracle(g: &Graph) -> Result<Vec<MulTable>> {
    g.check_connected()?;
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "enumeration needs at least 2 vertices, got {n}"
        )));
    }
    if n > 4 {
        return Err(Error::TooLarge { got: n, limit: 4 });
    }
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            cells.push((i, j));
        }
    }
    let base = n + 1;
    let mut digits = vec![0usize; cells.len()];
    let mut product = vec![vec![0usize; base]; base];
    let mut elements = Vec::with_capacity(base);
    elements.push("0".to_string());
    elements.extend(g.labels().iter().cloned());
    let mut found: Vec<MulTable> = Vec::new();
    loop {
        if table_matches(g, &product) {
            let table = MulTable::new(elements.clone(), product.clone())
                .expect("odometer tables are square and label-complete");
            if validate(&table).is_empty() && is_associative(&table).is_ok() {
                found.push(table);
            }
        }
        // Odometer step; each bumped digit writes through to the matrix.
        let mut pos = 0;
        loop {
            if pos == cells.len() {
                found.sort_by_key(|t| t.serialize_bytes());
                return Ok(found);
            }
            let (i, j) = cells[pos];
            digits[pos] += 1;
            if digits[pos] < base {
                product[i][j] = digits[pos];
                product[j][i] = digits[pos];
                break;
            }
            digits[pos] = 0;
            product[i][j] = 0;
            product[j][i] = 0;
            pos += 1;
        }
    }
}

/// Off-diagonal zero pattern equals the edge set.
fn table_matches(g: &Graph, product: &[Vec<usize>]) -> bool {
    for (i, row) in product.iter().enumerate().skip(1) {
        for (j, &p) in row.iter().enumerate().skip(i + 1) {
            if (p == 0) != g.has_edge(i - 1, j - 1) {
                return false;
            }
        }
    }
    true
}
