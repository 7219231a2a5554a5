//! Maximum-clique search on induced subgraphs: neighborhood-intersection
//! reduction, exact branch-and-bound with greedy-coloring bounds over bitset
//! adjacency, full enumeration at a target size, clique profiles by
//! cyclotomic class, the naive subfield-style construction, and the
//! conditional clique-number verdict.

use crate::cyclotomy::minimal_representation;
use crate::field::{Element, Field};
use crate::graph::Graph;
use serde::Serialize;
use std::fmt;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueError {
    SeedNotClique,
    InducedGraphTooLarge { size: usize, bound: usize },
    TimedOut { best: Vec<Element> },
    NotAClique,
    ZeroNotInClique,
    NotSemiPrimitive,
    ROdd { r: u32 },
    TargetExceeded { found: usize },
}

impl fmt::Display for CliqueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliqueError::SeedNotClique => write!(f, "seed set is not a clique"),
            CliqueError::InducedGraphTooLarge { size, bound } => {
                write!(
                    f,
                    "induced subgraph has {size} vertices, above the bound {bound}"
                )
            }
            CliqueError::TimedOut { best } => {
                write!(
                    f,
                    "search timed out; best clique found so far has size {} (lower bound)",
                    best.len()
                )
            }
            CliqueError::NotAClique => write!(f, "vertex set is not a clique"),
            CliqueError::ZeroNotInClique => write!(f, "profile requires 0 to be in the clique"),
            CliqueError::NotSemiPrimitive => {
                write!(f, "operation requires semi-primitive parameters")
            }
            CliqueError::ROdd { r } => write!(f, "operation requires even r, got r = {r}"),
            CliqueError::TargetExceeded { found } => {
                write!(f, "found a clique of size {found} above the stated target")
            }
        }
    }
}

impl std::error::Error for CliqueError {}

/// Tunables for the reduction and the exact search.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Hard bound on the number of vertices materialized as bitset adjacency.
    pub induced_bound: usize,
    /// Target size for the neighborhood-intersection reduction: seed vertices
    /// are added until the expected candidate count `q / 2^k` drops below it.
    pub reduction_target: u64,
    /// Optional wall-clock budget for the exact search.
    pub deadline: Option<Duration>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            induced_bound: 4096,
            reduction_target: 700,
            deadline: None,
        }
    }
}

/// A verified clique, sorted with 0 first (it has no discrete log) and the
/// remaining vertices by ascending discrete log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clique {
    pub vertices: Vec<Element>,
}

impl Clique {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Canonical vertex order for reports: 0 first, then ascending discrete log.
pub fn sort_by_log(field: &Field, mut verts: Vec<Element>) -> Vec<Element> {
    verts.sort_by_key(|&v| log_key(field, v));
    verts
}

fn log_key(field: &Field, v: Element) -> i64 {
    match field.discrete_log(v) {
        Ok(k) => k as i64,
        Err(_) => -1,
    }
}

/// Log indices used in JSON reports: -1 stands for the vertex 0.
pub fn log_indices(field: &Field, verts: &[Element]) -> Vec<i64> {
    verts.iter().map(|&v| log_key(field, v)).collect()
}

/// Independent O(|A|^2) pairwise verification.
pub fn is_clique(graph: &Graph, verts: &[Element]) -> bool {
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if verts[i] == verts[j] || !graph.mutually_adjacent(verts[i], verts[j]) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Bitset branch and bound
// ---------------------------------------------------------------------------

struct BitGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl BitGraph {
    fn new(n: usize) -> BitGraph {
        let words = n.div_ceil(64).max(1);
        BitGraph {
            n,
            words,
            adj: vec![0u64; n * words],
        }
    }

    #[inline]
    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] |= 1u64 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1u64 << (u % 64);
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[inline]
fn bs_contains(set: &[u64], v: usize) -> bool {
    set[v / 64] >> (v % 64) & 1 == 1
}

#[inline]
fn bs_remove(set: &mut [u64], v: usize) {
    set[v / 64] &= !(1u64 << (v % 64));
}

#[inline]
fn bs_count(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

fn bs_iter(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

#[inline]
fn bs_first(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(wi, &w)| wi * 64 + w.trailing_zeros() as usize)
}

/// Smallest-last (degeneracy) order; the solver relabels vertices so that
/// index order is degeneracy order.
fn degeneracy_order(g: &BitGraph) -> Vec<usize> {
    let n = g.n;
    let mut alive = vec![u64::MAX; g.words];
    for v in n..g.words * 64 {
        bs_remove(&mut alive, v);
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = bs_iter(&alive).min_by_key(|&v| (deg[v], v)).unwrap();
        order.push(v);
        bs_remove(&mut alive, v);
        for u in bs_iter(g.row(v)) {
            if bs_contains(&alive, u) {
                deg[u] -= 1;
            }
        }
    }
    order.reverse(); // highest-core vertices first
    order
}

enum Mode {
    Maximize,
    /// Collect every clique of exactly this size.
    Enumerate(usize),
}

struct Solver<'g> {
    g: &'g BitGraph,
    mode: Mode,
    best: Vec<usize>,
    found: Vec<Vec<usize>>,
    stack: Vec<usize>,
    deadline: Option<Instant>,
    timed_out: bool,
    nodes: u64,
}

impl<'g> Solver<'g> {
    fn new(g: &'g BitGraph, mode: Mode, deadline: Option<Instant>) -> Solver<'g> {
        Solver {
            g,
            mode,
            best: Vec::new(),
            found: Vec::new(),
            stack: Vec::new(),
            deadline,
            timed_out: false,
            nodes: 0,
        }
    }

    fn out_of_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        self.nodes += 1;
        if self.nodes % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    /// Greedy coloring of `p_set`, returned as (vertex, color) with colors
    /// ascending; color is an upper bound on the clique number within the
    /// first vertices of the list.
    fn color_sort(&self, p_set: &[u64]) -> Vec<(usize, usize)> {
        let mut uncolored = p_set.to_vec();
        let mut out = Vec::with_capacity(bs_count(p_set));
        let mut color = 0usize;
        let mut cand = vec![0u64; self.g.words];
        while bs_count(&uncolored) > 0 {
            color += 1;
            cand.copy_from_slice(&uncolored);
            while let Some(v) = bs_first(&cand) {
                bs_remove(&mut cand, v);
                bs_remove(&mut uncolored, v);
                for (c, r) in cand.iter_mut().zip(self.g.row(v)) {
                    *c &= !r;
                }
                out.push((v, color));
            }
        }
        out
    }

    fn greedy_seed(&mut self, p_set: &[u64]) {
        let mut p = p_set.to_vec();
        let mut clique = Vec::new();
        while bs_count(&p) > 0 {
            let v = bs_iter(&p)
                .max_by_key(|&v| {
                    self.g
                        .row(v)
                        .iter()
                        .zip(&p)
                        .map(|(r, m)| (r & m).count_ones() as usize)
                        .sum::<usize>()
                })
                .unwrap();
            clique.push(v);
            let row = self.g.row(v).to_vec();
            for (m, r) in p.iter_mut().zip(row) {
                *m &= r;
            }
        }
        self.best = clique;
    }

    fn expand(&mut self, p_set: &mut [u64]) {
        if self.out_of_time() {
            return;
        }
        let colored = self.color_sort(p_set);
        for &(v, color) in colored.iter().rev() {
            match self.mode {
                Mode::Maximize => {
                    if self.stack.len() + color <= self.best.len() {
                        return;
                    }
                }
                Mode::Enumerate(target) => {
                    if self.stack.len() + color < target {
                        return;
                    }
                }
            }
            self.stack.push(v);
            match self.mode {
                Mode::Maximize => {
                    if self.stack.len() > self.best.len() {
                        self.best = self.stack.clone();
                    }
                }
                Mode::Enumerate(target) => {
                    if self.stack.len() == target {
                        self.found.push(self.stack.clone());
                        self.stack.pop();
                        bs_remove(p_set, v);
                        continue;
                    }
                }
            }
            let mut next: Vec<u64> = p_set
                .iter()
                .zip(self.g.row(v))
                .map(|(m, r)| m & r)
                .collect();
            if bs_count(&next) > 0 {
                self.expand(&mut next);
            }
            self.stack.pop();
            bs_remove(p_set, v);
            if self.timed_out {
                return;
            }
        }
    }
}

/// Induced candidate structure shared by the public search operations.
struct Induced {
    verts: Vec<Element>,
    bitgraph: BitGraph,
    /// `order[i]` = original candidate index at solver position `i`.
    order: Vec<usize>,
}

fn build_induced(
    graph: &Graph,
    candidates: &[Element],
    bound: usize,
) -> Result<Induced, CliqueError> {
    if candidates.len() > bound {
        return Err(CliqueError::InducedGraphTooLarge {
            size: candidates.len(),
            bound,
        });
    }
    let mut pre = BitGraph::new(candidates.len());
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            if graph.mutually_adjacent(candidates[i], candidates[j]) {
                pre.add_edge(i, j);
            }
        }
    }
    let order = degeneracy_order(&pre);
    let mut pos = vec![0usize; candidates.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bitgraph = BitGraph::new(candidates.len());
    for i in 0..candidates.len() {
        for j in bs_iter(pre.row(i)) {
            if j > i {
                bitgraph.add_edge(pos[i], pos[j]);
            }
        }
    }
    Ok(Induced {
        verts: candidates.to_vec(),
        bitgraph,
        order,
    })
}

fn full_mask(n: usize, words: usize) -> Vec<u64> {
    let mut m = vec![u64::MAX; words];
    for v in n..words * 64 {
        bs_remove(&mut m, v);
    }
    m
}

/// Common neighbors of every seed vertex (excluding the seed itself).
fn common_neighbors(graph: &Graph, seed: &[Element]) -> Vec<Element> {
    let field = graph.field();
    match seed.first() {
        None => field.elements().collect(),
        Some(&s0) => {
            let mut out = Vec::new();
            for v in graph.neighbors(s0) {
                if seed[1..].iter().all(|&s| graph.mutually_adjacent(v, s))
                    && graph.mutually_adjacent(v, s0)
                {
                    out.push(v);
                }
            }
            out
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub clique: Clique,
    /// Size of the reduced candidate set the exact search ran on.
    pub candidates: usize,
}

/// A maximum clique containing the seed: the seed's common neighborhood is
/// materialized and solved exactly, so the result is the maximum over all
/// cliques through the seed.
pub fn max_clique_through(
    graph: &Graph,
    seed: &[Element],
    opts: &SearchOptions,
) -> Result<SearchResult, CliqueError> {
    if !is_clique(graph, seed) {
        return Err(CliqueError::SeedNotClique);
    }
    let candidates = common_neighbors(graph, seed);
    let induced = build_induced(graph, &candidates, opts.induced_bound)?;
    let deadline = opts.deadline.map(|d| Instant::now() + d);
    let g = &induced.bitgraph;
    let mut solver = Solver::new(g, Mode::Maximize, deadline);
    let mut p = full_mask(g.n, g.words);
    if g.n > 0 {
        solver.greedy_seed(&p);
        solver.expand(&mut p);
    }
    let assemble = |solver_best: &[usize]| -> Clique {
        let mut verts: Vec<Element> = seed.to_vec();
        verts.extend(solver_best.iter().map(|&i| induced.verts[induced.order[i]]));
        Clique {
            vertices: sort_by_log(graph.field(), verts),
        }
    };
    let clique = assemble(&solver.best);
    debug_assert!(is_clique(graph, &clique.vertices));
    if solver.timed_out {
        return Err(CliqueError::TimedOut {
            best: clique.vertices,
        });
    }
    Ok(SearchResult {
        clique,
        candidates: candidates.len(),
    })
}

#[derive(Debug, Clone)]
pub struct ReductionResult {
    pub clique: Clique,
    pub k_used: u64,
    pub candidates: usize,
}

/// Neighborhood-intersection reduction: seeds the search with the prefix
/// `{0, 1, ..., k-1}` where `k` is the smallest integer with
/// `q / 2^k < reduction_target` (clamped to `p`, and shrunk until the prefix
/// is a clique), then runs the exact solver on the common neighborhood. The
/// reported clique is a maximum clique through that prefix.
pub fn clique_number_via_reduction(
    graph: &Graph,
    opts: &SearchOptions,
) -> Result<ReductionResult, CliqueError> {
    let field = graph.field();
    let q = field.q();
    let mut k = 0u64;
    while q >> k >= opts.reduction_target {
        k += 1;
    }
    k = k.min(field.p());
    let mut prefix: Vec<Element> = (0..k).map(|v| field.scalar(v)).collect();
    while !is_clique(graph, &prefix) {
        prefix.pop();
        k -= 1;
    }
    let result = max_clique_through(graph, &prefix, opts)?;
    Ok(ReductionResult {
        clique: result.clique,
        k_used: k,
        candidates: result.candidates,
    })
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub cliques: Vec<Clique>,
    pub candidates: usize,
}

/// All cliques of exactly `target` vertices containing the seed, in a
/// canonical order (lexicographic by discrete-log sequence). The search first
/// confirms no larger clique through the seed exists, so the enumerated
/// cliques are exactly the maximum ones when `target` is the clique number.
pub fn enumerate_max_cliques_through(
    graph: &Graph,
    seed: &[Element],
    target: usize,
    opts: &SearchOptions,
) -> Result<EnumerationResult, CliqueError> {
    if !is_clique(graph, seed) {
        return Err(CliqueError::SeedNotClique);
    }
    if target < seed.len() {
        return Ok(EnumerationResult {
            cliques: Vec::new(),
            candidates: 0,
        });
    }
    let best = max_clique_through(graph, seed, opts)?;
    if best.clique.size() > target {
        return Err(CliqueError::TargetExceeded {
            found: best.clique.size(),
        });
    }
    if best.clique.size() < target {
        return Ok(EnumerationResult {
            cliques: Vec::new(),
            candidates: best.candidates,
        });
    }
    if target == seed.len() {
        return Ok(EnumerationResult {
            cliques: vec![Clique {
                vertices: sort_by_log(graph.field(), seed.to_vec()),
            }],
            candidates: best.candidates,
        });
    }
    let candidates = common_neighbors(graph, seed);
    let induced = build_induced(graph, &candidates, opts.induced_bound)?;
    let deadline = opts.deadline.map(|d| Instant::now() + d);
    let g = &induced.bitgraph;
    let mut solver = Solver::new(g, Mode::Enumerate(target - seed.len()), deadline);
    let mut p = full_mask(g.n, g.words);
    solver.expand(&mut p);
    if solver.timed_out {
        return Err(CliqueError::TimedOut {
            best: best.clique.vertices,
        });
    }
    let field = graph.field();
    let mut cliques: Vec<Clique> = solver
        .found
        .iter()
        .map(|idxs| {
            let mut verts: Vec<Element> = seed.to_vec();
            verts.extend(idxs.iter().map(|&i| induced.verts[induced.order[i]]));
            Clique {
                vertices: sort_by_log(field, verts),
            }
        })
        .collect();
    cliques.sort_by_key(|c| log_indices(field, &c.vertices));
    for c in &cliques {
        debug_assert!(is_clique(graph, &c.vertices));
    }
    Ok(EnumerationResult {
        cliques,
        candidates: candidates.len(),
    })
}

// ---------------------------------------------------------------------------
// Profiles, the naive construction, and the conditional verdict
// ---------------------------------------------------------------------------

/// Per-class intersection counts of a clique through 0.
#[derive(Debug, Clone, Serialize)]
pub struct CliqueProfile {
    pub counts: Vec<u64>,
    pub contains_zero: bool,
    /// When `|A| = sqrt(q)`: whether every class in I is hit exactly
    /// `(sqrt(q)-1)/d` times and every other class not at all.
    pub equal_contribution: Option<bool>,
}

pub fn profile(graph: &Graph, verts: &[Element]) -> Result<CliqueProfile, CliqueError> {
    if !verts.contains(&Element::ZERO) {
        return Err(CliqueError::ZeroNotInClique);
    }
    if !is_clique(graph, verts) {
        return Err(CliqueError::NotAClique);
    }
    let field = graph.field();
    let two_d = graph.two_d();
    let mut counts = vec![0u64; two_d as usize];
    for &v in verts {
        if !v.is_zero() {
            let log = field.discrete_log(v).expect("nonzero");
            counts[(log % two_d) as usize] += 1;
        }
    }
    let equal_contribution = field.sqrt_q().and_then(|s| {
        (verts.len() as u64 == s).then(|| {
            let share = (s - 1) / graph.d();
            counts.iter().enumerate().all(|(j, &c)| {
                if graph.index_set().contains(j as u64) {
                    c == share
                } else {
                    c == 0
                }
            })
        })
    });
    Ok(CliqueProfile {
        counts,
        contains_zero: true,
        equal_contribution,
    })
}

/// The subfield-style construction `A(q, 2d, I) = {0} ∪ ∪_j g^{e_j} H` with
/// `H = <g^{d(√q+1)}>`. The coset representative exponents
/// `e_j = (√q+1)·⌊m_j/2⌋ + (m_j mod 2)` lie in class `m_j` (because
/// `√q ≡ 1 mod 2d`) and are aligned with the subfield presentation, so even
/// index sets reproduce `F_√q` exactly and odd ones its multiplicative shift
/// `g·F_√q`.
pub fn naive_set(graph: &Graph) -> Result<Vec<Element>, CliqueError> {
    let params = graph.params().ok_or(CliqueError::NotSemiPrimitive)?;
    if params.r % 2 != 0 {
        return Err(CliqueError::ROdd { r: params.r });
    }
    let field = graph.field();
    let q = field.q();
    let s = field.sqrt_q().expect("even r forces square q");
    let d = graph.d();
    let stride = d * (s + 1);
    let mut out = vec![Element::ZERO];
    for &m in &graph.index_set().members {
        let e = (s + 1) * (m / 2) + m % 2;
        let mut k = e % (q - 1);
        for _ in 0..(s - 1) / d {
            out.push(field.exp_of(k));
            k = (k + stride) % (q - 1);
        }
    }
    Ok(sort_by_log(field, out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    PaleyType,
    ConditionallyBelowSqrtQ,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub verdict: Verdict,
    pub p: u64,
    pub t: u32,
    pub r: u32,
    pub d: u64,
    pub p_to_t: u64,
    /// The threshold `10.2 r^2 d` as the exact rational `51 r^2 d / 5`.
    pub threshold_num: u64,
    pub threshold_den: u64,
}

/// Classifies the graph for the conditional bound: Paley-type index sets are
/// exempt; otherwise `p^t > 10.2 r^2 d` puts the clique number conditionally
/// below `sqrt(q)`.
pub fn conditional_verdict(graph: &Graph) -> Result<VerdictReport, CliqueError> {
    let params = graph.params().ok_or(CliqueError::NotSemiPrimitive)?;
    if params.r % 2 != 0 {
        return Err(CliqueError::ROdd { r: params.r });
    }
    let (two_dp, reduced) = minimal_representation(graph.index_set());
    let is_paley = two_dp == 2 && (reduced.members == [0] || reduced.members == [1]);
    let d = graph.d();
    let p_to_t = params.p_to_t();
    let threshold_num = 51 * params.r as u64 * params.r as u64 * d;
    let verdict = if is_paley {
        Verdict::PaleyType
    } else if 5 * p_to_t > threshold_num {
        Verdict::ConditionallyBelowSqrtQ
    } else {
        Verdict::Inconclusive
    };
    Ok(VerdictReport {
        verdict,
        p: params.p,
        t: params.t,
        r: params.r,
        d,
        p_to_t,
        threshold_num,
        threshold_den: 5,
    })
}
