//! Shared helpers for the integration suites: graph construction, an
//! independent brute-force maximum-clique oracle, and small combinatorial
//! utilities.

// Each integration binary compiles this module and uses a subset of it.
#![allow(dead_code)]

use cyclopaley::field::{Element, Field};
use cyclopaley::graph::Graph;
use std::sync::Arc;

pub fn graph(p: u64, n: u32, two_d: u64, members: &[u64]) -> Graph {
    let field = Arc::new(Field::new(p, n).expect("field builds"));
    Graph::build_from_members(field, two_d, members).expect("graph builds")
}

/// Plain recursive maximum clique on an explicit adjacency matrix: branch on
/// each candidate and restrict to its later neighbors, pruning only on the
/// remaining-candidate count. Deliberately unrelated to the library solver
/// (no bitsets, no coloring, no degeneracy order) so it can serve as an
/// oracle.
pub fn brute_force_omega(adj: &[Vec<bool>]) -> usize {
    fn rec(adj: &[Vec<bool>], cands: &[usize], size: usize, best: &mut usize) {
        if size > *best {
            *best = size;
        }
        if size + cands.len() <= *best {
            return;
        }
        for (i, &v) in cands.iter().enumerate() {
            if size + (cands.len() - i) <= *best {
                break;
            }
            let rest: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&u| adj[v][u])
                .collect();
            rec(adj, &rest, size + 1, best);
        }
    }
    let all: Vec<usize> = (0..adj.len()).collect();
    let mut best = 0;
    rec(adj, &all, 0, &mut best);
    best
}

/// Adjacency matrix of the whole graph (only sensible for small q).
pub fn full_adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let q = g.field().q() as usize;
    let mut adj = vec![vec![false; q]; q];
    for (a, row) in adj.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            if a != b {
                *cell = g.mutually_adjacent(Element(a as u32), Element(b as u32));
            }
        }
    }
    adj
}

/// Enumerates every clique of exactly `target` vertices that contains
/// `seed`, by plain recursion over explicit candidate lists. Independent of
/// the library's bitset enumerator, for oracle comparisons.
pub fn brute_force_cliques_through(
    adj: &[Vec<bool>],
    seed: &[usize],
    target: usize,
) -> Vec<Vec<usize>> {
    fn rec(
        adj: &[Vec<bool>],
        cands: &[usize],
        current: &mut Vec<usize>,
        target: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == target {
            let mut c = current.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        if current.len() + cands.len() < target {
            return;
        }
        for (i, &v) in cands.iter().enumerate() {
            current.push(v);
            let rest: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&u| adj[v][u])
                .collect();
            rec(adj, &rest, current, target, out);
            current.pop();
        }
    }
    let cands: Vec<usize> = (0..adj.len())
        .filter(|&v| !seed.contains(&v) && seed.iter().all(|&s| adj[s][v]))
        .collect();
    let mut out = Vec::new();
    let mut current = seed.to_vec();
    rec(adj, &cands, &mut current, target, &mut out);
    out.sort();
    out
}

/// All size-k subsets of {0, ..., m-1}, lexicographic.
pub fn combinations(m: u64, k: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(m: u64, k: u64, start: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() as u64 == k {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            if m - v < k - cur.len() as u64 {
                break;
            }
            cur.push(v);
            rec(m, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(m, k, 0, &mut cur, &mut out);
    out
}

/// Prints the acceptance line for one criterion and asserts it.
pub fn criterion(n: u32, pass: bool, detail: &str) {
    println!(
        "criterion {n:02} {}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n:02} failed: {detail}");
}
