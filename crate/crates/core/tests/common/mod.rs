#![allow(dead_code)]

use lcorbit::Graph;
use proptest::prelude::*;

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

pub fn from_bits(n: usize, bits: &[bool]) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().zip(bits).filter(|(_, &b)| b).map(|(e, _)| e).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Every labelled graph on `n` vertices.
pub fn all_labelled(n: usize) -> Vec<Graph> {
    let p = pairs(n);
    (0u64..1 << p.len())
        .map(|code| {
            let bits: Vec<bool> = (0..p.len()).map(|i| code >> i & 1 == 1).collect();
            from_bits(n, &bits)
        })
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically smallest relabelling; a slow canonical form.
pub fn brute_canon(g: &Graph, perms: &[Vec<usize>]) -> Graph {
    perms.iter().map(|p| g.relabel(p)).min().unwrap()
}

pub fn brute_aut_order(g: &Graph, perms: &[Vec<usize>]) -> u128 {
    perms.iter().filter(|p| g.relabel(p) == *g).count() as u128
}

pub fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| from_bits(n, &bits))
    })
}

pub fn connected_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(min_n, max_n).prop_filter("connected", Graph::is_connected)
}
