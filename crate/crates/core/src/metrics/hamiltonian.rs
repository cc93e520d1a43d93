//! Hamiltonian-cycle search with a node budget.

use serde::{Deserialize, Serialize};

use super::SimpleGraph;

/// Default number of search nodes before giving up.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hamiltonicity {
    Yes,
    No,
    /// The budget ran out before the search finished.
    Unknown,
}

impl Hamiltonicity {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Hamiltonicity::Yes => Some(true),
            Hamiltonicity::No => Some(false),
            Hamiltonicity::Unknown => None,
        }
    }
}

pub fn has_hamiltonian_cycle(g: &SimpleGraph) -> Hamiltonicity {
    hamiltonian_cycle(g, DEFAULT_BUDGET).0
}

/// Searches for a Hamiltonian cycle, visiting at most `budget` nodes.
/// Returns the cycle (as a vertex sequence) when one is found.
pub fn hamiltonian_cycle(g: &SimpleGraph, budget: u64) -> (Hamiltonicity, Option<Vec<usize>>) {
    let n = g.n();
    if n < 3 || (0..n).any(|v| g.degree(v) < 2) || !g.is_connected() || has_cut_vertex(g) {
        return (Hamiltonicity::No, None);
    }
    if let Some((a, b)) = bipartition_sizes(g) {
        if a != b {
            return (Hamiltonicity::No, None);
        }
    }
    let start = (0..n).min_by_key(|&v| (g.degree(v), v)).unwrap();
    let mut s = Search {
        g,
        start,
        budget,
        nodes: 0,
        visited: vec![false; n],
        avail: (0..n).map(|v| g.degree(v)).collect(),
        path: vec![start],
        seen: vec![0; n],
        stamp: 0,
    };
    s.visited[start] = true;
    match s.extend() {
        Some(true) => (Hamiltonicity::Yes, Some(s.path)),
        Some(false) => (Hamiltonicity::No, None),
        None => (Hamiltonicity::Unknown, None),
    }
}

struct Search<'a> {
    g: &'a SimpleGraph,
    start: usize,
    budget: u64,
    nodes: u64,
    visited: Vec<bool>,
    /// For unvisited vertices: neighbours that are unvisited, the head or
    /// the start.
    avail: Vec<usize>,
    path: Vec<usize>,
    seen: Vec<u32>,
    stamp: u32,
}

impl Search<'_> {
    /// `Some(found)` on completion, `None` when the budget is spent.
    fn extend(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let head = *self.path.last().unwrap();
        let n = self.g.n();
        if self.path.len() == n {
            return Some(self.g.has_edge(head, self.start));
        }
        if !self.remainder_connected(head) {
            return Some(false);
        }
        let mut candidates: Vec<usize> =
            self.g.neighbours(head).iter().copied().filter(|&w| !self.visited[w]).collect();
        let remaining = n - self.path.len();
        if remaining > 1 && head != self.start {
            // A neighbour with only two options must be entered now, or it
            // loses the head and is stranded.
            let forced: Vec<usize> = candidates.iter().copied().filter(|&w| self.avail[w] <= 2).collect();
            match forced.len() {
                0 => {}
                1 => candidates = forced,
                _ => return Some(false),
            }
        }
        candidates.sort_by_key(|&w| (self.avail[w], w));
        for w in candidates {
            if self.advance(head, w) {
                self.path.push(w);
                self.visited[w] = true;
                let r = self.extend();
                if r == Some(true) {
                    return r;
                }
                self.visited[w] = false;
                self.path.pop();
                self.retreat(head, w);
                match r {
                    Some(false) => {}
                    other => return other,
                }
            } else {
                self.retreat(head, w);
            }
        }
        Some(false)
    }

    /// Moves the head from `h` to `w`; false if some vertex is stranded.
    fn advance(&mut self, h: usize, w: usize) -> bool {
        let mut ok = true;
        if h != self.start {
            for &x in self.g.neighbours(h) {
                if !self.visited[x] && x != w {
                    self.avail[x] -= 1;
                    if self.avail[x] < 2 {
                        ok = false;
                    }
                }
            }
        }
        // `w` leaves the unvisited set, so its unvisited neighbours keep it
        // as the new head; nothing else changes.
        ok
    }

    fn retreat(&mut self, h: usize, w: usize) {
        if h != self.start {
            for &x in self.g.neighbours(h) {
                if !self.visited[x] && x != w {
                    self.avail[x] += 1;
                }
            }
        }
    }

    /// Every unvisited vertex must be reachable from the head through
    /// unvisited vertices, and the start must touch the unvisited set.
    fn remainder_connected(&mut self, head: usize) -> bool {
        self.stamp += 1;
        let stamp = self.stamp;
        let mut stack = vec![head];
        self.seen[head] = stamp;
        let mut reached = 0;
        let mut touches_start = false;
        while let Some(u) = stack.pop() {
            for &x in self.g.neighbours(u) {
                if x == self.start && u != head {
                    touches_start = true;
                }
                if !self.visited[x] && self.seen[x] != stamp {
                    self.seen[x] = stamp;
                    reached += 1;
                    stack.push(x);
                }
            }
        }
        reached == self.g.n() - self.path.len() && touches_start
    }
}

fn has_cut_vertex(g: &SimpleGraph) -> bool {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    // Iterative DFS from vertex 0 (the graph is connected).
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    let mut root_children = 0;
    while let Some(&(u, parent, idx)) = stack.last() {
        if idx < g.degree(u) {
            stack.last_mut().unwrap().2 += 1;
            let v = g.neighbours(u)[idx];
            if disc[v] == usize::MAX {
                time += 1;
                disc[v] = time;
                low[v] = time;
                if u == 0 {
                    root_children += 1;
                }
                stack.push((v, u, 0));
            } else if v != parent {
                low[u] = low[u].min(disc[v]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[u]);
                if parent != 0 && low[u] >= disc[parent] {
                    return true;
                }
            }
        }
    }
    root_children > 1
}

fn bipartition_sizes(g: &SimpleGraph) -> Option<(usize, usize)> {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut counts = [0usize; 2];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        counts[0] += 1;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.neighbours(u) {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    counts[side[v] as usize] += 1;
                    stack.push(v);
                } else if side[v] == side[u] {
                    return None;
                }
            }
        }
    }
    Some((counts[0], counts[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        SimpleGraph::from_edges(10, &edges)
    }

    fn is_cycle(g: &SimpleGraph, c: &[usize]) -> bool {
        let mut sorted = c.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == g.n() && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
    }

    #[test]
    fn small_cases() {
        assert_eq!(has_hamiltonian_cycle(&SimpleGraph::complete(2)), Hamiltonicity::No);
        assert_eq!(has_hamiltonian_cycle(&SimpleGraph::complete(3)), Hamiltonicity::Yes);
        assert_eq!(has_hamiltonian_cycle(&SimpleGraph::cycle(9)), Hamiltonicity::Yes);
        assert_eq!(has_hamiltonian_cycle(&petersen()), Hamiltonicity::No);
        let k23 = SimpleGraph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(has_hamiltonian_cycle(&k23), Hamiltonicity::No);
    }

    #[test]
    fn returned_cycle_is_valid() {
        let cube: Vec<_> = (0..16usize)
            .flat_map(|v| (0..4).map(move |b| (v, v ^ (1 << b))))
            .filter(|&(u, v)| u < v)
            .collect();
        let g = SimpleGraph::from_edges(16, &cube);
        let (h, cycle) = hamiltonian_cycle(&g, DEFAULT_BUDGET);
        assert_eq!(h, Hamiltonicity::Yes);
        assert!(is_cycle(&g, &cycle.unwrap()));
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        assert_eq!(hamiltonian_cycle(&petersen(), 1).0, Hamiltonicity::Unknown);
    }

    #[test]
    fn cut_vertices() {
        // Two triangles sharing a vertex.
        let bowtie = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert!(has_cut_vertex(&bowtie));
        assert!(!has_cut_vertex(&SimpleGraph::cycle(5)));
        assert_eq!(has_hamiltonian_cycle(&bowtie), Hamiltonicity::No);
    }
}
