//! Exact vertex and edge colouring by DSATUR backtracking.

use super::SimpleGraph;
use crate::error::{Error, Result};

/// Exact chromatic number.
pub fn chromatic_number(g: &SimpleGraph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let lower = greedy_clique(g);
    let upper = dsatur_greedy(g);
    colour_between(g, lower, upper)
}

/// Exact chromatic index: the chromatic number of the line graph, searched
/// upward from the maximum degree.
pub fn chromatic_index(g: &SimpleGraph) -> usize {
    if g.edge_count() == 0 {
        return 0;
    }
    let line = g.line_graph();
    let lower = g.max_degree();
    let upper = dsatur_greedy(&line);
    colour_between(&line, lower, upper)
}

/// Exact chromatic index given a proper edge colouring of `g` (one colour
/// per edge in [`SimpleGraph::edges`] order): only counts below the
/// colouring's are searched.
pub fn chromatic_index_with_colouring(g: &SimpleGraph, colouring: &[usize]) -> Result<usize> {
    let edges = g.edges();
    if colouring.len() != edges.len() {
        return Err(Error::Argument(format!(
            "colouring covers {} edges, graph has {}",
            colouring.len(),
            edges.len()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for (&(u, v), &c) in edges.iter().zip(colouring) {
        if !seen.insert((u, c)) || !seen.insert((v, c)) {
            return Err(Error::Argument(format!("colour {c} repeats at an endpoint of edge ({u}, {v})")));
        }
    }
    let used = colouring.iter().collect::<std::collections::HashSet<_>>().len();
    if edges.is_empty() {
        return Ok(0);
    }
    Ok(colour_between(&g.line_graph(), g.max_degree(), used))
}

fn colour_between(g: &SimpleGraph, lower: usize, upper: usize) -> usize {
    (lower..upper).find(|&k| is_colourable(g, k)).unwrap_or(upper)
}

/// Size of a clique grown greedily from each vertex; a lower bound on the
/// chromatic number.
pub fn greedy_clique(g: &SimpleGraph) -> usize {
    let mut best = usize::from(g.n() > 0);
    for v in 0..g.n() {
        let mut clique = vec![v];
        let mut candidates: Vec<usize> = g.neighbours(v).to_vec();
        while !candidates.is_empty() {
            let &pick = candidates
                .iter()
                .max_by_key(|&&c| {
                    (candidates.iter().filter(|&&d| g.has_edge(c, d)).count(), std::cmp::Reverse(c))
                })
                .unwrap();
            clique.push(pick);
            candidates.retain(|&c| c != pick && g.has_edge(c, pick));
        }
        best = best.max(clique.len());
    }
    best
}

/// Colours used by greedy DSATUR; an upper bound on the chromatic number.
pub fn dsatur_greedy(g: &SimpleGraph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut state = State::new(g, n);
    let mut used = 0;
    for _ in 0..n {
        let v = state.pick(g);
        let c = (0..n).find(|&c| state.conflicts[v][c] == 0).unwrap();
        state.assign(g, v, c);
        used = used.max(c + 1);
    }
    used
}

/// Whether `g` has a proper colouring with `k` colours.
pub fn is_colourable(g: &SimpleGraph, k: usize) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut state = State::new(g, k);
    search(g, &mut state, k, 0, n)
}

struct State {
    colour: Vec<Option<usize>>,
    /// Number of neighbours holding each colour.
    conflicts: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    uncoloured_degree: Vec<usize>,
}

impl State {
    fn new(g: &SimpleGraph, k: usize) -> Self {
        let n = g.n();
        State {
            colour: vec![None; n],
            conflicts: vec![vec![0; k]; n],
            saturation: vec![0; n],
            uncoloured_degree: (0..n).map(|v| g.degree(v)).collect(),
        }
    }

    fn pick(&self, g: &SimpleGraph) -> usize {
        (0..g.n())
            .filter(|&v| self.colour[v].is_none())
            .max_by_key(|&v| (self.saturation[v], self.uncoloured_degree[v], std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains")
    }

    fn assign(&mut self, g: &SimpleGraph, v: usize, c: usize) {
        self.colour[v] = Some(c);
        for &w in g.neighbours(v) {
            self.uncoloured_degree[w] -= 1;
            if self.conflicts[w][c] == 0 {
                self.saturation[w] += 1;
            }
            self.conflicts[w][c] += 1;
        }
    }

    fn unassign(&mut self, g: &SimpleGraph, v: usize, c: usize) {
        self.colour[v] = None;
        for &w in g.neighbours(v) {
            self.uncoloured_degree[w] += 1;
            self.conflicts[w][c] -= 1;
            if self.conflicts[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }
}

fn search(g: &SimpleGraph, state: &mut State, k: usize, used: usize, remaining: usize) -> bool {
    if remaining == 0 {
        return true;
    }
    let v = state.pick(g);
    if state.saturation[v] >= k {
        return false;
    }
    // Colours beyond the first unused one are interchangeable.
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if state.conflicts[v][c] != 0 {
            continue;
        }
        state.assign(g, v, c);
        let ok = search(g, state, k, used.max(c + 1), remaining - 1);
        state.unassign(g, v, c);
        if ok {
            return true;
        }
    }
    false
}
