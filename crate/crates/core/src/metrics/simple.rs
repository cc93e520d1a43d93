use crate::graph::Graph;
use crate::orbit::Orbit;

/// Simple undirected graph of any size as sorted neighbour lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Builds from neighbour lists, dropping self-loops and duplicates and
    /// symmetrising.
    pub fn from_adjacency(lists: Vec<Vec<usize>>) -> Self {
        let n = lists.len();
        let mut adj = vec![Vec::new(); n];
        for (u, list) in lists.into_iter().enumerate() {
            for v in list {
                if u != v {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        SimpleGraph { adj }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            lists[u].push(v);
        }
        SimpleGraph::from_adjacency(lists)
    }

    pub fn from_graph(g: &Graph) -> Self {
        SimpleGraph {
            adj: (0..g.n()).map(|v| crate::graph::bits(g.neighbours(v)).collect()).collect(),
        }
    }

    /// The loop-stripped, label-ignored orbit graph.
    pub fn from_orbit(o: &Orbit) -> Self {
        SimpleGraph {
            adj: o.simple_adjacency(),
        }
    }

    pub fn complete(n: usize) -> Self {
        SimpleGraph {
            adj: (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// Vertices are the edges of `self` (in [`SimpleGraph::edges`] order),
    /// adjacent when they share an endpoint.
    pub fn line_graph(&self) -> SimpleGraph {
        let edges = self.edges();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut lists = vec![Vec::new(); edges.len()];
        for inc in &incident {
            for (k, &a) in inc.iter().enumerate() {
                for &b in &inc[k + 1..] {
                    lists[a].push(b);
                }
            }
        }
        SimpleGraph::from_adjacency(lists)
    }
}
