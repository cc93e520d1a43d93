//! Small simple undirected graphs and local complementation.
//!
//! A [`Graph`] stores one `u16` adjacency row per vertex, so every graph on at
//! most [`MAX_VERTICES`] vertices is a plain `Copy` value. Operations never
//! mutate their input.

use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 16;

/// Bit mask over the vertices of a [`Graph`]; bit `v` stands for vertex `v`.
pub type VertexSet = u16;

/// A simple undirected graph on `1..=16` vertices stored as a bit matrix.
///
/// The adjacency matrix is symmetric with a zero diagonal. The derived
/// ordering compares vertex count first and then rows lexicographically; it
/// is the total order used for tie-breaking throughout the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: u8,
    rows: [u16; MAX_VERTICES],
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "graphs are limited to {MAX_VERTICES} vertices, got {n}"
            )));
        }
        Ok(Graph {
            n: n as u8,
            rows: [0; MAX_VERTICES],
        })
    }

    /// Builds a graph from 0-based edge pairs. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidGraph(format!("self-edge at vertex {u}")));
            }
            g.rows[u] |= 1 << v;
            g.rows[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, validating symmetry and the diagonal.
    pub fn from_rows(rows: &[u16]) -> Result<Self> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        let valid = if n == MAX_VERTICES { u16::MAX } else { (1u16 << n) - 1 };
        for (i, &row) in rows.iter().enumerate() {
            if row & !valid != 0 {
                return Err(Error::InvalidGraph(format!("row {i} references missing vertices")));
            }
            if row & (1 << i) != 0 {
                return Err(Error::InvalidGraph(format!("self-edge at vertex {i}")));
            }
            g.rows[i] = row;
        }
        for i in 0..n {
            for j in 0..n {
                if g.has_edge(i, j) != g.has_edge(j, i) {
                    return Err(Error::InvalidGraph(format!("asymmetric entry ({i}, {j})")));
                }
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = g.all_vertices();
        for v in 0..n {
            g.rows[v] = all & !(1 << v);
        }
        Ok(g)
    }

    /// Star with centre 0 and leaves `1..n`.
    pub fn star(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Mask with one bit set per vertex.
    #[inline]
    pub fn all_vertices(&self) -> VertexSet {
        if self.n() == MAX_VERTICES {
            u16::MAX
        } else {
            (1u16 << self.n) - 1
        }
    }

    /// Adjacency rows, one per vertex.
    #[inline]
    pub fn rows(&self) -> &[u16] {
        &self.rows[..self.n()]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Open neighbourhood of `v` as a mask.
    #[inline]
    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in bits(self.rows[u] & !((2u32 << u) - 1) as u16) {
                out.push((u, v));
            }
        }
        out
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Complements the subgraph induced on the neighbourhood of `alpha`.
    ///
    /// Each neighbour's row is XORed with the neighbourhood mask, with the
    /// diagonal bit cleared.
    pub fn local_complement(&self, alpha: usize) -> Result<Graph> {
        self.check_vertex(alpha)?;
        Ok(self.local_complement_unchecked(alpha))
    }

    #[inline]
    pub(crate) fn local_complement_unchecked(&self, alpha: usize) -> Graph {
        let mask = self.rows[alpha];
        let mut out = *self;
        for v in bits(mask) {
            out.rows[v] ^= mask & !(1 << v);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let all = self.all_vertices();
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen & all == all
    }

    /// Vertices of degree exactly one, ascending.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Applies a relabelling: vertex `v` of `self` becomes `perm[v]`.
    ///
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length must equal vertex count");
        let mut out = Graph { n: self.n, rows: [0; MAX_VERTICES] };
        for u in 0..self.n() {
            let mut row = 0u16;
            for v in bits(self.rows[u]) {
                row |= 1 << perm[v];
            }
            out.rows[perm[u]] = row;
        }
        out
    }

    /// Lexicographically sorted 0-based edge list; used as an ordering key.
    pub fn sorted_edge_list(&self) -> Vec<(usize, usize)> {
        self.edges()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Iterates over the set bits of a mask, lowest first.
#[inline]
pub fn bits(mut mask: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_centre_complements_to_complete_graph() {
        let star = Graph::star(4).unwrap();
        assert_eq!(star.local_complement(0).unwrap(), Graph::complete(4).unwrap());
    }

    #[test]
    fn low_degree_vertex_is_fixed_point() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(p4.local_complement(0).unwrap(), p4);
        assert_eq!(p4.local_complement(3).unwrap(), p4);
        assert_ne!(p4.local_complement(1).unwrap(), p4);
        let lonely = Graph::empty(3).unwrap();
        assert_eq!(lonely.local_complement(2).unwrap(), lonely);
    }

    #[test]
    fn out_of_range_vertex_is_rejected() {
        let g = Graph::path(3).unwrap();
        assert!(matches!(
            g.local_complement(3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::complete(2).unwrap().is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
        assert!(Graph::path(4).unwrap().is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
    }

    #[test]
    fn leaves_are_degree_one_vertices() {
        assert_eq!(Graph::path(4).unwrap().leaves(), vec![0, 3]);
        assert!(Graph::complete(4).unwrap().leaves().is_empty());
        assert_eq!(Graph::star(4).unwrap().leaves(), vec![1, 2, 3]);
    }

    #[test]
    fn construction_validates_input() {
        assert!(Graph::empty(0).is_err());
        assert!(Graph::empty(17).unwrap_err().is_capacity());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_rows(&[0b10, 0b00]).is_err());
        assert!(Graph::from_rows(&[0b10, 0b01]).is_ok());
        assert!(Graph::complete(16).is_ok());
    }

    #[test]
    fn relabel_moves_edges() {
        let p = Graph::path(3).unwrap();
        let q = p.relabel(&[1, 0, 2]);
        assert_eq!(q.edges(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn full_width_graph_round_trips() {
        let k = Graph::complete(16).unwrap();
        assert_eq!(k.edge_count(), 120);
        assert_eq!(k.local_complement(5).unwrap().edge_count(), 15);
    }
}
