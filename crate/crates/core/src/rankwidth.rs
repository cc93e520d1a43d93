//! Cut-rank and exact rank-width.
//!
//! Rank-width is found by growing rank decompositions one leaf at a time:
//! a new graph vertex subdivides an existing tree edge and hangs off the new
//! internal node. Every leaf-labelled subcubic tree arises exactly once this
//! way. While the tree is partial, the rank of the biadjacency block between
//! the placed vertices on either side of an edge can only grow as more
//! vertices are placed, so it is a valid bound for pruning.

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Largest graph accepted by [`rank_width`]; the search space is
/// `(2n-5)!!` leaf-labelled trees.
pub const MAX_RANK_WIDTH_VERTICES: usize = 10;

/// GF(2) rank of the biadjacency block between `side` and its complement.
pub fn cut_rank(g: &Graph, side: u16) -> usize {
    let side = side & g.all_vertices();
    cut_rank_within(g, side, g.all_vertices() & !side)
}

/// Rank of the block with rows `a` and columns `b` (disjoint masks).
fn cut_rank_within(g: &Graph, a: u16, b: u16) -> usize {
    let mut basis = [0u16; 16];
    let mut rank = 0;
    for v in bits(a) {
        let mut row = g.neighbours(v) & b;
        while row != 0 {
            let pivot = 15 - row.leading_zeros() as usize;
            if basis[pivot] == 0 {
                basis[pivot] = row;
                rank += 1;
                break;
            }
            row ^= basis[pivot];
        }
    }
    rank
}

/// A tree whose leaves are `0..leaves` and whose other nodes have degree 3
/// (for three or more leaves).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcubicTree {
    pub leaves: usize,
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SubcubicTree {
    /// Tree on leaves `0`, `1`, `2` (or fewer), with node ids `0..leaves`
    /// reserved for leaves still to be inserted.
    fn initial(leaves: usize) -> Self {
        match leaves {
            0 | 1 => SubcubicTree { leaves, node_count: leaves, edges: vec![] },
            2 => SubcubicTree { leaves, node_count: 2, edges: vec![(0, 1)] },
            _ => SubcubicTree {
                leaves,
                node_count: leaves + 1,
                edges: vec![(0, leaves), (1, leaves), (2, leaves)],
            },
        }
    }

    /// Hangs `leaf` off a new node subdividing edge `edge`.
    fn insert(&mut self, edge: usize, leaf: usize) {
        let (a, b) = self.edges[edge];
        let w = self.node_count;
        self.node_count += 1;
        self.edges[edge] = (a, w);
        self.edges.push((w, b));
        self.edges.push((w, leaf));
    }

    fn remove_last_insert(&mut self, edge: usize) {
        self.edges.pop();
        let (_, b) = self.edges.pop().expect("insert pushed two edges");
        let (a, _) = self.edges[edge];
        self.edges[edge] = (a, b);
        self.node_count -= 1;
    }

    /// For each edge, the mask of leaves on the side of its first endpoint.
    pub fn edge_sides(&self) -> Vec<u16> {
        let mut adj = vec![Vec::new(); self.node_count];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &(a, _))| {
                let mut mask = 0u16;
                let mut stack = vec![(a, usize::MAX)];
                while let Some((x, via)) = stack.pop() {
                    if x < self.leaves {
                        mask |= 1 << x;
                    }
                    for &(y, e) in &adj[x] {
                        if e != i && e != via {
                            stack.push((y, e));
                        }
                    }
                }
                mask
            })
            .collect()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == node || b == node).count()
    }
}

/// Stream of every leaf-labelled subcubic tree with `k` leaves.
pub struct SubcubicTrees {
    leaves: usize,
    choices: Vec<usize>,
    done: bool,
}

/// Enumerates leaf-labelled subcubic trees; `(2k-5)!!` of them for `k >= 3`.
pub fn enumerate_subcubic_trees(k: usize) -> Result<SubcubicTrees> {
    if !(2..=MAX_RANK_WIDTH_VERTICES).contains(&k) {
        return Err(Error::Argument(format!(
            "leaf count must lie in 2..={MAX_RANK_WIDTH_VERTICES}, got {k}"
        )));
    }
    Ok(SubcubicTrees {
        leaves: k,
        choices: vec![0; k.saturating_sub(3)],
        done: false,
    })
}

impl Iterator for SubcubicTrees {
    type Item = SubcubicTree;

    fn next(&mut self) -> Option<SubcubicTree> {
        if self.done {
            return None;
        }
        let mut tree = SubcubicTree::initial(self.leaves);
        for (i, &edge) in self.choices.iter().enumerate() {
            tree.insert(edge, i + 3);
        }
        // Mixed-radix increment: the tree with j leaves has 2j - 3 edges.
        self.done = true;
        for (i, c) in self.choices.iter_mut().enumerate() {
            let radix = 2 * (i + 3) - 3;
            *c += 1;
            if *c < radix {
                self.done = false;
                break;
            }
            *c = 0;
        }
        Some(tree)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDecomposition {
    pub tree: SubcubicTree,
    /// Tree node holding each graph vertex.
    pub leaf_of: Vec<usize>,
    pub width: usize,
}

impl RankDecomposition {
    /// Width recomputed from the tree: maximum cut-rank over its edges.
    pub fn recompute_width(&self, g: &Graph) -> usize {
        let vertex_at: Vec<usize> = {
            let mut v = vec![0; self.tree.leaves];
            for (vertex, &node) in self.leaf_of.iter().enumerate() {
                v[node] = vertex;
            }
            v
        };
        self.tree
            .edge_sides()
            .into_iter()
            .map(|side| {
                let graph_side = bits(side).fold(0u16, |m, leaf| m | 1 << vertex_at[leaf]);
                cut_rank(g, graph_side)
            })
            .max()
            .unwrap_or(0)
    }
}

/// Width of `tree` as a decomposition of `g` with leaf `i` holding vertex `i`.
pub fn decomposition_width(g: &Graph, tree: &SubcubicTree) -> usize {
    tree.edge_sides().into_iter().map(|s| cut_rank(g, s)).max().unwrap_or(0)
}

/// Exact rank-width with an optimal decomposition.
pub fn rank_width(g: &Graph) -> Result<(usize, RankDecomposition)> {
    let n = g.n();
    if n > MAX_RANK_WIDTH_VERTICES {
        return Err(Error::Capacity(format!(
            "rank-width search supports at most {MAX_RANK_WIDTH_VERTICES} vertices, got {n}"
        )));
    }
    if n < 3 {
        let tree = SubcubicTree::initial(n);
        let width = if n == 2 { cut_rank(g, 1) } else { 0 };
        let dec = RankDecomposition {
            tree,
            leaf_of: (0..n).collect(),
            width,
        };
        return Ok((width, dec));
    }
    let floor = usize::from(g.edge_count() > 0);
    let mut search = WidthSearch {
        g,
        floor,
        best: usize::MAX,
        best_tree: None,
    };
    let mut tree = SubcubicTree::initial(n);
    search.grow(&mut tree, 3, 0b111);
    let tree = search.best_tree.expect("at least one complete tree is visited");
    let width = search.best;
    Ok((
        width,
        RankDecomposition {
            tree,
            leaf_of: (0..n).collect(),
            width,
        },
    ))
}

struct WidthSearch<'a> {
    g: &'a Graph,
    floor: usize,
    best: usize,
    best_tree: Option<SubcubicTree>,
}

impl WidthSearch<'_> {
    fn bound(&self, tree: &SubcubicTree, placed: u16) -> usize {
        tree.edge_sides()
            .into_iter()
            .map(|side| cut_rank_within(self.g, side & placed, placed & !side))
            .max()
            .unwrap_or(0)
    }

    fn grow(&mut self, tree: &mut SubcubicTree, next: usize, placed: u16) {
        if self.best <= self.floor {
            return;
        }
        if self.bound(tree, placed) >= self.best {
            return;
        }
        if next == self.g.n() {
            self.best = self.bound(tree, placed);
            self.best_tree = Some(tree.clone());
            return;
        }
        for edge in 0..tree.edges.len() {
            tree.insert(edge, next);
            self.grow(tree, next + 1, placed | 1 << next);
            tree.remove_last_insert(edge);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_factorial(k: usize) -> usize {
        (1..=k).rev().step_by(2).product()
    }

    #[test]
    fn cut_rank_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(cut_rank(&k4, 0), 0);
        assert_eq!(cut_rank(&k4, 0b1111), 0);
        assert_eq!(cut_rank(&k4, 0b0011), 1);
        let p4 = Graph::path(4).unwrap();
        assert_eq!(cut_rank(&p4, 0b0101), 2);
    }

    #[test]
    fn tree_counts() {
        assert_eq!(enumerate_subcubic_trees(2).unwrap().count(), 1);
        assert_eq!(enumerate_subcubic_trees(3).unwrap().count(), 1);
        assert_eq!(enumerate_subcubic_trees(4).unwrap().count(), 3);
        assert_eq!(enumerate_subcubic_trees(5).unwrap().count(), 15);
        for k in 3..=8 {
            assert_eq!(enumerate_subcubic_trees(k).unwrap().count(), double_factorial(2 * k - 5));
        }
        assert!(enumerate_subcubic_trees(1).is_err());
        assert!(enumerate_subcubic_trees(11).is_err());
    }

    #[test]
    fn enumerated_trees_are_distinct_and_cubic() {
        let trees: Vec<_> = enumerate_subcubic_trees(6).unwrap().collect();
        let mut splits: Vec<Vec<u16>> = trees
            .iter()
            .map(|t| {
                let mut s: Vec<u16> = t
                    .edge_sides()
                    .into_iter()
                    .map(|m| if m & 1 == 1 { m } else { !m & 0b111111 })
                    .collect();
                s.sort_unstable();
                s
            })
            .collect();
        for t in &trees {
            assert_eq!(t.edges.len(), t.node_count - 1);
            for leaf in 0..6 {
                assert_eq!(t.degree(leaf), 1);
            }
            for node in 6..t.node_count {
                assert_eq!(t.degree(node), 3);
            }
        }
        splits.sort();
        splits.dedup();
        assert_eq!(splits.len(), trees.len());
    }

    #[test]
    fn rank_width_examples() {
        for n in 2..=7 {
            assert_eq!(rank_width(&Graph::complete(n).unwrap()).unwrap().0, 1);
        }
        assert_eq!(rank_width(&Graph::cycle(5).unwrap()).unwrap().0, 2);
        assert_eq!(rank_width(&Graph::star(4).unwrap()).unwrap().0, 1);
        assert_eq!(rank_width(&Graph::empty(1).unwrap()).unwrap().0, 0);
        assert_eq!(rank_width(&Graph::empty(4).unwrap()).unwrap().0, 0);
        assert!(rank_width(&Graph::path(11).unwrap()).unwrap_err().is_capacity());
    }

    #[test]
    fn returned_decomposition_realises_width() {
        for g in [Graph::cycle(6).unwrap(), Graph::path(6).unwrap(), Graph::cycle(7).unwrap()] {
            let (w, dec) = rank_width(&g).unwrap();
            assert_eq!(dec.recompute_width(&g), w);
            assert_eq!(dec.tree.edges.len(), 2 * g.n() - 3);
        }
    }
}
