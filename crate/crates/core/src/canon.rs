//! Canonical labelling, isomorphism and automorphism groups.
//!
//! The engine is a compact nauty-style search: an ordered partition of the
//! vertices is refined to an equitable partition, a vertex from the first
//! smallest non-singleton cell is individualised, and the process recurses
//! until the partition is discrete. Each discrete partition (leaf) yields a
//! relabelled adjacency matrix; the canonical form is the smallest of them.
//! Two leaves with the same matrix give an automorphism, which is recorded as
//! a generator and used to prune sibling subtrees.
//!
//! [`ColouredGraph`] handles any vertex count and carries vertex colours, so
//! the same engine canonicalises orbit graphs (where a self-loop is encoded
//! as a colour). [`Graph`] gets thin wrappers.

use std::cmp::Ordering;

use crate::graph::{bits, Graph};

/// A permutation of `0..n` stored as images: `perm[v]` is the image of `v`.
pub type Permutation = Vec<usize>;

/// Dense undirected graph with vertex colours, of any size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    colours: Vec<u32>,
}

impl ColouredGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        ColouredGraph {
            n,
            words,
            rows: vec![0; n * words],
            colours: vec![0; n],
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut out = ColouredGraph::new(g.n());
        for (u, &row) in g.rows().iter().enumerate() {
            out.rows[u] = row as u64;
        }
        out
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds the undirected edge `{u, v}`; `u == v` is ignored (use colours
    /// to mark loops).
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn set_colour(&mut self, v: usize, colour: u32) {
        self.colours[v] = colour;
    }

    pub fn colour(&self, v: usize) -> u32 {
        self.colours[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> ColouredGraph {
        let mut out = ColouredGraph::new(self.n);
        for u in 0..self.n {
            out.colours[perm[u]] = self.colours[u];
            for v in self.neighbours(u) {
                out.rows[perm[u] * self.words + perm[v] / 64] |= 1 << (perm[v] % 64);
            }
        }
        out
    }

    /// Canonical labelling together with the automorphism group.
    pub fn canonical_labelling(&self) -> Labelling {
        Search::run(self)
    }

    pub fn certificate(&self) -> Certificate {
        self.canonical_labelling().certificate
    }
}

/// Isomorphism-invariant description of a coloured graph: equal
/// certificates if and only if the graphs are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate {
    pub n: usize,
    pub colours: Vec<u32>,
    pub rows: Vec<u64>,
}

/// Output of the canonical labelling search.
#[derive(Clone, Debug)]
pub struct Labelling {
    pub certificate: Certificate,
    /// `perm[v]` is the canonical position of input vertex `v`.
    pub perm: Permutation,
    pub generators: Vec<Permutation>,
    /// Exact automorphism group order.
    pub order: u128,
}

impl Labelling {
    /// Orbits of the vertex set under the automorphism group, each sorted,
    /// ordered by smallest member.
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut uf = UnionFind::new(n);
        for gen in &self.generators {
            for (v, &w) in gen.iter().enumerate() {
                uf.union(v, w);
            }
        }
        uf.classes()
    }
}

/// Ordered partition of the vertex set.
#[derive(Clone)]
struct Partition {
    /// Vertex at each position.
    lab: Vec<usize>,
    /// For a cell starting at position `s`, `cell_end[s]` is one past its end.
    cell_end: Vec<usize>,
    /// Start position of the cell containing each vertex.
    cell_of: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn by_colour(g: &ColouredGraph) -> (Self, Vec<usize>) {
        let n = g.n;
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (g.colours[v], v));
        let mut cell_end = vec![0; n];
        let mut cell_of = vec![0; n];
        let mut starts = Vec::new();
        let mut s = 0;
        while s < n {
            let c = g.colours[lab[s]];
            let mut e = s + 1;
            while e < n && g.colours[lab[e]] == c {
                e += 1;
            }
            cell_end[s] = e;
            for &v in &lab[s..e] {
                cell_of[v] = s;
            }
            starts.push(s);
            s = e;
        }
        let cells = starts.len();
        (
            Partition {
                lab,
                cell_end,
                cell_of,
                cells,
            },
            starts,
        )
    }

    #[inline]
    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// First smallest non-singleton cell as `(start, end)`.
    fn target_cell(&self) -> Option<(usize, usize)> {
        let n = self.lab.len();
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < n {
            let e = self.cell_end[s];
            let len = e - s;
            if len > 1 && best.is_none_or(|(bs, be)| len < be - bs) {
                best = Some((s, e));
                if len == 2 {
                    break;
                }
            }
            s = e;
        }
        best
    }

    /// Splits `v` off the front of its cell; returns the new singleton's start.
    fn individualise(&mut self, v: usize) -> usize {
        let s = self.cell_of[v];
        let e = self.cell_end[s];
        let pos = self.lab[s..e].iter().position(|&w| w == v).unwrap() + s;
        self.lab.swap(s, pos);
        self.cell_end[s] = s + 1;
        self.cell_end[s + 1] = e;
        for &w in &self.lab[s + 1..e] {
            self.cell_of[w] = s + 1;
        }
        self.cells += 1;
        s
    }
}

impl ColouredGraph {
    /// Refines `p` to the coarsest equitable partition finer than it, using
    /// the cells starting at `splitters` as the initial splitter queue.
    fn refine(&self, p: &mut Partition, splitters: &[usize]) {
        let n = self.n;
        let words = self.words;
        let mut queued = vec![false; n];
        let mut queue = std::collections::VecDeque::with_capacity(n);
        for &s in splitters {
            queued[s] = true;
            queue.push_back(s);
        }
        let mut mask = vec![0u64; words];
        let mut counts = vec![0u32; n];
        let mut keyed: Vec<(u32, usize)> = Vec::with_capacity(n);
        while let Some(ws) = queue.pop_front() {
            queued[ws] = false;
            if p.is_discrete() {
                break;
            }
            mask.iter_mut().for_each(|m| *m = 0);
            for &w in &p.lab[ws..p.cell_end[ws]] {
                mask[w / 64] |= 1 << (w % 64);
            }
            for v in 0..n {
                counts[v] = self
                    .row(v)
                    .iter()
                    .zip(&mask)
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
            }
            let mut xs = 0;
            while xs < n {
                let xe = p.cell_end[xs];
                if xe - xs > 1 {
                    let c0 = counts[p.lab[xs]];
                    if p.lab[xs + 1..xe].iter().any(|&v| counts[v] != c0) {
                        keyed.clear();
                        keyed.extend(p.lab[xs..xe].iter().map(|&v| (counts[v], v)));
                        keyed.sort_unstable();
                        let mut start = xs;
                        for (i, &(c, v)) in keyed.iter().enumerate() {
                            let pos = xs + i;
                            p.lab[pos] = v;
                            if i > 0 && c != keyed[i - 1].0 {
                                p.cell_end[start] = pos;
                                start = pos;
                                p.cells += 1;
                            }
                            p.cell_of[v] = start;
                        }
                        p.cell_end[start] = xe;
                        // Every fragment becomes a splitter; the first one keeps
                        // the old start and may already be queued.
                        let mut s = xs;
                        while s < xe {
                            if !queued[s] {
                                queued[s] = true;
                                queue.push_back(s);
                            }
                            s = p.cell_end[s];
                        }
                    }
                }
                xs = xe;
            }
        }
    }

    /// Adjacency rows relabelled by the discrete partition `lab`.
    fn leaf_rows(&self, lab: &[usize], pos: &[usize]) -> Vec<u64> {
        let words = self.words;
        let mut out = vec![0u64; self.n * words];
        for (i, &v) in lab.iter().enumerate() {
            let row = &mut out[i * words..(i + 1) * words];
            for w in self.neighbours(v) {
                let p = pos[w];
                row[p / 64] |= 1 << (p % 64);
            }
        }
        out
    }
}

struct Leaf {
    path: Vec<usize>,
    lab: Vec<usize>,
    rows: Vec<u64>,
}

struct Search<'a> {
    g: &'a ColouredGraph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Permutation>,
}

impl<'a> Search<'a> {
    fn run(g: &'a ColouredGraph) -> Labelling {
        let n = g.n;
        let (mut root, starts) = Partition::by_colour(g);
        g.refine(&mut root, &starts);
        let mut search = Search {
            g,
            first: None,
            best: None,
            generators: Vec::new(),
        };
        let mut path = Vec::new();
        if n > 0 {
            search.visit(&root, &mut path);
        }

        let order = search.group_order();
        let (rows, perm) = match search.best.take() {
            Some(best) => {
                let mut perm = vec![0; n];
                for (i, &v) in best.lab.iter().enumerate() {
                    perm[v] = i;
                }
                (best.rows, perm)
            }
            None => (Vec::new(), Vec::new()),
        };
        let mut colours = g.colours.clone();
        colours.sort_unstable();
        Labelling {
            certificate: Certificate { n, colours, rows },
            perm,
            generators: search.generators,
            order,
        }
    }

    /// Explores the subtree below `p`. A `Some(level)` return asks the caller
    /// chain to resume at the node with `level` individualised vertices.
    fn visit(&mut self, p: &Partition, path: &mut Vec<usize>) -> Option<usize> {
        if p.is_discrete() {
            return self.leaf(p, path);
        }
        let depth = path.len();
        let (ts, te) = p.target_cell().expect("non-discrete partition has a target cell");
        let mut cell = p.lab[ts..te].to_vec();
        cell.sort_unstable();
        let mut explored: Vec<usize> = Vec::with_capacity(cell.len());
        for v in cell {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, path) {
                continue;
            }
            let mut child = p.clone();
            let s = child.individualise(v);
            self.g.refine(&mut child, &[s]);
            path.push(v);
            let jump = self.visit(&child, path);
            path.pop();
            explored.push(v);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, p: &Partition, path: &[usize]) -> Option<usize> {
        let n = self.g.n;
        let mut pos = vec![0; n];
        for (i, &v) in p.lab.iter().enumerate() {
            pos[v] = i;
        }
        let rows = self.g.leaf_rows(&p.lab, &pos);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                path: path.to_vec(),
                lab: p.lab.clone(),
                rows,
            };
            self.best = Some(Leaf {
                path: leaf.path.clone(),
                lab: leaf.lab.clone(),
                rows: leaf.rows.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if rows == first.rows {
            let gen: Permutation = (0..n).map(|v| first.lab[pos[v]]).collect();
            let level = common_prefix(path, &first.path);
            self.generators.push(gen);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best leaf set with first leaf");
        match rows.cmp(&best.rows) {
            Ordering::Equal => {
                let gen: Permutation = (0..n).map(|v| best.lab[pos[v]]).collect();
                let level = common_prefix(path, &best.path);
                self.generators.push(gen);
                Some(level)
            }
            Ordering::Less => {
                self.best = Some(Leaf {
                    path: path.to_vec(),
                    lab: p.lab.clone(),
                    rows,
                });
                None
            }
            Ordering::Greater => None,
        }
    }

    /// Whether `v` lies in the orbit of an explored sibling under the known
    /// automorphisms that fix `path` pointwise.
    fn equivalent_to_explored(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.g.n);
        let mut any = false;
        for gen in self.generators.iter().filter(|g| path.iter().all(|&x| g[x] == x)) {
            any = true;
            for (a, &b) in gen.iter().enumerate() {
                uf.union(a, b);
            }
        }
        if !any {
            return false;
        }
        let root = uf.find(v);
        explored.iter().any(|&e| uf.find(e) == root)
    }

    /// Product over first-path nodes of the orbit length of the chosen
    /// vertex under the pointwise stabiliser of the preceding path.
    fn group_order(&self) -> u128 {
        let Some(first) = &self.first else { return 1 };
        let n = self.g.n;
        let mut order: u128 = 1;
        for d in 0..first.path.len() {
            let prefix = &first.path[..d];
            let mut uf = UnionFind::new(n);
            for gen in self.generators.iter().filter(|g| prefix.iter().all(|&x| g[x] == x)) {
                for (a, &b) in gen.iter().enumerate() {
                    uf.union(a, b);
                }
            }
            let root = uf.find(first.path[d]);
            let size = (0..n).filter(|&v| uf.find(v) == root).count() as u128;
            order = order.saturating_mul(size);
        }
        order
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller index as root keeps class listings stable.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.find(v);
            by_root[r].push(v);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

/// Canonical representative of a graph's isomorphism class plus the
/// relabelling that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub canon: Graph,
    /// `perm[v]` is the label of input vertex `v` in `canon`.
    pub perm: Permutation,
}

/// Automorphism group of a graph: a generating set and the exact order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub generators: Vec<Permutation>,
    pub order: u128,
}

fn labelling_of(g: &Graph) -> Labelling {
    ColouredGraph::from_graph(g).canonical_labelling()
}

fn graph_from_rows(n: usize, rows: &[u64]) -> Graph {
    let rows: Vec<u16> = rows.iter().map(|&r| r as u16).collect();
    debug_assert_eq!(rows.len(), n);
    Graph::from_rows(&rows).expect("canonical rows form a valid graph")
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let lab = labelling_of(g);
    let canon = graph_from_rows(g.n(), &lab.certificate.rows);
    // Any relabelling onto the canonical graph is valid; pick the identity
    // when the input already is canonical.
    let perm = if canon == *g {
        (0..g.n()).collect()
    } else {
        lab.perm
    };
    CanonicalForm { canon, perm }
}

/// The canonical representative only.
pub fn canonical_graph(g: &Graph) -> Graph {
    graph_from_rows(g.n(), &labelling_of(g).certificate.rows)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.edge_count() == h.edge_count() && canonical_graph(g) == canonical_graph(h)
}

pub fn automorphism_group(g: &Graph) -> AutomorphismGroup {
    let lab = labelling_of(g);
    AutomorphismGroup {
        generators: lab.generators,
        order: lab.order,
    }
}

/// Orbits of the vertices under the automorphism group.
pub fn vertex_symmetry_classes(g: &Graph) -> Vec<Vec<usize>> {
    labelling_of(g).vertex_orbits()
}

/// Canonical form together with the vertex symmetry classes of the input,
/// from a single search.
pub(crate) fn canonical_form_and_classes(g: &Graph) -> (Graph, Vec<Vec<usize>>) {
    let lab = labelling_of(g);
    let classes = lab.vertex_orbits();
    (graph_from_rows(g.n(), &lab.certificate.rows), classes)
}

/// Checks that `perm` maps `g` onto itself.
pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    g.relabel(perm) == *g
}

/// Mask form of a vertex list.
pub fn mask_of(vertices: &[usize]) -> u16 {
    vertices.iter().fold(0u16, |m, &v| m | 1 << v)
}

/// Vertices of a mask.
pub fn vertices_of(mask: u16) -> Vec<usize> {
    bits(mask).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(p.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, p, out);
                if k % 2 == 0 {
                    p.swap(i, k - 1);
                } else {
                    p.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut p, &mut out);
        out
    }

    fn brute_aut_order(g: &Graph) -> u128 {
        all_permutations(g.n())
            .iter()
            .filter(|p| is_automorphism(g, p))
            .count() as u128
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(automorphism_group(&Graph::complete(4).unwrap()).order, 24);
        assert_eq!(automorphism_group(&Graph::path(4).unwrap()).order, 2);
        assert_eq!(automorphism_group(&Graph::star(4).unwrap()).order, 6);
        assert_eq!(automorphism_group(&Graph::cycle(5).unwrap()).order, 10);
        assert_eq!(automorphism_group(&Graph::empty(1).unwrap()).order, 1);
    }

    #[test]
    fn large_symmetric_groups() {
        let k16 = Graph::complete(16).unwrap();
        assert_eq!(automorphism_group(&k16).order, 20_922_789_888_000);
        let e16 = Graph::empty(16).unwrap();
        assert_eq!(automorphism_group(&e16).order, 20_922_789_888_000);
        let star = Graph::star(16).unwrap();
        assert_eq!(automorphism_group(&star).order, 1_307_674_368_000);
    }

    #[test]
    fn symmetry_classes() {
        assert_eq!(vertex_symmetry_classes(&Graph::path(4).unwrap()), vec![vec![0, 3], vec![1, 2]]);
        assert_eq!(vertex_symmetry_classes(&Graph::cycle(4).unwrap()).len(), 1);
        assert_eq!(vertex_symmetry_classes(&Graph::complete(6).unwrap()).len(), 1);
    }

    #[test]
    fn path_orderings_are_isomorphic() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, &[(3, 1), (1, 0), (0, 2)]).unwrap();
        assert!(are_isomorphic(&a, &b));
        assert!(!are_isomorphic(&a, &Graph::star(4).unwrap()));
        assert!(!are_isomorphic(&Graph::cycle(5).unwrap(), &Graph::path(5).unwrap()));
        assert!(!are_isomorphic(&Graph::path(3).unwrap(), &Graph::path(4).unwrap()));
    }

    #[test]
    fn canonical_form_relabels_onto_canon() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 3)]).unwrap();
        let cf = canonical_form(&g);
        assert_eq!(g.relabel(&cf.perm), cf.canon);
        let again = canonical_form(&cf.canon);
        assert_eq!(again.canon, cf.canon);
        assert_eq!(again.perm, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn complete_graph_is_its_own_canon() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(canonical_form(&k4).canon, k4);
    }

    #[test]
    fn coloured_certificates_respect_colours() {
        let mut a = ColouredGraph::new(3);
        a.add_edge(0, 1);
        a.add_edge(1, 2);
        a.set_colour(0, 1);
        let mut b = a.clone();
        b.set_colour(0, 0);
        b.set_colour(2, 1);
        let mut c = a.clone();
        c.set_colour(0, 0);
        c.set_colour(1, 1);
        assert_eq!(a.certificate(), b.certificate());
        assert_ne!(a.certificate(), c.certificate());
        assert_eq!(a.canonical_labelling().order, 1);
        assert_eq!(c.canonical_labelling().order, 2);
    }

    #[test]
    fn every_graph_on_five_vertices_matches_brute_force() {
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(5, &edges).unwrap();
            let group = automorphism_group(&g);
            assert_eq!(group.order, brute_aut_order(&g), "{g:?}");
            for gen in &group.generators {
                assert!(is_automorphism(&g, gen));
            }
            let cf = canonical_form(&g);
            assert_eq!(g.relabel(&cf.perm), cf.canon);
        }
    }
}
