//! Breadth-first mapping of local complementation orbits.
//!
//! An [`Orbit`] is a graph whose vertices are graph states and whose edges
//! are single local complementations. In a labelled orbit the states are
//! distinct labelled graphs; in an unlabelled orbit each vertex is the
//! canonical form of an isomorphism class. Parallel edges are merged into
//! per-direction label sets and self-loops are kept.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, canonical_form_and_classes, canonical_graph};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitKind {
    Labelled,
    Unlabelled,
}

/// A merged orbit edge. `u <= v`; labels are 0-based graph vertices.
///
/// `labels_from_u` holds every vertex `a` such that complementing `a` in the
/// state at `u` reaches the state at `v` (exactly for labelled orbits, up to
/// isomorphism otherwise), and symmetrically for `labels_from_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitEdge {
    pub u: usize,
    pub v: usize,
    pub labels_from_u: Vec<usize>,
    pub labels_from_v: Vec<usize>,
}

impl OrbitEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// Labels leading out of `from`, which must be an endpoint.
    pub fn labels_from(&self, from: usize) -> &[usize] {
        if from == self.u {
            &self.labels_from_u
        } else {
            &self.labels_from_v
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitStats {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Merged edges per orbit vertex.
    pub n_tilde: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    kind: OrbitKind,
    seed: Graph,
    vertices: Vec<Graph>,
    edges: Vec<OrbitEdge>,
}

impl Orbit {
    /// Assembles an orbit from parts, normalising edge orientation and
    /// order, and checks its structural invariants.
    pub fn from_parts(
        kind: OrbitKind,
        seed: Graph,
        vertices: Vec<Graph>,
        edges: Vec<OrbitEdge>,
    ) -> Result<Orbit> {
        let mut merged: BTreeMap<(usize, usize), (BTreeSet<usize>, BTreeSet<usize>)> =
            BTreeMap::new();
        for e in edges {
            let (key, from_lo, from_hi) = if e.u <= e.v {
                ((e.u, e.v), e.labels_from_u, e.labels_from_v)
            } else {
                ((e.v, e.u), e.labels_from_v, e.labels_from_u)
            };
            let entry = merged.entry(key).or_default();
            entry.0.extend(from_lo);
            entry.1.extend(from_hi);
        }
        let orbit = Orbit {
            kind,
            seed,
            vertices,
            edges: collect_edges(merged),
        };
        orbit.validate()?;
        Ok(orbit)
    }

    pub fn kind(&self) -> OrbitKind {
        self.kind
    }

    pub fn seed(&self) -> &Graph {
        &self.seed
    }

    pub fn vertices(&self) -> &[Graph] {
        &self.vertices
    }

    /// Merged edges sorted by `(u, v)`.
    pub fn edges(&self) -> &[OrbitEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Qubit count of the member states.
    pub fn qubits(&self) -> usize {
        self.seed.n()
    }

    pub fn stats(&self) -> OrbitStats {
        OrbitStats {
            vertex_count: self.len(),
            edge_count: self.edges.len(),
            n_tilde: self.edges.len() as f64 / self.len() as f64,
        }
    }

    pub fn has_self_loop(&self) -> bool {
        self.edges.iter().any(OrbitEdge::is_loop)
    }

    /// Per vertex, whether it carries a self-loop.
    pub fn loop_flags(&self) -> Vec<bool> {
        let mut flags = vec![false; self.len()];
        for e in self.edges.iter().filter(|e| e.is_loop()) {
            flags[e.u] = true;
        }
        flags
    }

    /// Sorted neighbour lists of the loop-stripped, label-ignored orbit.
    pub fn simple_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Degrees with each self-loop contributing two.
    pub fn degrees_with_loops(&self) -> Vec<usize> {
        let mut deg = vec![0; self.len()];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// Renumbers vertices so that new vertex `i` is old vertex `order[i]`.
    pub fn reordered(&self, order: &[usize]) -> Orbit {
        assert_eq!(order.len(), self.len(), "order must be a permutation of the vertices");
        let mut new_index = vec![usize::MAX; self.len()];
        for (i, &old) in order.iter().enumerate() {
            new_index[old] = i;
        }
        let mut merged = BTreeMap::new();
        for e in &self.edges {
            let (a, b) = (new_index[e.u], new_index[e.v]);
            let (key, lo, hi) = if a <= b {
                ((a, b), &e.labels_from_u, &e.labels_from_v)
            } else {
                ((b, a), &e.labels_from_v, &e.labels_from_u)
            };
            merged.insert(
                key,
                (
                    lo.iter().copied().collect::<BTreeSet<_>>(),
                    hi.iter().copied().collect::<BTreeSet<_>>(),
                ),
            );
        }
        Orbit {
            kind: self.kind,
            seed: self.seed,
            vertices: order.iter().map(|&i| self.vertices[i]).collect(),
            edges: collect_edges(merged),
        }
    }

    /// Same orbit with vertices sorted by the graph order; unique for
    /// unlabelled orbits and for labelled ones, so two orbits describing the
    /// same structure compare equal afterwards.
    pub fn sorted_by_vertex(&self) -> Orbit {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.vertices[i]);
        self.reordered(&order)
    }

    /// Checks the structural invariants (not the local complementation
    /// relations; see [`Orbit::verify_moves`]).
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGraph(m));
        if self.vertices.is_empty() {
            return bad("orbit has no vertices".into());
        }
        let n = self.seed.n();
        if self.vertices.iter().any(|g| g.n() != n) {
            return bad("orbit members differ in qubit count".into());
        }
        let mut seen = BTreeSet::new();
        for g in &self.vertices {
            let key = match self.kind {
                OrbitKind::Labelled => *g,
                OrbitKind::Unlabelled => canonical_graph(g),
            };
            if !seen.insert(key) {
                return bad(format!("duplicate orbit member {g:?}"));
            }
        }
        for e in &self.edges {
            if e.u > e.v || e.v >= self.len() {
                return bad(format!("edge ({}, {}) out of range", e.u, e.v));
            }
            if e.labels_from_u.is_empty() || e.labels_from_v.is_empty() {
                return bad(format!("edge ({}, {}) has an empty label set", e.u, e.v));
            }
            if e.labels_from_u.iter().chain(&e.labels_from_v).any(|&a| a >= n) {
                return bad(format!("edge ({}, {}) has a label out of range", e.u, e.v));
            }
        }
        if !self.is_connected() {
            return bad("orbit is not connected".into());
        }
        Ok(())
    }

    /// Checks every edge label against local complementation of the stored
    /// representatives.
    pub fn verify_moves(&self) -> bool {
        self.edges.iter().all(|e| {
            let forward = e.labels_from_u.iter().all(|&a| {
                self.reaches(&self.vertices[e.u], a, &self.vertices[e.v])
            });
            let backward = e.labels_from_v.iter().all(|&a| {
                self.reaches(&self.vertices[e.v], a, &self.vertices[e.u])
            });
            forward && backward
        })
    }

    fn reaches(&self, from: &Graph, alpha: usize, to: &Graph) -> bool {
        let image = from.local_complement_unchecked(alpha);
        match self.kind {
            OrbitKind::Labelled => image == *to,
            OrbitKind::Unlabelled => canonical_graph(&image) == canonical_graph(to),
        }
    }

    fn is_connected(&self) -> bool {
        let adj = self.simple_adjacency();
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

fn collect_edges(merged: BTreeMap<(usize, usize), (BTreeSet<usize>, BTreeSet<usize>)>) -> Vec<OrbitEdge> {
    merged
        .into_iter()
        .map(|((u, v), (a, b))| OrbitEdge {
            u,
            v,
            labels_from_u: a.into_iter().collect(),
            labels_from_v: b.into_iter().collect(),
        })
        .collect()
}

/// Exploration settings for unlabelled orbits.
#[derive(Clone, Copy, Debug)]
pub struct ExploreOptions {
    /// Complement only one vertex per automorphism class of each state and
    /// copy the result to the rest of the class.
    pub symmetry_pruning: bool,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            symmetry_pruning: true,
        }
    }
}

/// Every labelled graph reachable from `seed` by local complementations.
pub fn explore_labelled(seed: &Graph) -> Result<Orbit> {
    if !seed.is_connected() {
        return Err(Error::DisconnectedSeed);
    }
    let n = seed.n();
    Ok(breadth_first(OrbitKind::Labelled, *seed, *seed, |g| {
        (0..n)
            .map(|a| (vec![a], g.local_complement_unchecked(a)))
            .collect()
    }))
}

/// The isomorphism-collapsed orbit of `seed`, with symmetry pruning.
pub fn explore_unlabelled(seed: &Graph) -> Result<Orbit> {
    explore_unlabelled_with(seed, ExploreOptions::default())
}

pub fn explore_unlabelled_with(seed: &Graph, options: ExploreOptions) -> Result<Orbit> {
    if !seed.is_connected() {
        return Err(Error::DisconnectedSeed);
    }
    let n = seed.n();
    let start = canonical_graph(seed);
    Ok(breadth_first(OrbitKind::Unlabelled, *seed, start, |g| {
        let classes = if options.symmetry_pruning {
            canonical_form_and_classes(g).1
        } else {
            (0..n).map(|a| vec![a]).collect()
        };
        classes
            .into_iter()
            .map(|class| {
                let image = canonical_graph(&g.local_complement_unchecked(class[0]));
                (class, image)
            })
            .collect()
    }))
}

/// Generation-by-generation exploration. `expand` maps a stored state to
/// `(labels, key of the image)` moves. New states found in one generation
/// are sorted before receiving indices, so the result does not depend on
/// how the expansion work is scheduled.
fn breadth_first<F>(kind: OrbitKind, seed: Graph, start: Graph, expand: F) -> Orbit
where
    F: Fn(&Graph) -> Vec<(Vec<usize>, Graph)> + Sync,
{
    let mut index: HashMap<Graph, usize> = HashMap::new();
    let mut vertices = vec![start];
    index.insert(start, 0);
    let mut frontier = vec![0usize];
    let mut merged: BTreeMap<(usize, usize), (BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();

    while !frontier.is_empty() {
        let moves: Vec<Vec<(Vec<usize>, Graph)>> =
            frontier.par_iter().map(|&u| expand(&vertices[u])).collect();

        let mut fresh: Vec<Graph> = moves
            .iter()
            .flatten()
            .map(|(_, h)| *h)
            .filter(|h| !index.contains_key(h))
            .collect();
        fresh.sort_unstable();
        fresh.dedup();
        let mut next = Vec::with_capacity(fresh.len());
        for h in fresh {
            index.insert(h, vertices.len());
            next.push(vertices.len());
            vertices.push(h);
        }

        for (&u, out) in frontier.iter().zip(&moves) {
            for (labels, h) in out {
                let v = index[h];
                if u <= v {
                    let entry = merged.entry((u, v)).or_default();
                    entry.0.extend(labels);
                    if u == v {
                        entry.1.extend(labels);
                    }
                } else {
                    merged.entry((v, u)).or_default().1.extend(labels);
                }
            }
        }
        frontier = next;
    }

    Orbit {
        kind,
        seed,
        vertices,
        edges: collect_edges(merged),
    }
}

/// Merges isomorphic members of a labelled orbit.
///
/// Vertices of the result are canonical forms in order of first appearance;
/// labels are translated into the canonical labelling of each class.
pub fn quotient_to_unlabelled(labelled: &Orbit) -> Result<Orbit> {
    if labelled.kind != OrbitKind::Labelled {
        return Err(Error::Argument("quotient expects a labelled orbit".into()));
    }
    let mut class_of = Vec::with_capacity(labelled.len());
    let mut perms = Vec::with_capacity(labelled.len());
    let mut index: HashMap<Graph, usize> = HashMap::new();
    let mut vertices = Vec::new();
    for g in &labelled.vertices {
        let cf = canonical_form(g);
        let c = *index.entry(cf.canon).or_insert_with(|| {
            vertices.push(cf.canon);
            vertices.len() - 1
        });
        class_of.push(c);
        perms.push(cf.perm);
    }
    let mut merged: BTreeMap<(usize, usize), (BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();
    for e in &labelled.edges {
        for (from, to) in [(e.u, e.v), (e.v, e.u)] {
            let (a, b) = (class_of[from], class_of[to]);
            let labels = e.labels_from(from).iter().map(|&l| perms[from][l]);
            if a <= b {
                let entry = merged.entry((a, b)).or_default();
                let labels: Vec<usize> = labels.collect();
                entry.0.extend(&labels);
                if a == b {
                    entry.1.extend(&labels);
                }
            } else {
                merged.entry((b, a)).or_default().1.extend(labels);
            }
        }
    }
    Ok(Orbit {
        kind: OrbitKind::Unlabelled,
        seed: labelled.seed,
        vertices,
        edges: collect_edges(merged),
    })
}

/// All-pairs hop counts on the loop-stripped orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceTable {
    pub distances: Vec<Vec<u32>>,
    pub diameter: u32,
    /// Mean over unordered pairs of distinct vertices; 0 for one vertex.
    pub mean: f64,
}

pub fn all_pairs_distances(orbit: &Orbit) -> DistanceTable {
    let adj = orbit.simple_adjacency();
    let n = adj.len();
    let mut distances = vec![vec![u32::MAX; n]; n];
    let mut queue = VecDeque::new();
    for (s, row) in distances.iter_mut().enumerate() {
        row[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if row[v] == u32::MAX {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    let mut diameter = 0;
    let mut total = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            diameter = diameter.max(distances[i][j]);
            total += distances[i][j] as u64;
        }
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let mean = if pairs == 0 { 0.0 } else { total as f64 / pairs as f64 };
    DistanceTable {
        distances,
        diameter,
        mean,
    }
}

/// Export order of the orbit vertices: grouped by isomorphism class
/// (canonical form), then by edge count, then by sorted edge list.
pub fn canonical_vertex_order(orbit: &Orbit) -> Vec<usize> {
    let keys: Vec<(Graph, usize, Vec<(usize, usize)>)> = orbit
        .vertices
        .iter()
        .map(|g| (canonical_graph(g), g.edge_count(), g.sorted_edge_list()))
        .collect();
    let mut order: Vec<usize> = (0..orbit.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
    order
}

/// The orbit renumbered by [`canonical_vertex_order`].
pub fn canonically_ordered(orbit: &Orbit) -> Orbit {
    orbit.reordered(&canonical_vertex_order(orbit))
}

/// Boundaries of contiguous blocks in an orbit already in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockBoundaries {
    /// Start index of each run of mutually isomorphic states.
    pub isomorphism_blocks: Vec<usize>,
    /// Start index of each run of states with equal edge count.
    pub edge_count_blocks: Vec<usize>,
}

pub fn block_boundaries(orbit: &Orbit) -> BlockBoundaries {
    let canon: Vec<Graph> = orbit.vertices.iter().map(canonical_graph).collect();
    let edges: Vec<usize> = orbit.vertices.iter().map(Graph::edge_count).collect();
    let starts = |same: &dyn Fn(usize) -> bool| -> Vec<usize> {
        (0..orbit.len()).filter(|&i| i == 0 || !same(i)).collect()
    };
    BlockBoundaries {
        isomorphism_blocks: starts(&|i| canon[i] == canon[i - 1]),
        edge_count_blocks: starts(&|i| edges[i] == edges[i - 1]),
    }
}
