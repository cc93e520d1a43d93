//! Graph and orbit metrics, and the per-class summary record.

mod colouring;
mod hamiltonian;
mod planarity;
mod simple;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_graph, ColouredGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::orbit::{all_pairs_distances, Orbit, OrbitKind};
use crate::rankwidth::rank_width;

pub use colouring::{chromatic_index, chromatic_index_with_colouring, chromatic_number, dsatur_greedy, greedy_clique, is_colourable};
pub use hamiltonian::{has_hamiltonian_cycle, hamiltonian_cycle, Hamiltonicity, DEFAULT_BUDGET};
pub use planarity::is_planar;
pub use simple::SimpleGraph;

/// Loop-stripped orbit is connected and acyclic.
pub fn is_tree(o: &Orbit) -> bool {
    let g = SimpleGraph::from_orbit(o);
    g.is_connected() && g.edge_count() + 1 == g.n()
}

/// Connected, and every degree is even with a self-loop counting two.
pub fn has_eulerian_circuit(o: &Orbit) -> bool {
    SimpleGraph::from_orbit(o).is_connected() && o.degrees_with_loops().iter().all(|d| d % 2 == 0)
}

/// Member with the fewest edges, ties broken by the smaller canonical form.
pub fn minimum_edge_representative(o: &Orbit) -> Graph {
    o.vertices()
        .iter()
        .map(|g| (g.edge_count(), canonical_graph(g)))
        .min()
        .map(|(_, g)| g)
        .unwrap_or_else(|| canonical_graph(o.seed()))
}

/// Automorphism group order of the label-ignored orbit in which looped
/// vertices may only map to looped vertices.
pub fn orbit_automorphism_order(o: &Orbit) -> u128 {
    let mut cg = ColouredGraph::new(o.len());
    for e in o.edges() {
        cg.add_edge(e.u, e.v);
    }
    for (v, looped) in o.loop_flags().into_iter().enumerate() {
        if looped {
            cg.set_colour(v, 1);
        }
    }
    cg.canonical_labelling().order
}

/// Schmidt-measure bounds for a class, supplied as input data.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtBounds {
    pub lower: f64,
    pub upper: f64,
}

impl SchmidtBounds {
    pub fn midpoint(&self) -> f64 {
        (self.lower + self.upper) / 2.0
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let top = n_qubits.saturating_sub(1).max(1) as f64;
        if !(self.lower <= self.upper && self.lower >= 1.0 && self.upper <= top) {
            return Err(Error::Argument(format!(
                "Schmidt bounds [{}, {}] must be ordered and within [1, {top}]",
                self.lower, self.upper
            )));
        }
        Ok(())
    }
}

/// Summary of one LC class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub n_qubits: usize,
    pub min_edges: usize,
    pub schmidt_lower: Option<f64>,
    pub schmidt_upper: Option<f64>,
    pub rank_width: usize,
    pub orbit_size: usize,
    pub orbit_edges: usize,
    pub chi_g: usize,
    pub chi_g_e: usize,
    pub chi_orbit: usize,
    pub chi_orbit_e: usize,
    pub is_tree: bool,
    pub mean_distance: f64,
    pub diameter: u32,
    pub aut_order: u128,
    pub planar: bool,
    pub has_loop: bool,
    pub eulerian: bool,
    pub hamiltonian: bool,
}

impl ClassRecord {
    pub fn schmidt(&self) -> Option<SchmidtBounds> {
        Some(SchmidtBounds {
            lower: self.schmidt_lower?,
            upper: self.schmidt_upper?,
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RecordOptions {
    pub hamiltonian_budget: u64,
}

impl Default for RecordOptions {
    fn default() -> Self {
        RecordOptions {
            hamiltonian_budget: DEFAULT_BUDGET,
        }
    }
}

pub fn class_record(o: &Orbit, schmidt: Option<SchmidtBounds>) -> Result<ClassRecord> {
    class_record_with(o, schmidt, RecordOptions::default())
}

pub fn class_record_with(o: &Orbit, schmidt: Option<SchmidtBounds>, options: RecordOptions) -> Result<ClassRecord> {
    if o.kind() != OrbitKind::Unlabelled {
        return Err(Error::Argument("class records are computed on unlabelled orbits".into()));
    }
    let n_qubits = o.qubits();
    if let Some(s) = schmidt {
        s.validate(n_qubits)?;
    }
    let members: Vec<SimpleGraph> = o.vertices().iter().map(SimpleGraph::from_graph).collect();
    let min_edges = o.vertices().iter().map(Graph::edge_count).min().unwrap_or(0);
    let chi_g = members.iter().map(chromatic_number).min().unwrap_or(0);
    let chi_g_e = members.iter().map(chromatic_index).min().unwrap_or(0);
    let (rank_width, _) = rank_width(&minimum_edge_representative(o))?;

    let simple = SimpleGraph::from_orbit(o);
    let distances = all_pairs_distances(o);
    let hamiltonian = match hamiltonian_cycle(&simple, options.hamiltonian_budget).0 {
        Hamiltonicity::Yes => true,
        Hamiltonicity::No => false,
        Hamiltonicity::Unknown => return Err(Error::BudgetExhausted(options.hamiltonian_budget)),
    };
    Ok(ClassRecord {
        n_qubits,
        min_edges,
        schmidt_lower: schmidt.map(|s| s.lower),
        schmidt_upper: schmidt.map(|s| s.upper),
        rank_width,
        orbit_size: o.len(),
        orbit_edges: o.edges().len(),
        chi_g,
        chi_g_e,
        chi_orbit: chromatic_number(&simple),
        chi_orbit_e: chromatic_index(&simple),
        is_tree: is_tree(o),
        mean_distance: distances.mean,
        diameter: distances.diameter,
        aut_order: orbit_automorphism_order(o),
        planar: is_planar(&simple),
        has_loop: o.has_self_loop(),
        eulerian: has_eulerian_circuit(o),
        hamiltonian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::explore_unlabelled;

    fn record(g: Graph) -> ClassRecord {
        class_record(&explore_unlabelled(&g).unwrap(), None).unwrap()
    }

    #[test]
    fn star_class_on_four_qubits() {
        let r = record(Graph::star(4).unwrap());
        assert_eq!((r.min_edges, r.rank_width, r.orbit_size, r.orbit_edges), (3, 1, 2, 2));
        assert_eq!((r.chi_g, r.chi_g_e, r.chi_orbit, r.chi_orbit_e), (2, 3, 2, 1));
        assert!(r.is_tree && r.planar && r.has_loop);
        assert!(!r.eulerian && !r.hamiltonian);
        assert_eq!(r.diameter, 1);
    }

    #[test]
    fn path_class_on_four_qubits() {
        let r = record(Graph::path(4).unwrap());
        assert_eq!((r.min_edges, r.orbit_size, r.orbit_edges), (3, 4, 5));
        assert_eq!((r.chi_g, r.chi_g_e, r.chi_orbit, r.chi_orbit_e), (2, 2, 2, 2));
        assert!(r.is_tree && r.planar && !r.hamiltonian);
        assert_eq!(r.diameter, 3);
        assert!((r.mean_distance - 10.0 / 6.0).abs() < 1e-12);
        // The two looped vertices sit asymmetrically on the path.
        assert_eq!(r.aut_order, 1);
    }

    #[test]
    fn eulerian_and_trees() {
        let o = explore_unlabelled(&Graph::complete(2).unwrap()).unwrap();
        // One vertex with a loop: a tree whose loop makes the degree even.
        assert!(is_tree(&o));
        assert!(has_eulerian_circuit(&o));
    }

    #[test]
    fn minimum_edge_representatives() {
        let o = explore_unlabelled(&Graph::complete(4).unwrap()).unwrap();
        assert_eq!(minimum_edge_representative(&o), canonical_graph(&Graph::star(4).unwrap()));
        let o = explore_unlabelled(&Graph::complete(5).unwrap()).unwrap();
        assert_eq!(minimum_edge_representative(&o).edge_count(), 4);
    }

    #[test]
    fn schmidt_bounds_are_validated() {
        let o = explore_unlabelled(&Graph::path(4).unwrap()).unwrap();
        let ok = SchmidtBounds { lower: 1.0, upper: 2.0 };
        assert_eq!(class_record(&o, Some(ok)).unwrap().schmidt(), Some(ok));
        assert!(class_record(&o, Some(SchmidtBounds { lower: 2.0, upper: 1.0 })).is_err());
        assert!(class_record(&o, Some(SchmidtBounds { lower: 1.0, upper: 4.0 })).is_err());
    }
}
