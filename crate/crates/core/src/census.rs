//! Census of LC classes, catalogue matching and orbit statistics.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{automorphism_group, canonical_graph, Certificate, ColouredGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::{
    chromatic_index_with_colouring, chromatic_number, class_record_with, ClassRecord, RecordOptions, SchmidtBounds, SimpleGraph,
};
use crate::orbit::{all_pairs_distances, explore_labelled, explore_unlabelled, Orbit};

/// Largest census size; 8 needs the long-run flag.
pub const MAX_CENSUS_QUBITS: usize = 8;

const CATALOGUE_CSV: &str = include_str!("../data/catalogue.csv");

/// Canonical forms of all graphs on `n` vertices, sorted.
///
/// Up to seven vertices every labelled graph is canonicalised. Eight-vertex
/// graphs are generated by adding a vertex, with every possible
/// neighbourhood, to each seven-vertex canonical form: deleting any vertex
/// of an eight-vertex graph leaves a seven-vertex graph, so nothing is
/// missed.
pub fn canonical_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_CENSUS_QUBITS {
        return Err(Error::Capacity(format!(
            "graph enumeration supports 1..={MAX_CENSUS_QUBITS} vertices, got {n}"
        )));
    }
    let all = if n <= 7 { brute_force(n) } else { extend_by_vertex(&brute_force(n - 1)) };
    Ok(all.into_iter().filter(|g| !connected_only || g.is_connected()).collect())
}

fn brute_force(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let total: u64 = 1 << pairs.len();
    let chunk: u64 = 1 << 12;
    let chunks = total.div_ceil(chunk);
    let sets: Vec<HashSet<Graph>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut seen = HashSet::new();
            for code in c * chunk..((c + 1) * chunk).min(total) {
                let mut rows = vec![0u16; n];
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if code >> i & 1 == 1 {
                        rows[u] |= 1 << v;
                        rows[v] |= 1 << u;
                    }
                }
                let g = Graph::from_rows(&rows).expect("symmetric rows");
                seen.insert(canonical_graph(&g));
            }
            seen
        })
        .collect();
    let mut out: Vec<Graph> = sets.into_iter().flatten().collect::<HashSet<_>>().into_iter().collect();
    out.sort_unstable();
    out
}

fn extend_by_vertex(smaller: &[Graph]) -> Vec<Graph> {
    let m = smaller.first().map_or(0, Graph::n);
    let sets: Vec<HashSet<Graph>> = smaller
        .par_iter()
        .map(|g| {
            let mut seen = HashSet::new();
            for mask in 0u16..1 << m {
                let mut rows: Vec<u16> = g.rows().to_vec();
                for (v, row) in rows.iter_mut().enumerate() {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << m;
                    }
                }
                rows.push(mask);
                seen.insert(canonical_graph(&Graph::from_rows(&rows).expect("symmetric rows")));
            }
            seen
        })
        .collect();
    let mut out: Vec<Graph> = sets.into_iter().flatten().collect::<HashSet<_>>().into_iter().collect();
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    /// Required for the eight-qubit tier.
    pub long_run: bool,
    /// Compute a [`ClassRecord`] per class.
    pub records: bool,
    pub record_options: RecordOptions,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            long_run: false,
            records: true,
            record_options: RecordOptions::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusClass {
    /// Minimum-edge member in canonical form.
    pub representative: Graph,
    pub orbit: Orbit,
    pub record: Option<ClassRecord>,
    /// Size of each labelled orbit of the class (they are all isomorphic).
    pub labelled_orbit_size: usize,
    /// Number of labelled orbits partitioning the labelled members.
    pub labelled_orbit_count: usize,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub n: usize,
    pub classes: Vec<CensusClass>,
}

pub fn enumerate_classes(n: usize, long_run: bool) -> Result<Census> {
    enumerate_classes_with(
        n,
        CensusOptions {
            long_run,
            ..CensusOptions::default()
        },
    )
}

/// All LC classes of connected graphs on `n` vertices.
///
/// Classes are ordered by minimum edge count, then orbit size, orbit edge
/// count and representative.
pub fn enumerate_classes_with(n: usize, options: CensusOptions) -> Result<Census> {
    if n < 2 {
        return Err(Error::Argument(format!("a census needs at least 2 qubits, got {n}")));
    }
    if n > MAX_CENSUS_QUBITS {
        return Err(Error::Capacity(format!(
            "census by enumeration supports at most {MAX_CENSUS_QUBITS} qubits, got {n}"
        )));
    }
    if n == MAX_CENSUS_QUBITS && !options.long_run {
        return Err(Error::Capacity(format!("the {n}-qubit census requires the long-run flag")));
    }
    let mut pending: Vec<Graph> = canonical_graphs(n, true)?;
    pending.sort_by_key(|g| (g.edge_count(), *g));
    let mut assigned: HashSet<Graph> = HashSet::new();
    let mut found = Vec::new();
    for g in pending {
        if assigned.contains(&g) {
            continue;
        }
        let orbit = explore_unlabelled(&g)?;
        assigned.extend(orbit.vertices().iter().copied());
        found.push((g, orbit));
    }

    let mut classes: Vec<CensusClass> = found
        .into_par_iter()
        .map(|(representative, orbit)| -> Result<CensusClass> {
            let labelled_orbit_size = explore_labelled(&representative)?.len();
            let labelled_members = labelled_member_count(&orbit);
            let record = if options.records {
                Some(class_record_with(&orbit, None, options.record_options)?)
            } else {
                None
            };
            Ok(CensusClass {
                representative,
                orbit,
                record,
                labelled_orbit_size,
                labelled_orbit_count: (labelled_members / labelled_orbit_size as u128) as usize,
            })
        })
        .collect::<Result<_>>()?;
    classes.sort_by_key(|c| (c.representative.edge_count(), c.orbit.len(), c.orbit.edges().len(), c.representative));
    Ok(Census { n, classes })
}

/// Number of labelled graphs isomorphic to some member of the orbit.
pub fn labelled_member_count(orbit: &Orbit) -> u128 {
    let n = orbit.qubits() as u128;
    let factorial: u128 = (1..=n).product();
    orbit.vertices().iter().map(|g| factorial / automorphism_group(g).order).sum()
}

/// Every labelled orbit of the class, covering each labelled member once.
/// Orbits are ordered by their smallest member.
pub fn enumerate_labelled_orbits(class: &CensusClass) -> Result<Vec<Orbit>> {
    let n = class.orbit.qubits();
    let perms = permutations(n);
    let mut members: BTreeSet<Graph> = BTreeSet::new();
    for g in class.orbit.vertices() {
        members.extend(perms.iter().map(|p| g.relabel(p)));
    }
    let mut assigned: HashSet<Graph> = HashSet::new();
    let mut orbits = Vec::new();
    for g in members {
        if assigned.contains(&g) {
            continue;
        }
        let orbit = explore_labelled(&g)?;
        assigned.extend(orbit.vertices().iter().copied());
        orbits.push(orbit);
    }
    Ok(orbits)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// One row of the reference class catalogue.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogueRow {
    pub class: u32,
    pub n_qubits: usize,
    pub min_edges: usize,
    pub schmidt_lower: f64,
    pub schmidt_upper: f64,
    pub rank_width: usize,
    pub orbit_size: usize,
    pub orbit_edges: usize,
    pub n_tilde: f64,
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

impl CatalogueRow {
    pub fn schmidt(&self) -> SchmidtBounds {
        SchmidtBounds {
            lower: self.schmidt_lower,
            upper: self.schmidt_upper,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Catalogue {
    pub rows: Vec<CatalogueRow>,
}

impl Catalogue {
    /// The class table for up to seven qubits shipped with the crate.
    pub fn builtin() -> Catalogue {
        Catalogue::from_reader(CATALOGUE_CSV.as_bytes()).expect("bundled catalogue parses")
    }

    pub fn from_reader<R: std::io::Read>(reader: R) -> Result<Catalogue> {
        let mut rdr = csv::Reader::from_reader(reader);
        let rows = rdr.deserialize().collect::<std::result::Result<Vec<CatalogueRow>, _>>()?;
        Ok(Catalogue { rows })
    }

    pub fn from_path(path: &std::path::Path) -> Result<Catalogue> {
        Catalogue::from_reader(std::fs::File::open(path)?)
    }

    pub fn row(&self, class: u32) -> Option<&CatalogueRow> {
        self.rows.iter().find(|r| r.class == class)
    }
}

/// Fields used to locate a record in the catalogue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub n_qubits: usize,
    pub min_edges: usize,
    pub orbit_size: usize,
    pub orbit_edges: usize,
    pub chi_g: usize,
    pub chi_g_e: usize,
    pub diameter: u32,
}

impl From<&ClassRecord> for Fingerprint {
    fn from(r: &ClassRecord) -> Self {
        Fingerprint {
            n_qubits: r.n_qubits,
            min_edges: r.min_edges,
            orbit_size: r.orbit_size,
            orbit_edges: r.orbit_edges,
            chi_g: r.chi_g,
            chi_g_e: r.chi_g_e,
            diameter: r.diameter,
        }
    }
}

impl From<&CatalogueRow> for Fingerprint {
    fn from(r: &CatalogueRow) -> Self {
        Fingerprint {
            n_qubits: r.n_qubits,
            min_edges: r.min_edges,
            orbit_size: r.orbit_size,
            orbit_edges: r.orbit_edges,
            chi_g: r.chi_g,
            chi_g_e: r.chi_g_e,
            diameter: r.diameter,
        }
    }
}

/// Catalogue classes whose fingerprint equals the record's; empty when
/// nothing matches.
pub fn fingerprint_match(record: &ClassRecord, catalogue: &Catalogue) -> BTreeSet<u32> {
    let fp = Fingerprint::from(record);
    catalogue.rows.iter().filter(|r| Fingerprint::from(*r) == fp).map(|r| r.class).collect()
}

/// Whether a two-decimal table entry is `exact` rounded or truncated; the
/// table uses both.
pub fn agrees_to_two_places(exact: f64, entry: f64) -> bool {
    let entry = (entry * 100.0).round() as i64;
    let scaled = exact * 100.0;
    // The epsilon keeps exact hundredths from truncating downwards.
    scaled.round() as i64 == entry || (scaled + 1e-9).floor() as i64 == entry
}

/// Names of the compared columns on which `record` and `row` disagree. The
/// mean distance is compared to two decimal places; the automorphism order
/// and Schmidt bounds are not compared.
pub fn column_mismatches(record: &ClassRecord, row: &CatalogueRow) -> Vec<&'static str> {
    let checks = [
        ("n_qubits", record.n_qubits == row.n_qubits),
        ("min_edges", record.min_edges == row.min_edges),
        ("rank_width", record.rank_width == row.rank_width),
        ("orbit_size", record.orbit_size == row.orbit_size),
        ("orbit_edges", record.orbit_edges == row.orbit_edges),
        ("chi_g", record.chi_g == row.chi_g),
        ("chi_g_e", record.chi_g_e == row.chi_g_e),
        ("chi_orbit", record.chi_orbit == row.chi_orbit),
        ("chi_orbit_e", record.chi_orbit_e == row.chi_orbit_e),
        ("is_tree", record.is_tree == row.is_tree),
        ("mean_distance", agrees_to_two_places(record.mean_distance, row.mean_distance)),
        ("diameter", record.diameter == row.diameter),
        ("planar", record.planar == row.planar),
        ("has_loop", record.has_loop == row.has_loop),
        ("eulerian", record.eulerian == row.eulerian),
        ("hamiltonian", record.hamiltonian == row.hamiltonian),
    ];
    checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect()
}

/// Outcome of matching computed records against catalogue rows as
/// multisets.
#[derive(Clone, Debug, PartialEq)]
pub struct Reconciliation {
    /// Catalogue class assigned to each record, if any.
    pub assignment: Vec<Option<u32>>,
    /// Catalogue classes left without a record.
    pub unmatched_rows: Vec<u32>,
}

impl Reconciliation {
    pub fn is_complete(&self) -> bool {
        self.unmatched_rows.is_empty() && self.assignment.iter().all(Option::is_some)
    }
}

/// Pairs each record with a distinct catalogue row agreeing on every
/// compared column (maximum bipartite matching).
pub fn reconcile(records: &[ClassRecord], rows: &[CatalogueRow]) -> Reconciliation {
    let candidates: Vec<Vec<usize>> = records
        .iter()
        .map(|r| (0..rows.len()).filter(|&j| column_mismatches(r, &rows[j]).is_empty()).collect())
        .collect();
    let mut row_owner: Vec<Option<usize>> = vec![None; rows.len()];
    fn augment(
        i: usize,
        candidates: &[Vec<usize>],
        row_owner: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &j in &candidates[i] {
            if visited[j] {
                continue;
            }
            visited[j] = true;
            if row_owner[j].is_none_or(|k| augment(k, candidates, row_owner, visited)) {
                row_owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..records.len() {
        let mut visited = vec![false; rows.len()];
        augment(i, &candidates, &mut row_owner, &mut visited);
    }
    let mut assignment = vec![None; records.len()];
    let mut unmatched_rows = Vec::new();
    for (j, owner) in row_owner.iter().enumerate() {
        match owner {
            Some(i) => assignment[*i] = Some(rows[j].class),
            None => unmatched_rows.push(rows[j].class),
        }
    }
    Reconciliation {
        assignment,
        unmatched_rows,
    }
}

/// Product-moment correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::Argument(format!("sequence lengths differ: {} vs {}", xs.len(), ys.len())));
    }
    if xs.len() < 2 {
        return Err(Error::UndefinedCorrelation("fewer than two observations".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("a sequence has zero variance".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Per-class inputs for correlation statistics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassStatistics {
    pub class: Option<u32>,
    pub n_qubits: usize,
    pub schmidt: f64,
    pub min_edges: usize,
    pub rank_width: usize,
    pub chi_g_e: usize,
    pub orbit_size: usize,
    pub orbit_diameter: u32,
    pub chi_orbit: usize,
    pub chi_orbit_e: usize,
    pub labelled: Option<LabelledStatistics>,
}

/// Metrics of one labelled orbit of a class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelledStatistics {
    pub size: usize,
    pub diameter: u32,
    pub chi: usize,
    pub chi_e: usize,
}

pub fn labelled_statistics(representative: &Graph) -> Result<LabelledStatistics> {
    let orbit = explore_labelled(representative)?;
    let simple = SimpleGraph::from_orbit(&orbit);
    // Each state has one move per vertex, so the smallest label on each
    // edge is a proper edge colouring with at most n colours.
    let label_of: std::collections::HashMap<(usize, usize), usize> = orbit
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .map(|e| ((e.u, e.v), e.labels_from_u[0]))
        .collect();
    let colouring: Vec<usize> = simple.edges().iter().map(|e| label_of[e]).collect();
    Ok(LabelledStatistics {
        size: orbit.len(),
        diameter: all_pairs_distances(&orbit).diameter,
        chi: chromatic_number(&simple),
        chi_e: chromatic_index_with_colouring(&simple, &colouring)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub x: String,
    pub y: String,
    pub r: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub correlations: Vec<Correlation>,
    pub qubit_range: (usize, usize),
    pub class_count: usize,
    /// Catalogue classes included, when known.
    pub classes: Vec<u32>,
}

impl CorrelationReport {
    pub fn get(&self, x: &str, y: &str) -> Option<f64> {
        self.correlations.iter().find(|c| c.x == x && c.y == y).map(|c| c.r)
    }
}

/// Statistics for every census class that can be paired with a catalogue
/// row (for its Schmidt bounds). Classes without a unique fingerprint match
/// are resolved by full-column agreement; the rest are skipped.
pub fn class_statistics(
    censuses: &[Census],
    catalogue: &Catalogue,
    with_labelled: bool,
) -> Result<Vec<ClassStatistics>> {
    let mut classes = Vec::new();
    for census in censuses {
        for c in &census.classes {
            let record = c.record.clone().ok_or_else(|| Error::Argument("census lacks class records".into()))?;
            classes.push((c.representative, record));
        }
    }
    class_statistics_from(&classes, catalogue, with_labelled)
}

/// As [`class_statistics`], from `(representative, record)` pairs.
pub fn class_statistics_from(
    classes: &[(Graph, ClassRecord)],
    catalogue: &Catalogue,
    with_labelled: bool,
) -> Result<Vec<ClassStatistics>> {
    let qubit_counts: BTreeSet<usize> = classes.iter().map(|(_, r)| r.n_qubits).collect();
    let mut assignment: Vec<Option<u32>> = vec![None; classes.len()];
    for n in qubit_counts {
        let idx: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].1.n_qubits == n).collect();
        let records: Vec<ClassRecord> = idx.iter().map(|&i| classes[i].1.clone()).collect();
        let rows: Vec<CatalogueRow> = catalogue.rows.iter().filter(|r| r.n_qubits == n).cloned().collect();
        for (k, a) in reconcile(&records, &rows).assignment.into_iter().enumerate() {
            assignment[idx[k]] = a;
        }
    }
    let stats: Vec<Option<ClassStatistics>> = classes
        .par_iter()
        .zip(assignment.par_iter())
        .map(|((representative, record), assigned)| -> Result<Option<ClassStatistics>> {
            let matched = assigned.or_else(|| {
                let m = fingerprint_match(record, catalogue);
                (m.len() == 1).then(|| *m.iter().next().unwrap())
            });
            let Some(id) = matched else { return Ok(None) };
            let row = catalogue.row(id).expect("matched row exists");
            let labelled = if with_labelled {
                Some(labelled_statistics(representative)?)
            } else {
                None
            };
            Ok(Some(ClassStatistics {
                class: Some(id),
                n_qubits: record.n_qubits,
                schmidt: row.schmidt().midpoint(),
                min_edges: record.min_edges,
                rank_width: record.rank_width,
                chi_g_e: record.chi_g_e,
                orbit_size: record.orbit_size,
                orbit_diameter: record.diameter,
                chi_orbit: record.chi_orbit,
                chi_orbit_e: record.chi_orbit_e,
                labelled,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(stats.into_iter().flatten().collect())
}

/// Pearson coefficients for the reported column pairs over the given classes.
/// Labelled-orbit pairs are included when every class carries labelled
/// statistics.
pub fn correlation_report(stats: &[ClassStatistics]) -> Result<CorrelationReport> {
    type Column = fn(&ClassStatistics) -> f64;
    let col = |f: Column| stats.iter().map(f).collect::<Vec<f64>>();
    let es: Column = |s| s.schmidt;
    let mut pairs: Vec<(&str, &str, Column, Column)> = vec![
        ("max_d_C", "|C|", |s| s.orbit_diameter as f64, |s| s.orbit_size as f64),
        ("max_d_C", "E_S", |s| s.orbit_diameter as f64, es),
        ("chi_C", "E_S", |s| s.chi_orbit as f64, es),
        ("chi_C_e", "E_S", |s| s.chi_orbit_e as f64, es),
        ("chi_C", "chi_g_e", |s| s.chi_orbit as f64, |s| s.chi_g_e as f64),
    ];
    if !stats.is_empty() && stats.iter().all(|s| s.labelled.is_some()) {
        fn l(s: &ClassStatistics) -> LabelledStatistics {
            s.labelled.expect("checked above")
        }
        pairs.extend([
            ("max_d_L", "|L|", (|s| l(s).diameter as f64) as Column, (|s| l(s).size as f64) as Column),
            ("max_d_L", "E_S", |s| l(s).diameter as f64, es),
            ("chi_L", "E_S", |s| l(s).chi as f64, es),
            ("chi_L_e", "E_S", |s| l(s).chi_e as f64, es),
            ("chi_L", "chi_g_e", |s| l(s).chi as f64, |s| s.chi_g_e as f64),
        ]);
    }
    pairs.extend([
        ("E_S", "rwd", es, (|s| s.rank_width as f64) as Column),
        ("E_S", "|e|", es, |s| s.min_edges as f64),
        ("E_S", "chi_g_e", es, |s| s.chi_g_e as f64),
    ]);
    let correlations = pairs
        .into_iter()
        .map(|(x, y, fx, fy)| {
            Ok(Correlation {
                x: x.into(),
                y: y.into(),
                r: pearson(&col(fx), &col(fy))?,
            })
        })
        .collect::<Result<_>>()?;
    let qubits = stats.iter().map(|s| s.n_qubits);
    Ok(CorrelationReport {
        correlations,
        qubit_range: (qubits.clone().min().unwrap_or(0), qubits.max().unwrap_or(0)),
        class_count: stats.len(),
        classes: stats.iter().filter_map(|s| s.class).collect(),
    })
}

/// Isomorphism certificate of an orbit as a label-ignored graph; looped
/// vertices are coloured unless loops are stripped.
pub fn orbit_certificate(o: &Orbit, strip_loops: bool) -> Certificate {
    let mut cg = ColouredGraph::new(o.len());
    for e in o.edges() {
        cg.add_edge(e.u, e.v);
    }
    if !strip_loops {
        for (v, looped) in o.loop_flags().into_iter().enumerate() {
            if looped {
                cg.set_colour(v, 1);
            }
        }
    }
    cg.certificate()
}

/// `m[i][j]` is true when orbits `i` and `j` are isomorphic.
pub fn orbit_isomorphism_matrix(orbits: &[Orbit], strip_loops: bool) -> Vec<Vec<bool>> {
    let certs: Vec<Certificate> = orbits.par_iter().map(|o| orbit_certificate(o, strip_loops)).collect();
    certs.iter().map(|a| certs.iter().map(|b| a == b).collect()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct StationaryDistribution {
    pub pi: Vec<f64>,
    /// Total-variation distance from the uniform distribution.
    pub tv_distance: f64,
}

/// Stationary distribution of the simple random walk on the orbit, with a
/// self-loop adding two to its vertex's degree.
pub fn stationary_distribution(o: &Orbit) -> StationaryDistribution {
    let degrees = o.degrees_with_loops();
    let total: usize = degrees.iter().sum();
    let len = o.len() as f64;
    let pi: Vec<f64> = if total == 0 {
        vec![1.0 / len; o.len()]
    } else {
        degrees.iter().map(|&d| d as f64 / total as f64).collect()
    };
    let tv_distance = 0.5 * pi.iter().map(|p| (p - 1.0 / len).abs()).sum::<f64>();
    StationaryDistribution { pi, tv_distance }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| canonical_graphs(n, true).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        let all: Vec<usize> = (1..=5).map(|n| canonical_graphs(n, false).unwrap().len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn small_class_counts() {
        let counts: Vec<usize> = (2..=6)
            .map(|n| {
                enumerate_classes_with(n, CensusOptions { records: false, ..Default::default() })
                    .unwrap()
                    .classes
                    .len()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11]);
    }

    #[test]
    fn census_limits() {
        assert!(enumerate_classes(1, false).is_err());
        assert!(enumerate_classes(8, false).unwrap_err().is_capacity());
        assert!(enumerate_classes(9, true).unwrap_err().is_capacity());
    }

    #[test]
    fn pearson_examples() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap() - 0.5).abs() < 1e-12);
        assert!(matches!(pearson(&[1.0, 1.0], &[1.0, 2.0]), Err(Error::UndefinedCorrelation(_))));
        assert!(pearson(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn builtin_catalogue() {
        let cat = Catalogue::builtin();
        assert_eq!(cat.rows.len(), 43);
        assert_eq!(cat.rows.first().unwrap().class, 3);
        assert_eq!(cat.rows.last().unwrap().class, 45);
        let r40 = cat.row(40).unwrap();
        assert_eq!((r40.orbit_size, r40.orbit_edges, r40.diameter), (92, 271, 7));
        assert!(!r40.has_loop);
        assert_eq!(r40.schmidt().midpoint(), 3.5);
    }

    #[test]
    fn two_place_agreement() {
        assert!(agrees_to_two_places(10.0 / 6.0, 1.67));
        assert!(agrees_to_two_places(3.055, 3.05));
        assert!(agrees_to_two_places(3.055, 3.06));
        assert!(agrees_to_two_places(1.8, 1.8));
        assert!(!agrees_to_two_places(1.8, 1.79));
        assert!(!agrees_to_two_places(2.0, 2.04));
    }

    #[test]
    fn permutations_are_complete() {
        assert_eq!(permutations(4).len(), 24);
        let set: HashSet<Vec<usize>> = permutations(5).into_iter().collect();
        assert_eq!(set.len(), 120);
    }
}
