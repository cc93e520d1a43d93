//! Interchange formats: graph6, edge lists, JSON orbit documents, CSV
//! matrices and DOT.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::metrics::ClassRecord;
use crate::orbit::{
    all_pairs_distances, block_boundaries, canonically_ordered, BlockBoundaries, Orbit, OrbitEdge, OrbitKind,
    OrbitStats,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest vertex count expressible with a one-byte graph6 header.
const GRAPH6_SHORT_MAX: usize = 62;

fn upper_triangle(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j)))
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(1 + (n * (n - 1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut group = 0u8;
    let mut filled = 0;
    for (i, j) in upper_triangle(n) {
        group = group << 1 | u8::from(g.has_edge(i, j));
        filled += 1;
        if filled == 6 {
            out.push((group + 63) as char);
            group = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push(((group << (6 - filled)) + 63) as char);
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let header = *bytes.first().ok_or_else(|| Error::parse(0, "empty graph6 text"))?;
    let value = |offset: usize, b: u8| -> Result<u8> {
        if (63..=126).contains(&b) {
            Ok(b - 63)
        } else {
            Err(Error::parse(offset, format!("byte {b} lies outside 63..=126")))
        }
    };
    let n = value(0, header)? as usize;
    if n > GRAPH6_SHORT_MAX {
        return Err(Error::parse(0, "multi-byte graph6 size headers are not supported"));
    }
    if n > MAX_VERTICES {
        return Err(Error::Capacity(format!("graph6 text has {n} vertices; at most {MAX_VERTICES} are supported")));
    }
    let body_len = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if bytes.len() != 1 + body_len {
        return Err(Error::parse(
            bytes.len().min(1 + body_len),
            format!("expected {body_len} body bytes for {n} vertices, found {}", bytes.len() - 1),
        ));
    }
    let body: Vec<u8> = bytes[1..].iter().enumerate().map(|(k, &b)| value(k + 1, b)).collect::<Result<_>>()?;
    let mut edges = Vec::new();
    let mut k = 0;
    for (i, j) in upper_triangle(n) {
        if body[k / 6] >> (5 - k % 6) & 1 == 1 {
            edges.push((i, j));
        }
        k += 1;
    }
    if k % 6 != 0 && body[k / 6] & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(Error::parse(1 + k / 6, "non-zero padding bits"));
    }
    if n == 0 {
        return Err(Error::parse(0, "graphs need at least one vertex"));
    }
    Graph::from_edges(n, &edges)
}

/// Parses "u v" lines with 1-based vertices; blank lines and lines starting
/// with `#` are skipped. The vertex count is the largest label.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut n = 0;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(start, format!("expected two vertices, found {:?}", content)));
        }
        let mut pair = [0usize; 2];
        for (slot, field) in pair.iter_mut().zip(&fields) {
            *slot = field
                .parse::<usize>()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| Error::parse(start, format!("{field:?} is not a 1-based vertex")))?;
        }
        n = n.max(pair[0]).max(pair[1]);
        edges.push((pair[0] - 1, pair[1] - 1));
    }
    if n == 0 {
        return Err(Error::parse(0, "edge list has no edges"));
    }
    Graph::from_edges(n, &edges)
}

/// Orbit edge with 1-based labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentEdge {
    pub u: usize,
    pub v: usize,
    pub labels_from_u: Vec<usize>,
    pub labels_from_v: Vec<usize>,
}

/// JSON form of an orbit with vertices in canonical order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitDocument {
    pub schema_version: u32,
    pub kind: OrbitKind,
    pub seed: String,
    pub vertices: Vec<String>,
    pub edges: Vec<DocumentEdge>,
    pub stats: OrbitStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<ClassRecord>,
}

impl OrbitDocument {
    pub fn from_orbit(orbit: &Orbit, metrics: Option<ClassRecord>) -> OrbitDocument {
        let o = canonically_ordered(orbit);
        let one_based = |labels: &[usize]| labels.iter().map(|l| l + 1).collect();
        OrbitDocument {
            schema_version: SCHEMA_VERSION,
            kind: o.kind(),
            seed: encode_graph6(o.seed()),
            vertices: o.vertices().iter().map(encode_graph6).collect(),
            edges: o
                .edges()
                .iter()
                .map(|e| DocumentEdge {
                    u: e.u,
                    v: e.v,
                    labels_from_u: one_based(&e.labels_from_u),
                    labels_from_v: one_based(&e.labels_from_v),
                })
                .collect(),
            stats: o.stats(),
            metrics,
        }
    }

    pub fn to_orbit(&self) -> Result<Orbit> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Argument(format!("unsupported schema version {}", self.schema_version)));
        }
        let zero_based = |labels: &[usize]| -> Result<Vec<usize>> {
            labels
                .iter()
                .map(|&l| l.checked_sub(1).ok_or_else(|| Error::InvalidGraph("orbit labels are 1-based".into())))
                .collect()
        };
        let vertices = self.vertices.iter().map(|t| parse_graph6(t)).collect::<Result<Vec<_>>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(OrbitEdge {
                    u: e.u,
                    v: e.v,
                    labels_from_u: zero_based(&e.labels_from_u)?,
                    labels_from_v: zero_based(&e.labels_from_v)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Orbit::from_parts(self.kind, parse_graph6(&self.seed)?, vertices, edges)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<OrbitDocument> {
        Ok(serde_json::from_str(text)?)
    }
}

/// CSV matrices of an orbit in canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixExport {
    pub adjacency: String,
    pub distance: String,
    pub blocks: BlockBoundaries,
}

/// Adjacency entries are the smallest 1-based label leading from the row
/// vertex to the column vertex (0 when there is none); with `symmetric`
/// both directions are pooled.
pub fn export_matrices(orbit: &Orbit, symmetric: bool) -> Result<MatrixExport> {
    let o = canonically_ordered(orbit);
    let n = o.len();
    let mut adjacency = vec![vec![0usize; n]; n];
    let mut put = |from: usize, to: usize, labels: &[usize]| {
        if let Some(&min) = labels.iter().min() {
            let cell = &mut adjacency[from][to];
            if *cell == 0 || min + 1 < *cell {
                *cell = min + 1;
            }
        }
    };
    for e in o.edges() {
        put(e.u, e.v, &e.labels_from_u);
        put(e.v, e.u, &e.labels_from_v);
        if symmetric {
            put(e.u, e.v, &e.labels_from_v);
            put(e.v, e.u, &e.labels_from_u);
        }
    }
    let distances = all_pairs_distances(&o).distances;
    Ok(MatrixExport {
        adjacency: to_csv(&adjacency)?,
        distance: to_csv(&distances)?,
        blocks: block_boundaries(&o),
    })
}

fn to_csv<T: ToString>(rows: &[Vec<T>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(row.iter().map(ToString::to_string))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV of numbers is UTF-8"))
}

/// Graphviz rendering. Unlabelled orbits become digraphs with one arc per
/// direction that carries labels; labelled orbits are undirected.
pub fn to_dot(orbit: &Orbit) -> String {
    let o = canonically_ordered(orbit);
    let join = |labels: &[usize]| labels.iter().map(|l| (l + 1).to_string()).collect::<Vec<_>>().join(",");
    let mut out = String::new();
    let directed = o.kind() == OrbitKind::Unlabelled;
    let (keyword, arrow) = if directed { ("digraph", "->") } else { ("graph", "--") };
    let _ = writeln!(out, "{keyword} orbit {{");
    for (i, g) in o.vertices().iter().enumerate() {
        let _ = writeln!(out, "  {i} [label=\"{}\"];", encode_graph6(g).replace('\\', "\\\\").replace('"', "\\\""));
    }
    for e in o.edges() {
        if directed {
            if !e.labels_from_u.is_empty() {
                let _ = writeln!(out, "  {} {arrow} {} [label=\"{}\"];", e.u, e.v, join(&e.labels_from_u));
            }
            if !e.is_loop() && !e.labels_from_v.is_empty() {
                let _ = writeln!(out, "  {} {arrow} {} [label=\"{}\"];", e.v, e.u, join(&e.labels_from_v));
            }
        } else {
            let _ = writeln!(out, "  {} {arrow} {} [label=\"{}\"];", e.u, e.v, join(&e.labels_from_u));
        }
    }
    out.push_str("}\n");
    out
}
