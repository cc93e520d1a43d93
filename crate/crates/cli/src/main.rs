//! `lcorbit` command-line tool.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcorbit::census::{
    class_statistics_from, correlation_report, enumerate_classes_with, fingerprint_match, orbit_isomorphism_matrix,
    Catalogue, CensusOptions, MAX_CENSUS_QUBITS,
};
use lcorbit::io::{encode_graph6, export_matrices, parse_edge_list, parse_graph6, to_dot, OrbitDocument};
use lcorbit::metrics::{class_record, minimum_edge_representative, SchmidtBounds};
use lcorbit::orbit::{explore_labelled, explore_unlabelled, Orbit};
use lcorbit::stabilizer::verify_lc;
use lcorbit::{Error, Graph};

const THREADS_VAR: &str = "LC_ORBIT_THREADS";

#[derive(Parser)]
#[command(name = "lcorbit", version, about = "Local complementation orbits of graph states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Labelled,
    Unlabelled,
}

#[derive(Subcommand)]
enum Command {
    /// Explore the orbit of one graph and write it as JSON.
    Explore {
        /// File holding a graph6 line or a 1-based edge list.
        #[arg(long, conflicts_with = "g6", required_unless_present = "g6")]
        input: Option<PathBuf>,
        #[arg(long)]
        g6: Option<String>,
        #[arg(long, value_enum, default_value = "unlabelled")]
        kind: Kind,
        /// Attach the class record (unlabelled orbits only).
        #[arg(long)]
        metrics: bool,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate every LC class on n qubits (a single count or a range a..b).
    Census {
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        /// Permit the 8-qubit tier.
        #[arg(long)]
        long_run: bool,
        /// Skip class records.
        #[arg(long)]
        no_metrics: bool,
        /// Directory for class documents and summaries; a summary goes to
        /// standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the class record of an unlabelled orbit document.
    Metrics {
        #[arg(long)]
        orbit: PathBuf,
        /// JSON file with `lower` and `upper` Schmidt-measure bounds.
        #[arg(long)]
        schmidt: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export adjacency and distance matrices or DOT for an orbit document.
    Matrix {
        #[arg(long)]
        orbit: PathBuf,
        #[arg(long)]
        adjacency: bool,
        #[arg(long)]
        distance: bool,
        #[arg(long)]
        dot: bool,
        /// Pool labels from both directions in the adjacency matrix.
        #[arg(long)]
        symmetric: bool,
        /// Output path prefix; defaults to the orbit file without extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the graph rule against the stabilizer model.
    VerifyLc {
        #[arg(long)]
        n: usize,
        /// Random trials for n >= 6; smaller n is always exhaustive.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Correlation report over a census directory.
    Correlate {
        #[arg(long)]
        census: PathBuf,
        /// Catalogue CSV; the bundled table when omitted.
        #[arg(long)]
        catalogue: Option<PathBuf>,
        /// Also compute labelled-orbit statistics.
        #[arg(long)]
        labelled: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pairwise orbit isomorphism over a census directory.
    IsoMatrix {
        #[arg(long)]
        census: PathBuf,
        #[arg(long)]
        strip_loops: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn verification(message: impl Into<String>) -> Self {
        Failure { code: 4, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Argument(_) => 1,
            Error::Capacity(_) | Error::BudgetExhausted(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult<T> = Result<T, Failure>;

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let number = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("{t:?} is not a qubit count"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (number(a)?, number(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok((a, b))
        }
        None => {
            let n = number(s)?;
            Ok((n, n))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(f) = configure_threads().and_then(|()| run(cli.command)) {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    ExitCode::SUCCESS
}

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::usage(format!("{THREADS_VAR} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Explore { input, g6, kind, metrics, out } => explore(input, g6, kind, metrics, out),
        Command::Census { n, long_run, no_metrics, out } => census(n, long_run, !no_metrics, out),
        Command::Metrics { orbit, schmidt, out } => metrics(&orbit, schmidt, out),
        Command::Matrix { orbit, adjacency, distance, dot, symmetric, out } => {
            matrix(&orbit, adjacency, distance, dot, symmetric, out)
        }
        Command::VerifyLc { n, trials, seed } => verify(n, trials, seed),
        Command::Correlate { census, catalogue, labelled, out } => correlate(&census, catalogue, labelled, out),
        Command::IsoMatrix { census, strip_loops, out } => iso_matrix(&census, strip_loops, out),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::data(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Failure::data(format!("cannot create {}: {e}", parent.display())))?;
    }
    fs::write(path, contents).map_err(|e| Failure::data(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, contents: &str) -> CliResult<()> {
    match out {
        Some(path) => write(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

/// A graph6 line, or otherwise a 1-based edge list.
fn parse_graph_text(text: &str) -> CliResult<Graph> {
    let trimmed = text.trim();
    if !trimmed.is_empty() && !trimmed.contains(char::is_whitespace) && !trimmed.starts_with('#') {
        Ok(parse_graph6(trimmed)?)
    } else {
        Ok(parse_edge_list(text)?)
    }
}

fn load_orbit(path: &Path) -> CliResult<(OrbitDocument, Orbit)> {
    let doc = OrbitDocument::from_json(&read(path)?)?;
    let orbit = doc.to_orbit()?;
    Ok((doc, orbit))
}

fn explore(input: Option<PathBuf>, g6: Option<String>, kind: Kind, metrics: bool, out: Option<PathBuf>) -> CliResult<()> {
    let graph = match (input, g6) {
        (_, Some(text)) => parse_graph6(text.trim())?,
        (Some(path), None) => parse_graph_text(&read(&path)?)?,
        (None, None) => return Err(Failure::usage("one of --input or --g6 is required")),
    };
    let orbit = match kind {
        Kind::Labelled => explore_labelled(&graph)?,
        Kind::Unlabelled => explore_unlabelled(&graph)?,
    };
    let record = match (metrics, kind) {
        (false, _) => None,
        (true, Kind::Unlabelled) => Some(class_record(&orbit, None)?),
        (true, Kind::Labelled) => return Err(Failure::usage("--metrics needs an unlabelled orbit")),
    };
    let doc = OrbitDocument::from_orbit(&orbit, record);
    eprintln!("orbit: {} vertices, {} edges", orbit.len(), orbit.edges().len());
    emit(out.as_deref(), &doc.to_json()?)
}

const SUMMARY_HEADER: &str = "n,index,representative,orbit_size,orbit_edges,labelled_orbit_size,labelled_orbit_count,min_edges,rank_width,chi_g,chi_g_e,chi_orbit,chi_orbit_e,is_tree,mean_distance,diameter,aut_order,planar,has_loop,eulerian,hamiltonian,catalogue_matches";

fn census(range: (usize, usize), long_run: bool, records: bool, out: Option<PathBuf>) -> CliResult<()> {
    let (lo, hi) = range;
    if lo < 2 {
        return Err(Failure::usage(format!("qubit counts start at 2, got {lo}")));
    }
    if hi > MAX_CENSUS_QUBITS {
        return Err(Error::Capacity(format!("census by enumeration supports at most {MAX_CENSUS_QUBITS} qubits")).into());
    }
    let catalogue = Catalogue::builtin();
    let mut summary = String::from(SUMMARY_HEADER);
    summary.push('\n');
    for n in lo..=hi {
        let options = CensusOptions { long_run, records, ..CensusOptions::default() };
        let census = enumerate_classes_with(n, options)?;
        eprintln!("n = {n}: {} classes", census.classes.len());
        for (index, class) in census.classes.iter().enumerate() {
            let mut line = format!(
                "{n},{index},{},{},{},{},{}",
                encode_graph6(&class.representative),
                class.orbit.len(),
                class.orbit.edges().len(),
                class.labelled_orbit_size,
                class.labelled_orbit_count
            );
            match &class.record {
                Some(r) => {
                    let matches: Vec<String> = fingerprint_match(r, &catalogue).iter().map(u32::to_string).collect();
                    line.push_str(&format!(
                        ",{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                        r.min_edges,
                        r.rank_width,
                        r.chi_g,
                        r.chi_g_e,
                        r.chi_orbit,
                        r.chi_orbit_e,
                        r.is_tree,
                        r.mean_distance,
                        r.diameter,
                        r.aut_order,
                        r.planar,
                        r.has_loop,
                        r.eulerian,
                        r.hamiltonian,
                        matches.join(" ")
                    ));
                }
                None => line.push_str(&",".repeat(15)),
            }
            summary.push_str(&line);
            summary.push('\n');
            if let Some(dir) = &out {
                let doc = OrbitDocument::from_orbit(&class.orbit, class.record.clone());
                write(&dir.join(format!("n{n}")).join(format!("class_{index:03}.json")), &doc.to_json()?)?;
            }
        }
    }
    match &out {
        Some(dir) => write(&dir.join("summary.csv"), &summary),
        None => emit(None, &summary),
    }
}

fn metrics(orbit: &Path, schmidt: Option<PathBuf>, out: Option<PathBuf>) -> CliResult<()> {
    let (_, orbit) = load_orbit(orbit)?;
    let bounds = match schmidt {
        Some(path) => Some(
            serde_json::from_str::<SchmidtBounds>(&read(&path)?)
                .map_err(|e| Failure::data(format!("bad Schmidt bounds file: {e}")))?,
        ),
        None => None,
    };
    let record = class_record(&orbit, bounds)?;
    let mut text = serde_json::to_string_pretty(&record).map_err(Error::from)?;
    text.push('\n');
    emit(out.as_deref(), &text)
}

fn matrix(
    orbit_path: &Path,
    adjacency: bool,
    distance: bool,
    dot: bool,
    symmetric: bool,
    out: Option<PathBuf>,
) -> CliResult<()> {
    if !(adjacency || distance || dot) {
        return Err(Failure::usage("choose at least one of --adjacency, --distance, --dot"));
    }
    let (_, orbit) = load_orbit(orbit_path)?;
    let prefix = out.unwrap_or_else(|| orbit_path.with_extension(""));
    let with_suffix = |suffix: &str| {
        let mut name = prefix.as_os_str().to_owned();
        name.push(suffix);
        PathBuf::from(name)
    };
    let m = export_matrices(&orbit, symmetric)?;
    if adjacency {
        write(&with_suffix(".adjacency.csv"), &m.adjacency)?;
    }
    if distance {
        write(&with_suffix(".distance.csv"), &m.distance)?;
    }
    if adjacency || distance {
        let mut blocks = serde_json::to_string_pretty(&m.blocks).map_err(Error::from)?;
        blocks.push('\n');
        write(&with_suffix(".blocks.json"), &blocks)?;
    }
    if dot {
        write(&with_suffix(".dot"), &to_dot(&orbit))?;
    }
    Ok(())
}

fn verify(n: usize, trials: usize, seed: u64) -> CliResult<()> {
    if n == 0 {
        return Err(Failure::usage("n must be positive"));
    }
    let mut checked = 0usize;
    let mut failures = Vec::new();
    let mut check = |g: &Graph, alpha: usize| -> CliResult<()> {
        checked += 1;
        if !verify_lc(g, alpha)? {
            failures.push(format!("{} at vertex {}", encode_graph6(g), alpha + 1));
        }
        Ok(())
    };
    if n < 6 {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        for code in 0u64..1 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edges(n, &edges)?;
            if !g.is_connected() {
                continue;
            }
            for alpha in 0..n {
                check(&g, alpha)?;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut done = 0;
        while done < trials {
            let g = random_graph(n, &mut rng)?;
            if !g.is_connected() {
                continue;
            }
            check(&g, rng.gen_range(0..n))?;
            done += 1;
        }
    }
    eprintln!("checked {checked} (graph, vertex) pairs, {} failures", failures.len());
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::verification(format!("local complementation mismatch: {}", failures.join("; "))))
    }
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> CliResult<Graph> {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Class documents under a census directory, in path order.
fn census_documents(dir: &Path) -> CliResult<Vec<(String, OrbitDocument, Orbit)>> {
    let mut paths = Vec::new();
    let entries = fs::read_dir(dir).map_err(|e| Failure::data(format!("cannot read {}: {e}", dir.display())))?;
    for entry in entries.flatten() {
        let sub = entry.path();
        if !sub.is_dir() {
            continue;
        }
        for file in fs::read_dir(&sub).map_err(|e| Failure::data(e.to_string()))?.flatten() {
            let p = file.path();
            let is_class = p.file_name().and_then(|s| s.to_str()).is_some_and(|s| s.starts_with("class_") && s.ends_with(".json"));
            if is_class {
                paths.push(p);
            }
        }
    }
    paths.sort();
    if paths.is_empty() {
        return Err(Failure::data(format!("no class documents under {}", dir.display())));
    }
    paths
        .into_iter()
        .map(|p| {
            let (doc, orbit) = load_orbit(&p)?;
            let id = p.strip_prefix(dir).unwrap_or(&p).with_extension("").display().to_string();
            Ok((id, doc, orbit))
        })
        .collect()
}

fn correlate(dir: &Path, catalogue: Option<PathBuf>, labelled: bool, out: Option<PathBuf>) -> CliResult<()> {
    let catalogue = match catalogue {
        Some(path) => Catalogue::from_path(&path)?,
        None => Catalogue::builtin(),
    };
    let mut classes = Vec::new();
    for (id, doc, orbit) in census_documents(dir)? {
        let record = doc.metrics.ok_or_else(|| Failure::data(format!("{id} carries no class record")))?;
        classes.push((minimum_edge_representative(&orbit), record));
    }
    let stats = class_statistics_from(&classes, &catalogue, labelled)?;
    let report = correlation_report(&stats)?;
    eprintln!(
        "{} of {} classes matched; qubits {}..={}",
        report.class_count,
        classes.len(),
        report.qubit_range.0,
        report.qubit_range.1
    );
    let mut text = String::from("x,y,r\n");
    for c in &report.correlations {
        text.push_str(&format!("{},{},{:.6}\n", c.x, c.y, c.r));
    }
    emit(out.as_deref(), &text)
}

fn iso_matrix(dir: &Path, strip_loops: bool, out: Option<PathBuf>) -> CliResult<()> {
    let docs = census_documents(dir)?;
    let orbits: Vec<Orbit> = docs.iter().map(|(_, _, o)| o.clone()).collect();
    let m = orbit_isomorphism_matrix(&orbits, strip_loops);
    let mut text = String::from("class");
    for (id, _, _) in &docs {
        text.push(',');
        text.push_str(id);
    }
    text.push('\n');
    for ((id, _, _), row) in docs.iter().zip(&m) {
        text.push_str(id);
        for &cell in row {
            text.push_str(if cell { ",1" } else { ",0" });
        }
        text.push('\n');
    }
    emit(out.as_deref(), &text)
}
