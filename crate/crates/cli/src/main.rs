//! Command-line front end: distance, betweenness, and quadruple queries over
//! permutation files, graph export, ranking ingestion, the metric-table
//! verifier, and the seeded verification suites.
//!
//! Exit codes: 0 on success, 1 when a check or verdict comes out negative,
//! 2 on input errors.

mod ingest;
mod suites;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use permrank::conjecture::{check_conditions, isometry_search_n3, MetricTable};
use permrank::graph::{lies_between_dsc, lies_between_metric, LabeledGraph, DEFAULT_GRAPH_CAP};
use permrank::metric::{distance, kendall_correlation, WeightMatrix};
use permrank::perm::{discordance_set, Permutation};
use permrank::quadruples::{
    is_pseudolinear, is_symmetric_labeling, label_multiplicities, parse_cycle_line,
    quadruples_from_cycle, QuadrupleCertificate,
};
use permrank::rational::{decimal_with_marker, format_ratio, Ratio};

#[derive(Parser)]
#[command(
    name = "permrank",
    about = "Weighted Kendall distances on permutations, with exact rational arithmetic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct WeightSource {
    /// All-ones weights (the normalized Kendall tau distance).
    #[arg(long)]
    tau: bool,
    /// Power-of-two weights with pairwise-distinct subset sums.
    #[arg(long)]
    generic: bool,
    /// Weight file: header "n <order>", then lines "i j w".
    #[arg(long, value_name = "FILE")]
    weights: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Distances between the permutations of a file (one per line).
    Dist {
        /// Permutation file: whitespace-separated values, one per line.
        perms: PathBuf,
        #[command(flatten)]
        weights: WeightSource,
        /// All unordered pairs instead of consecutive lines.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Whether the middle of three permutations lies metrically between the
    /// other two. Exits 1 when it does not.
    Between {
        /// Permutation file with exactly three lines.
        perms: PathBuf,
        #[command(flatten)]
        weights: WeightSource,
    },
    /// Whether four permutations form a pseudolinear quadruple. Exits 1 when
    /// they do not.
    Quad {
        /// Permutation file with exactly four lines.
        perms: PathBuf,
        #[command(flatten)]
        weights: WeightSource,
    },
    /// Validates a cycle (permutations separated by "|") and emits the
    /// quadruples it generates. Exits 1 when the cycle preconditions fail.
    Cycle {
        /// File whose first line is the cycle.
        file: PathBuf,
        #[command(flatten)]
        weights: WeightSource,
    },
    /// Builds the labeled permutohedron edge-graph and exports DOT.
    Graph {
        /// Order of the graph.
        n: usize,
        /// Write DOT here instead of stdout.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Materialization cap (overrides PERMRANK_CAP).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Converts ranking scores (CSV with columns observer,item,score) into a
    /// permutation file.
    Ingest {
        /// Rankings CSV.
        csv: PathBuf,
        /// Output file (stdout when absent).
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Checks the structural conditions of a metric-table file; for order 3,
    /// optionally constructs a weight and an isometry. Exits 1 on failure.
    Conjecture {
        /// Metric table file.
        table: PathBuf,
        /// Expected order (the table should have n! points).
        #[arg(long)]
        n: usize,
        /// Also search for an order-3 isometry.
        #[arg(long)]
        isometry: bool,
    },
    /// Runs a seeded invariant suite. Exits 1 on any property failure.
    Verify {
        #[arg(long, value_parser = ["core", "graph", "quadruples", "conjecture"])]
        suite: String,
        /// Order to test at (suite-specific default).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Verdict-style outcome of a command that checks something.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (e.g. `permrank graph 4 | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Dist {
            perms,
            weights,
            all_pairs,
        } => cmd_dist(&perms, &weights, all_pairs),
        Command::Between { perms, weights } => cmd_between(&perms, &weights),
        Command::Quad { perms, weights } => cmd_quad(&perms, &weights),
        Command::Cycle { file, weights } => cmd_cycle(&file, &weights),
        Command::Graph { n, dot, cap } => cmd_graph(n, dot.as_deref(), cap),
        Command::Ingest { csv, output } => ingest::cmd_ingest(&csv, output.as_deref()),
        Command::Conjecture { table, n, isometry } => cmd_conjecture(&table, n, isometry),
        Command::Verify { suite, n, seed } => suites::cmd_verify(&suite, n, seed),
    }
}

fn read_to_string(path: &std::path::Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// Parses a permutation file: one permutation per line, whitespace-separated
/// values; blank lines and `#` comments are skipped.
fn read_permutations(path: &std::path::Path) -> Result<Vec<Permutation>, String> {
    let text = read_to_string(path)?;
    let mut perms = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let p: Permutation = trimmed
            .parse()
            .map_err(|e| format!("{}, line {}: {e}", path.display(), k + 1))?;
        perms.push(p);
    }
    if perms.is_empty() {
        return Err(format!("{}: no permutations", path.display()));
    }
    let order = perms[0].order();
    for (k, p) in perms.iter().enumerate() {
        if p.order() != order {
            return Err(format!(
                "{}: order mismatch: entry 1 has order {order}, entry {} has order {}",
                path.display(),
                k + 1,
                p.order()
            ));
        }
    }
    Ok(perms)
}

fn resolve_weights(source: &WeightSource, order: usize) -> Result<WeightMatrix, String> {
    if order < 2 {
        return Err(format!("weighted distances need order >= 2, got {order}"));
    }
    let w = if source.tau {
        WeightMatrix::kendall_tau(order)
    } else if source.generic {
        WeightMatrix::generic(order)
    } else {
        let path = source.weights.as_ref().expect("clap enforces the group");
        let text = read_to_string(path)?;
        let w = WeightMatrix::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        if w.order() != order {
            return Err(format!(
                "weight order {} does not match permutation order {order}",
                w.order()
            ));
        }
        w
    };
    Ok(w)
}

fn render(r: &Ratio) -> String {
    format!("{} {}", format_ratio(r), decimal_with_marker(r, 10))
}

fn cmd_dist(
    perms_path: &std::path::Path,
    source: &WeightSource,
    all_pairs: bool,
) -> Result<Outcome, String> {
    let perms = read_permutations(perms_path)?;
    if perms.len() < 2 {
        return Err("need at least two permutations".to_string());
    }
    let w = resolve_weights(source, perms[0].order())?;
    let pairs: Vec<(usize, usize)> = if all_pairs {
        (0..perms.len())
            .flat_map(|i| (i + 1..perms.len()).map(move |j| (i, j)))
            .collect()
    } else {
        (0..perms.len() - 1).map(|i| (i, i + 1)).collect()
    };
    for (i, j) in pairs {
        let d = distance(&w, &perms[i], &perms[j]).map_err(|e| e.to_string())?;
        println!("d({}, {}) = {}", i + 1, j + 1, render(&d));
        if source.tau {
            let tau = kendall_correlation(&perms[i], &perms[j]).map_err(|e| e.to_string())?;
            println!("tau({}, {}) = {}", i + 1, j + 1, render(&tau));
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_between(perms_path: &std::path::Path, source: &WeightSource) -> Result<Outcome, String> {
    let perms = read_permutations(perms_path)?;
    let [p, m, q] = &perms[..] else {
        return Err(format!(
            "expected exactly three permutations, got {}",
            perms.len()
        ));
    };
    let w = resolve_weights(source, p.order())?;
    let dsc_pm = discordance_set(p, m).map_err(|e| e.to_string())?;
    let dsc_mq = discordance_set(m, q).map_err(|e| e.to_string())?;
    let dsc_pq = discordance_set(p, q).map_err(|e| e.to_string())?;
    println!("dsc(1, 2) = {dsc_pm}");
    println!("dsc(2, 3) = {dsc_mq}");
    println!("dsc(1, 3) = {dsc_pq}");
    let by_sets = lies_between_dsc(p, m, q).map_err(|e| e.to_string())?;
    let by_metric = lies_between_metric(&w, p, m, q).map_err(|e| e.to_string())?;
    println!(
        "between (discordance test): {}",
        if by_sets { "yes" } else { "no" }
    );
    println!(
        "between (metric test): {}",
        if by_metric { "yes" } else { "no" }
    );
    Ok(if by_sets && by_metric {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn print_certificate(cert: &QuadrupleCertificate) {
    println!("pseudolinear quadruple");
    for (k, p) in cert.enumeration().iter().enumerate() {
        println!("  x{} = {p}", k + 1);
    }
    println!("  s = {}", render(cert.s()));
    println!("  t = {}", render(cert.t()));
    println!("  s + t = {}", render(&cert.diameter()));
}

fn cmd_quad(perms_path: &std::path::Path, source: &WeightSource) -> Result<Outcome, String> {
    let perms = read_permutations(perms_path)?;
    let [a, b, c, d] = &perms[..] else {
        return Err(format!(
            "expected exactly four permutations, got {}",
            perms.len()
        ));
    };
    let w = resolve_weights(source, a.order())?;
    let points = [a.clone(), b.clone(), c.clone(), d.clone()];
    match is_pseudolinear(&w, &points).map_err(|e| e.to_string())? {
        Some(cert) => {
            print_certificate(&cert);
            Ok(Outcome::Pass)
        }
        None => {
            println!("not pseudolinear");
            for i in 0..4 {
                for j in i + 1..4 {
                    let dij = distance(&w, &points[i], &points[j]).map_err(|e| e.to_string())?;
                    println!("  d({}, {}) = {}", i + 1, j + 1, render(&dij));
                }
            }
            Ok(Outcome::Fail)
        }
    }
}

fn cmd_cycle(file: &std::path::Path, source: &WeightSource) -> Result<Outcome, String> {
    let text = read_to_string(file)?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| format!("{}: no cycle line", file.display()))?;
    let cycle = parse_cycle_line(line).map_err(|e| e.to_string())?;
    println!("cycle: {} vertices", cycle.len());
    println!(
        "symmetric labeling: {}",
        if is_symmetric_labeling(&cycle) {
            "yes"
        } else {
            "no"
        }
    );
    for (label, m) in label_multiplicities(&cycle) {
        println!(
            "label {label}: {} edges ({})",
            m.count,
            if m.valid { "valid" } else { "invalid" }
        );
    }
    let order = cycle.vertices()[0].order();
    let w = resolve_weights(source, order)?;
    match quadruples_from_cycle(&w, &cycle) {
        Ok(certs) => {
            println!("quadruples: {}", certs.len());
            for cert in &certs {
                let e = cert.enumeration();
                println!(
                    "  ({}) ({}) ({}) ({})  s = {}  t = {}  s + t = {}",
                    e[0],
                    e[1],
                    e[2],
                    e[3],
                    format_ratio(cert.s()),
                    format_ratio(cert.t()),
                    format_ratio(&cert.diameter())
                );
            }
            Ok(Outcome::Pass)
        }
        Err(permrank::QuadError::PreconditionFailed { reason }) => {
            println!("preconditions not met: {reason}");
            Ok(Outcome::Fail)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn graph_cap(flag: Option<usize>) -> usize {
    if let Some(cap) = flag {
        return cap;
    }
    std::env::var("PERMRANK_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GRAPH_CAP)
}

fn cmd_graph(
    n: usize,
    dot: Option<&std::path::Path>,
    cap: Option<usize>,
) -> Result<Outcome, String> {
    let g = LabeledGraph::build_with_cap(n, graph_cap(cap)).map_err(|e| e.to_string())?;
    let rendered = g.to_dot();
    match dot {
        Some(path) => {
            fs::write(path, &rendered).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            println!(
                "graph of order {n}: {} vertices, {} edges",
                g.vertex_count(),
                g.edge_count()
            );
            println!("wrote {}", path.display());
        }
        None => {
            eprintln!(
                "graph of order {n}: {} vertices, {} edges",
                g.vertex_count(),
                g.edge_count()
            );
            print!("{rendered}");
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_conjecture(
    table_path: &std::path::Path,
    n: usize,
    isometry: bool,
) -> Result<Outcome, String> {
    let text = read_to_string(table_path)?;
    let table = MetricTable::parse(&text).map_err(|e| e.to_string())?;
    let report = check_conditions(&table, n);
    let factorial: usize = (1..=n).product();
    println!(
        "points: {} (expected {n}! = {factorial}) -> {}",
        table.len(),
        if report.size_ok { "ok" } else { "FAIL" }
    );
    match &report.antipode_map {
        Some(anti) => {
            println!("antipodal pairing: ok");
            for (i, &j) in anti.iter().enumerate() {
                if i < j {
                    println!("  {} <-> {}", table.labels()[i], table.labels()[j]);
                }
            }
        }
        None => println!("antipodal pairing: FAIL"),
    }
    match report.quadruple_failure {
        None if report.quadruple_ok => println!("quadruple condition: ok"),
        Some((x, y)) => println!(
            "quadruple condition: FAIL at ({}, {})",
            table.labels()[x],
            table.labels()[y]
        ),
        None => println!("quadruple condition: FAIL"),
    }
    if report.chain_ok {
        let edges = report
            .chain_witnesses
            .first()
            .map(|w| w.chain.len() - 1)
            .unwrap_or(0);
        println!(
            "chain condition: ok ({} witness chains of {} edges)",
            report.chain_witnesses.len(),
            edges
        );
    } else if report.chain_search_skipped {
        println!("chain condition: SKIPPED (table exceeds the search cap)");
    } else if let Some((x, y)) = report.chain_failure {
        println!(
            "chain condition: FAIL at ({}, {})",
            table.labels()[x],
            table.labels()[y]
        );
    } else if let Some(chain) = &report.long_chain {
        let rendered: Vec<&str> = chain.iter().map(|&i| table.labels()[i].as_str()).collect();
        println!("chain condition: FAIL (overlong chain {})", rendered.join(" -> "));
    } else {
        println!("chain condition: FAIL");
    }
    println!("overall: {}", if report.overall { "PASS" } else { "FAIL" });

    let mut ok = report.overall;
    if isometry {
        if n != 3 {
            return Err("isometry construction is available for order 3 only".to_string());
        }
        match isometry_search_n3(&table) {
            Ok(iso) => {
                let chain: Vec<&str> = iso
                    .case_chain
                    .iter()
                    .map(|&i| table.labels()[i].as_str())
                    .collect();
                println!("isometry: found via chain {}", chain.join(" -> "));
                println!("weight file:");
                print!("{}", iso.weight.to_file_string());
                println!("mapping:");
                for (i, p) in iso.mapping.iter().enumerate() {
                    println!("  {} -> {p}", table.labels()[i]);
                }
            }
            Err(e) => {
                println!("isometry: none ({e})");
                ok = false;
            }
        }
    }
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}
