//! `fcd` — enumeration, dimension tables, verification suites, reduction,
//! chromatic evaluation and relation-matrix export for framed chord
//! diagrams and framed graphs.
//!
//! Exit codes: 0 success, 1 property or table-assertion failure, 2 usage or
//! parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fcd_core::chromatic::ChromaticEngine;
use fcd_core::diagram::FramedChordDiagram;
use fcd_core::dimensions::{dim_report, Config, DimensionReport, SpaceTag};
use fcd_core::graph::FramedGraph;
use fcd_core::reduction::{reduce_diagram, trace_text};
use fcd_core::relations::{
    basis_index_text, fourt_diagram_relations, fourt_graph_relations, relations_to_triplet_text,
};
use fcd_core::verify::{
    all_pass, suite_antipode, suite_chromatic_4t, suite_chromatic_hopf, suite_comodule,
    suite_consistency, suite_delta_prime, suite_hopf_module, suite_intersection_squares,
    suite_reduction, PropertyResult,
};

/// Published dimension rows (indexed by order 1..=5).
const TABLE_M: [usize; 5] = [2, 5, 12, 30, 73];
const TABLE_CO_M: [usize; 5] = [1, 2, 5, 12, 29];
const TABLE_H: [usize; 5] = [2, 5, 11, 26, 58];
const TABLE_CO_H: [usize; 5] = [1, 2, 4, 9, 19];
const TABLE_PCO_H: [usize; 5] = [1, 1, 2, 4, 8];

#[derive(Parser)]
#[command(
    name = "fcd",
    version,
    about = "Exact calculator for framed chord diagrams and framed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Primes for modular ranks, comma separated (default: three 31-bit
    /// primes above 2^30).
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Force exact rational elimination at every order.
    #[arg(long, global = true)]
    exact: bool,
    /// Seed for randomized property sampling.
    #[arg(long, global = true, default_value_t = 2017)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension reports for one space (A, M, G, H, CoM, CoH, PCoH).
    Dims {
        #[arg(long)]
        space: String,
        /// Largest order to compute.
        #[arg(long, default_value_t = 5)]
        max: usize,
        /// Compare against the published table for this space and exit
        /// nonzero on mismatch.
        #[arg(long)]
        assert_paper: bool,
        /// Output format: `table` or `records`.
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Run a named property suite (comodule, hopf-module, delta-prime,
    /// chromatic-4t, intersection-squares, antipode, reduction,
    /// consistency).
    Verify {
        suite: String,
        /// Main order bound of the suite (suite-specific default).
        #[arg(long)]
        max: Option<usize>,
    },
    /// Rewrite a framed diagram as a combination of black-by-white
    /// products, printing the rewrite trace and the output combination.
    Reduce { diagram: String },
    /// Framed chromatic polynomial of a graph code.
    Chromatic { graph: String },
    /// Export the relation matrix (sparse triplets) and the basis index for
    /// one space and order.
    Export {
        #[arg(long)]
        space: String,
        #[arg(long)]
        order: usize,
        /// Output path prefix; writes `<out>.mat` and `<out>.index`.
        #[arg(long)]
        out: PathBuf,
    },
    /// List canonical diagrams or graphs of one order.
    Enumerate {
        /// `diagrams` or `graphs`.
        kind: String,
        n: usize,
        /// Include all framings (default: all-black only).
        #[arg(long)]
        framed: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = Config::default();
    if !cli.primes.is_empty() {
        for &p in &cli.primes {
            if p >= (1 << 31) || !fcd_core::linalg::is_prime_u64(p) {
                eprintln!("error: {p} is not a prime below 2^31");
                return ExitCode::from(2);
            }
        }
        cfg.primes = cli.primes.clone();
    }
    cfg.force_exact = cli.exact;
    cfg.seed = cli.seed;

    match run(cli, cfg) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli, mut cfg: Config) -> Result<ExitCode, String> {
    match cli.command {
        Command::Dims {
            space,
            max,
            assert_paper,
            format,
        } => {
            let tag = SpaceTag::parse_str(&space).ok_or_else(|| {
                format!("unknown space `{space}` (use A, M, G, H, CoM, CoH, PCoH)")
            })?;
            if !matches!(format.as_str(), "table" | "records") {
                return Err(format!("unknown format `{format}` (use table or records)"));
            }
            cfg.max_order = max;
            let mut reports = Vec::new();
            for n in 0..=max {
                reports.push(dim_report(tag, n, &cfg).map_err(|e| e.to_string())?);
            }
            print_reports(&reports, &format);
            if assert_paper {
                let table: &[usize] = match tag {
                    SpaceTag::M => &TABLE_M,
                    SpaceTag::CoM => &TABLE_CO_M,
                    SpaceTag::H => &TABLE_H,
                    SpaceTag::CoH => &TABLE_CO_H,
                    SpaceTag::PCoH => &TABLE_PCO_H,
                    SpaceTag::A | SpaceTag::G => {
                        return Err(format!(
                            "no published table for space {tag}; --assert-paper applies to M, CoM, H, CoH, PCoH"
                        ))
                    }
                };
                let mut bad = false;
                for r in reports.iter().filter(|r| (1..=5).contains(&r.order)) {
                    let expect = table[r.order - 1];
                    if r.dim != expect {
                        println!(
                            "MISMATCH: dim {tag}^{} = {} but the table says {expect}",
                            r.order, r.dim
                        );
                        bad = true;
                    }
                }
                if bad {
                    return Ok(ExitCode::from(1));
                }
                println!("table check: ok");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, max } => {
            println!("seed: {}", cfg.seed);
            let results: Vec<PropertyResult> = match suite.as_str() {
                "comodule" => suite_comodule(max.unwrap_or(4)),
                "hopf-module" => suite_hopf_module(max.unwrap_or(3), 500, cfg.seed),
                "delta-prime" => suite_delta_prime(max.unwrap_or(4), 500, cfg.seed),
                "chromatic-4t" => {
                    let bound = max.unwrap_or(5);
                    let classical = if max.is_none() { 7 } else { bound.min(7) };
                    let mut r = suite_chromatic_4t(bound, classical, 100, cfg.seed);
                    r.extend(suite_chromatic_hopf(bound, 200, cfg.seed));
                    r
                }
                "intersection-squares" => match max {
                    None => suite_intersection_squares(3, 4),
                    Some(m) => suite_intersection_squares(m, m.clamp(2, 4)),
                },
                "antipode" => suite_antipode(max.unwrap_or(4)),
                "reduction" => {
                    let bound = max.unwrap_or(4);
                    for n in 0..=bound {
                        for d in FramedChordDiagram::enumerate(n, true) {
                            let t = reduce_diagram(&d);
                            println!(
                                "trace diagram {}: steps={} terms={} factors={}",
                                d.code(),
                                t.steps.len(),
                                t.output.len(),
                                t.factors.len()
                            );
                        }
                        for g in FramedGraph::enumerate(n, true) {
                            let t = fcd_core::reduction::reduce_graph(&g);
                            println!(
                                "trace graph {}: steps={} terms={} factors={}",
                                g.code(),
                                t.steps.len(),
                                t.output.len(),
                                t.factors.len()
                            );
                        }
                    }
                    suite_reduction(bound)
                }
                "consistency" => {
                    cfg.max_order = max.unwrap_or(5);
                    suite_consistency(&cfg)
                }
                other => {
                    return Err(format!(
                        "unknown suite `{other}` (use comodule, hopf-module, delta-prime, \
                         chromatic-4t, intersection-squares, antipode, reduction, consistency)"
                    ))
                }
            };
            for r in &results {
                let status = if r.pass { "PASS" } else { "FAIL" };
                println!("{status} {} - {}", r.name, r.detail);
            }
            Ok(if all_pass(&results) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Reduce { diagram } => {
            let d = FramedChordDiagram::parse(&diagram).map_err(|e| e.to_string())?;
            let trace = reduce_diagram(&d);
            let body = trace.output.to_text(|k| k.code());
            print!("{}", trace_text(&trace.steps, &body));
            Ok(ExitCode::SUCCESS)
        }
        Command::Chromatic { graph } => {
            let g = FramedGraph::parse(&graph).map_err(|e| e.to_string())?;
            let p = ChromaticEngine::new().chromatic(&g);
            println!("{p}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { space, order, out } => {
            let tag =
                SpaceTag::parse_str(&space).ok_or_else(|| format!("unknown space `{space}`"))?;
            let (matrix, index) = match tag {
                SpaceTag::A | SpaceTag::M => {
                    let framed = tag == SpaceTag::M;
                    let basis = FramedChordDiagram::enumerate(order, framed);
                    let rels = fourt_diagram_relations(order, framed);
                    (
                        relations_to_triplet_text(&rels.vectors, &basis, basis.len()),
                        basis_index_text(&basis, |k| k.code()),
                    )
                }
                SpaceTag::G | SpaceTag::H => {
                    let framed = tag == SpaceTag::H;
                    let basis = FramedGraph::enumerate(order, framed);
                    let rels = fourt_graph_relations(order, framed);
                    (
                        relations_to_triplet_text(&rels.vectors, &basis, basis.len()),
                        basis_index_text(&basis, |k| k.code()),
                    )
                }
                _ => {
                    return Err(format!(
                        "export applies to the base spaces A, M, G, H, not {tag}"
                    ))
                }
            };
            let mat_path = out.with_extension("mat");
            let idx_path = out.with_extension("index");
            std::fs::write(&mat_path, matrix).map_err(|e| e.to_string())?;
            std::fs::write(&idx_path, index).map_err(|e| e.to_string())?;
            println!("wrote {}", mat_path.display());
            println!("wrote {}", idx_path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { kind, n, framed } => {
            match kind.as_str() {
                "diagrams" => {
                    if n > 7 {
                        return Err(format!(
                            "diagram enumeration is sized for order <= 7, got {n}"
                        ));
                    }
                    for d in FramedChordDiagram::enumerate(n, framed) {
                        println!("{}", d.code());
                    }
                }
                "graphs" => {
                    if n > 8 {
                        return Err(format!("graph enumeration is sized for n <= 8, got {n}"));
                    }
                    for g in FramedGraph::enumerate(n, framed) {
                        println!("{}", g.code());
                    }
                }
                other => return Err(format!("unknown kind `{other}` (use diagrams or graphs)")),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_reports(reports: &[DimensionReport], format: &str) {
    if format == "records" {
        for r in reports {
            println!("{}", r.record());
        }
        return;
    }
    println!(
        "{:>2} {:>8} {:>10} {:>9} {:>7} {:>5}  mode",
        "n", "basis", "generated", "relations", "rank", "dim"
    );
    for r in reports {
        let mode = if r.exact {
            "exact+primes".to_string()
        } else {
            format!(
                "primes {}",
                r.primes
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        };
        println!(
            "{:>2} {:>8} {:>10} {:>9} {:>7} {:>5}  {}",
            r.order, r.basis_size, r.relations_generated, r.relations_dedup, r.rank, r.dim, mode
        );
    }
    let dims: Vec<String> = reports
        .iter()
        .filter(|r| r.order >= 1)
        .map(|r| r.dim.to_string())
        .collect();
    if dims.is_empty() {
        if let Some(r) = reports.first() {
            println!("dims: {}", r.dim);
        }
    } else {
        println!("dims: {}", dims.join(" "));
    }
}
