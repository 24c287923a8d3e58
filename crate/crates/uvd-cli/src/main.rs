//! `uvd`: command-line front end for union vertex-distinguishing edge
//! colorings.
//!
//! Subcommands: `generate` (graph families), `color` (constructions with
//! shape detection), `verify` (validity check with diagnostics), `chi`
//! (exact minimum palette by exhaustive search), `bound` (pigeonhole lower
//! bound), and `export` (DOT / JSON rendering).
//!
//! Payloads (graph, coloring, or rendering text) go to `--out` when given,
//! otherwise to stdout; human-readable reports go to whichever of stdout /
//! stderr the payload does not occupy. Exit codes are stable: 0 success or
//! valid, 1 invalid coloring, 2 I/O or parse failure, 3 inadmissible or
//! wrong-shape input, 4 search budget exceeded.

mod detect;

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use uvd_core::cbt::color_cbt;
use uvd_core::coloring::{verify, Coloring};
use uvd_core::cycle::{c15_seed, color_cycle_with_seed, CycleSeedColoring};
use uvd_core::generate;
use uvd_core::graph::{lower_bound, Graph, GraphError};
use uvd_core::io;
use uvd_core::path::color_path;
use uvd_core::solver::{chi_union_jobs, ChiResult, SolverError};
use uvd_core::stars::{color_general, StarsError};

const EXIT_INVALID: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INADMISSIBLE: u8 = 3;
const EXIT_BUDGET: u8 = 4;

// ============================================================================
// Command grammar
// ============================================================================

#[derive(Parser)]
#[command(name = "uvd", version, about = "Union vertex-distinguishing edge colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a named family.
    Generate {
        #[command(subcommand)]
        family: FamilyCmd,
        /// Write the graph here instead of stdout.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Color a graph and report the palette against the lower bound.
    Color {
        /// Graph file in text format.
        graph: PathBuf,
        /// Construction to apply; `auto` detects the shape.
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
        /// Write the coloring here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring and report the first violation, if any.
    Verify {
        /// Graph file in text format.
        graph: PathBuf,
        /// Coloring file in text format.
        coloring: PathBuf,
        /// Also print every vertex code.
        #[arg(long)]
        codes: bool,
    },
    /// Compute the exact minimum palette size by exhaustive search.
    Chi {
        /// Graph file in text format.
        graph: PathBuf,
        /// Cap on search nodes; omitted means run to completion.
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads for the search.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the pigeonhole lower bound on the palette size.
    Bound {
        /// Graph file in text format.
        graph: PathBuf,
    },
    /// Render a colored graph as DOT or JSON.
    Export {
        /// Graph file in text format.
        graph: PathBuf,
        /// Coloring file in text format.
        coloring: PathBuf,
        /// Output format.
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Write the rendering here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Path on `n` vertices.
    Path { n: usize },
    /// Cycle on `n` vertices.
    Cycle { n: usize },
    /// Complete binary tree of height `h`.
    Cbt { h: u32 },
    /// Subdivided star with the given branch lengths (each 1 or 2).
    Star {
        #[arg(required = true)]
        lengths: Vec<u8>,
    },
    /// Complete graph on `n` vertices.
    Complete { n: usize },
    /// Erdos-Renyi graph, resampled until admissible.
    Random {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Auto,
    Path,
    Cycle,
    Cbt,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

// ============================================================================
// Failure plumbing
// ============================================================================

/// A command failure: exit code plus one stderr line.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Failure {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

fn parse_failure(e: impl Display) -> Failure {
    Failure::new(EXIT_PARSE, e)
}

fn solver_failure(e: SolverError) -> Failure {
    let code = match &e {
        SolverError::Graph(GraphError::Inadmissible(_)) => EXIT_INADMISSIBLE,
        _ => EXIT_INVALID,
    };
    Failure::new(code, e)
}

fn stars_failure(e: StarsError) -> Failure {
    let code = match &e {
        StarsError::Graph(GraphError::Inadmissible(_)) => EXIT_INADMISSIBLE,
        _ => EXIT_INVALID,
    };
    Failure::new(code, e)
}

fn shape_mismatch(shape: &str) -> Failure {
    Failure::new(
        EXIT_INADMISSIBLE,
        format!("graph is not a {shape}; pick another --strategy"),
    )
}

// ============================================================================
// I/O helpers
// ============================================================================

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    io::parse_graph(&read_file(path)?).map_err(parse_failure)
}

fn load_colored(graph: &Path, coloring: &Path) -> Result<(Graph, Coloring), Failure> {
    let g = load_graph(graph)?;
    let c = io::parse_coloring(&g, &read_file(coloring)?).map_err(parse_failure)?;
    Ok((g, c))
}

/// Writes the payload to `out` when given, else to stdout. The report goes
/// to the channel the payload does not occupy, so stdout stays machine
/// readable in both modes.
fn emit(payload: &str, out: Option<&Path>, report: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, payload)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
            if !report.is_empty() {
                println!("{report}");
            }
        }
        None => {
            print!("{payload}");
            if !report.is_empty() {
                eprintln!("{report}");
            }
        }
    }
    Ok(())
}

/// `ceil(log2(n + 1))`, total in `n` so inadmissible inputs still report.
fn order_lower_bound(n: usize) -> u32 {
    usize::BITS - n.leading_zeros()
}

// ============================================================================
// Entry point and dispatch
// ============================================================================

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Generate { family, out } => cmd_generate(&family, out.as_deref()),
        Command::Color {
            graph,
            strategy,
            out,
        } => cmd_color(&graph, strategy, out.as_deref()),
        Command::Verify {
            graph,
            coloring,
            codes,
        } => cmd_verify(&graph, &coloring, codes),
        Command::Chi {
            graph,
            budget,
            jobs,
        } => cmd_chi(&graph, budget, jobs),
        Command::Bound { graph } => cmd_bound(&graph),
        Command::Export {
            graph,
            coloring,
            format,
            out,
        } => cmd_export(&graph, &coloring, format, out.as_deref()),
    }
}

// ============================================================================
// generate
// ============================================================================

fn cmd_generate(family: &FamilyCmd, out: Option<&Path>) -> Result<u8, Failure> {
    let family = match family {
        FamilyCmd::Path { n } => generate::Family::Path(*n),
        FamilyCmd::Cycle { n } => generate::Family::Cycle(*n),
        FamilyCmd::Cbt { h } => generate::Family::CompleteBinaryTree(*h),
        FamilyCmd::Star { lengths } => generate::Family::OneStar(lengths.clone()),
        FamilyCmd::Complete { n } => generate::Family::Complete(*n),
        FamilyCmd::Random { n, p, seed } => generate::Family::Random {
            n: *n,
            p: *p,
            seed: *seed,
        },
    };
    let g = generate::generate(&family).map_err(parse_failure)?;
    let report = format!(
        "n={} m={} lower_bound={} admissible={}",
        g.n(),
        g.m(),
        order_lower_bound(g.n()),
        g.is_admissible()
    );
    emit(&io::write_graph(&g), out, &report)?;
    Ok(0)
}

// ============================================================================
// color
// ============================================================================

fn cmd_color(graph: &Path, strategy: Strategy, out: Option<&Path>) -> Result<u8, Failure> {
    let g = load_graph(graph)?;
    let lb = lower_bound(&g).map_err(|e| Failure::new(EXIT_INADMISSIBLE, e))?;
    let (coloring, note) = color_with_strategy(&g, strategy)?;
    // Fail closed: nothing is written unless the verifier signs off.
    let checked = verify(&g, &coloring).map_err(|e| Failure::new(EXIT_INVALID, e))?;
    if !checked.valid {
        return Err(Failure::new(
            EXIT_INVALID,
            "construction produced an invalid coloring; refusing to write it",
        ));
    }
    let k = coloring.k();
    let mut report = if k <= lb {
        format!("optimal ({k} colors)")
    } else {
        format!("+{} over lower bound ({k} colors)", k - lb)
    };
    if let Some(note) = note {
        report.push('\n');
        report.push_str(&note);
    }
    emit(&io::write_coloring(&g, &coloring), out, &report)?;
    Ok(0)
}

fn color_with_strategy(g: &Graph, strategy: Strategy) -> Result<(Coloring, Option<String>), Failure> {
    match strategy {
        Strategy::Auto => {
            if let Some(order) = detect::detect_path(g) {
                return path_coloring(g, &order);
            }
            if let Some(order) = detect::detect_cycle(g) {
                return cycle_coloring(g, &order);
            }
            if let Some((order, h)) = detect::detect_cbt(g) {
                return cbt_coloring(g, &order, h);
            }
            general_coloring(g)
        }
        Strategy::Path => {
            let order = detect::detect_path(g).ok_or_else(|| shape_mismatch("path"))?;
            path_coloring(g, &order)
        }
        Strategy::Cycle => {
            let order = detect::detect_cycle(g).ok_or_else(|| shape_mismatch("cycle"))?;
            cycle_coloring(g, &order)
        }
        Strategy::Cbt => {
            let (order, h) =
                detect::detect_cbt(g).ok_or_else(|| shape_mismatch("complete binary tree"))?;
            cbt_coloring(g, &order, h)
        }
        Strategy::General => general_coloring(g),
    }
}

fn path_coloring(g: &Graph, order: &[usize]) -> Result<(Coloring, Option<String>), Failure> {
    let pc = color_path(order.len()).map_err(|e| Failure::new(EXIT_INADMISSIBLE, e))?;
    let canon = generate::path(order.len()).expect("detected path has >= 3 vertices");
    Ok((detect::remap_coloring(g, &canon, pc.coloring(), order), None))
}

fn cycle_coloring(g: &Graph, order: &[usize]) -> Result<(Coloring, Option<String>), Failure> {
    let n = order.len();
    let seed_override = load_seed_override()?;
    let base = seed_override.as_ref().unwrap_or(c15_seed());
    let cc = color_cycle_with_seed(n, base).map_err(|e| Failure::new(EXIT_INADMISSIBLE, e))?;
    let canon = generate::cycle(n).expect("detected cycle has >= 3 vertices");
    let coloring = detect::remap_coloring(g, &canon, cc.coloring(), order);
    let note = match n {
        3 => Some("note: chi_union(C_3) = 3; the lower bound 2 is not achievable".to_string()),
        7 => Some("note: chi_union(C_7) = 4; the lower bound 3 is not achievable".to_string()),
        _ => None,
    };
    Ok((coloring, note))
}

fn cbt_coloring(g: &Graph, order: &[usize], h: u32) -> Result<(Coloring, Option<String>), Failure> {
    let cc = color_cbt(h).map_err(|e| Failure::new(EXIT_INADMISSIBLE, e))?;
    let canon = generate::complete_binary_tree(h).expect("detected height is in range");
    Ok((detect::remap_coloring(g, &canon, cc.coloring(), order), None))
}

fn general_coloring(g: &Graph) -> Result<(Coloring, Option<String>), Failure> {
    Ok((color_general(g).map_err(stars_failure)?, None))
}

/// Reads `$UVD_SEED_DIR/c15_seed.txt` when the variable is set. The file
/// must hold a seed coloring of `C_15` satisfying the doubling invariants.
fn load_seed_override() -> Result<Option<CycleSeedColoring>, Failure> {
    let Some(dir) = std::env::var_os("UVD_SEED_DIR") else {
        return Ok(None);
    };
    let path = PathBuf::from(dir).join("c15_seed.txt");
    let text = read_file(&path)?;
    let host = generate::cycle(15).expect("C_15 is a valid family parameter");
    let coloring = io::parse_coloring(&host, &text).map_err(parse_failure)?;
    let k = coloring.k();
    let seed = CycleSeedColoring::new(15, k, coloring)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    Ok(Some(seed))
}

// ============================================================================
// verify
// ============================================================================

fn cmd_verify(graph: &Path, coloring: &Path, codes: bool) -> Result<u8, Failure> {
    let (g, c) = load_colored(graph, coloring)?;
    let report = verify(&g, &c).map_err(parse_failure)?;
    if codes {
        for (v, code) in report.codes.iter().enumerate() {
            println!("{v}: {code}");
        }
    }
    if report.valid {
        println!("VALID, {} colors used", c.k());
        return Ok(0);
    }
    if let Some(i) = report.empty_edge {
        let (u, v) = g.edge(i);
        println!("empty set on edge ({u}, {v})");
    } else if let Some((u, v)) = report.clash {
        println!("clash: vertices {u} and {v}, code {}", report.codes[u]);
    }
    Ok(EXIT_INVALID)
}

// ============================================================================
// chi
// ============================================================================

fn cmd_chi(graph: &Path, budget: Option<u64>, jobs: usize) -> Result<u8, Failure> {
    if jobs == 0 {
        return Err(Failure::new(EXIT_PARSE, "--jobs must be at least 1"));
    }
    let g = load_graph(graph)?;
    match chi_union_jobs(&g, budget, jobs).map_err(solver_failure)? {
        ChiResult::Proved { value, .. } => {
            println!("chi_union = {value} (proved)");
            Ok(0)
        }
        ChiResult::Interval { lo, hi } => {
            println!("chi_union in [{lo},{hi}] (budget exceeded)");
            Ok(EXIT_BUDGET)
        }
    }
}

// ============================================================================
// bound
// ============================================================================

fn cmd_bound(graph: &Path) -> Result<u8, Failure> {
    let g = load_graph(graph)?;
    println!("lower_bound = {}", order_lower_bound(g.n()));
    if !g.is_admissible() {
        eprintln!("note: a component has fewer than 3 vertices; no palette of any size works");
    }
    Ok(0)
}

// ============================================================================
// export
// ============================================================================

fn cmd_export(
    graph: &Path,
    coloring: &Path,
    format: ExportFormat,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let (g, c) = load_colored(graph, coloring)?;
    let payload = match format {
        ExportFormat::Dot => io::to_dot(&g, &c),
        ExportFormat::Json => io::to_json(&g, &c),
    };
    emit(&payload, out, "")?;
    Ok(0)
}
