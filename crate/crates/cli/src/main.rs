use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use turaev_core::altdecomp::{decompose, Decomposition};
use turaev_core::bracket::{bracket_span, kauffman_bracket};
use turaev_core::classify::{classify, Classification};
use turaev_core::construct::realize_diagram;
use turaev_core::enumerate::{census, CensusClass, CensusFilter};
use turaev_core::graph::{AdGraph, ValidAdGraph};
use turaev_core::verify::verify;
use turaev_core::{parse_pd, PlanarDiagram};

#[derive(Parser)]
#[command(
    name = "turaev",
    version,
    about = "Turaev genus of link diagrams and decomposition graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Turaev genus of a PD diagram from its extreme states.
    #[command(name = "genus-d")]
    GenusD { file: PathBuf },
    /// Alternating decomposition of a PD diagram.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Turaev genus of a graph file.
    #[command(name = "genus-g")]
    GenusG { file: PathBuf },
    /// Genus, reducedness and family of a graph file.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write an adequate diagram realizing a graph file.
    Realize {
        file: PathBuf,
        #[arg(short = 'o', long = "output", value_name = "OUT.pd")]
        output: PathBuf,
    },
    /// Doubled-path classes of graphs of the given genus.
    Census {
        #[arg(long)]
        genus: usize,
        #[arg(long = "max-edges")]
        max_edges: usize,
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        json: bool,
    },
    /// Kauffman bracket of a PD diagram.
    Bracket { file: PathBuf },
    /// Randomized cross-check of every genus computation.
    Verify {
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// JSON output wrapper.
#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    schema: String,
    data: T,
}

#[derive(Serialize, Deserialize)]
struct CensusReport {
    genus: usize,
    filter: CensusFilter,
    classes: Vec<CensusClass>,
}

enum Failure {
    Input(String),
    Violation(String),
}

type Outcome = Result<(), Failure>;

fn input<E: std::fmt::Display>(path: &Path) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(input(path))
}

fn read_diagram(path: &Path) -> Result<PlanarDiagram, Failure> {
    parse_pd(&read(path)?).map_err(input(path))
}

fn read_graph(path: &Path) -> Result<ValidAdGraph, Failure> {
    let g = AdGraph::parse(&read(path)?).map_err(input(path))?;
    g.validate().map_err(input(path))
}

fn emit_json<T: Serialize>(out: &mut String, schema: &str, data: T) {
    let env = Envelope {
        schema: schema.to_string(),
        data,
    };
    out.push_str(&serde_json::to_string_pretty(&env).expect("serializable"));
    out.push('\n');
}

macro_rules! say {
    ($out:ident, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a string")
    };
}

fn run(cli: Cli, out: &mut String) -> Outcome {
    match cli.command {
        Command::GenusD { file } => {
            let d = read_diagram(&file)?;
            let g = d.turaev_genus().map_err(input(&file))?;
            let (sa, sb) = d.extreme_states();
            say!(
                out,
                "g_T = {g}, c = {}, sA+sB = {}, k = {}",
                d.crossing_count(),
                sa + sb,
                d.split_components()
            );
        }
        Command::Decompose { file, json } => {
            let d = read_diagram(&file)?;
            let dec: Decomposition = decompose(&d).map_err(input(&file))?;
            if json {
                emit_json(out, "turaev.decomposition.v1", &dec);
            } else {
                let g = dec.twisted_genus().map_err(input(&file))?;
                say!(
                    out,
                    "vertices = {}, edges = {}, r_alt = {}, g_T = {g}",
                    dec.graph.vertex_count(),
                    dec.graph.edge_count(),
                    dec.r_alt
                );
                out.push_str(&dec.graph.to_text());
            }
        }
        Command::GenusG { file } => {
            let g = read_graph(&file)?;
            say!(out, "g_T = {}", g.turaev_genus().map_err(input(&file))?);
        }
        Command::Classify { file, json } => {
            let g = read_graph(&file)?;
            let c: Classification = classify(&g).map_err(|e| Failure::Violation(e.to_string()))?;
            if json {
                emit_json(out, "turaev.classification.v1", &c);
            } else {
                say!(out, "g_T = {}", c.genus);
                say!(out, "reduced = {}", c.reduced);
                match (&c.shape, &c.family) {
                    (Some(s), Some(f)) => say!(out, "shape = {s:?}\nfamily = {f}"),
                    _ => say!(out, "shape = none"),
                }
            }
        }
        Command::Realize { file, output } => {
            let g = read_graph(&file)?;
            let d = realize_diagram(&g).map_err(input(&file))?;
            fs::write(&output, d.to_pd_string()).map_err(input(&output))?;
            say!(out, "wrote {} ({} crossings)", output.display(), d.crossing_count());
        }
        Command::Census {
            genus,
            max_edges,
            reduced,
            json,
        } => {
            let mut filter = CensusFilter::new(max_edges);
            filter.require_reduced = reduced;
            let classes = census(genus, &filter).map_err(|e| Failure::Input(e.to_string()))?;
            if json {
                emit_json(out, "turaev.census.v1", CensusReport { genus, filter, classes });
            } else {
                say!(
                    out,
                    "genus {genus}, max edges {max_edges}{}: {} classes",
                    if reduced { ", reduced" } else { "" },
                    classes.len()
                );
                say!(out, "{:>3} {:>6} {:>4} {:>4}  shape", "#", "count", "v", "e");
                for (i, c) in classes.iter().enumerate() {
                    let shape = c.shape.as_ref().map_or("-".to_string(), |s| format!("{s:?}"));
                    say!(
                        out,
                        "{:>3} {:>6} {:>4} {:>4}  {shape}",
                        i + 1,
                        c.count,
                        c.representative.vertex_count(),
                        c.representative.edge_count()
                    );
                }
            }
        }
        Command::Bracket { file } => {
            let d = read_diagram(&file)?;
            let b = kauffman_bracket(&d).map_err(input(&file))?;
            say!(out, "<D> = {b}");
            if let Ok(span) = bracket_span(&d) {
                say!(out, "span = {span}");
            }
        }
        Command::Verify { iters, seed } => match verify(iters, seed) {
            Ok(r) => {
                say!(
                    out,
                    "verify: {} iterations, seed {}, {} checks passed",
                    r.iterations,
                    r.seed,
                    r.checks
                );
                for (suite, n) in &r.suites {
                    say!(out, "  {suite}: {n}");
                }
            }
            Err(v) => {
                return Err(Failure::Violation(format!(
                    "property '{}' failed: {}\ncounterexample:\n{}",
                    v.property, v.detail, v.counterexample
                )))
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    // A closed pipe is not an error worth reporting.
    let _ = io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(3)
        }
    }
}
