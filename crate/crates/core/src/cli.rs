// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Command-line front end. [`run`] takes its streams as arguments so tests
//! can drive it without spawning a process.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::choosability::{is_choosable_via_lstar, DEFAULT_SEARCH_BUDGET};
use crate::colouring::{Colour, ListAssignment};
use crate::config::RunConfig;
use crate::edge_solver::{list_size_threshold, solve_list_edge};
use crate::error::{Error, Result};
use crate::graph::{gen_gi, gen_partial_ktree, Graph};
use crate::io;
use crate::oracles::{
    oracle_choosable, oracle_edge_list_colour, oracle_total_colour, validate_edge_colouring,
    validate_total_colouring, OracleCaps,
};
use crate::total_solver::{solve_total, total_palette};
use crate::treewidth::{min_degree_decompose, validate_td, TreeDecomposition};

#[derive(Debug, Parser)]
#[command(
    name = "twcolour",
    version,
    about = "Edge, list and total colouring of graphs of bounded treewidth"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a min-degree tree decomposition of a graph.
    Decompose {
        /// Graph in .gr format; stdin if omitted.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Check a tree decomposition against a graph.
    ValidateTd {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        td: PathBuf,
    },
    /// List-edge-colour a graph.
    ColourEdges(ColourEdges),
    /// Totally colour a graph with max(Δ, 3k-3, 2k)+1 colours.
    ColourTotal {
        #[command(flatten)]
        input: SolverInput,
        /// Write one line per augmentation to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Decide whether the W side of a bipartite graph is choosable.
    CheckChoosable {
        /// Bipartite graph in `p bip` format; stdin if omitted.
        #[arg(long)]
        bipartite: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(Gen),
    /// Exhaustive solvers for small instances.
    #[command(subcommand)]
    Oracle(Oracle),
    /// Validate an edge colouring, optionally against lists.
    VerifyEdgeColouring {
        #[arg(long)]
        graph: PathBuf,
        /// Colouring with `e u v c` lines; stdin if omitted.
        #[arg(long)]
        colouring: Option<PathBuf>,
        #[arg(long)]
        lists: Option<PathBuf>,
    },
    /// Validate a total colouring against a palette.
    VerifyTotalColouring {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        colouring: Option<PathBuf>,
        #[command(flatten)]
        palette: PaletteArg,
    },
}

#[derive(Debug, Args)]
struct SolverInput {
    /// Graph in .gr format; stdin if omitted.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Tree decomposition; a min-degree decomposition is used if omitted.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Width bound; defaults to the width of the decomposition.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, Args)]
struct ColourEdges {
    #[command(flatten)]
    input: SolverInput,
    /// Lists in `u v : c...` format.
    #[arg(
        long,
        conflicts_with = "uniform_lists",
        required_unless_present = "uniform_lists"
    )]
    lists: Option<PathBuf>,
    /// Draw every list uniformly from {1..2*SIZE}.
    #[arg(long, value_name = "SIZE")]
    uniform_lists: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replace the default list-size threshold.
    #[arg(long)]
    threshold: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct PaletteArg {
    #[arg(long)]
    palette: Option<Colour>,
    /// Use the palette the total solver would use for this width.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Gen {
    /// The bipartite family G_i in `p bip` format.
    Gi {
        #[arg(long)]
        i: usize,
    },
    /// A random partial k-tree in .gr format.
    PartialKtree {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Probability of keeping each edge of the k-tree.
        #[arg(long, default_value_t = 1.0)]
        keep: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the generating decomposition here.
        #[arg(long)]
        td_out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum Oracle {
    /// Exact list-edge-colouring search.
    EdgeLists {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        lists: PathBuf,
        #[arg(long, default_value_t = OracleCaps::default().edge_list_edges)]
        cap: usize,
    },
    /// Exact total-colouring search.
    Total {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        palette: Colour,
        #[arg(long, default_value_t = OracleCaps::default().total_elements)]
        cap: usize,
    },
    /// Choosability of W by enumerating every list assignment.
    Choosable {
        #[arg(long)]
        bipartite: Option<PathBuf>,
        /// Colours are drawn from {1..UNIVERSE}.
        #[arg(long, default_value_t = OracleCaps::default().choosable_universe)]
        universe: usize,
        #[arg(long, default_value_t = OracleCaps::default().choosable_edges)]
        cap: usize,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: Option<&Path>) -> Result<String> {
        match path {
            Some(p) if p != Path::new("-") => fs::read_to_string(p).map_err(|e| {
                Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("{}: {e}", p.display()),
                ))
            }),
            _ => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }

    fn print(&mut self, s: &str) -> Result<()> {
        self.stdout.write_all(s.as_bytes())?;
        Ok(())
    }
}

fn write_file(path: &Path, s: &str) -> Result<()> {
    fs::write(path, s).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 success, 1 malformed input, 2 unmet precondition or failed
/// verification, 3 internal error.
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn load_solver_input(
    io: &mut Io<'_>,
    input: &SolverInput,
) -> Result<(Graph, TreeDecomposition, usize)> {
    let g = io::parse_gr(&io.read(input.graph.as_deref())?)?;
    let td = match &input.td {
        Some(p) => io::parse_td(&io.read(Some(p))?)?,
        None => min_degree_decompose(&g),
    };
    let k = input.k.unwrap_or(td.width()).max(1);
    Ok((g, td, k))
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<i32> {
    match command {
        Command::Decompose { graph } => {
            let g = io::parse_gr(&io.read(graph.as_deref())?)?;
            io.print(&io::write_td(&min_degree_decompose(&g), g.n()))?;
        }
        Command::ValidateTd { graph, td } => {
            let g = io::parse_gr(&io.read(graph.as_deref())?)?;
            let td = io::parse_td(&io.read(Some(&td))?)?;
            let bad = validate_td(&g, &td);
            if !bad.is_empty() {
                for v in &bad {
                    io.print(&format!("{v}\n"))?;
                }
                return Ok(2);
            }
            io.print(&format!("valid, width {}\n", td.width()))?;
        }
        Command::ColourEdges(args) => return colour_edges(args, io),
        Command::ColourTotal { input, trace } => {
            let (g, td, k) = load_solver_input(io, &input)?;
            let solution = solve_total(&g, &td, k)?;
            if let Some(path) = trace {
                let text: String = solution.traces.iter().map(|t| format!("{t}\n")).collect();
                write_file(&path, &text)?;
            }
            io.print(&io::write_total_colouring(&solution.colouring))?;
        }
        Command::CheckChoosable { bipartite, budget } => {
            let h = io::parse_bipartite(&io.read(bipartite.as_deref())?)?;
            let ok = is_choosable_via_lstar(&h, budget)?;
            io.print(&format!("choosable: {ok}\n"))?;
        }
        Command::Gen(Gen::Gi { i }) => io.print(&io::write_bipartite(&gen_gi(i)?))?,
        Command::Gen(Gen::PartialKtree {
            k,
            n,
            keep,
            seed,
            td_out,
        }) => {
            let (g, td) = gen_partial_ktree(k, n, keep, seed)?;
            if let Some(path) = td_out {
                write_file(&path, &io::write_td(&td, g.n()))?;
            }
            io.print(&io::write_gr(&g))?;
        }
        Command::Oracle(Oracle::EdgeLists { graph, lists, cap }) => {
            let g = io::parse_gr(&io.read(graph.as_deref())?)?;
            let lists = io::parse_lists(&io.read(Some(&lists))?, &g)?;
            match oracle_edge_list_colour(&g, &lists, cap)? {
                Some(c) => io.print(&io::write_edge_colouring(&c))?,
                None => io.print("infeasible\n")?,
            }
        }
        Command::Oracle(Oracle::Total {
            graph,
            palette,
            cap,
        }) => {
            let g = io::parse_gr(&io.read(graph.as_deref())?)?;
            match oracle_total_colour(&g, palette, cap)? {
                Some(t) => io.print(&io::write_total_colouring(&t))?,
                None => io.print("infeasible\n")?,
            }
        }
        Command::Oracle(Oracle::Choosable {
            bipartite,
            universe,
            cap,
        }) => {
            let h = io::parse_bipartite(&io.read(bipartite.as_deref())?)?;
            let caps = OracleCaps {
                choosable_edges: cap,
                choosable_universe: universe,
                ..OracleCaps::default()
            };
            let colours: Vec<Colour> = (1..=universe as Colour).collect();
            let ok = oracle_choosable(&h, &colours, &caps)?;
            io.print(&format!("choosable: {ok}\n"))?;
        }
        Command::VerifyEdgeColouring {
            graph,
            colouring,
            lists,
        } => {
            let g = io::parse_gr(&io.read(Some(&graph))?)?;
            let col = io::parse_edge_colouring(&io.read(colouring.as_deref())?, &g)?;
            let lists = match lists {
                Some(p) => Some(io::parse_lists(&io.read(Some(&p))?, &g)?),
                None => None,
            };
            let report = validate_edge_colouring(&g, &col, lists.as_ref());
            return report_verdict(io, &report.to_string(), report.is_empty());
        }
        Command::VerifyTotalColouring {
            graph,
            colouring,
            palette,
        } => {
            let g = io::parse_gr(&io.read(Some(&graph))?)?;
            let palette = match (palette.palette, palette.k) {
                (Some(p), _) => p,
                (None, Some(k)) => total_palette(&g, k),
                (None, None) => unreachable!("clap requires one of --palette, --k"),
            };
            let t = io::parse_total_colouring(&io.read(colouring.as_deref())?, &g, palette)?;
            let report = validate_total_colouring(&g, &t, palette);
            return report_verdict(io, &report.to_string(), report.is_empty());
        }
    }
    Ok(0)
}

fn report_verdict(io: &mut Io<'_>, report: &str, ok: bool) -> Result<i32> {
    if ok {
        io.print("ok\n")?;
        return Ok(0);
    }
    io.print(report)?;
    if !report.ends_with('\n') {
        io.print("\n")?;
    }
    Ok(2)
}

fn colour_edges(args: ColourEdges, io: &mut Io<'_>) -> Result<i32> {
    let (g, td, k) = load_solver_input(io, &args.input)?;
    let cfg = RunConfig {
        seed: args.seed,
        search_budget: args.budget,
        threshold_override: args.threshold,
        ..RunConfig::default()
    };
    cfg.validate()?;
    let lists = match (&args.lists, args.uniform_lists) {
        (Some(p), _) => io::parse_lists(&io.read(Some(p))?, &g)?,
        (None, Some(size)) => ListAssignment::uniform_random(&g, size, cfg.seed),
        (None, None) => unreachable!("clap requires one of --lists, --uniform-lists"),
    };
    let need = cfg
        .threshold_override
        .unwrap_or_else(|| list_size_threshold(k))
        .max(g.max_degree());
    if let Some(e) = g.edges().find(|&e| lists.size(e) < need) {
        return Err(Error::pre(format!(
            "edge {} {} has a list of {} colours, need at least {need}",
            e.u + 1,
            e.v + 1,
            lists.size(e)
        )));
    }
    let col = solve_list_edge(&g, &td, &lists, k, &cfg)?;
    io.print(&io::write_edge_colouring(&col))?;
    Ok(0)
}
