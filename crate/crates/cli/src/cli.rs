//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use mwc_core::density::{self, ScanMethod, ThresholdCdf};
use mwc_core::graph::{cut_cost, WeightedGraph};
use mwc_core::instances::{generate_gn, verify_gn};
use mwc_core::relaxation::{align_embedding, build_embedding_lp, solve_relaxation, Embedding};
use mwc_core::search::{build_discrete_lp_with, build_mesh_lp, solve_discrete_search_with, solve_mesh_lp_with, MeshSources};
use mwc_core::{Error, Rational, RngState, Scalar};

use crate::formats::{self, FormatError, Token};
use crate::parallel::{par_density_scan, par_round, thread_count};

const FORMATS: &str = "\
File formats:
  graph      `mwc-graph 1`, `k <int>`, `nodes <int>`, `terminals <id>...`,
             then `edge <u> <v> <weight>` lines; weights are decimals or p/q
  embedding  `mwc-embedding 1`, `k <int>`, then `point <node> <c_1> ... <c_k>`
  labeling   `mwc-labeling 1`, `k <int>`, then `label <node> <terminal>`
  scheme     JSON tagged by \"variant\": ckr {k}, independent_uniform {k,
             use_last_slice}, ball_corner {ball_prob, ray_variant},
             icut_corner {k, corner_at, icut_prob, use_last_slice},
             discrete {table | distribution}, mixture {components: [{weight,
             scheme}]}
  table      JSON {\"k\", \"N\", \"bound\", \"entries\": [{\"q\": [...], \"p\"}]}
  density    CSV alignment,x0..x{k-1},mean,stderr,method (segment midpoints)
  lp         CPLEX LP text
Lines starting with `#` are comments in the line formats.

Exit codes: 0 success, 1 invalid input, 2 solver failure.
MWC_THREADS caps worker threads.";

#[derive(Parser, Debug)]
#[command(
    name = "mwc",
    version,
    about = "Simplex relaxation of minimum multiway cut: solve, round and analyze cutting schemes",
    after_help = FORMATS
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the simplex-embedding LP of a graph
    #[command(after_help = "Writes the optimal embedding; reports `volume=<v>`.\n\n".to_owned() + FORMATS)]
    Relax {
        /// Graph file
        #[arg(long)]
        graph: PathBuf,
        /// Embedding output (default: stdout, report on stderr)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the LP in CPLEX LP format
        #[arg(long)]
        lp_out: Option<PathBuf>,
    },
    /// Round an embedding to a multiway cut with a cutting scheme
    #[command(after_help = "Writes the best labeling; reports `cost=<c> volume=<v>`.\n\n".to_owned() + FORMATS)]
    Round {
        /// Graph file
        #[arg(long)]
        graph: PathBuf,
        /// Embedding file
        #[arg(long)]
        embedding: PathBuf,
        /// Scheme config (JSON)
        #[arg(long)]
        scheme: PathBuf,
        /// Rounding repetitions; the cheapest cut wins
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Random seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Labeling output (default: stdout, report on stderr)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan the cutting density of a scheme over a barycentric grid
    #[command(
        after_help = "Writes one CSV row per scan segment; reports `max_density=<d> stderr=<s> at=<i-j>@<x>`.\n\n"
            .to_owned()
            + FORMATS
    )]
    Density {
        /// Scheme config (JSON)
        #[arg(long)]
        scheme: PathBuf,
        /// Number of terminals
        #[arg(long)]
        k: usize,
        /// Grid resolution
        #[arg(long, default_value_t = 24)]
        grid: usize,
        /// Segment length, at most 1/(4 grid)
        #[arg(long, default_value_t = 0.001)]
        eps: f64,
        /// Monte-Carlo trials per segment
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        /// Evaluator: exact formulas or Monte-Carlo sampling
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Random seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output (default: stdout, report on stderr)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the discrete-sparc search LP
    #[command(after_help = "Writes the distribution table; reports `bound=<b> entries=<n>`.\n\n".to_owned() + FORMATS)]
    Search {
        /// Number of terminals
        #[arg(long)]
        k: usize,
        /// Threshold grid N
        #[arg(long)]
        grid_n: usize,
        /// Only allow sparcs whose slices all lie within C/N of their
        /// terminals, or all farther away
        #[arg(long, value_name = "C")]
        corner_range: Option<usize>,
        /// Table output (default: stdout, report on stderr)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the LP in CPLEX LP format
        #[arg(long)]
        lp_out: Option<PathBuf>,
    },
    /// Solve the mesh LP for an integrality-gap certificate
    #[command(
        after_help = "Writes a JSON certificate {\"M\", \"W\", \"gap\", \"weights\": [[u, v, w]]}; \
reports `W=<w> gap=<g> mincut=<c>`.\n\n"
            .to_owned()
            + FORMATS
    )]
    MeshLp {
        /// Mesh subdivision M
        #[arg(long)]
        m: usize,
        /// Dual distance sources
        #[arg(long, value_enum, default_value_t = SourcesArg::Auxiliary)]
        sources: SourcesArg,
        /// Certificate output (default: stdout, report on stderr)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the LP in CPLEX LP format
        #[arg(long)]
        lp_out: Option<PathBuf>,
    },
    /// Build and verify the k = 3 lower-bound instance G_N
    #[command(after_help = "Reports `volume=<v> mincut=<c> ratio=<r>`.\n\n".to_owned() + FORMATS)]
    Lowerbound {
        /// Instance size N
        #[arg(long)]
        n: usize,
        /// Graph output
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Embedding output
        #[arg(long)]
        embedding_out: Option<PathBuf>,
    },
    /// Evaluate an analytic density bound at (x1, x2)
    #[command(
        after_help = "Thresholds are uniform on (0, corner]. c_k and d_bound need --k; c3 needs 1 - x1 - x2 >= corner.\n\n\
Exit codes: 0 success, 1 invalid input, 2 solver failure."
    )]
    Eval {
        /// Function to evaluate
        #[arg(long = "fn", value_enum)]
        func: FnArg,
        /// First aligned coordinate
        #[arg(long)]
        x1: f64,
        /// Second aligned coordinate
        #[arg(long)]
        x2: f64,
        /// Number of terminals
        #[arg(long)]
        k: Option<usize>,
        /// Threshold support end (decimal or p/q)
        #[arg(long, default_value = "6/11")]
        corner: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Auto,
    Exact,
    Mc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourcesArg {
    Auxiliary,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FnArg {
    #[value(name = "c_k")]
    CK,
    #[value(name = "c_inf")]
    CInf,
    #[value(name = "c3")]
    C3,
    #[value(name = "d_bound")]
    DBound,
}

/// Failure of a subcommand, by exit code.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Solver(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Solver(_) => 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LpFailed(_) => Failure::Solver(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Invalid(inner) => inner.into(),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

/// Where the main artifact and the one-line report go.
struct Sink<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Sink<'_> {
    fn emit(&mut self, artifact: &str, path: Option<&Path>, report: &str) -> Result<(), Failure> {
        let io = |e: std::io::Error| Failure::Invalid(e.to_string());
        match path {
            Some(p) => {
                write(p, artifact)?;
                writeln!(self.out, "{report}").map_err(io)
            }
            None => {
                self.out.write_all(artifact.as_bytes()).map_err(io)?;
                writeln!(self.err, "{report}").map_err(io)
            }
        }
    }

    fn line(&mut self, report: &str) -> Result<(), Failure> {
        writeln!(self.out, "{report}").map_err(|e| Failure::Invalid(e.to_string()))
    }
}

fn load_graph(path: &Path) -> Result<WeightedGraph<f64>, Failure> {
    Ok(formats::parse_graph(&read(path)?)?)
}

fn execute(cmd: Command, sink: &mut Sink<'_>) -> Result<(), Failure> {
    let threads = thread_count();
    match cmd {
        Command::Relax { graph, out, lp_out } => {
            let g = load_graph(&graph)?;
            if let Some(p) = lp_out {
                write(&p, &build_embedding_lp(&g).to_cplex_lp("relaxation"))?;
            }
            let (emb, vol) = solve_relaxation(&g)?;
            sink.emit(&formats::write_embedding(&emb), out.as_deref(), &format!("volume={vol}"))
        }
        Command::Round {
            graph,
            embedding,
            scheme,
            trials,
            seed,
            out,
        } => {
            let g = load_graph(&graph)?;
            let emb: Embedding<f64> = formats::parse_embedding(&read(&embedding)?, &g)?;
            let cfg = formats::parse_scheme(&read(&scheme)?, scheme.parent())?;
            if trials == 0 {
                return Err(Failure::Invalid("--trials must be positive".into()));
            }
            let vol = mwc_core::relaxation::volume(&g, &emb)?;
            let inst = align_embedding(&g, &emb)?;
            let (lab, _) = par_round(&cfg, &inst, &RngState::new(seed, 0), trials, threads)?;
            let cost = cut_cost(&g, &lab)?;
            sink.emit(
                &formats::write_labeling(g.k(), &lab),
                out.as_deref(),
                &format!("cost={cost} volume={vol}"),
            )
        }
        Command::Density {
            scheme,
            k,
            grid,
            eps,
            trials,
            method,
            seed,
            out,
        } => {
            let cfg = formats::parse_scheme(&read(&scheme)?, scheme.parent())?;
            let method = match method {
                MethodArg::Auto => ScanMethod::Auto,
                MethodArg::Exact => ScanMethod::Exact,
                MethodArg::Mc => ScanMethod::MonteCarlo,
            };
            let r = par_density_scan(&cfg, k, grid, eps, trials, method, &RngState::new(seed, 0), threads)?;
            let top = r.argmax_entry();
            let at: Vec<String> = top.segment.midpoint().coords().iter().map(|x| format!("{x}")).collect();
            let report = format!(
                "max_density={} stderr={} at={}-{}@{}",
                r.max_density,
                top.stderr,
                top.alignment.i(),
                top.alignment.j(),
                at.join(",")
            );
            sink.emit(&formats::write_density_csv(&r), out.as_deref(), &report)
        }
        Command::Search { k, grid_n, corner_range, out, lp_out } => {
            if let Some(p) = lp_out {
                write(&p, &build_discrete_lp_with(k, grid_n, corner_range)?.to_cplex_lp("discrete-search"))?;
            }
            let d = solve_discrete_search_with(k, grid_n, corner_range)?;
            let report = format!("bound={} entries={}", d.bound(), d.entries().len());
            sink.emit(&formats::write_distribution(&d), out.as_deref(), &report)
        }
        Command::MeshLp { m, sources, out, lp_out } => {
            let sources = match sources {
                SourcesArg::Auxiliary => MeshSources::Auxiliary,
                SourcesArg::All => MeshSources::All,
            };
            if let Some(p) = lp_out {
                write(&p, &build_mesh_lp(m, sources)?.0.to_cplex_lp("mesh"))?;
            }
            let (cert, _) = solve_mesh_lp_with(m, sources)?;
            let report = format!("W={} gap={} mincut={}", cert.w_total, cert.gap_lower_bound, cert.min_cut()?);
            sink.emit(&formats::write_certificate(&cert)?, out.as_deref(), &report)
        }
        Command::Lowerbound {
            n,
            graph_out,
            embedding_out,
        } => {
            let inst = generate_gn(n)?;
            let rep = verify_gn(n)?;
            if let Some(p) = graph_out {
                write(&p, &formats::write_graph(&inst.graph))?;
            }
            if let Some(p) = embedding_out {
                write(&p, &formats::write_embedding(&inst.embedding))?;
            }
            let mut line = format!(
                "volume={} mincut={} ratio={:.6}",
                rep.volume.write_token(),
                rep.min_cut.write_token(),
                rep.ratio.to_f64()
            );
            if let Some(b) = rep.brute_force {
                line += &format!(" bruteforce={}", b.write_token());
            }
            sink.line(&line)
        }
        Command::Eval { func, x1, x2, k, corner } => {
            let c = formats::parse_rational(&corner)
                .map(|r: Rational| r.to_f64())
                .or_else(|| corner.parse().ok())
                .ok_or_else(|| Failure::Invalid(format!("cannot read --corner {corner:?}")))?;
            let f = ThresholdCdf::uniform_to(c)?;
            let need_k = || k.ok_or_else(|| Failure::Invalid("this function needs --k".into()));
            let v = match func {
                FnArg::CK => density::c_k(x1, x2, need_k()?, &f)?,
                FnArg::CInf => {
                    if !(x1 >= 0.0 && x2 >= 0.0 && x1 + x2 <= 1.0) {
                        return Err(Failure::Invalid(format!("({x1}, {x2}) is outside the simplex")));
                    }
                    density::c_inf(x1, x2, &f)
                }
                FnArg::C3 => density::c3(x1, x2, &f)?,
                FnArg::DBound => density::d_bound(x1, x2, need_k()?, &f)?,
            };
            sink.line(&format!("{v}"))
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let mut sink = Sink { out, err };
    match execute(cli.command, &mut sink) {
        Ok(()) => 0,
        Err(f) => {
            let (Failure::Invalid(msg) | Failure::Solver(msg)) = &f;
            let _ = writeln!(sink.err, "error: {msg}");
            f.code()
        }
    }
}
