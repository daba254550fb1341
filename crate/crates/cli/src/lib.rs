//! The `netrecover` command line: validation, recoverability checks, forward solves, recovery
//! against a simulated hidden network, local rewrites, medial SVG output and el2n probes.
//!
//! Exit codes are 0 on success, 1 on domain errors and 2 on usage errors.

mod svg;

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use electrical_lie::{injectivity_probe, verify_relations, CoxeterWord, Mode};
use forward::{make_oracle, response_matrix, solve_dirichlet_with, solve_neumann_with, DirichletOptions, NeumannOptions};
use medial::{build_medial, check_semicritical};
use network_core::{validate_network, BoundaryData, Network};
use recovery::{recover_network, ApexMode, RecoveryOptions, TriangleOrder};
use serde_json::{json, Value};
use thiserror::Error;

pub use svg::{medial_svg, tutte_layout};

#[derive(Debug, Parser)]
#[command(name = "netrecover", version, about = "Circular planar electrical networks: forward solves, recoverability and recovery")]
pub struct Cli {
    /// Solver and reporting tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print JSON instead of text where both are available.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the embedding and conductances of a network file.
    Validate { file: PathBuf },
    /// Medial graph statistics, optionally drawn as SVG.
    Medial {
        file: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Decide recoverability from the medial graph.
    Check { file: PathBuf },
    /// Response matrix of a linear network.
    Response { file: PathBuf },
    /// Solve for interior voltages given boundary voltages.
    Dirichlet {
        file: PathBuf,
        #[arg(long)]
        boundary: PathBuf,
    },
    /// Solve for voltages given boundary currents.
    Neumann {
        file: PathBuf,
        #[arg(long)]
        boundary: PathBuf,
    },
    /// Recover the conductances of SHAPE from an oracle simulating HIDDEN.
    Recover {
        shape: PathBuf,
        #[arg(long)]
        hidden: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        probes: Vec<f64>,
        /// Recover slopes only.
        #[arg(long)]
        linear: bool,
        /// Interpolate recovered samples instead of re-querying the oracle.
        #[arg(long, conflicts_with = "linear")]
        sampled: bool,
        #[arg(long, value_enum, default_value_t = Order::First)]
        order: Order,
    },
    /// Apply a local rewrite.
    Transform {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        /// Vertex or edge ids the rewrite acts on, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Electrical linear group checks.
    El2n {
        #[command(subcommand)]
        command: El2nCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum El2nCommand {
    /// Residuals of the defining relations.
    Verify {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Sample for collisions of a factorization map.
    Probe {
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<usize>,
        #[arg(long, value_enum, default_value_t = ProbeMode::Matrix)]
        mode: ProbeMode,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Group rank; defaults to the smallest that fits the word.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    First,
    Last,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProbeMode {
    Matrix,
    NonlinearU,
    NonlinearX,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    /// Y to Δ at an interior degree-3 vertex: `--at hub`.
    Ydelta,
    /// Δ to Y on a triangular face: `--at a,b,c`.
    Deltay,
    /// Merge two edges at a degree-2 interior vertex: `--at v`.
    Series,
    /// Merge two parallel edges: `--at e1,e2`.
    Parallel,
    /// Drop a self loop: `--at e`.
    SelfLoop,
    /// Drop an isolated interior vertex: `--at v`.
    Isolated,
    /// K4 with boundary vertices v1..v4 to its planar gadget: `--at v1,v2,v3,v4`.
    K4ToPlanar,
    /// Planar gadget to K4: `--at hub,v1,v2,v3,v4`.
    PlanarToK4,
    /// Eliminate a degree-4 interior vertex: `--at hub`.
    StarMesh,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn domain(e: impl Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Parse `args` (program name first) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| domain(format!("{}: {e}", path.display())))
}

fn read_network(path: &Path) -> Result<Network, CliError> {
    serde_json::from_value(read_json(path)?).map_err(|e| domain(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| domain(format!("{}: {e}", path.display())))
}

fn print(out: &mut dyn Write, text: impl Display) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(domain)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

/// Run a parsed command; returns the exit code on success.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    if !(cli.tolerance > 0.0 && cli.tolerance.is_finite()) {
        return Err(CliError::Usage(format!("--tolerance must be positive, got {}", cli.tolerance)));
    }
    match &cli.command {
        Command::Validate { file } => {
            let report = validate_network(&read_network(file)?);
            if cli.json {
                print(out, pretty(&json!({ "valid": report.is_ok(), "violations": report.violations })))?;
            } else {
                write!(out, "{report}").map_err(domain)?;
            }
            Ok(if report.is_ok() { 0 } else { 1 })
        }
        Command::Medial { file, svg } => {
            let net = read_network(file)?;
            let m = build_medial(&net).map_err(domain)?;
            let stats = m.stats();
            if cli.json {
                print(out, pretty(&serde_json::to_value(&stats).expect("stats serialize")))?;
            } else {
                write!(out, "{stats}").map_err(domain)?;
            }
            if let Some(path) = svg {
                write_file(path, &medial_svg(&net, &m))?;
            }
            Ok(0)
        }
        Command::Check { file } => {
            let m = build_medial(&read_network(file)?).map_err(domain)?;
            let verdict = check_semicritical(&m);
            if cli.json {
                print(out, pretty(&json!({ "recoverable": verdict.is_ok(), "witness": verdict.as_ref().err() })))?;
            } else {
                match &verdict {
                    Ok(()) => print(out, "RECOVERABLE")?,
                    Err(v) => print(out, format!("NOT RECOVERABLE, {:?}: {v}", v.kind))?,
                }
            }
            Ok(0)
        }
        Command::Response { file } => {
            let r = response_matrix(&read_network(file)?).map_err(domain)?;
            print(out, pretty(&json!(r.rows())))?;
            Ok(0)
        }
        Command::Dirichlet { file, boundary } => {
            let net = read_network(file)?;
            let data = BoundaryData::from_json(&read_json(boundary)?).map_err(domain)?;
            let opts = DirichletOptions { tolerance: cli.tolerance, ..DirichletOptions::default() };
            let s = solve_dirichlet_with(&net, &data, &opts).map_err(domain)?;
            let currents: serde_json::Map<String, Value> = net.boundary.iter().cloned().zip(s.boundary_currents.iter().map(|&c| json!(c))).collect();
            print(out, pretty(&json!({ "voltages": s.voltages, "boundary_currents": currents, "edge_currents": s.edge_currents, "steps": s.state.steps })))?;
            Ok(0)
        }
        Command::Neumann { file, boundary } => {
            let net = read_network(file)?;
            let data = BoundaryData::from_json(&read_json(boundary)?).map_err(domain)?;
            let opts = NeumannOptions { tolerance: cli.tolerance, ..NeumannOptions::default() };
            let s = solve_neumann_with(&net, &data, &opts).map_err(domain)?;
            let volts: serde_json::Map<String, Value> = net.boundary.iter().cloned().zip(s.boundary_voltages.iter().map(|&c| json!(c))).collect();
            print(out, pretty(&json!({ "voltages": s.voltages, "boundary_voltages": volts, "edge_currents": s.edge_currents, "cycle_residual": s.cycle_residual })))?;
            Ok(0)
        }
        Command::Recover { shape, hidden, probes, linear, sampled, order } => {
            let shape = read_network(shape)?.shape();
            let hidden = read_network(hidden)?;
            let oracle = make_oracle(&hidden, build_medial(&hidden).map_err(domain)?).map_err(domain)?;
            let mut opts = if *linear { RecoveryOptions::linear(probes.clone()) } else { RecoveryOptions::pointwise(probes.clone()) };
            if *sampled {
                opts.mode = ApexMode::Sampled;
            }
            opts.order = match order {
                Order::First => TriangleOrder::First,
                Order::Last => TriangleOrder::Last,
            };
            let r = recover_network(&shape, &oracle, &opts).map_err(domain)?;
            let deviation = r.max_relative_error(&hidden);
            let report = json!({
                "result": r.to_json(),
                "max_deviation": deviation,
                "within_tolerance": deviation.is_some_and(|d| d <= cli.tolerance),
                "oracle_queries": oracle.queries(),
            });
            print(out, pretty(&report))?;
            Ok(0)
        }
        Command::Transform { file, op, at, output } => {
            let net = read_network(file)?;
            let (new, record) = transform(&net, *op, at)?;
            let net_json = serde_json::to_value(&new).expect("networks serialize");
            let record = serde_json::to_value(&record).expect("records serialize");
            match output {
                Some(path) => {
                    write_file(path, &format!("{}\n", pretty(&net_json)))?;
                    print(out, pretty(&record))?;
                }
                None => print(out, pretty(&json!({ "network": net_json, "record": record })))?,
            }
            Ok(0)
        }
        Command::El2n { command } => el2n(command, cli, out),
    }
}

fn arity<'a, const N: usize>(op: Op, at: &'a [String]) -> Result<[&'a str; N], CliError> {
    let ids: Vec<&str> = at.iter().map(String::as_str).collect();
    ids.try_into().map_err(|_| CliError::Usage(format!("--op {op:?} takes {N} id(s) in --at, got {}", at.len())))
}

fn transform(net: &Network, op: Op, at: &[String]) -> Result<(Network, transforms::TransformRecord), CliError> {
    let done = match op {
        Op::Ydelta => transforms::wye_delta(net, arity::<1>(op, at)?[0]),
        Op::Deltay => transforms::delta_wye(net, arity::<3>(op, at)?),
        Op::Series => transforms::series_reduce(net, arity::<1>(op, at)?[0]),
        Op::Parallel => {
            let [a, b] = arity::<2>(op, at)?;
            transforms::parallel_reduce(net, a, b)
        }
        Op::SelfLoop => transforms::remove_self_loop(net, arity::<1>(op, at)?[0]),
        Op::Isolated => transforms::remove_isolated(net, arity::<1>(op, at)?[0]),
        Op::K4ToPlanar => transforms::k4_to_planar(net, arity::<4>(op, at)?),
        Op::PlanarToK4 => {
            let [hub, a, b, c, d] = arity::<5>(op, at)?;
            transforms::planar_to_k4(net, hub, [a, b, c, d])
        }
        Op::StarMesh => transforms::star_mesh_4(net, arity::<1>(op, at)?[0]),
    };
    done.map_err(domain)
}

fn el2n(command: &El2nCommand, cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        El2nCommand::Verify { n, samples } => {
            if *n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let r = verify_relations(*n, *samples, cli.seed);
            if cli.json {
                print(out, pretty(&serde_json::to_value(&r).expect("reports serialize")))?;
            } else {
                print(out, format!("n = {}, samples = {}, seed = {}", r.n, r.samples, cli.seed))?;
                for (name, v) in [
                    ("u additive", r.additive),
                    ("u commuting", r.commuting),
                    ("u braid", r.braid),
                    ("x additive", r.x_additive),
                    ("x commuting", r.x_commuting),
                    ("x braid", r.x_braid),
                    ("symplectic", r.symplectic),
                ] {
                    print(out, format!("{name:<12} {v:.3e}"))?;
                }
                print(out, if r.passes { "PASS" } else { "FAIL" })?;
            }
            Ok(if r.passes { 0 } else { 1 })
        }
        El2nCommand::Probe { word, mode, trials, n } => {
            let w = match n {
                Some(n) => CoxeterWord::new(*n, word.clone()),
                None => CoxeterWord::infer(word.clone()),
            }
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let mode = match mode {
                ProbeMode::Matrix => Mode::Matrix,
                ProbeMode::NonlinearU => Mode::NonlinearU,
                ProbeMode::NonlinearX => Mode::NonlinearX,
            };
            let r = injectivity_probe(&w, mode, *trials, cli.seed).map_err(domain)?;
            if cli.json {
                print(out, pretty(&serde_json::to_value(&r).expect("reports serialize")))?;
            } else {
                let letters: Vec<String> = w.letters.iter().map(ToString::to_string).collect();
                print(out, format!("word {} in S_{} (n = {}), reduced: {}", letters.join(","), 2 * w.n + 1, w.n, if r.reduced { "yes" } else { "no" }))?;
                print(out, format!("mode {mode:?}, {} trials, seed {}", r.trials, cli.seed))?;
                print(out, format!("smallest distance between distinct samples: {:.3e}", r.min_distance))?;
                match &r.collision {
                    None => print(out, "collision: none found (sampling probe, not a proof)")?,
                    Some(c) => print(out, format!("collision: distance {:.3e}\n  {}\n  {}", c.distance, json!(c.first), json!(c.second)))?,
                }
            }
            Ok(0)
        }
    }
}
