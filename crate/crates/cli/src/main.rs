use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use popdyn_cli::config::{ExperimentConfig, ExperimentKind};
use popdyn_cli::error::CliError;
use popdyn_cli::experiment::run;
use popdyn_cli::output::emit_outputs;
use popdyn_core::dynamics::{EvolutionMode, Rounding};
use popdyn_core::{
    cayley_digraph, decorate, free_group_ball, make_cyclic, GeneratorSet, GroupElement,
};

#[derive(Parser)]
#[command(
    name = "popdyn",
    version,
    about = "Decorated population dynamics on Cayley graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stationary state of (S + S*)/2.
    Exp1(RunArgs),
    /// Stationary state of (S + S* + iS - iS*)/4.
    Exp2(RunArgs),
    /// exp(i t H) from a localized state.
    Exp3(RunArgs),
    /// Print a Cayley digraph in DOT format.
    Graph(GraphArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Chip,
}

#[derive(Clone, Copy, ValueEnum)]
enum RoundingArg {
    Floor,
    LargestRemainder,
}

#[derive(Args)]
struct RunArgs {
    /// JSON config; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Initial chips (peak stack for stationary runs, total for exp3).
    #[arg(long)]
    chips: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Use the hopping generator with amplitude t/m on both neighbors.
    #[arg(long)]
    paper_literal_d10: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum)]
    rounding: Option<RoundingArg>,
    /// Also write graph.dot.
    #[arg(long)]
    dot: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    /// Z4 x Z_N with generator S, optionally xi S.
    Decorated,
    /// Ball in the free group.
    FreeBall,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, value_enum, default_value = "decorated")]
    kind: GraphKind,
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Add xi S as a second color.
    #[arg(long)]
    with_xi: bool,
    #[arg(long, default_value_t = 2)]
    generators: usize,
    #[arg(long, default_value_t = 2)]
    radius: usize,
    /// Output file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn resolve(kind: ExperimentKind, a: &RunArgs) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &a.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::new(kind),
    };
    if cfg.experiment != kind {
        return Err(CliError::Config(format!(
            "config is for {}, subcommand runs {}",
            cfg.experiment.name(),
            kind.name()
        )));
    }
    if let Some(n) = a.n {
        cfg.group = popdyn_core::GroupSpec::Cyclic { n };
    }
    if let Some(mode) = a.mode {
        cfg.mode = match mode {
            ModeArg::Exact => EvolutionMode::Exact,
            ModeArg::Chip => EvolutionMode::Chip,
        };
    }
    if let Some(r) = a.rounding {
        cfg.rounding = match r {
            RoundingArg::Floor => Rounding::Floor,
            RoundingArg::LargestRemainder => Rounding::LargestRemainder,
        };
    }
    cfg.initial_chips = a.chips.unwrap_or(cfg.initial_chips);
    cfg.k = a.k.unwrap_or(cfg.k);
    cfg.steps = a.steps.unwrap_or(cfg.steps);
    cfg.t = a.t.unwrap_or(cfg.t);
    cfg.m = a.m.unwrap_or(cfg.m);
    cfg.paper_literal_d10 |= a.paper_literal_d10;
    cfg.validate()?;
    Ok(cfg)
}

fn run_command(kind: ExperimentKind, a: &RunArgs) -> Result<(), CliError> {
    let cfg = resolve(kind, a)?;
    let out = run(&cfg)?;
    emit_outputs(&cfg, &out, &a.out, a.dot)?;
    if let Some(dev) = out.max_ratio_deviation() {
        println!(
            "{}: expected epsilon {:.12}, max ratio deviation {dev:.3e}",
            kind.name(),
            out.expected_epsilon.unwrap_or_default()
        );
    }
    if let Some(f) = &out.fidelity {
        println!(
            "{}: relative L2 difference {:.4e} (truncation {:.4e})",
            kind.name(),
            f.relative_l2_difference,
            f.truncation_error
        );
    }
    if let Some(ledger) = out.trajectory.ledger() {
        println!("chips lost: {}", ledger.total_lost());
    }
    println!("wrote {}", a.out.display());
    Ok(())
}

fn graph_command(a: &GraphArgs) -> Result<(), CliError> {
    let dot = match a.kind {
        GraphKind::Decorated => {
            let base = make_cyclic(a.n)?;
            let dec = decorate(&base)?;
            let s = dec.compose(GroupElement(0), GroupElement(1 % a.n))?;
            let mut gens = vec![s];
            if a.with_xi {
                gens.push(dec.compose(GroupElement(1), GroupElement(1 % a.n))?);
            }
            let graph = cayley_digraph(&dec, &GeneratorSet::uniform(gens)?)?;
            graph.to_dot(|g| dec.label(g))
        }
        GraphKind::FreeBall => free_group_ball(a.generators, a.radius)?.to_dot(),
    };
    match &a.out {
        Some(path) => std::fs::write(path, dot).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{dot}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Exp1(a) => run_command(ExperimentKind::StationaryH1, a),
        Command::Exp2(a) => run_command(ExperimentKind::StationaryH2, a),
        Command::Exp3(a) => run_command(ExperimentKind::TimeEvolution, a),
        Command::Graph(a) => graph_command(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            ExitCode::FAILURE
        }
    }
}
