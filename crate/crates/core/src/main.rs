use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commbandit::config::parse_float_list;
use commbandit::output::{emit_results, to_csv_string, to_json_string};
use commbandit::{
    regret_vs_turns, sweep_alpha, AlphaSpec, Error, Execution, ExperimentConfig, OutputFormat,
    PolicyKind,
};

#[derive(Parser)]
#[command(
    name = "commbandit",
    version,
    about = "Multi-player bandit simulator with collisions and random-graph communication"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Final-turn regret for each alpha.
    SweepAlpha(Overrides),
    /// Regret at turn checkpoints.
    RegretCurve(Overrides),
}

#[derive(Args)]
struct Overrides {
    /// TOML experiment configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// ucb1, egreedy, thompson, asympopt or random.
    #[arg(long)]
    algorithm: Option<PolicyKind>,
    /// Comma-separated connectivities.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    turns: Option<usize>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated arm means.
    #[arg(long)]
    means: Option<String>,
    #[arg(long)]
    players: Option<usize>,
    #[arg(long)]
    checkpoint_every: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Run repetitions on one thread.
    #[arg(long)]
    serial: bool,
}

impl Overrides {
    fn build(&self) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(a) = self.algorithm {
            cfg.algorithm = a;
        }
        if let Some(list) = &self.alpha {
            let alphas = parse_float_list(list)?;
            cfg.alpha = match alphas.as_slice() {
                [a] => AlphaSpec::Single(*a),
                _ => AlphaSpec::Sweep(alphas),
            };
        }
        if let Some(t) = self.turns {
            cfg.turns = t;
        }
        if let Some(r) = self.reps {
            cfg.repetitions = r;
        }
        if let Some(s) = self.seed {
            cfg.base_seed = s;
        }
        if let Some(m) = &self.means {
            cfg.means = parse_float_list(m)?;
        }
        if let Some(n) = self.players {
            cfg.n_players = n;
        }
        if let Some(c) = self.checkpoint_every {
            cfg.checkpoint_every = c;
        }
        if let Some(out) = &self.out {
            cfg.output = Some(out.clone());
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let (overrides, curve) = match &cli.command {
        Command::SweepAlpha(o) => (o, false),
        Command::RegretCurve(o) => (o, true),
    };
    let cfg = overrides.build()?;
    let execution = if overrides.serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    let records = if curve {
        regret_vs_turns(&cfg, execution)?
    } else {
        sweep_alpha(&cfg, execution)?
    };
    match &cfg.output {
        Some(path) => emit_results(&records, &cfg, cfg.format, path),
        None => {
            let body = match cfg.format {
                OutputFormat::Csv => to_csv_string(&records),
                OutputFormat::Json => to_json_string(&records, &cfg),
            };
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
