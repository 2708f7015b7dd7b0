use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::{info, warn};

use fdmq::config::{parse_config, ExperimentKind, RunConfig};
use fdmq::experiments::ExperimentRegistry;
use fdmq::io::{run, OUT_DIR_ENV};
use fdmq::{Error, FrameTag, Result};

#[derive(Parser, Debug)]
#[command(
    name = "fdmq",
    version,
    about = "Frequency-division-multiplexed qubit gate simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory; falls back to `output.dir` in the config, then `results`.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    out: Option<PathBuf>,

    /// Integrator resolution: midpoint steps per period of the fastest frequency
    #[arg(long, global = true)]
    steps_per_period: Option<u32>,

    /// lab, rotating or rwa.
    #[arg(long, global = true)]
    frame: Option<String>,

    /// Worker threads for the sweep; defaults to all cores
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Infidelity vs number of drive tones.
    NdSweep,
    /// Mean infidelity over (N_d, tau/tau0).
    TauGrid,
    /// Mean infidelity over (S_d, base qubit frequency).
    ShiftGridOmega,
    /// Mean infidelity over (S_d, N_d).
    ShiftGridNd,
    /// Per-qubit profile at S_d = 0 and its asymmetry.
    Asymmetry,
    /// One qubit, one plan.
    SinglePoint,
    /// Run whatever experiment the config names.
    Run,
    /// List registered experiments.
    List,
}

impl Command {
    fn kind(&self) -> Option<ExperimentKind> {
        Some(match self {
            Self::NdSweep => ExperimentKind::NdSweep,
            Self::TauGrid => ExperimentKind::TauGrid,
            Self::ShiftGridOmega => ExperimentKind::ShiftGridOmega,
            Self::ShiftGridNd => ExperimentKind::ShiftGridNd,
            Self::Asymmetry => ExperimentKind::Asymmetry,
            Self::SinglePoint => ExperimentKind::SinglePoint,
            Self::Run | Self::List => return None,
        })
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match (&cli.config, cli.command.kind()) {
        (Some(path), kind) => {
            let text = std::fs::read_to_string(path)?;
            let cfg = parse_config(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            if let Some(k) = kind {
                if k != cfg.kind() {
                    return Err(Error::Config(format!(
                        "subcommand `{k}` does not match experiment.kind `{}` in {}",
                        cfg.kind(),
                        path.display()
                    )));
                }
            }
            cfg
        }
        (None, Some(kind)) => RunConfig::preset(kind),
        (None, None) => return Err(Error::Config("`run` needs --config".into())),
    };
    if let Some(s) = cli.steps_per_period {
        cfg.integrator.steps_per_period = s;
    }
    if let Some(f) = &cli.frame {
        cfg.integrator.frame = f.parse::<FrameTag>()?;
    }
    if let Some(t) = cli.threads {
        cfg.integrator.threads = Some(t);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();

    if let Command::List = cli.command {
        for e in ExperimentRegistry::builtin().iter() {
            println!("{:<18} {}", e.kind().as_str(), e.description());
        }
        return ExitCode::SUCCESS;
    }

    let result = load_config(&cli).and_then(|cfg| {
        if let Ok(plan) = cfg.base_plan() {
            for w in plan.warnings() {
                warn!("{w}");
            }
        }
        let out = cli
            .out
            .clone()
            .or_else(|| cfg.output.dir.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("results"));
        info!("running {} into {}", cfg.kind(), out.display());
        run(&cfg, &out)
    });
    match result {
        Ok(report) => {
            for f in &report.csv_files {
                info!("wrote {}", f.display());
            }
            info!("wrote {}", report.sidecar.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
