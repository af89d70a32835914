use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use drillopt::io::{self, RunConfig, SelectOptions};
use drillopt::metrics::REFERENCE_MARGIN;
use drillopt::selection::SelectionMethod;
use drillopt::{Result, Variant};

#[derive(Parser)]
#[command(name = "drillopt", version, about = "Drilling portfolio selection under geological uncertainty")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-project GPoS, reserve and EMV summaries from the elicitations.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, env = "DRILLOPT_OUT_DIR")]
        out: PathBuf,
    },
    /// One solver run: front, HV trace and manifest.
    Optimize {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        variant: Option<Variant>,
        #[arg(long)]
        seed: Option<u64>,
        /// Override the configured generation count.
        #[arg(long)]
        generations: Option<usize>,
        #[arg(long, env = "DRILLOPT_OUT_DIR")]
        out: PathBuf,
    },
    /// Metric table over two or more front files; the first is the reference.
    Metrics {
        #[arg(long, num_args = 2.., required = true)]
        fronts: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = REFERENCE_MARGIN)]
        margin: f64,
    },
    /// Representative solutions and risk tiers of a front file.
    Select {
        #[arg(long)]
        front: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "ideal,knee,hv")]
        method: Vec<SelectionMethod>,
        #[arg(long, default_value_t = 3)]
        tiers: usize,
        /// Also choose one representative inside each tier.
        #[arg(long)]
        per_tier: bool,
        #[arg(long, default_value_t = REFERENCE_MARGIN)]
        margin: f64,
        /// Defaults to the front file's directory.
        #[arg(long, env = "DRILLOPT_OUT_DIR")]
        out: Option<PathBuf>,
    },
    /// Everything for one config: simulation, both variants, metrics, selection.
    Report {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, env = "DRILLOPT_OUT_DIR")]
        out: PathBuf,
    },
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Simulate { config, out } => {
            let cfg = RunConfig::load(&config)?;
            let (sims, path) = io::simulate(&cfg, &out)?;
            println!("simulated {} projects -> {}", sims.len(), path.display());
        }
        Command::Optimize {
            config,
            variant,
            seed,
            generations,
            out,
        } => {
            let mut cfg = RunConfig::load(&config)?;
            if let Some(v) = variant {
                cfg.solver.variant = v;
            }
            if let Some(s) = seed {
                cfg.solver.seed = s;
            }
            if let Some(g) = generations {
                cfg.solver.generations = g;
            }
            cfg.validate()?;
            let o = io::optimize(&cfg, &out)?;
            for r in &o.manifest.rejected_rows {
                eprintln!("warning: {}:{} `{}` skipped: {}", r.path.display(), r.line, r.id, r.reason);
            }
            if !o.result.feasible {
                eprintln!("warning: no feasible portfolio found; the front holds the least-violating ones");
            }
            println!(
                "{} seed {}: {} front points in {:.1}s -> {}",
                cfg.solver.variant.label(),
                cfg.solver.seed,
                o.front.len(),
                o.manifest.wall_time_secs,
                out.display()
            );
        }
        Command::Metrics { fronts, out, margin } => {
            let table = io::compare_front_files(&fronts, margin, &out)?;
            for r in &table.rows {
                println!("{:<24} HV {:.6e}", r.name, r.hv);
            }
        }
        Command::Select {
            front,
            method,
            tiers,
            per_tier,
            margin,
            out,
        } => {
            let out = out.unwrap_or_else(|| front.parent().map(Path::to_path_buf).unwrap_or_default());
            let opts = SelectOptions {
                methods: method,
                tiers,
                per_tier,
                reference_margin: margin,
            };
            let sel = io::select_from_front(&front, &opts, &out)?;
            for c in &sel.choices {
                let r = &sel.front[c.choice.index];
                let scope = c.tier.map_or_else(|| "global".to_string(), |t| format!("tier {}", t + 1));
                println!("{:<8} {:<6} #{:<4} EMV {:.2} risk {:.2}", scope, c.choice.method, c.choice.index, r.emv, r.risk);
            }
        }
        Command::Report { config, out } => {
            let cfg = RunConfig::load(&config)?;
            let files = io::report(&cfg, &out)?;
            println!("wrote {} files under {}", files.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::FAILURE
        }
    }
}
