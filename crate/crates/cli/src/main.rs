use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use fracdiff_cli::commands::{parse_grid, run_landscape, run_ml, run_recover, run_solve};
use fracdiff_cli::config::RunConfig;
use fracdiff_cli::exit;
use fracdiff_cli::output::{json_text, read_series, write_file};
use fracdiff_cli::validate::{run_validate, ValidateOptions};

#[derive(Parser)]
#[command(name = "fracdiff", version, about = "Space-time fractional diffusion: simulate and recover orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; defaults to output.directory from the config.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn load(&self) -> anyhow::Result<(RunConfig, PathBuf)> {
        let cfg = RunConfig::load(&self.config)?;
        let out = self
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from(&cfg.output.directory));
        Ok((cfg, out))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate E_alpha(z).
    Ml {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        count: usize,
        /// Geometric spacing in |z|.
        #[arg(long)]
        log: bool,
        /// Write ml.csv here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Forward solve: series.csv and meta.json.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Overrides noise.seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Recover (alpha, beta) from a series: recovery.json.
    Recover {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        series: PathBuf,
    },
    /// Misfit on an alpha x beta grid: landscape.csv and landscape.json.
    Landscape {
        #[command(flatten)]
        common: Common,
        /// Observed series; synthesized from the config when absent.
        #[arg(long)]
        series: Option<PathBuf>,
        /// Grid size AxB; overrides recovery.grid.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the embedded invariant checks.
    Validate {
        /// Comma-separated check names; empty selects none.
        #[arg(long)]
        select: Option<String>,
        /// Replace a check's limit, NAME=VALUE.
        #[arg(long = "limit", hide = true)]
        limits: Vec<String>,
    },
}

fn written(path: &Path) {
    eprintln!("wrote {}", path.display());
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Ml {
            alpha,
            from,
            to,
            count,
            log,
            out,
        } => {
            let csv = run_ml(alpha, from, to, count, log)?;
            match out {
                Some(dir) => written(&write_file(&dir, "ml.csv", &csv)?),
                None => print!("{csv}"),
            }
        }
        Command::Solve { common, seed } => {
            let (cfg, out) = common.load()?;
            let s = run_solve(&cfg, seed)?;
            written(&write_file(&out, "series.csv", &s.csv()?)?);
            written(&write_file(&out, "meta.json", &json_text(&s.meta)?)?);
        }
        Command::Recover { common, series } => {
            let (cfg, out) = common.load()?;
            let data = read_series(&series)?;
            let r = run_recover(&cfg, &data)?;
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            written(&write_file(&out, "recovery.json", &json_text(&r)?)?);
            match r.beta_hat {
                Some(b) => println!("alpha = {:.10}, beta = {:.10}", r.alpha_hat, b),
                None => println!("alpha = {:.10}, beta undetermined", r.alpha_hat),
            }
            if !r.identifiable {
                return Ok(exit::NOT_IDENTIFIABLE);
            }
        }
        Command::Landscape {
            common,
            series,
            grid,
            seed,
        } => {
            let (cfg, out) = common.load()?;
            let grid = grid.as_deref().map(parse_grid).transpose()?;
            let data = series.as_deref().map(read_series).transpose()?;
            let l = run_landscape(&cfg, data.as_ref(), grid, seed)?;
            written(&write_file(&out, "landscape.csv", &l.csv()?)?);
            written(&write_file(&out, "landscape.json", &json_text(&l.summary)?)?);
        }
        Command::Validate { select, limits } => {
            let opts = ValidateOptions {
                select: select.as_deref().map(ValidateOptions::parse_select),
                limits: limits
                    .iter()
                    .map(|s| ValidateOptions::parse_limit(s))
                    .collect::<Result<_, _>>()?,
            };
            let report = run_validate(&opts).context("validate")?;
            for r in &report.results {
                println!("{r}");
            }
            let failed = report.results.iter().filter(|r| !r.passed).count();
            println!("{} checks, {failed} failed", report.results.len());
            if failed > 0 {
                return Ok(exit::ERROR);
            }
        }
    }
    Ok(exit::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::ERROR } else { exit::SUCCESS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::ERROR as u8)
        }
    }
}
