//! Command-line front end. Flags override values from `--config`.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::config::{ExperimentConfig, OutputFormat};
use super::experiments::{l1_cf_summary, purity_summary, re_summaries, run_all, snapshot_summary, RunSummary};
use super::{exit_code, HarnessError};

#[derive(Debug, Parser)]
#[command(name = "qur-shadows", version, about = "Coherence uncertainty relations estimated from classical shadows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shadow and tomography purity over the τ grid and every n_s.
    PuritySweep(Opts),
    /// Relative-entropy coherence sum against its four bounds, one table per c.
    ReBounds(Opts),
    /// l1 and formation relations in the Z / X bases.
    L1Cf(Opts),
    /// Every experiment above.
    All(Opts),
}

#[derive(Debug, Args)]
struct Opts {
    /// JSON file with any subset of the flag names as keys.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_name = "T1,T2,..")]
    tau_list: Option<Vec<f64>>,
    /// Snapshots per shadow run.
    #[arg(long)]
    ns: Option<usize>,
    #[arg(long, value_delimiter = ',', value_name = "N1,N2,..")]
    ns_grid: Option<Vec<usize>>,
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_name = "C1,C2,..")]
    c_list: Option<Vec<f64>>,
    /// Projective shots per basis.
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long, overrides_with = "no_plot")]
    plot: bool,
    #[arg(long, overrides_with = "plot")]
    no_plot: bool,
    /// Also write the first shadow run of every τ.
    #[arg(long)]
    dump_snapshots: bool,
}

impl Opts {
    fn resolve(self) -> Result<ExperimentConfig, HarnessError> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_json_file(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(v) = self.tau_list {
            cfg.tau_list = v;
        }
        if let Some(v) = self.ns {
            cfg.n_s = v;
        }
        if let Some(v) = self.ns_grid {
            cfg.n_s_grid = v;
        }
        if let Some(v) = self.repeats {
            cfg.repeats = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.c_list {
            cfg.c_list = v;
        }
        if let Some(v) = self.shots {
            cfg.shots_per_basis = v;
        }
        if let Some(v) = self.out {
            cfg.out = v;
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        if self.no_plot {
            cfg.plot = false;
        } else if self.plot {
            cfg.plot = true;
        }
        cfg.dump_snapshots |= self.dump_snapshots;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn execute(command: Command) -> Result<Vec<RunSummary>, HarnessError> {
    type Runner = fn(&ExperimentConfig) -> Result<Vec<RunSummary>, HarnessError>;
    let (opts, run, dumps_itself): (Opts, Runner, bool) = match command {
        Command::PuritySweep(o) => (o, |c| Ok(vec![purity_summary(c)?]), false),
        Command::ReBounds(o) => (o, re_summaries, false),
        Command::L1Cf(o) => (o, |c| Ok(vec![l1_cf_summary(c)?]), false),
        Command::All(o) => (o, run_all, true),
    };
    let cfg = opts.resolve()?;
    let mut out = run(&cfg)?;
    if cfg.dump_snapshots && !dumps_itself {
        out.push(snapshot_summary(&cfg)?);
    }
    Ok(out)
}

/// Parses `args` (program name first), runs the experiment and returns the
/// process exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit_code::USAGE } else { exit_code::OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(summaries) => {
            for s in summaries {
                println!("{}", s.line);
            }
            exit_code::OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
