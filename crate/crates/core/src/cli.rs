//! Command-line front end. Exit codes: 0 success, 1 usage or configuration
//! error, 2 data error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::PipelineConfig;
use crate::error::{Error, Result};
use crate::pipeline::{Pipeline, Step};
use crate::store::parse_date;

#[derive(Debug, Parser)]
#[command(name = "charforge", version, about = "Characterization corpora and evaluation for person entities in news text")]
pub struct Cli {
    /// Pipeline configuration (TOML). Defaults apply when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Store root directory; overrides the config.
    #[arg(long, global = true)]
    pub store: Option<PathBuf>,

    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Commands,
}

#[derive(Debug, Args)]
pub struct HouseArg {
    /// Media house to process; every configured house when omitted.
    #[arg(long)]
    pub house: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Commands {
    /// Load articles for one media house, filtered by publication date.
    Ingest {
        /// Line-delimited JSON articles; the configured input when omitted.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        house: Option<String>,
        #[arg(long, value_parser = parse_date)]
        from: Option<chrono::NaiveDate>,
        #[arg(long, value_parser = parse_date)]
        to: Option<chrono::NaiveDate>,
    },
    /// Coreference substitution and partial-name resolution.
    Resolve(HouseArg),
    /// Clause extraction from dependency parses.
    Clauses(HouseArg),
    /// Demonstrations, entity split and fine-tuning corpora.
    Synth {
        #[command(flatten)]
        house: HouseArg,
        /// Minimum sentence count an entity must exceed.
        #[arg(long)]
        threshold: Option<usize>,
        #[arg(long)]
        test_entities: Option<usize>,
    },
    /// Prompt jobs for the held-out entities.
    Prompts(HouseArg),
    /// Import generations from the configured replay file or adapter.
    Generate(HouseArg),
    /// Match generations against reference sentences.
    Evaluate {
        #[command(flatten)]
        house: HouseArg,
        /// `stub` or the base URL of an embedding service.
        #[arg(long)]
        embedder: Option<String>,
        /// Cosine similarity threshold.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Write report.csv and report.md under the store root.
    Report,
    /// Run all steps, optionally starting from a later one.
    Run {
        #[arg(long, default_value = "ingest", value_parser = |s: &str| s.parse::<Step>())]
        from: Step,
    },
}

fn load_config(cli: &Cli) -> Result<PipelineConfig> {
    let mut cfg = match &cli.config {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    if let Some(s) = &cli.store {
        cfg.store = s.clone();
    }
    Ok(cfg)
}

fn houses(cfg: &PipelineConfig, arg: &HouseArg) -> Result<Vec<String>> {
    match &arg.house {
        Some(h) => Ok(vec![h.clone()]),
        None if !cfg.houses.is_empty() => Ok(cfg.houses.clone()),
        None => Err(Error::Config("no media house given (use --house or list houses in the config)".into())),
    }
}

fn each<T: std::fmt::Display>(
    p: &Pipeline,
    arg: &HouseArg,
    f: impl Fn(&Pipeline, &str) -> Result<T>,
) -> Result<()> {
    for h in houses(&p.config, arg)? {
        let out = f(p, &h)?;
        println!("{h}: {out}");
    }
    Ok(())
}

pub fn execute(cli: Cli) -> Result<()> {
    let mut cfg = load_config(&cli)?;
    match cli.command {
        Commands::Ingest { input, house, from, to } => {
            if let Some(d) = from {
                cfg.date_from = d;
            }
            if let Some(d) = to {
                cfg.date_to = d;
            }
            let house = house.map(|h| vec![h]).unwrap_or_else(|| cfg.houses.clone());
            if house.is_empty() {
                return Err(Error::Config("no media house given (use --house)".into()));
            }
            if input.is_some() && house.len() > 1 {
                return Err(Error::Config("--in needs a single --house".into()));
            }
            let p = Pipeline::new(cfg)?;
            for h in house {
                let report = match &input {
                    Some(path) => p.ingest_file(&h, path)?,
                    None => p.ingest(&h)?,
                };
                println!(
                    "{h}: retained={} rejected={} total={}",
                    report.retained,
                    report.rejects.len(),
                    report.manifest.article_count
                );
            }
        }
        Commands::Resolve(arg) => each(&Pipeline::new(cfg)?, &arg, Pipeline::resolve)?,
        Commands::Clauses(arg) => each(&Pipeline::new(cfg)?, &arg, Pipeline::clauses)?,
        Commands::Synth { house, threshold, test_entities } => {
            if let Some(t) = threshold {
                cfg.entity_threshold = t;
            }
            if let Some(n) = test_entities {
                cfg.test_entities = n;
            }
            each(&Pipeline::new(cfg)?, &house, Pipeline::synth)?
        }
        Commands::Prompts(arg) => each(&Pipeline::new(cfg)?, &arg, |p, h| {
            p.prompts(h).map(|jobs| format!("jobs={}", jobs.len()))
        })?,
        Commands::Generate(arg) => each(&Pipeline::new(cfg)?, &arg, Pipeline::generate)?,
        Commands::Evaluate { house, embedder, threshold } => {
            if let Some(e) = embedder {
                cfg.embedder = e;
            }
            if let Some(t) = threshold {
                cfg.cosine_threshold = t;
            }
            each(&Pipeline::new(cfg)?, &house, Pipeline::evaluate)?
        }
        Commands::Report => {
            let p = Pipeline::new(cfg)?;
            let m = p.report()?;
            println!("rows={} report={}", m.rows.len(), p.store.root().join("report.csv").display());
        }
        Commands::Run { from } => {
            let p = Pipeline::new(cfg)?;
            let m = p.run(from)?;
            println!("rows={} report={}", m.rows.len(), p.store.root().join("report.csv").display());
        }
    }
    Ok(())
}

/// Parse arguments, run, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init();
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(main_with_args(["charforge", "frobnicate"]), 1);
        assert_eq!(main_with_args(["charforge", "run", "--from", "nowhere"]), 1);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(main_with_args(["charforge", "--help"]), 0);
    }
}
