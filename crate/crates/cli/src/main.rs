use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use qci_core::codec::{load_fixture, DirectoryRecord};
use qci_core::harness::{
    default_verifications, emit_report, run_suite, worker_count, Report, ReportFormat, SuiteConfig,
};

#[derive(Parser, Debug)]
#[command(
    name = "qci",
    version,
    about = "Run instrumented quantum/classical scenarios and report their step costs"
)]
struct Cli {
    /// Suite seed; overrides the seed in the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a scenario config; CSV rows go to stdout, growth classes to stderr.
    Run { config: PathBuf },
    /// Check that the quantum and classical paths agree on the built-in instances.
    Verify {
        /// Directory fixture (`state_index,phone_number,uid` per line) in place of the built-in table.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Run a suite (the built-in default unless --config) and write a report file.
    Report {
        #[arg(long, value_parser = parse_format)]
        format: ReportFormat,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn parse_format(s: &str) -> std::result::Result<ReportFormat, String> {
    s.parse().map_err(|e: qci_core::Error| e.to_string())
}

fn prepare(mut config: SuiteConfig, cli: &Cli) -> Result<SuiteConfig> {
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    config.validate()?;
    Ok(config)
}

fn load_config(path: &Path) -> Result<SuiteConfig> {
    SuiteConfig::load(path).with_context(|| format!("loading config {}", path.display()))
}

fn print_growth(report: &Report) {
    for g in &report.growth {
        match (&g.class, &g.note) {
            (Some(c), _) => eprintln!(
                "{:<10} {:<24} {:<9} scale={:.4} residual={:.3e}",
                g.scenario,
                g.counter,
                c.label.as_str(),
                c.scale,
                c.residual
            ),
            (None, note) => eprintln!(
                "{:<10} {:<24} insufficient data ({})",
                g.scenario,
                g.counter,
                note.as_deref().unwrap_or("no fit")
            ),
        }
    }
    for r in report.rows.iter().filter(|r| r.error.is_some()) {
        eprintln!(
            "error: {} n={}: {}",
            r.scenario,
            r.n,
            r.error.as_deref().unwrap_or_default()
        );
    }
}

fn exit_code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Run { config } => {
            let config = prepare(load_config(config)?, cli)?;
            eprintln!("running with {} workers", worker_count(&config));
            let report = run_suite(&config)?;
            print!("{}", report.to_csv());
            print_growth(&report);
            Ok(exit_code(report.all_correct()))
        }
        Command::Verify { fixture } => {
            let fixture: Option<Vec<DirectoryRecord>> = fixture
                .as_ref()
                .map(load_fixture)
                .transpose()
                .context("loading fixture")?;
            let verdicts = default_verifications(fixture.as_deref(), cli.seed.unwrap_or(0));
            for v in &verdicts {
                println!("{} {}: {}", if v.commutes { "ok  " } else { "FAIL" }, v.name, v.detail);
            }
            let failed = verdicts.iter().filter(|v| !v.commutes).count();
            println!("{} of {} verdicts commute", verdicts.len() - failed, verdicts.len());
            Ok(exit_code(failed == 0))
        }
        Command::Report { format, out, config } => {
            let base = match config {
                Some(p) => load_config(p)?,
                None => SuiteConfig::default_suite(),
            };
            let config = prepare(base, cli)?;
            let report = run_suite(&config)?;
            emit_report(&report, *format, out)?;
            eprintln!("wrote {} rows to {}", report.rows.len(), out.display());
            print_growth(&report);
            Ok(exit_code(report.all_correct()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
