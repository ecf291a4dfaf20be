//! `qogz` — batch verification harness for quantum OGZ algebra claims.
//!
//! `qogz verify --config campaign.cfg [--suite S] [--seed N] [--report out.txt]
//! [--max-group-size N]` parses a TOML campaign, runs the named suites over
//! their parameter cases, prints the deterministic report, and exits with
//! 0 (all asserted checks pass), 1 (an asserted check failed), or 2
//! (usage/config error).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qogz_core::campaign::{parse_campaign, run_campaign};
use qogz_core::report::{has_failure, render_report};

#[derive(Parser)]
#[command(name = "qogz", version, about = "Verification harness for quantum OGZ algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites of a campaign config.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Campaign config file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Run only the named suite.
    #[arg(long)]
    suite: Option<String>,
    /// Override the campaign seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report to this file as well as stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Override the group-enumeration size guard.
    #[arg(long)]
    max_group_size: Option<usize>,
}

fn verify(args: &VerifyArgs) -> Result<bool, String> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| format!("cannot read {}: {e}", args.config.display()))?;
    let mut campaign = parse_campaign(&text).map_err(|e| e.to_string())?;
    if let Some(seed) = args.seed {
        campaign.options.seed = seed;
    }
    if let Some(max) = args.max_group_size {
        campaign.options.max_group_size = max;
    }
    let records =
        run_campaign(&campaign, args.suite.as_deref()).map_err(|e| e.to_string())?;
    let rendered = render_report(&records);
    print!("{rendered}");
    let out = args
        .report
        .clone()
        .or_else(|| campaign.options.report.as_ref().map(PathBuf::from));
    if let Some(path) = out {
        std::fs::write(&path, &rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(has_failure(&records))
}

/// 0: all asserted checks passed; 1: an asserted check failed; 2: usage or
/// config error.
fn exit_code(outcome: &Result<bool, String>) -> u8 {
    match outcome {
        Ok(false) => 0,
        Ok(true) => 1,
        Err(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => {
            let outcome = verify(&args);
            if let Err(msg) = &outcome {
                eprintln!("error: {msg}");
            }
            ExitCode::from(exit_code(&outcome))
        }
    }
}
