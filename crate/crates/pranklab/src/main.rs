use clap::{Parser, Subcommand};
use pranklab::job::{build_job, emit_report, load_config};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "pranklab")]
#[command(about = "Exact verification of equivariant p-rank invariants on explicit curves")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, p-rank and fixed-point count of the configured curve
    Prank(Common),
    /// Core and projective-summand table of the p-rank module
    Decompose(Common),
    /// Check that the core of the p-rank module matches the loop space of
    /// the ramification module
    VerifyTheoremA(Common),
    /// Check the congruence p-rank = 1 - r modulo the p-part of |G|
    VerifyCongruence(Common),
    /// Check the quotient-curve multiplicity formula for a normal subgroup
    VerifyTheoremB(Common),
    /// Check the Deuring-Shafarevich formula for a p-group action
    VerifyDs(Common),
    /// Run every check applicable to the configuration
    All(Common),
}

#[derive(clap::Args)]
struct Common {
    /// Path to the JSON job configuration
    #[arg(long)]
    config: PathBuf,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the seed from the configuration
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common) = match &cli.command {
        Command::Prank(c) => ("prank", c),
        Command::Decompose(c) => ("decompose", c),
        Command::VerifyTheoremA(c) => ("verify_theorem_a", c),
        Command::VerifyCongruence(c) => ("verify_congruence", c),
        Command::VerifyTheoremB(c) => ("verify_theorem_b", c),
        Command::VerifyDs(c) => ("verify_ds", c),
        Command::All(c) => ("all", c),
    };
    let started = Instant::now();
    let result = (|| {
        let mut cfg = load_config(&common.config)?;
        if let Some(seed) = common.seed {
            cfg.seed = seed;
        }
        cfg.command = name.to_string();
        let job = build_job(cfg)?;
        job.run(name)
    })();
    match result {
        Ok(report) => {
            for (label, v) in &report.verdicts {
                eprintln!("{label}: {} ({} | {})", v.status, v.lhs, v.rhs);
            }
            eprintln!("elapsed: {} ms", started.elapsed().as_millis());
            match emit_report(&report, common.out.as_deref()) {
                Ok(code) => ExitCode::from(code as u8),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
