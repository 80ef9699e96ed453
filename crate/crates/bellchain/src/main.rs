// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use bellchain::manifest::RunManifest;
use bellchain::plot::{self, PlotKind};
use bellchain::{Command, HarnessError, Overrides};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bellchain", version, about = "Bell-state transfer through branched spin chains")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct RunArgs {
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Base seed, overriding the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads, overriding the config and BELLCHAIN_WORKERS.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Receiver EoF, concurrence and fidelity over time.
    Trace(RunArgs),
    /// Optimize J_m and time for one chain.
    Sweep(RunArgs),
    /// Optimize the six boundary-coupling presets.
    Compare(RunArgs),
    /// Static coupling disorder at a fixed operating point.
    Disorder(RunArgs),
    /// Imperfect initial states at a fixed operating point.
    Perturb(RunArgs),
    /// Single-excitation transfer, branched against standard.
    Single(RunArgs),
    /// Compare reduced dynamics with full-space propagation.
    OracleCheck(RunArgs),
    /// Render an SVG from a CSV output.
    Plot {
        /// trace, sweep or disorder.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the checksums recorded in a run directory.
    Verify {
        /// Directory holding manifest.json.
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cmd: Cmd) -> bellchain::Result<()> {
    let (command, args) = match cmd {
        Cmd::Trace(a) => (Command::Trace, a),
        Cmd::Sweep(a) => (Command::Sweep, a),
        Cmd::Compare(a) => (Command::Compare, a),
        Cmd::Disorder(a) => (Command::Disorder, a),
        Cmd::Perturb(a) => (Command::Perturb, a),
        Cmd::Single(a) => (Command::Single, a),
        Cmd::OracleCheck(a) => (Command::OracleCheck, a),
        Cmd::Plot { kind, csv, out } => {
            let kind = PlotKind::parse(&kind).ok_or_else(|| HarnessError::Invalid(format!("unknown plot kind `{kind}`")))?;
            return plot::emit_plot(&csv, kind, &out);
        }
        Cmd::Verify { dir } => {
            let m = RunManifest::read(&dir)?;
            m.verify(&dir)?;
            println!("{} files verified", m.files.len());
            return Ok(());
        }
    };
    let overrides = Overrides { seed: args.seed, workers: args.workers };
    let report = bellchain::run(command, &args.config, &args.out, &overrides)?;
    for line in &report.lines {
        println!("{line}");
    }
    for f in &report.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}
