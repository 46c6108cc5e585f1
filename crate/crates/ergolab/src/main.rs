use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ergolab::config::{Backend, ExperimentConfig};
use ergolab::experiments::{catalog_json, is_known, run, CATALOG};
use ergolab::Error;

#[derive(Parser)]
#[command(name = "ergolab", version, about = "Experiment runner for nonsingular group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write report.json (plus any CSV curves).
    Run {
        /// Experiment id; see `ergolab list`.
        id: String,
        /// TOML config file. Flags below override its values.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for report.json and CSV files.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        backend: Option<Backend>,
    },
    /// List the experiment catalog.
    List {
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(passed) => {
            if passed {
                ExitCode::from(0)
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidParameter { .. } | Error::Config(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}

fn dispatch() -> ergolab::Result<bool> {
    match Cli::parse().command {
        Command::List { json } => {
            let mut text = String::new();
            if json {
                text.push_str(&serde_json::to_string_pretty(&catalog_json())?);
                text.push('\n');
            } else {
                for e in &CATALOG {
                    text.push_str(&format!("{:<20} {} ({})\n", e.id, e.description, e.topic));
                }
            }
            // Tolerate a closed pipe (`ergolab list | head`).
            use std::io::Write;
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(true)
        }
        Command::Run {
            id,
            config,
            seed,
            out,
            backend,
        } => {
            if !is_known(&id) {
                return Err(Error::Config(format!(
                    "unknown experiment id {id:?}; run `ergolab list`"
                )));
            }
            let mut cfg = match config {
                Some(path) => ExperimentConfig::load(&path)?,
                None => ExperimentConfig::default(),
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(o) = out {
                cfg.out = o;
            }
            if let Some(b) = backend {
                cfg.backend = b;
            }
            let report = run(&id, &cfg)?;
            for c in &report.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                println!("[{mark}] {}: {}", c.name, c.detail);
            }
            println!(
                "{}: {} ({})",
                report.experiment,
                if report.passed { "PASS" } else { "FAIL" },
                cfg.out.join("report.json").display()
            );
            Ok(report.passed)
        }
    }
}
