//! `hessloci` command-line tool.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on input
//! errors.

mod args;
mod commands;
mod input;

use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;

use args::Cli;

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn write_json(path: &std::path::Path, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn classify(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<hessloci::Error>() {
        Some(hessloci::Error::Inconsistent(_)) => EXIT_FAILED,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli.command, &cli.global) {
        Ok(mut out) => {
            if out.report.wall_time.is_none() {
                out.report.wall_time = Some(start.elapsed());
            }
            let to_stdout = cli.global.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
            if !to_stdout {
                print!("{}", out.text);
            }
            if let Some(path) = &cli.global.json {
                if let Err(e) = write_json(path, &out.report.to_json_with_timing()) {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(EXIT_INPUT);
                }
            }
            ExitCode::from(out.report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(classify(&e))
        }
    }
}
