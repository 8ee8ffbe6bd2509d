//! Command-line front end for `rindler-twist-core`: argument parsing,
//! JSON/CSV encodings and a small SVG plotter.

pub mod cli;
pub mod commands;
pub mod format;
pub mod plot;

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

use cli::{Cli, Command, OutputArgs};

fn emit(out: &OutputArgs, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Parse the process arguments and run. Returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn case_or_exit(args: &cli::CaseArgs) -> rindler_twist_core::TwistCase {
    args.case()
        .unwrap_or_else(|msg| Cli::command().error(ErrorKind::ValueValidation, msg).exit())
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Commutators(a) => {
            let case = case_or_exit(&a.case);
            emit(&a.out, &commands::commutators(&a, &case)?)?;
        }
        Command::Spectrum(a) => {
            let case = case_or_exit(&a.case);
            let (text, points) = commands::spectrum(&a, &case)?;
            if let Some(path) = &a.plot {
                write_file(path, &plot::spectrum_svg(&format!("spectrum, case {case}"), &points))?;
            }
            emit(&a.out, &text)?;
        }
        Command::DumpTwist(a) => {
            let case = case_or_exit(&a.case);
            emit(&a.out, &commands::dump_twist(&a, &case)?)?;
        }
        Command::Metric(a) => emit(&a.out, &commands::metric()?)?,
        Command::Verify(a) => {
            let (text, ok) = commands::verify(&a)?;
            emit(&a.out, &text)?;
            return Ok(if ok { 0 } else { 1 });
        }
    }
    Ok(0)
}
