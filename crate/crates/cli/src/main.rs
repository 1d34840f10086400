//! `polyrecon`: generate polytopes, emit moments, reconstruct vertices,
//! run precision sweeps and export meshes.

mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use polyrecon::Error;

use args::{Cli, Command};

pub const EXIT_USAGE: u8 = 64;
pub const EXIT_GENERATION: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;
pub const EXIT_RECONSTRUCTION: u8 = 4;

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn reconstruction(e: Error) -> Self {
        if matches!(e, Error::InvalidArgument(_) | Error::PrecisionTooLow(_)) {
            return Failure::from(e);
        }
        Failure {
            code: EXIT_RECONSTRUCTION,
            message: format!("reconstruction failed: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidArgument(_) | Error::PrecisionTooLow(_) => EXIT_USAGE,
            Error::GenerationFailed { .. } | Error::NotBounded | Error::NotSimple { .. } => {
                EXIT_GENERATION
            }
            Error::DegenerateDirection { .. } => EXIT_DEGENERATE,
            _ => 1,
        };
        let mut message = e.to_string();
        if code == EXIT_DEGENERATE {
            message += "; try another direction";
        }
        Failure { code, message }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Moments(a) => commands::moments(a),
        Command::Reconstruct(a) => commands::reconstruct(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Export(a) => commands::export(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
