//! The `omegahom` command line tool: a small definition language for
//! globular sets, strict categories, terms and witness sets, and commands
//! that run the checks of `omegahom-core` on them.

pub mod commands;
pub mod print;
pub mod syntax;
pub mod workspace;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use omegahom_core::Truncation;

pub use commands::{Bounds, Command, Outcome};
pub use workspace::{LoadError, Workspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One `key<TAB>value` record per line.
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "omegahom",
    version,
    about = "Compute with weak omega-categories at a finite truncation"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Names of definitions (and objects or dimensions) the command acts on.
    pub names: Vec<String>,
    /// Definition file to load.
    #[arg(short = 'f', long = "file", default_value = "main.omh")]
    pub file: PathBuf,
    /// Truncation: no cells above this dimension.
    #[arg(long = "max-dim", default_value_t = 3)]
    pub max_dim: usize,
    /// Size bound for enumerated terms.
    #[arg(long = "term-size", default_value_t = 10)]
    pub term_size: usize,
    /// Path length bound for enumerated diagrams.
    #[arg(long = "diag-len", default_value_t = 4)]
    pub diag_len: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Everything a process run would print, plus its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Renders records: text mode prints `result` bare and other keys as
/// `key: value`.
pub fn render(records: &[(String, String)], format: Format) -> String {
    let mut out = String::new();
    for (k, v) in records {
        match format {
            Format::Machine => out.push_str(&format!("{k}\t{v}\n")),
            Format::Text if k == "result" => out.push_str(&format!("{v}\n")),
            Format::Text => out.push_str(&format!("{k}: {v}\n")),
        }
    }
    out
}

/// Parses arguments, loads the file and runs one command.
pub fn invoke<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Invocation {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Invocation {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let ws = match Workspace::load(&cli.file, Truncation::new(cli.max_dim)) {
        Ok(ws) => ws,
        Err(e) => {
            return Invocation {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let bounds = Bounds {
        term_size: cli.term_size,
        diag_len: cli.diag_len,
    };
    let outcome = commands::run(cli.command, &cli.names, &ws, bounds);
    Invocation {
        code: outcome.code,
        stdout: render(&outcome.records, cli.format),
        stderr: outcome.diagnostics.iter().map(|d| format!("error: {d}\n")).collect(),
    }
}
