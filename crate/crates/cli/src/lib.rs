//! Command-line front end for `realav-core`.
//!
//! Exit codes: 0 on success, 1 on a domain or input error (a JSON object
//! `{"error": kind, "message": text}` on stderr), 2 on a usage error.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod wire;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use crate::args::Cli;
use crate::config::{Config, ConfigFile};
use crate::error::CliError;

fn configure(cli: &Cli) -> Result<Config, CliError> {
    let file = match &cli.global.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let cfg = file.overlay(cli.global.as_config()).resolve()?;
    if let Some(n) = cfg.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(cfg)
}

/// Parses `argv`, runs the command and writes its output. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = configure(&cli).and_then(|cfg| commands::execute(&cli.command, &cfg));
    match result {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(_) => 1,
        },
        Err(e) => {
            let _ = writeln!(err, "{}", serde_json::to_string(&e.report()).expect("error report serializes"));
            1
        }
    }
}
