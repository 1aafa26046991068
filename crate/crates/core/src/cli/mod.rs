//! Batch driver behind the `dfock` binary.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or configuration errors.

pub mod commands;
pub mod config;
pub mod expr;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;

use crate::error::Result;
use config::{resolve, Cli, Command};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => report::write_atomic(p, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn status(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Verify(args) => {
            let cfg = resolve(&args)?;
            let r = commands::verify(&cfg)?;
            emit(&r.to_json()?, cfg.out.as_deref(), out)?;
            Ok(status(r.pass))
        }
        Command::Ergodic(args) => {
            let cfg = resolve(&args)?;
            let curve = commands::ergodic(&cfg)?;
            emit(&curve.to_csv(), cfg.out.as_deref(), out)?;
            Ok(status(curve.within_bounds(cfg.tol)))
        }
        Command::Reduce(args) => {
            let line = commands::reduce(&args.expr, args.gamma.as_deref())?;
            writeln!(out, "{line}")?;
            Ok(EXIT_PASS)
        }
        Command::States(args) => {
            let cfg = resolve(&args)?;
            let r = commands::states(&cfg)?;
            emit(&r.to_json()?, cfg.out.as_deref(), out)?;
            Ok(status(r.pass))
        }
        Command::Report(args) => {
            let r = commands::aggregate(&args.files)?;
            emit(&r.to_json()?, args.out.as_deref(), out)?;
            Ok(status(r.pass))
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CONFIG
        }
    }
}
