//! The `hochrr` command line: parse a job, run it, print a report.
//!
//! Exit codes: 0 when every checked identity holds, 1 when one fails, 2 for
//! usage and configuration errors.

pub mod commands;
pub mod config;

use std::io::Write;

use clap::Parser;
use serde_json::json;

use crate::config::{Args, JobConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// The JSON schema every `--json` report satisfies.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Runs one invocation. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let cfg = match JobConfig::from_args(&args) {
        Ok(c) => c,
        Err(msg) => return usage(args.json, args.command.as_deref(), &msg, out, err),
    };
    if let Some(w) = cfg.max_window {
        std::env::set_var("HOCHRR_MAX_WINDOW", w.to_string());
    }
    match commands::dispatch(&cfg) {
        Ok(o) => {
            let status = if o.ok { "success" } else { "failure" };
            if cfg.json {
                let doc = json!({ "command": cfg.command(), "status": status, "result": o.result });
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("json values serialize")
                );
            } else {
                let _ = write!(out, "{}", o.text);
            }
            if o.ok {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => usage(cfg.json, cfg.command.as_deref(), &e.0, out, err),
    }
}

fn usage(
    as_json: bool,
    command: Option<&str>,
    msg: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    if as_json {
        let doc = json!({ "command": command, "status": "error", "error": msg });
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("json values serialize")
        );
    }
    EXIT_USAGE
}
