//! `sbl`: one subcommand per module, JSON on stdout.
//!
//! Exit codes: 0 ok, 2 input error, 3 budget, 4 verification failure.

mod args;
mod commands;
mod input;
mod reproduce;

use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::Parser;
use serde_json::{json, Value};

use args::Cli;

/// A failed run: exit status plus the machine-readable error object.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub body: Value,
}

impl Failure {
    pub fn input(msg: impl Into<String>) -> Self {
        Failure { code: 2, body: json!({ "error": "input", "message": msg.into() }) }
    }

    pub fn verification(body: Value) -> Self {
        Failure { code: 4, body }
    }
}

impl From<sbl::Error> for Failure {
    fn from(e: sbl::Error) -> Self {
        use sbl::Error as E;
        let (code, kind) = match &e {
            E::Budget(_) | E::SearchExhausted(_) => (3, "budget"),
            E::Certificate { .. } => (4, "certificate"),
            E::Parse { .. } => (2, "parse"),
            E::Precondition(_) => (2, "precondition"),
            E::Ceiling(_) => (2, "ceiling"),
            _ => (2, "input"),
        };
        let mut body = json!({ "error": kind, "message": e.to_string() });
        if let E::Parse { pos, .. } = e {
            body["position"] = json!(pos);
        }
        if let E::Certificate { path, .. } = e {
            body["node"] = json!(path);
        }
        Failure { code, body }
    }
}

pub type Outcome = Result<Value, Failure>;

/// Runs one parsed command and renders its stdout text.
pub fn execute(cli: &Cli) -> (u8, String) {
    let (code, value) = match commands::run(cli) {
        Ok(v) => (0, v),
        Err(f) => (f.code, f.body),
    };
    (code, serde_json::to_string(&value).expect("values serialize"))
}

fn budget_ms() -> Option<u64> {
    std::env::var("SBL_BUDGET_MS").ok()?.trim().parse().ok()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.json.clone();
    let (code, text) = match budget_ms() {
        None => execute(&cli),
        Some(ms) => {
            let (tx, rx) = mpsc::channel();
            std::thread::spawn(move || {
                let _ = tx.send(execute(&cli));
            });
            rx.recv_timeout(Duration::from_millis(ms)).unwrap_or_else(|_| {
                let body = json!({ "error": "budget", "message": format!("SBL_BUDGET_MS = {ms} elapsed") });
                (3, body.to_string())
            })
        }
    };
    println!("{text}");
    if let Some(path) = out_path {
        if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
