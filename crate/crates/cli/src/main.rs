//! Script front end: parses a declaration/query script, runs the queries
//! against the engine and prints a text or machine report.
//!
//! Exit codes: 0 success, 1 usage, 2 script or engine error, 3 oracle
//! disagreement.

mod ast;
mod eval;
mod lex;
mod parse;
mod report;

use std::process::ExitCode;

use eval::{RunFlags, RunStatus};

const USAGE: &str = "usage: serrecm [--seed <u64>] [--budget <n>] [--format text|machine] [--oracle] <script>";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut flags = RunFlags::default();
    let mut path: Option<String> = None;
    let mut i = 0;
    while i < args.len() {
        match args[i].as_str() {
            "--seed" => {
                i += 1;
                match args.get(i).and_then(|v| v.parse::<u64>().ok()) {
                    Some(v) => flags.seed = v,
                    None => return usage_error("--seed expects an unsigned integer"),
                }
            }
            "--budget" => {
                i += 1;
                match args.get(i).and_then(|v| v.parse::<usize>().ok()) {
                    Some(v) if v > 0 => flags.budget = v,
                    _ => return usage_error("--budget expects a positive integer"),
                }
            }
            "--format" => {
                i += 1;
                match args.get(i).map(|s| s.as_str()) {
                    Some("text") => flags.machine = false,
                    Some("machine") => flags.machine = true,
                    _ => return usage_error("--format expects text or machine"),
                }
            }
            "--oracle" => flags.oracle = true,
            "--help" | "-h" => {
                println!("{USAGE}");
                return ExitCode::SUCCESS;
            }
            other if other.starts_with('-') => {
                return usage_error(&format!("unknown flag {other}"));
            }
            other => {
                if path.is_some() {
                    return usage_error("exactly one script file is expected");
                }
                path = Some(other.to_string());
            }
        }
        i += 1;
    }
    let Some(path) = path else {
        return usage_error("a script file is required");
    };
    let source = match std::fs::read_to_string(&path) {
        Ok(s) => s,
        Err(e) => return usage_error(&format!("cannot read {path}: {e}")),
    };
    let script = match parse::parse(&source) {
        Ok(s) => s,
        Err(diag) => {
            eprintln!("{diag}");
            return ExitCode::from(2);
        }
    };
    match eval::run(&script, &flags) {
        Ok(outcome) => {
            if flags.machine {
                print!("{}", outcome.report.render_machine());
            } else {
                print!("{}", outcome.text);
            }
            match outcome.status {
                RunStatus::Ok => ExitCode::SUCCESS,
                RunStatus::EngineError => ExitCode::from(2),
                RunStatus::OracleDisagreement => {
                    eprintln!("error: oracle cross-check disagreed with the engine");
                    ExitCode::from(3)
                }
            }
        }
        Err(diag) => {
            eprintln!("{diag}");
            ExitCode::from(2)
        }
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    eprintln!("{USAGE}");
    ExitCode::FAILURE
}
