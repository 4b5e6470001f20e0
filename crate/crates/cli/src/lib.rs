//! Library half of the `gonchar` binary: argument grammar, result envelope,
//! emitters and the `run` entry point used by `main` and the tests.

pub mod args;
pub mod cache;
pub mod commands;
pub mod svg;
pub mod tables;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use args::{Cli, Command, Format, OutputArgs};
use cache::Cache;
use commands::Outcome;

pub const SCHEMA_VERSION: &str = "1";

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }

    /// I/O problems share the usage code: the invocation named something
    /// that cannot be read or written.
    pub fn io(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub schema_version: String,
    pub command: Vec<String>,
    pub timestamp: String,
    pub status: String,
    pub payload: Value,
}

impl ResultEnvelope {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }
}

/// `SOURCE_DATE_EPOCH` when set, so reruns can be byte-identical; the clock
/// otherwise.
pub fn timestamp() -> String {
    let when = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|s| chrono::DateTime::from_timestamp(s, 0))
        .unwrap_or_else(chrono::Utc::now);
    when.format("%Y-%m-%dT%H:%M:%SZ").to_string()
}

fn output_args(c: &Command) -> &OutputArgs {
    match c {
        Command::Poly { out, .. }
        | Command::Rho { out, .. }
        | Command::Zeros { out, .. }
        | Command::Census { out, .. }
        | Command::Factors { out, .. }
        | Command::Density { out, .. }
        | Command::Verify { out, .. } => out,
    }
}

fn execute(c: &Command) -> Result<Outcome, CliError> {
    let cache = Cache::from_env();
    match c {
        Command::Poly { d, q, .. } => commands::poly(*d, q),
        Command::Rho { d, q, num, .. } => commands::rho(*d, q, num),
        Command::Zeros {
            range, num, svg, ..
        } => commands::zeros(range, num, svg.as_ref(), &cache),
        Command::Census { range, num, .. } => commands::census(range, num, &cache),
        Command::Factors { d, primes, .. } => commands::factors(*d, *primes),
        Command::Density {
            d, r, q, samples, ..
        } => commands::density_cmd(*d, *r, q, *samples),
        Command::Verify { suite, .. } => {
            let checks = verify::run_suite(*suite);
            let passed = checks.iter().all(|c| c.passed);
            let mut text = String::new();
            for c in &checks {
                text.push_str(&format!(
                    "{} {}/{}: {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.suite,
                    c.name,
                    c.detail
                ));
            }
            let failures: Vec<&verify::Check> = checks.iter().filter(|c| !c.passed).collect();
            let payload = json!({ "suite": suite.name(), "checks": checks, "failures": failures });
            Ok(Outcome {
                payload,
                passed,
                csv: None,
                text,
                files: Vec::new(),
            })
        }
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    if path.as_os_str().is_empty() {
        return Err(CliError::io("empty output path"));
    }
    std::fs::write(path, text)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

/// Run one invocation; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|s| s.to_string_lossy().into_owned())
        .collect();
    let out_args = output_args(&cli.command).clone();
    let mut stdout = std::io::stdout().lock();
    let result = execute(&cli.command).and_then(|o| {
        for (path, text) in &o.files {
            write_file(path, text)?;
        }
        Ok(o)
    });
    match result {
        Ok(o) => {
            let env = ResultEnvelope {
                schema_version: SCHEMA_VERSION.into(),
                command: echo,
                timestamp: timestamp(),
                status: if o.passed {
                    "ok"
                } else {
                    "verification-failed"
                }
                .into(),
                payload: o.payload,
            };
            let json = env.to_json();
            if let Some(path) = &out_args.out {
                if let Err(e) = write_file(path, o.csv.as_deref().unwrap_or(&json)) {
                    eprintln!("gonchar: {}", e.message);
                    return e.code;
                }
            }
            let body = match out_args.format {
                Format::Json => json,
                Format::Text => o.text,
                Format::Csv => match o.csv {
                    Some(c) => c,
                    None => {
                        eprintln!("gonchar: this command has no tabular output; use --format json or text");
                        return EXIT_USAGE;
                    }
                },
            };
            let _ = stdout.write_all(body.as_bytes());
            if o.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY
            }
        }
        Err(e) => {
            eprintln!("gonchar: {}", e.message);
            if out_args.format == Format::Json {
                let env = ResultEnvelope {
                    schema_version: SCHEMA_VERSION.into(),
                    command: echo,
                    timestamp: timestamp(),
                    status: "error".into(),
                    payload: json!({ "error": e.message, "exit_code": e.code }),
                };
                let _ = stdout.write_all(env.to_json().as_bytes());
            }
            e.code
        }
    }
}
