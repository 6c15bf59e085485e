//! Command-line front end: parses arguments, dispatches to the engine and
//! prints a text or JSON report.
//!
//! Exit codes: 0 answered or verified, 1 refuted or verification failed,
//! 2 usage error or computational limit.

mod args;
mod commands;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

pub use args::{parse_args, CommandRequest, Format, UsageError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const HELP: &str = "\
usage: splitfield <command> [args] [--format text|json]

commands:
  factor <poly>                        factor over Q
  galois <poly>                        Galois group, degree 1..5
  splitting-degree <poly> [--cap N]    degree of the splitting field
  sturm <poly>                         number of distinct real roots
  cyclotomic <n>                       the n-th cyclotomic polynomial
  member <poly> --in <poly>            whether a root of the first lies in Q[x]/(second)
  witness <family> [--emit FILE]       build and replay a witness certificate
  verify <file>                        replay a certificate file
  specialize <f(x,y)> --range a..b [--jobs N]
                                       classify f(b, y) for integers b
  qab <poly>                           whether a root lies in Q_ab
  qsolv <poly>                         whether a root is expressible by radicals
  radical-tower <n_max> [--cap N]      is sqrt(2) in the splitting field of x^3-2, ..., x^n_max-2
                                       (n_max 3 or 4)

polynomials:
  poly  := [sign] term (sign term)*
  term  := coeff | coeff '*' mono | mono
  mono  := x ['^' digits]        (x and y for specialize)
  coeff := digits ['/' digits]
  e.g. \"x^5 - 4*x + 2\", \"1/2*x + 1/3\", \"y^2 - x\"

families:
  finite: <poly>; <poly>; ...
  degree = k
  degree <= k [p=P] [prefix: <poly>; ...]
  radical-tower base=B n=A..C
  qab
  qsolv

exit codes: 0 answered/verified, 1 refuted/failed, 2 usage or limit error
";

/// What a command produced: an exit code and its report in both formats.
pub struct Report {
    pub code: i32,
    pub text: String,
    pub json: serde_json::Value,
}

/// Errors that end a command with exit code 2.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input; the grammar help is printed.
    Usage(String),
    /// A computational limit or an I/O failure.
    Limit(String),
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e.0)
    }
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`, and returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let req = match parse_args(args) {
        Ok(r) => r,
        Err(e) => return usage_exit(err, &e.0),
    };
    if req.help || req.subcommand.is_empty() || req.subcommand == "help" {
        let _ = out.write_all(HELP.as_bytes());
        return if req.help || req.subcommand == "help" {
            EXIT_OK
        } else {
            EXIT_USAGE
        };
    }
    let result = catch_unwind(AssertUnwindSafe(|| commands::dispatch(&req)));
    match result {
        Ok(Ok(report)) => {
            let body = match req.format {
                Format::Text => report.text,
                Format::Json => serde_json::to_string(&report.json).expect("JSON values serialize"),
            };
            let _ = writeln!(out, "{body}");
            report.code
        }
        Ok(Err(CliError::Usage(msg))) => usage_exit(err, &msg),
        Ok(Err(CliError::Limit(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal failure on this input");
            EXIT_USAGE
        }
    }
}

fn usage_exit(err: &mut dyn Write, msg: &str) -> i32 {
    let _ = writeln!(err, "error: {msg}\n\n{HELP}");
    EXIT_USAGE
}
