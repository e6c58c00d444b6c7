use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use linkage_cli::{run, Query};

fn main() -> ExitCode {
    let query = Query::parse();
    let out = run(&query);
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    ExitCode::from(out.code as u8)
}
