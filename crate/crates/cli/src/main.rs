//! `qcentral`: command-line front end for the exact engine.
//!
//! Every subcommand prints human-readable lines ending in a verdict, or with
//! `--json` a single report document. Exit status is 0 on PASS, 2 on a
//! mathematical FAIL and 1 on usage or arithmetic errors.

mod cli;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qcentral_core::report::Verdict;

use crate::cli::Cli;
use crate::commands::Outcome;

fn render(outcome: &Outcome, json: bool) -> String {
    if json {
        format!("{}\n", outcome.report.to_json())
    } else {
        let mut text = outcome.lines.join("\n");
        text.push('\n');
        text
    }
}

fn emit(text: &str, out: Option<&std::path::Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let common = cli.command.common().clone();
    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&render(&outcome, common.json), common.out.as_deref()) {
        eprintln!("error[E100_IO]: cannot write output: {e}");
        return ExitCode::from(1);
    }
    match outcome.report.verdict {
        Verdict::Pass => ExitCode::SUCCESS,
        Verdict::Fail => ExitCode::from(2),
    }
}
