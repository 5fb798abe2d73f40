//! Command-line front end: file loading, report emission and the corpus
//! runner.

pub mod args;
pub mod commands;
pub mod corpus;
pub mod load;
pub mod report;

use std::io::Write;

use anyhow::Result;
use lpspec::checker::CheckOptions;

use args::{Cli, Command, Format};
use commands::CheckConfig;
use report::Report;

/// Exit code for usage, parse and specification errors.
pub const EXIT_USAGE: i32 = 3;

pub fn execute(cli: &Cli) -> Result<(Report, Format)> {
    Ok(match &cli.command {
        Command::Check(a) => {
            let cfg = CheckConfig {
                mode: a.mode,
                depth: a.depth,
                opts: CheckOptions {
                    witness_cap: a.witness_cap,
                    stable_cap: a.stable_cap,
                },
                stability_check: a.stability_check,
                empirical: a.empirical,
                semantics: a.semantics.map(Into::into),
                budget: a.budget.budget()?,
                allow_nonproper: a.allow_nonproper,
            };
            (commands::check(&a.program, &a.spec, &cfg)?, a.format)
        }
        Command::Oracle(a) => (
            commands::oracle(a.kind, &a.program, a.spec.as_deref(), a.depth, a.stable_cap)?,
            a.format,
        ),
        Command::Run(a) => (
            commands::run(
                &a.program,
                &a.query,
                a.semantics.into(),
                a.budget.budget()?,
                a.depth,
                a.spec.as_deref(),
            )?,
            a.format,
        ),
        Command::Corpus(a) => (corpus::corpus(&a.manifest)?, a.format),
    })
}

/// Runs a parsed command line, writing the report to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn main_with(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    match execute(cli) {
        Ok((report, format)) => {
            let text = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            let _ = out.write_all(text.as_bytes());
            report.exit_code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}
