mod cli;
mod commands;
mod corpus;
mod props;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

use cli::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] woundlab::Error),
    #[error("{0}")]
    Verify(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Verify(_) => 3,
        }
    }
}

fn print(cli: &Cli, out: &commands::Output) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
    } else {
        print!("{}", out.text);
    }
}

fn verify_paper(cli: &Cli, corpus_path: Option<&std::path::Path>, seed: u64, no_properties: bool) -> Result<(), CliError> {
    let text = match corpus_path {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
        None => corpus::BUNDLED.to_string(),
    };
    let entries = corpus::parse_corpus(&text)?;
    let start = Instant::now();
    let results = corpus::run_corpus(&entries);
    let properties = if no_properties { Vec::new() } else { props::run_properties(seed) };
    let failed = results.iter().filter(|r| !r.passed()).count() + properties.iter().filter(|p| p.failure.is_some()).count();
    let total = results.len() + properties.len();
    if cli.json {
        let report = json!({
            "entries": corpus::results_json(&results),
            "properties": props::properties_json(&properties),
            "passed": total - failed,
            "failed": failed,
            "total": total,
            "seed": seed,
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        for r in &results {
            if r.passed() {
                println!("PASS  {}", r.name);
            } else {
                println!("FAIL  {}  [{}]", r.name, r.source);
                for m in &r.mismatches {
                    println!("        {m}");
                }
            }
        }
        for p in &properties {
            match &p.failure {
                None => println!("PASS  property: {} ({} samples)", p.name, p.samples),
                Some(msg) => println!("FAIL  property: {}: {msg}", p.name),
            }
        }
        println!("{} of {total} checks passed in {:.2} s", total - failed, start.elapsed().as_secs_f64());
    }
    if failed > 0 {
        Err(CliError::Verify(format!("{failed} of {total} checks failed")))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::VerifyPaper { corpus, seed, no_properties } => verify_paper(&cli, corpus.as_deref(), *seed, *no_properties),
        _ => commands::run(&cli).map(|out| print(&cli, &out)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
