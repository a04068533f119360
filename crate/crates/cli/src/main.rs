use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

mod args;
mod commands;
mod raster;

use args::Cli;
use commands::Failure;

const EXIT_CHECKS_FAILED: u8 = 1;
const EXIT_SOLVER: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("cat-ortho: cannot size worker pool: {e}");
            return ExitCode::from(EXIT_CHECKS_FAILED);
        }
    }

    match commands::run(cli.command) {
        Ok(Some(value)) => {
            println!("{value}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(Failure::Solver(e)) => {
            println!("{}", json!({ "error": e.name(), "message": e.to_string() }));
            eprintln!("cat-ortho: {e}");
            ExitCode::from(EXIT_SOLVER)
        }
        Err(Failure::Io(e)) => {
            println!("{}", json!({ "error": "Io", "message": e.to_string() }));
            eprintln!("cat-ortho: {e}");
            ExitCode::from(EXIT_CHECKS_FAILED)
        }
        Err(Failure::Checks(report)) => {
            println!("{report}");
            eprintln!("cat-ortho: verification sweep failed");
            ExitCode::from(EXIT_CHECKS_FAILED)
        }
    }
}
