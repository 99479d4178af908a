use std::process::ExitCode;

use clap::Parser;
use pcircle_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match pcircle_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
