//! Binary entry point: parse arguments, dispatch, map errors to exit codes.

use clap::Parser;

use cusp_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.code != 0 {
                std::process::exit(outcome.code);
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
