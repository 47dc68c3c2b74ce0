use std::process::ExitCode;

use clap::Parser;
use tripartite_discord_cli::{run, Cli};

fn main() -> ExitCode {
    run(&Cli::parse())
}
