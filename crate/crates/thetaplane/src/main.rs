use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    thetaplane::run(thetaplane::Cli::parse())
}
