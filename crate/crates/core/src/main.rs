use std::process::ExitCode;

use clap::Parser;
use hyperbolica::cli::{run, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    ExitCode::from(run(&args) as u8)
}
