use std::process::ExitCode;

use clap::Parser;
use plectic_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    if out.code == 2 && out.report.is_none() {
        eprint!("{}", out.text);
    } else {
        print!("{}", out.text);
    }
    ExitCode::from(out.code as u8)
}
