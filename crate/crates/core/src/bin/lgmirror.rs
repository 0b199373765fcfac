use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lgmirror::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, code) = run(&cli);
    if code == 0 || cli.json {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
