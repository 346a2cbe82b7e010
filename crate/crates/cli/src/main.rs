use std::process::ExitCode;

use clap::Parser;
use qtradeoff_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let invocation = std::iter::once("qtradeoff".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &invocation, &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
