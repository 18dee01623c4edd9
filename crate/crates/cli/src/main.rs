use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = gctk_cli::Cli::parse();
    if let Err(e) = gctk_cli::configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match gctk_cli::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
