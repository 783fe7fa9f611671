use std::process::ExitCode;

use clap::Parser;
use hsig::commands::{check_threads, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = std::env::var("HSIG_THREADS").ok();
    let result = check_threads(threads.as_deref()).and_then(|_| run(cli, &mut std::io::stdout().lock()));
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("hsig: {e}");
            ExitCode::from(e.status() as u8)
        }
    }
}
