use std::process::ExitCode;

use clap::Parser;

use spinvec_cli::{execute, Cli, EXIT_OK, EXIT_USAGE, THREADS_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Ok(value) = std::env::var(THREADS_ENV) {
        let threads = value.trim().parse::<usize>().map_err(|e| e.to_string());
        if let Err(e) = threads.and_then(spinvec::par::set_thread_count) {
            eprintln!("error: {THREADS_ENV}={value:?}: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }

    let (text, code) = execute(&cli);
    if code == EXIT_USAGE {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    if code == EXIT_OK {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(code as u8)
    }
}
