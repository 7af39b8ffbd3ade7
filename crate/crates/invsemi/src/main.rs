use std::process::ExitCode;

use clap::Parser;

use invsemi::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = run(&cli);
    if code == 2 {
        eprint!("{text}");
        return ExitCode::from(2);
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code as u8)
}
