use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use complicial::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.code() as u8);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &out.text),
        None => io::stdout().write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(3);
    }
    ExitCode::from(out.code as u8)
}
