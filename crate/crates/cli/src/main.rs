use std::io::Write;

use anorm_cli::app::{execute, Cli};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    let out = execute(&cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
