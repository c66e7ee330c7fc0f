use clap::Parser;

use coupling_modes::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("coupling-modes: {e}");
        std::process::exit(e.exit_code());
    }
}
