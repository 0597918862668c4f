use clap::Parser;
use slap::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("{}", err.line());
        std::process::exit(err.exit_code());
    }
}
