mod commands;
mod output;

use clap::Parser;
use commands::Cli;

fn main() {
    // 0 success / all-pass, 1 verification failure, 2 usage error (clap's
    // own convention), 3 runtime math error
    let cli = Cli::parse();
    std::process::exit(commands::run(cli));
}
