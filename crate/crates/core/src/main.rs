use clap::Parser;

use innerpost::cli::{render, run_command, Cli};

fn main() {
    let cli = Cli::parse();
    let report = run_command(&cli);
    print!("{}", render(&report, cli.format));
    std::process::exit(report.exit_code());
}
