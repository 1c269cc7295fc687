// Driving a sweep through the command-line layer and printing the CSV it writes.

use gpahcs::cli::{run, Cli, RunConfig};
use clap::Parser;

pub fn run_example() -> gpahcs::Result<()> {
    let cli = Cli::parse_from(["gpahcs", "stats", "--family", "hermite", "--m", "2", "--p", "1,3", "--zmin", "0.5", "--zmax", "2", "--steps", "4"]);
    let cfg = RunConfig::resolve(&cli)?;
    let (csv, ok) = run(&cfg)?;
    print!("{csv}");
    assert!(ok);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
