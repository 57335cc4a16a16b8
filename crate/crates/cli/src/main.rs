//! `paxos-mc` — exhaustive checker for single-decree Paxos instances.
//!
//! Four subcommands: `single` checks one instance and exits by verdict
//! (0 safe, 1 unsafe, 2 limit exceeded), `sweep` streams a CSV over a
//! parameter grid, `checks` runs the reduction/equivalence property suites
//! (exit 3 when limits leave a property undecided), and `replay` re-applies
//! a saved counterexample. Exit 64 reports bad usage: unknown flags,
//! invalid instances, unreadable files.

use clap::{Parser, Subcommand};
use paxos_mc::{checks, replay, single, sweep};

#[derive(Parser)]
#[command(
    name = "paxos-mc",
    version,
    about = "Exhaustive safety checker for single-decree Paxos instances",
    long_about = "Explores every interleaving of a finite Paxos instance by breadth-first \
                  search and reports whether choice stability (a chosen value is never \
                  contradicted by a later majority) can be violated, with a replayable \
                  counterexample trace when it can."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one instance and exit 0 (safe), 1 (unsafe), or 2 (limit hit).
    Single(single::SingleArgs),
    /// Check a parameter grid and stream one CSV row per instance.
    Sweep(sweep::SweepArgs),
    /// Run the learner/proposer-reduction and variant-equivalence suites.
    Checks(checks::ChecksArgs),
    /// Re-apply a saved counterexample trace and confirm the violation.
    Replay(replay::ReplayArgs),
}

const EXIT_USAGE: i32 = 64;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version arrive here too; they are not failures.
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let result = match &cli.command {
        Command::Single(args) => single::run(args),
        Command::Sweep(args) => sweep::run(args),
        Command::Checks(args) => checks::run(args),
        Command::Replay(args) => replay::run(args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(EXIT_USAGE);
        }
    }
}
