//! `replay`: re-apply a saved counterexample trace against the transition
//! relation and confirm it ends in a choice-stability violation.

use std::path::PathBuf;

use anyhow::{Context, Result};

use crate::tracefile;

#[derive(Debug, clap::Args)]
pub struct ReplayArgs {
    /// Trace file written by `single --trace-out`.
    #[arg(long, value_name = "PATH")]
    pub trace: PathBuf,
}

pub fn run(args: &ReplayArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.trace)
        .with_context(|| format!("cannot read trace file {}", args.trace.display()))?;
    let (cfg, steps) = tracefile::parse_trace(&text)?;
    match tracefile::replay_steps(&cfg, &steps) {
        Err(mismatch) => {
            eprintln!("replay failed: {mismatch}");
            Ok(1)
        }
        Ok(end) if end.is_violating() => {
            println!(
                "replayed {} steps; the final state violates choice stability",
                steps.len()
            );
            Ok(0)
        }
        Ok(_) => {
            eprintln!("replay failed: the final state does not violate choice stability");
            Ok(1)
        }
    }
}
