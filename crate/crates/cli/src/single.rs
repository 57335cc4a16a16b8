//! `single`: check one instance, print one result row, exit by verdict.

use std::path::PathBuf;

use anyhow::Result;
use paxos_explorer::{explore_with, ExploreOptions, Verdict};
use paxos_model::{ChannelOrder, LearnerMode, ReceiveMode, Variant};
use paxos_reductions::OutcomeSet;

use crate::opts::{self, Settings};
use crate::{csvio, tracefile};

#[derive(Debug, clap::Args)]
pub struct SingleArgs {
    /// Key=value defaults file; explicit flags override it.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Number of proposers (also the number of rounds and of values).
    #[arg(long)]
    pub proposers: Option<u8>,
    /// Number of acceptors.
    #[arg(long)]
    pub acceptors: Option<u8>,
    /// Quorum threshold; defaults to floor(acceptors/2)+1.
    #[arg(long)]
    pub maj: Option<u8>,
    /// Per-channel capacity: a number, or "auto" = acceptors x proposers.
    #[arg(long)]
    pub cap: Option<String>,
    /// Transition relation: baseline | optimized.
    #[arg(long, value_parser = opts::parse_variant)]
    pub variant: Option<Variant>,
    /// Learner instantiation: abstract | concrete:N.
    #[arg(long, value_parser = opts::parse_learners)]
    pub learners: Option<LearnerMode>,
    /// Receive discipline: first (oldest match) | any (every match branches).
    #[arg(long, value_parser = opts::parse_receive)]
    pub receive: Option<ReceiveMode>,
    /// Channel representation: sorted (canonical multiset) | fifo.
    #[arg(long, value_parser = opts::parse_order)]
    pub order: Option<ChannelOrder>,
    /// Search worker threads; 0 means one per CPU. The verdict and counts
    /// are the same for any worker count.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Stop after this many distinct states (0 = unbounded).
    #[arg(long)]
    pub max_states: Option<u64>,
    /// Stop past this search depth (0 = unbounded).
    #[arg(long)]
    pub max_depth: Option<u64>,
    /// Wall-clock budget in seconds (0 = unbounded).
    #[arg(long)]
    pub time_budget: Option<u64>,
    /// Where to write the counterexample trace if the verdict is unsafe.
    #[arg(long, value_name = "PATH")]
    pub trace_out: Option<PathBuf>,
    /// Print the result as a CSV header and row instead of the human line.
    #[arg(long)]
    pub csv: bool,
    /// Keep exploring past the first violation and report how many
    /// violating states and distinct majorities the full space contains.
    #[arg(long)]
    pub exhaustive_violations: bool,
    /// Reproduce the optimized acceptor literally: a fresh prepare updates
    /// rnd but sends no promise (strands proposers; fidelity experiments).
    #[arg(long)]
    pub faithful_optimized_acceptor: bool,
}

impl SingleArgs {
    fn settings(&self) -> Result<Settings> {
        let mut settings = Settings {
            proposers: self.proposers,
            acceptors: self.acceptors,
            maj: self.maj,
            cap: self.cap.clone(),
            variant: self.variant,
            learners: self.learners,
            receive: self.receive,
            order: self.order,
            faithful_optimized_acceptor: self.faithful_optimized_acceptor,
            workers: self.workers,
            max_states: self.max_states,
            max_depth: self.max_depth,
            time_budget: self.time_budget,
        };
        if let Some(path) = &self.config {
            settings.merge_file(&opts::load_key_values(path)?)?;
        }
        Ok(settings)
    }
}

pub fn run(args: &SingleArgs) -> Result<i32> {
    let settings = args.settings()?;
    let (cfg, limits) = settings.resolve()?;
    let options = ExploreOptions {
        workers: settings.workers.unwrap_or(1),
        exhaustive: args.exhaustive_violations,
    };
    let exploration = explore_with(&cfg, &limits, &options)?;
    let report = &exploration.report;

    if args.csv {
        println!("{}", csvio::HEADER);
        println!("{}", csvio::row(&cfg, report));
    } else {
        println!(
            "P={} A={} maj={} cap={} variant={} learners={} receive={} order={}",
            cfg.proposers,
            cfg.acceptors,
            cfg.maj,
            cfg.channel_cap,
            opts::variant_name(cfg.variant),
            opts::learners_name(cfg.learner_mode),
            opts::receive_name(cfg.receive_mode),
            opts::order_name(cfg.order),
        );
        println!(
            "verdict={} states={} transitions={} max_depth={} time_ms={}",
            report.verdict,
            report.states_explored,
            report.transitions_fired,
            report.max_depth,
            report.wall_time_ms,
        );
        if args.exhaustive_violations {
            let majorities: OutcomeSet = exploration.majority_pairs.iter().copied().collect();
            println!(
                "violating-states={} majorities={majorities}",
                exploration.violating_states
            );
        }
    }

    if report.verdict == Verdict::Unsafe {
        let steps = report.trace.as_deref().unwrap_or_default();
        match &args.trace_out {
            Some(path) => {
                tracefile::write_trace(path, &cfg, steps)?;
                if !args.csv {
                    println!("counterexample: {} steps -> {}", steps.len(), path.display());
                }
            }
            None if !args.csv => {
                println!(
                    "counterexample: {} steps (rerun with --trace-out PATH to save it)",
                    steps.len()
                );
            }
            None => {}
        }
    }

    Ok(match report.verdict {
        Verdict::Safe => 0,
        Verdict::Unsafe => 1,
        Verdict::LimitExceeded => 2,
    })
}
