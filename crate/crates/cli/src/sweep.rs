//! `sweep`: check a grid of instances and stream CSV rows, one per
//! configuration, with `#` comment lines for skipped combinations and a
//! closing summary of the minimal safe quorum per instance size.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use anyhow::{bail, Context, Result};
use paxos_explorer::{explore_with, ExploreOptions, Limits, Verdict};
use paxos_model::{ChannelOrder, Config, LearnerMode, ReceiveMode, Variant};

use crate::csvio;
use crate::opts::{self, parse_u8_list};

#[derive(Debug, clap::Args)]
pub struct SweepArgs {
    /// Proposer counts (comma list, e.g. 2 or 2,3).
    #[arg(long)]
    pub proposers: String,
    /// Acceptor counts (comma list).
    #[arg(long)]
    pub acceptors: String,
    /// Quorums per acceptor count: "default" (floor(A/2)+1), "all" (1..=A),
    /// or a comma list.
    #[arg(long, default_value = "default")]
    pub maj: String,
    /// Per-channel capacity: "auto" (= acceptors x proposers) or a number.
    #[arg(long, default_value = "auto")]
    pub cap: String,
    /// Variants to run for every instance (comma list of baseline|optimized).
    #[arg(long, default_value = "baseline")]
    pub variants: String,
    /// Receive discipline for all instances: first | any.
    #[arg(long, default_value = "first", value_parser = opts::parse_receive)]
    pub receive: ReceiveMode,
    /// Channel representation for all instances: sorted | fifo.
    #[arg(long, default_value = "sorted", value_parser = opts::parse_order)]
    pub order: ChannelOrder,
    /// Learner instantiation for all instances: abstract | concrete:N.
    #[arg(long, default_value = "abstract", value_parser = opts::parse_learners)]
    pub learners: LearnerMode,
    /// Explorations to run concurrently. Row contents are deterministic;
    /// with more than one job only their order varies.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Per-exploration state bound (0 = unbounded); an exceeded bound is
    /// recorded in the row and the sweep continues.
    #[arg(long)]
    pub max_states: Option<u64>,
    /// Per-exploration depth bound (0 = unbounded).
    #[arg(long)]
    pub max_depth: Option<u64>,
    /// Per-exploration wall-clock budget in seconds (0 = unbounded).
    #[arg(long)]
    pub time_budget: Option<u64>,
}

enum Item {
    Skip(String),
    Run(Config),
}

fn quorums(spec: &str, acceptors: u8) -> Result<Vec<u8>> {
    match spec {
        "default" => Ok(vec![Config::default_maj(acceptors)]),
        "all" => Ok((1..=acceptors).collect()),
        list => parse_u8_list(list),
    }
}

fn build_items(args: &SweepArgs) -> Result<Vec<Item>> {
    let proposers = parse_u8_list(&args.proposers)?;
    let acceptors = parse_u8_list(&args.acceptors)?;
    let variants: Vec<Variant> = args
        .variants
        .split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(opts::parse_variant)
        .collect::<Result<_>>()?;
    if variants.is_empty() {
        bail!("--variants needs at least one of baseline|optimized");
    }
    let mut items = Vec::new();
    for &p in &proposers {
        for &a in &acceptors {
            for maj in quorums(&args.maj, a)? {
                for &variant in &variants {
                    let mut cfg = Config::new(p, a)
                        .with_maj(maj)
                        .with_variant(variant)
                        .with_receive(args.receive)
                        .with_order(args.order)
                        .with_learners(args.learners);
                    cfg.channel_cap = opts::parse_cap(&args.cap, p, a)?;
                    items.push(match cfg.validate() {
                        Ok(()) => Item::Run(cfg),
                        Err(err) => Item::Skip(format!(
                            "# skipped proposers={p} acceptors={a} maj={maj} variant={}: {err}",
                            opts::variant_name(variant)
                        )),
                    });
                }
            }
        }
    }
    Ok(items)
}

/// Verdict record used for the closing summary: (P, A, maj) -> all rows safe.
type SafetyMap = BTreeMap<(u8, u8), BTreeMap<u8, bool>>;

fn record(map: &mut SafetyMap, cfg: &Config, verdict: Verdict) {
    let all_safe = map
        .entry((cfg.proposers, cfg.acceptors))
        .or_default()
        .entry(cfg.maj)
        .or_insert(true);
    *all_safe &= verdict == Verdict::Safe;
}

fn check(cfg: &Config, limits: &Limits) -> (String, Verdict) {
    let options = ExploreOptions { workers: 1, exhaustive: false };
    let exploration = explore_with(cfg, limits, &options)
        .expect("sweep items are validated before they are queued");
    (csvio::row(cfg, &exploration.report), exploration.report.verdict)
}

pub fn run(args: &SweepArgs) -> Result<i32> {
    let items = build_items(args)?;
    let limits = Limits {
        max_states: args.max_states.unwrap_or(0),
        max_depth: args.max_depth.unwrap_or(0),
        time_budget_secs: args.time_budget.unwrap_or(0),
    };
    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    };

    writeln!(out, "{}", csvio::HEADER)?;
    let mut safety = SafetyMap::new();

    if args.jobs <= 1 {
        for item in &items {
            match item {
                Item::Skip(line) => writeln!(out, "{line}")?,
                Item::Run(cfg) => {
                    let (row, verdict) = check(cfg, &limits);
                    writeln!(out, "{row}")?;
                    record(&mut safety, cfg, verdict);
                }
            }
        }
    } else {
        let mut runs = Vec::new();
        for item in &items {
            match item {
                Item::Skip(line) => writeln!(out, "{line}")?,
                Item::Run(cfg) => runs.push(cfg),
            }
        }
        let next = AtomicUsize::new(0);
        let (sender, receiver) = mpsc::channel();
        std::thread::scope(|scope| -> Result<()> {
            for _ in 0..args.jobs.min(runs.len()) {
                let sender = sender.clone();
                let (next, runs, limits) = (&next, &runs, &limits);
                scope.spawn(move || loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(cfg) = runs.get(i) else { break };
                    let (row, verdict) = check(cfg, limits);
                    // A send error means the writer gave up; just stop.
                    if sender.send((row, (*cfg).clone(), verdict)).is_err() {
                        break;
                    }
                });
            }
            drop(sender);
            for (row, cfg, verdict) in receiver {
                writeln!(out, "{row}")?;
                record(&mut safety, &cfg, verdict);
            }
            Ok(())
        })?;
    }

    for ((p, a), by_maj) in &safety {
        let minimal = by_maj.iter().find(|&(_, &all_safe)| all_safe).map(|(&maj, _)| maj);
        match minimal {
            Some(maj) => writeln!(out, "# minimal safe maj P={p} A={a}: {maj}")?,
            None => writeln!(out, "# minimal safe maj P={p} A={a}: none observed")?,
        }
    }
    out.flush()?;
    Ok(0)
}
