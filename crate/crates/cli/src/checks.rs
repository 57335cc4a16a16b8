//! `checks`: the reduction and equivalence property suites, one line per
//! property instance. Exit 0 when everything passes, 1 on any failure, 3
//! when resource limits left at least one property undecided.

use std::collections::BTreeSet;

use anyhow::{bail, Result};
use paxos_explorer::{explore, Limits, Verdict};
use paxos_model::{Config, Variant};
use paxos_reductions::{
    check_learner_reduction, check_proposer_reduction, observable_outcomes, ProposerReduction,
    ReductionError,
};

use crate::opts::parse_u8_list;

#[derive(Debug, clap::Args)]
pub struct ChecksArgs {
    /// Suites to run: all, or a comma list of learner|proposer|equivalence.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Acceptor counts the grids range over (comma list).
    #[arg(long, default_value = "2,3")]
    pub acceptors: String,
    /// Largest proposer count for the proposer-reduction sweep.
    #[arg(long, default_value_t = 3)]
    pub max_p: u8,
    /// Per-exploration state bound (0 = unbounded).
    #[arg(long)]
    pub max_states: Option<u64>,
    /// Per-exploration depth bound (0 = unbounded).
    #[arg(long)]
    pub max_depth: Option<u64>,
    /// Per-exploration wall-clock budget in seconds (0 = unbounded).
    #[arg(long)]
    pub time_budget: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Inconclusive,
}

struct Tally {
    passed: u32,
    failed: u32,
    inconclusive: u32,
}

impl Tally {
    fn new() -> Tally {
        Tally { passed: 0, failed: 0, inconclusive: 0 }
    }
}

/// One learner-mode agreement check: the single abstract learner and two
/// concrete learners must give the same verdict.
fn learner_suite(acceptors: &[u8], limits: &Limits, tally: &mut Tally) -> Result<()> {
    for &a in acceptors {
        for maj in 1..=a {
            let cfg = Config::new(2, a).with_maj(maj);
            let outcome = check_learner_reduction(&cfg, limits)?;
            let detail = format!(
                "abstract={} concrete:2={}",
                outcome.abstract_verdict, outcome.concrete_verdict
            );
            let status = match outcome.holds() {
                Some(true) => Status::Pass,
                Some(false) => Status::Fail,
                None => Status::Inconclusive,
            };
            report(tally, status, format!("[learner] P=2 A={a} maj={maj} (baseline)"), detail);
        }
    }
    Ok(())
}

/// One proposer-growth check: Safe at P=2 must imply Safe up to `max_p`.
/// Run on the optimized variant, whose larger instances stay tractable.
fn proposer_suite(acceptors: &[u8], max_p: u8, limits: &Limits, tally: &mut Tally) -> Result<()> {
    for &a in acceptors {
        for maj in 1..=a {
            let template = Config::new(2, a).with_maj(maj).with_variant(Variant::Optimized);
            let outcome = check_proposer_reduction(&template, max_p, limits)?;
            let (status, detail) = match &outcome {
                ProposerReduction::Holds { verdicts } if verdicts == &[(2, Verdict::Unsafe)] => {
                    (Status::Pass, "vacuous (already unsafe at P=2)".to_string())
                }
                ProposerReduction::Holds { .. } => {
                    (Status::Pass, format!("safe for P=2..={max_p}"))
                }
                ProposerReduction::Falsified { proposers, .. } => {
                    (Status::Fail, format!("safe at P=2 but unsafe at P={proposers}"))
                }
                ProposerReduction::Inconclusive { proposers } => {
                    (Status::Inconclusive, format!("P={proposers} hit a resource limit"))
                }
            };
            report(tally, status, format!("[proposer] A={a} maj={maj} (optimized)"), detail);
        }
    }
    Ok(())
}

/// One variant-equivalence check: baseline and optimized must agree on the
/// verdict and on the set of (round, value) majorities the instance can
/// ever produce.
fn equivalence_suite(acceptors: &[u8], limits: &Limits, tally: &mut Tally) -> Result<()> {
    for &a in acceptors {
        for maj in 1..=a {
            let baseline = Config::new(2, a).with_maj(maj);
            let optimized = baseline.clone().with_variant(Variant::Optimized);
            let label = format!("[equivalence] P=2 A={a} maj={maj}");
            let bv = explore(&baseline, limits)?.verdict;
            let ov = explore(&optimized, limits)?.verdict;
            if bv == Verdict::LimitExceeded || ov == Verdict::LimitExceeded {
                report(tally, Status::Inconclusive, label, "a verdict hit a resource limit".into());
                continue;
            }
            let outcomes = (observable_outcomes(&baseline, limits), observable_outcomes(&optimized, limits));
            let (bo, oo) = match outcomes {
                (Ok(bo), Ok(oo)) => (bo, oo),
                (Err(ReductionError::Incomplete { .. }), _)
                | (_, Err(ReductionError::Incomplete { .. })) => {
                    report(
                        tally,
                        Status::Inconclusive,
                        label,
                        "outcome collection hit a resource limit".into(),
                    );
                    continue;
                }
                (Err(ReductionError::Config(err)), _) | (_, Err(ReductionError::Config(err))) => {
                    return Err(err.into())
                }
            };
            if bv == ov && bo == oo {
                report(
                    tally,
                    Status::Pass,
                    label,
                    format!("verdict={bv}, outcome sets agree ({} pairs)", bo.len()),
                );
            } else if bv != ov {
                report(tally, Status::Fail, label, format!("verdicts differ: {bv} vs {ov}"));
            } else {
                report(tally, Status::Fail, label, format!("outcome sets differ: {bo} vs {oo}"));
            }
        }
    }
    Ok(())
}

fn report(tally: &mut Tally, status: Status, label: String, detail: String) {
    let word = match status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Inconclusive => "inconclusive",
    };
    match status {
        Status::Pass => tally.passed += 1,
        Status::Fail => tally.failed += 1,
        Status::Inconclusive => tally.inconclusive += 1,
    }
    println!("{label}: {word} — {detail}");
}

pub fn run(args: &ChecksArgs) -> Result<i32> {
    let acceptors = parse_u8_list(&args.acceptors)?;
    let limits = Limits {
        max_states: args.max_states.unwrap_or(0),
        max_depth: args.max_depth.unwrap_or(0),
        time_budget_secs: args.time_budget.unwrap_or(0),
    };
    let suites: BTreeSet<&str> = args.suite.split(',').map(str::trim).collect();
    for suite in &suites {
        if !matches!(*suite, "all" | "learner" | "proposer" | "equivalence") {
            bail!("unknown suite {suite:?} (expected all|learner|proposer|equivalence)");
        }
    }
    let want = |name: &str| suites.contains("all") || suites.contains(name);

    let mut tally = Tally::new();
    if want("learner") {
        learner_suite(&acceptors, &limits, &mut tally)?;
    }
    if want("proposer") {
        proposer_suite(&acceptors, args.max_p, &limits, &mut tally)?;
    }
    if want("equivalence") {
        equivalence_suite(&acceptors, &limits, &mut tally)?;
    }
    println!(
        "checks: {} passed, {} failed, {} inconclusive",
        tally.passed, tally.failed, tally.inconclusive
    );
    Ok(if tally.failed > 0 {
        1
    } else if tally.inconclusive > 0 {
        3
    } else {
        0
    })
}
