//! Release gate: each test verifies one headline claim about the checker
//! at its stated tolerance and prints one `[acceptance] name: PASS/FAIL`
//! line (visible with `cargo test -- --nocapture`; always in failure
//! output). The claims cover the two verdict matrices, the quorum formula,
//! the canonical-encoding reduction, variant equivalence, the two model
//! reductions, counterexample integrity, and worker-count determinism.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Mutex, OnceLock};

use paxos_explorer::{
    explore, explore_with, replay_trace, ExploreOptions, Limits, Report, Verdict,
};
use paxos_model::{ChannelOrder, Config, Variant};
use paxos_reductions::{
    check_learner_reduction, check_proposer_reduction, observable_outcomes, ProposerReduction,
};

/// Unbounded limits: acceptance instances must close their state spaces.
fn unbounded() -> Limits {
    Limits::default()
}

/// Exploration cache so the matrix tests and the tests that reuse their
/// instances (minimal quorum, counterexample replay) explore each
/// configuration once per test-suite run.
fn report_for(cfg: &Config) -> Report {
    static CACHE: OnceLock<Mutex<HashMap<Config, Report>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(cfg) {
        return hit.clone();
    }
    let report = explore(cfg, &unbounded()).expect("acceptance instances validate");
    cache.lock().unwrap().insert(cfg.clone(), report.clone());
    report
}

fn conclude(name: &str, passed: bool, details: &str) {
    let word = if passed { "PASS" } else { "FAIL" };
    println!("[acceptance] {name}: {word} — {details}");
    assert!(passed, "[acceptance] {name}: FAIL — {details}");
}

fn baseline(p: u8, a: u8, maj: u8) -> Config {
    Config::new(p, a).with_maj(maj)
}

fn optimized(p: u8, a: u8, maj: u8) -> Config {
    Config::new(p, a).with_maj(maj).with_variant(Variant::Optimized)
}

const BASELINE_MATRIX: [(u8, u8, u8, Verdict); 7] = [
    (2, 2, 1, Verdict::Unsafe),
    (2, 2, 2, Verdict::Safe),
    (2, 3, 1, Verdict::Unsafe),
    (2, 3, 2, Verdict::Safe),
    (2, 4, 1, Verdict::Unsafe),
    (2, 4, 2, Verdict::Unsafe),
    (2, 4, 3, Verdict::Safe),
];

const OPTIMIZED_MATRIX: [(u8, u8, u8, Verdict); 6] = [
    (2, 2, 2, Verdict::Safe),
    (2, 3, 2, Verdict::Safe),
    (2, 4, 3, Verdict::Safe),
    (3, 3, 2, Verdict::Safe),
    (2, 5, 2, Verdict::Unsafe),
    (5, 3, 1, Verdict::Unsafe),
];

#[test]
fn acceptance_baseline_verdict_matrix() {
    const NAME: &str = "baseline verdict matrix";
    const BUDGET_MS: u64 = 300_000;
    let mut total_ms = 0;
    let mut mismatches = Vec::new();
    for (p, a, maj, want) in BASELINE_MATRIX {
        let report = report_for(&baseline(p, a, maj));
        total_ms += report.wall_time_ms;
        if report.verdict != want {
            mismatches.push(format!("({p},{a},maj={maj}) got {} want {want}", report.verdict));
        }
    }
    let passed = mismatches.is_empty() && total_ms <= BUDGET_MS;
    let details = if mismatches.is_empty() {
        format!("all 7 verdicts exact; total {total_ms} ms within {BUDGET_MS} ms")
    } else {
        format!("mismatches: {}", mismatches.join("; "))
    };
    conclude(NAME, passed, &details);
}

#[test]
fn acceptance_optimized_verdict_matrix() {
    const NAME: &str = "optimized verdict matrix";
    const BIG_BUDGET_MS: u64 = 600_000;
    let mut big_ms = 0; // the two instances granted the larger budget
    let mut mismatches = Vec::new();
    for (p, a, maj, want) in OPTIMIZED_MATRIX {
        let report = report_for(&optimized(p, a, maj));
        if (p, a) == (3, 3) || (p, a) == (2, 5) {
            big_ms += report.wall_time_ms;
        }
        if report.verdict != want {
            mismatches.push(format!("({p},{a},maj={maj}) got {} want {want}", report.verdict));
        }
    }
    let passed = mismatches.is_empty() && big_ms <= BIG_BUDGET_MS;
    let details = if mismatches.is_empty() {
        format!("all 6 verdicts exact; (3,3)+(2,5) took {big_ms} ms within {BIG_BUDGET_MS} ms")
    } else {
        format!("mismatches: {}", mismatches.join("; "))
    };
    conclude(NAME, passed, &details);
}

#[test]
fn acceptance_minimal_safe_majority() {
    const NAME: &str = "minimal safe majority";
    let mut observed = Vec::new();
    let mut passed = true;
    for a in [2u8, 3, 4] {
        let minimal = (1..=a).find(|&maj| report_for(&baseline(2, a, maj)).verdict == Verdict::Safe);
        let expected = a / 2 + 1;
        passed &= minimal == Some(expected);
        observed.push(format!(
            "A={a}: minimal safe maj {} (expected {expected})",
            minimal.map_or("none".to_string(), |m| m.to_string())
        ));
    }
    conclude(NAME, passed, &observed.join("; "));
}

#[test]
fn acceptance_sorted_canonicalization_reduction() {
    const NAME: &str = "sorted-channel canonicalization reduction";
    let sorted_cfg = baseline(2, 3, 2);
    let fifo_cfg = sorted_cfg.clone().with_order(ChannelOrder::Fifo);
    let sorted = report_for(&sorted_cfg);
    let fifo = report_for(&fifo_cfg);
    let ratio = fifo.states_explored as f64 / sorted.states_explored as f64;
    let passed = sorted.verdict == Verdict::Safe
        && fifo.verdict == Verdict::Safe
        && sorted.states_explored < fifo.states_explored;
    conclude(
        NAME,
        passed,
        &format!(
            "(2,3,maj=2): sorted {} states vs fifo {} states, reduction ratio {ratio:.2}",
            sorted.states_explored, fifo.states_explored
        ),
    );
}

#[test]
fn acceptance_variant_outcome_equivalence() {
    const NAME: &str = "variant outcome equivalence";
    let mut passed = true;
    let mut details = String::new();
    for (a, maj) in [(2u8, 1u8), (2, 2), (3, 1), (3, 2)] {
        let base_cfg = baseline(2, a, maj);
        let opt_cfg = optimized(2, a, maj);
        let verdicts = (report_for(&base_cfg).verdict, report_for(&opt_cfg).verdict);
        let outcomes = (
            observable_outcomes(&base_cfg, &unbounded()).expect("space closes"),
            observable_outcomes(&opt_cfg, &unbounded()).expect("space closes"),
        );
        let agree = verdicts.0 == verdicts.1 && outcomes.0 == outcomes.1;
        passed &= agree;
        let _ = write!(
            details,
            "(2,{a},maj={maj}): {}; ",
            if agree {
                format!("verdict {} and {} outcome pairs agree", verdicts.0, outcomes.0.len())
            } else {
                format!(
                    "DISAGREE verdicts {}/{} outcomes {}/{}",
                    verdicts.0, verdicts.1, outcomes.0, outcomes.1
                )
            }
        );
    }
    conclude(NAME, passed, details.trim_end_matches("; "));
}

#[test]
fn acceptance_learner_reduction() {
    const NAME: &str = "learner reduction (abstract = two concrete)";
    let mut passed = true;
    let mut lines = Vec::new();
    for a in [2u8, 3] {
        for maj in 1..=a {
            let outcome = check_learner_reduction(&baseline(2, a, maj), &unbounded())
                .expect("grid instances validate");
            passed &= outcome.holds() == Some(true);
            lines.push(format!(
                "(2,{a},maj={maj}) abstract={} concrete:2={}",
                outcome.abstract_verdict, outcome.concrete_verdict
            ));
        }
    }
    conclude(NAME, passed, &lines.join("; "));
}

#[test]
fn acceptance_proposer_reduction() {
    const NAME: &str = "proposer reduction (safe at 2 implies safe at 3)";
    let mut passed = true;
    let mut lines = Vec::new();
    for a in [2u8, 3] {
        for maj in 1..=a {
            let outcome = check_proposer_reduction(&optimized(2, a, maj), 3, &unbounded())
                .expect("grid instances validate");
            passed &= outcome.holds() == Some(true);
            let summary = match &outcome {
                ProposerReduction::Holds { verdicts } if verdicts.len() == 1 => {
                    "holds vacuously".to_string()
                }
                ProposerReduction::Holds { .. } => "holds".to_string(),
                other => format!("{other:?}"),
            };
            lines.push(format!("(A={a},maj={maj}) {summary}"));
        }
    }
    conclude(NAME, passed, &lines.join("; "));
}

#[test]
fn acceptance_counterexample_replay() {
    const NAME: &str = "counterexample integrity";
    let unsafe_configs: Vec<Config> = BASELINE_MATRIX
        .iter()
        .filter(|&&(_, _, _, v)| v == Verdict::Unsafe)
        .map(|&(p, a, maj, _)| baseline(p, a, maj))
        .chain(
            OPTIMIZED_MATRIX
                .iter()
                .filter(|&&(_, _, _, v)| v == Verdict::Unsafe)
                .map(|&(p, a, maj, _)| optimized(p, a, maj)),
        )
        .collect();
    let mut replayed = 0usize;
    let mut problems = Vec::new();
    for cfg in &unsafe_configs {
        let report = report_for(cfg);
        if report.verdict != Verdict::Unsafe {
            problems.push(format!("{cfg:?} expected unsafe, got {}", report.verdict));
            continue;
        }
        let Some(trace) = &report.trace else {
            problems.push(format!("({},{}) has no trace", cfg.proposers, cfg.acceptors));
            continue;
        };
        match replay_trace(cfg, trace) {
            Ok(end) if end.is_violating() => replayed += 1,
            Ok(_) => problems.push(format!(
                "({},{},maj={}) trace replays to a non-violating state",
                cfg.proposers, cfg.acceptors, cfg.maj
            )),
            Err(err) => problems.push(format!(
                "({},{},maj={}) trace does not replay: {err}",
                cfg.proposers, cfg.acceptors, cfg.maj
            )),
        }
    }

    // One counterexample also goes through the binary and its file format:
    // write the trace with `single --trace-out`, verify with `replay`.
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("acceptance.trace");
    let produce = std::process::Command::new(env!("CARGO_BIN_EXE_paxos-mc"))
        .args(["single", "--proposers", "2", "--acceptors", "2", "--maj", "1", "--trace-out"])
        .arg(&path)
        .output()
        .expect("binary runs");
    let verify = std::process::Command::new(env!("CARGO_BIN_EXE_paxos-mc"))
        .args(["replay", "--trace"])
        .arg(&path)
        .output()
        .expect("binary runs");
    let file_round_trip = produce.status.code() == Some(1) && verify.status.code() == Some(0);
    if !file_round_trip {
        problems.push("binary trace-file round trip failed".to_string());
    }

    let passed = problems.is_empty() && replayed == unsafe_configs.len();
    let details = if passed {
        format!(
            "{replayed}/{} unsafe verdicts produced traces that replay to violations; \
             file round trip through the binary ok",
            unsafe_configs.len()
        )
    } else {
        problems.join("; ")
    };
    conclude(NAME, passed, &details);
}

#[test]
fn acceptance_worker_determinism() {
    const NAME: &str = "worker-count determinism";
    let mut passed = true;
    let mut lines = Vec::new();
    for (a, maj) in [(2u8, 1u8), (2, 2), (3, 1), (3, 2)] {
        let cfg = baseline(2, a, maj);
        let single = explore_with(&cfg, &unbounded(), &ExploreOptions { workers: 1, exhaustive: false })
            .expect("valid");
        let multi = explore_with(&cfg, &unbounded(), &ExploreOptions { workers: 4, exhaustive: false })
            .expect("valid");
        let agree = single.report.verdict == multi.report.verdict
            && single.report.states_explored == multi.report.states_explored
            && single.report.transitions_fired == multi.report.transitions_fired
            && single.report.max_depth == multi.report.max_depth;
        passed &= agree;
        lines.push(format!(
            "(2,{a},maj={maj}) 1-worker vs 4-worker: verdict {} states {}{}",
            single.report.verdict,
            single.report.states_explored,
            if agree { "" } else { " MISMATCH" }
        ));
    }
    conclude(NAME, passed, &lines.join("; "));
}
