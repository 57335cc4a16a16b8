//! Layered breadth-first search over the model's transition graph.
//!
//! States are explored layer by layer from the initial state. A layer is
//! always finished before the verdict is decided, so the reported
//! counterexample has minimal depth and the same trace is found no matter
//! how the layer's work was scheduled. Parallelism follows the same rule:
//! frontier chunks are expanded in parallel but their successors are
//! inserted sequentially in frontier order, making verdict, state count,
//! and trace independent of the worker count.

use std::collections::BTreeSet;
use std::ops::Range;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use paxos_model::{
    apply, describe_transition, enabled_transitions, initial_state, majority_event, Config,
    ConfigError, GlobalState, TransitionId,
};

use crate::encode::Codec;
use crate::visited::VisitedSet;

/// Outcome of an exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// The reachable state space is closed and violation-free.
    Safe,
    /// A reachable state violates the safety property; a trace exists.
    Unsafe,
    /// A resource limit stopped the search before closure — never reported
    /// as Safe.
    LimitExceeded,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Safe => "safe",
            Verdict::Unsafe => "unsafe",
            Verdict::LimitExceeded => "limit-exceeded",
        })
    }
}

/// Resource bounds for one exploration. Zero means unbounded. Exceeding any
/// bound yields [`Verdict::LimitExceeded`] unless a violation was already
/// found (a found violation is definitive: the verdict is then Unsafe).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    /// Stop once this many distinct states have been stored.
    pub max_states: u64,
    /// Explore no state deeper than this many transitions from the start.
    pub max_depth: u64,
    /// Wall-clock budget in seconds. The only limit whose trigger point is
    /// not deterministic; verdicts under a tight time budget may vary
    /// between runs (never between Safe and Unsafe — only how far the
    /// search got).
    pub time_budget_secs: u64,
}

/// One rendered counterexample step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// The transition as replayable by the model (slot indices included).
    pub tid: TransitionId,
    /// `"proposer 0"`, `"acceptor 1"`, `"learner 0"`.
    pub actor: String,
    /// Stable rule name.
    pub rule: &'static str,
    /// The message the step consumed, read, or broadcast.
    pub message: String,
    /// `key: old -> new` changes to the actor's locals.
    pub locals: String,
}

/// Result of one exploration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub verdict: Verdict,
    /// Distinct states stored, the initial state included.
    pub states_explored: u64,
    /// Transitions applied during expansion (self-loops included).
    pub transitions_fired: u64,
    /// Deepest layer that contained a new state.
    pub max_depth: u64,
    pub wall_time_ms: u64,
    /// Present iff the verdict is Unsafe: a minimal-depth violating run.
    pub trace: Option<Vec<TraceStep>>,
}

/// Knobs that do not change what is explored, only how.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreOptions {
    /// Worker threads for frontier expansion. 1 = in-thread sequential
    /// (the default), 0 = one per CPU. The verdict and every reported
    /// count are identical for any value.
    pub workers: usize,
    /// Keep exploring after the first violation: the full reachable space
    /// is closed and every violating state is counted.
    pub exhaustive: bool,
}

impl Default for ExploreOptions {
    fn default() -> ExploreOptions {
        ExploreOptions { workers: 1, exhaustive: false }
    }
}

/// A [`Report`] plus the instrumentation exhaustive callers need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exploration {
    pub report: Report,
    /// Distinct violating states seen (1 is enough for a verdict; the
    /// exhaustive mode counts them all).
    pub violating_states: u64,
    /// Every (round, value) pair that reached a learner majority in any
    /// explored transition.
    pub majority_pairs: BTreeSet<(u8, i16)>,
}

/// Explore `cfg`'s state space breadth-first until a violation, closure, or
/// a limit. See [`explore_with`] for the instrumented form.
pub fn explore(cfg: &Config, limits: &Limits) -> Result<Report, ConfigError> {
    explore_with(cfg, limits, &ExploreOptions::default()).map(|e| e.report)
}

/// Frontier chunk size: expansion results are buffered and inserted one
/// chunk at a time, which bounds memory and gives limit checks (and
/// parallel scheduling) deterministic boundaries.
const CHUNK: usize = 1024;

struct Successor {
    tid: TransitionId,
    bytes: Vec<u8>,
    violating: bool,
    majority: Option<(u8, i16)>,
}

/// Explore `cfg`'s state space and return the full instrumentation.
pub fn explore_with(
    cfg: &Config,
    limits: &Limits,
    opts: &ExploreOptions,
) -> Result<Exploration, ConfigError> {
    cfg.validate()?;
    let start = Instant::now();
    let deadline = (limits.time_budget_secs > 0)
        .then(|| start + Duration::from_secs(limits.time_budget_secs));
    let pool = match opts.workers {
        1 => None,
        n => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("worker pool construction"),
        ),
    };

    let codec = Codec::new(cfg);
    let mut visited = VisitedSet::new(codec.stride());
    let init = initial_state(cfg)?;
    let (root, _) = visited.get_or_insert(&codec.encode(&init));

    // parents[id] = (predecessor id, transition fired), undefined for root.
    let mut parents: Vec<(u32, TransitionId)> =
        vec![(u32::MAX, TransitionId::PrepareSend { proposer: 0 })];
    let mut first_violation: Option<u32> = None;
    let mut violating_states: u64 = 0;
    let mut majority_pairs: BTreeSet<(u8, i16)> = BTreeSet::new();
    let mut transitions_fired: u64 = 0;
    let mut max_depth: u64 = 0;
    let mut limit_hit = false;

    if init.is_violating() {
        first_violation = Some(root);
        violating_states = 1;
    }

    let mut frontier: Range<u32> = root..visited.len() as u32;
    let mut depth: u64 = 0;

    'search: while !frontier.is_empty() {
        if first_violation.is_some() && !opts.exhaustive {
            break;
        }
        if limits.max_depth > 0 && depth >= limits.max_depth {
            limit_hit = true;
            break;
        }

        let layer_end = visited.len() as u32;
        let mut chunk_start = frontier.start;
        while chunk_start < frontier.end {
            let chunk_end = frontier.end.min(chunk_start + CHUNK as u32);
            let chunk: Vec<u32> = (chunk_start..chunk_end).collect();

            // Expansion: read-only over the visited set, order-preserving.
            let expand_one = |&id: &u32| -> Vec<Successor> {
                let state = codec.decode(visited.bytes_of(id));
                enabled_transitions(&state, cfg)
                    .into_iter()
                    .map(|tid| {
                        let next =
                            apply(&state, cfg, tid).expect("enumerated transitions apply");
                        Successor {
                            tid,
                            bytes: codec.encode(&next),
                            violating: next.is_violating(),
                            majority: majority_event(&state, cfg, tid, &next),
                        }
                    })
                    .collect()
            };
            let expansions: Vec<Vec<Successor>> = match &pool {
                None => chunk.iter().map(expand_one).collect(),
                Some(pool) => pool.install(|| chunk.par_iter().map(expand_one).collect()),
            };

            // Insertion: sequential, in frontier order.
            for (&parent, successors) in chunk.iter().zip(&expansions) {
                for succ in successors {
                    transitions_fired += 1;
                    if let Some(pair) = succ.majority {
                        majority_pairs.insert(pair);
                    }
                    if succ.bytes.as_slice() == visited.bytes_of(parent) {
                        continue; // self-loop: nothing new was reached
                    }
                    let (id, new) = visited.get_or_insert(&succ.bytes);
                    if !new {
                        continue;
                    }
                    parents.push((parent, succ.tid));
                    max_depth = depth + 1; // ids are dense: every new state is next-layer
                    if succ.violating {
                        violating_states += 1;
                        if first_violation.is_none() {
                            first_violation = Some(id);
                        }
                    }
                }
            }

            chunk_start = chunk_end;

            if limits.max_states > 0 && visited.len() >= limits.max_states {
                limit_hit = true;
                break 'search;
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                limit_hit = true;
                break 'search;
            }
        }

        frontier = layer_end..visited.len() as u32;
        depth += 1;
    }

    let verdict = if first_violation.is_some() {
        Verdict::Unsafe
    } else if limit_hit {
        Verdict::LimitExceeded
    } else {
        Verdict::Safe
    };
    let trace = first_violation
        .map(|end| reconstruct_trace(cfg, &parents, end, root))
        .transpose()
        .expect("recorded predecessor links replay");

    Ok(Exploration {
        report: Report {
            verdict,
            states_explored: visited.len(),
            transitions_fired,
            max_depth,
            wall_time_ms: start.elapsed().as_millis() as u64,
            trace,
        },
        violating_states,
        majority_pairs,
    })
}

/// Walk predecessor links from `end` back to `root`, then replay forward
/// through the model to render each step. The replayed end state must be
/// violating — anything else is an internal-consistency failure.
fn reconstruct_trace(
    cfg: &Config,
    parents: &[(u32, TransitionId)],
    end: u32,
    root: u32,
) -> Result<Vec<TraceStep>, paxos_model::NotEnabled> {
    let mut tids = Vec::new();
    let mut at = end;
    while at != root {
        let (parent, tid) = parents[at as usize];
        tids.push(tid);
        at = parent;
    }
    tids.reverse();

    let mut steps = Vec::with_capacity(tids.len());
    let mut state = initial_state(cfg).expect("config was validated");
    for tid in tids {
        let (d, next) = describe_transition(&state, cfg, tid)?;
        steps.push(TraceStep {
            tid,
            actor: d.actor,
            rule: d.rule,
            message: d.message,
            locals: d.locals,
        });
        state = next;
    }
    debug_assert!(state.is_violating(), "the trace must end in a violating state");
    Ok(steps)
}

/// Convenience for callers that only need to re-execute a trace's
/// transitions (CLI replay, tests): the transition ids in order.
pub fn trace_tids(trace: &[TraceStep]) -> Vec<TransitionId> {
    trace.iter().map(|s| s.tid).collect()
}

/// Re-run a reported trace through the model and return the final state.
pub fn replay_trace(cfg: &Config, trace: &[TraceStep]) -> Result<GlobalState, paxos_model::ReplayError> {
    paxos_model::replay(cfg, &trace_tids(trace))
}
