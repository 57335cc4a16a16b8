//! Executable checks of the model's reduction arguments, at desk scale.
//!
//! Three claims make large-instance verification tractable, and each gets a
//! runnable check here instead of being assumed:
//!
//! * **Learner reduction** — one abstract learner that replays all
//!   acceptances sequentially detects a violation if and only if a system
//!   with separate concrete learners can exhibit disagreement. Checked by
//!   exploring the same instance under both learner modes and comparing
//!   verdicts ([`check_learner_reduction`]).
//! * **Proposer cut-off** — if an instance is safe with two proposers it
//!   stays safe as proposers are added. Checked by sweeping the proposer
//!   count upward and watching for a falsifying instance
//!   ([`check_proposer_reduction`]).
//! * **Variant equivalence** — the optimized variant (atomic broadcast,
//!   persistent prepare registers, single quorum transition) reaches
//!   exactly the outcomes of the baseline. Checked by comparing
//!   [`observable_outcomes`] sets, which exhaustively record every
//!   (round, value) pair that ever reaches a learner majority.

use std::collections::BTreeSet;
use std::fmt;

use paxos_explorer::{explore, explore_with, ExploreOptions, Limits, Report, Verdict};
use paxos_model::{Config, ConfigError, LearnerMode};

/// The set of (round, value) pairs that reach a learner majority in some
/// execution of a configuration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OutcomeSet {
    pairs: BTreeSet<(u8, i16)>,
}

impl OutcomeSet {
    pub fn pairs(&self) -> &BTreeSet<(u8, i16)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The distinct values across all pairs. Two or more distinct values
    /// means choice stability can be violated in some schedule.
    pub fn distinct_values(&self) -> BTreeSet<i16> {
        self.pairs.iter().map(|&(_, v)| v).collect()
    }
}

impl FromIterator<(u8, i16)> for OutcomeSet {
    fn from_iter<T: IntoIterator<Item = (u8, i16)>>(iter: T) -> OutcomeSet {
        OutcomeSet { pairs: iter.into_iter().collect() }
    }
}

impl fmt::Display for OutcomeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (r, v)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({r}, {v})")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReductionError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// The underlying exploration hit a limit before closing the state
    /// space, so the answer would not be exhaustive.
    #[error("exploration of {context} hit a resource limit before closure")]
    Incomplete { context: String },
}

/// Exhaustively explore `cfg` — not stopping at violations — and collect
/// every (round, value) pair that reaches a learner majority in any
/// reachable transition.
///
/// The set is a union over every interleaving of the instance, so a round
/// may appear with several values (its proposer adopts different promised
/// values on different paths); per-execution agreement is what the safety
/// property itself checks, not this set.
pub fn observable_outcomes(cfg: &Config, limits: &Limits) -> Result<OutcomeSet, ReductionError> {
    let result = explore_with(cfg, limits, &ExploreOptions { workers: 1, exhaustive: true })?;
    if result.report.verdict == Verdict::LimitExceeded {
        return Err(ReductionError::Incomplete {
            context: format!(
                "P={}, A={}, maj={} ({:?})",
                cfg.proposers, cfg.acceptors, cfg.maj, cfg.variant
            ),
        });
    }
    let pairs: OutcomeSet = result.majority_pairs.iter().copied().collect();
    debug_assert!(
        pairs.pairs.iter().all(|&(r, _)| (1..=cfg.proposers).contains(&r)),
        "rounds outside the proposer range"
    );
    debug_assert!(
        pairs.pairs.iter().all(|&(_, v)| (1..=i16::from(cfg.proposers)).contains(&v)),
        "values outside the proposer range"
    );
    Ok(pairs)
}

/// Verdicts of the same instance under both learner modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LearnerReduction {
    pub abstract_verdict: Verdict,
    pub concrete_verdict: Verdict,
}

impl LearnerReduction {
    /// `Some(true)` when both explorations closed and agree, `Some(false)`
    /// when they closed and disagree (the reduction would be falsified),
    /// `None` when either hit a limit.
    pub fn holds(&self) -> Option<bool> {
        let closed = self.abstract_verdict != Verdict::LimitExceeded
            && self.concrete_verdict != Verdict::LimitExceeded;
        closed.then_some(self.abstract_verdict == self.concrete_verdict)
    }
}

/// Explore `cfg` once with the single abstract learner and once with two
/// concrete learners (two suffice: any disagreement needs only two
/// witnesses), and report both verdicts.
pub fn check_learner_reduction(
    cfg: &Config,
    limits: &Limits,
) -> Result<LearnerReduction, ConfigError> {
    let abstract_verdict =
        explore(&cfg.clone().with_learners(LearnerMode::Abstract), limits)?.verdict;
    let concrete_verdict =
        explore(&cfg.clone().with_learners(LearnerMode::Concrete(2)), limits)?.verdict;
    Ok(LearnerReduction { abstract_verdict, concrete_verdict })
}

/// Result of sweeping the proposer count for a fixed (acceptors, maj).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProposerReduction {
    /// The implication "Safe at P=2 ⇒ Safe at P ≤ max_p" held — either every
    /// instance was Safe, or P=2 was already Unsafe (vacuously true, with
    /// `verdicts` stopping there).
    Holds { verdicts: Vec<(u8, Verdict)> },
    /// Safe at P=2 but Unsafe at this larger P: a falsifying instance. The
    /// report carries its counterexample trace.
    Falsified { proposers: u8, report: Box<Report> },
    /// The instance at this P hit a resource limit; no claim either way.
    Inconclusive { proposers: u8 },
}

impl ProposerReduction {
    pub fn holds(&self) -> Option<bool> {
        match self {
            ProposerReduction::Holds { .. } => Some(true),
            ProposerReduction::Falsified { .. } => Some(false),
            ProposerReduction::Inconclusive { .. } => None,
        }
    }
}

/// Reinstantiate `template` with a different proposer count. Channel
/// capacity is re-derived as acceptors × proposers (room for one full
/// broadcast per proposer), since a fixed capacity would conflate growing
/// the instance with tightening the channels.
pub fn instance_with_proposers(template: &Config, proposers: u8) -> Config {
    let mut cfg = template.clone();
    cfg.proposers = proposers;
    cfg.channel_cap = u16::from(cfg.acceptors) * u16::from(proposers);
    cfg
}

/// Sweep `template` over P = 2..=max_p and test the implication "Safe at
/// P=2 ⇒ Safe at every P ≤ max_p".
pub fn check_proposer_reduction(
    template: &Config,
    max_p: u8,
    limits: &Limits,
) -> Result<ProposerReduction, ConfigError> {
    let max_p = max_p.max(2);
    let mut verdicts = Vec::new();
    for p in 2..=max_p {
        let cfg = instance_with_proposers(template, p);
        let report = explore(&cfg, limits)?;
        verdicts.push((p, report.verdict));
        match report.verdict {
            Verdict::LimitExceeded => return Ok(ProposerReduction::Inconclusive { proposers: p }),
            Verdict::Unsafe if p == 2 => return Ok(ProposerReduction::Holds { verdicts }),
            Verdict::Unsafe => {
                return Ok(ProposerReduction::Falsified {
                    proposers: p,
                    report: Box::new(report),
                })
            }
            Verdict::Safe => {}
        }
    }
    Ok(ProposerReduction::Holds { verdicts })
}
