//! Global protocol state: the four channels plus every process's locals.
//!
//! Scratch receive variables (the `h`, `v`, `j`, `prnd`, `tmp` of a
//! statement-level encoding) are deliberately *not* state: every atomic step
//! is a pure function from state to state, so transient buffers never
//! distinguish two states that agree on channels and locals.

use crate::channel::{Channel, ChannelOrder};
use crate::config::{Config, ConfigError, LearnerMode};

/// A proposer's control location. Monotone: `Start → Collecting → Done`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Still sending its opening Prepare broadcast.
    Start,
    /// Broadcast done; gathering promises / watching for a quorum.
    Collecting,
    /// Accept broadcast sent; the proposer takes no further steps.
    Done,
}

/// One proposer's locals. `round` and `myval` are fixed at instantiation
/// (proposer *i*, 1-based, proposes value *i* in round *i*) and never change.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProposerState {
    pub round: u8,
    pub myval: u8,
    /// Highest previously-accepted round seen in promises so far (−1 = none).
    pub hr: i16,
    /// Value paired with `hr` (−1 = none). `hr == -1` iff `hval == -1`.
    pub hval: i16,
    /// Promises counted toward the quorum, saturating at `maj`.
    pub count: u8,
    pub phase: Phase,
    /// Prepares already sent while in `Start`. The baseline broadcast is A
    /// separate interleavable sends, so the loop position is real state;
    /// reset to 0 on entering `Collecting` (always 0 in the optimized
    /// variant, whose broadcast is one atomic step).
    pub sent: u8,
}

impl ProposerState {
    /// A fresh proposer: 1-based round and proposal value, locals reset.
    pub fn new(index: u8) -> ProposerState {
        ProposerState {
            round: index + 1,
            myval: index + 1,
            hr: -1,
            hval: -1,
            count: 0,
            phase: Phase::Start,
            sent: 0,
        }
    }
}

/// One acceptor's locals. `rnd` is nondecreasing along every execution;
/// `vrnd`/`vval` track the highest accepted (round, value), −1 when none.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AcceptorState {
    pub id: u8,
    pub rnd: i16,
    pub vrnd: i16,
    pub vval: i16,
}

impl AcceptorState {
    /// A fresh acceptor: nothing promised, nothing accepted.
    pub fn new(id: u8) -> AcceptorState {
        AcceptorState { id, rnd: -1, vrnd: -1, vval: -1 }
    }
}

/// One learner's locals. The abstract learner uses `lastval` + `violation`;
/// concrete learners use the `learned_*` pair (frozen at their first observed
/// majority). `mcount[r-1]` counts Learn messages consumed for round `r`,
/// saturating at the quorum threshold.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LearnerState {
    pub mcount: Vec<u8>,
    /// First value this (abstract) learner saw reach a majority; −1 = none.
    pub lastval: i16,
    /// Round of this (concrete) learner's first observed majority; −1 = none.
    pub learned_round: i16,
    /// Value of that majority; −1 = none.
    pub learned_value: i16,
    /// Set by the abstract learner when a majority's value disagrees with
    /// `lastval`. Sticky: once true it stays true in all successors.
    pub violation: bool,
}

impl LearnerState {
    /// A fresh learner tracking rounds `1..=proposers`, nothing chosen yet.
    pub fn new(proposers: u8) -> LearnerState {
        LearnerState {
            mcount: vec![0; usize::from(proposers)],
            lastval: -1,
            learned_round: -1,
            learned_value: -1,
            violation: false,
        }
    }
}

/// The complete state of one protocol instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlobalState {
    pub prepare: Channel,
    pub promise: Channel,
    pub accept: Channel,
    pub learn: Channel,
    pub proposers: Vec<ProposerState>,
    pub acceptors: Vec<AcceptorState>,
    pub learners: Vec<LearnerState>,
}

impl GlobalState {
    /// Whether the safety property ("once a value is chosen, no other value
    /// is chosen") has failed in this state: the abstract learner flagged a
    /// disagreeing majority, or two concrete learners learned different
    /// values.
    pub fn is_violating(&self) -> bool {
        if self.learners.iter().any(|l| l.violation) {
            return true;
        }
        let mut chosen: Option<i16> = None;
        for learner in &self.learners {
            if learner.learned_value >= 0 {
                match chosen {
                    Some(v) if v != learner.learned_value => return true,
                    Some(_) => {}
                    None => chosen = Some(learner.learned_value),
                }
            }
        }
        false
    }
}

/// The initial state for `cfg`: empty channels, proposer *i* at
/// (round=i, myval=i, phase=Start), acceptors at (−1, −1, −1), learners with
/// zeroed counters. Fails on invalid configurations (e.g. `maj` outside
/// 1..=A, or a capacity too small to hold one broadcast).
pub fn initial_state(cfg: &Config) -> Result<GlobalState, ConfigError> {
    cfg.validate()?;
    let chan = |order: ChannelOrder| Channel::new(usize::from(cfg.channel_cap), order);
    Ok(GlobalState {
        prepare: chan(cfg.order),
        promise: chan(cfg.order),
        accept: chan(cfg.order),
        learn: chan(cfg.order),
        proposers: (0..cfg.proposers).map(ProposerState::new).collect(),
        acceptors: (0..cfg.acceptors).map(AcceptorState::new).collect(),
        learners: match cfg.learner_mode {
            LearnerMode::Abstract => vec![LearnerState::new(cfg.proposers)],
            LearnerMode::Concrete(n) => {
                (0..n).map(|_| LearnerState::new(cfg.proposers)).collect()
            }
        },
    })
}
