//! Atomic transition semantics: every step of the three roles, in both model
//! variants, plus deterministic enumeration and pure application.
//!
//! Each function here compiles one guarded atomic block of the protocol into
//! a pure `state -> Option<state>` function; `None` means the step is
//! disabled in that state (a normal outcome, not an error). Full channels
//! disable the sender rather than dropping messages, mirroring blocking-send
//! semantics.

use crate::channel::Channel;
use crate::config::{Config, ConfigError, LearnerMode, Variant};
use crate::message::{Message, Pattern};
use crate::state::{GlobalState, LearnerState, Phase, ProposerState};

/// Identifies one atomic step. The `slot` fields index into the *source*
/// state's channel contents (the position of the message being received or
/// peeked), so an id is only meaningful for the state it was enumerated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransitionId {
    /// Baseline: proposer sends the next Prepare of its opening broadcast.
    PrepareSend { proposer: u8 },
    /// Optimized: proposer sends its whole Prepare broadcast in one step.
    PrepareBroadcast { proposer: u8 },
    /// Baseline: proposer consumes one Promise for its round.
    RecvPromise { proposer: u8, slot: u8 },
    /// Baseline: proposer with a counted quorum broadcasts its Accepts.
    TryAccept { proposer: u8 },
    /// Optimized: atomic in-channel promise count plus Accept broadcast.
    QuorumStep { proposer: u8 },
    /// Baseline: acceptor consumes one Prepare addressed to it.
    RecvPrepare { acceptor: u8, slot: u8 },
    /// Optimized: acceptor reads one stored Prepare without consuming it.
    PeekPrepare { acceptor: u8, slot: u8 },
    /// Acceptor consumes one Accept addressed to it (both variants).
    RecvAccept { acceptor: u8, slot: u8 },
    /// Learner consumes one Learn message.
    LearnerStep { learner: u8, slot: u8 },
}

impl TransitionId {
    /// Stable rule name, used in trace files.
    pub fn rule_name(&self) -> &'static str {
        match self {
            TransitionId::PrepareSend { .. } => "prepare_send",
            TransitionId::PrepareBroadcast { .. } => "prepare_broadcast",
            TransitionId::RecvPromise { .. } => "recv_promise",
            TransitionId::TryAccept { .. } => "try_accept",
            TransitionId::QuorumStep { .. } => "quorum_step",
            TransitionId::RecvPrepare { .. } => "recv_prepare",
            TransitionId::PeekPrepare { .. } => "peek_prepare",
            TransitionId::RecvAccept { .. } => "recv_accept",
            TransitionId::LearnerStep { .. } => "learner_step",
        }
    }

    /// The acting process as (role, index).
    pub fn actor(&self) -> (&'static str, u8) {
        match *self {
            TransitionId::PrepareSend { proposer }
            | TransitionId::PrepareBroadcast { proposer }
            | TransitionId::RecvPromise { proposer, .. }
            | TransitionId::TryAccept { proposer }
            | TransitionId::QuorumStep { proposer } => ("proposer", proposer),
            TransitionId::RecvPrepare { acceptor, .. }
            | TransitionId::PeekPrepare { acceptor, .. }
            | TransitionId::RecvAccept { acceptor, .. } => ("acceptor", acceptor),
            TransitionId::LearnerStep { learner, .. } => ("learner", learner),
        }
    }
}

/// Applying a [`TransitionId`] that is not enabled in the given state. This
/// is a caller contract violation (ids come from [`enabled_transitions`] on
/// the same state), kept distinct from the ordinary "disabled" outcome of
/// the step functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("transition {tid:?} is not enabled in this state")]
pub struct NotEnabled {
    pub tid: TransitionId,
}

// ---------------------------------------------------------------------------
// Proposer steps
// ---------------------------------------------------------------------------

/// Baseline: one Prepare send of the opening broadcast. A `Start` proposer
/// sends `Prepare(sent, round)` for ascending acceptor ids, interleavable
/// with every other process; the last send flips it to `Collecting`.
pub fn prepare_send(s: &GlobalState, cfg: &Config, p: usize) -> Option<GlobalState> {
    let proposer = s.proposers.get(p)?;
    if proposer.phase != Phase::Start {
        return None;
    }
    let mut next = s.clone();
    let msg = Message::Prepare { acceptor_id: proposer.sent, round: proposer.round };
    if !next.prepare.insert_in_place(msg) {
        return None;
    }
    let proposer = &mut next.proposers[p];
    proposer.sent += 1;
    if proposer.sent == cfg.acceptors {
        proposer.phase = Phase::Collecting;
        proposer.sent = 0;
    }
    Some(next)
}

/// Optimized: the whole Prepare broadcast as one atomic step. Requires room
/// for all A messages, preserving all-or-nothing semantics.
pub fn broadcast_prepare(s: &GlobalState, cfg: &Config, p: usize) -> Option<GlobalState> {
    let proposer = s.proposers.get(p)?;
    if proposer.phase != Phase::Start {
        return None;
    }
    if s.prepare.free() < usize::from(cfg.acceptors) {
        return None;
    }
    let mut next = s.clone();
    for acceptor_id in 0..cfg.acceptors {
        let inserted =
            next.prepare.insert_in_place(Message::Prepare { acceptor_id, round: proposer.round });
        debug_assert!(inserted);
    }
    next.proposers[p].phase = Phase::Collecting;
    Some(next)
}

/// Baseline: consume one Promise for this proposer's round. The vote counter
/// saturates at the quorum threshold; `hr`/`hval` track the highest
/// previously-accepted (round, value) seen so far.
pub fn proposer_recv_promise(
    s: &GlobalState,
    cfg: &Config,
    p: usize,
    slot: usize,
) -> Option<GlobalState> {
    let proposer = s.proposers.get(p)?;
    if proposer.phase != Phase::Collecting {
        return None;
    }
    let msg = *s.promise.contents().get(slot)?;
    let Message::Promise { round, vrnd, vval } = msg else { return None };
    if round != proposer.round {
        return None;
    }
    let mut next = s.clone();
    next.promise.remove_at(slot);
    let proposer = &mut next.proposers[p];
    if proposer.count < cfg.maj {
        proposer.count += 1;
    }
    if vrnd > proposer.hr {
        proposer.hr = vrnd;
        proposer.hval = vval;
    }
    Some(next)
}

/// The value a proposer submits once it holds a quorum: the value of the
/// highest round any promise reported accepted, or its own proposal if every
/// promise was undefined.
fn chosen_value(hr: i16, hval: i16, myval: u8) -> i16 {
    if hr < 0 {
        debug_assert_eq!(hval, -1);
        i16::from(myval)
    } else {
        hval
    }
}

/// Broadcast `Accept(i, round, value)` to every acceptor and retire the
/// proposer. Shared tail of [`proposer_try_accept`] and
/// [`proposer_quorum_step`]; the dead collection locals are reset so retired
/// proposers collapse to one canonical shape.
fn fire_accept_broadcast(
    next: &mut GlobalState,
    cfg: &Config,
    p: usize,
    value: i16,
) {
    let round = next.proposers[p].round;
    for acceptor_id in 0..cfg.acceptors {
        let inserted =
            next.accept.insert_in_place(Message::Accept { acceptor_id, round, value });
        debug_assert!(inserted);
    }
    let proposer = &mut next.proposers[p];
    proposer.phase = Phase::Done;
    proposer.count = 0;
    proposer.hr = -1;
    proposer.hval = -1;
}

/// Baseline: with a counted quorum of promises, pick the value and broadcast
/// Accepts atomically. Needs room for all A Accept messages.
pub fn proposer_try_accept(s: &GlobalState, cfg: &Config, p: usize) -> Option<GlobalState> {
    let proposer = s.proposers.get(p)?;
    if proposer.phase != Phase::Collecting || proposer.count < cfg.maj {
        return None;
    }
    if s.accept.free() < usize::from(cfg.acceptors) {
        return None;
    }
    let value = chosen_value(proposer.hr, proposer.hval, proposer.myval);
    let mut next = s.clone();
    fire_accept_broadcast(&mut next, cfg, p, value);
    Some(next)
}

/// Count the promises for `round` sitting in the channel and the highest
/// previously-accepted (round, value) among them, without consuming anything.
fn scan_promises(s: &GlobalState, round: u8) -> (usize, i16, i16) {
    let mut count = 0;
    let mut hr = -1;
    let mut hv = -1;
    for m in s.promise.contents() {
        if let Message::Promise { round: r, vrnd, vval } = *m {
            if r == round {
                count += 1;
                if vrnd > hr {
                    hr = vrnd;
                    hv = vval;
                }
            }
        }
    }
    (count, hr, hv)
}

/// Optimized: one atomic quorum transition. Scans the promise channel with a
/// counting guard (nothing is consumed, no intermediate tallies exist as
/// states); at quorum it broadcasts Accepts and retires the proposer, below
/// quorum it is disabled.
pub fn proposer_quorum_step(s: &GlobalState, cfg: &Config, p: usize) -> Option<GlobalState> {
    let proposer = s.proposers.get(p)?;
    if proposer.phase != Phase::Collecting {
        return None;
    }
    let (count, hr, hv) = scan_promises(s, proposer.round);
    if count < usize::from(cfg.maj) {
        return None;
    }
    if s.accept.free() < usize::from(cfg.acceptors) {
        return None;
    }
    let value = chosen_value(hr, hv, proposer.myval);
    let mut next = s.clone();
    fire_accept_broadcast(&mut next, cfg, p, value);
    Some(next)
}

// ---------------------------------------------------------------------------
// Acceptor steps
// ---------------------------------------------------------------------------

/// Baseline: consume one Prepare addressed to this acceptor. A fresh round
/// (`prnd > rnd`) answers with a Promise carrying the current accepted pair
/// and bumps `rnd`; a stale round is consumed silently. When the promise
/// reply cannot fit in its channel the whole step is disabled (no partial
/// effects).
pub fn acceptor_recv_prepare(
    s: &GlobalState,
    _cfg: &Config,
    a: usize,
    slot: usize,
) -> Option<GlobalState> {
    let acceptor = s.acceptors.get(a)?;
    let msg = *s.prepare.contents().get(slot)?;
    let Message::Prepare { acceptor_id, round: prnd } = msg else { return None };
    if acceptor_id != acceptor.id {
        return None;
    }
    let mut next = s.clone();
    next.prepare.remove_at(slot);
    if i16::from(prnd) > acceptor.rnd {
        let promise =
            Message::Promise { round: prnd, vrnd: acceptor.vrnd, vval: acceptor.vval };
        if !next.promise.insert_in_place(promise) {
            return None;
        }
        next.acceptors[a].rnd = i16::from(prnd);
    }
    Some(next)
}

/// Optimized: read one stored Prepare without consuming it — the prepare
/// channel acts as a store of persistent registers, so one branch exists per
/// *distinct* stored Prepare addressed to this acceptor. A stale register
/// yields the same state back (a self-loop the explorer discards). By
/// default a fresh register is answered with a Promise exactly like the
/// baseline; `faithful_optimized_acceptor` suppresses the reply.
pub fn acceptor_peek_prepare(
    s: &GlobalState,
    cfg: &Config,
    a: usize,
    slot: usize,
) -> Option<GlobalState> {
    let acceptor = s.acceptors.get(a)?;
    let msg = *s.prepare.contents().get(slot)?;
    let Message::Prepare { acceptor_id, round: prnd } = msg else { return None };
    if acceptor_id != acceptor.id {
        return None;
    }
    let mut next = s.clone();
    if i16::from(prnd) > acceptor.rnd {
        if !cfg.faithful_optimized_acceptor {
            let promise =
                Message::Promise { round: prnd, vrnd: acceptor.vrnd, vval: acceptor.vval };
            if !next.promise.insert_in_place(promise) {
                return None;
            }
        }
        next.acceptors[a].rnd = i16::from(prnd);
    }
    Some(next)
}

/// Consume one Accept addressed to this acceptor (both variants). A current
/// round (`j ≥ rnd` — ties re-fire) is accepted: locals update and a Learn
/// notification goes out; needs room in the learn channel only when that
/// guard fires. A stale round is consumed silently.
pub fn acceptor_recv_accept(
    s: &GlobalState,
    _cfg: &Config,
    a: usize,
    slot: usize,
) -> Option<GlobalState> {
    let acceptor = s.acceptors.get(a)?;
    let msg = *s.accept.contents().get(slot)?;
    let Message::Accept { acceptor_id, round: j, value: v } = msg else { return None };
    if acceptor_id != acceptor.id {
        return None;
    }
    let mut next = s.clone();
    next.accept.remove_at(slot);
    if i16::from(j) >= acceptor.rnd {
        let learn = Message::Learn { acceptor_id, round: j, value: v };
        if !next.learn.insert_in_place(learn) {
            return None;
        }
        let acceptor = &mut next.acceptors[a];
        acceptor.rnd = i16::from(j);
        acceptor.vrnd = i16::from(j);
        acceptor.vval = v;
    }
    Some(next)
}

// ---------------------------------------------------------------------------
// Learner steps
// ---------------------------------------------------------------------------

/// Update one learner's majority bookkeeping with a consumed Learn message.
/// Returns the round index and whether that round now holds a majority.
fn tally_learn(learner: &mut LearnerState, maj: u8, round: u8) -> bool {
    let idx = usize::from(round) - 1;
    if learner.mcount[idx] < maj {
        learner.mcount[idx] += 1;
    }
    learner.mcount[idx] >= maj
}

/// Abstract single learner: consume one Learn; on a majority for its round,
/// remember the first chosen value, or flag a violation when a later
/// majority's value disagrees with it.
pub fn abstract_learner_step(s: &GlobalState, cfg: &Config, slot: usize) -> Option<GlobalState> {
    let msg = *s.learn.contents().get(slot)?;
    let Message::Learn { round, value, .. } = msg else { return None };
    let mut next = s.clone();
    next.learn.remove_at(slot);
    let learner = &mut next.learners[0];
    if tally_learn(learner, cfg.maj, round) {
        if learner.lastval >= 0 && learner.lastval != value {
            learner.violation = true;
        } else if learner.lastval == -1 {
            learner.lastval = value;
        }
    }
    Some(next)
}

/// One of `n` concrete learners: consume one Learn and, at its first observed
/// majority, freeze the learned (round, value) pair. The learner keeps
/// consuming afterwards; the pair never changes.
pub fn concrete_learner_step(
    s: &GlobalState,
    cfg: &Config,
    l: usize,
    slot: usize,
) -> Option<GlobalState> {
    let msg = *s.learn.contents().get(slot)?;
    let Message::Learn { round, value, .. } = msg else { return None };
    if l >= s.learners.len() {
        return None;
    }
    let mut next = s.clone();
    next.learn.remove_at(slot);
    let learner = &mut next.learners[l];
    if tally_learn(learner, cfg.maj, round) && learner.learned_value < 0 {
        learner.learned_round = i16::from(round);
        learner.learned_value = value;
    }
    Some(next)
}

// ---------------------------------------------------------------------------
// Enumeration and application
// ---------------------------------------------------------------------------

/// Every transition enabled in `s`, in a deterministic, stable order:
/// proposers by index, then acceptors by index (Accept receives before
/// Prepare receives), then learners by index; within one rule, channel slots
/// ascending. `AnyMatch` receive mode fans out one id per distinct matching
/// message; `FirstMatch` yields only the oldest match.
///
/// Every returned id is guaranteed to apply successfully on `s`, including
/// send-room side conditions; stale optimized Prepare reads are enumerated
/// even though they reproduce `s` itself (the exploration layer discards
/// those self-loops).
pub fn enabled_transitions(s: &GlobalState, cfg: &Config) -> Vec<TransitionId> {
    let mut out = Vec::new();
    let acceptors = usize::from(cfg.acceptors);

    for (p, proposer) in s.proposers.iter().enumerate() {
        let p8 = p as u8;
        match (cfg.variant, proposer.phase) {
            (Variant::Baseline, Phase::Start) => {
                if !s.prepare.is_full() {
                    out.push(TransitionId::PrepareSend { proposer: p8 });
                }
            }
            (Variant::Baseline, Phase::Collecting) => {
                let pattern = Pattern::PromiseFor { round: proposer.round };
                for slot in s.promise.match_indices(pattern, cfg.receive_mode) {
                    out.push(TransitionId::RecvPromise { proposer: p8, slot: slot as u8 });
                }
                if proposer.count >= cfg.maj && s.accept.free() >= acceptors {
                    out.push(TransitionId::TryAccept { proposer: p8 });
                }
            }
            (Variant::Optimized, Phase::Start) => {
                if s.prepare.free() >= acceptors {
                    out.push(TransitionId::PrepareBroadcast { proposer: p8 });
                }
            }
            (Variant::Optimized, Phase::Collecting) => {
                let (count, _, _) = scan_promises(s, proposer.round);
                if count >= usize::from(cfg.maj) && s.accept.free() >= acceptors {
                    out.push(TransitionId::QuorumStep { proposer: p8 });
                }
            }
            (_, Phase::Done) => {}
        }
    }

    for (a, acceptor) in s.acceptors.iter().enumerate() {
        let a8 = a as u8;
        let accept_pattern = Pattern::AcceptFor { acceptor_id: acceptor.id };
        for slot in s.accept.match_indices(accept_pattern, cfg.receive_mode) {
            let Message::Accept { round, .. } = s.accept.contents()[slot] else {
                unreachable!("pattern only matches Accept")
            };
            // The Learn reply needs room only when the accept guard fires.
            if i16::from(round) >= acceptor.rnd && s.learn.is_full() {
                continue;
            }
            out.push(TransitionId::RecvAccept { acceptor: a8, slot: slot as u8 });
        }

        let prepare_pattern = Pattern::PrepareFor { acceptor_id: acceptor.id };
        match cfg.variant {
            Variant::Baseline => {
                for slot in s.prepare.match_indices(prepare_pattern, cfg.receive_mode) {
                    let Message::Prepare { round, .. } = s.prepare.contents()[slot] else {
                        unreachable!("pattern only matches Prepare")
                    };
                    if i16::from(round) > acceptor.rnd && s.promise.is_full() {
                        continue;
                    }
                    out.push(TransitionId::RecvPrepare { acceptor: a8, slot: slot as u8 });
                }
            }
            Variant::Optimized => {
                // Persistent registers: one branch per distinct stored
                // Prepare for this acceptor, regardless of receive mode.
                for slot in s.prepare.distinct_match_indices(prepare_pattern) {
                    let Message::Prepare { round, .. } = s.prepare.contents()[slot] else {
                        unreachable!("pattern only matches Prepare")
                    };
                    let fresh = i16::from(round) > acceptor.rnd;
                    let needs_reply = fresh && !cfg.faithful_optimized_acceptor;
                    if needs_reply && s.promise.is_full() {
                        continue;
                    }
                    out.push(TransitionId::PeekPrepare { acceptor: a8, slot: slot as u8 });
                }
            }
        }
    }

    for l in 0..s.learners.len() {
        for slot in s.learn.match_indices(Pattern::AnyLearn, cfg.receive_mode) {
            out.push(TransitionId::LearnerStep { learner: l as u8, slot: slot as u8 });
        }
    }

    out
}

/// Apply `tid` to `s`, returning the successor. Pure: `s` is never mutated,
/// and the same (state, id) always yields the same successor. Applying an id
/// that is not enabled on `s` (or that belongs to the other variant) is a
/// contract violation reported as [`NotEnabled`].
pub fn apply(s: &GlobalState, cfg: &Config, tid: TransitionId) -> Result<GlobalState, NotEnabled> {
    use TransitionId::*;
    let next = match (tid, cfg.variant) {
        (PrepareSend { proposer }, Variant::Baseline) => {
            prepare_send(s, cfg, usize::from(proposer))
        }
        (PrepareBroadcast { proposer }, Variant::Optimized) => {
            broadcast_prepare(s, cfg, usize::from(proposer))
        }
        (RecvPromise { proposer, slot }, Variant::Baseline) => {
            proposer_recv_promise(s, cfg, usize::from(proposer), usize::from(slot))
        }
        (TryAccept { proposer }, Variant::Baseline) => {
            proposer_try_accept(s, cfg, usize::from(proposer))
        }
        (QuorumStep { proposer }, Variant::Optimized) => {
            proposer_quorum_step(s, cfg, usize::from(proposer))
        }
        (RecvPrepare { acceptor, slot }, Variant::Baseline) => {
            acceptor_recv_prepare(s, cfg, usize::from(acceptor), usize::from(slot))
        }
        (PeekPrepare { acceptor, slot }, Variant::Optimized) => {
            acceptor_peek_prepare(s, cfg, usize::from(acceptor), usize::from(slot))
        }
        (RecvAccept { acceptor, slot }, _) => {
            acceptor_recv_accept(s, cfg, usize::from(acceptor), usize::from(slot))
        }
        (LearnerStep { learner, slot }, _) => match cfg.learner_mode {
            LearnerMode::Abstract if learner == 0 => {
                abstract_learner_step(s, cfg, usize::from(slot))
            }
            LearnerMode::Concrete(n) if learner < n => {
                concrete_learner_step(s, cfg, usize::from(learner), usize::from(slot))
            }
            _ => None,
        },
        _ => None,
    };
    if let Some(next) = &next {
        debug_assert!(
            s.acceptors.iter().zip(&next.acceptors).all(|(a, b)| b.rnd >= a.rnd),
            "acceptor rounds must be nondecreasing"
        );
    }
    next.ok_or(NotEnabled { tid })
}

/// Replaying a stored transition sequence failed.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("step {step}: {source}")]
    NotEnabled { step: usize, source: NotEnabled },
}

/// Re-run a transition sequence from the initial state of `cfg`, returning
/// the state it ends in. Traces recorded by the explorer replay to their
/// violating state exactly.
pub fn replay(cfg: &Config, tids: &[TransitionId]) -> Result<GlobalState, ReplayError> {
    let mut state = crate::state::initial_state(cfg)?;
    for (step, &tid) in tids.iter().enumerate() {
        state = apply(&state, cfg, tid).map_err(|source| ReplayError::NotEnabled { step, source })?;
    }
    Ok(state)
}

/// If `tid` (fired from `s`, producing `next`) completed a learner majority,
/// the (round, value) pair that reached it. Exhaustive exploration records
/// these to build the set of observable outcomes.
pub fn majority_event(
    s: &GlobalState,
    cfg: &Config,
    tid: TransitionId,
    next: &GlobalState,
) -> Option<(u8, i16)> {
    let TransitionId::LearnerStep { learner, slot } = tid else { return None };
    let Message::Learn { round, value, .. } = *s.learn.contents().get(usize::from(slot))? else {
        return None;
    };
    let learner = &next.learners[usize::from(learner)];
    (learner.mcount[usize::from(round) - 1] >= cfg.maj).then_some((round, value))
}

// ---------------------------------------------------------------------------
// Human-readable step descriptions (trace files, replay matching)
// ---------------------------------------------------------------------------

/// One trace step rendered for humans: who did what to which message, and
/// which locals changed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepDescription {
    /// `"proposer 0"`, `"acceptor 2"`, `"learner 0"`.
    pub actor: String,
    /// Stable rule name (see [`TransitionId::rule_name`]).
    pub rule: &'static str,
    /// The message received/peeked, or the broadcast template with
    /// `acceptor=*` for one-to-all sends.
    pub message: String,
    /// `key: old -> new` pairs for the actor's locals; empty for a self-loop.
    pub locals: String,
}

/// Describe `tid` as fired from `pre`, returning the description and the
/// successor state it produces.
pub fn describe_transition(
    pre: &GlobalState,
    cfg: &Config,
    tid: TransitionId,
) -> Result<(StepDescription, GlobalState), NotEnabled> {
    let post = apply(pre, cfg, tid)?;
    let (role, index) = tid.actor();
    let message = transition_message(pre, tid);
    let i = usize::from(index);
    let locals = match role {
        "proposer" => diff_proposer(&pre.proposers[i], &post.proposers[i]),
        "acceptor" => diff_acceptor(&pre.acceptors[i], &post.acceptors[i]),
        _ => diff_learner(&pre.learners[i], &post.learners[i]),
    };
    let description = StepDescription {
        actor: format!("{role} {index}"),
        rule: tid.rule_name(),
        message,
        locals,
    };
    Ok((description, post))
}

/// The message a transition handles, rendered from the source state (the
/// message at the slot for receives/peeks, the broadcast template for sends).
fn transition_message(pre: &GlobalState, tid: TransitionId) -> String {
    use TransitionId::*;
    match tid {
        PrepareSend { proposer } => {
            let p = &pre.proposers[usize::from(proposer)];
            Message::Prepare { acceptor_id: p.sent, round: p.round }.to_string()
        }
        PrepareBroadcast { proposer } => {
            let p = &pre.proposers[usize::from(proposer)];
            format!("Prepare(acceptor=*, round={})", p.round)
        }
        TryAccept { proposer } => {
            let p = &pre.proposers[usize::from(proposer)];
            let value = chosen_value(p.hr, p.hval, p.myval);
            format!("Accept(acceptor=*, round={}, value={value})", p.round)
        }
        QuorumStep { proposer } => {
            let p = &pre.proposers[usize::from(proposer)];
            let (_, hr, hv) = scan_promises(pre, p.round);
            let value = chosen_value(hr, hv, p.myval);
            format!("Accept(acceptor=*, round={}, value={value})", p.round)
        }
        RecvPromise { slot, .. } => slot_message(&pre.promise, slot),
        RecvPrepare { slot, .. } | PeekPrepare { slot, .. } => slot_message(&pre.prepare, slot),
        RecvAccept { slot, .. } => slot_message(&pre.accept, slot),
        LearnerStep { slot, .. } => slot_message(&pre.learn, slot),
    }
}

fn slot_message(chan: &Channel, slot: u8) -> String {
    chan.contents()
        .get(usize::from(slot))
        .map(Message::to_string)
        .unwrap_or_else(|| "<missing>".to_owned())
}

fn diff_proposer(a: &ProposerState, b: &ProposerState) -> String {
    let mut parts = Vec::new();
    if a.phase != b.phase {
        parts.push(format!("phase: {:?} -> {:?}", a.phase, b.phase));
    }
    if a.sent != b.sent {
        parts.push(format!("sent: {} -> {}", a.sent, b.sent));
    }
    if a.count != b.count {
        parts.push(format!("count: {} -> {}", a.count, b.count));
    }
    if a.hr != b.hr {
        parts.push(format!("hr: {} -> {}", a.hr, b.hr));
    }
    if a.hval != b.hval {
        parts.push(format!("hval: {} -> {}", a.hval, b.hval));
    }
    parts.join(", ")
}

fn diff_acceptor(a: &crate::state::AcceptorState, b: &crate::state::AcceptorState) -> String {
    let mut parts = Vec::new();
    if a.rnd != b.rnd {
        parts.push(format!("rnd: {} -> {}", a.rnd, b.rnd));
    }
    if a.vrnd != b.vrnd {
        parts.push(format!("vrnd: {} -> {}", a.vrnd, b.vrnd));
    }
    if a.vval != b.vval {
        parts.push(format!("vval: {} -> {}", a.vval, b.vval));
    }
    parts.join(", ")
}

fn diff_learner(a: &LearnerState, b: &LearnerState) -> String {
    let mut parts = Vec::new();
    for (i, (x, y)) in a.mcount.iter().zip(&b.mcount).enumerate() {
        if x != y {
            parts.push(format!("mcount[{}]: {} -> {}", i + 1, x, y));
        }
    }
    if a.lastval != b.lastval {
        parts.push(format!("lastval: {} -> {}", a.lastval, b.lastval));
    }
    if a.learned_round != b.learned_round || a.learned_value != b.learned_value {
        parts.push(format!(
            "learned: ({}, {}) -> ({}, {})",
            a.learned_round, a.learned_value, b.learned_round, b.learned_value
        ));
    }
    if a.violation != b.violation {
        parts.push(format!("violation: {} -> {}", a.violation, b.violation));
    }
    parts.join(", ")
}
