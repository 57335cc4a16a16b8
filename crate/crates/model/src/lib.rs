//! Transition semantics of a single-decree Paxos model.
//!
//! The model has three roles exchanging messages over four shared,
//! capacity-bounded channels:
//!
//! * **Proposers** open a numbered round by sending `Prepare` to every
//!   acceptor, collect `Promise` replies, and — once a majority quorum
//!   answers — broadcast `Accept` carrying either their own value or the
//!   value of the highest round some acceptor had already accepted.
//! * **Acceptors** promise to ignore rounds below the highest `Prepare` they
//!   answered, accept current-round values, and announce every acceptance on
//!   a `learn` channel.
//! * **Learners** count acceptances per round; a value accepted by a
//!   majority of acceptors is *chosen*. The safety property is that a
//!   chosen value can never change — the abstract learner flags a violation
//!   the moment two majorities disagree, while concrete learners each freeze
//!   the first pair they see (disagreement between them is the violation).
//!
//! Two variants share this state space. The **baseline** follows the
//! message-passing protocol literally: prepares are sent one at a time and
//! promises are consumed and counted one per step. The **optimized** variant
//! compresses both ends of phase one: the prepare broadcast is one atomic
//! step, acceptors read prepares as persistent registers instead of
//! consuming them, and the proposer counts promises in-channel with a single
//! atomic quorum-and-broadcast step, eliminating the intermediate counting
//! states.
//!
//! Everything here is pure: a transition is a total function from a state to
//! `Option<successor>`, [`enabled_transitions`] enumerates the ids that
//! will apply in a deterministic order, and [`apply`] fires one. The
//! companion exploration crate drives these functions breadth-first.

pub mod channel;
pub mod config;
pub mod message;
pub mod state;
pub mod transitions;

pub use channel::{Channel, ChannelOrder, ReceiveMode};
pub use config::{Config, ConfigError, LearnerMode, Variant, MAX_CHANNEL_CAP, MAX_PROCESSES};
pub use message::{Message, Pattern};
pub use state::{initial_state, AcceptorState, GlobalState, LearnerState, Phase, ProposerState};
pub use transitions::{
    apply, describe_transition, enabled_transitions, majority_event, replay, NotEnabled,
    ReplayError, StepDescription, TransitionId,
};
