//! Exhaustive breadth-first exploration of the Paxos model's state space.
//!
//! Given a configuration, [`explore`] walks every reachable state, detects
//! safety violations (a chosen value changing), and reports a verdict with
//! statistics and — for unsafe configurations — a minimal-depth
//! counterexample trace that replays step-for-step through the model crate.
//!
//! The three pieces:
//!
//! * [`encode::Codec`] — canonical fixed-stride byte encoding of states;
//!   equal states encode equally, so the byte string is the identity used
//!   for deduplication.
//! * [`visited::VisitedSet`] — exact arena-backed insert-if-absent set over
//!   those encodings (no probabilistic compaction).
//! * [`search`] — layered BFS with deterministic results: for a fixed
//!   configuration the verdict, state count, and trace do not depend on the
//!   number of worker threads.

pub mod encode;
pub mod search;
pub mod visited;

pub use encode::Codec;
pub use search::{
    explore, explore_with, replay_trace, trace_tids, Exploration, ExploreOptions, Limits, Report,
    TraceStep, Verdict,
};
pub use visited::VisitedSet;
