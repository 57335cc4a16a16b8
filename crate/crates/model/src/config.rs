//! Run configuration: instance sizes, quorum threshold, and semantic knobs.

use crate::channel::{ChannelOrder, ReceiveMode};

/// Which model the transition relation follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Interleaved prepare sends, destructive promise receives with a vote
    /// counter, and destructive prepare receives at acceptors.
    Baseline,
    /// Atomic prepare broadcast, quorum transitions that count promises
    /// in-channel without consuming them, and persistent prepare reads.
    Optimized,
}

/// How the learner side is instantiated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LearnerMode {
    /// One learner that replays all votations sequentially and raises a
    /// violation when a second majority disagrees with the first.
    Abstract,
    /// `n` independent learners competing for the same Learn messages; a
    /// violation is two learners holding different learned values.
    Concrete(u8),
}

/// Upper bound on proposers and acceptors. Generous for desk-scale checking;
/// it exists because rounds, values, and ids are stored in single bytes by
/// the canonical state encoding.
pub const MAX_PROCESSES: u8 = 60;

/// Largest supported channel capacity (lengths and slots are single bytes in
/// the canonical encoding).
pub const MAX_CHANNEL_CAP: u16 = 255;

/// A complete run configuration. Proposer `i` (1-based) proposes value `i`
/// in its own round `i`, so rounds are unique by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub proposers: u8,
    pub acceptors: u8,
    /// Majority/quorum threshold; default ⌊acceptors/2⌋ + 1.
    pub maj: u8,
    /// Capacity of each of the four channels; default acceptors × proposers,
    /// which is an upper bound on any channel's lifetime traffic, so at the
    /// default the blocking-send semantics never actually bites.
    pub channel_cap: u16,
    pub variant: Variant,
    pub learner_mode: LearnerMode,
    pub receive_mode: ReceiveMode,
    /// Representation of all four channels (sorted = canonical multiset).
    pub order: ChannelOrder,
    /// Reproduce the optimized acceptor literally: update `rnd` on a fresh
    /// prepare but send no Promise. That strands proposers (no promises, no
    /// quorums), so it is off by default and exists for fidelity experiments.
    pub faithful_optimized_acceptor: bool,
}

impl Config {
    /// The default quorum threshold for `acceptors` processes: any two
    /// quorums of this size intersect, tolerating ⌊(acceptors−1)/2⌋ faults.
    pub fn default_maj(acceptors: u8) -> u8 {
        acceptors / 2 + 1
    }

    /// A configuration with all defaults: majority quorum, capacity A×P,
    /// baseline variant, one abstract learner, first-match receives, sorted
    /// channels.
    pub fn new(proposers: u8, acceptors: u8) -> Config {
        Config {
            proposers,
            acceptors,
            maj: Config::default_maj(acceptors),
            channel_cap: u16::from(acceptors) * u16::from(proposers),
            variant: Variant::Baseline,
            learner_mode: LearnerMode::Abstract,
            receive_mode: ReceiveMode::FirstMatch,
            order: ChannelOrder::Sorted,
            faithful_optimized_acceptor: false,
        }
    }

    pub fn with_maj(mut self, maj: u8) -> Config {
        self.maj = maj;
        self
    }

    pub fn with_variant(mut self, variant: Variant) -> Config {
        self.variant = variant;
        self
    }

    pub fn with_learners(mut self, learner_mode: LearnerMode) -> Config {
        self.learner_mode = learner_mode;
        self
    }

    pub fn with_order(mut self, order: ChannelOrder) -> Config {
        self.order = order;
        self
    }

    pub fn with_receive(mut self, receive_mode: ReceiveMode) -> Config {
        self.receive_mode = receive_mode;
        self
    }

    /// Number of learner processes this configuration instantiates.
    pub fn learner_count(&self) -> usize {
        match self.learner_mode {
            LearnerMode::Abstract => 1,
            LearnerMode::Concrete(n) => usize::from(n),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.proposers == 0 {
            return Err(ConfigError::NoProposers);
        }
        if self.acceptors == 0 {
            return Err(ConfigError::NoAcceptors);
        }
        if self.proposers > MAX_PROCESSES || self.acceptors > MAX_PROCESSES {
            return Err(ConfigError::TooManyProcesses { limit: MAX_PROCESSES });
        }
        if self.maj == 0 || self.maj > self.acceptors {
            return Err(ConfigError::BadMaj { maj: self.maj, acceptors: self.acceptors });
        }
        if self.channel_cap < u16::from(self.acceptors) {
            return Err(ConfigError::CapTooSmall {
                cap: self.channel_cap,
                acceptors: self.acceptors,
            });
        }
        if self.channel_cap > MAX_CHANNEL_CAP {
            return Err(ConfigError::CapTooLarge { cap: self.channel_cap });
        }
        if self.learner_count() == 0 {
            return Err(ConfigError::NoLearners);
        }
        Ok(())
    }
}

/// Rejected configurations. `BadMaj` and `CapTooSmall` are the interesting
/// ones: a quorum must be satisfiable, and a single broadcast must fit in a
/// channel or the system is dead on arrival.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("need at least one proposer")]
    NoProposers,
    #[error("need at least one acceptor")]
    NoAcceptors,
    #[error("at most {limit} proposers/acceptors are supported")]
    TooManyProcesses { limit: u8 },
    #[error("majority threshold {maj} out of range 1..={acceptors}")]
    BadMaj { maj: u8, acceptors: u8 },
    #[error("channel capacity {cap} cannot hold one broadcast of {acceptors} messages")]
    CapTooSmall { cap: u16, acceptors: u8 },
    #[error("channel capacity {cap} exceeds the supported maximum of 255")]
    CapTooLarge { cap: u16 },
    #[error("need at least one learner")]
    NoLearners,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_majority_and_capacity_formulas() {
        for (acceptors, maj) in [(1, 1), (2, 2), (3, 2), (4, 3), (5, 3), (8, 5)] {
            assert_eq!(Config::default_maj(acceptors), maj, "A={acceptors}");
        }
        let cfg = Config::new(2, 3);
        assert_eq!(cfg.maj, 2);
        assert_eq!(cfg.channel_cap, 6);
        assert_eq!(cfg.variant, Variant::Baseline);
        assert_eq!(cfg.learner_count(), 1);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn zero_or_oversized_majority_is_rejected() {
        let cfg = Config::new(2, 3).with_maj(0);
        assert_eq!(cfg.validate(), Err(ConfigError::BadMaj { maj: 0, acceptors: 3 }));
        let cfg = Config::new(2, 3).with_maj(4);
        assert_eq!(cfg.validate(), Err(ConfigError::BadMaj { maj: 4, acceptors: 3 }));
        assert!(Config::new(2, 3).with_maj(3).validate().is_ok());
    }

    #[test]
    fn capacity_must_hold_one_broadcast() {
        let mut cfg = Config::new(2, 3);
        cfg.channel_cap = 2;
        assert_eq!(cfg.validate(), Err(ConfigError::CapTooSmall { cap: 2, acceptors: 3 }));
        cfg.channel_cap = 3;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn degenerate_instances_are_rejected() {
        assert!(Config::new(0, 2).validate().is_err());
        assert!(Config::new(2, 0).validate().is_err());
        let cfg = Config::new(1, 1).with_learners(LearnerMode::Concrete(0));
        assert_eq!(cfg.validate(), Err(ConfigError::NoLearners));
        // The minimal system is valid.
        assert!(Config::new(1, 1).validate().is_ok());
    }
}
