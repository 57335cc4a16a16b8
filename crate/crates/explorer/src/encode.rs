//! Canonical fixed-stride byte encoding of global states.
//!
//! The encoding is the visited-set key, so it must be injective over
//! semantic state equality: equal states (channels already being canonical
//! sequences) produce equal bytes, and any differing field produces
//! differing bytes. Everything a given configuration fixes — process counts,
//! rounds, proposal values, retired-variant locals — is left out of the
//! bytes and restored from the configuration on decode.
//!
//! Layout, in order: the four channels (one length byte, then fixed-width
//! slots up to capacity, unused slots zeroed), proposer locals, acceptor
//! locals, learner locals. Signed locals use a `+1` bias so the `-1`
//! "undefined" sentinel maps to byte 0.

use paxos_model::{
    AcceptorState, Channel, Config, GlobalState, LearnerMode, LearnerState, Message, Phase,
    ProposerState, Variant,
};

const PREPARE_WIDTH: usize = 2;
const TRIPLE_WIDTH: usize = 3;
/// Proposer locals live in the state only under the baseline; the optimized
/// variant's single atomic quorum step leaves nothing but the phase.
const BASELINE_PROPOSER_WIDTH: usize = 5;
const OPTIMIZED_PROPOSER_WIDTH: usize = 1;
const ACCEPTOR_WIDTH: usize = 3;

fn bias(x: i16) -> u8 {
    debug_assert!((-1..=254).contains(&x), "field {x} out of biased-byte range");
    (x + 1) as u8
}

fn unbias(b: u8) -> i16 {
    i16::from(b) - 1
}

fn phase_byte(phase: Phase) -> u8 {
    match phase {
        Phase::Start => 0,
        Phase::Collecting => 1,
        Phase::Done => 2,
    }
}

fn byte_phase(b: u8) -> Phase {
    match b {
        0 => Phase::Start,
        1 => Phase::Collecting,
        2 => Phase::Done,
        other => unreachable!("invalid phase byte {other}"),
    }
}

/// Encoder/decoder for one configuration's states. All states of a
/// configuration occupy the same number of bytes ([`Codec::stride`]), which
/// lets the visited set store them in one flat arena.
#[derive(Clone, Debug)]
pub struct Codec {
    cfg: Config,
    stride: usize,
}

impl Codec {
    pub fn new(cfg: &Config) -> Codec {
        let cap = usize::from(cfg.channel_cap);
        let proposer_width = match cfg.variant {
            Variant::Baseline => BASELINE_PROPOSER_WIDTH,
            Variant::Optimized => OPTIMIZED_PROPOSER_WIDTH,
        };
        let learner_width = 2 + usize::from(cfg.proposers);
        let stride = (1 + cap * PREPARE_WIDTH)
            + 3 * (1 + cap * TRIPLE_WIDTH)
            + usize::from(cfg.proposers) * proposer_width
            + usize::from(cfg.acceptors) * ACCEPTOR_WIDTH
            + cfg.learner_count() * learner_width;
        Codec { cfg: cfg.clone(), stride }
    }

    /// Bytes per encoded state.
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn encode(&self, s: &GlobalState) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.stride);
        self.encode_into(s, &mut out);
        out
    }

    /// Clear `out` and fill it with the encoding of `s`.
    pub fn encode_into(&self, s: &GlobalState, out: &mut Vec<u8>) {
        out.clear();
        encode_channel(out, &s.prepare, PREPARE_WIDTH);
        encode_channel(out, &s.promise, TRIPLE_WIDTH);
        encode_channel(out, &s.accept, TRIPLE_WIDTH);
        encode_channel(out, &s.learn, TRIPLE_WIDTH);
        for p in &s.proposers {
            out.push(phase_byte(p.phase));
            if self.cfg.variant == Variant::Baseline {
                out.push(p.sent);
                out.push(p.count);
                out.push(bias(p.hr));
                out.push(bias(p.hval));
            }
        }
        for a in &s.acceptors {
            out.push(bias(a.rnd));
            out.push(bias(a.vrnd));
            out.push(bias(a.vval));
        }
        for l in &s.learners {
            match self.cfg.learner_mode {
                LearnerMode::Abstract => {
                    out.push(bias(l.lastval));
                    out.push(u8::from(l.violation));
                }
                LearnerMode::Concrete(_) => {
                    out.push(bias(l.learned_round));
                    out.push(bias(l.learned_value));
                }
            }
            out.extend_from_slice(&l.mcount);
        }
        debug_assert_eq!(out.len(), self.stride);
    }

    /// Rebuild the state a byte string encodes. Only bytes produced by
    /// [`Codec::encode`] for the same configuration are valid input.
    pub fn decode(&self, bytes: &[u8]) -> GlobalState {
        debug_assert_eq!(bytes.len(), self.stride);
        let cfg = &self.cfg;
        let cap = usize::from(cfg.channel_cap);
        let mut at = 0usize;

        let mut channel = |width: usize, kind: ChannelKind| -> Channel {
            let len = usize::from(bytes[at]);
            let slots = &bytes[at + 1..at + 1 + cap * width];
            at += 1 + cap * width;
            let mut chan = Channel::new(cap, cfg.order);
            for i in 0..len {
                let f = &slots[i * width..(i + 1) * width];
                let m = match kind {
                    ChannelKind::Prepare => {
                        Message::Prepare { acceptor_id: f[0], round: f[1] }
                    }
                    ChannelKind::Promise => Message::Promise {
                        round: f[0],
                        vrnd: unbias(f[1]),
                        vval: unbias(f[2]),
                    },
                    ChannelKind::Accept => Message::Accept {
                        acceptor_id: f[0],
                        round: f[1],
                        value: unbias(f[2]),
                    },
                    ChannelKind::Learn => Message::Learn {
                        acceptor_id: f[0],
                        round: f[1],
                        value: unbias(f[2]),
                    },
                };
                // Contents were stored in canonical order, so re-inserting
                // in that order reproduces them exactly for both orderings.
                chan = chan.insert(m).expect("encoded length never exceeds capacity");
            }
            chan
        };

        let prepare = channel(PREPARE_WIDTH, ChannelKind::Prepare);
        let promise = channel(TRIPLE_WIDTH, ChannelKind::Promise);
        let accept = channel(TRIPLE_WIDTH, ChannelKind::Accept);
        let learn = channel(TRIPLE_WIDTH, ChannelKind::Learn);

        let mut proposers = Vec::with_capacity(usize::from(cfg.proposers));
        for i in 0..cfg.proposers {
            let mut p = ProposerState::new(i);
            p.phase = byte_phase(bytes[at]);
            at += 1;
            if cfg.variant == Variant::Baseline {
                p.sent = bytes[at];
                p.count = bytes[at + 1];
                p.hr = unbias(bytes[at + 2]);
                p.hval = unbias(bytes[at + 3]);
                at += 4;
            }
            proposers.push(p);
        }

        let mut acceptors = Vec::with_capacity(usize::from(cfg.acceptors));
        for id in 0..cfg.acceptors {
            acceptors.push(AcceptorState {
                id,
                rnd: unbias(bytes[at]),
                vrnd: unbias(bytes[at + 1]),
                vval: unbias(bytes[at + 2]),
            });
            at += 3;
        }

        let rounds = usize::from(cfg.proposers);
        let mut learners = Vec::with_capacity(cfg.learner_count());
        for _ in 0..cfg.learner_count() {
            let mut l = LearnerState::new(cfg.proposers);
            match cfg.learner_mode {
                LearnerMode::Abstract => {
                    l.lastval = unbias(bytes[at]);
                    l.violation = bytes[at + 1] != 0;
                }
                LearnerMode::Concrete(_) => {
                    l.learned_round = unbias(bytes[at]);
                    l.learned_value = unbias(bytes[at + 1]);
                }
            }
            at += 2;
            l.mcount.copy_from_slice(&bytes[at..at + rounds]);
            at += rounds;
            learners.push(l);
        }
        debug_assert_eq!(at, self.stride);

        GlobalState { prepare, promise, accept, learn, proposers, acceptors, learners }
    }
}

#[derive(Clone, Copy)]
enum ChannelKind {
    Prepare,
    Promise,
    Accept,
    Learn,
}

fn encode_channel(out: &mut Vec<u8>, chan: &Channel, width: usize) {
    out.push(chan.len() as u8);
    let start = out.len();
    for m in chan.contents() {
        match *m {
            Message::Prepare { acceptor_id, round } => {
                out.push(acceptor_id);
                out.push(round);
            }
            Message::Promise { round, vrnd, vval } => {
                out.push(round);
                out.push(bias(vrnd));
                out.push(bias(vval));
            }
            Message::Accept { acceptor_id, round, value }
            | Message::Learn { acceptor_id, round, value } => {
                out.push(acceptor_id);
                out.push(round);
                out.push(bias(value));
            }
        }
    }
    out.resize(start + chan.capacity() * width, 0);
}
