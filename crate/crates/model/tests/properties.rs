//! Randomized invariants: canonical channel form, enumeration/application
//! consistency, and the structural guarantees every reachable state obeys
//! (acceptor monotonicity, round-value uniqueness, no intermediate quorum
//! tallies in the optimized variant).

use std::collections::HashMap;

use proptest::prelude::*;

use paxos_model::{
    apply, enabled_transitions, initial_state, Channel, ChannelOrder, Config, GlobalState,
    LearnerMode, Message, Phase, ReceiveMode, TransitionId, Variant,
};

fn arb_message() -> impl Strategy<Value = Message> {
    prop_oneof![
        (0u8..4, 1u8..4).prop_map(|(a, r)| Message::Prepare { acceptor_id: a, round: r }),
        (1u8..4, -1i16..4, -1i16..4)
            .prop_map(|(r, vr, vv)| Message::Promise { round: r, vrnd: vr, vval: vv }),
        (0u8..4, 1u8..4, 1i16..4)
            .prop_map(|(a, r, v)| Message::Accept { acceptor_id: a, round: r, value: v }),
        (0u8..4, 1u8..4, 1i16..4)
            .prop_map(|(a, r, v)| Message::Learn { acceptor_id: a, round: r, value: v }),
    ]
}

fn arb_config() -> impl Strategy<Value = Config> {
    (1u8..=2, 1u8..=3)
        .prop_flat_map(|(p, a)| {
            (
                Just(p),
                Just(a),
                1u8..=a,
                any::<bool>(),
                any::<bool>(),
                any::<bool>(),
                any::<bool>(),
            )
        })
        .prop_map(|(p, a, maj, optimized, any_match, fifo, concrete)| {
            let mut cfg = Config::new(p, a).with_maj(maj);
            if optimized {
                cfg = cfg.with_variant(Variant::Optimized);
            }
            if any_match {
                cfg = cfg.with_receive(ReceiveMode::AnyMatch);
            }
            if fifo {
                cfg = cfg.with_order(ChannelOrder::Fifo);
            }
            if concrete {
                cfg = cfg.with_learners(LearnerMode::Concrete(2));
            }
            cfg
        })
}

/// Walk `choices.len()` steps from the initial state, calling `check` on
/// every (state, successor) pair actually taken.
fn walk(
    cfg: &Config,
    choices: &[u32],
    mut check: impl FnMut(&GlobalState, TransitionId, &GlobalState),
) -> GlobalState {
    let mut state = initial_state(cfg).expect("generated configs are valid");
    for &c in choices {
        let enabled = enabled_transitions(&state, cfg);
        if enabled.is_empty() {
            break;
        }
        let tid = enabled[c as usize % enabled.len()];
        let next = apply(&state, cfg, tid).expect("enumerated transitions must apply");
        check(&state, tid, &next);
        state = next;
    }
    state
}

/// Every Accept/Learn message in flight for one round must carry one value.
fn assert_round_value_unique(s: &GlobalState) {
    let mut seen: HashMap<u8, i16> = HashMap::new();
    let messages = s.accept.contents().iter().chain(s.learn.contents());
    for m in messages {
        let (round, value) = match *m {
            Message::Accept { round, value, .. } | Message::Learn { round, value, .. } => {
                (round, value)
            }
            _ => continue,
        };
        match seen.insert(round, value) {
            Some(prev) => assert_eq!(
                prev, value,
                "round {round} carries two values ({prev} and {value}) in {s:?}"
            ),
            None => {}
        }
    }
}

/// All transition ids that are structurally expressible for this state,
/// whether or not they are enabled.
fn constructible_ids(s: &GlobalState, cfg: &Config) -> Vec<TransitionId> {
    let mut out = Vec::new();
    for p in 0..cfg.proposers {
        out.push(TransitionId::PrepareSend { proposer: p });
        out.push(TransitionId::PrepareBroadcast { proposer: p });
        out.push(TransitionId::TryAccept { proposer: p });
        out.push(TransitionId::QuorumStep { proposer: p });
        for slot in 0..s.promise.len() as u8 {
            out.push(TransitionId::RecvPromise { proposer: p, slot });
        }
    }
    for a in 0..cfg.acceptors {
        for slot in 0..s.prepare.len() as u8 {
            out.push(TransitionId::RecvPrepare { acceptor: a, slot });
            out.push(TransitionId::PeekPrepare { acceptor: a, slot });
        }
        for slot in 0..s.accept.len() as u8 {
            out.push(TransitionId::RecvAccept { acceptor: a, slot });
        }
    }
    for l in 0..cfg.learner_count() as u8 {
        for slot in 0..s.learn.len() as u8 {
            out.push(TransitionId::LearnerStep { learner: l, slot });
        }
    }
    out
}

proptest! {
    /// Sorted channels are a canonical multiset form: contents are
    /// independent of insertion order.
    #[test]
    fn sorted_contents_do_not_depend_on_insertion_order(
        (msgs, shuffled) in proptest::collection::vec(arb_message(), 0..8)
            .prop_flat_map(|m| (Just(m.clone()), Just(m).prop_shuffle()))
    ) {
        let mut a = Channel::new(8, ChannelOrder::Sorted);
        let mut b = Channel::new(8, ChannelOrder::Sorted);
        for m in &msgs {
            a = a.insert(*m).unwrap();
        }
        for m in &shuffled {
            b = b.insert(*m).unwrap();
        }
        prop_assert_eq!(a.contents(), b.contents());
    }

    /// Message rendering round-trips through parsing (trace files rely on it).
    #[test]
    fn message_display_round_trips(m in arb_message()) {
        prop_assert_eq!(m.to_string().parse::<Message>().unwrap(), m);
    }

    /// Along any walk: every enumerated id applies, acceptor rounds never
    /// decrease, and every visited state keeps one value per round in
    /// flight.
    #[test]
    fn walks_preserve_structural_invariants(
        cfg in arb_config(),
        choices in proptest::collection::vec(any::<u32>(), 0..40),
    ) {
        let end = walk(&cfg, &choices, |pre, _tid, post| {
            for (before, after) in pre.acceptors.iter().zip(&post.acceptors) {
                assert!(after.rnd >= before.rnd, "acceptor round decreased");
                assert!(after.vrnd >= before.vrnd, "accepted round decreased");
            }
            assert_round_value_unique(post);
            // Enumerated ids must all be applicable, not only the taken one.
            for tid in enabled_transitions(pre, &cfg) {
                assert!(
                    apply(pre, &cfg, tid).is_ok(),
                    "enumerated transition {tid:?} failed to apply"
                );
            }
        });
        assert_round_value_unique(&end);
    }

    /// The optimized variant has no intermediate tally states: proposer
    /// bookkeeping used by the baseline stays at its reset values forever.
    #[test]
    fn optimized_walks_never_materialize_vote_tallies(
        cfg in arb_config().prop_map(|c| c.with_variant(Variant::Optimized)),
        choices in proptest::collection::vec(any::<u32>(), 0..40),
    ) {
        walk(&cfg, &choices, |_pre, _tid, post| {
            for p in &post.proposers {
                assert_eq!((p.count, p.hr, p.hval, p.sent), (0, -1, -1, 0));
            }
        });
    }

    /// Application and enumeration agree: an id applies successfully iff it
    /// is enumerated or (under distinct-message fan-out) duplicates the
    /// effect of an enumerated one. Checked in canonical-order mode where
    /// equal messages are interchangeable.
    #[test]
    fn application_agrees_with_enumeration(
        cfg in arb_config()
            .prop_map(|c| c.with_receive(ReceiveMode::AnyMatch).with_order(ChannelOrder::Sorted)),
        choices in proptest::collection::vec(any::<u32>(), 0..25),
    ) {
        let end = walk(&cfg, &choices, |_, _, _| {});
        let enabled = enabled_transitions(&end, &cfg);
        let successors: Vec<GlobalState> = enabled
            .iter()
            .map(|t| apply(&end, &cfg, *t).expect("enumerated transitions must apply"))
            .collect();
        for tid in constructible_ids(&end, &cfg) {
            match (apply(&end, &cfg, tid), enabled.contains(&tid)) {
                (Ok(_), true) | (Err(_), false) => {}
                (Err(e), true) => panic!("enumerated {tid:?} failed: {e}"),
                (Ok(next), false) => assert!(
                    successors.contains(&next),
                    "{tid:?} applies but reaches a state no enumerated transition reaches"
                ),
            }
        }
    }

    /// Retired proposers stay retired: once Done, a proposer contributes no
    /// further transitions.
    #[test]
    fn done_proposers_contribute_no_transitions(
        cfg in arb_config(),
        choices in proptest::collection::vec(any::<u32>(), 0..40),
    ) {
        walk(&cfg, &choices, |pre, tid, _post| {
            let (role, index) = tid.actor();
            if role == "proposer" {
                assert_ne!(
                    pre.proposers[usize::from(index)].phase,
                    Phase::Done,
                    "a Done proposer acted"
                );
            }
        });
    }
}
