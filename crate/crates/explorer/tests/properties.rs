//! Property tests: the search result is a function of the configuration
//! alone. Worker count must not show through, the counts must agree with a
//! naive search over structural state equality, and resource limits may
//! truncate an answer but never change it.

use std::collections::HashSet;

use paxos_explorer::{explore_with, ExploreOptions, Limits, Verdict};
use paxos_model::{
    apply, enabled_transitions, initial_state, Config, GlobalState, LearnerMode, ReceiveMode,
    Variant,
};
use proptest::prelude::*;

/// Instances small enough that a clone-happy reference search stays cheap:
/// every config here closes within a few thousand states.
fn arb_config() -> impl Strategy<Value = Config> {
    (1u8..=2, 1u8..=2, any::<bool>(), any::<bool>(), any::<bool>())
        .prop_flat_map(|(proposers, acceptors, optimized, any_match, concrete)| {
            (1u8..=acceptors).prop_map(move |maj| {
                let mut cfg = Config::new(proposers, acceptors).with_maj(maj);
                if optimized {
                    cfg = cfg.with_variant(Variant::Optimized);
                }
                if any_match {
                    cfg = cfg.with_receive(ReceiveMode::AnyMatch);
                }
                if concrete {
                    cfg = cfg.with_learners(LearnerMode::Concrete(2));
                }
                cfg
            })
        })
}

fn options(workers: usize) -> ExploreOptions {
    ExploreOptions { workers, exhaustive: false }
}

/// Reference search: plain breadth-first layers over structural equality,
/// stopping (like the checker) only once the layer where the first
/// violation appeared has been fully generated. Returns (violation found,
/// distinct states discovered).
fn naive_layered_bfs(cfg: &Config) -> (bool, u64) {
    let root = initial_state(cfg).expect("valid test config");
    let mut seen: HashSet<GlobalState> = HashSet::new();
    let mut found = root.is_violating();
    seen.insert(root.clone());
    let mut frontier = vec![root];
    while !frontier.is_empty() && !found {
        let mut next_layer = Vec::new();
        for state in &frontier {
            for tid in enabled_transitions(state, cfg) {
                let succ = apply(state, cfg, tid).expect("enumerated transitions apply");
                if succ == *state {
                    continue; // enumerated self-loops do not create states
                }
                if seen.insert(succ.clone()) {
                    found |= succ.is_violating();
                    next_layer.push(succ);
                }
            }
        }
        frontier = next_layer;
    }
    (found, seen.len() as u64)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn the_full_report_is_worker_count_invariant(
        cfg in arb_config(),
        workers in 2usize..5,
    ) {
        let one = explore_with(&cfg, &Limits::default(), &options(1)).unwrap();
        let many = explore_with(&cfg, &Limits::default(), &options(workers)).unwrap();
        prop_assert_eq!(one.report.verdict, many.report.verdict);
        prop_assert_eq!(one.report.states_explored, many.report.states_explored);
        prop_assert_eq!(one.report.transitions_fired, many.report.transitions_fired);
        prop_assert_eq!(one.report.max_depth, many.report.max_depth);
        prop_assert_eq!(&one.report.trace, &many.report.trace);
        prop_assert_eq!(one.violating_states, many.violating_states);
        prop_assert_eq!(one.majority_pairs, many.majority_pairs);
    }

    #[test]
    fn counts_agree_with_a_naive_search_over_structural_equality(cfg in arb_config()) {
        let report = explore_with(&cfg, &Limits::default(), &options(1)).unwrap().report;
        let (naive_found, naive_states) = naive_layered_bfs(&cfg);
        prop_assert_eq!(report.verdict == Verdict::Unsafe, naive_found);
        prop_assert_eq!(report.states_explored, naive_states,
            "canonical-encoding identity must coincide with structural identity");
    }

    #[test]
    fn limits_truncate_but_never_change_an_answer(
        cfg in arb_config(),
        max_states in 1u64..60,
    ) {
        let full = explore_with(&cfg, &Limits::default(), &options(1)).unwrap().report;
        let limits = Limits { max_states, ..Limits::default() };
        let limited = explore_with(&cfg, &limits, &options(1)).unwrap().report;
        match limited.verdict {
            Verdict::LimitExceeded => {
                prop_assert!(limited.states_explored >= max_states.min(full.states_explored));
            }
            verdict => prop_assert_eq!(verdict, full.verdict),
        }
    }
}
