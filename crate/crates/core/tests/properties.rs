mod common;

use proptest::prelude::*;

use chromatic_bracket::coloring::{count_colorings, enumerate_colorings, is_proper};
use chromatic_bracket::diagram::{chord_immersion, CrossingKind, Diagram, Port};
use chromatic_bracket::generators::{random_cubic, random_plane_cubic};
use chromatic_bracket::graph::{bridges, GraphError};
use chromatic_bracket::matching::{
    colorings_from_even_matching_as, enumerate_perfect_matchings, is_even_matching,
    matching_from_coloring,
};
use chromatic_bracket::penrose::{
    contract_extended, per_coloring_weights, skein_evaluate, Contraction,
};
use chromatic_bracket::state::{logical_expansion_count, make_state, squeeze, Switch};
use chromatic_bracket::{Color, CubicGraph};

use common::oracle_count;

/// A uniformly shuffled pairing of `3n` stubs, built by proptest itself.
fn cubic(max_nodes: usize) -> impl Strategy<Value = CubicGraph> {
    (1..=max_nodes / 2)
        .prop_flat_map(|k| {
            Just((0..2 * k).flat_map(|v| [v, v, v]).collect::<Vec<usize>>()).prop_shuffle()
        })
        .prop_map(|stubs| {
            let n = stubs.len() / 3;
            CubicGraph::new(n, stubs.chunks(2).map(|p| (p[0], p[1])).collect()).unwrap()
        })
}

fn immersed(max_nodes: usize) -> impl Strategy<Value = (CubicGraph, Diagram)> {
    cubic(max_nodes)
        .prop_flat_map(|g| {
            let order: Vec<usize> = (0..g.node_count()).collect();
            (Just(g), Just(order).prop_shuffle())
        })
        .prop_map(|(g, order)| {
            let d = chord_immersion(&g, &order).unwrap();
            (g, d)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degrees_sum_to_twice_the_edges(g in cubic(16)) {
        let total: usize = (0..g.node_count()).map(|v| g.incident(v).len()).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn bridges_are_exactly_the_disconnecting_edges(g in cubic(16)) {
        match bridges(&g) {
            Err(e) => {
                prop_assert_eq!(e, GraphError::Disconnected);
                prop_assert!(!g.is_connected());
            }
            Ok(bs) => {
                for e in 0..g.edge_count() {
                    let parts = g.component_count_without(e);
                    if bs.contains(&e) {
                        prop_assert_eq!(parts, 2);
                    } else {
                        prop_assert_eq!(parts, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn colorings_come_in_sixes(g in cubic(14)) {
        let count = count_colorings(&g);
        prop_assert_eq!(count % 6, 0);
        if g.has_loop() {
            prop_assert_eq!(count, 0);
        }
        let all = enumerate_colorings(&g);
        prop_assert_eq!(all.len() as u64, count);
        prop_assert!(all.iter().all(|c| is_proper(&g, c).unwrap()));
    }

    #[test]
    fn search_agrees_with_exhaustion(g in cubic(8)) {
        prop_assert_eq!(count_colorings(&g), oracle_count(&g));
    }

    #[test]
    fn colorable_iff_some_matching_is_even(g in cubic(14)) {
        let even = enumerate_perfect_matchings(&g).iter().any(|m| is_even_matching(&g, m).unwrap());
        prop_assert_eq!(count_colorings(&g) > 0, even);
    }

    #[test]
    fn color_classes_round_trip(g in cubic(10)) {
        for c in enumerate_colorings(&g).into_iter().take(12) {
            for k in Color::ALL {
                let m = matching_from_coloring(&g, &c, k).unwrap();
                let back = colorings_from_even_matching_as(&g, &m, k).unwrap();
                prop_assert!(back.contains(&c));
            }
        }
    }

    #[test]
    fn state_expansion_counts_colorings(g in cubic(10)) {
        let count = count_colorings(&g);
        for m in enumerate_perfect_matchings(&g).iter().take(6) {
            prop_assert_eq!(logical_expansion_count(&g, m).unwrap(), count);
        }
    }

    #[test]
    fn squeezing_restores_the_graph(g in cubic(12), mask in any::<u64>()) {
        if let Some(m) = enumerate_perfect_matchings(&g).first() {
            let s = make_state(&g, m, &Switch::vector(mask, m.len())).unwrap();
            prop_assert_eq!(squeeze(&s), g);
        }
    }

    #[test]
    fn immersions_count_colorings((g, d) in immersed(10)) {
        prop_assert_eq!(d.genus(), 0);
        prop_assert_eq!(d.underlying_graph().unwrap().graph.edge_multiset(), g.edge_multiset());
        let count = count_colorings(&g) as i64;
        prop_assert_eq!(contract_extended(&d).unwrap().0, count);
        prop_assert_eq!(skein_evaluate(&d).unwrap().0, count);
        let weights = per_coloring_weights(&d, Contraction::Extended).unwrap();
        prop_assert!(weights.iter().all(|(_, w)| *w == 1));
    }

    #[test]
    fn twists_do_not_change_the_bracket((_g, d) in immersed(8), v in any::<prop::sample::Index>(), i in 0..3usize) {
        let v = v.index(d.node_count());
        let cw = d.node_cw(v);
        prop_assume!(d.arc_at(Port::node(v, cw[i])) != d.arc_at(Port::node(v, cw[(i + 1) % 3])));
        let twisted = d.insert_twist(v, i, CrossingKind::Circled);
        prop_assert_eq!(twisted.genus(), 0);
        prop_assert_eq!(contract_extended(&twisted).unwrap(), contract_extended(&d).unwrap());
        prop_assert_eq!(skein_evaluate(&twisted).unwrap(), contract_extended(&d).unwrap());
    }

    #[test]
    fn free_loops_multiply_by_three((_g, d) in immersed(8), k in 0..3usize) {
        let base = contract_extended(&d).unwrap().0;
        let more = d.with_free_loops(k);
        prop_assert_eq!(contract_extended(&more).unwrap().0, base * 3i64.pow(k as u32));
        prop_assert_eq!(skein_evaluate(&more).unwrap().0, base * 3i64.pow(k as u32));
    }

    #[test]
    fn traversals_reverse((_g, d) in immersed(10)) {
        let st = d.strands();
        for s in &st.open {
            let back: Vec<(usize, u8)> =
                s.through.iter().rev().map(|&(x, slot)| (x, (slot + 2) % 4)).collect();
            prop_assert_eq!(d.traversal_from(s.end), back);
        }
    }

    #[test]
    fn json_round_trips((g, d) in immersed(10)) {
        prop_assert_eq!(CubicGraph::from_json(&g.to_json()).unwrap(), g);
        prop_assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn plane_growth_keeps_weights_positive(n in 1..8usize, seed in any::<u64>()) {
        let d = random_plane_cubic(2 * n, seed);
        prop_assert_eq!(d.genus(), 0);
        prop_assert_eq!(&d, &random_plane_cubic(2 * n, seed));
        let weights = per_coloring_weights(&d, Contraction::Plain).unwrap();
        prop_assert!(weights.iter().all(|(_, w)| *w == 1));
    }

    #[test]
    fn random_cubic_is_deterministic(n in 1..8usize, seed in any::<u64>()) {
        prop_assert_eq!(random_cubic(2 * n, seed), random_cubic(2 * n, seed));
    }
}
