//! Property checks on graph I/O, refinement, invariants, constructions and genus.

mod common;

use std::collections::BTreeSet;

use frucht::aut::{automorphism_group, color_refinement, OrderedPartition, SearchLimits};
use frucht::construct::{build_gamma_1, gamma_1_vertex_count, Budget};
use frucht::genus::{euler_girth_lower_bound, exact_genus, genus_bounds, genus_of_rotation, RotationSystem};
use frucht::graph::io::{read_edge_list, read_graph6, write_edge_list, write_graph6};
use frucht::graph::Graph;
use frucht::trees::{CertifiedFamily, Family};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    // A random spanning tree plus random chords.
    (2..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<prop::sample::Index>(), n - 1),
            proptest::collection::vec((0..n, 0..n), 0..=n),
        )
            .prop_map(move |(parents, chords)| {
                let mut set = BTreeSet::new();
                for (i, p) in parents.iter().enumerate() {
                    let v = i + 1;
                    set.insert((p.index(v), v));
                }
                for (a, b) in chords {
                    if a != b {
                        set.insert((a.min(b), a.max(b)));
                    }
                }
                Graph::new(n, set).unwrap()
            })
    })
}

fn arb_relabeled(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Odd closed walk of length ≤ n exists iff the graph has an odd cycle.
fn has_odd_cycle(g: &Graph) -> bool {
    let n = g.vertex_count();
    let adj = common::adjacency_of(g);
    let mul = |x: &Vec<Vec<bool>>| -> Vec<Vec<bool>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| x[i][k] && adj[k][j])).collect())
            .collect()
    };
    let mut power = adj.clone();
    for len in 1..=n {
        if len % 2 == 1 && (0..n).any(|i| power[i][i]) {
            return true;
        }
        power = mul(&power);
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trip(g in arb_graph(40)) {
        let text = write_graph6(&g).unwrap();
        let back = read_graph6(&text).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(30)) {
        let back = read_edge_list(&write_edge_list(&g)).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn degree_sum_is_twice_edges(g in arb_graph(30)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn bipartite_iff_no_odd_cycle(g in arb_connected(12)) {
        let bip = g.bipartition().unwrap().is_some();
        prop_assert_eq!(bip, !has_odd_cycle(&g));
        // Even girth alone does not imply bipartite (a 4-cycle sharing a
        // vertex with a 5-cycle), so only this direction holds.
        if bip {
            if let Some(girth) = g.girth() {
                prop_assert_eq!(girth % 2, 0);
            }
        }
    }

    #[test]
    fn refinement_commutes_with_relabeling((g, perm) in arb_relabeled(14)) {
        let n = g.vertex_count();
        let h = g.relabel(&perm).unwrap();
        let rg = color_refinement(&g, &OrderedPartition::unit(n));
        let rh = color_refinement(&h, &OrderedPartition::unit(n));
        prop_assert_eq!(rg.cells().len(), rh.cells().len());
        for (cg, ch) in rg.cells().iter().zip(rh.cells()) {
            let mapped: BTreeSet<usize> = cg.iter().map(|&v| perm[v]).collect();
            let other: BTreeSet<usize> = ch.iter().copied().collect();
            prop_assert_eq!(mapped, other);
        }
    }

    #[test]
    fn aut_order_invariant_under_relabeling((g, perm) in arb_relabeled(12)) {
        let h = g.relabel(&perm).unwrap();
        let limits = SearchLimits::default();
        let a = automorphism_group(&g, None, &limits).unwrap();
        let b = automorphism_group(&h, None, &limits).unwrap();
        prop_assert_eq!(a.order, b.order);
    }

    #[test]
    fn exact_genus_respects_bounds(g in arb_connected(8)) {
        let bounds = genus_bounds(&g).unwrap();
        let exact = exact_genus(&g, 2_000_000).unwrap();
        prop_assume!(!exact.budget_exhausted);
        let e = exact.exact.unwrap();
        prop_assert!(e >= euler_girth_lower_bound(&g).unwrap());
        prop_assert!(e >= bounds.lower);
        prop_assert!(bounds.upper.is_none_or(|u| e <= u));
        // Any particular embedding has genus at least the minimum.
        prop_assert!(genus_of_rotation(&g, &RotationSystem::ascending(&g)).unwrap() >= e);
    }
}

#[test]
fn bipartition_rejects_disconnected() {
    assert!(Graph::empty(2).bipartition().is_err());
}

#[test]
fn gamma_1_sizes_match_counts() {
    let limits = SearchLimits::default();
    for family in [Family::Unary, Family::Compact] {
        for n in 2..=3 {
            let max_m = n * (1 << (n - 1)) - 1;
            let fam = CertifiedFamily::certify(family, max_m, &limits).unwrap();
            let cr = build_gamma_1(n, &fam, &Budget::default()).unwrap();
            assert_eq!(cr.graph.vertex_count() as u128, gamma_1_vertex_count(n, family), "{family} n={n}");
            assert!(cr.graph.is_connected());
        }
    }
}
