//! Automorphism and isomorphism results checked against brute force on
//! every small graph.

use std::collections::BTreeMap;

use frucht::aut::{are_isomorphic, automorphism_group, is_automorphism, SearchLimits};
use frucht::graph::Graph;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;
use common::*;

fn engine_order(g: &Graph, colors: Option<&[u32]>) -> u64 {
    let r = automorphism_group(g, colors, &SearchLimits::default()).unwrap();
    if colors.is_none() {
        for gen in &r.generators {
            assert!(is_automorphism(g, gen));
        }
    }
    r.order.try_into().unwrap()
}

#[test]
fn class_counts_match_known_sequence() {
    let classes = classes_up_to(8);
    let counts: Vec<usize> = classes.iter().map(Vec::len).collect();
    assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044, 12346]);
    // Orbit-counting check: sum over classes of 8!/|Aut| is the number of labeled graphs.
    let labeled: u64 = classes[8]
        .iter()
        .map(|&code| 40320 / engine_order(&graph_from_code(8, code), None))
        .sum();
    assert_eq!(labeled, 1 << 28);
}

#[test]
fn every_labeled_graph_on_six_vertices() {
    let n = 6;
    let pairs = n * (n - 1) / 2;
    for code in 0u64..1 << pairs {
        let g = graph_from_code(n, code);
        let expect = brute_aut_count(n, &adjacency(n, code), &[0; 6]);
        assert_eq!(engine_order(&g, None), expect, "code {code}");
    }
}

#[test]
fn every_class_on_seven_vertices() {
    let classes = classes_up_to(7);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &code in &classes[7] {
        let g = graph_from_code(7, code);
        let expect = brute_aut_count(7, &adjacency(7, code), &[0; 7]);
        assert_eq!(engine_order(&g, None), expect, "code {code}");
        let mut perm: Vec<usize> = (0..7).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm).unwrap();
        assert!(are_isomorphic(&g, &h, &SearchLimits::default()).unwrap());
    }
}

#[test]
fn distinct_classes_are_not_isomorphic() {
    let classes = classes_up_to(7);
    let limits = SearchLimits::default();
    for (n, codes) in classes.iter().enumerate().skip(5) {
        let mut by_degrees: BTreeMap<Vec<usize>, Vec<Graph>> = BTreeMap::new();
        for &code in codes {
            let g = graph_from_code(n, code);
            let mut d = g.degrees();
            d.sort_unstable();
            by_degrees.entry(d).or_default().push(g);
        }
        for group in by_degrees.values() {
            for (i, a) in group.iter().enumerate() {
                for b in &group[i + 1..] {
                    assert!(!are_isomorphic(a, b, &limits).unwrap());
                }
            }
        }
    }
}

#[test]
fn colored_graphs_on_six_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 6;
    for code in (0u64..1 << 15).step_by(37) {
        let colors: Vec<u32> = (0..n).map(|_| rand::Rng::random_range(&mut rng, 0..3)).collect();
        let g = graph_from_code(n, code);
        let expect = brute_aut_count(n, &adjacency(n, code), &colors);
        assert_eq!(engine_order(&g, Some(&colors)), expect, "code {code} colors {colors:?}");
    }
}

#[test]
fn structured_families() {
    let fact = |k: u64| (1..=k).product::<u64>();
    for n in 1..=7 {
        let r = automorphism_group(&hypercube(n), None, &SearchLimits::default()).unwrap();
        assert_eq!(r.order, BigUint::from((1u64 << n) * fact(n as u64)), "Q_{n}");
    }
    for k in 3..=30 {
        assert_eq!(engine_order(&Graph::cycle(k), None), 2 * k as u64);
    }
    for k in 1..=12 {
        assert_eq!(engine_order(&Graph::complete(k), None), fact(k as u64));
    }
    assert_eq!(engine_order(&Graph::complete_bipartite(4, 5), None), fact(4) * fact(5));
    assert_eq!(engine_order(&Graph::complete_bipartite(4, 4), None), 2 * fact(4) * fact(4));
    assert_eq!(engine_order(&Graph::petersen(), None), 120);
}

/// Rooted-tree automorphism count by canonical forms of subtrees.
fn tree_aut_count(g: &Graph) -> BigUint {
    fn centers(g: &Graph) -> Vec<usize> {
        let n = g.vertex_count();
        let mut deg = g.degrees();
        let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &u in g.neighbors(v) {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        next.push(u);
                    }
                }
            }
            layer = next;
        }
        layer
    }
    fn rooted(g: &Graph, v: usize, parent: usize) -> (String, BigUint) {
        let mut kids: Vec<(String, BigUint)> = g
            .neighbors(v)
            .iter()
            .filter(|&&u| u != parent)
            .map(|&u| rooted(g, u, v))
            .collect();
        kids.sort_by(|a, b| a.0.cmp(&b.0));
        let mut count = BigUint::from(1u32);
        let mut i = 0;
        while i < kids.len() {
            let mut j = i;
            while j < kids.len() && kids[j].0 == kids[i].0 {
                count *= &kids[j].1;
                j += 1;
            }
            for k in 1..=(j - i) {
                count *= BigUint::from(k);
            }
            i = j;
        }
        let code = format!("({})", kids.iter().map(|k| k.0.as_str()).collect::<String>());
        (code, count)
    }
    let c = centers(g);
    if c.len() == 1 {
        rooted(g, c[0], usize::MAX).1
    } else {
        let (a, b) = (c[0], c[1]);
        let (ca, na) = rooted(g, a, b);
        let (cb, nb) = rooted(g, b, a);
        let mut n = na * nb;
        if ca == cb {
            n *= 2u32;
        }
        n
    }
}

#[test]
fn trees_agree_with_subtree_canonical_forms() {
    use frucht::trees::{Family, TreeFamily};
    for m in 0..=5 {
        for fam in [Family::Unary, Family::Compact] {
            let t = fam.tree(m).tree;
            let r = automorphism_group(&t, None, &SearchLimits::default()).unwrap();
            assert_eq!(r.order, tree_aut_count(&t));
            assert_eq!(r.order, BigUint::from(1u32));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..60 {
        let edges: Vec<(usize, usize)> =
            (1..n).map(|v| (rand::Rng::random_range(&mut rng, 0..v), v)).collect();
        let t = Graph::new(n, edges).unwrap();
        let r = automorphism_group(&t, None, &SearchLimits::default()).unwrap();
        assert_eq!(r.order, tree_aut_count(&t), "random tree {n}");
    }
}
