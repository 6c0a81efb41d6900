//! Brute-force helpers shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop, clippy::too_many_arguments)]

use std::collections::HashSet;

use frucht::graph::Graph;

pub fn pair_bit(n: usize, u: usize, v: usize) -> u32 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    // Index of (a, b) in the row-major upper triangle.
    (a * (2 * n - a - 1) / 2 + (b - a - 1)) as u32
}

pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if code >> pair_bit(n, u, v) & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn adjacency(n: usize, code: u64) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            if code >> pair_bit(n, u, v) & 1 == 1 {
                a[u][v] = true;
                a[v][u] = true;
            }
        }
    }
    a
}

pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, f);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut f);
}

pub fn brute_aut_count(n: usize, adj: &[Vec<bool>], colors: &[u32]) -> u64 {
    let mut count = 0;
    for_each_permutation(n, |p| {
        let ok = (0..n).all(|u| colors[u] == colors[p[u]])
            && (0..n).all(|u| (u + 1..n).all(|v| adj[u][v] == adj[p[u]][p[v]]));
        if ok {
            count += 1;
        }
    });
    count
}

/// Minimum relabeled code over all labelings that sort vertices by an
/// invariant key (degree, then sorted neighbor degrees).
pub fn canonical_code(n: usize, adj: &[Vec<bool>]) -> u64 {
    let deg: Vec<usize> = (0..n).map(|v| adj[v].iter().filter(|&&b| b).count()).collect();
    let key: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = (0..n).filter(|&u| adj[v][u]).map(|u| deg[u]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key[a].cmp(&key[b]));
    // slot_class[i] is the key every vertex placed at position i must carry.
    let slot_key: Vec<&(usize, Vec<usize>)> = order.iter().map(|&v| &key[v]).collect();
    let mut best = u64::MAX;
    let mut placed = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        i: usize,
        n: usize,
        adj: &[Vec<bool>],
        key: &[(usize, Vec<usize>)],
        slot_key: &[&(usize, Vec<usize>)],
        placed: &mut [usize],
        used: &mut [bool],
        best: &mut u64,
    ) {
        if i == n {
            let mut code = 0u64;
            for a in 0..n {
                for b in a + 1..n {
                    if adj[placed[a]][placed[b]] {
                        code |= 1 << pair_bit(n, a, b);
                    }
                }
            }
            *best = (*best).min(code);
            return;
        }
        for v in 0..n {
            if !used[v] && &key[v] == slot_key[i] {
                used[v] = true;
                placed[i] = v;
                rec(i + 1, n, adj, key, slot_key, placed, used, best);
                used[v] = false;
            }
        }
    }
    rec(0, n, adj, &key, &slot_key, &mut placed, &mut used, &mut best);
    if n <= 1 {
        0
    } else {
        best
    }
}

/// Canonical codes of every isomorphism class on `n` vertices, for n up to `max`.
pub fn classes_up_to(max: usize) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![vec![0]];
    for n in 1..=max {
        let mut seen = HashSet::new();
        for &code in &out[n - 1] {
            let prev = adjacency(n - 1, code);
            for mask in 0u32..1 << (n - 1) {
                let mut a = vec![vec![false; n]; n];
                for u in 0..n - 1 {
                    a[u][..n - 1].copy_from_slice(&prev[u]);
                }
                for u in 0..n - 1 {
                    if mask >> u & 1 == 1 {
                        a[u][n - 1] = true;
                        a[n - 1][u] = true;
                    }
                }
                seen.insert(canonical_code(n, &a));
            }
        }
        let mut v: Vec<u64> = seen.into_iter().collect();
        v.sort_unstable();
        out.push(v);
    }
    out
}

pub fn hypercube(n: usize) -> Graph {
    let edges = (0..1usize << n)
        .flat_map(|u| (0..n).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v);
    Graph::new(1 << n, edges).unwrap()
}

/// Exhaustive automorphism count by backtracking over partial permutations;
/// a branch is cut as soon as an assigned pair disagrees on adjacency.
pub fn brute_aut_count_pruned(adj: &[Vec<bool>]) -> u64 {
    fn rec(i: usize, adj: &[Vec<bool>], img: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let n = adj.len();
        if i == n {
            return 1;
        }
        let mut total = 0;
        for v in 0..n {
            if used[v] || (0..i).any(|u| adj[u][i] != adj[img[u]][v]) {
                continue;
            }
            used[v] = true;
            img.push(v);
            total += rec(i + 1, adj, img, used);
            img.pop();
            used[v] = false;
        }
        total
    }
    rec(0, adj, &mut Vec::with_capacity(adj.len()), &mut vec![false; adj.len()])
}

pub fn adjacency_of(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}
