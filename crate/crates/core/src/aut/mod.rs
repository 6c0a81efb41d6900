//! Automorphism groups of vertex-colored graphs by color refinement and
//! individualization-refinement backtracking.
//!
//! Generators are found level by level, bottom-up along the first path.
//! At level `k` the search tries every vertex `w` of the first path's target
//! cell that is not already in the orbit of the chosen vertex `v_k` under
//! the generators found so far (all of which fix `v_0 … v_{k-1}`). The group
//! order is the product of the orbit lengths of the `v_k`.

mod partition;
mod search;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::groups::{PermGroup, Permutation};

use partition::{Partition, Refiner};
use search::{Engine, UnionFind};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub refinements: u64,
}

/// A sequence of disjoint cells covering all vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPartition {
    cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for &v in cells.iter().flatten() {
            if v >= n || seen[v] {
                return Err(Error::Invalid(format!(
                    "vertex {v} out of range or repeated in partition"
                )));
            }
            seen[v] = true;
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::Invalid(format!("vertex {v} missing from partition")));
        }
        Ok(OrderedPartition {
            cells: cells.into_iter().filter(|c| !c.is_empty()).collect(),
        })
    }

    pub fn unit(n: usize) -> Self {
        OrderedPartition {
            cells: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }
}

/// Coarsest equitable refinement of `initial`. Cell order depends only on
/// the isomorphism type of `(g, initial)`; cells are returned sorted.
pub fn color_refinement(g: &Graph, initial: &OrderedPartition) -> OrderedPartition {
    let n = g.vertex_count();
    if n == 0 {
        return OrderedPartition::unit(0);
    }
    let mut p = Partition::from_cells(n, &initial.cells);
    let starts = p.cell_starts();
    Refiner::new(g).refine(&mut p, &starts, 0);
    OrderedPartition { cells: p.to_cells() }
}

/// Generators, order and orbits of a color-preserving automorphism group.
#[derive(Clone, Debug)]
pub struct AutResult {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub order: BigUint,
    pub orbits: Vec<Vec<usize>>,
    pub stats: SearchStats,
}

#[derive(Serialize)]
struct AutResultJson<'a> {
    order: String,
    generators: Vec<String>,
    orbits: &'a [Vec<usize>],
    stats: SearchStats,
}

impl AutResult {
    pub fn is_trivial(&self) -> bool {
        self.order == BigUint::from(1u32)
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.generators.clone()).expect("generators share the degree")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(AutResultJson {
            order: self.order.to_string(),
            generators: self.generators.iter().map(ToString::to_string).collect(),
            orbits: &self.orbits,
            stats: self.stats,
        })
        .expect("serializable")
    }

    /// Permutation group induced on `subset`, whose points are numbered by
    /// their position in `subset`. Fails unless every generator maps the
    /// subset into itself.
    pub fn restrict_to(&self, subset: &[usize]) -> Result<PermGroup> {
        let mut index = vec![usize::MAX; self.degree];
        for (i, &v) in subset.iter().enumerate() {
            if v >= self.degree || index[v] != usize::MAX {
                return Err(Error::Invalid(format!("bad subset vertex {v}")));
            }
            index[v] = i;
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut images = Vec::with_capacity(subset.len());
            for &v in subset {
                let w = g.apply(v);
                if index[w] == usize::MAX {
                    return Err(Error::NotInvariant { from: v, to: w });
                }
                images.push(index[w]);
            }
            gens.push(Permutation::new(images)?);
        }
        PermGroup::new(subset.len(), gens)
    }
}

fn effective_colors(g: &Graph, colors: Option<&[u32]>) -> Result<Vec<u32>> {
    match colors {
        Some(c) if c.len() != g.vertex_count() => Err(Error::ColorLength {
            expected: g.vertex_count(),
            got: c.len(),
        }),
        Some(c) => Ok(c.to_vec()),
        None => Ok(g.colors().map_or_else(|| vec![0; g.vertex_count()], <[u32]>::to_vec)),
    }
}

/// True iff `map` is an edge- and color-preserving bijection `from → to`.
pub fn is_isomorphism(from: &Graph, to: &Graph, from_colors: &[u32], to_colors: &[u32], map: &[usize]) -> bool {
    if from.vertex_count() != to.vertex_count() || from.edge_count() != to.edge_count() {
        return false;
    }
    let n = from.vertex_count();
    let mut hit = vec![false; n];
    for &x in map {
        if x >= n || hit[x] {
            return false;
        }
        hit[x] = true;
    }
    (0..n).all(|v| from_colors[v] == to_colors[map[v]])
        && from.edges().iter().all(|&(u, v)| to.has_edge(map[u], map[v]))
}

/// Checks a candidate automorphism against the graph's own colors.
pub fn is_automorphism(g: &Graph, p: &Permutation) -> bool {
    let colors = effective_colors(g, None).unwrap();
    p.degree() == g.vertex_count() && is_isomorphism(g, g, &colors, &colors, p.images())
}

/// Full color-preserving automorphism group. `colors` overrides the graph's
/// own coloring when given.
pub fn automorphism_group(g: &Graph, colors: Option<&[u32]>, limits: &SearchLimits) -> Result<AutResult> {
    let n = g.vertex_count();
    let colors = effective_colors(g, colors)?;
    if n == 0 {
        return Ok(AutResult {
            degree: 0,
            generators: Vec::new(),
            order: BigUint::from(1u32),
            orbits: Vec::new(),
            stats: SearchStats::default(),
        });
    }
    let mut engine = Engine::new(g, limits);
    let (root, trace) = engine.root(&colors)?;
    let path = engine.first_path(root, trace)?;
    let check = |map: &[usize]| is_isomorphism(g, g, &colors, &colors, map);

    let mut generators: Vec<Permutation> = Vec::new();
    let mut order = BigUint::from(1u32);
    for k in (0..path.depth()).rev() {
        let node = &path.nodes[k];
        let (s, v) = node.branch.expect("inner first-path node has a branch");
        let e = node.part.cell_end[s];
        let mut cell = node.part.lab[s..e].to_vec();
        cell.sort_unstable();

        let mut uf = UnionFind::new(n);
        for gen in &generators {
            uf.absorb(gen.images());
        }
        let mut failed: Vec<usize> = Vec::new();
        for &w in &cell {
            if w == v || uf.find(w) == uf.find(v) {
                continue;
            }
            let rw = uf.find(w);
            if failed.iter().any(|&f| uf.find(f) == rw) {
                continue;
            }
            let (child, child_trace) = engine.child(&node.part, w)?;
            let found = if child_trace == path.nodes[k + 1].trace {
                engine.explore(&child, k + 1, &path, &check)?
            } else {
                None
            };
            match found {
                Some(map) => {
                    uf.absorb(&map);
                    generators.push(Permutation::from_images_unchecked(map));
                }
                None => failed.push(w),
            }
        }
        let rv = uf.find(v);
        let orbit_len = cell.iter().filter(|&&x| uf.find(x) == rv).count();
        order *= BigUint::from(orbit_len);
    }

    let mut uf = UnionFind::new(n);
    for gen in &generators {
        uf.absorb(gen.images());
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let r = uf.find(v);
        by_root[r].push(v);
    }
    let orbits = by_root.into_iter().filter(|o| !o.is_empty()).collect();
    Ok(AutResult {
        degree: n,
        generators,
        order,
        orbits,
        stats: engine.stats(),
    })
}

pub fn is_asymmetric(g: &Graph, limits: &SearchLimits) -> Result<bool> {
    Ok(automorphism_group(g, None, limits)?.is_trivial())
}

/// Color-preserving isomorphism test. Colors are compared by value.
pub fn are_isomorphic(g1: &Graph, g2: &Graph, limits: &SearchLimits) -> Result<bool> {
    Ok(find_isomorphism(g1, g2, limits)?.is_some())
}

/// An isomorphism `g1 → g2` as a vertex map, if one exists.
pub fn find_isomorphism(g1: &Graph, g2: &Graph, limits: &SearchLimits) -> Result<Option<Vec<usize>>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let c1 = effective_colors(g1, None)?;
    let c2 = effective_colors(g2, None)?;
    let sorted = |mut v: Vec<u32>| {
        v.sort_unstable();
        v
    };
    if sorted(c1.clone()) != sorted(c2.clone()) {
        return Ok(None);
    }
    let mut d1 = g1.degrees();
    let mut d2 = g2.degrees();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut e1 = Engine::new(g1, limits);
    let (root1, t1) = e1.root(&c1)?;
    let path = e1.first_path(root1, t1)?;
    let mut e2 = Engine::new(g2, limits);
    let (root2, t2) = e2.root(&c2)?;
    if t1 != t2 {
        return Ok(None);
    }
    let check = |map: &[usize]| is_isomorphism(g1, g2, &c1, &c2, map);
    e2.explore(&root2, 0, &path, &check)
}
