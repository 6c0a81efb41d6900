//! Individualization-refinement search.
//!
//! The first path always individualizes the smallest vertex of the first
//! smallest non-singleton cell until the partition is discrete; its leaf is
//! the reference labeling. Every other branch is searched only for a leaf
//! whose labeling maps the reference graph onto the target graph. Nodes
//! whose refinement trace differs from the first-path node at the same
//! depth are pruned, since an isomorphism maps nodes to nodes with equal
//! traces.

use super::partition::{Partition, Refiner};
use super::{SearchLimits, SearchStats};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub(crate) struct PathNode {
    pub part: Partition,
    pub trace: u64,
    /// Target cell start and the vertex individualized there (None at a leaf).
    pub branch: Option<(usize, usize)>,
}

pub(crate) struct FirstPath {
    pub nodes: Vec<PathNode>,
}

impl FirstPath {
    pub fn leaf(&self) -> &Partition {
        &self.nodes.last().unwrap().part
    }

    pub fn depth(&self) -> usize {
        self.nodes.len() - 1
    }
}

pub(crate) struct Engine {
    pub refiner: Refiner,
    limits: SearchLimits,
    pub nodes: u64,
}

impl Engine {
    pub fn new(graph: &Graph, limits: &SearchLimits) -> Self {
        Engine {
            refiner: Refiner::new(graph),
            limits: limits.clone(),
            nodes: 0,
        }
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            refinements: self.refiner.refinements,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(Error::NodeBudget {
                nodes: self.nodes,
                refinements: self.refiner.refinements,
            });
        }
        Ok(())
    }

    /// Refined root partition and its trace. The trace also covers the
    /// initial color values so colored graphs compare by color.
    pub fn root(&mut self, colors: &[u32]) -> Result<(Partition, u64)> {
        self.tick()?;
        let mut p = Partition::from_colors(colors);
        let mut seed = 0x5151_u64;
        for s in p.cell_starts() {
            seed = seed
                .rotate_left(7)
                .wrapping_mul(0x100_0000_01b3)
                ^ (u64::from(colors[p.lab[s]]) << 20 | (p.cell_end[s] - s) as u64);
        }
        let starts = p.cell_starts();
        let trace = self.refiner.refine(&mut p, &starts, seed);
        Ok((p, trace))
    }

    pub fn child(&mut self, parent: &Partition, v: usize) -> Result<(Partition, u64)> {
        self.tick()?;
        let mut p = parent.clone();
        let s = p.individualize(v);
        let trace = self.refiner.refine(&mut p, &[s], s as u64);
        Ok((p, trace))
    }

    pub fn first_path(&mut self, root: Partition, root_trace: u64) -> Result<FirstPath> {
        let mut nodes = vec![PathNode {
            part: root,
            trace: root_trace,
            branch: None,
        }];
        loop {
            let last = nodes.last().unwrap();
            let Some(s) = last.part.target_cell() else {
                break;
            };
            let e = last.part.cell_end[s];
            let v = *last.part.lab[s..e].iter().min().unwrap();
            let (part, trace) = self.child(&last.part, v)?;
            nodes.last_mut().unwrap().branch = Some((s, v));
            nodes.push(PathNode {
                part,
                trace,
                branch: None,
            });
        }
        Ok(FirstPath { nodes })
    }

    /// Depth-first search below `part` (at `depth`) for a leaf equivalent to
    /// the first-path leaf of `reference` under `check`. Returns the map
    /// `reference vertex -> vertex of this engine's graph`.
    pub fn explore(
        &mut self,
        part: &Partition,
        depth: usize,
        reference: &FirstPath,
        check: &dyn Fn(&[usize]) -> bool,
    ) -> Result<Option<Vec<usize>>> {
        if part.is_discrete() {
            let ref_leaf = reference.leaf();
            let mut map = vec![0; part.n()];
            for i in 0..part.n() {
                map[ref_leaf.lab[i]] = part.lab[i];
            }
            return Ok(check(&map).then_some(map));
        }
        if depth >= reference.depth() {
            return Ok(None);
        }
        let Some(s) = part.target_cell() else {
            return Ok(None);
        };
        let e = part.cell_end[s];
        let mut candidates = part.lab[s..e].to_vec();
        candidates.sort_unstable();
        let want = reference.nodes[depth + 1].trace;
        for w in candidates {
            let (child, trace) = self.child(part, w)?;
            if trace != want {
                continue;
            }
            if let Some(map) = self.explore(&child, depth + 1, reference, check)? {
                return Ok(Some(map));
            }
        }
        Ok(None)
    }
}

/// Disjoint-set forest over vertices, used for orbit bookkeeping.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller id as root for stable orbit representatives.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    pub fn absorb(&mut self, images: &[usize]) {
        for (x, &y) in images.iter().enumerate() {
            self.union(x, y);
        }
    }
}
