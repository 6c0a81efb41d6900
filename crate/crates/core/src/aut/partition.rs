//! Ordered partitions stored as a permuted vertex array with cells as
//! contiguous ranges, and the equitable refinement procedure.

use std::collections::VecDeque;

use crate::graph::Graph;

/// Cells are `lab[start..end]`; a cell is named by its start index.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub lab: Vec<usize>,
    pub pos: Vec<usize>,
    pub cell_start: Vec<usize>,
    /// Indexed by cell start; meaningless at other indices.
    pub cell_end: Vec<usize>,
    pub cells: usize,
}

impl Partition {
    /// Cells given in order; must cover `0..n` exactly once.
    pub fn from_cells(n: usize, cells: &[Vec<usize>]) -> Self {
        let mut lab = Vec::with_capacity(n);
        let mut cell_start = vec![0; n];
        let mut cell_end = vec![0; n];
        let mut count = 0;
        for cell in cells.iter().filter(|c| !c.is_empty()) {
            let s = lab.len();
            for &v in cell {
                cell_start[v] = s;
                lab.push(v);
            }
            cell_end[s] = lab.len();
            count += 1;
        }
        assert_eq!(lab.len(), n, "cells must cover every vertex once");
        let mut pos = vec![0; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        Partition {
            lab,
            pos,
            cell_start,
            cell_end,
            cells: count,
        }
    }

    /// Cells by ascending color value.
    pub fn from_colors(colors: &[u32]) -> Self {
        let mut order: Vec<usize> = (0..colors.len()).collect();
        order.sort_by_key(|&v| (colors[v], v));
        let mut cells: Vec<Vec<usize>> = Vec::new();
        let mut last = None;
        for v in order {
            if last != Some(colors[v]) {
                cells.push(Vec::new());
                last = Some(colors[v]);
            }
            cells.last_mut().unwrap().push(v);
        }
        Self::from_cells(colors.len(), &cells)
    }

    pub fn n(&self) -> usize {
        self.lab.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    pub fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.lab.len() {
            out.push(s);
            s = self.cell_end[s];
        }
        out
    }

    pub fn to_cells(&self) -> Vec<Vec<usize>> {
        self.cell_starts()
            .into_iter()
            .map(|s| {
                let mut c = self.lab[s..self.cell_end[s]].to_vec();
                c.sort_unstable();
                c
            })
            .collect()
    }

    /// First smallest cell with more than one vertex.
    pub fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.lab.len() {
            let e = self.cell_end[s];
            let size = e - s;
            if size > 1 && best.is_none_or(|(_, b)| size < b) {
                best = Some((s, size));
                if size == 2 {
                    break;
                }
            }
            s = e;
        }
        best.map(|(s, _)| s)
    }

    /// Moves `v` to the end of its cell as a new singleton; returns its position.
    pub fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell_start[v];
        let e = self.cell_end[s];
        debug_assert!(e - s > 1);
        let last = e - 1;
        let p = self.pos[v];
        let u = self.lab[last];
        self.lab.swap(p, last);
        self.pos[u] = p;
        self.pos[v] = last;
        self.cell_end[s] = last;
        self.cell_end[last] = e;
        self.cell_start[v] = last;
        self.cells += 1;
        last
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Refinement engine bound to one graph, with reusable scratch buffers.
pub(crate) struct Refiner {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    count: Vec<u32>,
    touched: Vec<usize>,
    in_queue: Vec<bool>,
    pub refinements: u64,
}

impl Refiner {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * g.edge_count());
        offsets.push(0);
        for v in 0..n {
            targets.extend_from_slice(g.neighbors(v));
            offsets.push(targets.len());
        }
        Refiner {
            offsets,
            targets,
            count: vec![0; n],
            touched: Vec::new(),
            in_queue: vec![false; n],
            refinements: 0,
        }
    }

    /// Refines `p` to the coarsest equitable partition below it, using the
    /// given cells as the initial splitters. Returns a hash of the split
    /// events; equal for isomorphic inputs.
    pub fn refine(&mut self, p: &mut Partition, splitters: &[usize], seed: u64) -> u64 {
        self.refinements += 1;
        let mut hash = mix(0xcbf2_9ce4_8422_2325, seed);
        let mut queue: VecDeque<usize> = VecDeque::with_capacity(splitters.len());
        for &s in splitters {
            if !self.in_queue[s] {
                self.in_queue[s] = true;
                queue.push_back(s);
            }
        }
        let mut fragments: Vec<usize> = Vec::new();
        while let Some(w) = queue.pop_front() {
            self.in_queue[w] = false;
            let w_end = p.cell_end[w];
            for i in w..w_end {
                let v = p.lab[i];
                for &u in &self.targets[self.offsets[v]..self.offsets[v + 1]] {
                    if self.count[u] == 0 {
                        self.touched.push(u);
                    }
                    self.count[u] += 1;
                }
            }
            let count = &self.count;
            let start_of = &p.cell_start;
            self.touched
                .sort_unstable_by_key(|&u| (start_of[u], count[u], u));

            let mut i = 0;
            while i < self.touched.len() {
                let s = p.cell_start[self.touched[i]];
                let mut j = i;
                while j < self.touched.len() && p.cell_start[self.touched[j]] == s {
                    j += 1;
                }
                let e = p.cell_end[s];
                let size = e - s;
                let t = j - i;
                let members = &self.touched[i..j];
                let uniform = self.count[members[0]] == self.count[members[t - 1]];
                if size == 1 || (t == size && uniform) {
                    i = j;
                    continue;
                }
                // Touched vertices go to the tail of the cell, ordered by count.
                let tail = e - t;
                for (k, &u) in members.iter().enumerate() {
                    let target = tail + k;
                    let from = p.pos[u];
                    let other = p.lab[target];
                    p.lab.swap(from, target);
                    p.pos[other] = from;
                    p.pos[u] = target;
                }
                fragments.clear();
                if tail > s {
                    fragments.push(s);
                }
                let mut prev = None;
                for (k, &u) in members.iter().enumerate() {
                    let c = self.count[u];
                    if prev != Some(c) {
                        if tail + k != s {
                            fragments.push(tail + k);
                        } else {
                            fragments.push(s);
                        }
                        prev = Some(c);
                    }
                    hash = mix(hash, u64::from(c));
                }
                fragments.push(e);
                hash = mix(hash, s as u64);
                hash = mix(hash, (fragments.len() - 1) as u64);
                for f in 0..fragments.len() - 1 {
                    let (fs, fe) = (fragments[f], fragments[f + 1]);
                    p.cell_end[fs] = fe;
                    hash = mix(hash, (fe - fs) as u64);
                    if f > 0 {
                        for q in fs..fe {
                            p.cell_start[p.lab[q]] = fs;
                        }
                    }
                }
                p.cells += fragments.len() - 2;
                if self.in_queue[s] {
                    for &fs in &fragments[1..fragments.len() - 1] {
                        self.in_queue[fs] = true;
                        queue.push_back(fs);
                    }
                } else {
                    let mut largest = 0;
                    for f in 1..fragments.len() - 1 {
                        if fragments[f + 1] - fragments[f] > fragments[largest + 1] - fragments[largest] {
                            largest = f;
                        }
                    }
                    for (f, &fs) in fragments[..fragments.len() - 1].iter().enumerate() {
                        if f != largest {
                            self.in_queue[fs] = true;
                            queue.push_back(fs);
                        }
                    }
                }
                i = j;
            }
            for &u in &self.touched {
                self.count[u] = 0;
            }
            self.touched.clear();
        }
        mix(hash, p.cells as u64)
    }
}
