//! Simple undirected graphs, arc-colored digraphs and the structural
//! queries every other module builds on.
//!
//! Vertices are dense `0..n` integers. Edges are kept canonical as
//! `(min, max)` pairs in lexicographic order, so two graphs compare equal
//! exactly when they have the same vertex count, edge set and colors.

pub mod io;
mod provenance;

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub use provenance::{ProvenanceMap, Role, VertexOrigin};

/// A simple undirected graph with optional vertex colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    colors: Option<Vec<u32>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        vertex_count: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_canonical(n, canon))
    }

    /// Like [`Graph::new`] but silently drops loops and repeated edges.
    pub fn new_simplified(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        vertex_count: n,
                    });
                }
            }
            if u != v {
                canon.push((u.min(v), u.max(v)));
            }
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Self::from_canonical(n, canon))
    }

    fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut adj: Vec<Vec<usize>> = deg.iter().map(|&d| Vec::with_capacity(d)).collect();
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            colors: None,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    pub fn with_colors(mut self, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != self.n {
            return Err(Error::ColorLength {
                expected: self.n,
                got: colors.len(),
            });
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn without_colors(mut self) -> Self {
        self.colors = None;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic `(min, max)` order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`. Panics when `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors.as_ref().map_or(0, |c| c[v])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.n,
            });
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// BFS distances from `source`; unreachable vertices get `usize::MAX`.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The empty graph and the single vertex count as connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Two-colors a connected graph. `Ok(None)` signals an odd cycle; the
    /// class holding vertex 0 is reported as side A.
    pub fn bipartition(&self) -> Result<Option<Bipartition>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut side = vec![u8::MAX; self.n];
        if self.n == 0 {
            return Ok(Some(Bipartition { side: Vec::new() }));
        }
        side[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return Ok(None);
                }
            }
        }
        Ok(Some(Bipartition {
            side: side.into_iter().map(|s| s == 1).collect(),
        }))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        let mut touched = Vec::new();
        for s in 0..self.n {
            dist[s] = 0;
            touched.push(s);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
            queue.clear();
            for &t in &touched {
                dist[t] = usize::MAX;
                parent[t] = usize::MAX;
            }
            touched.clear();
        }
        (best != usize::MAX).then_some(best)
    }

    /// Merges each `merge` vertex into its `keep` vertex, drops the loops
    /// and parallel edges this creates, and compacts the surviving ids in
    /// ascending order. Returns the new graph and the old-to-new id map.
    pub fn identify_vertices(&self, pairs: &[(usize, usize)]) -> Result<(Graph, Vec<usize>)> {
        let mut target: Vec<usize> = (0..self.n).collect();
        let mut merged = vec![false; self.n];
        for &(keep, merge) in pairs {
            self.check_vertex(keep)?;
            self.check_vertex(merge)?;
            if keep == merge {
                return Err(Error::SelfMerge(keep));
            }
            if merged[merge] {
                return Err(Error::OverlappingMerge(merge));
            }
            merged[merge] = true;
            target[merge] = keep;
        }
        for &(keep, _) in pairs {
            if merged[keep] {
                return Err(Error::OverlappingMerge(keep));
            }
        }
        let mut relabel = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !merged[v] {
                relabel[v] = next;
                next += 1;
            }
        }
        for v in 0..self.n {
            if merged[v] {
                relabel[v] = relabel[target[v]];
            }
        }
        let edges = self.edges.iter().map(|&(u, v)| (relabel[u], relabel[v]));
        let mut out = Graph::new_simplified(next, edges)?;
        if let Some(colors) = &self.colors {
            let mut c = vec![0; next];
            for v in (0..self.n).filter(|&v| !merged[v]) {
                c[relabel[v]] = colors[v];
            }
            out = out.with_colors(c)?;
        }
        Ok((out, relabel))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges: Vec<_> = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        let mut g = Self::from_canonical(self.n + other.n, edges);
        g.edges.sort_unstable();
        if self.colors.is_some() || other.colors.is_some() {
            let c = (0..self.n)
                .map(|v| self.color(v))
                .chain((0..other.n).map(|v| other.color(v)))
                .collect();
            g.colors = Some(c);
        }
        g
    }

    /// Image of the graph under `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let g = Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))?;
        match &self.colors {
            Some(c) => {
                let mut out = vec![0; self.n];
                for v in 0..self.n {
                    out[perm[v]] = c[v];
                }
                g.with_colors(out)
            }
            None => Ok(g),
        }
    }

    /// Induced subgraph on `keep`, ids renumbered in the order given.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let g = Graph::new(keep.len(), edges)?;
        match &self.colors {
            Some(c) => g.with_colors(keep.iter().map(|&v| c[v]).collect()),
            None => Ok(g),
        }
    }

    // Small named graphs used throughout tests and the CLI.

    pub fn path(n: usize) -> Graph {
        Self::from_canonical(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        edges.sort_unstable();
        Self::from_canonical(n, edges)
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_canonical(n, edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))).collect();
        Self::from_canonical(a + b, edges)
    }

    pub fn star(leaves: usize) -> Graph {
        Self::from_canonical(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, edges).expect("petersen edges are simple")
    }
}

/// Sides of a bipartite graph; `false` is side A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<bool>,
}

impl Bipartition {
    pub fn is_b(&self, v: usize) -> bool {
        self.side[v]
    }

    pub fn class_a(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| !self.side[v]).collect()
    }

    pub fn class_b(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v]).collect()
    }
}

/// Complete-digraph style host with colored arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcColoredDigraph {
    n: usize,
    arcs: Vec<(usize, usize, u32)>,
}

impl ArcColoredDigraph {
    /// Arcs are `(tail, head, color)`; colors must cover `1..=C` contiguously.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self> {
        let mut arcs: Vec<_> = arcs.into_iter().collect();
        for &(t, h, c) in &arcs {
            let bad = |reason: &str| Error::InvalidArc {
                tail: t,
                head: h,
                reason: reason.to_string(),
            };
            if t >= n || h >= n {
                return Err(bad("endpoint out of range"));
            }
            if t == h {
                return Err(bad("loop"));
            }
            if c == 0 {
                return Err(bad("color must be positive"));
            }
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidArc {
                tail: w[0].0,
                head: w[0].1,
                reason: "parallel arc".into(),
            });
        }
        let mut used: Vec<u32> = arcs.iter().map(|a| a.2).collect();
        used.sort_unstable();
        used.dedup();
        if used.iter().enumerate().any(|(i, &c)| c as usize != i + 1) {
            return Err(Error::Invalid(format!(
                "arc colors {used:?} do not form a contiguous range 1..C"
            )));
        }
        Ok(ArcColoredDigraph { n, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Arcs sorted by `(tail, head)`.
    pub fn arcs(&self) -> &[(usize, usize, u32)] {
        &self.arcs
    }

    pub fn color_count(&self) -> u32 {
        self.arcs.iter().map(|a| a.2).max().unwrap_or(0)
    }

    pub fn arc_color(&self, tail: usize, head: usize) -> Option<u32> {
        self.arcs
            .binary_search_by(|a| (a.0, a.1).cmp(&(tail, head)))
            .ok()
            .map(|i| self.arcs[i].2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q3() -> Graph {
        let edges = (0..8usize)
            .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
            .filter(|&(u, v)| u < v);
        Graph::new(8, edges).unwrap()
    }

    #[test]
    fn degrees_of_small_graphs() {
        let c4 = Graph::cycle(4);
        assert!((0..4).all(|v| c4.degree(v).unwrap() == 2));
        let q = q3();
        assert!((0..8).all(|v| q.degree(v).unwrap() == 3));
        assert_eq!(Graph::star(5).degree(0).unwrap(), 5);
        assert!(matches!(
            c4.degree(4),
            Err(Error::VertexOutOfRange { vertex: 4, .. })
        ));
    }

    #[test]
    fn rejects_non_simple_input() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert!(Graph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(Graph::empty(0).is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(!Graph::new(4, [(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(q3().is_connected());
    }

    #[test]
    fn bipartitions() {
        let b = q3().bipartition().unwrap().unwrap();
        assert_eq!(b.class_a(), vec![0, 3, 5, 6]);
        assert_eq!(b.class_b().len(), 4);
        assert_eq!(Graph::complete(3).bipartition().unwrap(), None);
        let p = Graph::path(4).bipartition().unwrap().unwrap();
        assert_eq!((p.class_a().len(), p.class_b().len()), (2, 2));
        assert!(!p.is_b(0));
        assert_eq!(
            Graph::new(4, [(0, 1), (2, 3)]).unwrap().bipartition(),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn girths() {
        assert_eq!(Graph::complete(5).girth(), Some(3));
        assert_eq!(Graph::path(7).girth(), None);
        assert_eq!(Graph::star(4).girth(), None);
        assert_eq!(Graph::petersen().girth(), Some(5));
        assert_eq!(Graph::cycle(7).girth(), Some(7));
        assert_eq!(q3().girth(), Some(4));
        assert_eq!(Graph::complete_bipartite(3, 3).girth(), Some(4));
    }

    #[test]
    fn identify_two_edges_into_path() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let (h, map) = g.identify_vertices(&[(1, 2)]).unwrap();
        assert_eq!(h, Graph::path(3));
        assert_eq!(map, vec![0, 1, 1, 2]);
    }

    #[test]
    fn identify_adjacent_triangle_vertices() {
        let (h, _) = Graph::complete(3).identify_vertices(&[(0, 1)]).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edges(), &[(0, 1)]);
    }

    #[test]
    fn identify_rejects_overlap() {
        let g = Graph::path(4);
        assert_eq!(
            g.identify_vertices(&[(0, 1), (2, 1)]),
            Err(Error::OverlappingMerge(1))
        );
        assert_eq!(
            g.identify_vertices(&[(0, 1), (1, 2)]),
            Err(Error::OverlappingMerge(1))
        );
        assert_eq!(g.identify_vertices(&[(2, 2)]), Err(Error::SelfMerge(2)));
    }

    #[test]
    fn arc_digraph_validation() {
        assert!(ArcColoredDigraph::new(2, [(0, 1, 1), (1, 0, 1)]).is_ok());
        assert!(ArcColoredDigraph::new(2, [(0, 0, 1)]).is_err());
        assert!(ArcColoredDigraph::new(3, [(0, 1, 1), (1, 2, 3)]).is_err());
        assert!(ArcColoredDigraph::new(3, [(0, 1, 1), (0, 1, 2)]).is_err());
    }

    #[test]
    fn petersen_shape() {
        let p = Graph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v).unwrap() == 3));
    }
}
