//! Hypercube hosts, the arc-colored Cayley digraph, and the two replacement
//! constructions: `Γ_n(1)` (tree gadgets on hypercube edges) and `Γ_n(G)`
//! (copies of `Γ_{n+i}(1)` on the arcs of color `i`).
//!
//! Vertex numbering is fixed. In `Γ_n(1)` the hubs come first as their
//! hypercube bitmasks, followed by the internal vertices of `T_0`, `T_1`, …
//! in the tree's own order. In `Γ_n(G)` the group elements come first, then
//! each arc's gadget copy (arcs by tail, then head) minus its two anchors.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{ArcColoredDigraph, Graph, ProvenanceMap, Role, VertexOrigin};
use crate::groups::FiniteGroup;
use crate::trees::{CertifiedFamily, Family};

pub const DEFAULT_VERTEX_BUDGET: usize = 2_000_000;

/// Upper limit on constructed vertex counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: DEFAULT_VERTEX_BUDGET,
        }
    }
}

impl Budget {
    fn check(&self, what: impl Into<String>, needed: u128) -> Result<()> {
        if needed > self.max_vertices as u128 {
            return Err(Error::VertexBudget {
                what: what.into(),
                needed,
                budget: self.max_vertices,
            });
        }
        Ok(())
    }
}

/// `Q_n` with its bipartite coloring (A = even popcount).
#[derive(Clone, Debug)]
pub struct Hypercube {
    pub n: usize,
    pub graph: Graph,
}

impl Hypercube {
    pub fn is_a(&self, v: usize) -> bool {
        v.count_ones().is_multiple_of(2)
    }

    /// 0 for A, 1 for B.
    pub fn colors(&self) -> Vec<u32> {
        (0..self.graph.vertex_count()).map(|v| u32::from(!self.is_a(v))).collect()
    }

    /// Edge `m` of the fixed ordering: lexicographic on (smaller, larger) mask.
    pub fn edge(&self, m: usize) -> (usize, usize) {
        self.graph.edges()[m]
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }
}

pub fn hypercube(n: usize, budget: &Budget) -> Result<Hypercube> {
    if n == 0 || n >= 64 {
        return Err(Error::Invalid(format!("hypercube dimension {n} must be in 1..64")));
    }
    budget.check(format!("hypercube Q_{n}"), 1u128 << n)?;
    let edges = (0..1usize << n)
        .flat_map(|u| (0..n).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v);
    Ok(Hypercube {
        n,
        graph: Graph::new(1 << n, edges)?,
    })
}

/// Edge index of every hypercube edge, in the order used by the constructions.
pub fn edge_ordering(q: &Hypercube) -> Vec<((usize, usize), usize)> {
    q.graph.edges().iter().enumerate().map(|(m, &e)| (e, m)).collect()
}

/// `Ξ(G)`: all arcs `(g, h)`, `g ≠ h`, colored by the index of `h·g⁻¹`.
pub fn cayley_digraph(group: &FiniteGroup) -> Result<ArcColoredDigraph> {
    let n = group.order();
    if n < 2 {
        return Err(Error::InvalidGroup("the trivial group has no arcs".into()));
    }
    let arcs = (0..n).flat_map(|g| {
        (0..n)
            .filter(move |&h| h != g)
            .map(move |h| (g, h, group.mul(h, group.inverse(g)) as u32))
    });
    ArcColoredDigraph::new(n, arcs)
}

/// Size of the host a construction was built over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HostSummary {
    pub host_vertices: usize,
    pub host_edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub host_arcs: Option<usize>,
    pub family: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub gadgets: usize,
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub graph: Graph,
    pub provenance: ProvenanceMap,
    pub host_summary: HostSummary,
    /// For `Γ_n(1)`: the vertices identified with an arc's tail and head
    /// when this graph serves as a gadget.
    pub gadget_anchors: Option<(usize, usize)>,
}

#[derive(Serialize)]
struct RoleEntry<'a> {
    v: usize,
    #[serde(flatten)]
    origin: &'a crate::graph::VertexOrigin,
}

impl ConstructionResult {
    pub fn vertices_with_role(&self, role: Role) -> Vec<usize> {
        self.provenance.vertices_with_role(role)
    }

    pub fn group_vertices(&self) -> Vec<usize> {
        self.vertices_with_role(Role::GroupElement)
    }

    /// `{n, family, group?, roles: [{v, role, ...}]}`.
    pub fn provenance_json(&self) -> serde_json::Value {
        let roles: Vec<RoleEntry> = self
            .provenance
            .iter()
            .enumerate()
            .map(|(v, origin)| RoleEntry { v, origin })
            .collect();
        let mut out = json!({
            "n": self.host_summary.n,
            "family": self.host_summary.family,
            "roles": roles,
        });
        if let Some(g) = &self.host_summary.group {
            out["group"] = json!(g);
        }
        out
    }
}

fn tree_internal_count(family: Family, m: usize) -> u128 {
    family.tree_size(m) as u128 - 2
}

/// Vertex count of `Γ_n(1)` without building it.
pub fn gamma_1_vertex_count(n: usize, family: Family) -> u128 {
    let edges = n * (1usize << (n - 1));
    (1u128 << n) + (0..edges).map(|m| tree_internal_count(family, m)).sum::<u128>()
}

/// Vertex count of `Γ_n(G)` for a group of the given order.
pub fn gamma_g_vertex_count(n: usize, order: usize, family: Family) -> u128 {
    let order = order as u128;
    order + (1..order).map(|i| order * (gamma_1_vertex_count(n + i as usize, family) - 2)).sum::<u128>()
}

/// Fails if `Γ_n(1)` would exceed the budget. Cheap; call before certifying.
pub fn check_gamma_1_budget(n: usize, family: Family, budget: &Budget) -> Result<()> {
    let what = format!("{family} gadget graph with n = {n}");
    if n >= 40 {
        return budget.check(what, u128::MAX);
    }
    // Every gadget tree adds at least one vertex, so this bounds the sum cheaply.
    budget.check(what.clone(), (1u128 << n) + ((n as u128) << (n - 1)))?;
    budget.check(what, gamma_1_vertex_count(n, family))
}

/// Fails if `Γ_n(G)` for a group of this order, or any of its gadgets,
/// would exceed the budget.
pub fn check_gamma_g_budget(n: usize, order: usize, family: Family, budget: &Budget) -> Result<()> {
    for i in 1..order {
        check_gamma_1_budget(n + i, family, budget)?;
    }
    budget.check(
        format!("group construction of order {order} with n = {n}"),
        gamma_g_vertex_count(n, order, family),
    )
}

/// Replaces edge `m` of `Q_n` by `T_m`, A-vertex on the A-colored endpoint.
pub fn build_gamma_1(n: usize, family: &CertifiedFamily, budget: &Budget) -> Result<ConstructionResult> {
    if n < 2 {
        return Err(Error::Invalid(format!("n = {n}: the construction needs n ≥ 2")));
    }
    let fam = family.family();
    let edge_count = n << (n - 1);
    check_gamma_1_budget(n, fam, budget)?;
    family.require(edge_count - 1)?;
    let q = hypercube(n, budget)?;
    let hubs = q.graph.vertex_count();

    let mut origins: Vec<VertexOrigin> = (0..hubs)
        .map(|v| VertexOrigin::hub(if q.is_a(v) { Role::HubA } else { Role::HubB }, v))
        .collect();
    let mut edges = Vec::new();
    let mut anchors = None;
    for m in 0..edge_count {
        let (u, v) = q.edge(m);
        let (a_host, b_host) = if q.is_a(u) { (u, v) } else { (v, u) };
        let t = family.tree(m)?;
        let base = origins.len();
        let mut map = vec![0; t.vertex_count()];
        let mut next = base;
        for (local, slot) in map.iter_mut().enumerate() {
            *slot = if local == t.a_vertex {
                a_host
            } else if local == t.b_vertex {
                b_host
            } else {
                next += 1;
                next - 1
            };
        }
        origins.extend((base..next).map(|_| VertexOrigin::tree_internal(m)));
        edges.extend(t.tree.edges().iter().map(|&(x, y)| (map[x], map[y])));
        if m == 0 {
            let a = farthest_on_side(&t.tree, t.a_vertex, t.b_vertex);
            let b = farthest_on_side(&t.tree, t.b_vertex, t.a_vertex);
            anchors = Some((map[a], map[b]));
        }
    }
    let graph = Graph::new(origins.len(), edges)?;
    Ok(ConstructionResult {
        graph,
        provenance: ProvenanceMap::new(origins),
        host_summary: HostSummary {
            host_vertices: hubs,
            host_edges: edge_count,
            host_arcs: None,
            family: fam.to_string(),
            n,
            group: None,
            gadgets: edge_count,
        },
        gadget_anchors: anchors,
    })
}

/// Vertex farthest from `root` in its component of the tree minus the
/// edge `root`–`other`; ties go to the smallest id.
fn farthest_on_side(tree: &Graph, root: usize, other: usize) -> usize {
    let n = tree.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    dist[other] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut best = root;
    while let Some(v) = queue.pop_front() {
        if dist[v] > dist[best] || (dist[v] == dist[best] && v < best) {
            best = v;
        }
        for &u in tree.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    best
}

/// Substitutes a copy of `Γ_{n+i}(1)` for every arc of color `i` of `Ξ(G)`,
/// identifying the gadget's A-anchor with the tail and its B-anchor with the
/// head. The anchors are the far ends of the longest A-side and B-side arms
/// of the gadget's tree `T_0`.
pub fn build_gamma_g(
    n: usize,
    group: &FiniteGroup,
    family: &CertifiedFamily,
    budget: &Budget,
) -> Result<ConstructionResult> {
    if n < 2 {
        return Err(Error::Invalid(format!("n = {n}: the construction needs n ≥ 2")));
    }
    let order = group.order();
    let xi = cayley_digraph(group)?;
    let fam = family.family();
    let top = n + order - 1;
    check_gamma_g_budget(n, order, fam, budget)?;
    family.require((top << (top - 1)) - 1)?;

    let gadgets: Vec<ConstructionResult> = (1..order)
        .map(|i| build_gamma_1(n + i, family, budget))
        .collect::<Result<_>>()?;

    let mut origins: Vec<VertexOrigin> =
        (0..order).map(|g| VertexOrigin::group_element(g, group.label(g))).collect();
    let mut edges = Vec::new();
    for &(tail, head, color) in xi.arcs() {
        let gadget = &gadgets[color as usize - 1];
        let (a, b) = gadget.gadget_anchors.expect("gadget graphs record anchors");
        let base = origins.len();
        let mut map = vec![0; gadget.graph.vertex_count()];
        let mut next = base;
        for (local, slot) in map.iter_mut().enumerate() {
            *slot = if local == a {
                tail
            } else if local == b {
                head
            } else {
                let mut o = gadget.provenance.get(local).clone();
                o.arc = Some((tail, head, color));
                origins.push(o);
                next += 1;
                next - 1
            };
        }
        edges.extend(gadget.graph.edges().iter().map(|&(x, y)| (map[x], map[y])));
    }
    let graph = Graph::new(origins.len(), edges)?;
    Ok(ConstructionResult {
        graph,
        provenance: ProvenanceMap::new(origins),
        host_summary: HostSummary {
            host_vertices: order,
            host_edges: order * (order - 1) / 2,
            host_arcs: Some(xi.arcs().len()),
            family: fam.to_string(),
            n,
            group: Some(group.name().to_string()),
            gadgets: xi.arcs().len(),
        },
        gadget_anchors: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::SearchLimits;
    use crate::groups::named_group;

    fn unary(max_m: usize) -> CertifiedFamily {
        CertifiedFamily::certify(Family::Unary, max_m, &SearchLimits::default()).unwrap()
    }

    #[test]
    fn hypercube_shapes() {
        let b = Budget::default();
        let q2 = hypercube(2, &b).unwrap();
        assert_eq!((q2.graph.vertex_count(), q2.graph.edge_count()), (4, 4));
        let q4 = hypercube(4, &b).unwrap();
        assert_eq!(q4.graph.edge_count(), 32);
        let q3 = hypercube(3, &b).unwrap();
        assert_eq!(q3.colors().iter().filter(|&&c| c == 0).count(), 4);
        assert!(matches!(
            hypercube(30, &b),
            Err(Error::VertexBudget { .. })
        ));
    }

    #[test]
    fn edge_order_is_lexicographic() {
        let q2 = hypercube(2, &Budget::default()).unwrap();
        let ord = edge_ordering(&q2);
        assert_eq!(ord[0], ((0, 1), 0));
        assert_eq!(ord[3], ((2, 3), 3));
        let q3 = hypercube(3, &Budget::default()).unwrap();
        let idx: std::collections::BTreeSet<usize> = edge_ordering(&q3).iter().map(|x| x.1).collect();
        assert_eq!(idx.len(), 12);
    }

    #[test]
    fn cayley_digraph_colors() {
        let z3 = cayley_digraph(&named_group("cyclic:3").unwrap()).unwrap();
        assert_eq!((z3.arcs().len(), z3.color_count()), (6, 2));
        for c in 1..=2 {
            assert_eq!(z3.arcs().iter().filter(|a| a.2 == c).count(), 3);
        }
        let k4 = cayley_digraph(&named_group("klein4").unwrap()).unwrap();
        assert_eq!((k4.arcs().len(), k4.color_count()), (12, 3));
        let z2 = cayley_digraph(&named_group("cyclic:2").unwrap()).unwrap();
        assert!(z2.arcs().iter().all(|a| a.2 == 1));
        assert!(cayley_digraph(&named_group("trivial").unwrap()).is_err());
    }

    #[test]
    fn gamma_1_sizes_and_degrees() {
        let f = unary(11);
        let r = build_gamma_1(2, &f, &Budget::default()).unwrap();
        assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (220, 220));
        for v in 0..4 {
            let want = if v == 0 || v == 3 { 6 } else { 8 };
            assert_eq!(r.graph.degree(v).unwrap(), want);
        }
        assert!((4..220).all(|v| r.graph.degree(v).unwrap() <= 2));
        assert!(r.graph.is_connected());
        let r3 = build_gamma_1(3, &f, &Budget::default()).unwrap();
        assert_eq!(r3.graph.vertex_count(), 1904);
        assert_eq!(gamma_1_vertex_count(3, Family::Unary), 1904);
        assert_eq!(gamma_1_vertex_count(4, Family::Unary), 13392);
        assert_eq!(r3.host_summary.gadgets, 12);
    }

    #[test]
    fn gamma_1_needs_certified_range() {
        let f = unary(2);
        assert!(matches!(
            build_gamma_1(2, &f, &Budget::default()),
            Err(Error::Uncertified { needed: 3, .. })
        ));
        let small = Budget { max_vertices: 100 };
        assert!(matches!(
            build_gamma_1(2, &unary(3), &small),
            Err(Error::VertexBudget { .. })
        ));
    }

    #[test]
    fn gamma_1_anchors_are_arm_ends() {
        let r = build_gamma_1(2, &unary(3), &Budget::default()).unwrap();
        let (a, b) = r.gadget_anchors.unwrap();
        assert_eq!(r.graph.degree(a).unwrap(), 1);
        assert_eq!(r.graph.degree(b).unwrap(), 1);
        let d0 = r.graph.bfs_distances(0);
        let d1 = r.graph.bfs_distances(1);
        assert_eq!((d0[a], d1[b]), (4, 5));
    }

    #[test]
    fn gamma_g_counts() {
        assert_eq!(gamma_g_vertex_count(2, 3, Family::Unary), 45_879);
        assert_eq!(gamma_g_vertex_count(2, 2, Family::Unary), 3806);
        let f = unary(11);
        let r = build_gamma_g(2, &named_group("cyclic:2").unwrap(), &f, &Budget::default()).unwrap();
        assert_eq!(r.graph.vertex_count(), 3806);
        assert!(r.graph.is_connected());
        assert_eq!(r.group_vertices(), vec![0, 1]);
        assert_eq!(r.graph.degree(0).unwrap(), 2);
        let again = build_gamma_g(2, &named_group("cyclic:2").unwrap(), &f, &Budget::default()).unwrap();
        assert_eq!(r.graph, again.graph);
        assert_eq!(r.provenance_json(), again.provenance_json());
    }

    #[test]
    fn provenance_json_shape() {
        let r = build_gamma_1(2, &unary(3), &Budget::default()).unwrap();
        let v = r.provenance_json();
        assert_eq!(v["n"], 2);
        assert_eq!(v["family"], "unary");
        assert!(v.get("group").is_none());
        assert_eq!(v["roles"][0]["role"], "hub-a");
        assert_eq!(v["roles"][1]["role"], "hub-b");
        assert_eq!(v["roles"][4]["role"], "tree-internal");
        assert_eq!(v["roles"][4]["m"], 0);
    }
}
