//! Anchored gadget trees `T_m` and the certification of their rigidity
//! conditions.
//!
//! A gadget is a tree with two adjacent anchors: the A-vertex of degree `d`
//! and the B-vertex of degree `d + 1`, every other vertex having degree at
//! most `d − 1`. A family must satisfy, for all indices:
//!
//! * (a) every `T_m` is asymmetric;
//! * (b) `T_m` and `T_m′` are non-isomorphic for `m ≠ m′`;
//! * (c) the anchors are the unique vertices of degree `d` and `d + 1`;
//! * (d) all other vertices have degree ≤ `d − 1`;
//! * (e) gluing `T_m` and `T_m′` (`m ≠ m′`) at their A-vertices, or at their
//!   B-vertices, gives an asymmetric graph.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::aut::{are_isomorphic, is_asymmetric, SearchLimits};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A tree with its two anchors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchoredTree {
    pub tree: Graph,
    pub a_vertex: usize,
    pub b_vertex: usize,
    pub d: usize,
    pub m: usize,
}

impl AnchoredTree {
    pub fn vertex_count(&self) -> usize {
        self.tree.vertex_count()
    }

    /// Checks the structural invariants: a tree, anchors distinct with
    /// degrees `d` and `d + 1`, every other degree ≤ `d − 1`.
    pub fn check_invariants(&self) -> Result<()> {
        let g = &self.tree;
        if g.edge_count() + 1 != g.vertex_count() || !g.is_connected() {
            return Err(Error::Invalid(format!("T_{} is not a tree", self.m)));
        }
        if self.a_vertex == self.b_vertex {
            return Err(Error::Invalid("anchors coincide".into()));
        }
        if !self.degrees_ok() || !self.others_ok() {
            return Err(Error::Invalid(format!("T_{} violates the degree conditions", self.m)));
        }
        Ok(())
    }

    /// Condition (c).
    fn degrees_ok(&self) -> bool {
        let g = &self.tree;
        let d = self.d;
        let deg = g.degrees();
        let with = |k: usize| (0..deg.len()).filter(|&v| deg[v] == k).collect::<Vec<_>>();
        self.a_vertex != self.b_vertex && with(d) == [self.a_vertex] && with(d + 1) == [self.b_vertex]
    }

    /// Condition (d).
    fn others_ok(&self) -> bool {
        let deg = self.tree.degrees();
        (0..deg.len())
            .filter(|&v| v != self.a_vertex && v != self.b_vertex)
            .all(|v| deg[v] < self.d)
    }
}

/// Anchor at which two gadgets are glued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Anchor {
    A,
    B,
}

/// Identifies the chosen anchors of two trees with equal `d`. Vertices of
/// `t1` keep their ids; those of `t2` follow.
pub fn glue(t1: &AnchoredTree, t2: &AnchoredTree, at: Anchor) -> Result<Graph> {
    if t1.d != t2.d {
        return Err(Error::ValencyMismatch(t1.d, t2.d));
    }
    let union = t1.tree.disjoint_union(&t2.tree);
    let shift = t1.vertex_count();
    let pair = match at {
        Anchor::A => (t1.a_vertex, shift + t2.a_vertex),
        Anchor::B => (t1.b_vertex, shift + t2.b_vertex),
    };
    Ok(union.identify_vertices(&[pair])?.0)
}

/// A source of anchored trees indexed by `m ≥ 0`.
pub trait TreeFamily {
    fn name(&self) -> String;
    fn d(&self) -> usize;
    fn tree(&self, m: usize) -> AnchoredTree;
}

/// The built-in families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// d = 3, five bare arms with globally distinct lengths.
    Unary,
    /// d = 4, seven binary-coded caterpillar arms of logarithmic length.
    Compact,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Unary => "unary",
            Family::Compact => "compact",
        }
    }

    pub fn tree_size(self, m: usize) -> usize {
        match self {
            Family::Unary => 26 * m + 17,
            Family::Compact => {
                let len = compact_arm_length(m);
                2 + (0..7).map(|slot| len + 1 + (7 * m + slot).count_ones() as usize).sum::<usize>()
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unary" => Ok(Family::Unary),
            "compact" => Ok(Family::Compact),
            _ => Err(Error::Invalid(format!("unknown tree family `{s}`"))),
        }
    }
}

impl TreeFamily for Family {
    fn name(&self) -> String {
        self.as_str().to_string()
    }

    fn d(&self) -> usize {
        match self {
            Family::Unary => 3,
            Family::Compact => 4,
        }
    }

    fn tree(&self, m: usize) -> AnchoredTree {
        match self {
            Family::Unary => unary_tree(m),
            Family::Compact => compact_tree(m),
        }
    }
}

/// Appends a path of `len` fresh vertices hanging from `from`; returns the
/// ids in order away from `from`.
fn push_arm(edges: &mut Vec<(usize, usize)>, next: &mut usize, from: usize, len: usize) -> Vec<usize> {
    let mut prev = from;
    let mut ids = Vec::with_capacity(len);
    for _ in 0..len {
        edges.push((prev, *next));
        ids.push(*next);
        prev = *next;
        *next += 1;
    }
    ids
}

/// A=0 and B=1 joined by an edge; B carries arms of lengths 6m+1, 6m+3,
/// 6m+5 and A carries arms of lengths 4m+2, 4m+4, numbered in that order,
/// each from its anchor outward. 26m + 17 vertices.
pub fn unary_tree(m: usize) -> AnchoredTree {
    let mut edges = vec![(0, 1)];
    let mut next = 2;
    for len in [6 * m + 1, 6 * m + 3, 6 * m + 5] {
        push_arm(&mut edges, &mut next, 1, len);
    }
    for len in [4 * m + 2, 4 * m + 4] {
        push_arm(&mut edges, &mut next, 0, len);
    }
    AnchoredTree {
        tree: Graph::new(next, edges).expect("unary tree is simple"),
        a_vertex: 0,
        b_vertex: 1,
        d: 3,
        m,
    }
}

/// Arm length of the compact family: 4 + ⌈log₂(7(m+1))⌉.
pub fn compact_arm_length(m: usize) -> usize {
    4 + code_bits(m)
}

fn code_bits(m: usize) -> usize {
    let top = 7 * (m + 1);
    (usize::BITS - (top - 1).leading_zeros()) as usize
}

/// A=0 and B=1 joined by an edge; B carries four arms and A three. Arm
/// `slot` (B-arms are slots 0..4) is a path `p1 … pL` whose interior holds a
/// marker leaf at `p1` and, at `p2 … p(k+1)`, a leaf for every set bit of
/// the tag `7m + slot` written with `k` bits, most significant first.
pub fn compact_tree(m: usize) -> AnchoredTree {
    let k = code_bits(m);
    let len = compact_arm_length(m);
    let mut edges = vec![(0, 1)];
    let mut next = 2;
    for slot in 0..7 {
        let anchor = if slot < 4 { 1 } else { 0 };
        let tag = 7 * m + slot;
        let spine = push_arm(&mut edges, &mut next, anchor, len);
        push_arm(&mut edges, &mut next, spine[0], 1);
        for bit in 0..k {
            if tag >> (k - 1 - bit) & 1 == 1 {
                push_arm(&mut edges, &mut next, spine[1 + bit], 1);
            }
        }
    }
    AnchoredTree {
        tree: Graph::new(next, edges).expect("compact tree is simple"),
        a_vertex: 0,
        b_vertex: 1,
        d: 4,
        m,
    }
}

/// Condition kind of a certification check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    A,
    B,
    C,
    D,
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertCheck {
    pub kind: CheckKind,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m2: Option<usize>,
    /// Glue anchor for kind `e`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<Anchor>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub family: String,
    pub d: usize,
    pub max_m: usize,
    /// Pairwise conditions (b) and (e) range over distinct indices only.
    pub pair_reading: &'static str,
    pub checks: Vec<CertCheck>,
    pub all_pass: bool,
}

impl CertificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CertCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Checks (a)–(e) for all `0 ≤ m ≤ max_m` and all pairs `m < m′ ≤ max_m`.
/// Failed conditions are report entries, not errors; only an exhausted
/// search budget aborts.
pub fn certify_family<F: TreeFamily + ?Sized>(
    family: &F,
    max_m: usize,
    limits: &SearchLimits,
) -> Result<CertificationReport> {
    let trees: Vec<AnchoredTree> = (0..=max_m).map(|m| family.tree(m)).collect();
    let mut checks = Vec::new();
    let single = |kind, m, pass| CertCheck {
        kind,
        m,
        m2: None,
        at: None,
        pass,
    };
    for t in &trees {
        let is_tree = t.tree.edge_count() + 1 == t.vertex_count() && t.tree.is_connected();
        checks.push(single(CheckKind::A, t.m, is_tree && is_asymmetric(&t.tree, limits)?));
        checks.push(single(CheckKind::C, t.m, t.d == family.d() && t.degrees_ok()));
        checks.push(single(CheckKind::D, t.m, t.others_ok()));
    }
    for (i, t1) in trees.iter().enumerate() {
        for t2 in &trees[i + 1..] {
            checks.push(CertCheck {
                kind: CheckKind::B,
                m: t1.m,
                m2: Some(t2.m),
                at: None,
                pass: !are_isomorphic(&t1.tree, &t2.tree, limits)?,
            });
            for at in [Anchor::A, Anchor::B] {
                let glued = glue(t1, t2, at)?;
                checks.push(CertCheck {
                    kind: CheckKind::E,
                    m: t1.m,
                    m2: Some(t2.m),
                    at: Some(at),
                    pass: is_asymmetric(&glued, limits)?,
                });
            }
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(CertificationReport {
        family: family.name(),
        d: family.d(),
        max_m,
        pair_reading: "distinct indices m < m2, m from 0",
        checks,
        all_pass,
    })
}

/// A family whose certification passed up to `max_m`. Constructions require
/// one of these instead of a bare family.
#[derive(Clone, Debug)]
pub struct CertifiedFamily {
    family: Family,
    max_m: usize,
}

impl CertifiedFamily {
    /// Runs the certification and keeps the result only if every check passes.
    pub fn certify(family: Family, max_m: usize, limits: &SearchLimits) -> Result<Self> {
        Self::from_report(family, &certify_family(&family, max_m, limits)?)
    }

    /// Accepts a finished certification of `family`; fails unless every check passed.
    pub fn from_report(family: Family, report: &CertificationReport) -> Result<Self> {
        if report.family != family.as_str() {
            return Err(Error::Invalid(format!(
                "report is for `{}`, not `{family}`",
                report.family
            )));
        }
        if let Some(first) = report.failures().next() {
            return Err(Error::Invalid(format!(
                "family `{family}` fails certification: condition ({:?}) at m = {}{}",
                first.kind,
                first.m,
                first.m2.map(|x| format!(", m2 = {x}")).unwrap_or_default()
            )));
        }
        Ok(CertifiedFamily {
            family,
            max_m: report.max_m,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn tree(&self, m: usize) -> Result<AnchoredTree> {
        self.require(m)?;
        Ok(self.family.tree(m))
    }

    pub fn require(&self, m: usize) -> Result<()> {
        if m > self.max_m {
            return Err(Error::Uncertified {
                family: self.family.to_string(),
                certified: Some(self.max_m),
                needed: m,
            });
        }
        Ok(())
    }
}
