//! Permutations and permutation groups backed by a Schreier–Sims
//! stabilizer chain.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A bijection on `0..n`, stored by images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &x)| *i != x).map(|(i, _)| i)
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for s in 0..self.images.len() {
            if seen[s] || self.images[s] == s {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::from(1u32), |acc, c| num_integer::lcm(acc, BigUint::from(c.len())))
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation such as `(0 1)(2 3)`; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `transversal[y]` maps the base point to `y`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    /// Closes the orbit under the current generators.
    fn extend_orbit(&mut self) {
        let mut i = 0;
        // Revisit the whole orbit: a new generator can move old points.
        while i < self.orbit.len() {
            let x = self.orbit[i];
            i += 1;
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().then(g);
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
        }
    }
}

/// Base and strong generating set with explicit transversals.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn build(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            chain.extend(0, g.clone());
        }
        chain
    }

    /// Sifts `g` from level `start`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it went all the way down).
    fn sift(&self, start: usize, g: &Permutation) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let y = h.apply(level.base);
            match &level.transversal[y] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, j),
            }
        }
        (h, self.levels.len())
    }

    fn extend(&mut self, start: usize, g: Permutation) {
        let (residue, at) = self.sift(start, &g);
        if at == self.levels.len() && residue.is_identity() {
            return;
        }
        if at == self.levels.len() {
            let base = residue
                .first_moved()
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(base, self.degree));
        }
        // The residue fixes every base point above `at`, so it is a strong
        // generator of each level from `start` through `at`.
        for level in &mut self.levels[start..=at] {
            level.gens.push(residue.clone());
            level.extend_orbit();
        }
        for l in (start..=at).rev() {
            // Every Schreier generator of level l must lie in level l + 1.
            let orbit = self.levels[l].orbit.clone();
            let gens = self.levels[l].gens.clone();
            for &x in &orbit {
                for s in &gens {
                    let lvl = &self.levels[l];
                    let ux = lvl.transversal[x].as_ref().unwrap();
                    let usx = lvl.transversal[s.apply(x)].as_ref().unwrap();
                    let schreier = ux.then(s).then(&usx.inverse());
                    if !schreier.is_identity() {
                        self.extend(l + 1, schreier);
                    }
                }
            }
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, at) = self.sift(0, g);
        at == self.levels.len() && h.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }
}

/// A permutation group given by generators; the stabilizer chain is built
/// on first use and then shared.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: OnceLock::new(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Equality as sets of permutations.
    pub fn same_group(&self, other: &PermGroup) -> Result<bool> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(other.generators.iter().all(|g| self.contains(g))
            && self.generators.iter().all(|g| other.contains(g)))
    }

    /// Orbits of the group on `0..degree`, each sorted, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_regular(&self) -> bool {
        let orbits = self.orbits();
        orbits.len() == 1 && self.order() == BigUint::from(self.degree)
    }
}

pub(crate) fn orbits_of(degree: usize, generators: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for s in 0..degree {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut orbit = vec![s];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            i += 1;
            for g in generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Every element of the group generated by `generators`, by breadth-first
/// closure. Exponential; meant for small groups and cross-checks.
pub fn enumerate_closure(degree: usize, generators: &[Permutation]) -> Vec<Permutation> {
    use std::collections::BTreeSet;
    let id = Permutation::identity(degree);
    let mut seen: BTreeSet<Permutation> = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter().collect()
}
