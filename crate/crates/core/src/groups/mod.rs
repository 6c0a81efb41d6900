//! Finite abstract groups given by validated multiplication tables, plus
//! permutation groups.
//!
//! Element ordering of the named groups is fixed, because the arc colors of
//! the Cayley digraph are indexed by it:
//!
//! | spec         | order | elements                                         |
//! |--------------|-------|--------------------------------------------------|
//! | `trivial`    | 1     | `e`                                              |
//! | `cyclic:k`   | k     | powers of the generator: `e, g, g^2, …`          |
//! | `dihedral:k` | 2k    | rotations `r^i` then reflections `r^i s`         |
//! | `klein4`     | 4     | `e, a, b, ab`                                    |
//! | `sym:k`      | k!    | permutations in lexicographic one-line notation  |
//! | `quat8`      | 8     | `1, -1, i, -i, j, -j, k, -k`                     |
//!
//! In `sym:k` the product `g·h` is composition with `h` applied first.

pub mod perm;

use std::path::Path;

use crate::error::{Error, Result};

pub use perm::{enumerate_closure, PermGroup, Permutation, StabilizerChain};

/// Orders above this need `trust_table` to skip the cubic associativity check.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a table where `table[i][j]` is the index of `gᵢ·gⱼ` and
    /// element 0 is the identity.
    #[allow(clippy::needless_range_loop)]
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        trust_table: bool,
    ) -> Result<Self> {
        let n = labels.len();
        let bad = |m: String| Err(Error::InvalidGroup(m));
        if n == 0 {
            return bad("group must have at least one element".into());
        }
        for i in 0..n {
            if let Some(j) = (0..i).find(|&j| labels[j] == labels[i]) {
                return bad(format!("duplicate label `{}` at indices {j} and {i}", labels[i]));
            }
        }
        if table.len() != n {
            return bad(format!("expected {n} rows, found {}", table.len()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {i} has {} entries, expected {n}", row.len()));
            }
            if let Some(j) = row.iter().position(|&x| x >= n) {
                return bad(format!("entry ({i}, {j}) out of range"));
            }
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return bad(format!(
                    "identity not first: row 0 / column 0 do not act as identity at index {i}"
                ));
            }
        }
        for i in 0..n {
            let mut seen = vec![usize::MAX; n];
            for j in 0..n {
                let x = table[i][j];
                if seen[x] != usize::MAX {
                    return bad(format!(
                        "not a Latin square: row {i} repeats `{}` at columns {} and {j}",
                        labels[x], seen[x]
                    ));
                }
                seen[x] = j;
            }
        }
        for j in 0..n {
            let mut seen = vec![usize::MAX; n];
            for i in 0..n {
                let x = table[i][j];
                if seen[x] != usize::MAX {
                    return bad(format!(
                        "not a Latin square: column {j} repeats `{}` at rows {} and {i}",
                        labels[x], seen[x]
                    ));
                }
                seen[x] = i;
            }
        }
        if n > ASSOCIATIVITY_CHECK_LIMIT && !trust_table {
            return bad(format!(
                "order {n} exceeds {ASSOCIATIVITY_CHECK_LIMIT}; rerun with --trust-table to skip the associativity check"
            ));
        }
        if !trust_table {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return bad(format!(
                                "associativity fails for ({a}, {b}, {c}): ({}·{})·{} ≠ {}·({}·{})",
                                labels[a], labels[b], labels[c], labels[a], labels[b], labels[c]
                            ));
                        }
                    }
                }
            }
        }
        for i in 0..n {
            let j = table[i].iter().position(|&x| x == 0).unwrap();
            if table[j][i] != 0 {
                return bad(format!("element {i} has no two-sided inverse"));
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            labels,
            table: table.into_iter().flatten().collect(),
        })
    }

    /// Parses the CSV Cayley table: first row labels, row `i` lists the
    /// labels of `gᵢ·g₀, gᵢ·g₁, …`.
    pub fn from_cayley_csv(name: impl Into<String>, text: &str, trust_table: bool) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut rows: Vec<Vec<String>> = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(|e| Error::Parse {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            if rec.iter().all(str::is_empty) {
                continue;
            }
            rows.push(rec.iter().map(str::to_string).collect());
        }
        let Some((labels, body)) = rows.split_first() else {
            return Err(Error::InvalidGroup("empty table".into()));
        };
        let labels = labels.clone();
        let index = |s: &str, row: usize| {
            labels.iter().position(|l| l == s).ok_or_else(|| Error::InvalidGroup(format!(
                "row {row}: unknown element `{s}`"
            )))
        };
        let mut table = Vec::with_capacity(body.len());
        for (i, row) in body.iter().enumerate() {
            table.push(
                row.iter()
                    .map(|s| index(s, i))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Self::from_table(name, labels, table, trust_table)
    }

    pub fn from_cayley_file(path: &Path, trust_table: bool) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_cayley_csv(path.display().to_string(), &text, trust_table)
    }

    pub fn to_cayley_csv(&self) -> String {
        let n = self.order();
        let mut out = self.labels.join(",");
        out.push('\n');
        for i in 0..n {
            let row: Vec<&str> = (0..n).map(|j| self.labels[self.mul(i, j)].as_str()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).unwrap()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The right regular action: for each `x`, the permutation `g ↦ g·x`.
    pub fn right_regular_action(&self) -> PermGroup {
        let n = self.order();
        let gens = (1..n)
            .map(|x| Permutation::from_images_unchecked((0..n).map(|g| self.mul(g, x)).collect()))
            .collect();
        PermGroup::new(n, gens).expect("regular action permutations have degree |G|")
    }
}

fn build(name: String, labels: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup> {
    let n = labels.len();
    let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    FiniteGroup::from_table(name, labels, table, false)
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => "e".into(),
        1 => base.into(),
        _ => format!("{base}^{k}"),
    }
}

fn parse_param(spec: &str, arg: &str, range: std::ops::RangeInclusive<usize>) -> Result<usize> {
    let k: usize = arg
        .parse()
        .map_err(|_| Error::UnknownGroup(spec.to_string()))?;
    if !range.contains(&k) {
        return Err(Error::InvalidGroup(format!(
            "`{spec}`: parameter {k} outside {}..={}",
            range.start(),
            range.end()
        )));
    }
    Ok(k)
}

/// Builds one of `trivial`, `cyclic:k`, `dihedral:k`, `klein4`, `sym:k`
/// (k ≤ 5) or `quat8`.
pub fn named_group(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let (kind, arg) = match spec.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (spec, None),
    };
    let name = spec.to_string();
    match (kind, arg) {
        ("trivial", None) => build(name, vec!["e".into()], |_, _| 0),
        ("klein4", None) => build(
            name,
            ["e", "a", "b", "ab"].map(String::from).to_vec(),
            |x, y| x ^ y,
        ),
        ("cyclic", Some(a)) => {
            let k = parse_param(spec, a, 1..=1024)?;
            build(name, (0..k).map(|i| power_label("g", i)).collect(), |x, y| (x + y) % k)
        }
        ("dihedral", Some(a)) => {
            let k = parse_param(spec, a, 1..=512)?;
            let labels = (0..2 * k)
                .map(|idx| {
                    let (i, f) = (idx % k, idx / k);
                    match (i, f) {
                        (0, 0) => "e".to_string(),
                        (_, 0) => power_label("r", i),
                        (0, _) => "s".to_string(),
                        _ => format!("{}s", power_label("r", i)),
                    }
                })
                .collect();
            // r^i s^f · r^j s^g = r^(i + (-1)^f j) s^(f + g)
            build(name, labels, move |x, y| {
                let (i, f) = (x % k, x / k);
                let (j, g) = (y % k, y / k);
                let rot = if f == 0 { (i + j) % k } else { (i + k - j) % k };
                ((f + g) % 2) * k + rot
            })
        }
        ("sym", Some(a)) => {
            let k = parse_param(spec, a, 1..=5)?;
            let perms = lexicographic_permutations(k);
            let labels = perms
                .iter()
                .map(|p| p.iter().map(|x| x.to_string()).collect::<String>())
                .collect();
            let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
            build(name, labels, |x, y| {
                let composed: Vec<usize> = (0..k).map(|t| perms[x][perms[y][t]]).collect();
                index(&composed)
            })
        }
        ("quat8", None) => {
            // Index 2u + s encodes (-1)^s · unit u with units 1, i, j, k.
            const UNIT: [[(usize, usize); 4]; 4] = [
                [(0, 0), (1, 0), (2, 0), (3, 0)],
                [(1, 0), (0, 1), (3, 0), (2, 1)],
                [(2, 0), (3, 1), (0, 1), (1, 0)],
                [(3, 0), (2, 0), (1, 1), (0, 1)],
            ];
            let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
                .map(String::from)
                .to_vec();
            build(name, labels, |x, y| {
                let (u, s) = UNIT[x / 2][y / 2];
                2 * u + (s + x % 2 + y % 2) % 2
            })
        }
        _ => Err(Error::UnknownGroup(spec.to_string())),
    }
}

fn lexicographic_permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
