//! Finite groups stored as validated multiplication tables.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a group was built. Only used for reporting and for the splitting-field policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Cyclic(usize),
    Symmetric(usize),
    Explicit,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupKind::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupKind::Explicit => f.write_str("explicit"),
        }
    }
}

/// Input to [`FiniteGroup::build`].
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Explicit(Vec<Vec<usize>>),
}

/// A finite group on elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    kind: GroupKind,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn build(spec: GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Cyclic(n) => Self::cyclic(n),
            GroupSpec::Symmetric(n) => Self::symmetric(n),
            GroupSpec::Explicit(table) => Self::from_table(table, GroupKind::Explicit),
        }
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(table, GroupKind::Cyclic(n))
    }

    /// Symmetric group on `n` letters; elements are permutations in lexicographic
    /// order (so element 0 is the identity) and `a * b` means "apply `b`, then `a`".
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidGroup(format!("symmetric group on {n} letters is out of range")));
        }
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index(&(0..n).map(|i| a[b[i]]).collect())).collect())
            .collect();
        Self::from_table(table, GroupKind::Symmetric(n))
    }

    /// Validates the group axioms exhaustively.
    pub fn from_table(table: Vec<Vec<usize>>, kind: GroupKind) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("row {i} contains out-of-range element {bad}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup { kind, table, identity, inverse })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, |acc, k| acc / gcd(acc, k) * k)
    }

    /// Conjugacy classes by exhaustive orbit enumeration, each sorted, in order of
    /// their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for a in self.elements() {
            if seen[a] {
                continue;
            }
            let orbit: BTreeSet<usize> =
                self.elements().map(|g| self.mul(self.mul(g, a), self.inv(g))).collect();
            for &x in &orbit {
                seen[x] = true;
            }
            classes.push(orbit.into_iter().collect());
        }
        classes
    }

    pub fn conjugacy_class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_class_count(), 1);
    }

    #[test]
    fn cyclic_three_has_no_involutions() {
        let g = FiniteGroup::cyclic(3).unwrap();
        for a in g.elements().filter(|&a| a != g.identity()) {
            assert_ne!(g.inv(a), a);
        }
        assert_eq!(g.exponent(), 3);
    }

    #[test]
    fn symmetric_groups() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert!(!s3.is_abelian());
        assert_eq!(s3.exponent(), 6);
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.exponent(), 12);
    }

    #[test]
    fn class_counts() {
        // Independent oracle: class sizes of S3 and S4 by cycle type are
        // {1, 3, 2} and {1, 6, 3, 8, 6}.
        let sizes = |g: &FiniteGroup| {
            let mut s: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
            s.sort();
            s
        };
        assert_eq!(sizes(&FiniteGroup::symmetric(3).unwrap()), vec![1, 2, 3]);
        assert_eq!(sizes(&FiniteGroup::symmetric(4).unwrap()), vec![1, 3, 6, 6, 8]);
        assert_eq!(FiniteGroup::cyclic(5).unwrap().conjugacy_class_count(), 5);
    }

    #[test]
    fn rejects_bad_tables() {
        // Not associative: a "group" of order 3 with a Latin square that fails.
        let bad = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::from_table(bad, GroupKind::Explicit).is_err());
        let no_identity = vec![vec![0, 0], vec![0, 0]];
        assert!(FiniteGroup::from_table(no_identity, GroupKind::Explicit).is_err());
        let ragged = vec![vec![0, 1], vec![1]];
        assert!(FiniteGroup::from_table(ragged, GroupKind::Explicit).is_err());
        let out_of_range = vec![vec![0, 2], vec![1, 0]];
        assert!(FiniteGroup::from_table(out_of_range, GroupKind::Explicit).is_err());
    }

    #[test]
    fn inverse_of_product() {
        let g = FiniteGroup::symmetric(4).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(g.inv(g.mul(a, b)), g.mul(g.inv(b), g.inv(a)));
            }
        }
    }
}
