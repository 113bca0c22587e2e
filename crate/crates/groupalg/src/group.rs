//! Small finite groups given by multiplication tables.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table and derives identity and inverses.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Invalid("empty group".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("group table has the wrong shape".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!(
                            "group table is not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let i = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::Invalid(format!("{} has no inverse", labels[a])))?;
            inverse.push(i);
        }
        Ok(FiniteGroup {
            labels,
            table,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(labels, table).expect("cyclic group")
    }

    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (n, m) = (g.order(), h.order());
        let labels = (0..n * m)
            .map(|i| format!("({},{})", g.labels[i / m], h.labels[i % m]))
            .collect();
        let table = (0..n * m)
            .map(|a| {
                (0..n * m)
                    .map(|b| g.table[a / m][b / m] * m + h.table[a % m][b % m])
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(labels, table).expect("product group")
    }

    /// ℤ₂ × ℤ₂ with labels `(a,b)`.
    pub fn klein() -> Self {
        FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
    }

    /// The symmetric group on three letters, elements as permutations in
    /// one-line notation.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        FiniteGroup::from_table(labels, table).expect("s3")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn id(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut s = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if s.insert(b) {
                    frontier.push(b);
                }
            }
        }
        s
    }

    /// All subgroups, by brute force over subsets (small groups only).
    pub fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let n = self.order();
        let mut stack = vec![self.generated(&[])];
        out.insert(stack[0].clone());
        while let Some(h) = stack.pop() {
            for g in 0..n {
                if h.contains(&g) {
                    continue;
                }
                let mut gens: Vec<usize> = h.iter().copied().collect();
                gens.push(g);
                let k = self.generated(&gens);
                if out.insert(k.clone()) {
                    stack.push(k);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Cyclic subgroups.
    pub fn cyclic_subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut out: Vec<BTreeSet<usize>> = (0..self.order()).map(|g| self.generated(&[g])).collect();
        out.sort();
        out.dedup();
        out
    }
}
