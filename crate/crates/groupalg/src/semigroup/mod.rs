//! Finite inverse semigroups with zero, tight filters and the tight groupoid.
//!
//! A finite semigroup always yields a discrete (hence Hausdorff) tight
//! groupoid. Non-Hausdorff behaviour is only reachable through hand-made
//! [`FiniteGroupoid`](crate::groupoid::FiniteGroupoid) fixtures.

mod conditions;
mod enumerate;
mod tight;

use crate::error::{Error, Result};
use crate::verdict::ValidationReport;

pub use conditions::*;
pub use enumerate::*;
pub use tight::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInverseSemigroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    zero: usize,
    star: Vec<Option<usize>>,
}

impl FiniteInverseSemigroup {
    /// Shape checks only; see [`validate_semigroup`].
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let n = labels.len();
        if zero >= n {
            return Err(Error::IndexOutOfRange {
                what: "zero",
                index: zero,
                len: n,
            });
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("semigroup table has the wrong shape".into()));
        }
        let star = (0..n)
            .map(|s| (0..n).find(|&t| table[table[s][t]][s] == s && table[table[t][s]][t] == t))
            .collect();
        Ok(FiniteInverseSemigroup {
            labels,
            table,
            zero,
            star,
        })
    }

    /// Builds from a table with default labels `0..n`.
    pub fn from_table(table: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let labels = (0..table.len()).map(|i| i.to_string()).collect();
        Self::new(labels, table, zero)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn mul3(&self, a: usize, b: usize, c: usize) -> usize {
        self.table[self.table[a][b]][c]
    }

    /// The generalized inverse `s*`.
    pub fn star(&self, s: usize) -> usize {
        self.star[s].expect("valid inverse semigroup")
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.table[s][s] == s
    }

    /// All idempotents, including zero.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.is_idempotent(s)).collect()
    }

    pub fn nonzero_idempotents(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&s| s != self.zero && self.is_idempotent(s))
            .collect()
    }

    /// `e ≤ f` for idempotents: `e = ef`.
    pub fn leq(&self, e: usize, f: usize) -> bool {
        self.table[e][f] == e
    }

    /// Natural partial order `s ≤ t` iff `s = t s* s`.
    pub fn natural_leq(&self, s: usize, t: usize) -> bool {
        self.mul3(t, self.star(s), s) == s
    }

    /// `eE = {f ∈ E : f ≤ e}`.
    pub fn down(&self, e: usize) -> Vec<usize> {
        self.idempotents().into_iter().filter(|&f| self.leq(f, e)).collect()
    }
}

/// Associativity, zero, unique generalized inverses and commuting
/// idempotents.
pub fn validate_semigroup(s: &FiniteInverseSemigroup) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let n = s.len();
    let t = &s.table;
    for a in 0..n {
        if t[a][s.zero] != s.zero || t[s.zero][a] != s.zero {
            rep.push("zero", vec![a], format!("zero does not annihilate {}", s.label(a)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t[t[a][b]][c] != t[a][t[b][c]] {
                    rep.push(
                        "associativity",
                        vec![a, b, c],
                        format!(
                            "({}{}){} != {}({}{})",
                            s.label(a),
                            s.label(b),
                            s.label(c),
                            s.label(a),
                            s.label(b),
                            s.label(c)
                        ),
                    );
                }
            }
        }
    }
    for a in 0..n {
        let inverses: Vec<usize> = (0..n).filter(|&b| t[t[a][b]][a] == a && t[t[b][a]][b] == b).collect();
        match inverses.len() {
            0 => rep.push(
                "no_inverse",
                vec![a],
                format!("{} has no generalized inverse", s.label(a)),
            ),
            1 => {}
            _ => rep.push(
                "inverse_not_unique",
                inverses.clone(),
                format!("{} has several generalized inverses", s.label(a)),
            ),
        }
    }
    let e: Vec<usize> = (0..n).filter(|&a| t[a][a] == a).collect();
    for &x in &e {
        for &y in &e {
            if x < y && t[x][y] != t[y][x] {
                rep.push(
                    "idempotents_commute",
                    vec![x, y],
                    format!("{} and {} do not commute", s.label(x), s.label(y)),
                );
            }
        }
    }
    rep
}

/// Symmetric inverse monoid on `{0, 1}` (partial bijections), with its empty
/// map as zero. Labels list the images of 0 and 1 (`-` for undefined).
pub fn symmetric_inverse_monoid_2() -> FiniteInverseSemigroup {
    // Partial maps encoded as [image of 0, image of 1], 2 = undefined.
    let maps: Vec<[usize; 2]> = vec![[2, 2], [0, 1], [1, 0], [0, 2], [2, 1], [1, 2], [2, 0]];
    let name = |m: &[usize; 2]| {
        m.iter()
            .map(|&x| if x == 2 { "-".to_string() } else { x.to_string() })
            .collect::<String>()
    };
    let idx = |m: [usize; 2]| maps.iter().position(|x| *x == m).unwrap();
    // (ab)(x) = a(b(x)).
    let table = maps
        .iter()
        .map(|a| {
            maps.iter()
                .map(|b| {
                    let f = |x: usize| if b[x] == 2 { 2 } else { a[b[x]] };
                    idx([f(0), f(1)])
                })
                .collect()
        })
        .collect();
    FiniteInverseSemigroup::new(maps.iter().map(name).collect(), table, 0).unwrap()
}

/// A finite group with a zero adjoined.
pub fn group_with_zero(g: &crate::group::FiniteGroup) -> FiniteInverseSemigroup {
    let n = g.order();
    let mut labels = vec!["z".to_string()];
    labels.extend(g.labels.iter().cloned());
    let table = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| if a == 0 || b == 0 { 0 } else { g.mul(a - 1, b - 1) + 1 })
                .collect()
        })
        .collect();
    FiniteInverseSemigroup::new(labels, table, 0).unwrap()
}

/// Meet semilattice `{0, 1, e, f}` with `ef = 0`.
pub fn semilattice_two_atoms() -> FiniteInverseSemigroup {
    let labels = vec!["0".into(), "1".into(), "e".into(), "f".into()];
    let table = vec![vec![0, 0, 0, 0], vec![0, 1, 2, 3], vec![0, 2, 2, 0], vec![0, 3, 0, 3]];
    FiniteInverseSemigroup::new(labels, table, 0).unwrap()
}

/// A chain semilattice `0 < e_1 < ... < e_k` with labels `0`, `e1`, ...
pub fn chain_semilattice(k: usize) -> FiniteInverseSemigroup {
    let labels = (0..=k)
        .map(|i| if i == 0 { "0".to_string() } else { format!("e{}", i) })
        .collect();
    let table = (0..=k).map(|a| (0..=k).map(|b| a.min(b)).collect()).collect();
    FiniteInverseSemigroup::new(labels, table, 0).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn fixtures_validate() {
        for s in [
            symmetric_inverse_monoid_2(),
            semilattice_two_atoms(),
            chain_semilattice(3),
            group_with_zero(&FiniteGroup::cyclic(2)),
        ] {
            assert!(validate_semigroup(&s).is_ok(), "{:?}", validate_semigroup(&s));
        }
        assert_eq!(symmetric_inverse_monoid_2().len(), 7);
    }

    #[test]
    fn broken_involution() {
        // left-zero band {a, b} with zero: idempotents do not commute
        let t = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 2, 2]];
        let s = FiniteInverseSemigroup::from_table(t, 0).unwrap();
        let rep = validate_semigroup(&s);
        assert!(rep.has("idempotents_commute"), "{:?}", rep);
    }

    #[test]
    fn natural_order() {
        let s = symmetric_inverse_monoid_2();
        let id = s.labels().iter().position(|l| l == "01").unwrap();
        let p = s.labels().iter().position(|l| l == "0-").unwrap();
        assert!(s.natural_leq(p, id));
        assert!(!s.natural_leq(id, p));
        assert_eq!(s.nonzero_idempotents().len(), 3);
    }
}
