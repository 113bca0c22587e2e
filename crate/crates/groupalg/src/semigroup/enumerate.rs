//! Exhaustive enumeration of small inverse semigroups up to isomorphism.
//!
//! Idempotents are placed first, then self-inverse non-idempotents, then
//! pairs `(s, s*)`. The involution is an anti-automorphism, so every
//! assignment `ab = c` also fixes `b* a* = c*`.

use std::collections::BTreeSet;

use super::{validate_semigroup, FiniteInverseSemigroup};
use crate::error::{Error, Result};

pub const ENUMERATION_MAX_ORDER: usize = 7;

const FREE: usize = usize::MAX;

struct Search {
    n: usize,
    k: usize,
    iota: Vec<usize>,
    zero: bool,
    t: Vec<Vec<usize>>,
    cells: Vec<(usize, usize)>,
    out: Vec<Vec<Vec<usize>>>,
}

impl Search {
    fn is_e(&self, a: usize) -> bool {
        a < self.k
    }

    fn allowed(&self, a: usize, b: usize, c: usize) -> bool {
        if self.is_e(a) && self.is_e(b) && !self.is_e(c) {
            return false;
        }
        if a == b && !self.is_e(a) && c == a {
            return false;
        }
        if b == self.iota[a] && !self.is_e(a) {
            // s s* is a non-zero idempotent
            return self.is_e(c) && !(self.zero && c == 0);
        }
        true
    }

    fn set(&mut self, a: usize, b: usize, c: usize, trail: &mut Vec<(usize, usize)>) -> bool {
        let cells = [(a, b, c), (self.iota[b], self.iota[a], self.iota[c])];
        for &(x, y, z) in &cells {
            let cur = self.t[x][y];
            if cur == FREE {
                if !self.allowed(x, y, z) {
                    return false;
                }
                self.t[x][y] = z;
                trail.push((x, y));
            } else if cur != z {
                return false;
            }
        }
        if self.is_e(a) && self.is_e(b) {
            let cur = self.t[b][a];
            if cur == FREE {
                self.t[b][a] = c;
                trail.push((b, a));
            } else if cur != c {
                return false;
            }
        }
        true
    }

    fn associative(&self) -> bool {
        let n = self.n;
        let t = &self.t;
        for x in 0..n {
            for y in 0..n {
                let xy = t[x][y];
                if xy == FREE {
                    continue;
                }
                for z in 0..n {
                    let yz = t[y][z];
                    if yz == FREE {
                        continue;
                    }
                    let l = t[xy][z];
                    let r = t[x][yz];
                    if l != FREE && r != FREE && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, i: usize) {
        if i == self.cells.len() {
            self.out.push(self.t.clone());
            return;
        }
        let (a, b) = self.cells[i];
        if self.t[a][b] != FREE {
            return self.run(i + 1);
        }
        for c in 0..self.n {
            let mut trail = Vec::new();
            if self.set(a, b, c, &mut trail) && self.associative() {
                self.run(i + 1);
            }
            for (x, y) in trail {
                self.t[x][y] = FREE;
            }
        }
    }
}

fn canonical(t: &[Vec<usize>], fix_zero: bool) -> Vec<usize> {
    let n = t.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<usize>> = None;
    let start = usize::from(fix_zero);
    permute(&mut perm, start, &mut |p| {
        let mut inv = vec![0; n];
        for (i, &v) in p.iter().enumerate() {
            inv[v] = i;
        }
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                flat.push(p[t[inv[a]][inv[b]]]);
            }
        }
        if best.as_ref().is_none_or(|b| flat < *b) {
            best = Some(flat);
        }
    });
    best.unwrap()
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// All inverse semigroups of order `n` up to isomorphism, as tables. With
/// `with_zero` element `0` is a zero in every table.
pub fn enumerate_inverse_semigroup_tables(n: usize, with_zero: bool) -> Result<Vec<Vec<Vec<usize>>>> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    if n > ENUMERATION_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "enumeration order",
            cap: ENUMERATION_MAX_ORDER,
        });
    }
    let mut seen = BTreeSet::new();
    let mut result = Vec::new();
    for k in 1..=n {
        let m = n - k;
        for fixed in (0..=m).rev().filter(|f| (m - f).is_multiple_of(2)) {
            let mut iota: Vec<usize> = (0..k + fixed).collect();
            let mut j = k + fixed;
            while j < n {
                iota.push(j + 1);
                iota.push(j);
                j += 2;
            }
            let mut t = vec![vec![FREE; n]; n];
            for e in 0..k {
                t[e][e] = e;
            }
            if with_zero {
                for a in 0..n {
                    t[0][a] = 0;
                    t[a][0] = 0;
                }
            }
            let cells = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
            let mut s = Search {
                n,
                k,
                iota,
                zero: with_zero,
                t,
                cells,
                out: Vec::new(),
            };
            if !s.associative() {
                continue;
            }
            s.run(0);
            for table in s.out {
                let zero = if with_zero { 0 } else { find_zero(&table).unwrap_or(0) };
                let sg = FiniteInverseSemigroup::from_table(table.clone(), zero)?;
                let mut rep = validate_semigroup(&sg);
                if !with_zero {
                    rep.violations.retain(|v| v.kind != "zero");
                }
                if !rep.is_ok() {
                    continue;
                }
                if seen.insert(canonical(&table, with_zero)) {
                    result.push(table);
                }
            }
        }
    }
    Ok(result)
}

fn find_zero(t: &[Vec<usize>]) -> Option<usize> {
    (0..t.len()).find(|&z| (0..t.len()).all(|a| t[z][a] == z && t[a][z] == z))
}

/// Inverse semigroups with zero of order `n`, zero at index `0`.
pub fn enumerate_inverse_semigroups(n: usize) -> Result<Vec<FiniteInverseSemigroup>> {
    enumerate_inverse_semigroup_tables(n, true)?
        .into_iter()
        .map(|t| FiniteInverseSemigroup::from_table(t, 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_without_zero() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| enumerate_inverse_semigroup_tables(n, false).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
    }

    #[test]
    fn with_zero_are_valid() {
        for n in 1..=4 {
            for s in enumerate_inverse_semigroups(n).unwrap() {
                assert!(validate_semigroup(&s).is_ok());
            }
        }
        assert_eq!(enumerate_inverse_semigroups(2).unwrap().len(), 1);
    }
}
