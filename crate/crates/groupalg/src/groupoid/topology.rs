use std::collections::BTreeSet;

use super::{ArrowSet, FiniteGroupoid};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

impl FiniteGroupoid {
    /// Union of the basis sets contained in `s`.
    pub fn interior(&self, s: &ArrowSet) -> ArrowSet {
        if self.is_discrete_topology() {
            return s.clone();
        }
        self.basis_sets()
            .iter()
            .filter(|b| b.is_subset(s))
            .flatten()
            .copied()
            .collect()
    }

    /// Complement of the union of the basis sets missing `s`.
    pub fn closure(&self, s: &ArrowSet) -> ArrowSet {
        if self.is_discrete_topology() {
            return s.clone();
        }
        let outside: ArrowSet = self
            .basis_sets()
            .iter()
            .filter(|b| b.is_disjoint(s))
            .flatten()
            .copied()
            .collect();
        (0..self.len()).filter(|a| !outside.contains(a)).collect()
    }

    pub fn is_open(&self, s: &ArrowSet) -> bool {
        self.interior(s) == *s
    }

    pub fn is_regular_open(&self, s: &ArrowSet) -> bool {
        self.interior(&self.closure(s)) == *s
    }

    /// Smallest open set containing `a`.
    pub fn min_open(&self, a: usize) -> ArrowSet {
        if self.is_discrete_topology() {
            return ArrowSet::from([a]);
        }
        let mut out: Option<ArrowSet> = None;
        for b in self.basis_sets().iter().filter(|b| b.contains(&a)) {
            out = Some(match out {
                None => b.clone(),
                Some(o) => o.intersection(b).copied().collect(),
            });
        }
        out.unwrap_or_else(|| ArrowSet::from([a]))
    }

    /// Smallest open set containing `s`.
    pub fn open_hull(&self, s: &ArrowSet) -> ArrowSet {
        s.iter().flat_map(|&a| self.min_open(a)).collect()
    }

    /// All non-empty open subsets of `s`, as unions of basis sets inside `s`.
    pub fn open_subsets(&self, s: &ArrowSet, cap: usize) -> Result<Vec<ArrowSet>> {
        let inside: Vec<ArrowSet> = {
            let mut v: Vec<ArrowSet> = self
                .basis_sets()
                .iter()
                .filter(|b| !b.is_empty() && b.is_subset(s))
                .cloned()
                .collect();
            v.sort();
            v.dedup();
            v
        };
        let mut found: BTreeSet<ArrowSet> = BTreeSet::new();
        let mut frontier: Vec<ArrowSet> = Vec::new();
        for b in &inside {
            if found.insert(b.clone()) {
                frontier.push(b.clone());
            }
        }
        while let Some(cur) = frontier.pop() {
            for b in &inside {
                if b.is_subset(&cur) {
                    continue;
                }
                let next: ArrowSet = cur.union(b).copied().collect();
                if found.insert(next.clone()) {
                    if found.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "open subsets",
                            cap,
                        });
                    }
                    frontier.push(next);
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    /// Arrows separable from every other arrow by disjoint basic open sets.
    pub fn hausdorff_points(&self) -> ArrowSet {
        if self.is_discrete_topology() {
            return (0..self.len()).collect();
        }
        let mins: Vec<ArrowSet> = (0..self.len()).map(|a| self.min_open(a)).collect();
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| b == a || mins[a].is_disjoint(&mins[b])))
            .collect()
    }

    /// Witness: a pair of non-separable arrows.
    pub fn is_hausdorff(&self) -> Verdict<(usize, usize)> {
        if self.is_discrete_topology() {
            return Verdict::yes();
        }
        let mins: Vec<ArrowSet> = (0..self.len()).map(|a| self.min_open(a)).collect();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if !mins[a].is_disjoint(&mins[b]) {
                    return Verdict::no((a, b));
                }
            }
        }
        Verdict::yes()
    }

    /// Whether `s` is closed under products and inverses and
    /// `r(s) = d(s) = s ∩ units`.
    pub fn is_full_subgroupoid(&self, s: &ArrowSet) -> bool {
        let units: ArrowSet = s.iter().copied().filter(|&a| self.is_unit(a)).collect();
        s.iter().all(|&a| s.contains(&self.inv(a)))
            && self.product_set(s, s).is_subset(s)
            && self.range_of(s) == units
            && self.domain_of(s) == units
    }
}

#[cfg(test)]
mod tests {
    use crate::groupoid::*;

    #[test]
    fn spec_two_arrow_fixture_closure() {
        let g = two_arrow_nonseparated();
        let x = g.id("x").unwrap();
        let gamma = g.id("g").unwrap();
        let s = ArrowSet::from([x]);
        assert_eq!(g.closure(&s), ArrowSet::from([x, gamma]));
        assert!(!g.is_regular_open(&s));
        assert!(g.hausdorff_points().is_empty());
        let full: ArrowSet = (0..g.len()).collect();
        assert!(g.is_regular_open(&full));
    }

    #[test]
    fn discrete_sets_are_regular_open() {
        let g = pair_groupoid(3);
        for a in 0..g.len() {
            let s = ArrowSet::from([a, (a + 2) % g.len()]);
            assert!(g.is_regular_open(&s));
        }
        assert_eq!(g.hausdorff_points().len(), g.len());
    }

    #[test]
    fn etale_nonhausdorff_fixture() {
        let g = etale_nonhausdorff();
        assert!(validate(&g).is_ok(), "{:?}", validate(&g));
        assert!(g.hausdorff_points().is_empty());
        assert!(!g.is_hausdorff().holds);
        let zero = g.id("0").unwrap();
        let s = ArrowSet::from([zero]);
        assert_eq!(g.closure(&s), s);
        assert!(g.interior(&s).is_empty());
        assert!(!g.is_regular_open(&g.unit_set()));
    }
}
