use super::{ArrowSet, FiniteGroupoid};
use crate::verdict::Verdict;

impl FiniteGroupoid {
    fn basic_isotropy_sets(&self) -> impl Iterator<Item = ArrowSet> + '_ {
        self.basis_sets()
            .into_owned()
            .into_iter()
            .filter(move |b| !b.is_empty() && b.iter().all(|&a| self.r(a) == self.d(a)))
    }

    /// No non-empty open set of non-units with `r = d` on it. Witness: a basic set.
    pub fn is_topologically_free(&self) -> Verdict<ArrowSet> {
        match self.basic_isotropy_sets().find(|b| b.iter().all(|&a| !self.is_unit(a))) {
            Some(b) => Verdict::no(b),
            None => Verdict::yes(),
        }
    }

    /// Every basic open set with `r = d` on it is contained in the units.
    pub fn is_effective(&self) -> Verdict<ArrowSet> {
        match self.basic_isotropy_sets().find(|b| b.iter().any(|&a| !self.is_unit(a))) {
            Some(b) => Verdict::no(b),
            None => Verdict::yes(),
        }
    }

    /// No unit has non-trivial isotropy. Witness: an isotropy arrow.
    pub fn is_principal(&self) -> Verdict<usize> {
        match (0..self.len()).find(|&a| self.is_isotropy(a)) {
            Some(a) => Verdict::no(a),
            None => Verdict::yes(),
        }
    }

    /// Units with non-trivial isotropy.
    pub fn isotropy_units(&self) -> ArrowSet {
        (0..self.len())
            .filter(|&a| self.is_isotropy(a))
            .map(|a| self.r(a))
            .collect()
    }

    /// The units with non-trivial isotropy have empty interior.
    /// Witness: a non-empty basic set of such units.
    pub fn is_topologically_principal(&self) -> Verdict<ArrowSet> {
        let iso = self.isotropy_units();
        let found = self
            .basis_sets()
            .iter()
            .find(|b| !b.is_empty() && b.is_subset(&iso))
            .cloned();
        match found {
            Some(b) => Verdict::no(b),
            None => Verdict::yes(),
        }
    }

    /// Saturation `r(d⁻¹(U))` of a set of units.
    pub fn saturate(&self, u: &ArrowSet) -> ArrowSet {
        (0..self.len())
            .filter(|&a| u.contains(&self.d(a)))
            .map(|a| self.r(a))
            .collect()
    }

    /// Smallest invariant open set of units containing `u`.
    pub fn invariant_open_hull(&self, u: &ArrowSet) -> ArrowSet {
        let mut cur = u.clone();
        loop {
            let next = self.saturate(&self.open_hull(&cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// No invariant open set of units other than ∅ and X.
    /// Witness: a proper non-empty invariant open set.
    pub fn is_minimal(&self) -> Verdict<ArrowSet> {
        let units = self.unit_set();
        if self.is_discrete_topology() {
            let orbits = self.orbits();
            return if orbits.len() <= 1 {
                Verdict::yes()
            } else {
                Verdict::no(orbits[0].iter().copied().collect())
            };
        }
        for b in self.basis_sets().iter() {
            if b.is_empty() || !b.is_subset(&units) {
                continue;
            }
            let hull = self.invariant_open_hull(b);
            if hull != units {
                return Verdict::no(hull);
            }
        }
        Verdict::yes()
    }

    /// Smallest subgroupoid containing the units and `seed`, with the subspace
    /// topology.
    pub fn generated_subgroupoid(&self, seed: &ArrowSet) -> FiniteGroupoid {
        let mut s: ArrowSet = self.unit_set();
        s.extend(seed.iter().copied());
        loop {
            let mut next = s.clone();
            next.extend(s.iter().map(|&a| self.inv(a)));
            next.extend(self.product_set(&s, &s));
            if next == s {
                break;
            }
            s = next;
        }
        self.restrict(&s)
    }

    /// The arrows in `s` as a groupoid with the subspace topology. `s` should be
    /// closed under products and inverses and contain the relevant units.
    pub fn restrict(&self, s: &ArrowSet) -> FiniteGroupoid {
        let ids: Vec<usize> = s.iter().copied().collect();
        let pos = |a: usize| ids.binary_search(&a).expect("subgroupoid closed");
        let mut compose = Vec::new();
        for (i, &a) in ids.iter().enumerate() {
            for (j, &b) in ids.iter().enumerate() {
                if let Some(c) = self.mul(a, b) {
                    if s.contains(&c) {
                        compose.push((i, j, pos(c)));
                    }
                }
            }
        }
        let basis = self.topology().map(|t| {
            let mut sets: Vec<Vec<usize>> = t
                .sets
                .iter()
                .map(|b| b.iter().filter(|a| s.contains(a)).map(|&a| pos(a)).collect::<Vec<_>>())
                .filter(|b: &Vec<usize>| !b.is_empty())
                .collect();
            sets.sort();
            sets.dedup();
            sets
        });
        let parts = super::GroupoidParts {
            labels: ids.iter().map(|&a| self.label(a).to_string()).collect(),
            units: ids
                .iter()
                .enumerate()
                .filter(|(_, &a)| self.is_unit(a))
                .map(|(i, _)| i)
                .collect(),
            range: ids.iter().map(|&a| pos(self.r(a))).collect(),
            domain: ids.iter().map(|&a| pos(self.d(a))).collect(),
            inverse: ids.iter().map(|&a| pos(self.inv(a))).collect(),
            compose,
            basis,
        };
        FiniteGroupoid::from_parts(parts).expect("restriction of a valid groupoid")
    }
}

#[cfg(test)]
mod tests {
    use crate::group::FiniteGroup;
    use crate::groupoid::*;

    #[test]
    fn z2_group_groupoid() {
        let g = group_groupoid(&FiniteGroup::cyclic(2));
        let v = g.is_topologically_free();
        assert!(!v.holds);
        assert_eq!(g.labels_of(v.witness.as_ref().unwrap()), vec!["1".to_string()]);
        assert!(!g.is_effective().holds);
        assert!(!g.is_principal().holds);
        assert!(!g.is_topologically_principal().holds);
    }

    #[test]
    fn pair_groupoid_properties() {
        let g = pair_groupoid(3);
        assert!(g.is_topologically_free().holds);
        assert!(g.is_effective().holds);
        assert!(g.is_principal().holds);
        assert!(g.is_topologically_principal().holds);
        assert!(g.is_minimal().holds);
    }

    #[test]
    fn union_of_pair_and_z2() {
        let g = disjoint_union(&[pair_groupoid(2), group_groupoid(&FiniteGroup::cyclic(2))]);
        assert!(validate(&g).is_ok());
        assert!(!g.is_principal().holds);
        assert!(!g.is_topologically_principal().holds);
        assert!(!g.is_effective().holds);
        assert!(!g.is_topologically_free().holds);
        assert!(!g.is_minimal().holds);
    }

    #[test]
    fn minimality_witnesses() {
        let g = disjoint_union(&[pair_groupoid(2), pair_groupoid(2)]);
        let v = g.is_minimal();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(g.saturate(&w), w);

        let h = disjoint_union(&[pair_groupoid(2), unit_groupoid(&["z"])]);
        assert_eq!(h.units().len(), 3);
        assert!(!h.is_minimal().holds);
        assert_eq!(h.orbits().len(), 2);
    }

    #[test]
    fn nonhausdorff_fixture_properties() {
        let g = etale_nonhausdorff();
        assert!(g.is_topologically_free().holds);
        assert!(g.is_topologically_principal().holds);
        assert!(!g.is_effective().holds);
        assert!(!g.is_principal().holds);
        assert!(!g.is_minimal().holds);
    }

    #[test]
    fn generated_subgroupoids() {
        let g = group_groupoid(&FiniteGroup::cyclic(2));
        assert_eq!(g.generated_subgroupoid(&ArrowSet::new()).len(), 1);
        let gamma = g.id("1").unwrap();
        assert_eq!(g.generated_subgroupoid(&ArrowSet::from([gamma])).len(), 2);

        let p = disjoint_union(&[pair_groupoid(2), unit_groupoid(&["z"])]);
        let a = p.id("c0:(0,1)").unwrap();
        let sub = p.generated_subgroupoid(&ArrowSet::from([a]));
        assert_eq!(sub.len(), 5);
        assert!(validate(&sub).is_ok());
    }
}
