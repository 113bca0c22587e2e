use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::FiniteInverseSemigroup;
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, GroupoidParts};
use crate::verdict::ValidationReport;

/// A filter on `E \ {0}`. Finite filters are principal, `φ = ↑min`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Filter {
    pub min: usize,
    pub members: BTreeSet<usize>,
}

impl Filter {
    pub fn contains(&self, e: usize) -> bool {
        self.members.contains(&e)
    }
}

impl FiniteInverseSemigroup {
    /// `↑e` for a non-zero idempotent `e`.
    pub fn principal_filter(&self, e: usize) -> Filter {
        Filter {
            min: e,
            members: self.idempotents().into_iter().filter(|&f| self.leq(e, f)).collect(),
        }
    }

    /// Every filter; each is the principal filter of its meet.
    pub fn filters(&self) -> Vec<Filter> {
        self.nonzero_idempotents()
            .into_iter()
            .map(|e| self.principal_filter(e))
            .collect()
    }

    /// Filters not properly contained in another filter.
    pub fn ultrafilters(&self) -> Vec<Filter> {
        let all = self.filters();
        all.iter()
            .filter(|f| {
                !all.iter()
                    .any(|g| g.members.len() > f.members.len() && f.members.is_subset(&g.members))
            })
            .cloned()
            .collect()
    }

    /// Whether `f` covers `e`: every non-zero `z ≤ e` meets some member of `f`.
    /// Requires `f ⊆ eE`.
    pub fn is_cover(&self, f: &[usize], e: usize) -> Result<bool> {
        if !self.is_idempotent(e) || f.iter().any(|&x| !self.is_idempotent(x) || !self.leq(x, e)) {
            return Err(Error::Invalid("cover candidates must be idempotents below e".into()));
        }
        Ok(self.covers_outer(f, e))
    }

    /// Cover test without the `f ⊆ eE` requirement (outer cover).
    pub fn covers_outer(&self, f: &[usize], e: usize) -> bool {
        self.down(e)
            .into_iter()
            .filter(|&z| z != self.zero())
            .all(|z| f.iter().any(|&x| self.mul(z, x) != self.zero()))
    }

    /// `φ` is tight iff for every `e ∈ φ`, every cover `F ⊆ eE` of `e` meets
    /// `φ`. Covers are upward closed under inclusion, so it suffices that
    /// `eE \ φ` is not a cover of `e`.
    pub fn is_tight(&self, phi: &Filter) -> bool {
        phi.members.iter().all(|&e| {
            let outside: Vec<usize> = self.down(e).into_iter().filter(|x| !phi.contains(*x)).collect();
            !self.covers_outer(&outside, e)
        })
    }

    pub fn tight_filters(&self) -> Vec<Filter> {
        self.filters().into_iter().filter(|f| self.is_tight(f)).collect()
    }

    /// `Z_e`: indices of tight filters containing `e`.
    pub fn z_set(&self, tight: &[Filter], e: usize) -> BTreeSet<usize> {
        (0..tight.len()).filter(|&i| tight[i].contains(e)).collect()
    }

    /// `h_t(φ) = {e ∈ E : t* e t ∈ φ}` for `φ ∈ Z_{t*t}`.
    pub fn act_on_filter(&self, t: usize, phi: &Filter) -> BTreeSet<usize> {
        let ts = self.star(t);
        self.idempotents()
            .into_iter()
            .filter(|&e| phi.contains(self.mul3(ts, e, t)))
            .collect()
    }

    /// The canonical action on tight filters.
    pub fn canonical_action(&self) -> PartialBijectionFamily {
        let tight = self.tight_filters();
        let index: BTreeMap<BTreeSet<usize>, usize> =
            tight.iter().enumerate().map(|(i, f)| (f.members.clone(), i)).collect();
        let maps = (0..self.len())
            .map(|t| {
                let dom = self.mul(self.star(t), t);
                tight
                    .iter()
                    .enumerate()
                    .filter(|(_, phi)| phi.contains(dom))
                    .filter_map(|(i, phi)| index.get(&self.act_on_filter(t, phi)).map(|&j| (i, j)))
                    .collect()
            })
            .collect();
        PartialBijectionFamily { filters: tight, maps }
    }
}

/// `maps[t]` sends the index of `φ ∈ Z_{t*t}` to the index of `h_t(φ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialBijectionFamily {
    pub filters: Vec<Filter>,
    pub maps: Vec<BTreeMap<usize, usize>>,
}

impl PartialBijectionFamily {
    /// Checks that each `h_t` is a bijection `Z_{t*t} → Z_{tt*}` with inverse
    /// `h_{t*}` and that `h_s ∘ h_t ⊆ h_{st}`.
    pub fn check(&self, s: &FiniteInverseSemigroup) -> ValidationReport {
        let mut rep = ValidationReport::new();
        for t in 0..s.len() {
            let ts = s.star(t);
            let dom = s.z_set(&self.filters, s.mul(ts, t));
            let cod = s.z_set(&self.filters, s.mul(t, ts));
            let m = &self.maps[t];
            let keys: BTreeSet<usize> = m.keys().copied().collect();
            let vals: BTreeSet<usize> = m.values().copied().collect();
            if keys != dom || vals != cod || vals.len() != keys.len() {
                rep.push(
                    "action_bijection",
                    vec![t],
                    format!("h_{} is not a bijection Z_t*t -> Z_tt*", s.label(t)),
                );
            }
            for (&i, &j) in m {
                if self.maps[ts].get(&j) != Some(&i) {
                    rep.push(
                        "action_inverse",
                        vec![t],
                        format!("h_{}* does not invert h_{}", s.label(t), s.label(t)),
                    );
                }
            }
            for u in 0..s.len() {
                let st = s.mul(u, t);
                for (&i, &j) in m {
                    if let Some(&k) = self.maps[u].get(&j) {
                        if self.maps[st].get(&i) != Some(&k) {
                            rep.push("action_composition", vec![u, t], "h_s h_t is not contained in h_st");
                        }
                    }
                }
            }
        }
        rep
    }
}

/// Data behind the germ groupoid, for cross-checks.
#[derive(Debug, Clone)]
pub struct TightGroupoid {
    pub groupoid: FiniteGroupoid,
    pub filters: Vec<Filter>,
    /// Arrow id of each germ `[t, φ]`, keyed by `(t·min φ, filter index)`.
    pub germs: BTreeMap<(usize, usize), usize>,
}

impl FiniteInverseSemigroup {
    /// Groupoid of germs `[t, φ]`, `φ ∈ Z_{t*t}`, `(s,φ) ~ (t,φ)` iff
    /// `se = te` for some `e ∈ φ`. For `φ = ↑m` this reduces to `sm = tm`, so
    /// `t·m` is a canonical representative. Topology basis
    /// `Θ(t, e) = {[t, φ] : e ∈ φ}` for non-zero `e ≤ t*t`.
    pub fn tight_groupoid(&self) -> TightGroupoid {
        let act = self.canonical_action();
        let filters = act.filters.clone();
        let mut germs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut germ_list: Vec<(usize, usize)> = Vec::new();
        for t in 0..self.len() {
            for &i in act.maps[t].keys() {
                let rep_t = self.mul(t, filters[i].min);
                germs.entry((rep_t, i)).or_insert_with(|| {
                    germ_list.push((rep_t, i));
                    germ_list.len() - 1
                });
            }
        }
        let n = germ_list.len();
        let unit_of = |i: usize| germs[&(filters[i].min, i)];
        let target = |t: usize, i: usize| act.maps[t][&i];
        let mut p = GroupoidParts {
            labels: germ_list
                .iter()
                .map(|&(t, i)| format!("[{},{}]", self.label(t), self.label(filters[i].min)))
                .collect(),
            ..Default::default()
        };
        for &(t, i) in &germ_list {
            let j = target(t, i);
            p.range.push(unit_of(j));
            p.domain.push(unit_of(i));
            let ts = self.star(t);
            p.inverse.push(germs[&(self.mul(ts, filters[j].min), j)]);
        }
        p.units = (0..filters.len()).map(unit_of).collect();
        for (b, &(t, i)) in germ_list.iter().enumerate() {
            let j = target(t, i);
            for (a, &(s, k)) in germ_list.iter().enumerate() {
                if k == j {
                    let st = self.mul(s, t);
                    p.compose.push((a, b, germs[&(self.mul(st, filters[i].min), i)]));
                }
            }
        }
        let mut basis: Vec<Vec<usize>> = Vec::new();
        for t in 0..self.len() {
            let tt = self.mul(self.star(t), t);
            for e in self.nonzero_idempotents() {
                if !self.leq(e, tt) {
                    continue;
                }
                let set: Vec<usize> = (0..n)
                    .filter(|&a| {
                        let (gt, i) = germ_list[a];
                        filters[i].contains(e) && gt == self.mul(t, filters[i].min)
                    })
                    .collect();
                if !set.is_empty() {
                    basis.push(set);
                }
            }
        }
        basis.sort();
        basis.dedup();
        p.basis = Some(basis);
        let groupoid = FiniteGroupoid::from_parts(p).expect("germ groupoid");
        let remapped = germs
            .iter()
            .map(|(&k, &v)| {
                (
                    k,
                    groupoid
                        .id(&format!(
                            "[{},{}]",
                            self.label(germ_list[v].0),
                            self.label(filters[germ_list[v].1].min)
                        ))
                        .unwrap(),
                )
            })
            .collect();
        TightGroupoid {
            groupoid,
            filters,
            germs: remapped,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::validate;

    #[test]
    fn two_atom_semilattice_filters() {
        let s = semilattice_two_atoms();
        let tight = s.tight_filters();
        let mins: Vec<&str> = tight.iter().map(|f| s.label(f.min)).collect();
        assert_eq!(mins, vec!["e", "f"]);
        assert!(!s.is_tight(&s.principal_filter(1)));
        assert_eq!(s.ultrafilters(), tight);
        assert!(s.is_cover(&[2, 3], 1).unwrap());
        assert!(!s.is_cover(&[2], 1).unwrap());
        assert!(s.is_cover(&[2], 2).unwrap());
    }

    #[test]
    fn single_idempotent() {
        let s = chain_semilattice(1);
        assert_eq!(s.filters().len(), 1);
        assert_eq!(s.tight_filters().len(), 1);
        assert_eq!(s.ultrafilters().len(), 1);
    }

    #[test]
    fn action_of_symmetric_inverse_monoid() {
        let s = symmetric_inverse_monoid_2();
        let act = s.canonical_action();
        assert!(act.check(&s).is_ok());
        assert_eq!(act.filters.len(), 2);
        let swap = s.labels().iter().position(|l| l == "10").unwrap();
        assert_eq!(act.maps[swap].len(), 2);
        assert!(act.maps[swap].iter().all(|(a, b)| a != b));
        assert!(act.maps[s.zero()].is_empty());
        for e in s.idempotents() {
            assert!(act.maps[e].iter().all(|(a, b)| a == b));
        }
    }

    #[test]
    fn tight_groupoids() {
        let s = symmetric_inverse_monoid_2();
        let g = s.tight_groupoid().groupoid;
        assert!(validate(&g).is_ok(), "{:?}", validate(&g));
        assert_eq!(g.len(), 4);
        assert_eq!(g.units().len(), 2);
        assert!(g.is_principal().holds && g.is_minimal().holds);

        let z2 = group_with_zero(&FiniteGroup::cyclic(2));
        let g = z2.tight_groupoid().groupoid;
        assert!(validate(&g).is_ok());
        assert_eq!(g.len(), 2);
        assert_eq!(g.units().len(), 1);
        assert!(!g.is_topologically_free().holds);

        let e = semilattice_two_atoms();
        let g = e.tight_groupoid().groupoid;
        assert!(validate(&g).is_ok());
        assert_eq!(g.len(), g.units().len());
    }
}
