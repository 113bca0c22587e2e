use serde::Serialize;

use super::FiniteInverseSemigroup;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// Candidate families for local contraction are subsets of `e s*s E`; beyond
/// this many candidates the search refuses to run.
pub const CONTRACTION_SEARCH_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    pub t: usize,
    pub family: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedWitness {
    pub t: usize,
    pub e: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalWitness {
    pub e: usize,
    pub f: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionWitness {
    pub e: usize,
    pub s: usize,
    pub family: Vec<usize>,
    pub f0: usize,
}

/// Either a contraction for every `e`, or an `e` admitting none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ContractionOutcome {
    All(Vec<ContractionWitness>),
    Fails { e: usize },
}

impl FiniteInverseSemigroup {
    /// `F_t = {e ∈ E : e ≤ t}`.
    pub fn trivially_fixed(&self, t: usize) -> Vec<usize> {
        self.idempotents()
            .into_iter()
            .filter(|&e| self.natural_leq(e, t))
            .collect()
    }

    /// `e` is fixed by `t` iff `f t* f ≠ 0` for every non-zero `f ≤ e`.
    pub fn is_fixed(&self, t: usize, e: usize) -> bool {
        let ts = self.star(t);
        self.down(e)
            .into_iter()
            .filter(|&f| f != self.zero())
            .all(|f| self.mul3(f, ts, f) != self.zero())
    }

    /// Right side of the fixed-point lemma, computed on tight filters:
    /// `Z_e ⊆ {φ ∈ Z_{t*t} : h_t(φ) = φ}`.
    pub fn fixes_tight_filters(&self, t: usize, e: usize) -> bool {
        let tt = self.mul(self.star(t), t);
        self.tight_filters()
            .iter()
            .filter(|phi| phi.contains(e))
            .all(|phi| phi.contains(tt) && self.act_on_filter(t, phi) == phi.members)
    }

    /// For every `t`, `F_t` itself is a finite family covering each member.
    pub fn is_closed(&self) -> Verdict<Vec<CoverWitness>> {
        let w: Vec<CoverWitness> = (0..self.len())
            .map(|t| CoverWitness {
                t,
                family: self.trivially_fixed(t),
            })
            .collect();
        for c in &w {
            for &e in &c.family {
                if !self.covers_outer(&c.family, e) {
                    return Verdict::no(vec![c.clone()]);
                }
            }
        }
        Verdict::yes_with(w)
    }

    /// Every non-zero `e` fixed by `t` meets some `f ∈ F_t`. The zero
    /// idempotent is excluded since `Z_0` is empty.
    pub fn is_topologically_free_s(&self) -> Verdict<FixedWitness> {
        for t in 0..self.len() {
            let ft = self.trivially_fixed(t);
            for e in self.nonzero_idempotents() {
                if self.is_fixed(t, e) && !ft.iter().any(|&f| self.mul(f, e) != self.zero()) {
                    return Verdict::no(FixedWitness { t, e });
                }
            }
        }
        Verdict::yes()
    }

    /// For all non-zero `e, f`, `{t f t*}_{t ∈ S}` covers `e`. Taking `T = S`
    /// is the largest finite choice, so failure there is failure outright.
    pub fn is_minimal_s(&self) -> Verdict<MinimalWitness> {
        for e in self.nonzero_idempotents() {
            for f in self.nonzero_idempotents() {
                let fam: Vec<usize> = (0..self.len()).map(|t| self.mul3(t, f, self.star(t))).collect();
                if !self.covers_outer(&fam, e) {
                    return Verdict::no(MinimalWitness { e, f });
                }
            }
        }
        Verdict::yes()
    }

    /// For every non-zero `e` there are `s` and a finite `F ⊆ E \ {0}` with
    /// `f0 ∈ F` such that each `f ∈ F` satisfies `f ≤ e s*s`, `F` outer-covers
    /// `s f s*`, and `f0 s f = 0`.
    pub fn is_locally_contracting_s(&self) -> Result<Verdict<ContractionOutcome>> {
        let mut found = Vec::new();
        for e in self.nonzero_idempotents() {
            match self.contraction_for(e)? {
                Some(w) => found.push(w),
                None => return Ok(Verdict::no(ContractionOutcome::Fails { e })),
            }
        }
        Ok(Verdict::yes_with(ContractionOutcome::All(found)))
    }

    fn contraction_for(&self, e: usize) -> Result<Option<ContractionWitness>> {
        for s in 0..self.len() {
            let ess = self.mul3(e, self.star(s), s);
            let cands: Vec<usize> = self.down(ess).into_iter().filter(|&f| f != self.zero()).collect();
            if cands.len() > CONTRACTION_SEARCH_CAP {
                return Err(Error::CapExceeded {
                    what: "local contraction candidates",
                    cap: CONTRACTION_SEARCH_CAP,
                });
            }
            for mask in 1u32..(1u32 << cands.len()) {
                let fam: Vec<usize> = (0..cands.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| cands[i])
                    .collect();
                let covers = fam
                    .iter()
                    .all(|&f| self.covers_outer(&fam, self.mul3(s, f, self.star(s))));
                if !covers {
                    continue;
                }
                for &f0 in &fam {
                    if fam.iter().all(|&f| self.mul3(f0, s, f) == self.zero()) {
                        return Ok(Some(ContractionWitness { e, s, family: fam, f0 }));
                    }
                }
            }
        }
        Ok(None)
    }
}
