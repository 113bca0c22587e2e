//! Oracle against dynamics on one finite groupoid.

use serde::Serialize;

use crate::algebra::{diagonal, FiniteDimAlgebra};
use crate::error::Result;
use crate::groupoid::FiniteGroupoid;
use crate::linalg;
use crate::scalar::Scalar;
use crate::twisted::{trivial_rep, ConvElement, TwoCocycle};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub simple: bool,
    pub diagonal_maximal_abelian: bool,
    pub topologically_free: bool,
    pub minimal: bool,
    /// `simple ∧ diagonal_maximal_abelian ⟺ topologically_free ∧ minimal`.
    pub agree: bool,
    pub caveat: Option<String>,
}

/// Burnside simplicity and maximal-abelianness of the diagonal against
/// topological freeness and minimality.
pub fn theorem_crosscheck<S: Scalar>(g: &FiniteGroupoid, s: &TwoCocycle<S>) -> Result<TheoremCheck> {
    let alg = FiniteDimAlgebra::from_groupoid(g, s);
    let (simple, caveat) = alg.is_simple_complexified()?;
    let diagonal_maximal_abelian = alg.is_maximal_abelian(&diagonal(g))?;
    let topologically_free = g.is_topologically_free().holds;
    let minimal = g.is_minimal().holds;
    Ok(TheoremCheck {
        simple: simple.holds,
        diagonal_maximal_abelian,
        topologically_free,
        minimal,
        agree: (simple.holds && diagonal_maximal_abelian) == (topologically_free && minimal),
        caveat,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialRepCheck {
    pub topologically_free: bool,
    /// Rank of `f ↦ Λ^tr(f)` on the untwisted algebra.
    pub rank: usize,
    pub dim: usize,
    pub injective: bool,
    pub agree: bool,
}

/// Topological freeness against injectivity of the trivial representation.
pub fn trivial_rep_crosscheck<S: Scalar>(g: &FiniteGroupoid) -> Result<TrivialRepCheck> {
    let s = TwoCocycle::<S>::trivial(crate::scalar::Field::Complex);
    let mut cols = Vec::with_capacity(g.len());
    for a in 0..g.len() {
        let m = trivial_rep(g, &ConvElement::delta(g, a), &s, 2.0)?;
        cols.push(m.rows.into_iter().flatten().collect::<Vec<S>>());
    }
    let k = g.units().len();
    let rank = linalg::rank(&cols, k * k);
    let topologically_free = g.is_topologically_free().holds;
    let injective = rank == g.len();
    Ok(TrivialRepCheck {
        topologically_free,
        rank,
        dim: g.len(),
        injective,
        agree: topologically_free == injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::{group_groupoid, pair_groupoid};
    use crate::scalar::{Field, Gauss};

    #[test]
    fn fixtures() {
        let z2 = group_groupoid(&FiniteGroup::cyclic(2));
        let c = theorem_crosscheck(&z2, &TwoCocycle::<Gauss>::trivial(Field::Complex)).unwrap();
        assert!(!c.simple && !c.topologically_free && c.agree);
        let m2 = pair_groupoid(2);
        let c = theorem_crosscheck(&m2, &TwoCocycle::<Gauss>::trivial(Field::Complex)).unwrap();
        assert!(c.simple && c.diagonal_maximal_abelian && c.topologically_free && c.minimal);
        let t = trivial_rep_crosscheck::<Gauss>(&z2).unwrap();
        assert_eq!((t.rank, t.injective, t.agree), (1, false, true));
        assert!(trivial_rep_crosscheck::<Gauss>(&m2).unwrap().injective);
    }
}
