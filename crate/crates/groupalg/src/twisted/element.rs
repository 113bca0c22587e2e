use serde::Serialize;

use super::TwoCocycle;
use crate::error::{Error, Result};
use crate::groupoid::{ArrowSet, FiniteGroupoid};
use crate::scalar::{NormValue, Scalar};

/// A function on the arrows of a groupoid.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvElement<S> {
    groupoid: u64,
    pub coeffs: Vec<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Sup,
    StarD,
    StarR,
    I,
}

impl<S: Scalar> ConvElement<S> {
    pub fn new(g: &FiniteGroupoid, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != g.len() {
            return Err(Error::Invalid(format!(
                "{} coefficients for {} arrows",
                coeffs.len(),
                g.len()
            )));
        }
        Ok(ConvElement {
            groupoid: g.fingerprint(),
            coeffs,
        })
    }

    pub fn from_fn(g: &FiniteGroupoid, f: impl Fn(usize) -> S) -> Self {
        ConvElement {
            groupoid: g.fingerprint(),
            coeffs: (0..g.len()).map(f).collect(),
        }
    }

    pub fn zero(g: &FiniteGroupoid) -> Self {
        Self::from_fn(g, |_| S::zero())
    }

    pub fn delta(g: &FiniteGroupoid, a: usize) -> Self {
        Self::from_fn(g, |b| if a == b { S::one() } else { S::zero() })
    }

    pub fn indicator(g: &FiniteGroupoid, s: &ArrowSet) -> Self {
        Self::from_fn(g, |b| if s.contains(&b) { S::one() } else { S::zero() })
    }

    /// The unit-space indicator, which is the identity of the algebra.
    pub fn unit(g: &FiniteGroupoid) -> Self {
        Self::from_fn(g, |b| if g.is_unit(b) { S::one() } else { S::zero() })
    }

    pub fn belongs_to(&self, g: &FiniteGroupoid) -> bool {
        self.groupoid == g.fingerprint() && self.coeffs.len() == g.len()
    }

    pub fn get(&self, a: usize) -> &S {
        &self.coeffs[a]
    }

    pub fn add(&self, o: &Self) -> Self {
        ConvElement {
            groupoid: self.groupoid,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ConvElement {
            groupoid: self.groupoid,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        ConvElement {
            groupoid: self.groupoid,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn support(&self) -> ArrowSet {
        (0..self.coeffs.len()).filter(|&a| !self.coeffs[a].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        self.coeffs.len() == o.coeffs.len() && self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a.approx_eq(b))
    }
}

fn check<S: Scalar>(g: &FiniteGroupoid, f: &ConvElement<S>) -> Result<()> {
    if f.belongs_to(g) {
        Ok(())
    } else {
        Err(Error::GroupoidMismatch)
    }
}

/// `(f∗h)(γ) = Σ_{r(η)=r(γ)} σ(η, η⁻¹γ) f(η) h(η⁻¹γ)`, evaluated as a sum over
/// composable pairs in the supports.
pub fn convolve<S: Scalar>(
    g: &FiniteGroupoid,
    f: &ConvElement<S>,
    h: &ConvElement<S>,
    s: &TwoCocycle<S>,
) -> Result<ConvElement<S>> {
    check(g, f)?;
    check(g, h)?;
    let mut out = vec![S::zero(); g.len()];
    let hs: Vec<usize> = h.support().into_iter().collect();
    for a in f.support() {
        for &b in &hs {
            if let Some(c) = g.mul(a, b) {
                let term = s.sigma(a, b).mul(&f.coeffs[a]).mul(&h.coeffs[b]);
                out[c] = out[c].add(&term);
            }
        }
    }
    ConvElement::new(g, out)
}

/// `f*(γ) = conj(σ(γ, γ⁻¹)) conj(f(γ⁻¹))`.
pub fn involute<S: Scalar>(g: &FiniteGroupoid, f: &ConvElement<S>, s: &TwoCocycle<S>) -> Result<ConvElement<S>> {
    check(g, f)?;
    Ok(ConvElement::from_fn(g, |a| {
        let i = g.inv(a);
        s.sigma(a, i).conj().mul(&f.coeffs[i].conj())
    }))
}

/// `‖f‖_∞`, `‖f‖_{*d}`, `‖f‖_{*r}` or `‖f‖_I`.
pub fn norm<S: Scalar>(g: &FiniteGroupoid, f: &ConvElement<S>, kind: NormKind) -> NormValue {
    let fiber_max = |key: &dyn Fn(usize) -> usize| {
        g.units().into_iter().fold(NormValue::zero(), |acc, x| {
            let sum = NormValue::abs_sum((0..g.len()).filter(|&a| key(a) == x).map(|a| &f.coeffs[a]));
            acc.max(sum)
        })
    };
    match kind {
        NormKind::Sup => f.coeffs.iter().fold(NormValue::zero(), |acc, c| {
            acc.max(NormValue::abs_sum(std::iter::once(c)))
        }),
        NormKind::StarD => fiber_max(&|a| g.d(a)),
        NormKind::StarR => fiber_max(&|a| g.r(a)),
        NormKind::I => norm(g, f, NormKind::StarD).max(norm(g, f, NormKind::StarR)),
    }
}

/// `E_U(f) = f|_U`.
pub fn expectation_restrict<S: Scalar>(f: &ConvElement<S>, u: &ArrowSet) -> ConvElement<S> {
    ConvElement {
        groupoid: f.groupoid,
        coeffs: f
            .coeffs
            .iter()
            .enumerate()
            .map(|(a, c)| if u.contains(&a) { c.clone() } else { S::zero() })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::{group_groupoid, pair_groupoid};
    use crate::scalar::{Field, Gauss};

    #[test]
    fn unit_is_identity() {
        let g = pair_groupoid(3);
        let s = TwoCocycle::trivial(Field::Complex);
        let f = ConvElement::from_fn(&g, |a| Gauss::int(a as i64, 1));
        let one = ConvElement::unit(&g);
        assert_eq!(convolve(&g, &f, &one, &s).unwrap(), f);
        assert_eq!(convolve(&g, &one, &f, &s).unwrap(), f);
    }

    #[test]
    fn mismatched_groupoids() {
        let g = pair_groupoid(2);
        let h = group_groupoid(&FiniteGroup::cyclic(4));
        let f = ConvElement::<Gauss>::unit(&g);
        let k = ConvElement::<Gauss>::unit(&h);
        assert!(matches!(
            convolve(&g, &f, &k, &TwoCocycle::trivial(Field::Real)),
            Err(Error::GroupoidMismatch)
        ));
    }

    #[test]
    fn delta_norms() {
        let g = pair_groupoid(3);
        let f = ConvElement::<Gauss>::delta(&g, 1);
        for k in [NormKind::Sup, NormKind::StarD, NormKind::StarR, NormKind::I] {
            assert_eq!(norm(&g, &f, k).value, 1.0);
        }
    }

    #[test]
    fn fiber_indicator_norms() {
        let g = pair_groupoid(4);
        let x = g.id("(0,0)").unwrap();
        let fiber: ArrowSet = g.arrows_from(x).collect();
        let f = ConvElement::<Gauss>::indicator(&g, &fiber);
        assert_eq!(norm(&g, &f, NormKind::StarD).value, 4.0);
        assert_eq!(norm(&g, &f, NormKind::StarR).value, 1.0);
        assert_eq!(norm(&g, &f, NormKind::I).value, 4.0);
    }

    #[test]
    fn unit_delta_is_selfadjoint() {
        let g = pair_groupoid(2);
        let s = TwoCocycle::trivial(Field::Complex);
        let x = g.id("(1,1)").unwrap();
        let d = ConvElement::<Gauss>::delta(&g, x);
        assert_eq!(involute(&g, &d, &s).unwrap(), d);
    }

    #[test]
    fn expectation_of_nonunit_delta() {
        let g = pair_groupoid(2);
        let a = g.id("(0,1)").unwrap();
        let d = ConvElement::<Gauss>::delta(&g, a);
        assert!(expectation_restrict(&d, &g.unit_set()).is_zero());
    }
}
