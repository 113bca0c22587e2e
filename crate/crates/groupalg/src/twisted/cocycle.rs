use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::scalar::{Field, Scalar};
use crate::verdict::ValidationReport;

/// A map on composable pairs into unimodular scalars. Pairs without an entry
/// take the value 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoCocycle<S> {
    field: Field,
    values: HashMap<(usize, usize), S>,
}

impl<S: Scalar> TwoCocycle<S> {
    pub fn trivial(field: Field) -> Self {
        TwoCocycle {
            field,
            values: HashMap::new(),
        }
    }

    /// Rejects values that are not unimodular, or not ±1 over the reals.
    pub fn from_values(field: Field, entries: impl IntoIterator<Item = ((usize, usize), S)>) -> Result<Self> {
        let mut values = HashMap::new();
        for ((a, b), v) in entries {
            if !v.is_unimodular() {
                return Err(Error::NotUnimodular(format!("({}, {})", a, b)));
            }
            if field == Field::Real && !v.is_sign() {
                return Err(Error::NotReal(format!("({}, {})", a, b)));
            }
            if !v.is_one() {
                values.insert((a, b), v);
            }
        }
        Ok(TwoCocycle { field, values })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn sigma(&self, a: usize, b: usize) -> S {
        self.values.get(&(a, b)).cloned().unwrap_or_else(S::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.is_empty()
    }

    /// Non-trivial entries, sorted.
    pub fn entries(&self) -> Vec<((usize, usize), S)> {
        let mut v: Vec<_> = self.values.iter().map(|(k, x)| (*k, x.clone())).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    /// Coboundary `σ(a,b) = c(a) c(b) / c(ab)` of a unimodular function `c`
    /// with `c = 1` on units.
    pub fn coboundary(g: &FiniteGroupoid, field: Field, c: &[S]) -> Result<Self> {
        let mut entries = Vec::new();
        for a in 0..g.len() {
            for b in 0..g.len() {
                if let Some(ab) = g.mul(a, b) {
                    let inv = c[ab].inv().ok_or_else(|| Error::NotUnimodular(g.label(ab).into()))?;
                    entries.push(((a, b), c[a].mul(&c[b]).mul(&inv)));
                }
            }
        }
        TwoCocycle::from_values(field, entries)
    }

    /// Pointwise product of two cocycles.
    pub fn product(&self, o: &TwoCocycle<S>) -> Result<Self> {
        let mut keys: Vec<(usize, usize)> = self.values.keys().chain(o.values.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        let entries: Vec<_> = keys
            .into_iter()
            .map(|(a, b)| ((a, b), self.sigma(a, b).mul(&o.sigma(a, b))))
            .collect();
        TwoCocycle::from_values(self.field, entries)
    }
}

/// Normalization and the cocycle identity on all composable pairs and triples;
/// entries on non-composable pairs are reported too.
pub fn validate_cocycle<S: Scalar>(g: &FiniteGroupoid, s: &TwoCocycle<S>) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let n = g.len();
    for ((a, b), _) in s.entries() {
        if a >= n || b >= n || g.mul(a, b).is_none() {
            rep.push(
                "noncomposable_entry",
                vec![a, b],
                "value given on a non-composable pair",
            );
        }
    }
    for a in 0..n {
        if !s.sigma(g.r(a), a).is_one() || !s.sigma(a, g.d(a)).is_one() {
            rep.push(
                "normalization",
                vec![a],
                format!("σ is not 1 next to a unit at {}", g.label(a)),
            );
        }
    }
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = g.mul(a, b) else { continue };
            for c in 0..n {
                let Some(bc) = g.mul(b, c) else { continue };
                let lhs = s.sigma(a, b).mul(&s.sigma(ab, c));
                let rhs = s.sigma(b, c).mul(&s.sigma(a, bc));
                if !lhs.approx_eq(&rhs) {
                    rep.push(
                        "cocycle_identity",
                        vec![a, b, c],
                        format!("identity fails at ({}, {}, {})", g.label(a), g.label(b), g.label(c)),
                    );
                }
            }
        }
    }
    rep
}
