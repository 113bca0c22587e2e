//! Finite groupoids with an optional finite topology.

mod construct;
mod filling;
mod properties;
mod topology;
mod validate;

use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};

pub use construct::*;
pub use filling::*;
pub use validate::validate;

/// A set of arrow ids.
pub type ArrowSet = BTreeSet<usize>;

const NONE: usize = usize::MAX;

/// Finite basis of a topology on the arrows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopologyBasis {
    pub sets: Vec<ArrowSet>,
}

/// A finite groupoid. Arrow ids are dense and follow the sorted order of the
/// labels, so matrices indexed by arrows are reproducible.
///
/// Construction only checks that indices are in range. Use [`validate`] to
/// check the groupoid axioms; property checkers assume a valid groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    unit: Vec<bool>,
    range: Vec<usize>,
    domain: Vec<usize>,
    inverse: Vec<usize>,
    compose: Vec<usize>,
    topology: Option<TopologyBasis>,
    fingerprint: u64,
}

/// Raw groupoid data, indexed by positions in `labels`.
#[derive(Debug, Clone, Default)]
pub struct GroupoidParts {
    pub labels: Vec<String>,
    pub units: Vec<usize>,
    pub range: Vec<usize>,
    pub domain: Vec<usize>,
    pub inverse: Vec<usize>,
    pub compose: Vec<(usize, usize, usize)>,
    pub basis: Option<Vec<Vec<usize>>>,
}

impl FiniteGroupoid {
    /// Builds a groupoid, renumbering arrows by sorted label.
    pub fn from_parts(p: GroupoidParts) -> Result<Self> {
        let n = p.labels.len();
        let check = |what: &'static str, i: usize| {
            if i >= n {
                Err(Error::IndexOutOfRange { what, index: i, len: n })
            } else {
                Ok(())
            }
        };
        for (what, v) in [("range", &p.range), ("domain", &p.domain), ("inverse", &p.inverse)] {
            if v.len() != n {
                return Err(Error::Invalid(format!(
                    "{} has {} entries, expected {}",
                    what,
                    v.len(),
                    n
                )));
            }
            for &i in v.iter() {
                check(what, i)?;
            }
        }
        for &u in &p.units {
            check("units", u)?;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| p.labels[a].cmp(&p.labels[b]));
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let labels: Vec<String> = order.iter().map(|&o| p.labels[o].clone()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let remap = |v: &Vec<usize>| -> Vec<usize> { order.iter().map(|&o| pos[v[o]]).collect() };
        let mut unit = vec![false; n];
        for &u in &p.units {
            unit[pos[u]] = true;
        }
        let mut compose = vec![NONE; n * n];
        for &(a, b, c) in &p.compose {
            check("compose", a)?;
            check("compose", b)?;
            check("compose", c)?;
            let slot = &mut compose[pos[a] * n + pos[b]];
            if *slot != NONE && *slot != pos[c] {
                return Err(Error::Invalid(format!(
                    "conflicting products for ({}, {})",
                    p.labels[a], p.labels[b]
                )));
            }
            *slot = pos[c];
        }
        let topology = match p.basis {
            None => None,
            Some(sets) => {
                let mut out = Vec::with_capacity(sets.len());
                for s in sets {
                    let mut b = ArrowSet::new();
                    for i in s {
                        check("basis", i)?;
                        b.insert(pos[i]);
                    }
                    out.push(b);
                }
                Some(TopologyBasis { sets: out })
            }
        };
        let range = remap(&p.range);
        let domain = remap(&p.domain);
        let inverse = remap(&p.inverse);
        let mut h = std::collections::hash_map::DefaultHasher::new();
        (&labels, &unit, &range, &domain, &inverse, &compose).hash(&mut h);
        Ok(FiniteGroupoid {
            labels,
            index,
            unit,
            range,
            domain,
            inverse,
            compose,
            topology,
            fingerprint: h.finish(),
        })
    }

    /// Raw data of this groupoid (ids unchanged).
    pub fn to_parts(&self) -> GroupoidParts {
        let n = self.len();
        let mut compose = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.mul(a, b) {
                    compose.push((a, b, c));
                }
            }
        }
        GroupoidParts {
            labels: self.labels.clone(),
            units: self.units(),
            range: self.range.clone(),
            domain: self.domain.clone(),
            inverse: self.inverse.clone(),
            compose,
            basis: self
                .topology
                .as_ref()
                .map(|t| t.sets.iter().map(|s| s.iter().copied().collect()).collect()),
        }
    }

    /// Hash of the algebraic structure (not the topology); used to detect
    /// elements of different groupoids.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
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

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn id_or_err(&self, label: &str) -> Result<usize> {
        self.id(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.unit[a]
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.unit[a]).collect()
    }

    pub fn unit_set(&self) -> ArrowSet {
        self.units().into_iter().collect()
    }

    pub fn r(&self, a: usize) -> usize {
        self.range[a]
    }

    pub fn d(&self, a: usize) -> usize {
        self.domain[a]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// The tabulated product `ab`, if any.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        let c = self.compose[a * self.len() + b];
        (c != NONE).then_some(c)
    }

    pub fn topology(&self) -> Option<&TopologyBasis> {
        self.topology.as_ref()
    }

    pub fn is_discrete_topology(&self) -> bool {
        self.topology.is_none()
    }

    /// Basis sets; singletons when the topology is discrete.
    pub fn basis_sets(&self) -> Cow<'_, [ArrowSet]> {
        match &self.topology {
            Some(t) => Cow::Borrowed(&t.sets),
            None => Cow::Owned((0..self.len()).map(|a| ArrowSet::from([a])).collect()),
        }
    }

    pub fn with_topology(mut self, basis: Option<TopologyBasis>) -> Self {
        self.topology = basis;
        self
    }

    /// Arrows with the given domain.
    pub fn arrows_from(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&a| self.domain[a] == x)
    }

    /// Arrows with the given range.
    pub fn arrows_to(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&a| self.range[a] == x)
    }

    /// Whether `a` is a non-unit arrow with `r(a) = d(a)`.
    pub fn is_isotropy(&self, a: usize) -> bool {
        !self.unit[a] && self.range[a] == self.domain[a]
    }

    /// Orbits of the units, each sorted, listed by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let units = self.units();
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for &x in &units {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.arrows_from(x).map(|a| self.r(a)).collect();
            orbit.push(x);
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn labels_of(&self, s: &ArrowSet) -> Vec<String> {
        s.iter().map(|&a| self.labels[a].clone()).collect()
    }

    /// `r(S)` as a set of units.
    pub fn range_of(&self, s: &ArrowSet) -> ArrowSet {
        s.iter().map(|&a| self.range[a]).collect()
    }

    /// `d(S)` as a set of units.
    pub fn domain_of(&self, s: &ArrowSet) -> ArrowSet {
        s.iter().map(|&a| self.domain[a]).collect()
    }

    /// Whether `r` and `d` are injective on `s`.
    pub fn is_bisection(&self, s: &ArrowSet) -> bool {
        self.range_of(s).len() == s.len() && self.domain_of(s).len() == s.len()
    }

    /// Product set `S T = { st : d(s) = r(t) }`.
    pub fn product_set(&self, s: &ArrowSet, t: &ArrowSet) -> ArrowSet {
        let mut out = ArrowSet::new();
        for &a in s {
            for &b in t {
                if let Some(c) = self.mul(a, b) {
                    out.insert(c);
                }
            }
        }
        out
    }

    pub fn inverse_set(&self, s: &ArrowSet) -> ArrowSet {
        s.iter().map(|&a| self.inverse[a]).collect()
    }
}

/// A bisection together with its openness flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bisection {
    pub arrows: ArrowSet,
    pub open: bool,
}

impl Bisection {
    pub fn new(g: &FiniteGroupoid, arrows: ArrowSet) -> Result<Self> {
        if !g.is_bisection(&arrows) {
            return Err(Error::NotBisection);
        }
        let open = g.is_open(&arrows);
        Ok(Bisection { arrows, open })
    }
}
