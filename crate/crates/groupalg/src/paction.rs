//! Partial actions of finite groups on finite sets and their transformation
//! groupoids.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, GroupoidParts};
use crate::scalar::{Field, Scalar};
use crate::twisted::TwoCocycle;
use crate::verdict::{ValidationReport, Verdict};

/// Tuples examined by the n-filling cover search before giving up.
pub const FILLING_TUPLE_CAP: usize = 100_000;

/// `theta[t]` is `θ_t : X_{t⁻¹} → X_t` as a map on point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    pub group: FiniteGroup,
    pub space: Vec<String>,
    pub theta: Vec<BTreeMap<usize, usize>>,
}

impl PartialAction {
    pub fn new(group: FiniteGroup, space: Vec<String>, theta: Vec<BTreeMap<usize, usize>>) -> Result<Self> {
        if theta.len() != group.order() {
            return Err(Error::Invalid(format!(
                "{} maps given for a group of order {}",
                theta.len(),
                group.order()
            )));
        }
        let n = space.len();
        for m in &theta {
            for (&x, &y) in m {
                if x >= n || y >= n {
                    return Err(Error::IndexOutOfRange {
                        what: "point",
                        index: x.max(y),
                        len: n,
                    });
                }
            }
        }
        Ok(PartialAction { group, space, theta })
    }

    /// A global action given by `f(t, x)`.
    pub fn global(group: FiniteGroup, space: Vec<String>, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = space.len();
        let theta = (0..group.order())
            .map(|t| (0..n).map(|x| (x, f(t, x))).collect())
            .collect();
        Self::new(group, space, theta)
    }

    /// Restriction to `Y`: `θ_t` on `Y ∩ θ_t⁻¹(Y)`, with `Y` as the new space.
    pub fn restrict_to(&self, y: &BTreeSet<usize>) -> Self {
        let pos: BTreeMap<usize, usize> = y.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let theta = self
            .theta
            .iter()
            .map(|m| {
                m.iter()
                    .filter_map(|(a, b)| Some((*pos.get(a)?, *pos.get(b)?)))
                    .collect()
            })
            .collect();
        PartialAction {
            group: self.group.clone(),
            space: y.iter().map(|&x| self.space[x].clone()).collect(),
            theta,
        }
    }

    /// Restriction to a subgroup `H`, relabelled as a group in its own right.
    pub fn restrict_subgroup(&self, h: &BTreeSet<usize>) -> Result<Self> {
        let elems: Vec<usize> = h.iter().copied().collect();
        let pos = |g: usize| elems.iter().position(|&x| x == g);
        let mut table = Vec::new();
        for &a in &elems {
            let mut row = Vec::new();
            for &b in &elems {
                row.push(pos(self.group.mul(a, b)).ok_or_else(|| Error::Invalid("not a subgroup".into()))?);
            }
            table.push(row);
        }
        let labels = elems.iter().map(|&g| self.group.labels[g].clone()).collect();
        let group = FiniteGroup::from_table(labels, table)?;
        let theta = elems.iter().map(|&g| self.theta[g].clone()).collect();
        Self::new(group, self.space.clone(), theta)
    }

    pub fn apply(&self, t: usize, x: usize) -> Option<usize> {
        self.theta[t].get(&x).copied()
    }

    /// `X_{t⁻¹}`, the domain of `θ_t`.
    pub fn domain(&self, t: usize) -> BTreeSet<usize> {
        self.theta[t].keys().copied().collect()
    }

    /// `X_t`, the range of `θ_t`.
    pub fn range(&self, t: usize) -> BTreeSet<usize> {
        self.theta[t].values().copied().collect()
    }

    pub fn orbit(&self, x: usize) -> BTreeSet<usize> {
        (0..self.group.order()).filter_map(|t| self.apply(t, x)).collect()
    }

    pub fn orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for x in 0..self.space.len() {
            if seen.contains(&x) {
                continue;
            }
            let o = self.orbit(x);
            seen.extend(o.iter().copied());
            out.push(o);
        }
        out
    }
}

pub fn validate_action(a: &PartialAction) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let g = &a.group;
    let n = a.space.len();
    let e = g.identity;
    if a.theta[e] != (0..n).map(|x| (x, x)).collect::<BTreeMap<_, _>>() {
        rep.push("identity", vec![e], "θ_1 is not the identity of X");
    }
    for t in 0..g.order() {
        if a.range(t).len() != a.theta[t].len() {
            rep.push("not_injective", vec![t], format!("θ_{} is not injective", g.labels[t]));
        }
        let ti = g.inverse[t];
        for (&x, &y) in &a.theta[t] {
            if a.apply(ti, y) != Some(x) {
                rep.push(
                    "inverse",
                    vec![t, x],
                    format!("θ_{}⁻¹ differs from θ_{}⁻¹ at {}", g.labels[t], g.labels[t], a.space[x]),
                );
            }
        }
        if a.theta[ti].len() != a.theta[t].len() {
            rep.push(
                "inverse",
                vec![t],
                format!("θ_{} and its inverse have different sizes", g.labels[t]),
            );
        }
        for s in 0..g.order() {
            let ts = g.mul(t, s);
            for (&x, &y) in &a.theta[s] {
                if let Some(z) = a.apply(t, y) {
                    if a.apply(ts, x) != Some(z) {
                        rep.push(
                            "extension",
                            vec![t, s, x],
                            format!(
                                "θ_{} does not extend θ_{}θ_{} at {}",
                                g.labels[ts], g.labels[t], g.labels[s], a.space[x]
                            ),
                        );
                    }
                }
            }
        }
    }
    rep
}

/// `u(s,t)` as a function on `X_s ∩ X_{st}`; missing entries are 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionCocycle<S> {
    pub values: HashMap<(usize, usize, usize), S>,
}

impl<S: Scalar> ActionCocycle<S> {
    pub fn trivial() -> Self {
        ActionCocycle { values: HashMap::new() }
    }

    pub fn u(&self, s: usize, t: usize, y: usize) -> S {
        self.values.get(&(s, t, y)).cloned().unwrap_or_else(S::one)
    }

    pub fn set(&mut self, s: usize, t: usize, y: usize, v: S) {
        if v.is_one() {
            self.values.remove(&(s, t, y));
        } else {
            self.values.insert((s, t, y), v);
        }
    }

    /// `u(s,t)(y) = λ_s(y) λ_t(θ_{s⁻¹} y) / λ_{st}(y)` for unimodular `λ_t` on
    /// `X_t` with `λ_1 = 1`.
    pub fn coboundary(a: &PartialAction, lambda: impl Fn(usize, usize) -> S) -> Result<Self> {
        let g = &a.group;
        let lam = |t: usize, y: usize| if t == g.identity { S::one() } else { lambda(t, y) };
        let mut u = ActionCocycle::trivial();
        for s in 0..g.order() {
            for t in 0..g.order() {
                let st = g.mul(s, t);
                for y in a.range(s).intersection(&a.range(st)) {
                    let z = a.apply(g.inverse[s], *y).expect("y in X_s");
                    let den = lam(st, *y).inv().ok_or_else(|| Error::NotUnimodular("λ".into()))?;
                    let v = lam(s, *y).mul(&lam(t, z)).mul(&den);
                    u.set(s, t, *y, v);
                }
            }
        }
        Ok(u)
    }
}

pub fn validate_action_cocycle<S: Scalar>(a: &PartialAction, u: &ActionCocycle<S>, field: Field) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let g = &a.group;
    let e = g.identity;
    let mut keys: Vec<_> = u.values.keys().copied().collect();
    keys.sort();
    for (s, t, y) in keys {
        let st = g.mul(s, t);
        if !(a.range(s).contains(&y) && a.range(st).contains(&y)) {
            rep.push("cocycle_domain", vec![s, t, y], "u(s,t) has a value outside X_s ∩ X_st");
            continue;
        }
        let v = u.u(s, t, y);
        if !v.is_unimodular() || (field == Field::Real && !v.is_sign()) {
            rep.push("not_unimodular", vec![s, t, y], "u(s,t) takes a non-unit value");
        }
        if (s == e || t == e) && !v.is_one() {
            rep.push("normalization", vec![s, t, y], "u(1,t) or u(t,1) is not 1");
        }
    }
    for r in 0..g.order() {
        let ri = g.inverse[r];
        for s in 0..g.order() {
            let rs = g.mul(r, s);
            for t in 0..g.order() {
                let st = g.mul(s, t);
                let rst = g.mul(rs, t);
                let dom: BTreeSet<usize> = a
                    .range(r)
                    .intersection(&a.range(rs))
                    .copied()
                    .collect::<BTreeSet<_>>()
                    .intersection(&a.range(rst))
                    .copied()
                    .collect();
                for y in dom {
                    let z = a.apply(ri, y).expect("y in X_r");
                    let l = u.u(s, t, z).mul(&u.u(r, st, y));
                    let rr = u.u(r, s, y).mul(&u.u(rs, t, y));
                    if !l.approx_eq(&rr) {
                        rep.push(
                            "cocycle_identity",
                            vec![r, s, t, y],
                            format!(
                                "cocycle identity fails for ({}, {}, {}) at {}",
                                g.labels[r], g.labels[s], g.labels[t], a.space[y]
                            ),
                        );
                    }
                }
            }
        }
    }
    rep
}

/// Arrows `(t, x)` for `x ∈ X_{t⁻¹}`.
#[derive(Debug, Clone)]
pub struct TransformationGroupoid {
    pub groupoid: FiniteGroupoid,
    pub arrow: BTreeMap<(usize, usize), usize>,
}

impl PartialAction {
    fn arrow_label(&self, t: usize, x: usize) -> String {
        format!("({},{})", self.group.labels[t], self.space[x])
    }

    /// `r(t,x) = θ_t(x)`, `d(t,x) = x`, `(s, θ_t x)(t, x) = (st, x)`, discrete.
    pub fn transformation_groupoid(&self) -> Result<TransformationGroupoid> {
        let g = &self.group;
        let pairs: Vec<(usize, usize)> = (0..g.order())
            .flat_map(|t| self.theta[t].keys().map(move |&x| (t, x)))
            .collect();
        let idx: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let unit = |x: usize| idx[&(g.identity, x)];
        let mut p = GroupoidParts {
            labels: pairs.iter().map(|&(t, x)| self.arrow_label(t, x)).collect(),
            ..Default::default()
        };
        for &(t, x) in &pairs {
            let y = self.theta[t][&x];
            p.range.push(unit(y));
            p.domain.push(unit(x));
            p.inverse.push(
                *idx.get(&(g.inverse[t], y))
                    .ok_or_else(|| Error::Invalid("θ_t⁻¹ is not θ_{t⁻¹}".into()))?,
            );
        }
        p.units = (0..self.space.len()).map(unit).collect();
        for (b, &(t, x)) in pairs.iter().enumerate() {
            let y = self.theta[t][&x];
            for s in 0..g.order() {
                if let Some(&a) = idx.get(&(s, y)) {
                    let c = idx
                        .get(&(g.mul(s, t), x))
                        .ok_or_else(|| Error::Invalid("θ_st does not extend θ_s θ_t".into()))?;
                    p.compose.push((a, b, *c));
                }
            }
        }
        let groupoid = FiniteGroupoid::from_parts(p)?;
        let arrow = pairs
            .iter()
            .map(|&(t, x)| ((t, x), groupoid.id(&self.arrow_label(t, x)).expect("label")))
            .collect();
        Ok(TransformationGroupoid { groupoid, arrow })
    }

    /// `σ_u((s, θ_t x), (t, x)) = u(s,t)(θ_st x)`.
    pub fn induced_cocycle<S: Scalar>(
        &self,
        tg: &TransformationGroupoid,
        u: &ActionCocycle<S>,
        field: Field,
    ) -> Result<TwoCocycle<S>> {
        let g = &self.group;
        let mut entries = Vec::new();
        for (&(t, x), &b) in &tg.arrow {
            let y = self.theta[t][&x];
            for s in 0..g.order() {
                if let Some(&a) = tg.arrow.get(&(s, y)) {
                    let st = g.mul(s, t);
                    let z = self
                        .apply(st, x)
                        .ok_or_else(|| Error::Invalid("θ_st undefined".into()))?;
                    entries.push(((a, b), u.u(s, t, z)));
                }
            }
        }
        TwoCocycle::from_values(field, entries)
    }

    /// Fixed point `θ_t(x) = x` with `t ≠ 1`, if any.
    pub fn is_topologically_free_pa(&self) -> Verdict<(usize, usize)> {
        for t in 0..self.group.order() {
            if t == self.group.identity {
                continue;
            }
            if let Some((&x, _)) = self.theta[t].iter().find(|(x, y)| x == y) {
                return Verdict::no((t, x));
            }
        }
        Verdict::yes()
    }

    /// Fails with an orbit that is not all of `X`.
    pub fn is_minimal_pa(&self) -> Verdict<BTreeSet<usize>> {
        match self.orbits().into_iter().find(|o| o.len() != self.space.len()) {
            Some(o) => Verdict::no(o),
            None => Verdict::yes(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceFinite {
    pub points: usize,
}

/// One tuple of points `x_i` (the singleton opens `U_i`) and the elements
/// `t_i` moving them; `None` marks an unused slot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillingTuple {
    pub points: Vec<usize>,
    pub elements: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActionCoverEvidence {
    /// Every tuple of singletons is covered; larger opens follow by
    /// monotonicity.
    Covers { tuples: Vec<FillingTuple> },
    /// No choice of `t_i` makes the images of these points cover `X`.
    Obstructed { points: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionFillingReport {
    pub n: usize,
    pub full: Verdict<SpaceFinite>,
    pub cover_condition: Verdict<ActionCoverEvidence>,
}

/// Assignment of each point of `X` to a distinct slot `i` with the point in
/// the orbit of `x_i`, by augmenting paths.
fn cover_assignment(a: &PartialAction, points: &[usize]) -> Option<Vec<Option<usize>>> {
    let n = a.space.len();
    let reach: Vec<BTreeMap<usize, usize>> = points
        .iter()
        .map(|&x| {
            let mut m = BTreeMap::new();
            for t in 0..a.group.order() {
                if let Some(y) = a.apply(t, x) {
                    m.entry(y).or_insert(t);
                }
            }
            m
        })
        .collect();
    let mut slot_of: Vec<Option<usize>> = vec![None; points.len()];
    fn augment(y: usize, reach: &[BTreeMap<usize, usize>], slot_of: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for i in 0..reach.len() {
            if reach[i].contains_key(&y) && !seen[i] {
                seen[i] = true;
                if slot_of[i].is_none_or(|z| augment(z, reach, slot_of, seen)) {
                    slot_of[i] = Some(y);
                    return true;
                }
            }
        }
        false
    }
    for y in 0..n {
        let mut seen = vec![false; points.len()];
        if !augment(y, &reach, &mut slot_of, &mut seen) {
            return None;
        }
    }
    Some(
        slot_of
            .iter()
            .enumerate()
            .map(|(i, y)| y.map(|y| reach[i][&y]))
            .collect(),
    )
}

impl ActionCoverEvidence {
    pub fn verify(&self, a: &PartialAction, n: usize) -> std::result::Result<(), String> {
        let k = a.space.len();
        match self {
            ActionCoverEvidence::Covers { tuples } => {
                let expected = k.checked_pow(n as u32).ok_or("tuple count overflows")?;
                let distinct: BTreeSet<&Vec<usize>> = tuples.iter().map(|t| &t.points).collect();
                if distinct.len() != expected || tuples.len() != expected {
                    return Err(format!("{} tuples recorded, {} needed", tuples.len(), expected));
                }
                for t in tuples {
                    if t.points.len() != n || t.elements.len() != n || t.points.iter().any(|&x| x >= k) {
                        return Err("malformed tuple".into());
                    }
                    let mut cover = BTreeSet::new();
                    for (x, e) in t.points.iter().zip(&t.elements) {
                        if let Some(e) = e {
                            cover.insert(a.apply(*e, *x).ok_or("x_i outside the domain of θ_t_i")?);
                        }
                    }
                    if cover.len() != k {
                        return Err("images do not cover X".into());
                    }
                }
                Ok(())
            }
            ActionCoverEvidence::Obstructed { points } => {
                if points.len() != n || points.iter().any(|&x| x >= k) {
                    return Err("malformed tuple".into());
                }
                match cover_assignment(a, points) {
                    Some(_) => Err("the recorded tuple is coverable".into()),
                    None => Ok(()),
                }
            }
        }
    }
}

impl SpaceFinite {
    pub fn verify(&self, a: &PartialAction) -> std::result::Result<(), String> {
        if self.points != a.space.len() {
            return Err(format!("{} points recorded, {} actual", self.points, a.space.len()));
        }
        Ok(())
    }
}

impl PartialAction {
    /// n-filling with singleton opens `U_1..U_n`; a finite `X` is never
    /// "compact and infinite", so `full` is always false.
    pub fn is_n_filling_pa(&self, n: usize) -> Result<ActionFillingReport> {
        if n == 0 {
            return Err(Error::ZeroN);
        }
        let k = self.space.len();
        let mut tuples = Vec::new();
        let mut idx = vec![0usize; n];
        let mut examined = 0usize;
        let cover_condition = if k == 0 {
            Verdict::yes_with(ActionCoverEvidence::Covers { tuples })
        } else {
            loop {
                examined += 1;
                if examined > FILLING_TUPLE_CAP {
                    return Err(Error::CapExceeded {
                        what: "n-filling tuples",
                        cap: FILLING_TUPLE_CAP,
                    });
                }
                match cover_assignment(self, &idx) {
                    Some(elements) => tuples.push(FillingTuple {
                        points: idx.clone(),
                        elements,
                    }),
                    None => break Verdict::no(ActionCoverEvidence::Obstructed { points: idx.clone() }),
                }
                let mut i = 0;
                while i < n && idx[i] + 1 == k {
                    idx[i] = 0;
                    i += 1;
                }
                if i == n {
                    break Verdict::yes_with(ActionCoverEvidence::Covers { tuples });
                }
                idx[i] += 1;
            }
        };
        Ok(ActionFillingReport {
            n,
            full: Verdict::no(SpaceFinite { points: k }),
            cover_condition,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityCheck {
    pub t: usize,
    pub domain: usize,
    pub image: usize,
}

/// Each `θ_t` is injective, and every subset is closed in the discrete
/// topology, so `|θ_t(cl V)| = |V|` and `θ_t(cl V) ⊊ V` is impossible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalBoundaryCertificate {
    pub checks: Vec<InjectivityCheck>,
}

impl LocalBoundaryCertificate {
    pub fn verify(&self, a: &PartialAction) -> std::result::Result<(), String> {
        if self.checks.len() != a.group.order() {
            return Err("one check per group element required".into());
        }
        for c in &self.checks {
            if c.t >= a.group.order() {
                return Err("unknown group element".into());
            }
            let d = a.domain(c.t).len();
            let i = a.range(c.t).len();
            if d != c.domain || i != c.image {
                return Err(format!("recorded sizes for θ_{} are wrong", a.group.labels[c.t]));
            }
            if c.domain != c.image {
                return Err(format!("θ_{} is not injective", a.group.labels[c.t]));
            }
        }
        Ok(())
    }
}

impl PartialAction {
    /// Local boundary: some `θ_t(cl V) ⊊ V` inside every non-empty open set.
    pub fn is_local_boundary_pa(&self) -> Verdict<LocalBoundaryCertificate> {
        let checks = (0..self.group.order())
            .map(|t| InjectivityCheck {
                t,
                domain: self.domain(t).len(),
                image: self.range(t).len(),
            })
            .collect();
        Verdict::no(LocalBoundaryCertificate { checks })
    }
}

/// `θ_t = id` on `{0}`: the trivial action of `G` on one point.
pub fn trivial_point_action(g: &FiniteGroup) -> PartialAction {
    PartialAction::global(g.clone(), vec!["x".into()], |_, x| x).expect("trivial action")
}

/// `ℤ₂` swapping two points `a`, `b`.
pub fn z2_swap() -> PartialAction {
    PartialAction::global(FiniteGroup::cyclic(2), vec!["a".into(), "b".into()], |t, x| {
        if t == 1 {
            1 - x
        } else {
            x
        }
    })
    .expect("swap")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::validate;
    use crate::scalar::Gauss;
    use crate::twisted::validate_cocycle;

    #[test]
    fn swap_groupoid_is_pair_groupoid() {
        let a = z2_swap();
        assert!(validate_action(&a).is_ok());
        let tg = a.transformation_groupoid().unwrap();
        let g = &tg.groupoid;
        assert!(validate(g).is_ok());
        assert_eq!(g.len(), 4);
        assert!(g.is_principal().holds);
        assert_eq!(g.orbits().len(), 1);
        assert!(a.is_topologically_free_pa().holds && a.is_minimal_pa().holds);
    }

    #[test]
    fn trivial_actions() {
        let a = trivial_point_action(&FiniteGroup::cyclic(1));
        let g = a.transformation_groupoid().unwrap().groupoid;
        assert_eq!(g.len(), 1);
        let b = trivial_point_action(&FiniteGroup::cyclic(2));
        let g = b.transformation_groupoid().unwrap().groupoid;
        assert_eq!((g.len(), g.units().len()), (2, 1));
        let v = b.is_topologically_free_pa();
        assert_eq!(v.witness, Some((1, 0)));
    }

    #[test]
    fn two_orbits_not_minimal() {
        let a = PartialAction::global(
            FiniteGroup::cyclic(2),
            vec!["a".into(), "b".into(), "c".into()],
            |t, x| {
                if t == 1 && x < 2 {
                    1 - x
                } else {
                    x
                }
            },
        )
        .unwrap();
        let v = a.is_minimal_pa();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().len(), 2);
    }

    #[test]
    fn broken_actions() {
        let mut a = z2_swap();
        a.theta[1].insert(0, 0);
        assert!(validate_action(&a).has("not_injective"));
        let mut b = z2_swap();
        b.theta[0].remove(&1);
        assert!(validate_action(&b).has("identity"));
    }

    #[test]
    fn coboundary_cocycle_is_valid() {
        let g = FiniteGroup::cyclic(4);
        let full = PartialAction::global(g, (0..4).map(|i| i.to_string()).collect(), |t, x| (t + x) % 4).unwrap();
        let a = full.restrict_to(&[0, 1, 2].into_iter().collect());
        assert!(validate_action(&a).is_ok(), "{:?}", validate_action(&a));
        let u = ActionCocycle::coboundary(&a, |t, y| {
            if (t + y) % 2 == 0 {
                Gauss::i()
            } else {
                Gauss::int(-1, 0)
            }
        })
        .unwrap();
        assert!(validate_action_cocycle(&a, &u, Field::Complex).is_ok());
        let tg = a.transformation_groupoid().unwrap();
        assert!(validate(&tg.groupoid).is_ok());
        let s = a.induced_cocycle(&tg, &u, Field::Complex).unwrap();
        assert!(validate_cocycle(&tg.groupoid, &s).is_ok());
        let mut bad = u.clone();
        bad.set(1, 1, 2, Gauss::i());
        assert!(!validate_action_cocycle(&a, &bad, Field::Complex).is_ok());
    }

    #[test]
    fn filling_and_boundary() {
        let a = z2_swap();
        let r = a.is_n_filling_pa(2).unwrap();
        assert!(!r.full.holds);
        assert!(r.cover_condition.holds);
        r.cover_condition.witness.as_ref().unwrap().verify(&a, 2).unwrap();
        let r1 = a.is_n_filling_pa(1).unwrap();
        assert!(!r1.cover_condition.holds);
        r1.cover_condition.witness.as_ref().unwrap().verify(&a, 1).unwrap();
        assert!(a.is_n_filling_pa(0).is_err());
        let lb = a.is_local_boundary_pa();
        assert!(!lb.holds);
        let mut cert = lb.witness.unwrap();
        cert.verify(&a).unwrap();
        cert.checks[1].image = 1;
        assert!(cert.verify(&a).is_err());
    }

    #[test]
    fn subgroup_restriction() {
        let a = PartialAction::global(
            FiniteGroup::cyclic(4),
            (0..4).map(|i| i.to_string()).collect(),
            |t, x| (t + x) % 4,
        )
        .unwrap();
        let h = a.restrict_subgroup(&[0, 2].into_iter().collect()).unwrap();
        assert!(validate_action(&h).is_ok());
        assert_eq!(h.orbits().len(), 2);
        assert!(a.restrict_subgroup(&[0, 1].into_iter().collect()).is_err());
    }
}
