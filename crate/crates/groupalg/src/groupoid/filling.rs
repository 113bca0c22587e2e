//! n-filling and local contraction checkers. On a finite groupoid both fail
//! for cardinality reasons; the checkers still run the search and return
//! certificates that can be re-verified against the groupoid.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{ArrowSet, FiniteGroupoid};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

const OPEN_CAP: usize = 1 << 12;
const BISECTION_CAP: usize = 1 << 12;
const PARTIAL_CAP: usize = 100_000;

/// The unit space is finite, so it is not "compact and infinite".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessCertificate {
    pub reason: String,
    pub unit_count: usize,
}

impl FinitenessCertificate {
    pub fn verify(&self, g: &FiniteGroupoid) -> std::result::Result<(), String> {
        let n = g.units().len();
        if n != self.unit_count {
            return Err(format!("unit count {} recorded, {} actual", self.unit_count, n));
        }
        Ok(())
    }
}

/// Bisections `W_1..W_n` with `⋃ r(W_i U) = X`, for one open `U`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverTuple {
    pub u: ArrowSet,
    pub bisections: Vec<ArrowSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverEvidence {
    /// One tuple per minimal non-empty open set of units; larger opens follow
    /// by monotonicity.
    Covers {
        tuples: Vec<CoverTuple>,
    },
    Obstructed {
        u: ArrowSet,
        reason: String,
    },
}

impl CoverEvidence {
    pub fn verify(&self, g: &FiniteGroupoid, n: usize) -> std::result::Result<(), String> {
        match self {
            CoverEvidence::Covers { tuples } => {
                let units = g.unit_set();
                for x in &units {
                    let m = unit_min_open(g, *x);
                    if !tuples.iter().any(|t| t.u.is_subset(&m)) {
                        return Err(format!("no tuple for the open set around unit {}", g.label(*x)));
                    }
                }
                for t in tuples {
                    if t.u.is_empty() || !t.u.is_subset(&units) || !g.is_open(&t.u) {
                        return Err("U is not a non-empty open set of units".into());
                    }
                    if t.bisections.len() > n {
                        return Err(format!("{} bisections used, n = {}", t.bisections.len(), n));
                    }
                    let mut cover = ArrowSet::new();
                    for w in &t.bisections {
                        if !g.is_bisection(w) || !g.is_open(w) {
                            return Err("W is not an open bisection".into());
                        }
                        cover.extend(g.range_of(&g.product_set(w, &t.u)));
                    }
                    if cover != units {
                        return Err("the images do not cover the unit space".into());
                    }
                }
                Ok(())
            }
            CoverEvidence::Obstructed { u, .. } => {
                if !g.is_open(u) || u.is_empty() || !u.is_subset(&g.unit_set()) {
                    return Err("U is not a non-empty open set of units".into());
                }
                if g.is_discrete_topology() {
                    let covered = cover_images_discrete(g, u, n);
                    if covered == g.unit_set() {
                        return Err("U can be covered".into());
                    }
                    return Ok(());
                }
                match search_cover(g, u, n) {
                    Ok(None) => Ok(()),
                    Ok(Some(_)) => Err("U can be covered".into()),
                    Err(e) => Err(e.to_string()),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillingReport {
    pub n: usize,
    /// Always false: the definition requires an infinite unit space.
    pub full: Verdict<FinitenessCertificate>,
    pub cover_condition: Verdict<CoverEvidence>,
}

fn unit_min_open(g: &FiniteGroupoid, x: usize) -> ArrowSet {
    g.min_open(x)
}

/// Largest union of `n` images `r(W U)` in the discrete case: inside each
/// orbit every point is reachable from every point of `U`, so `n` bisections
/// reach `min(|O|, n |U ∩ O|)` points of the orbit `O`.
fn cover_images_discrete(g: &FiniteGroupoid, u: &ArrowSet, n: usize) -> ArrowSet {
    let mut out = ArrowSet::new();
    for orbit in g.orbits() {
        let meet = orbit.iter().filter(|x| u.contains(x)).count();
        let k = (n * meet).min(orbit.len());
        out.extend(orbit.iter().take(k));
    }
    out
}

fn discrete_cover(g: &FiniteGroupoid, x: usize, n: usize) -> Option<Vec<ArrowSet>> {
    let orbit = g.orbits().into_iter().find(|o| o.contains(&x))?;
    if orbit.len() != g.units().len() || orbit.len() > n {
        return None;
    }
    let mut ws: Vec<ArrowSet> = orbit
        .iter()
        .map(|&y| {
            let a = g.arrows_from(x).find(|&a| g.r(a) == y).expect("transitive orbit");
            ArrowSet::from([a])
        })
        .collect();
    while ws.len() < n {
        ws.push(ws[0].clone());
    }
    ws.truncate(n);
    Some(ws)
}

/// Open bisections that are unions of basic bisections.
fn open_bisections(g: &FiniteGroupoid) -> Result<Vec<ArrowSet>> {
    let basic: Vec<ArrowSet> = {
        let mut v: Vec<ArrowSet> = g
            .basis_sets()
            .iter()
            .filter(|b| !b.is_empty() && g.is_bisection(b))
            .cloned()
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let mut found: BTreeSet<ArrowSet> = basic.iter().cloned().collect();
    let mut frontier: Vec<ArrowSet> = basic.clone();
    while let Some(cur) = frontier.pop() {
        for b in &basic {
            if b.is_subset(&cur) {
                continue;
            }
            let next: ArrowSet = cur.union(b).copied().collect();
            if g.is_bisection(&next) && found.insert(next.clone()) {
                if found.len() > BISECTION_CAP {
                    return Err(Error::CapExceeded {
                        what: "open bisections",
                        cap: BISECTION_CAP,
                    });
                }
                frontier.push(next);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Searches `n` open bisections covering X from `u`.
fn search_cover(g: &FiniteGroupoid, u: &ArrowSet, n: usize) -> Result<Option<Vec<ArrowSet>>> {
    let units = g.unit_set();
    let mut images: Vec<(ArrowSet, ArrowSet)> = Vec::new();
    for w in open_bisections(g)? {
        let img = g.range_of(&g.product_set(&w, u));
        if !img.is_empty() {
            images.push((img, w));
        }
    }
    images.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
    let kept: Vec<(ArrowSet, ArrowSet)> = images
        .iter()
        .enumerate()
        .filter(|(i, (img, _))| !images[..*i].iter().any(|(o, _)| img.is_subset(o)))
        .map(|(_, x)| x.clone())
        .collect();
    fn dfs(
        kept: &[(ArrowSet, ArrowSet)],
        units: &ArrowSet,
        covered: &ArrowSet,
        left: usize,
        chosen: &mut Vec<ArrowSet>,
    ) -> bool {
        let Some(&need) = units.difference(covered).next() else {
            return true;
        };
        if left == 0 {
            return false;
        }
        for (img, w) in kept.iter().filter(|(img, _)| img.contains(&need)) {
            let next: ArrowSet = covered.union(img).copied().collect();
            chosen.push(w.clone());
            if dfs(kept, units, &next, left - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if dfs(&kept, &units, &ArrowSet::new(), n, &mut chosen) {
        while chosen.len() < n {
            chosen.push(chosen[0].clone());
        }
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

impl FiniteGroupoid {
    /// n-filling. The full verdict is false because the unit space is finite;
    /// `cover_condition` reports whether every non-empty open `U ⊆ X` admits
    /// open bisections `W_1..W_n` with `⋃ r(W_i U) = X`.
    pub fn is_n_filling(&self, n: usize) -> Result<FillingReport> {
        if n == 0 {
            return Err(Error::ZeroN);
        }
        let full = Verdict::no(FinitenessCertificate {
            reason: "unit space finite".into(),
            unit_count: self.units().len(),
        });
        let units = self.units();
        let mut tuples = Vec::new();
        let mut seen = BTreeSet::new();
        let mut obstructed = None;
        for &x in &units {
            let u = unit_min_open(self, x);
            if !seen.insert(u.clone()) {
                continue;
            }
            let found = if self.is_discrete_topology() {
                discrete_cover(self, x, n)
            } else {
                search_cover(self, &u, n)?
            };
            match found {
                Some(bisections) => tuples.push(CoverTuple { u, bisections }),
                None => {
                    let reason = if self.is_discrete_topology() {
                        let orbit = self.orbits().into_iter().find(|o| o.contains(&x)).unwrap_or_default();
                        if orbit.len() != units.len() {
                            "U misses an orbit".to_string()
                        } else {
                            format!(
                                "orbit has {} units but at most n|U| = {} can be reached",
                                orbit.len(),
                                n
                            )
                        }
                    } else {
                        "no n open bisections cover X from U".to_string()
                    };
                    obstructed = Some(CoverEvidence::Obstructed { u, reason });
                    break;
                }
            }
        }
        let cover_condition = match obstructed {
            Some(e) => Verdict::no(e),
            None => Verdict::yes_with(CoverEvidence::Covers { tuples }),
        };
        Ok(FillingReport {
            n,
            full,
            cover_condition,
        })
    }

    /// Closure of `v` relative to the unit space.
    pub fn closure_in_units(&self, v: &ArrowSet) -> ArrowSet {
        let units = self.unit_set();
        self.closure(v).intersection(&units).copied().collect()
    }

    /// Local contraction: for every non-empty open `U ⊆ X`, some open `V ⊆ U`
    /// and open bisection `W` with `cl V ⊆ d(W)` and `h_W(cl V) ⊊ V`.
    pub fn is_locally_contracting(&self) -> Result<Verdict<LocalContraction>> {
        let units = self.unit_set();
        let mut us: Vec<ArrowSet> = self
            .basis_sets()
            .iter()
            .filter(|b| !b.is_empty() && b.is_subset(&units))
            .cloned()
            .collect();
        us.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        us.dedup();
        let mut found = Vec::new();
        for u in us {
            match contraction_search(self, &u)? {
                Ok((v, w)) => found.push(Contraction { u, v, w }),
                Err(cert) => return Ok(Verdict::no(LocalContraction::Impossible(cert))),
            }
        }
        Ok(Verdict::yes_with(LocalContraction::Contracts(found)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contraction {
    pub u: ArrowSet,
    pub v: ArrowSet,
    pub w: ArrowSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpenCheck {
    pub v: ArrowSet,
    /// Closure of `v` in the unit space.
    pub closure: ArrowSet,
    /// Smallest image `h_W(cl V)` over the partial bisections examined.
    pub min_image: Option<usize>,
}

/// For the recorded `U`, every open `V ⊆ U` satisfies `|cl V| ≥ |V|`; since
/// `h_W` is injective, `|h_W(cl V)| = |cl V| ≥ |V|`, so `h_W(cl V) ⊊ V` fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionCertificate {
    pub u: ArrowSet,
    pub opens: Vec<OpenCheck>,
    pub partial_bisections_examined: usize,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalContraction {
    /// A contraction inside every basic open set of units.
    Contracts(Vec<Contraction>),
    /// An open set of units admitting no contraction.
    Impossible(ContractionCertificate),
}

impl LocalContraction {
    pub fn certificate(&self) -> Option<&ContractionCertificate> {
        match self {
            LocalContraction::Impossible(c) => Some(c),
            LocalContraction::Contracts(_) => None,
        }
    }
}

impl ContractionCertificate {
    pub fn verify(&self, g: &FiniteGroupoid) -> std::result::Result<(), String> {
        let units = g.unit_set();
        if self.u.is_empty() || !self.u.is_subset(&units) || !g.is_open(&self.u) {
            return Err("U is not a non-empty open set of units".into());
        }
        let expected: BTreeSet<ArrowSet> = g
            .open_subsets(&self.u, OPEN_CAP)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        let listed: BTreeSet<ArrowSet> = self.opens.iter().map(|o| o.v.clone()).collect();
        if expected != listed || listed.len() != self.opens.len() {
            return Err("recorded open sets differ from the open subsets of U".into());
        }
        for o in &self.opens {
            let cl = g.closure_in_units(&o.v);
            if cl != o.closure {
                return Err("recorded closure is wrong".into());
            }
            if !o.v.is_subset(&cl) || cl.len() < o.v.len() {
                return Err("closure smaller than V".into());
            }
            if let Some(m) = o.min_image {
                if m != cl.len() {
                    return Err("image size differs from closure size".into());
                }
            }
        }
        Ok(())
    }
}

/// `Ok(Ok((v, w)))` when a contraction exists in `u`, `Ok(Err(cert))` otherwise.
#[allow(clippy::type_complexity)]
fn contraction_search(
    g: &FiniteGroupoid,
    u: &ArrowSet,
) -> Result<std::result::Result<(ArrowSet, ArrowSet), ContractionCertificate>> {
    let mut opens = Vec::new();
    let mut examined = 0usize;
    let mut exhaustive = true;
    for v in g.open_subsets(u, OPEN_CAP)? {
        let cl = g.closure_in_units(&v);
        let pts: Vec<usize> = cl.iter().copied().collect();
        let mut min_image: Option<usize> = None;
        let mut chosen: Vec<usize> = Vec::new();
        let mut used = ArrowSet::new();
        let mut hit: Option<ArrowSet> = None;
        #[allow(clippy::too_many_arguments)]
        fn rec(
            g: &FiniteGroupoid,
            pts: &[usize],
            v: &ArrowSet,
            chosen: &mut Vec<usize>,
            used: &mut ArrowSet,
            examined: &mut usize,
            exhaustive: &mut bool,
            min_image: &mut Option<usize>,
            hit: &mut Option<ArrowSet>,
        ) {
            if hit.is_some() || !*exhaustive {
                return;
            }
            if chosen.len() == pts.len() {
                *examined += 1;
                if *examined >= PARTIAL_CAP {
                    *exhaustive = false;
                }
                let w: ArrowSet = chosen.iter().copied().collect();
                let img = g.range_of(&w);
                *min_image = Some(min_image.map_or(img.len(), |m| m.min(img.len())));
                if img.is_subset(v) && img.len() < v.len() {
                    let hull = g.open_hull(&w);
                    if g.is_bisection(&hull) {
                        *hit = Some(hull);
                    }
                }
                return;
            }
            let c = pts[chosen.len()];
            for a in g.arrows_from(c).collect::<Vec<_>>() {
                let t = g.r(a);
                if used.contains(&t) {
                    continue;
                }
                used.insert(t);
                chosen.push(a);
                rec(g, pts, v, chosen, used, examined, exhaustive, min_image, hit);
                chosen.pop();
                used.remove(&t);
            }
        }
        rec(
            g,
            &pts,
            &v,
            &mut chosen,
            &mut used,
            &mut examined,
            &mut exhaustive,
            &mut min_image,
            &mut hit,
        );
        if let Some(w) = hit {
            return Ok(Ok((v, w)));
        }
        opens.push(OpenCheck {
            v,
            closure: cl,
            min_image,
        });
    }
    Ok(Err(ContractionCertificate {
        u: u.clone(),
        opens,
        partial_bisections_examined: examined,
        exhaustive,
    }))
}
