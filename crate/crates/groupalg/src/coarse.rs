//! Finite coarse spaces, controlled propagation matrices and coarse ideals.
//!
//! The coarse structure generated by a finite family of relations is the
//! family of all subsets of `M`, where `M` is the union of the generators
//! closed under inverse and composition. It is stored as `M`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, GroupoidParts};
use crate::scalar::{NormValue, Scalar};
use crate::twisted::{operator_norm, RepMatrix};
use crate::verdict::Verdict;

pub type Entourage = BTreeSet<(usize, usize)>;

/// Pairs allowed in `M`.
pub const CLOSURE_CAP: usize = 1 << 16;
/// Distinct ideals listed by [`CoarseSpace::coarse_ideals`].
pub const IDEAL_CAP: usize = 1 << 12;

pub fn inverse(e: &Entourage) -> Entourage {
    e.iter().map(|&(x, y)| (y, x)).collect()
}

pub fn compose(a: &Entourage, b: &Entourage) -> Entourage {
    let mut by_first: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(y, z) in b {
        by_first.entry(y).or_default().push(z);
    }
    let mut out = Entourage::new();
    for &(x, y) in a {
        if let Some(zs) = by_first.get(&y) {
            out.extend(zs.iter().map(|&z| (x, z)));
        }
    }
    out
}

/// `E` is a bisection when both coordinate projections are injective on it.
pub fn is_bisection(e: &Entourage) -> bool {
    let xs: BTreeSet<usize> = e.iter().map(|p| p.0).collect();
    let ys: BTreeSet<usize> = e.iter().map(|p| p.1).collect();
    xs.len() == e.len() && ys.len() == e.len()
}

/// `n(E) = max_x |{y : (x,y) ∈ E or (y,x) ∈ E}|`.
pub fn n_of(e: &Entourage) -> usize {
    let mut nb: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(x, y) in e {
        nb.entry(x).or_default().insert(y);
        nb.entry(y).or_default().insert(x);
    }
    nb.values().map(|s| s.len()).max().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarseSpace {
    pub points: Vec<String>,
    pub generators: Vec<Entourage>,
    closure: Entourage,
}

impl CoarseSpace {
    pub fn new(points: Vec<String>, generators: Vec<Entourage>) -> Result<Self> {
        let n = points.len();
        for g in &generators {
            if let Some(&(x, y)) = g.iter().find(|&&(x, y)| x >= n || y >= n) {
                return Err(Error::IndexOutOfRange {
                    what: "point",
                    index: x.max(y),
                    len: n,
                });
            }
        }
        let mut m: Entourage = generators.iter().flatten().copied().collect();
        loop {
            let mut next = m.clone();
            next.extend(inverse(&m));
            next.extend(compose(&m, &m));
            if next.len() > CLOSURE_CAP {
                return Err(Error::CapExceeded {
                    what: "entourage closure",
                    cap: CLOSURE_CAP,
                });
            }
            if next == m {
                break;
            }
            m = next;
        }
        Ok(CoarseSpace {
            points,
            generators,
            closure: m,
        })
    }

    pub fn with_points(n: usize, generators: Vec<Entourage>) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), generators)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn diagonal(&self) -> Entourage {
        (0..self.len()).map(|x| (x, x)).collect()
    }

    /// The largest entourage `M`.
    pub fn maximal_entourage(&self) -> &Entourage {
        &self.closure
    }

    pub fn contains(&self, e: &Entourage) -> bool {
        e.is_subset(&self.closure)
    }

    pub fn is_unital(&self) -> bool {
        self.contains(&self.diagonal())
    }

    /// Ideal generated by `s`: the smallest symmetric `J ⊇ s` with
    /// `JM ∪ MJ ⊆ J`. Requires `s ⊆ M`.
    pub fn principal_ideal(&self, s: &Entourage) -> Result<Entourage> {
        if !self.contains(s) {
            return Err(Error::Invalid("generator is not an entourage".into()));
        }
        let m = &self.closure;
        let mut j = s.clone();
        loop {
            let mut next = j.clone();
            next.extend(inverse(&j));
            next.extend(compose(&j, m));
            next.extend(compose(m, &j));
            if next == j {
                return Ok(j);
            }
            j = next;
        }
    }

    /// Every ideal `E₀ = P(M₀)`, listed by `M₀`. Unions of ideals are ideals
    /// and each ideal is the union of the principal ideals of its pairs.
    pub fn coarse_ideals(&self) -> Result<Vec<Entourage>> {
        let mut principal: BTreeSet<Entourage> = BTreeSet::new();
        for &p in &self.closure {
            principal.insert(self.principal_ideal(&Entourage::from([p]))?);
        }
        let mut all: BTreeSet<Entourage> = BTreeSet::from([Entourage::new()]);
        for p in &principal {
            let mut add = Vec::new();
            for a in &all {
                let u: Entourage = a.union(p).copied().collect();
                if !all.contains(&u) {
                    add.push(u);
                }
            }
            all.extend(add);
            if all.len() > IDEAL_CAP {
                return Err(Error::CapExceeded {
                    what: "coarse ideals",
                    cap: IDEAL_CAP,
                });
            }
        }
        Ok(all.into_iter().collect())
    }

    /// Simple iff every principal ideal is all of `M`. Witness: a proper
    /// non-zero ideal.
    pub fn is_simple_coarse(&self) -> Result<Verdict<Entourage>> {
        for &p in &self.closure {
            let j = self.principal_ideal(&Entourage::from([p]))?;
            if j != self.closure {
                return Ok(Verdict::no(j));
            }
        }
        Ok(Verdict::yes())
    }

    /// For a unital space, `M` is an equivalence relation; its groupoid
    /// (discrete, principal) is the finite translation groupoid.
    pub fn to_groupoid(&self) -> Result<FiniteGroupoid> {
        if !self.is_unital() {
            return Err(Error::NotUnital);
        }
        let pairs: Vec<(usize, usize)> = self.closure.iter().copied().collect();
        let pos: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut p = GroupoidParts {
            labels: pairs
                .iter()
                .map(|&(x, y)| format!("({},{})", self.points[x], self.points[y]))
                .collect(),
            ..Default::default()
        };
        p.range = pairs.iter().map(|&(x, _)| pos[&(x, x)]).collect();
        p.domain = pairs.iter().map(|&(_, y)| pos[&(y, y)]).collect();
        p.inverse = pairs.iter().map(|&(x, y)| pos[&(y, x)]).collect();
        p.units = (0..self.len()).map(|x| pos[&(x, x)]).collect();
        for &(x, y) in &pairs {
            for &(y2, z) in &pairs {
                if y == y2 {
                    p.compose.push((pos[&(x, y)], pos[&(y, z)], pos[&(x, z)]));
                }
            }
        }
        FiniteGroupoid::from_parts(p)
    }
}

/// Proper edge colouring of the bipartite graph `E` (left and right copies
/// of `X`) with `Δ` colours by alternating-path recolouring. Each colour
/// class is a bisection; `Δ ≤ n(E)`.
pub fn decompose_into_bisections(e: &Entourage) -> Vec<Entourage> {
    // colour_at[side][vertex][colour] = the other endpoint
    let mut left: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    let mut right: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    let free = |m: &BTreeMap<usize, BTreeMap<usize, usize>>, v: usize| {
        let used = m.get(&v);
        (0..).find(|c| used.is_none_or(|u| !u.contains_key(c))).unwrap()
    };
    for &(x, y) in e {
        let a = free(&left, x);
        let b = free(&right, y);
        if a != b && right.get(&y).is_some_and(|u| u.contains_key(&a)) {
            // swap colours a and b along the alternating path from y
            let mut path = Vec::new();
            let mut on_right = true;
            let mut v = y;
            let mut col = a;
            loop {
                let side = if on_right { &right } else { &left };
                let Some(&w) = side.get(&v).and_then(|m| m.get(&col)) else {
                    break;
                };
                path.push(if on_right { (w, v, col) } else { (v, w, col) });
                v = w;
                on_right = !on_right;
                col = if col == a { b } else { a };
            }
            for &(l, r, c) in &path {
                left.get_mut(&l).unwrap().remove(&c);
                right.get_mut(&r).unwrap().remove(&c);
            }
            for &(l, r, c) in &path {
                let nc = if c == a { b } else { a };
                left.entry(l).or_default().insert(nc, r);
                right.entry(r).or_default().insert(nc, l);
            }
        }
        left.entry(x).or_default().insert(a, y);
        right.entry(y).or_default().insert(a, x);
    }
    let mut classes: BTreeMap<usize, Entourage> = BTreeMap::new();
    for (&x, m) in &left {
        for (&c, &y) in m {
            classes.entry(c).or_default().insert((x, y));
        }
    }
    classes.into_values().collect()
}

pub type Block<S> = Vec<Vec<S>>;

/// An `X`-by-`X` matrix of `k × k` blocks; zero blocks are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlledMatrix<S> {
    pub n: usize,
    pub k: usize,
    blocks: BTreeMap<(usize, usize), Block<S>>,
}

fn block_is_zero<S: Scalar>(b: &Block<S>) -> bool {
    b.iter().flatten().all(|x| x.is_zero())
}

fn block_mul<S: Scalar>(a: &Block<S>, b: &Block<S>) -> Block<S> {
    let k = a.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).fold(S::zero(), |acc, l| acc.add(&a[i][l].mul(&b[l][j]))))
                .collect()
        })
        .collect()
}

fn block_add<S: Scalar>(a: &Block<S>, b: &Block<S>) -> Block<S> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y)).collect())
        .collect()
}

pub fn block_identity<S: Scalar>(k: usize) -> Block<S> {
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect()
}

impl<S: Scalar> ControlledMatrix<S> {
    pub fn new(n: usize, k: usize, blocks: impl IntoIterator<Item = ((usize, usize), Block<S>)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for ((x, y), b) in blocks {
            if x >= n || y >= n {
                return Err(Error::IndexOutOfRange {
                    what: "point",
                    index: x.max(y),
                    len: n,
                });
            }
            if b.len() != k || b.iter().any(|r| r.len() != k) {
                return Err(Error::Invalid(format!("block at ({}, {}) is not {}x{}", x, y, k, k)));
            }
            if !block_is_zero(&b) {
                out.insert((x, y), b);
            }
        }
        Ok(ControlledMatrix { n, k, blocks: out })
    }

    pub fn identity(n: usize, k: usize) -> Self {
        Self::new(n, k, (0..n).map(|x| ((x, x), block_identity(k)))).expect("identity")
    }

    pub fn block(&self, x: usize, y: usize) -> Option<&Block<S>> {
        self.blocks.get(&(x, y))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(usize, usize), &Block<S>)> {
        self.blocks.iter()
    }

    pub fn support(&self) -> Entourage {
        self.blocks.keys().copied().collect()
    }

    /// Support must be an entourage.
    pub fn check(&self, cs: &CoarseSpace) -> Result<()> {
        if self.n != cs.len() {
            return Err(Error::Invalid("matrix and space sizes differ".into()));
        }
        if !cs.contains(&self.support()) {
            return Err(Error::Invalid("support is not an entourage".into()));
        }
        Ok(())
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let mut out: BTreeMap<(usize, usize), Block<S>> = BTreeMap::new();
        for (&(x, y), a) in &self.blocks {
            for (&(y2, z), b) in o.blocks.range((y, 0)..(y + 1, 0)) {
                debug_assert_eq!(y, y2);
                let p = block_mul(a, b);
                let cur = out
                    .entry((x, z))
                    .or_insert_with(|| vec![vec![S::zero(); self.k]; self.k]);
                *cur = block_add(cur, &p);
            }
        }
        ControlledMatrix::new(self.n, self.k, out).expect("product")
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.blocks.clone();
        for (&key, b) in &o.blocks {
            let cur = out.entry(key).or_insert_with(|| vec![vec![S::zero(); self.k]; self.k]);
            *cur = block_add(cur, b);
        }
        ControlledMatrix::new(self.n, self.k, out).expect("sum")
    }

    /// `T_p` on `ℓ^p(X, ℓ^p_k)`, index `(x, i) ↦ x·k + i`.
    pub fn to_operator(&self, p: f64) -> RepMatrix<S> {
        let d = self.n * self.k;
        let mut rows = vec![vec![S::zero(); d]; d];
        for (&(x, y), b) in &self.blocks {
            for i in 0..self.k {
                for j in 0..self.k {
                    rows[x * self.k + i][y * self.k + j] = b[i][j].clone();
                }
            }
        }
        RepMatrix::from_rows(rows, p)
    }

    /// `f E^{I₀}`: `(x, y) ↦ f(x)` on a bisection `E`.
    pub fn basic(n: usize, k: usize, f: &BTreeMap<usize, Block<S>>, e: &Entourage) -> Result<Self> {
        if !is_bisection(e) {
            return Err(Error::NotBisection);
        }
        let zero = vec![vec![S::zero(); k]; k];
        Self::new(
            n,
            k,
            e.iter()
                .map(|&(x, y)| ((x, y), f.get(&x).cloned().unwrap_or_else(|| zero.clone()))),
        )
    }

    /// `T = Σ_k f_k E_k^{I₀}` over the bisections of [`decompose_into_bisections`].
    pub fn decompose(&self) -> Vec<(BTreeMap<usize, Block<S>>, Entourage)> {
        decompose_into_bisections(&self.support())
            .into_iter()
            .map(|e| {
                let f = e.iter().map(|&(x, y)| (x, self.blocks[&(x, y)].clone())).collect();
                (f, e)
            })
            .collect()
    }
}

/// `(f₁E₁)(f₂E₂) = g (E₁E₂)` with `g(x) = f₁(x) f₂(y)` for `(x, y) ∈ E₁`.
pub fn basic_product<S: Scalar>(
    f1: &BTreeMap<usize, Block<S>>,
    e1: &Entourage,
    f2: &BTreeMap<usize, Block<S>>,
    e2: &Entourage,
    k: usize,
) -> (BTreeMap<usize, Block<S>>, Entourage) {
    let zero = vec![vec![S::zero(); k]; k];
    let mut g = BTreeMap::new();
    for &(x, y) in e1 {
        let a = f1.get(&x).unwrap_or(&zero);
        let b = f2.get(&y).unwrap_or(&zero);
        g.insert(x, block_mul(a, b));
    }
    (g, compose(e1, e2))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormBound {
    pub p: f64,
    pub exact: NormValue,
    pub sup_block: NormValue,
    pub n: usize,
    /// `sup ‖T_{x,y}‖ · (n² + 1)`.
    pub bound: f64,
    pub holds: bool,
}

/// Exact `‖T_p‖` against `sup ‖T_{x,y}‖ · (n(supp T)² + 1)`.
pub fn matrix_rep_norm_bound<S: Scalar>(t: &ControlledMatrix<S>, p: f64) -> Result<NormBound> {
    if !(p == 1.0 || p == 2.0 || p == f64::INFINITY) {
        return Err(Error::UnsupportedP(p.to_string()));
    }
    let exact = operator_norm(&t.to_operator(p), p)?;
    let mut sup = NormValue::zero();
    for b in t.blocks.values() {
        sup = sup.max(operator_norm(&RepMatrix::from_rows(b.clone(), p), p)?);
    }
    let n = n_of(&t.support());
    let bound = sup.value * ((n * n + 1) as f64);
    let holds = exact.value <= bound * (1.0 + 1e-9) + 1e-12;
    Ok(NormBound {
        p,
        exact,
        sup_block: sup,
        n,
        bound,
        holds,
    })
}
