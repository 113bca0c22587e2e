//! Exact and floating-point linear algebra over a [`Scalar`].

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::scalar::{Scalar, C64};

/// Relative rank tolerance for floating-point rank decisions.
pub const RANK_TOL: f64 = 1e-9;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

/// `a - c * b` for sparse vectors.
fn sparse_axpy<S: Scalar>(a: &SparseVec<S>, c: &S, b: &SparseVec<S>, scale: f64) -> SparseVec<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ai = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let bj = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ai < bj {
            out.push(a[i].clone());
            i += 1;
        } else if bj < ai {
            out.push((bj, c.mul(&b[j].1).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&c.mul(&b[j].1));
            if !v.negligible(scale) {
                out.push((ai, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form for sparse vectors, keyed by leading index.
/// Intended for exact scalars.
#[derive(Debug, Clone)]
pub struct SparseEchelon<S> {
    rows: HashMap<usize, SparseVec<S>>,
    scale: f64,
}

impl<S: Scalar> SparseEchelon<S> {
    pub fn new(scale: f64) -> Self {
        SparseEchelon {
            rows: HashMap::new(),
            scale,
        }
    }

    /// Inserts `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, mut v: SparseVec<S>) -> bool {
        v.retain(|(_, x)| !x.negligible(self.scale));
        while let Some((lead, c)) = v.first().cloned() {
            match self.rows.get(&lead) {
                Some(row) => v = sparse_axpy(&v, &c, row, self.scale),
                None => {
                    let inv = c.inv().expect("nonzero pivot");
                    let row: SparseVec<S> = v.into_iter().map(|(k, x)| (k, x.mul(&inv))).collect();
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn to_sparse<S: Scalar>(v: &[S]) -> SparseVec<S> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn max_abs<S: Scalar>(rows: &[Vec<S>]) -> f64 {
    rows.iter()
        .flat_map(|r| r.iter())
        .map(|x| x.abs_f64())
        .fold(0.0, f64::max)
}

/// Reduced row echelon form in place. Returns the pivot columns; rows beyond
/// the rank are removed.
pub fn rref<S: Scalar>(m: &mut Vec<Vec<S>>, ncols: usize) -> Vec<usize> {
    let scale = max_abs(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let mut best = None;
        let mut best_abs = 0.0;
        for (i, row) in m.iter().enumerate().skip(r) {
            let x = &row[c];
            if !x.negligible(scale) {
                let a = x.abs_f64();
                if best.is_none() || (!S::EXACT && a > best_abs) {
                    best = Some(i);
                    best_abs = a;
                    if S::EXACT {
                        break;
                    }
                }
            }
        }
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
            row[c] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Singular values of a dense complex matrix given by rows.
pub fn singular_values(rows: &[Vec<C64>], ncols: usize) -> Vec<f64> {
    if rows.is_empty() || ncols == 0 {
        return Vec::new();
    }
    let m = DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]);
    m.singular_values().iter().copied().collect()
}

/// Spectral norm (largest singular value).
pub fn spectral_norm(rows: &[Vec<C64>], ncols: usize) -> f64 {
    singular_values(rows, ncols).into_iter().fold(0.0, f64::max)
}

/// Rank from singular values with tolerance `RANK_TOL * sigma_max`.
pub fn svd_rank(rows: &[Vec<C64>], ncols: usize) -> usize {
    let sv = singular_values(rows, ncols);
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOL * top).count()
}

/// Rank: exact elimination for exact scalars, SVD otherwise.
pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> usize {
    if S::EXACT {
        let mut m = rows.to_vec();
        rref(&mut m, ncols).len()
    } else {
        let c: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|x| x.to_c64()).collect()).collect();
        svd_rank(&c, ncols)
    }
}

/// Basis of the null space `{x : M x = 0}`.
pub fn nullspace<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut out = Vec::new();
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![S::zero(); ncols];
        v[free] = S::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = m[r][free].neg();
        }
        out.push(v);
    }
    out
}

/// A linear subspace of `S^n`, stored as RREF rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<S> {
    pub ambient: usize,
    pub basis: Vec<Vec<S>>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<S>>) -> Self {
        let mut m: Vec<Vec<S>> = vectors.into_iter().collect();
        rref(&mut m, ambient);
        Subspace { ambient, basis: m }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(
            ambient,
            (0..ambient).map(|i| {
                let mut v = vec![S::zero(); ambient];
                v[i] = S::one();
                v
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        let mut m = self.basis.clone();
        m.push(v.to_vec());
        rref(&mut m, self.ambient).len() == self.dim()
    }

    pub fn contains_subspace(&self, o: &Subspace<S>) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, o: &Subspace<S>) -> bool {
        self.dim() == o.dim() && self.contains_subspace(o)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn push(&mut self, v: Vec<S>) -> bool {
        let before = self.dim();
        self.basis.push(v);
        rref(&mut self.basis, self.ambient);
        self.dim() > before
    }
}
