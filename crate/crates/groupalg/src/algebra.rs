//! Finite-dimensional algebras and linear-algebra oracles: ideal generation,
//! the Burnside simplicity test, commutants and idempotent ranks.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::linalg::{self, SparseEchelon, SparseVec, Subspace};
use crate::scalar::{Field, Scalar, C64};
use crate::twisted::TwoCocycle;
use crate::verdict::{ValidationReport, Verdict};

/// Tolerance for `‖e² − e‖` in floating-point mode.
pub const IDEMPOTENT_TOL: f64 = 1e-10;

/// An algebra with basis `e_0..e_{n-1}` and sparse structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDimAlgebra<S> {
    pub labels: Vec<String>,
    pub field: Field,
    products: Vec<Vec<SparseVec<S>>>,
    pub unit: Option<Vec<S>>,
}

impl<S: Scalar> FiniteDimAlgebra<S> {
    /// From dense structure constants `c[i][j][k]`, `e_i e_j = Σ_k c[i][j][k] e_k`.
    pub fn from_structure(
        labels: Vec<String>,
        field: Field,
        c: Vec<Vec<Vec<S>>>,
        unit: Option<Vec<S>>,
    ) -> Result<Self> {
        let n = labels.len();
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Invalid("structure constants have the wrong shape".into()));
        }
        let products = c
            .iter()
            .map(|r| r.iter().map(|v| linalg::to_sparse(v)).collect())
            .collect();
        Ok(FiniteDimAlgebra {
            labels,
            field,
            products,
            unit,
        })
    }

    /// Basis `δ_γ`, `δ_α δ_β = σ(α,β) δ_{αβ}`; unit `1_X`.
    pub fn from_groupoid(g: &FiniteGroupoid, s: &TwoCocycle<S>) -> Self {
        let n = g.len();
        let products = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| match g.mul(a, b) {
                        Some(c) => vec![(c, s.sigma(a, b))],
                        None => Vec::new(),
                    })
                    .collect()
            })
            .collect();
        let unit = Some(
            (0..n)
                .map(|a| if g.is_unit(a) { S::one() } else { S::zero() })
                .collect(),
        );
        FiniteDimAlgebra {
            labels: g.labels().to_vec(),
            field: s.field(),
            products,
            unit,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Converts coefficients to another scalar type.
    pub fn map_scalars<T: Scalar>(&self, field: Field, f: impl Fn(&S) -> T) -> FiniteDimAlgebra<T> {
        FiniteDimAlgebra {
            labels: self.labels.clone(),
            field,
            products: self
                .products
                .iter()
                .map(|r| r.iter().map(|v| v.iter().map(|(k, x)| (*k, f(x))).collect()).collect())
                .collect(),
            unit: self.unit.as_ref().map(|u| u.iter().map(&f).collect()),
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[i] = S::one();
        v
    }

    pub fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let c = x[i].mul(&y[j]);
                for (k, v) in &self.products[i][j] {
                    out[*k] = out[*k].add(&c.mul(v));
                }
            }
        }
        out
    }

    /// Associativity on basis triples and the unit axioms.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..n {
                    let ek = self.basis_vector(k);
                    let jk = self.mul(&self.basis_vector(j), &ek);
                    let l = self.mul(&ij, &ek);
                    let r = self.mul(&self.basis_vector(i), &jk);
                    if !l.iter().zip(&r).all(|(a, b)| a.approx_eq(b)) {
                        rep.push(
                            "associativity",
                            vec![i, j, k],
                            "structure constants are not associative",
                        );
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            for i in 0..n {
                let e = self.basis_vector(i);
                let a = self.mul(u, &e);
                let b = self.mul(&e, u);
                if !a.iter().zip(&e).all(|(x, y)| x.approx_eq(y)) || !b.iter().zip(&e).all(|(x, y)| x.approx_eq(y)) {
                    rep.push("unit", vec![i], "unit axiom fails");
                }
            }
        }
        rep
    }

    /// Least subspace containing `v` and closed under left and right
    /// multiplication by basis elements.
    pub fn generated_ideal(&self, v: &[S]) -> Subspace<S> {
        let n = self.dim();
        let mut sub = Subspace::span(n, vec![v.to_vec()]);
        loop {
            let mut grew = false;
            let current = sub.basis.clone();
            for b in &current {
                for i in 0..n {
                    let e = self.basis_vector(i);
                    for w in [self.mul(&e, b), self.mul(b, &e)] {
                        if sub.dim() < n && sub.push(w) {
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    /// `x ↦ e_i x e_j` as a sparse vector of length n², entry `out * n + in`.
    fn lr_operator(&self, i: usize, j: usize) -> SparseVec<S> {
        let n = self.dim();
        let mut v: Vec<(usize, S)> = Vec::new();
        for k in 0..n {
            for (m, c) in &self.products[i][k] {
                for (o, d) in &self.products[*m][j] {
                    v.push((o * n + k, c.mul(d)));
                }
            }
        }
        v.sort_by_key(|x| x.0);
        let mut out: SparseVec<S> = Vec::with_capacity(v.len());
        for (idx, x) in v {
            match out.last_mut() {
                Some((j, y)) if *j == idx => *y = y.add(&x),
                _ => out.push((idx, x)),
            }
        }
        out.retain(|(_, x)| !x.is_zero());
        out
    }

    /// Dimension of `span{L_{e_i} R_{e_j}}` inside `End(A)`.
    pub fn multiplication_rank(&self) -> usize {
        let n = self.dim();
        if S::EXACT {
            let mut ech = SparseEchelon::new(1.0);
            for i in 0..n {
                for j in 0..n {
                    if ech.rank() == n * n {
                        return ech.rank();
                    }
                    ech.insert(self.lr_operator(i, j));
                }
            }
            ech.rank()
        } else {
            let rows: Vec<Vec<C64>> = (0..n * n)
                .map(|ij| {
                    let mut row = vec![C64::new(0.0, 0.0); n * n];
                    for (k, x) in self.lr_operator(ij / n, ij % n) {
                        row[k] = x.to_c64();
                    }
                    row
                })
                .collect();
            linalg::svd_rank(&rows, n * n)
        }
    }

    fn left_matrix(&self, x: &[S]) -> Vec<Vec<S>> {
        let n = self.dim();
        let cols: Vec<Vec<S>> = (0..n).map(|k| self.mul(x, &self.basis_vector(k))).collect();
        (0..n).map(|i| (0..n).map(|k| cols[k][i].clone()).collect()).collect()
    }

    fn right_matrix(&self, x: &[S]) -> Vec<Vec<S>> {
        let n = self.dim();
        let cols: Vec<Vec<S>> = (0..n).map(|k| self.mul(&self.basis_vector(k), x)).collect();
        (0..n).map(|i| (0..n).map(|k| cols[k][i].clone()).collect()).collect()
    }

    /// Centre of the algebra.
    pub fn centre(&self) -> Subspace<S> {
        self.commutant_unchecked(&Subspace::full(self.dim()))
    }

    fn commutant_unchecked(&self, s: &Subspace<S>) -> Subspace<S> {
        let n = self.dim();
        let mut rows = Vec::new();
        for v in &s.basis {
            let r = self.right_matrix(v);
            let l = self.left_matrix(v);
            for i in 0..n {
                rows.push((0..n).map(|k| r[i][k].sub(&l[i][k])).collect());
            }
        }
        Subspace::span(n, linalg::nullspace(&rows, n))
    }

    pub fn is_abelian_subspace(&self, s: &Subspace<S>) -> bool {
        s.basis.iter().all(|a| {
            s.basis.iter().all(|b| {
                let x = self.mul(a, b);
                let y = self.mul(b, a);
                x.iter().zip(&y).all(|(p, q)| p.approx_eq(q))
            })
        })
    }

    /// `{x : xv = vx for all v ∈ s}`.
    pub fn commutant(&self, s: &Subspace<S>) -> Result<Subspace<S>> {
        if !self.is_abelian_subspace(s) {
            return Err(Error::NotAbelian);
        }
        Ok(self.commutant_unchecked(s))
    }

    pub fn is_maximal_abelian(&self, s: &Subspace<S>) -> Result<bool> {
        Ok(self.commutant(s)?.same_as(s))
    }

    /// Trace-form radical `{x : tr(L_{xy}) = 0 for all y}`; the Jacobson
    /// radical in characteristic zero.
    pub fn trace_radical(&self) -> Subspace<S> {
        let n = self.dim();
        let tr = |x: &[S]| {
            let m = self.left_matrix(x);
            (0..n).fold(S::zero(), |acc, i| acc.add(&m[i][i]))
        };
        let gram: Vec<Vec<S>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| tr(&self.mul(&self.basis_vector(i), &self.basis_vector(j))))
                    .collect()
            })
            .collect();
        Subspace::span(n, linalg::nullspace(&gram, n))
    }

    /// Burnside test: over ℂ a unital algebra is simple iff the operators
    /// `L_{e_i} R_{e_j}` span `End(A)`.
    pub fn is_simple_burnside(&self) -> Result<Verdict<SimplicityCertificate>> {
        if self.field == Field::Real {
            return Err(Error::RealField);
        }
        if self.unit.is_none() {
            return Err(Error::NotUnital);
        }
        let n = self.dim();
        let rank = self.multiplication_rank();
        if rank == n * n {
            return Ok(Verdict::yes_with(SimplicityCertificate {
                dim: n,
                rank,
                ideal: None,
            }));
        }
        let ideal = self.ideal_witness();
        Ok(Verdict::no(SimplicityCertificate { dim: n, rank, ideal }))
    }

    /// Runs the Burnside test on the complexification; the caveat is set when
    /// the field is real.
    pub fn is_simple_complexified(&self) -> Result<(Verdict<SimplicityCertificate>, Option<String>)> {
        let mut c = self.clone();
        let caveat =
            (self.field == Field::Real).then(|| "real algebra: verdict is for the complexification".to_string());
        c.field = Field::Complex;
        Ok((c.is_simple_burnside()?, caveat))
    }

    fn ideal_witness(&self) -> Option<IdealWitness> {
        let n = self.dim();
        let rad = self.trace_radical();
        if rad.dim() > 0 {
            let gen = rad.basis[0].clone();
            let gen_ideal = self.generated_ideal(&gen);
            return Some(IdealWitness {
                method: "radical".into(),
                dim: rad.dim(),
                basis: rad
                    .basis
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_c64()).collect())
                    .collect(),
                generated_dim: gen_ideal.dim(),
                cross_checked: rad.contains_subspace(&gen_ideal) && gen_ideal.dim() > 0,
            });
        }
        let unit = self.unit.clone()?;
        let z = self.centre().basis.into_iter().find(|v| {
            let s = Subspace::span(n, vec![unit.clone()]);
            !s.contains(v)
        })?;
        let ca: FiniteDimAlgebra<C64> = self.map_scalars(Field::Complex, |x| x.to_c64());
        let zc: Vec<C64> = z.iter().map(|x| x.to_c64()).collect();
        let lz = ca.left_matrix(&zc);
        let m = DMatrix::from_fn(n, n, |i, j| lz[i][j]);
        let eig = nalgebra::Schur::try_new(m, 1e-12, 10_000)?.eigenvalues()?;
        let lambda = eig[0];
        let shifted: Vec<Vec<C64>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| lz[i][j] - if i == j { lambda } else { C64::new(0.0, 0.0) })
                    .collect()
            })
            .collect();
        let img = Subspace::span(n, shifted);
        if img.dim() == 0 || img.dim() == n {
            return None;
        }
        let gen_ideal = ca.generated_ideal(&img.basis[0]);
        Some(IdealWitness {
            method: "central_eigenspace".into(),
            dim: img.dim(),
            basis: img.basis.clone(),
            generated_dim: gen_ideal.dim(),
            cross_checked: img.contains_subspace(&gen_ideal) && gen_ideal.dim() > 0 && gen_ideal.dim() < n,
        })
    }

    fn is_idempotent(&self, e: &[S]) -> bool {
        let e2 = self.mul(e, e);
        if S::EXACT {
            e2.iter().zip(e).all(|(a, b)| a.approx_eq(b))
        } else {
            let d: f64 = e2.iter().zip(e).map(|(a, b)| a.sub(b).abs_f64().powi(2)).sum();
            d.sqrt() <= IDEMPOTENT_TOL
        }
    }

    /// `rank(L_x) = dim(xA)`.
    pub fn left_rank(&self, x: &[S]) -> usize {
        linalg::rank(&self.left_matrix(x), self.dim())
    }

    /// An idempotent is infinite when `e ∼ f < e` for some idempotent `f`.
    /// This never happens in finite dimensions: `e ∼ f` gives
    /// `dim eA = dim fA` while `f < e` gives `fA ⊊ eA`. The certificate records
    /// `dim eA` and the ranks of the sub-idempotents found among `e δ_i e` style
    /// candidates, all strictly smaller.
    pub fn is_infinite_idempotent(&self, e: &[S]) -> Result<Verdict<IdempotentCertificate>> {
        if e.len() != self.dim() || !self.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        let rank_e = self.left_rank(e);
        let mut sub = Vec::new();
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            for f in [b.clone(), e.iter().zip(&b).map(|(x, y)| x.sub(y)).collect::<Vec<S>>()] {
                if self.is_idempotent(&f) && self.is_below(&f, e) && !f.iter().zip(e).all(|(a, b)| a.approx_eq(b)) {
                    sub.push(SubIdempotent {
                        element: f.iter().map(|x| x.to_c64()).collect(),
                        rank: self.left_rank(&f),
                    });
                }
            }
        }
        Ok(Verdict::no(IdempotentCertificate {
            rank_e_a: rank_e,
            dim: self.dim(),
            sub_idempotents: sub,
        }))
    }

    /// `f ≤ e`: `ef = fe = f`.
    fn is_below(&self, f: &[S], e: &[S]) -> bool {
        let a = self.mul(e, f);
        let b = self.mul(f, e);
        a.iter().zip(f).all(|(x, y)| x.approx_eq(y)) && b.iter().zip(f).all(|(x, y)| x.approx_eq(y))
    }
}

impl IdempotentCertificate {
    pub fn verify<S: Scalar>(&self, a: &FiniteDimAlgebra<S>, e: &[S]) -> std::result::Result<(), String> {
        if self.dim != a.dim() {
            return Err("dimension mismatch".into());
        }
        let r = a.left_rank(e);
        if r != self.rank_e_a {
            return Err(format!("rank(L_e) recorded {} but is {}", self.rank_e_a, r));
        }
        if self.rank_e_a == 0 && e.iter().any(|x| !x.is_zero()) {
            return Err("non-zero idempotent with rank 0".into());
        }
        for f in &self.sub_idempotents {
            if f.rank >= self.rank_e_a {
                return Err("sub-idempotent without a strict rank drop".into());
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplicityCertificate {
    pub dim: usize,
    /// Dimension of `span{L_{e_i} R_{e_j}}`; simple iff it equals `dim²`.
    pub rank: usize,
    pub ideal: Option<IdealWitness>,
}

/// A proper non-zero ideal, in floating point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdealWitness {
    pub method: String,
    pub dim: usize,
    #[serde(skip)]
    pub basis: Vec<Vec<C64>>,
    /// Dimension of the ideal generated by the first basis vector.
    pub generated_dim: usize,
    pub cross_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubIdempotent {
    #[serde(skip)]
    pub element: Vec<C64>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdempotentCertificate {
    /// `rank(L_e) = dim(eA)`.
    pub rank_e_a: usize,
    pub dim: usize,
    pub sub_idempotents: Vec<SubIdempotent>,
}

/// `span{δ_x : x unit}` inside the groupoid algebra.
pub fn diagonal<S: Scalar>(g: &FiniteGroupoid) -> Subspace<S> {
    let n = g.len();
    Subspace::span(
        n,
        g.units().into_iter().map(|x| {
            let mut v = vec![S::zero(); n];
            v[x] = S::one();
            v
        }),
    )
}
