use serde::Serialize;

use super::{ConvElement, TwoCocycle};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::linalg;
use crate::scalar::{NormValue, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepIndex {
    Arrows,
    Units,
}

/// A square matrix representing an element. `p` records the ℓ^p space the
/// matrix acts on (`f64::INFINITY` for ∞); the entries do not depend on it.
#[derive(Debug, Clone, PartialEq)]
pub struct RepMatrix<S> {
    pub index: RepIndex,
    /// Row/column labels, arrow or unit ids.
    pub ids: Vec<usize>,
    pub rows: Vec<Vec<S>>,
    pub p: f64,
}

impl<S: Scalar> RepMatrix<S> {
    pub fn dim(&self) -> usize {
        self.ids.len()
    }

    pub fn identity(n: usize, p: f64) -> Self {
        RepMatrix {
            index: RepIndex::Arrows,
            ids: (0..n).collect(),
            rows: (0..n)
                .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
                .collect(),
            p,
        }
    }

    pub fn from_rows(rows: Vec<Vec<S>>, p: f64) -> Self {
        RepMatrix {
            index: RepIndex::Arrows,
            ids: (0..rows.len()).collect(),
            rows,
            p,
        }
    }

    pub fn matmul(&self, o: &RepMatrix<S>) -> RepMatrix<S> {
        let n = self.dim();
        let mut rows = vec![vec![S::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.rows[k][j];
                    if !b.is_zero() {
                        row[j] = row[j].add(&a.mul(b));
                    }
                }
            }
        }
        RepMatrix {
            index: self.index,
            ids: self.ids.clone(),
            rows,
            p: self.p,
        }
    }

    pub fn approx_eq(&self, o: &RepMatrix<S>) -> bool {
        self.rows.len() == o.rows.len()
            && self
                .rows
                .iter()
                .zip(&o.rows)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x.approx_eq(y)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_zero())
    }
}

/// Λ_p(f): `A[γ, γ''] = σ(γγ''⁻¹, γ'') f(γγ''⁻¹)` when `d(γ) = d(γ'')`.
pub fn regular_rep<S: Scalar>(
    g: &FiniteGroupoid,
    f: &ConvElement<S>,
    s: &TwoCocycle<S>,
    p: f64,
) -> Result<RepMatrix<S>> {
    if !f.belongs_to(g) {
        return Err(Error::GroupoidMismatch);
    }
    let n = g.len();
    let mut rows = vec![vec![S::zero(); n]; n];
    for (c, row) in rows.iter_mut().enumerate() {
        for b in 0..n {
            if g.d(c) != g.d(b) {
                continue;
            }
            let a = g.mul(c, g.inv(b)).expect("composable");
            let v = &f.coeffs[a];
            if !v.is_zero() {
                row[b] = s.sigma(a, b).mul(v);
            }
        }
    }
    Ok(RepMatrix {
        index: RepIndex::Arrows,
        ids: (0..n).collect(),
        rows,
        p,
    })
}

/// Reads `f` back from Λ(f): `f(γ) = A[γ, d(γ)]`.
pub fn j_readback<S: Scalar>(g: &FiniteGroupoid, m: &RepMatrix<S>) -> ConvElement<S> {
    ConvElement::from_fn(g, |a| m.rows[a][g.d(a)].clone())
}

/// Λ^tr_p(f) on ℓ^p(X): `B[x, y] = Σ_{r(γ)=x, d(γ)=y} f(γ)`. Untwisted only.
pub fn trivial_rep<S: Scalar>(
    g: &FiniteGroupoid,
    f: &ConvElement<S>,
    s: &TwoCocycle<S>,
    p: f64,
) -> Result<RepMatrix<S>> {
    if !s.is_trivial() {
        return Err(Error::Twisted);
    }
    if !f.belongs_to(g) {
        return Err(Error::GroupoidMismatch);
    }
    let units = g.units();
    let pos = |x: usize| units.binary_search(&x).expect("unit");
    let k = units.len();
    let mut rows = vec![vec![S::zero(); k]; k];
    for a in 0..g.len() {
        let (i, j) = (pos(g.r(a)), pos(g.d(a)));
        rows[i][j] = rows[i][j].add(&f.coeffs[a]);
    }
    Ok(RepMatrix {
        index: RepIndex::Units,
        ids: units,
        rows,
        p,
    })
}

/// Exact ℓ¹ and ℓ^∞ operator norms (max column / row absolute sum); ℓ² by SVD.
pub fn operator_norm<S: Scalar>(m: &RepMatrix<S>, p: f64) -> Result<NormValue> {
    let n = m.dim();
    if p == 1.0 {
        Ok((0..n).fold(NormValue::zero(), |acc, j| {
            acc.max(NormValue::abs_sum(m.rows.iter().map(|r| &r[j])))
        }))
    } else if p == f64::INFINITY {
        Ok(m.rows
            .iter()
            .fold(NormValue::zero(), |acc, r| acc.max(NormValue::abs_sum(r.iter()))))
    } else if p == 2.0 {
        let c: Vec<Vec<_>> = m.rows.iter().map(|r| r.iter().map(|x| x.to_c64()).collect()).collect();
        Ok(NormValue::float(linalg::spectral_norm(&c, n)))
    } else {
        Err(Error::UnsupportedP(p.to_string()))
    }
}

/// `‖f‖_{*d}^{1/p} ‖f‖_{*r}^{1/q}`, with `1/p + 1/q = 1`.
pub fn lp_norm_bound<S: Scalar>(g: &FiniteGroupoid, f: &ConvElement<S>, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::UnsupportedP(p.to_string()));
    }
    let d = super::norm(g, f, super::NormKind::StarD).value;
    let r = super::norm(g, f, super::NormKind::StarR).value;
    let inv_p = if p == f64::INFINITY { 0.0 } else { 1.0 / p };
    let inv_q = 1.0 - inv_p;
    let pw = |x: f64, e: f64| if e == 0.0 { 1.0 } else { x.powf(e) };
    Ok(pw(d, inv_p) * pw(r, inv_q))
}
