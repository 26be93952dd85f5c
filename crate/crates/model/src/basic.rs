//! Basic forms `i_ξ ω = 0 = D_ξ ω` with their `(p, q)` bigrading, Gram
//! matrices, and restriction of ambient operators.

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use sasaki_core::complex::{CochainComplex, GradedVectorSpace};
use sasaki_core::operator::GradedOperator;
use sasaki_core::{Error, GaussianRational as Q, Matrix, Result, Subspace};

use crate::forms::FormBundle;

/// Which eigenspace of `α ↦ α ∘ I` is called `(1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BigradingConvention {
    /// `(1, 0)`-forms annihilate `T^{0,1}`: `α ∘ I = iα`, e.g. `e^1 + i e^2` on h3.
    #[default]
    Annihilator,
    /// `(1, 0)`-forms are metric duals `g(Z, ·)` of `Z ∈ T^{1,0}`: `α ∘ I = −iα`.
    MetricDual,
}

impl BigradingConvention {
    pub fn name(self) -> &'static str {
        match self {
            BigradingConvention::Annihilator => "annihilator",
            BigradingConvention::MetricDual => "metric-dual",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidegreeBlock {
    pub p: usize,
    pub q: usize,
    pub columns: Range<usize>,
}

#[derive(Clone, Debug)]
pub struct BasicComplex {
    bundle: Arc<FormBundle>,
    convention: BigradingConvention,
    n: usize,
    /// Real basic subspaces of the ambient forms, degrees `0..=N`.
    basic_subspaces: Vec<Subspace>,
    /// Ambient basis of `A^k_B`, columns grouped by bidegree, `k = 0..=2n`.
    basis: Vec<Matrix>,
    coords: Vec<Matrix>,
    blocks: Vec<Vec<BidegreeBlock>>,
    gram: Vec<Matrix>,
    gram_inv: Vec<Matrix>,
    d: GradedOperator,
    /// Scalar one-forms of type `(1,0)` and `(0,1)`.
    v10: Subspace,
    v01: Subspace,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(s: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in s..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl BasicComplex {
    pub fn new(bundle: Arc<FormBundle>, convention: BigradingConvention) -> Result<Self> {
        let ce = bundle.ce();
        let datum = ce.datum();
        let report = datum.validate();
        if let Some(f) = report.first_failure() {
            return Err(Error::Precondition(format!(
                "datum {} fails axiom {}: {}",
                datum.name(),
                f.name,
                f.witness.clone().unwrap_or_default()
            )));
        }
        let top = bundle.top();
        let n = datum.n();
        let xi = datum.xi().to_vec();
        let basic_subspaces: Vec<Subspace> = (0..=top)
            .map(|k| {
                let stacked = bundle.interior(&xi, k).vstack(&bundle.covariant_lie(&xi, k));
                Subspace::kernel(&stacked)
            })
            .collect();

        // (1,0) and (0,1) one-forms
        let it = datum.cplx().transpose();
        let eig = match convention {
            BigradingConvention::Annihilator => Q::i(),
            BigradingConvention::MetricDual => -Q::i(),
        };
        let v10 = Subspace::kernel(&(&it - &Matrix::scalar(top, &eig)));
        let v01 = v10.conj();
        if v10.dim() != n || v01.dim() != n {
            return Err(Error::InvalidDatum("eigenspaces of I have the wrong dimension".into()));
        }
        let ext = ce.exterior();
        let (c10, c01) = (v10.basis().columns(), v01.basis().columns());
        let fiber = Matrix::identity(bundle.rank());

        let mut basis = Vec::new();
        let mut blocks = Vec::new();
        for k in 0..=2 * n {
            let mut cols: Vec<Matrix> = Vec::new();
            let mut blk = Vec::new();
            let mut offset = 0;
            for p in (0..=k).rev() {
                let q = k - p;
                if p > n || q > n {
                    continue;
                }
                let mut wedges = Vec::new();
                for sp in subsets(n, p) {
                    for sq in subsets(n, q) {
                        let mut v = ext.monomial_vector(0);
                        let mut deg = 0;
                        for &a in &sp {
                            v = ext.wedge(deg, &v, 1, &c10[a]);
                            deg += 1;
                        }
                        for &b in &sq {
                            v = ext.wedge(deg, &v, 1, &c01[b]);
                            deg += 1;
                        }
                        wedges.push(v);
                    }
                }
                let lam = Matrix::from_columns(ext.dim(k), &wedges).kron(&fiber);
                let apq = Subspace::span(&lam).intersect(&basic_subspaces[k])?;
                blk.push(BidegreeBlock { p, q, columns: offset..offset + apq.dim() });
                offset += apq.dim();
                cols.push(apq.basis().clone());
            }
            if offset != basic_subspaces[k].dim() {
                return Err(Error::Inconsistent(format!(
                    "bigraded pieces of degree {k} have total dimension {offset}, basic forms {}",
                    basic_subspaces[k].dim()
                )));
            }
            let b = cols.iter().fold(Matrix::zeros(bundle.dim(k), 0), |acc, c| acc.hstack(c));
            basis.push(b);
            blocks.push(blk);
        }
        let coords: Vec<Matrix> = basis.iter().map(|b| b.left_inverse()).collect::<Result<Vec<_>>>()?;
        let gram: Vec<Matrix> =
            (0..=2 * n).map(|k| &(&basis[k].adjoint() * &bundle.gram(k)) * &basis[k]).collect();
        let gram_inv = gram.iter().map(Matrix::inverse).collect::<Result<Vec<_>>>()?;
        let dims: Vec<usize> = basis.iter().map(Matrix::cols).collect();
        let mut bc = BasicComplex {
            bundle: bundle.clone(),
            convention,
            n,
            basic_subspaces,
            basis,
            coords,
            blocks,
            gram,
            gram_inv,
            d: GradedOperator::zero(&dims, 1),
            v10,
            v01,
        };
        bc.d = bc
            .restrict(1, |k| bundle.d(k).clone())
            .map_err(|e| Error::Inconsistent(format!("D does not preserve basic forms: {e}")))?;
        Ok(bc)
    }

    pub fn bundle(&self) -> &FormBundle {
        &self.bundle
    }

    pub fn bundle_arc(&self) -> Arc<FormBundle> {
        self.bundle.clone()
    }

    pub fn convention(&self) -> BigradingConvention {
        self.convention
    }

    /// Transverse complex dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top(&self) -> usize {
        2 * self.n
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Matrix::cols).collect()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis.get(k).map_or(0, Matrix::cols)
    }

    /// Basic subspace of the ambient forms of degree `k` (any `k ≤ N`).
    pub fn basic_subspace(&self, k: usize) -> &Subspace {
        &self.basic_subspaces[k]
    }

    /// Ambient basis of `A^k_B`, columns ordered by bidegree blocks.
    pub fn basis(&self, k: usize) -> &Matrix {
        &self.basis[k]
    }

    /// Left inverse of [`Self::basis`]: ambient vector ↦ basic coordinates.
    pub fn coords(&self, k: usize) -> &Matrix {
        &self.coords[k]
    }

    pub fn blocks(&self, k: usize) -> &[BidegreeBlock] {
        &self.blocks[k]
    }

    pub fn bidegree_dim(&self, p: usize, q: usize) -> usize {
        self.blocks
            .get(p + q)
            .and_then(|b| b.iter().find(|x| x.p == p && x.q == q))
            .map_or(0, |b| b.columns.len())
    }

    pub fn gram(&self) -> &[Matrix] {
        &self.gram
    }

    pub fn gram_inv(&self) -> &[Matrix] {
        &self.gram_inv
    }

    pub fn d(&self) -> &GradedOperator {
        &self.d
    }

    pub fn complex(&self) -> CochainComplex {
        let spaces = GradedVectorSpace::new(self.dims().into_iter().enumerate().map(|(k, d)| (k as i32, d)));
        let diffs: BTreeMap<i32, Matrix> =
            (0..self.top()).map(|k| (k as i32, self.d.block(k).clone())).collect();
        CochainComplex::new_unchecked(spaces, diffs).expect("shapes match")
    }

    /// Restricts ambient operators `op(k) : Λ^k ⊗ ℂ^m → Λ^{k+shift} ⊗ ℂ^m`
    /// to basic forms; fails if some basic form is sent outside the basic forms.
    pub fn restrict(&self, shift: i32, op: impl Fn(usize) -> Matrix) -> Result<GradedOperator> {
        let dims = self.dims();
        let top = self.top() as i32;
        let mut err = None;
        let g = GradedOperator::from_fn(&dims, shift, |k| {
            let t = k as i32 + shift;
            if t < 0 || t > top {
                return Matrix::zeros(0, dims[k]);
            }
            let image = &op(k) * &self.basis[k];
            let c = &self.coords[t as usize] * &image;
            if &self.basis[t as usize] * &c != image {
                err.get_or_insert(k);
            }
            c
        })?;
        match err {
            Some(k) => Err(Error::NotContained(format!(
                "operator of degree {shift} leaves basic forms from degree {k}"
            ))),
            None => Ok(g),
        }
    }

    /// Ambient operator between arbitrary degrees (`k ↦ target(k)`), restricted.
    pub fn restrict_to(&self, k: usize, target: usize, op: &Matrix) -> Result<Matrix> {
        let image = op * &self.basis[k];
        let c = &self.coords[target] * &image;
        if &self.basis[target] * &c != image {
            return Err(Error::NotContained(format!(
                "operator leaves basic forms from degree {k} to {target}"
            )));
        }
        Ok(c)
    }

    /// Projector onto `A^{p,q}` as a degree-zero operator.
    pub fn projector(&self, p: usize, q: usize) -> GradedOperator {
        let dims = self.dims();
        GradedOperator::from_fn(&dims, 0, |k| {
            let mut m = Matrix::zeros(dims[k], dims[k]);
            if p + q == k {
                if let Some(b) = self.blocks[k].iter().find(|b| b.p == p && b.q == q) {
                    for c in b.columns.clone() {
                        m[(c, c)] = Q::from(1);
                    }
                }
            }
            m
        })
        .expect("square blocks")
    }

    /// Component of bidegree `(dp, dq)` of an operator of degree `dp + dq`:
    /// `Σ_{p,q} P^{p+dp, q+dq} ∘ op ∘ P^{p,q}`.
    pub fn bidegree_part(&self, op: &GradedOperator, dp: i32, dq: i32) -> GradedOperator {
        assert_eq!(op.shift(), dp + dq, "bidegree must add up to the operator degree");
        let dims = self.dims();
        GradedOperator::from_fn(&dims, op.shift(), |k| {
            let t = (k as i32 + op.shift()) as usize;
            let mut m = Matrix::zeros(dims[t], dims[k]);
            for src in &self.blocks[k] {
                let (tp, tq) = (src.p as i32 + dp, src.q as i32 + dq);
                if tp < 0 || tq < 0 {
                    continue;
                }
                if let Some(dst) = self.blocks[t].iter().find(|b| b.p as i32 == tp && b.q as i32 == tq) {
                    for i in dst.columns.clone() {
                        for j in src.columns.clone() {
                            m[(i, j)] = op.block(k)[(i, j)].clone();
                        }
                    }
                }
            }
            m
        })
        .expect("shapes")
    }

    /// Splits a scalar one-form as `α(ξ) η + α^{1,0} + α^{0,1}` and returns
    /// the last two.
    pub fn split_one_form(&self, alpha: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let datum = self.bundle.ce().datum();
        let a_xi: Q = alpha.iter().zip(datum.xi()).map(|(a, x)| a * x).sum();
        let transverse: Vec<Q> = alpha.iter().zip(datum.eta()).map(|(a, e)| a - &(&a_xi * e)).collect();
        let basis = self.v10.basis().hstack(self.v01.basis());
        let c = basis
            .solve(&Matrix::column_vector(&transverse))
            .expect("(1,0) and (0,1) forms span the annihilator of ξ");
        let n = self.v10.dim();
        let part = |r: std::ops::Range<usize>| {
            let sub = basis.select_columns(&r.clone().collect::<Vec<_>>());
            sub.mul_vec(&c.select_rows(&r.collect::<Vec<_>>()).column(0))
        };
        (part(0..n), part(n..2 * n))
    }

    pub fn adjoint(&self, op: &GradedOperator) -> GradedOperator {
        op.gram_adjoint(&self.gram, &self.gram_inv)
    }

    /// Complex conjugation on basic forms, in basic coordinates per degree.
    pub fn conjugation(&self, k: usize) -> Matrix {
        &self.coords[k] * &self.basis[k].conj()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce::CeAlgebra;
    use crate::datum::SasakianLieDatum;
    use crate::metric::Metric;

    fn basic(n: usize) -> BasicComplex {
        let ce = Arc::new(CeAlgebra::new(&SasakianLieDatum::heisenberg(n)));
        let m = Arc::new(Metric::new(&ce).unwrap());
        BasicComplex::new(Arc::new(FormBundle::trivial(ce, m, 1)), BigradingConvention::Annihilator).unwrap()
    }

    #[test]
    fn h3_basic_dims_and_zero_differential() {
        let b = basic(1);
        assert_eq!(b.dims(), vec![1, 2, 1]);
        assert!(b.d().is_zero());
    }

    #[test]
    fn h5_bidegree_dims() {
        let b = basic(2);
        assert_eq!(b.dims(), vec![1, 4, 6, 4, 1]);
        assert_eq!(b.bidegree_dim(2, 0), 1);
        assert_eq!(b.bidegree_dim(1, 1), 4);
        assert_eq!(b.bidegree_dim(0, 2), 1);
    }

    #[test]
    fn h3_one_zero_form() {
        let b = basic(1);
        let blk = &b.blocks(1)[0];
        assert_eq!((blk.p, blk.q), (1, 0));
        let v = b.basis(1).column(blk.columns.start);
        // proportional to e^1 + i e^2 (coordinates e^0, e^1, e^2)
        assert_eq!(&v[2], &(&v[1] * &Q::i()));
        assert!(v[0] == Q::from(0));
    }

    #[test]
    fn abelian_datum_refused() {
        let d = SasakianLieDatum::abelian(1);
        let ce = Arc::new(CeAlgebra::new(&d));
        // metric construction already refuses; the basic complex checks too
        assert!(Metric::new(&ce).is_err());
    }
}
