//! Invariant forms with values in `ℂ^m`, twisted by a connection
//! `A = Σ_i e^i ⊗ A_i`: `D = d ⊗ 1 + Σ_i (e^i ∧) ⊗ A_i`.
//!
//! Ambient coordinates in degree `k` are `monomial * m + fiber`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Signed;
use sasaki_core::complex::{CochainComplex, GradedVectorSpace};
use sasaki_core::operator::GradedOperator;
use sasaki_core::{Error, GaussianRational as Q, Matrix, Result};

use crate::ce::CeAlgebra;
use crate::metric::Metric;

#[derive(Clone, Debug)]
pub struct FormBundle {
    ce: Arc<CeAlgebra>,
    metric: Arc<Metric>,
    rank: usize,
    /// `connection[i]` is the `m × m` coefficient of `e^i`.
    connection: Vec<Matrix>,
    fiber_metric: Matrix,
    d: Vec<Matrix>,
}

impl FormBundle {
    pub fn new(
        ce: Arc<CeAlgebra>,
        metric: Arc<Metric>,
        connection: Vec<Matrix>,
        fiber_metric: Matrix,
    ) -> Result<Self> {
        let n = ce.dim();
        let rank = fiber_metric.rows();
        if connection.len() != n {
            return Err(Error::Dimension(format!("connection needs {n} coefficient matrices")));
        }
        if connection.iter().any(|a| a.shape() != (rank, rank)) || !fiber_metric.is_square() {
            return Err(Error::Dimension(format!("connection coefficients must be {rank}x{rank}")));
        }
        if !fiber_metric.is_hermitian() {
            return Err(Error::InvalidBundle("fiber metric is not Hermitian".into()));
        }
        if fiber_metric.leading_principal_minors().iter().any(|m| !(m.is_real() && m.re().is_positive())) {
            return Err(Error::InvalidBundle("fiber metric is not positive definite".into()));
        }
        let ext = ce.exterior();
        let id = Matrix::identity(rank);
        let d = (0..=n)
            .map(|k| {
                let mut m = ce.d(k).kron(&id);
                if k < n {
                    for (i, a) in connection.iter().enumerate() {
                        if !a.is_zero() {
                            let w = ext.left_multiplication(1, &ce.generator(i), k);
                            m = &m + &w.kron(a);
                        }
                    }
                }
                m
            })
            .collect();
        Ok(FormBundle { ce, metric, rank, connection, fiber_metric, d })
    }

    pub fn trivial(ce: Arc<CeAlgebra>, metric: Arc<Metric>, rank: usize) -> Self {
        let n = ce.dim();
        Self::new(ce, metric, vec![Matrix::zeros(rank, rank); n], Matrix::identity(rank))
            .expect("trivial bundle is well-formed")
    }

    pub fn ce(&self) -> &CeAlgebra {
        &self.ce
    }

    pub fn ce_arc(&self) -> Arc<CeAlgebra> {
        self.ce.clone()
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn metric_arc(&self) -> Arc<Metric> {
        self.metric.clone()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn connection(&self) -> &[Matrix] {
        &self.connection
    }

    pub fn fiber_metric(&self) -> &Matrix {
        &self.fiber_metric
    }

    pub fn top(&self) -> usize {
        self.ce.dim()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.ce.exterior().dim(k) * self.rank
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top()).map(|k| self.dim(k)).collect()
    }

    /// `D_k : Λ^k ⊗ ℂ^m → Λ^{k+1} ⊗ ℂ^m`.
    pub fn d(&self, k: usize) -> &Matrix {
        &self.d[k]
    }

    pub fn d_operator(&self) -> GradedOperator {
        GradedOperator::from_fn(&self.dims(), 1, |k| self.d[k].clone()).expect("shapes")
    }

    pub fn complex(&self) -> CochainComplex {
        let spaces = GradedVectorSpace::new((0..=self.top()).map(|k| (k as i32, self.dim(k))));
        let diffs: BTreeMap<i32, Matrix> = (0..self.top()).map(|k| (k as i32, self.d[k].clone())).collect();
        CochainComplex::new_unchecked(spaces, diffs).expect("shapes match")
    }

    /// First degree with `D_{k+1} D_k ≠ 0`; `None` means the connection is flat.
    pub fn curvature_violation(&self) -> Option<usize> {
        (0..self.top()).find(|&k| !(&self.d[k + 1] * &self.d[k]).is_zero())
    }

    /// A scalar operator on forms, acting on each fiber coordinate.
    pub fn lift(&self, op: &Matrix) -> Matrix {
        op.kron(&Matrix::identity(self.rank))
    }

    pub fn interior(&self, x: &[Q], k: usize) -> Matrix {
        self.lift(&self.ce.interior(x, k))
    }

    /// `D_X = i_X D + D i_X`.
    pub fn covariant_lie(&self, x: &[Q], k: usize) -> Matrix {
        let mut m = &self.interior(x, k + 1) * &self.d[k];
        if k > 0 {
            m = &m + &(&self.d[k - 1] * &self.interior(x, k));
        }
        m
    }

    /// `ω ↦ α ∧ ω` for a scalar form `α ∈ Λ^p`.
    pub fn wedge_scalar(&self, p: usize, alpha: &[Q], k: usize) -> Matrix {
        self.lift(&self.ce.exterior().left_multiplication(p, alpha, k))
    }

    /// `ω ↦ B ∧ ω` for an endomorphism-valued one-form `B = Σ_i e^i ⊗ B_i`.
    pub fn wedge_endomorphism_form(&self, b: &[Matrix], k: usize) -> Matrix {
        let ext = self.ce.exterior();
        let mut m = Matrix::zeros(self.dim(k + 1), self.dim(k));
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                m = &m + &ext.left_multiplication(1, &self.ce.generator(i), k).kron(bi);
            }
        }
        m
    }

    /// Gram matrix of `g ⊗ h` on `Λ^k ⊗ ℂ^m`.
    pub fn gram(&self, k: usize) -> Matrix {
        self.metric.gram(k).kron(&self.fiber_metric)
    }

    /// `∗ ⊗ 1`.
    pub fn star(&self, k: usize) -> Matrix {
        self.lift(self.metric.star(k))
    }

    /// `⋆_ξ ⊗ 1` on the ambient `Λ^k ⊗ ℂ^m`.
    pub fn star_xi(&self, k: usize) -> Matrix {
        self.lift(&self.metric.star_xi(&self.ce, k))
    }

    /// Gram-adjoint of `D` on the full complex.
    pub fn d_adjoint(&self) -> GradedOperator {
        let dims = self.dims();
        let gram: Vec<Matrix> = (0..dims.len()).map(|k| self.gram(k)).collect();
        let inv: Vec<Matrix> = gram.iter().map(|g| g.inverse().expect("positive")).collect();
        self.d_operator().gram_adjoint(&gram, &inv)
    }
}
