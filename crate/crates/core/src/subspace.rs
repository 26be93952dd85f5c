//! Subspaces of `ℚ(i)ⁿ` in canonical form.
//!
//! The basis is kept in reduced column echelon form: the transpose of the
//! basis matrix is in reduced row echelon form. Two subspaces are equal iff
//! their canonical bases are equal, and the pivot rows of the basis form an
//! identity block, which gives coordinates without solving a system.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::GaussianRational as Q;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(ambient_dim, 0), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(&Matrix::identity(ambient_dim))
    }

    /// Column span of `m`.
    pub fn span(m: &Matrix) -> Self {
        let (r, pivots) = m.transpose().rref();
        let k = pivots.len();
        let basis = r.submatrix(0..k, 0..m.rows()).transpose();
        Subspace { ambient_dim: m.rows(), basis, pivots }
    }

    pub fn span_vectors(ambient_dim: usize, vs: &[Vec<Q>]) -> Self {
        Self::span(&Matrix::from_columns(ambient_dim, vs))
    }

    /// Kernel of a matrix, as a subspace of its source.
    pub fn kernel(m: &Matrix) -> Self {
        Self::span(&m.kernel_basis())
    }

    /// Column space of a matrix, as a subspace of its target.
    pub fn image(m: &Matrix) -> Self {
        Self::span(m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis, one column per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v ∉ self`.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(v.len(), self.ambient_dim, "coordinate vector length");
        let c: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        if self.basis.mul_vec(&c) == v {
            Some(c)
        } else {
            None
        }
    }

    /// Coordinates of every column of `m`; errors if some column lies outside.
    pub fn coordinates_of(&self, m: &Matrix) -> Result<Matrix> {
        if m.rows() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "{} rows against ambient dimension {}",
                m.rows(),
                self.ambient_dim
            )));
        }
        let c = m.select_rows(&self.pivots);
        if &self.basis * &c != *m {
            return Err(Error::NotContained("columns outside the subspace".into()));
        }
        Ok(c)
    }

    /// Coordinates read off the pivot rows, without a membership check.
    pub fn pivot_projection(&self) -> Matrix {
        let mut p = Matrix::zeros(self.dim(), self.ambient_dim);
        for (i, &r) in self.pivots.iter().enumerate() {
            p[(i, r)] = Q::from(1);
        }
        p
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.ambient_dim == self.ambient_dim && self.coordinates_of(&o.basis).is_ok()
    }

    fn check_ambient(&self, o: &Subspace) -> Result<()> {
        if self.ambient_dim != o.ambient_dim {
            return Err(Error::Dimension(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim, o.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check_ambient(o)?;
        Ok(Subspace::span(&self.basis.hstack(&o.basis)))
    }

    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.check_ambient(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // x = A a = B b  ⇔  [A | -B] (a, b) = 0
        let k = self.basis.hstack(&-&o.basis).kernel_basis();
        let a = k.submatrix(0..self.dim(), 0..k.cols());
        Ok(Subspace::span(&(&self.basis * &a)))
    }

    /// Representatives in `self` of a basis of `self / sub`.
    pub fn quotient_basis(&self, sub: &Subspace) -> Result<Matrix> {
        self.check_ambient(sub)?;
        if !self.contains_subspace(sub) {
            return Err(Error::NotContained("quotient by a subspace that is not contained".into()));
        }
        let mut current = sub.clone();
        let mut reps = Vec::new();
        for j in 0..self.dim() {
            let v = self.basis.column(j);
            if !current.contains(&v) {
                current = current.sum(&Subspace::span_vectors(self.ambient_dim, std::slice::from_ref(&v)))?;
                reps.push(v);
            }
        }
        Ok(Matrix::from_columns(self.ambient_dim, &reps))
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        Subspace::span(&(m * &self.basis))
    }

    /// Complex-conjugate subspace.
    pub fn conj(&self) -> Subspace {
        Subspace::span(&self.basis.conj())
    }
}
