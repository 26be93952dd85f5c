//! Flat bundle data `A = Σ_i e^i ⊗ A_i` with a constant Hermitian metric,
//! and the twisted complexes it defines over a Sasakian model.

use std::sync::Arc;

use num_traits::Zero;
use sasaki_core::complex::CochainComplex;
use sasaki_core::{Error, GaussianRational as Q, Matrix, Result};
use sasaki_model::{BasicComplex, BigradingConvention, CeAlgebra, FormBundle, Metric, SasakianLieDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatBundleDatum {
    rank: usize,
    /// `connection[i]` is the coefficient matrix of `e^i`.
    connection: Vec<Matrix>,
    metric: Matrix,
}

impl FlatBundleDatum {
    pub fn new(connection: Vec<Matrix>, metric: Matrix) -> Result<Self> {
        let rank = metric.rows();
        if !metric.is_square() || connection.iter().any(|a| a.shape() != (rank, rank)) {
            return Err(Error::Dimension(format!("connection coefficients must be {rank}x{rank}")));
        }
        Ok(FlatBundleDatum { rank, connection, metric })
    }

    /// `A = diag(α_1, …, α_m)` with one-forms given by coefficient vectors.
    pub fn diagonal(forms: &[Vec<Q>], metric: Option<Matrix>) -> Result<Self> {
        let m = forms.len();
        if m == 0 {
            return Err(Error::InvalidBundle("rank must be positive".into()));
        }
        let n = forms[0].len();
        if forms.iter().any(|f| f.len() != n) {
            return Err(Error::Dimension("diagonal one-forms of different lengths".into()));
        }
        let connection = (0..n)
            .map(|i| {
                let mut a = Matrix::zeros(m, m);
                for (j, f) in forms.iter().enumerate() {
                    a[(j, j)] = f[i].clone();
                }
                a
            })
            .collect();
        Self::new(connection, metric.unwrap_or_else(|| Matrix::identity(m)))
    }

    pub fn trivial(dim: usize, rank: usize) -> Self {
        Self::new(vec![Matrix::zeros(rank, rank); dim], Matrix::identity(rank)).expect("shapes")
    }

    /// Rank-one bundle `A = c · e^i`.
    pub fn character(dim: usize, i: usize, c: Q) -> Self {
        let mut f = vec![Q::zero(); dim];
        f[i] = c;
        Self::diagonal(&[f], None).expect("shapes")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn connection(&self) -> &[Matrix] {
        &self.connection
    }

    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    pub fn is_diagonal(&self) -> bool {
        self.connection
            .iter()
            .all(|a| (0..self.rank).all(|i| (0..self.rank).all(|j| i == j || a[(i, j)].is_zero())))
    }

    /// `A_End = [A, ·]` with the induced metric on `End(E)`.
    pub fn endomorphisms(&self) -> Self {
        let id = Matrix::identity(self.rank);
        let connection = self.connection.iter().map(|a| &a.kron(&id) - &id.kron(&a.transpose())).collect();
        let h_inv = self.metric.inverse().expect("metric is invertible");
        Self::new(connection, self.metric.kron(&h_inv.transpose())).expect("shapes")
    }

    /// `E ⊗ E′` with the product connection and metric.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.connection.len() != other.connection.len() {
            return Err(Error::Dimension("bundles over different algebras".into()));
        }
        let (i1, i2) = (Matrix::identity(self.rank), Matrix::identity(other.rank));
        let connection =
            self.connection.iter().zip(&other.connection).map(|(a, b)| &a.kron(&i2) + &i1.kron(b)).collect();
        Self::new(connection, self.metric.kron(&other.metric))
    }

    /// `A^{*h} = h⁻¹ A_iᴴ h` coefficientwise.
    pub fn h_adjoint(&self, coeffs: &[Matrix]) -> Vec<Matrix> {
        let h_inv = self.metric.inverse().expect("metric is invertible");
        coeffs.iter().map(|a| &(&h_inv * &a.adjoint()) * &self.metric).collect()
    }

    /// `φ = (A + A^{*h})/2`.
    pub fn self_adjoint_part(&self) -> Vec<Matrix> {
        let half = Q::from_ratio(1, 2);
        self.connection
            .iter()
            .zip(self.h_adjoint(&self.connection))
            .map(|(a, b)| (a + &b).scale(&half))
            .collect()
    }
}

/// Evaluates an endomorphism-valued one-form on a vector.
pub fn evaluate(form: &[Matrix], x: &[Q]) -> Matrix {
    let m = form[0].rows();
    form.iter()
        .zip(x)
        .filter(|(_, c)| !c.is_zero())
        .fold(Matrix::zeros(m, m), |acc, (a, c)| &acc + &a.scale(c))
}

/// A flat bundle attached to a Sasakian model, with its basic complex.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    datum: SasakianLieDatum,
    bundle: FlatBundleDatum,
    forms: Arc<FormBundle>,
    basic: BasicComplex,
}

pub fn attach_bundle(datum: &SasakianLieDatum, fb: &FlatBundleDatum) -> Result<TwistedComplex> {
    attach_bundle_with(datum, fb, BigradingConvention::Annihilator)
}

pub fn attach_bundle_with(
    datum: &SasakianLieDatum,
    fb: &FlatBundleDatum,
    convention: BigradingConvention,
) -> Result<TwistedComplex> {
    if fb.connection.len() != datum.dim() {
        return Err(Error::Dimension(format!(
            "bundle has {} connection coefficients, algebra has dimension {}",
            fb.connection.len(),
            datum.dim()
        )));
    }
    let ce = Arc::new(CeAlgebra::new(datum));
    let metric = Arc::new(Metric::new(&ce)?);
    let forms = FormBundle::new(ce, metric, fb.connection.clone(), fb.metric.clone())?;
    let mut problems = Vec::new();
    if let Some(k) = forms.curvature_violation() {
        problems.push(format!("connection is not flat (D∘D ≠ 0 on degree {k})"));
    }
    let phi_xi = evaluate(&fb.self_adjoint_part(), datum.xi());
    if !phi_xi.is_zero() {
        problems.push("φ(ξ) ≠ 0".to_string());
    }
    if !problems.is_empty() {
        return Err(Error::InvalidBundle(problems.join("; ")));
    }
    let forms = Arc::new(forms);
    let basic = BasicComplex::new(forms.clone(), convention)?;
    Ok(TwistedComplex { datum: datum.clone(), bundle: fb.clone(), forms, basic })
}

impl TwistedComplex {
    pub fn datum(&self) -> &SasakianLieDatum {
        &self.datum
    }

    pub fn bundle(&self) -> &FlatBundleDatum {
        &self.bundle
    }

    pub fn forms(&self) -> &FormBundle {
        &self.forms
    }

    pub fn basic(&self) -> &BasicComplex {
        &self.basic
    }

    pub fn basic_complex(&self) -> CochainComplex {
        self.basic.complex()
    }

    /// Twisted Chevalley–Eilenberg complex of the whole algebra.
    pub fn full_complex(&self) -> CochainComplex {
        self.forms.complex()
    }

    /// The same bundle data over the opposite bigrading convention.
    pub fn with_convention(&self, convention: BigradingConvention) -> Result<TwistedComplex> {
        attach_bundle_with(&self.datum, &self.bundle, convention)
    }

    /// `End(E)` attached to the same model.
    pub fn endomorphism_complex(&self) -> Result<TwistedComplex> {
        attach_bundle_with(&self.datum, &self.bundle.endomorphisms(), self.basic.convention())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        v[i] = Q::from(1);
        v
    }

    #[test]
    fn trivial_rank_one_is_basic_complex() {
        let h5 = SasakianLieDatum::heisenberg(2);
        let tc = attach_bundle(&h5, &FlatBundleDatum::trivial(5, 1)).unwrap();
        assert_eq!(tc.basic().dims(), vec![1, 4, 6, 4, 1]);
        assert!(tc.basic().d().is_zero());
    }

    #[test]
    fn closed_character_accepted() {
        let h5 = SasakianLieDatum::heisenberg(2);
        for c in [Q::from(3), Q::i(), Q::from(1) + Q::i() * Q::from(2)] {
            assert!(attach_bundle(&h5, &FlatBundleDatum::character(5, 1, c)).is_ok());
        }
    }

    #[test]
    fn eta_character_rejected() {
        let h5 = SasakianLieDatum::heisenberg(2);
        let err = attach_bundle(&h5, &FlatBundleDatum::character(5, 0, Q::from(1))).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("not flat") && msg.contains("φ(ξ)"), "{msg}");
        // imaginary c: φ(ξ) = 0 but still not flat
        let err = attach_bundle(&h5, &FlatBundleDatum::character(5, 0, Q::i())).unwrap_err();
        assert!(err.to_string().contains("not flat"));
    }

    #[test]
    fn endomorphism_bundle_of_line_bundle_is_trivial() {
        let fb = FlatBundleDatum::character(5, 1, Q::from(2));
        let end = fb.endomorphisms();
        assert!(end.connection().iter().all(Matrix::is_zero));
        assert_eq!(end.rank(), 1);
        let _ = unit(5, 0);
    }

    #[test]
    fn tensor_of_characters_adds_forms() {
        let a = FlatBundleDatum::character(7, 1, Q::from(1));
        let b = FlatBundleDatum::character(7, 3, Q::from(2));
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.connection()[1][(0, 0)], Q::from(1));
        assert_eq!(t.connection()[3][(0, 0)], Q::from(2));
    }
}
