//! Chevalley–Eilenberg complex `Λ(g*)` of a Lie algebra, with interior
//! products and Lie derivatives.

use std::collections::BTreeMap;

use num_traits::Zero;
use sasaki_core::complex::{CochainComplex, GradedVectorSpace};
use sasaki_core::{GaussianRational as Q, Matrix};

use crate::datum::SasakianLieDatum;
use crate::exterior::ExteriorAlgebra;

#[derive(Clone, Debug)]
pub struct CeAlgebra {
    datum: SasakianLieDatum,
    ext: ExteriorAlgebra,
    /// `d[k] : Λ^k → Λ^{k+1}` for `k = 0..=N`.
    d: Vec<Matrix>,
}

impl CeAlgebra {
    /// `d e^k = −Σ_{i<j} c_{ij}^k e^i ∧ e^j`, extended as a derivation of degree one.
    pub fn new(datum: &SasakianLieDatum) -> Self {
        let n = datum.dim();
        let ext = ExteriorAlgebra::new(n);
        let images: Vec<Vec<Q>> = (0..n)
            .map(|k| {
                ext.masks(2)
                    .iter()
                    .map(|&m| {
                        let i = m.trailing_zeros() as usize;
                        let j = 31 - m.leading_zeros() as usize;
                        -datum.structure_constant(i, j, k).clone()
                    })
                    .collect()
            })
            .collect();
        let d = (0..=n).map(|k| ext.derivation(&images, 1, k)).collect();
        CeAlgebra { datum: datum.clone(), ext, d }
    }

    pub fn datum(&self) -> &SasakianLieDatum {
        &self.datum
    }

    pub fn exterior(&self) -> &ExteriorAlgebra {
        &self.ext
    }

    pub fn dim(&self) -> usize {
        self.datum.dim()
    }

    pub fn d(&self, k: usize) -> &Matrix {
        &self.d[k]
    }

    pub fn complex(&self) -> CochainComplex {
        let n = self.dim();
        let spaces = GradedVectorSpace::new((0..=n).map(|k| (k as i32, self.ext.dim(k))));
        let spaces = (0..=n).fold(spaces, |s, k| s.with_labels(k as i32, self.ext.labels(k)));
        let diffs: BTreeMap<i32, Matrix> = (0..n).map(|k| (k as i32, self.d[k].clone())).collect();
        CochainComplex::new_unchecked(spaces, diffs).expect("shapes match")
    }

    /// First degree with `d_{k+1} d_k ≠ 0`.
    pub fn square_zero_violation(&self) -> Option<usize> {
        (0..self.dim()).find(|&k| !(&self.d[k + 1] * &self.d[k]).is_zero())
    }

    pub fn interior(&self, x: &[Q], k: usize) -> Matrix {
        self.ext.interior(x, k)
    }

    /// Lie derivative as the degree-zero derivation with
    /// `(L_X α)(Y) = −α([X, Y])` on one-forms.
    pub fn lie_derivative(&self, x: &[Q], k: usize) -> Matrix {
        let n = self.dim();
        let images: Vec<Vec<Q>> = (0..n)
            .map(|kk| {
                (0..n)
                    .map(|j| {
                        -(0..n)
                            .filter(|&i| !x[i].is_zero())
                            .map(|i| &x[i] * self.datum.structure_constant(i, j, kk))
                            .sum::<Q>()
                    })
                    .collect()
            })
            .collect();
        self.ext.derivation(&images, 0, k)
    }

    /// Checks `L_X = d i_X + i_X d` on every degree for every basis vector `X`;
    /// returns the first failing `(X index, degree)`.
    pub fn cartan_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            let mut x = vec![Q::zero(); n];
            x[i] = Q::from(1);
            for k in 0..=n {
                let mut rhs = &self.interior(&x, k + 1) * &self.d[k];
                if k > 0 {
                    rhs = &rhs + &(&self.d[k - 1] * &self.interior(&x, k));
                }
                if rhs != self.lie_derivative(&x, k) {
                    return Some((i, k));
                }
            }
        }
        None
    }

    pub fn eta_form(&self) -> Vec<Q> {
        self.datum.eta().to_vec()
    }

    /// `dη` as a coefficient vector on `Λ²`.
    pub fn d_eta_form(&self) -> Vec<Q> {
        self.d[1].mul_vec(self.datum.eta())
    }

    /// Coefficient vector of `e^i` in `Λ^1`.
    pub fn generator(&self, i: usize) -> Vec<Q> {
        self.ext.monomial_vector(1 << i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h3_differential() {
        let ce = CeAlgebra::new(&SasakianLieDatum::heisenberg(1));
        let ext = ce.exterior();
        // d e^0 = e^1 ∧ e^2, d e^1 = d e^2 = 0
        assert_eq!(ce.d(1).mul_vec(&ce.generator(0)), ext.wedge_of_generators(&[1, 2]));
        assert!(ce.d(1).mul_vec(&ce.generator(1)).iter().all(Zero::is_zero));
        assert!(ce.d(1).mul_vec(&ce.generator(2)).iter().all(Zero::is_zero));
        assert_eq!(ce.d_eta_form(), ext.wedge_of_generators(&[1, 2]));
    }

    #[test]
    fn abelian_differential_vanishes() {
        let ce = CeAlgebra::new(&SasakianLieDatum::abelian(1));
        assert!((0..=3).all(|k| ce.d(k).is_zero()));
    }

    #[test]
    fn square_zero_and_cartan_on_heisenberg() {
        for n in 1..=3 {
            let ce = CeAlgebra::new(&SasakianLieDatum::heisenberg(n));
            assert_eq!(ce.square_zero_violation(), None);
            assert_eq!(ce.cartan_violation(), None);
        }
    }

    #[test]
    fn h5_degree_one_rank() {
        let ce = CeAlgebra::new(&SasakianLieDatum::heisenberg(2));
        assert_eq!(ce.d(1).rank(), 1);
    }
}
