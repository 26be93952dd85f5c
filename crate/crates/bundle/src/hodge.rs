//! Finite-dimensional Hodge theory: harmonic projector and Green operator
//! of a cochain complex with Hermitian Gram matrices.

use sasaki_core::complex::CochainComplex;
use sasaki_core::{Matrix, Result, Subspace};

use crate::bundle::TwistedComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeReport {
    pub idempotent: bool,
    pub self_adjoint: bool,
    /// `im H = ker Δ`.
    pub image_is_kernel: bool,
    /// `Δ G = 1 − H`.
    pub green_identity: bool,
    /// `G H = 0`.
    pub green_kills_harmonic: bool,
    /// `1 = H + D D* G + D* D G`.
    pub decomposition: bool,
    pub harmonic_dim: usize,
}

impl HodgeReport {
    pub fn passed(&self) -> bool {
        self.idempotent
            && self.self_adjoint
            && self.image_is_kernel
            && self.green_identity
            && self.green_kills_harmonic
            && self.decomposition
    }
}

#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    pub degree: i32,
    pub laplacian: Matrix,
    pub harmonic: Matrix,
    pub green: Matrix,
    pub report: HodgeReport,
}

/// `d*_k = G_k⁻¹ d_kᴴ G_{k+1}`.
fn adjoint(d: &Matrix, g_src: &Matrix, g_tgt: &Matrix) -> Result<Matrix> {
    Ok(&(&g_src.inverse()? * &d.adjoint()) * g_tgt)
}

/// `gram(k)` gives the Gram matrix in degree `k` (empty outside the range).
pub fn harmonic_projector(
    c: &CochainComplex,
    gram: impl Fn(i32) -> Matrix,
    k: i32,
) -> Result<HodgeDecomposition> {
    let n = c.dim(k);
    let g = gram(k);
    let d_prev = c.differential(k - 1);
    let d_next = c.differential(k);
    let d_prev_adj = adjoint(&d_prev, &gram(k - 1), &g)?;
    let d_next_adj = adjoint(&d_next, &g, &gram(k + 1))?;
    let up = &d_prev * &d_prev_adj;
    let down = &d_next_adj * &d_next;
    let laplacian = &up + &down;
    let ker = Subspace::kernel(&laplacian);
    let harmonic = if ker.is_zero() {
        Matrix::zeros(n, n)
    } else {
        let kb = ker.basis();
        let kh_g = &kb.adjoint() * &g;
        &(kb * &(&kh_g * kb).inverse()?) * &kh_g
    };
    let id = Matrix::identity(n);
    let green = &(&laplacian + &harmonic).inverse()? - &harmonic;
    let report = HodgeReport {
        idempotent: &harmonic * &harmonic == harmonic,
        self_adjoint: &g * &harmonic == &harmonic.adjoint() * &g,
        image_is_kernel: Subspace::image(&harmonic) == ker,
        green_identity: &laplacian * &green == &id - &harmonic,
        green_kills_harmonic: (&green * &harmonic).is_zero(),
        decomposition: &(&harmonic + &(&up * &green)) + &(&down * &green) == id,
        harmonic_dim: ker.dim(),
    };
    Ok(HodgeDecomposition { degree: k, laplacian, harmonic, green, report })
}

/// Hodge decomposition on basic forms of a twisted complex.
pub fn basic_harmonic_projector(tc: &TwistedComplex, k: usize) -> Result<HodgeDecomposition> {
    let bc = tc.basic();
    let gram = |j: i32| {
        if j < 0 || j as usize >= bc.gram().len() {
            Matrix::zeros(0, 0)
        } else {
            bc.gram()[j as usize].clone()
        }
    };
    harmonic_projector(&bc.complex(), gram, k as i32)
}

/// Hodge decomposition on the full twisted complex.
pub fn full_harmonic_projector(tc: &TwistedComplex, k: usize) -> Result<HodgeDecomposition> {
    let fb = tc.forms();
    let gram = |j: i32| {
        if j < 0 || j as usize > fb.top() {
            Matrix::zeros(0, 0)
        } else {
            fb.gram(j as usize)
        }
    };
    harmonic_projector(&tc.full_complex(), gram, k as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{attach_bundle, FlatBundleDatum};
    use sasaki_core::complex::GradedVectorSpace;
    use sasaki_core::GaussianRational as Q;
    use sasaki_model::SasakianLieDatum;

    #[test]
    fn zero_differential_is_all_harmonic() {
        let c = CochainComplex::zero_differential(GradedVectorSpace::from_dims(&[2, 3]));
        let h = harmonic_projector(&c, |k| Matrix::identity(c.dim(k)), 1).unwrap();
        assert_eq!(h.harmonic, Matrix::identity(3));
        assert!(h.green.is_zero());
        assert!(h.report.passed());
    }

    #[test]
    fn h3_first_betti_number() {
        let tc = attach_bundle(&SasakianLieDatum::heisenberg(1), &FlatBundleDatum::trivial(3, 1)).unwrap();
        let h = full_harmonic_projector(&tc, 1).unwrap();
        assert!(h.report.passed());
        assert_eq!(h.harmonic.rank(), 2);
    }

    #[test]
    fn acyclic_twist_has_no_harmonic_forms() {
        let tc =
            attach_bundle(&SasakianLieDatum::heisenberg(1), &FlatBundleDatum::character(3, 1, Q::from(1)))
                .unwrap();
        for k in 0..=3 {
            let h = full_harmonic_projector(&tc, k).unwrap();
            assert!(h.harmonic.is_zero());
            assert_eq!(h.green.rank(), tc.forms().dim(k));
            assert!(h.report.passed());
        }
    }
}
