//! The `DDᶜ`-lemma on basic forms, checked as equality of subspaces.

use sasaki_core::{Matrix, Result, Subspace};

use crate::bundle::TwistedComplex;
use crate::operators::build_operators;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdcDegree {
    pub degree: usize,
    /// Dimensions of `ker D ∩ ker Dᶜ ∩ im D`, `ker D ∩ ker Dᶜ ∩ im Dᶜ`, `im DDᶜ`.
    pub dims: [usize; 3],
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdcReport {
    pub degrees: Vec<DdcDegree>,
}

impl DdcReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.equal)
    }
}

fn image_from(m: Option<&Matrix>, ambient: usize) -> Subspace {
    m.map_or_else(|| Subspace::zero(ambient), Subspace::image)
}

pub fn verify_ddc_lemma(tc: &TwistedComplex) -> Result<DdcReport> {
    let ops = build_operators(tc)?;
    let bc = tc.basic();
    let ddc = ops.d.compose(&ops.d_c);
    let mut degrees = Vec::new();
    for k in 0..bc.dims().len() {
        let dim = bc.dim(k);
        let kernels = Subspace::kernel(ops.d.block(k)).intersect(&Subspace::kernel(ops.d_c.block(k)))?;
        let im_d = image_from(k.checked_sub(1).map(|j| ops.d.block(j)), dim);
        let im_dc = image_from(k.checked_sub(1).map(|j| ops.d_c.block(j)), dim);
        let im_ddc = image_from(k.checked_sub(2).map(|j| ddc.block(j)), dim);
        let a = kernels.intersect(&im_d)?;
        let b = kernels.intersect(&im_dc)?;
        degrees.push(DdcDegree {
            degree: k,
            dims: [a.dim(), b.dim(), im_ddc.dim()],
            equal: a == b && b == im_ddc,
        });
    }
    Ok(DdcReport { degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{attach_bundle, FlatBundleDatum};
    use sasaki_core::GaussianRational as Q;
    use sasaki_model::SasakianLieDatum;

    #[test]
    fn trivial_bundle_spaces_vanish() {
        let tc = attach_bundle(&SasakianLieDatum::heisenberg(2), &FlatBundleDatum::trivial(5, 1)).unwrap();
        let r = verify_ddc_lemma(&tc).unwrap();
        assert!(r.holds());
        assert!(r.degrees.iter().all(|d| d.dims == [0, 0, 0]));
    }

    #[test]
    fn unitary_character_nonzero_spaces() {
        let tc = attach_bundle(&SasakianLieDatum::heisenberg(2), &FlatBundleDatum::character(5, 1, Q::i()))
            .unwrap();
        let r = verify_ddc_lemma(&tc).unwrap();
        assert!(r.holds());
        assert_eq!(r.degrees[3].dims, [2, 2, 2]);
    }
}
