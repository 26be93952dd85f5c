//! The chain `A(M,E) ⊇ A_B ⊕ A_B∧η ⊇ ker Dᶜ ⊕ ker Dᶜ∧η → H_{Dᶜ} ⊕ H_{Dᶜ}∧η`
//! and the splitting of `ker D_ξ` on the full complex.

use std::collections::BTreeMap;

use sasaki_core::complex::{
    cone_map, is_quasi_isomorphism, mapping_cone_model, quotient_complex, subcomplex, CochainComplex,
    CochainMap, QuasiIsoReport,
};
use sasaki_core::operator::GradedOperator;
use sasaki_core::{GaussianRational as Q, Matrix, Result, Subspace};

use crate::bundle::TwistedComplex;
use crate::operators::build_operators;

#[derive(Clone, Debug)]
pub struct Arrow {
    pub name: String,
    pub map: CochainMap,
    pub report: QuasiIsoReport,
}

#[derive(Clone, Debug)]
pub struct FormalityChain {
    pub basic: CochainComplex,
    pub ker_dc: CochainComplex,
    pub h_dc: CochainComplex,
    /// `A_B ⊕ A_B∧η`.
    pub basic_eta: CochainComplex,
    pub ker_dc_eta: CochainComplex,
    pub h_dc_eta: CochainComplex,
    pub full: CochainComplex,
    pub arrows: Vec<Arrow>,
    /// The differential induced by `D` on `H_{Dᶜ}` is zero.
    pub induced_differential_zero: bool,
}

impl FormalityChain {
    pub fn all_quasi_isomorphisms(&self) -> bool {
        self.arrows.iter().all(|a| a.report.is_quasi_isomorphism)
    }

    pub fn arrow(&self, name: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.name == name)
    }

    pub fn passed(&self) -> bool {
        self.all_quasi_isomorphisms() && self.induced_differential_zero
    }
}

fn blocks(op: &GradedOperator) -> BTreeMap<i32, Matrix> {
    op.blocks().iter().enumerate().map(|(k, m)| (k as i32, m.clone())).collect()
}

/// Restricts `op` to the subspaces `sub` (which it must preserve), in their bases.
fn restrict_blocks(op: &GradedOperator, sub: &BTreeMap<i32, Subspace>) -> Result<BTreeMap<i32, Matrix>> {
    let shift = op.shift();
    let mut out = BTreeMap::new();
    for (&k, s) in sub {
        let t = k + shift;
        let Some(target) = sub.get(&t) else { continue };
        let image = op.block(k as usize) * s.basis();
        out.insert(k, target.coordinates_of(&image)?);
    }
    Ok(out)
}

fn arrow(name: &str, map: CochainMap) -> Result<Arrow> {
    let report = is_quasi_isomorphism(&map)?;
    Ok(Arrow { name: name.into(), map, report })
}

pub fn formality_chain(tc: &TwistedComplex) -> Result<FormalityChain> {
    let ops = build_operators(tc)?;
    let bc = tc.basic();
    let basic = bc.complex();
    let top = bc.top();

    let ker: BTreeMap<i32, Subspace> =
        (0..=top).map(|k| (k as i32, Subspace::kernel(ops.d_c.block(k)))).collect();
    let (ker_dc, incl) = subcomplex(&basic, &ker)?;

    // im Dᶜ inside ker Dᶜ, in the coordinates of ker Dᶜ
    let mut im_in_ker = BTreeMap::new();
    for k in 1..=top {
        let image = Subspace::image(ops.d_c.block(k - 1));
        let coords = ker[&(k as i32)].coordinates_of(image.basis())?;
        im_in_ker.insert(k as i32, Subspace::span(&coords));
    }
    let (h_dc, proj, reps) = quotient_complex(&ker_dc, &im_in_ker)?;
    let induced_differential_zero = h_dc.degrees().iter().all(|&k| h_dc.differential(k).is_zero());

    let l_basic = blocks(&ops.lefschetz);
    let l_ker = restrict_blocks(&ops.lefschetz, &ker)?;
    let l_h: BTreeMap<i32, Matrix> = l_ker
        .iter()
        .filter_map(|(&k, l)| {
            let p = proj.component(k + 2);
            reps.get(&k).map(|r| (k, &(&p * l) * r))
        })
        .collect();

    let basic_eta = mapping_cone_model(&basic, &l_basic)?;
    let ker_dc_eta = mapping_cone_model(&ker_dc, &l_ker)?;
    let h_dc_eta = mapping_cone_model(&h_dc, &l_h)?;
    let eta_incl = cone_map(&incl, &ker_dc_eta, &basic_eta)?;
    let eta_proj = cone_map(&proj, &ker_dc_eta, &h_dc_eta)?;

    let full = tc.full_complex();
    let into_full = basic_eta_into_full(tc, &basic_eta, &full)?;
    let composite = eta_incl.then(&into_full)?;

    let arrows = vec![
        arrow("ker-dc-into-basic", incl)?,
        arrow("ker-dc-onto-h-dc", proj)?,
        arrow("eta-ker-dc-into-basic-eta", eta_incl)?,
        arrow("eta-ker-dc-onto-h-dc-eta", eta_proj)?,
        arrow("basic-eta-into-full", into_full)?,
        arrow("eta-ker-dc-into-full", composite)?,
    ];
    Ok(FormalityChain {
        basic,
        ker_dc,
        h_dc,
        basic_eta,
        ker_dc_eta,
        h_dc_eta,
        full,
        arrows,
        induced_differential_zero,
    })
}

fn sign(k: usize) -> Q {
    if k.is_multiple_of(2) {
        Q::from(1)
    } else {
        Q::from(-1)
    }
}

/// `(x, y) ↦ x + y ∧ η` from the cone model into the full twisted complex.
fn basic_eta_into_full(
    tc: &TwistedComplex,
    basic_eta: &CochainComplex,
    full: &CochainComplex,
) -> Result<CochainMap> {
    let bc = tc.basic();
    let fb = tc.forms();
    let eta = fb.ce().eta_form();
    let top = bc.top();
    let mut comps = BTreeMap::new();
    for k in basic_eta.degrees() {
        let ku = k as usize;
        let x = if ku <= top { bc.basis(ku).clone() } else { Matrix::zeros(fb.dim(ku), 0) };
        let y = if ku >= 1 && ku - 1 <= top {
            // y ∧ η = (−1)^{k−1} η ∧ y
            (&fb.wedge_scalar(1, &eta, ku - 1) * bc.basis(ku - 1)).scale(&sign(ku - 1))
        } else {
            Matrix::zeros(fb.dim(ku), 0)
        };
        comps.insert(k, x.hstack(&y));
    }
    CochainMap::new(basic_eta.clone(), full.clone(), comps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingDegree {
    pub degree: usize,
    pub ker_dim: usize,
    /// `ker D_ξ = A_B ⊕ A_B∧η` as subspaces, with the sum direct.
    pub direct_sum_equal: bool,
    /// `ω − i_ξω∧η` is basic for every `ω ∈ ker D_ξ`.
    pub right_eta_decomposition: bool,
    /// `ω − η∧i_ξω` is basic for every `ω ∈ ker D_ξ`.
    pub left_eta_decomposition: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub degrees: Vec<SplittingDegree>,
}

impl SplittingReport {
    pub fn direct_sum_holds(&self) -> bool {
        self.degrees.iter().all(|d| d.direct_sum_equal)
    }

    pub fn left_eta_holds(&self) -> bool {
        self.degrees.iter().all(|d| d.left_eta_decomposition)
    }

    /// Degrees where `ω − i_ξω∧η` leaves the basic forms.
    pub fn right_eta_failures(&self) -> Vec<usize> {
        self.degrees.iter().filter(|d| !d.right_eta_decomposition).map(|d| d.degree).collect()
    }
}

pub fn ker_dxi_splitting(tc: &TwistedComplex) -> Result<SplittingReport> {
    let bc = tc.basic();
    let fb = tc.forms();
    let xi = tc.datum().xi().to_vec();
    let eta = fb.ce().eta_form();
    let mut degrees = Vec::new();
    for k in 0..=fb.top() {
        let ker = Subspace::kernel(&fb.covariant_lie(&xi, k));
        let basic_k = bc.basic_subspace(k);
        let eta_part = if k == 0 {
            Subspace::zero(fb.dim(0))
        } else {
            bc.basic_subspace(k - 1).map(&fb.wedge_scalar(1, &eta, k - 1))
        };
        let sum = basic_k.sum(&eta_part)?;
        let direct = sum.dim() == basic_k.dim() + eta_part.dim();
        let (right, left) = if k == 0 {
            (true, true)
        } else {
            let omega = ker.basis();
            let contracted = &fb.interior(&xi, k) * omega;
            let left_eta = &fb.wedge_scalar(1, &eta, k - 1) * &contracted;
            let right_eta = left_eta.scale(&sign(k - 1));
            let basic_cols = |m: &Matrix| m.columns().iter().all(|c| basic_k.contains(c));
            (basic_cols(&(omega - &right_eta)), basic_cols(&(omega - &left_eta)))
        };
        degrees.push(SplittingDegree {
            degree: k,
            ker_dim: ker.dim(),
            direct_sum_equal: direct && sum == ker,
            right_eta_decomposition: right,
            left_eta_decomposition: left,
        });
    }
    Ok(SplittingReport { degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{attach_bundle, FlatBundleDatum};
    use sasaki_model::SasakianLieDatum;

    #[test]
    fn trivial_h5_chain() {
        let tc = attach_bundle(&SasakianLieDatum::heisenberg(2), &FlatBundleDatum::trivial(5, 1)).unwrap();
        let fc = formality_chain(&tc).unwrap();
        assert!(fc.passed());
        let dims: Vec<usize> = fc.basic_eta.betti().into_values().collect();
        assert_eq!(dims, vec![1, 4, 5, 5, 4, 1]);
    }

    #[test]
    fn unitary_character_on_h3() {
        let tc = attach_bundle(&SasakianLieDatum::heisenberg(1), &FlatBundleDatum::character(3, 1, Q::i()))
            .unwrap();
        assert!(formality_chain(&tc).unwrap().passed());
    }

    #[test]
    fn splitting_of_ker_d_xi() {
        let tc = attach_bundle(&SasakianLieDatum::heisenberg(1), &FlatBundleDatum::trivial(3, 1)).unwrap();
        let r = ker_dxi_splitting(&tc).unwrap();
        assert!(r.direct_sum_holds() && r.left_eta_holds());
        // ξ central: ker D_ξ is everything
        assert_eq!(r.degrees.iter().map(|d| d.ker_dim).collect::<Vec<_>>(), vec![1, 3, 3, 1]);
        assert_eq!(r.right_eta_failures(), vec![2]);
    }
}
