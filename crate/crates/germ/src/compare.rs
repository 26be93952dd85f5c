//! Comparison of the Maurer–Cartan cone of the germ model with the
//! order-two relator equations of a lattice, through a declared matching
//! of generators with Lie algebra vectors.

use num_traits::Zero;
use sasaki_bundle::TwistedComplex;
use sasaki_core::dgla::McConstraintSystem;
use sasaki_core::{Error, GaussianRational as Q, Matrix, Result, Subspace};

use crate::fox::{
    fox_tangent, linear_kernel_check, relator_order2, GroupPresentation, LinearKernelCheck, Representation,
};
use crate::model::{mc_cone, GermModel};

/// Quadratic parts that survive on the zero set of the linear part: for
/// every `ℓ` with `ℓΛ = 0`, the form `Kᵀ (Σ_w ℓ_w Q_w) K` with `K` a
/// kernel basis of `Λ`.
#[derive(Clone, Debug)]
pub struct NormalizedQuadrics {
    pub kernel: Matrix,
    /// Span of the symmetric forms, each flattened row-major.
    pub forms: Subspace,
}

impl NormalizedQuadrics {
    pub fn count(&self) -> usize {
        self.forms.dim()
    }
}

fn symmetric(m: &Matrix) -> Matrix {
    (m + &m.transpose()).scale(&Q::from_ratio(1, 2))
}

fn flatten(m: &Matrix) -> Vec<Q> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// The forms `Pᵀ (Σ_w ℓ_w Q_w) P` for `ℓ` in the left kernel of the linear part.
fn pulled_back_forms(sys: &McConstraintSystem, p: &Matrix) -> Subspace {
    let r = p.cols();
    let left = Subspace::kernel(&sys.linear_part.transpose());
    let pt = p.transpose();
    let forms: Vec<Vec<Q>> = left
        .basis()
        .columns()
        .iter()
        .map(|l| {
            let mut acc = Matrix::zeros(p.rows(), p.rows());
            for (c, q) in l.iter().zip(&sys.quadratic_part) {
                if !c.is_zero() {
                    acc = &acc + &q.scale(c);
                }
            }
            flatten(&(&(&pt * &symmetric(&acc)) * p))
        })
        .collect();
    Subspace::span_vectors(r * r, &forms)
}

pub fn normalized_quadrics(sys: &McConstraintSystem) -> NormalizedQuadrics {
    let kernel = Subspace::kernel(&sys.linear_part).basis().clone();
    let forms = pulled_back_forms(sys, &kernel);
    NormalizedQuadrics { kernel, forms }
}

/// `X_g` for every generator, in the coordinates of the Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub vectors: Vec<Vec<Q>>,
}

impl Matching {
    /// `a ↦ e₁, b ↦ e₂, c ↦ e₃, d ↦ e₄, …` with the last generator sent to
    /// `−e₀` (a central generator equal to a commutator `[a, b]`).
    pub fn heisenberg(n: usize) -> Self {
        let dim = 2 * n + 1;
        let mut vectors = Vec::with_capacity(dim);
        for i in 1..dim {
            let mut v = vec![Q::zero(); dim];
            v[i] = Q::from(1);
            vectors.push(v);
        }
        let mut z = vec![Q::zero(); dim];
        z[0] = Q::from(-1);
        vectors.push(z);
        Matching { vectors }
    }
}

/// `(α, β) ↦ (u_g)_g` with `u_g = (α + β·η)(X_g)` from model degree-one
/// coordinates into `⊕_g gl_m`.
pub fn matching_map(tc: &TwistedComplex, g: &GermModel, matching: &Matching) -> Result<Matrix> {
    let bc = tc.basic();
    let fb = tc.forms();
    let dim = fb.ce().dim();
    let mm = tc.bundle().rank();
    if let Some(v) = matching.vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::Dimension(format!("matching vector of length {} in dimension {dim}", v.len())));
    }
    let alg = &g.algebra;
    let x = bc.basis(1) * &alg.groups[1].representatives;
    let eta = fb.ce().eta_form();
    let y = &(&fb.wedge_scalar(1, &eta, 0) * bc.basis(0)) * &alg.groups[0].representatives;
    let ambient = x.hstack(&y);
    let ngen = matching.vectors.len();
    let mut t = Matrix::zeros(ngen * mm, ambient.cols());
    for (gi, xg) in matching.vectors.iter().enumerate() {
        for (i, c) in xg.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let block = ambient.submatrix(i * mm..(i + 1) * mm, 0..ambient.cols()).scale(c);
            let cur = t.submatrix(gi * mm..(gi + 1) * mm, 0..ambient.cols());
            t.set_block(gi * mm, 0, &(&cur + &block));
        }
    }
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub model_h1_dim: usize,
    pub fox_h1_dim: usize,
    pub fox_linear: LinearKernelCheck,
    /// `dim ε(L⁰)` and `dim End(E_x)`.
    pub augmentation_rank: usize,
    pub fiber_dim: usize,
    /// The matching sends model cocycles into relator cocycles.
    pub lands_in_cocycles: bool,
    /// ... and onto them, injectively.
    pub matching_isomorphism: bool,
    pub model_quadrics: usize,
    pub group_quadrics: usize,
    pub quadrics_agree: bool,
}

impl ComparisonReport {
    pub fn dims_agree(&self) -> bool {
        self.model_h1_dim == self.fox_h1_dim
    }

    pub fn quotient_trivial(&self) -> bool {
        self.augmentation_rank == self.fiber_dim
    }

    pub fn passed(&self) -> bool {
        self.dims_agree()
            && self.fox_linear.jacobians_agree
            && self.fox_linear.kernels_agree
            && self.quotient_trivial()
            && self.lands_in_cocycles
            && self.matching_isomorphism
            && self.quadrics_agree
    }
}

/// Compares the germ model of `End(E)` for the trivial bundle with the
/// relator equations at the trivial representation of the same rank.
pub fn compare_cone_with_variety(
    tc_end: &TwistedComplex,
    g: &GermModel,
    gp: &GroupPresentation,
    rho: &Representation,
    matching: &Matching,
) -> Result<ComparisonReport> {
    if !rho.is_trivial() {
        return Err(Error::Precondition("comparison is only run at the trivial representation".into()));
    }
    if rho.rank() != g.rank() {
        return Err(Error::Dimension(format!(
            "representation of rank {} against a bundle of rank {}",
            rho.rank(),
            g.rank()
        )));
    }
    if matching.vectors.len() != gp.generators().len() {
        return Err(Error::Dimension(format!(
            "matching has {} vectors for {} generators",
            matching.vectors.len(),
            gp.generators().len()
        )));
    }
    let fox = fox_tangent(gp, rho)?;
    let model_h1_dim = g.complex().cohomology(1).dim();
    if model_h1_dim != fox.h1_dim() {
        return Err(Error::Dimension(format!(
            "degree-one cohomology {} of the model against {} from Fox calculus",
            model_h1_dim,
            fox.h1_dim()
        )));
    }
    let cone = mc_cone(g);
    let group = relator_order2(gp, rho);
    let model_nq = normalized_quadrics(&cone);
    let t = matching_map(tc_end, g, matching)?;
    let p = &t * &model_nq.kernel;
    let image = Subspace::image(&p);
    let lands_in_cocycles = fox.cocycles.contains_subspace(&image);
    let matching_isomorphism = lands_in_cocycles && p.rank() == p.cols() && image == fox.cocycles;
    let group_forms = pulled_back_forms(&group, &p);
    let group_nq = normalized_quadrics(&group);
    Ok(ComparisonReport {
        model_h1_dim,
        fox_h1_dim: fox.h1_dim(),
        fox_linear: linear_kernel_check(gp, rho),
        augmentation_rank: g.augmentation_rank,
        fiber_dim: g.rank() * g.rank(),
        lands_in_cocycles,
        matching_isomorphism,
        model_quadrics: model_nq.count(),
        group_quadrics: group_nq.count(),
        quadrics_agree: matching_isomorphism && group_forms == model_nq.forms,
    })
}
