//! Cup products `H^s(M,E) ⊗ H^t(M,E′) → H^{s+t}(M,E⊗E′)` computed on the
//! models `A_B ⊕ A_B·η`, and the vanishing range `s, t < n < s + t`.

use std::collections::BTreeMap;

use num_traits::Zero;
use sasaki_bundle::{attach_bundle_with, TwistedComplex};
use sasaki_core::complex::{mapping_cone_model, CochainComplex, Cohomology};
use sasaki_core::{Error, GaussianRational as Q, Matrix, Result, Subspace};
use sasaki_model::kahler::lefschetz_operator;

use crate::product::{FiberProduct, FormProduct};

/// `A_B ⊕ A_B·η` for one twisted complex; degree `k` is `A^k_B` followed by `A^{k−1}_B`.
#[derive(Clone, Debug)]
pub struct ConeModel {
    pub complex: CochainComplex,
    basic_dims: Vec<usize>,
}

impl ConeModel {
    pub fn new(tc: &TwistedComplex) -> Result<Self> {
        let bc = tc.basic();
        let l = lefschetz_operator(bc)?;
        let blocks: BTreeMap<i32, Matrix> =
            l.blocks().iter().enumerate().map(|(k, m)| (k as i32, m.clone())).collect();
        let complex = mapping_cone_model(&bc.complex(), &blocks)?;
        let basic_dims = (0..=bc.top()).map(|k| bc.dim(k)).collect();
        Ok(ConeModel { complex, basic_dims })
    }

    pub fn basic_dim(&self, k: usize) -> usize {
        self.basic_dims.get(k).copied().unwrap_or(0)
    }

    /// Splits a degree-`k` vector into its `A^k_B` and `A^{k−1}_B·η` parts.
    pub fn split<'v>(&self, k: usize, v: &'v [Q]) -> (&'v [Q], &'v [Q]) {
        v.split_at(self.basic_dim(k))
    }

    /// Degree-`k` cocycles with no `η` part.
    pub fn basic_cocycles(&self, k: usize) -> Subspace {
        let d = self.complex.differential(k as i32);
        let x = self.basic_dim(k);
        let total = self.complex.dim(k as i32);
        let incl = Matrix::identity(total).submatrix(0..total, 0..x);
        Subspace::kernel(&(&d * &incl)).map(&incl)
    }
}

fn sign(k: usize) -> Q {
    if k.is_multiple_of(2) {
        Q::from(1)
    } else {
        Q::from(-1)
    }
}

/// `(x₁ + y₁η)(x₂ + y₂η) = x₁x₂ + (x₁y₂ + (−1)^{|x₂|} y₁x₂)η`.
pub fn cone_product(
    prod: &FormProduct<'_>,
    models: (&ConeModel, &ConeModel, &ConeModel),
    s: usize,
    v: &[Q],
    t: usize,
    w: &[Q],
) -> Result<Vec<Q>> {
    let (left, right, target) = models;
    let (x1, y1) = left.split(s, v);
    let (x2, y2) = right.split(t, w);
    let k = s + t;
    let mut out = vec![Q::zero(); target.complex.dim(k as i32)];
    let nx = target.basic_dim(k);
    let mut add = |offset: usize, part: Vec<Q>, c: &Q| {
        for (o, p) in out[offset..].iter_mut().zip(part) {
            *o += c * &p;
        }
    };
    let one = Q::from(1);
    if target.basic_dim(k) > 0 && !x1.is_empty() && !x2.is_empty() {
        add(0, prod.basic(s, x1, t, x2)?, &one);
    }
    if k >= 1 && target.basic_dim(k - 1) > 0 {
        if !x1.is_empty() && !y2.is_empty() {
            add(nx, prod.basic(s, x1, t - 1, y2)?, &one);
        }
        if !y1.is_empty() && !x2.is_empty() {
            add(nx, prod.basic(s - 1, y1, t, x2)?, &sign(t));
        }
    }
    Ok(out)
}

/// Cohomology of the three cone models and the product between them.
pub struct CupSetting<'a> {
    pub prod: FormProduct<'a>,
    pub left: ConeModel,
    pub right: ConeModel,
    pub target: ConeModel,
}

impl<'a> CupSetting<'a> {
    pub fn new(
        left: &'a TwistedComplex,
        right: &'a TwistedComplex,
        target: &'a TwistedComplex,
    ) -> Result<Self> {
        let fiber = FiberProduct::Tensor { m1: left.bundle().rank(), m2: right.bundle().rank() };
        if target.bundle().rank() != left.bundle().rank() * right.bundle().rank() {
            return Err(Error::Dimension("target rank is not the product of the ranks".into()));
        }
        Ok(CupSetting {
            prod: FormProduct { left, right, target, fiber },
            left: ConeModel::new(left)?,
            right: ConeModel::new(right)?,
            target: ConeModel::new(target)?,
        })
    }

    /// Matrix of `H^s ⊗ H^t → H^{s+t}`; column `a·dim H^t + b` is the class
    /// of the product of the `a`-th and `b`-th representatives.
    pub fn product_matrix(&self, s: usize, t: usize) -> Result<Matrix> {
        let hs = self.left.complex.cohomology(s as i32);
        let ht = self.right.complex.cohomology(t as i32);
        let hst = self.target.complex.cohomology((s + t) as i32);
        let mut cols = Vec::with_capacity(hs.dim() * ht.dim());
        for a in 0..hs.dim() {
            let v = hs.representatives.column(a);
            for b in 0..ht.dim() {
                let w = ht.representatives.column(b);
                let p = cone_product(&self.prod, (&self.left, &self.right, &self.target), s, &v, t, &w)?;
                cols.push(hst.projection.mul_vec(&p));
            }
        }
        Ok(Matrix::from_columns(hst.dim(), &cols))
    }
}

/// Twisted complex of `E ⊗ E′` over the same datum and bigrading.
pub fn tensor_complex(tc: &TwistedComplex, tc2: &TwistedComplex) -> Result<TwistedComplex> {
    let datum = tc.bundle().tensor(tc2.bundle())?;
    attach_bundle_with(tc.datum(), &datum, tc.basic().convention())
}

/// Every degree-`k` class has a representative without `η` part.
fn classes_are_basic(model: &ConeModel, k: usize) -> Result<bool> {
    let h: Cohomology = model.complex.cohomology(k as i32);
    let reached = model.basic_cocycles(k).sum(&h.coboundaries)?;
    Ok(reached == h.cocycles)
}

#[derive(Clone, Debug)]
pub struct CupVanishingReport {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub dims: [usize; 3],
    pub product: Matrix,
    pub product_zero: bool,
    /// Classes of degree `≤ n` have representatives in `A_B` (all three models).
    pub basic_representatives: bool,
    /// Basic cocycles of degree `s + t` become exact in the target model.
    pub top_classes_exact: bool,
}

impl CupVanishingReport {
    pub fn passed(&self) -> bool {
        self.product_zero && self.basic_representatives && self.top_classes_exact
    }
}

/// `s, t < n` and `s + t > n`.
pub fn in_vanishing_range(n: usize, s: usize, t: usize) -> bool {
    s < n && t < n && s + t > n
}

pub fn cup_vanishing_check(
    tc: &TwistedComplex,
    tc2: &TwistedComplex,
    s: usize,
    t: usize,
) -> Result<CupVanishingReport> {
    let n = tc.basic().n();
    if tc2.basic().n() != n || tc.datum() != tc2.datum() {
        return Err(Error::Dimension("bundles live over different models".into()));
    }
    if !in_vanishing_range(n, s, t) {
        return Err(Error::Range(format!("degrees ({s}, {t}) need s, t < n = {n} and s + t > n")));
    }
    let target = tensor_complex(tc, tc2)?;
    let setting = CupSetting::new(tc, tc2, &target)?;
    let product = setting.product_matrix(s, t)?;
    let mut basic_representatives = true;
    for model in [&setting.left, &setting.right, &setting.target] {
        for k in 0..=n {
            basic_representatives &= classes_are_basic(model, k)?;
        }
    }
    let h = setting.target.complex.cohomology((s + t) as i32);
    let top_classes_exact = h.coboundaries.contains_subspace(&setting.target.basic_cocycles(s + t));
    let dims = [
        setting.left.complex.cohomology(s as i32).dim(),
        setting.right.complex.cohomology(t as i32).dim(),
        h.dim(),
    ];
    Ok(CupVanishingReport {
        n,
        s,
        t,
        dims,
        product_zero: product.is_zero(),
        product,
        basic_representatives,
        top_classes_exact,
    })
}

/// The product matrix without the range restriction.
pub fn cup_product_matrix(tc: &TwistedComplex, tc2: &TwistedComplex, s: usize, t: usize) -> Result<Matrix> {
    let target = tensor_complex(tc, tc2)?;
    CupSetting::new(tc, tc2, &target)?.product_matrix(s, t)
}
