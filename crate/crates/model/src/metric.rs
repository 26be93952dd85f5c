//! The metric `g = dη(·, I·) + η ⊗ η`, its Gram matrices on forms, and the
//! Hodge star for the orientation `η ∧ (dη)ⁿ > 0`.

use num_traits::{Signed, Zero};
use sasaki_core::{Error, GaussianRational as Q, Matrix, Rational, Result};

use crate::ce::CeAlgebra;
use crate::datum::contact_volume;

#[derive(Clone, Debug)]
pub struct Metric {
    g: Matrix,
    g_inv: Matrix,
    /// Gram of the induced real inner product on `Λ^k`.
    gram: Vec<Matrix>,
    /// `∗ : Λ^k → Λ^{N−k}`.
    star: Vec<Matrix>,
    volume_coefficient: Rational,
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

impl Metric {
    pub fn new(ce: &CeAlgebra) -> Result<Self> {
        let datum = ce.datum();
        let g = datum.metric_matrix();
        if g != g.transpose() {
            return Err(Error::InvalidDatum("metric is not symmetric".into()));
        }
        if let Some(k) =
            g.leading_principal_minors().iter().position(|m| !(m.is_real() && m.re().is_positive()))
        {
            return Err(Error::InvalidDatum(format!(
                "metric is not positive definite (leading minor {})",
                k + 1
            )));
        }
        let det = g.det()?;
        let root = rational_sqrt(det.re())
            .ok_or_else(|| Error::InvalidDatum(format!("det g = {det} is not the square of a rational")))?;
        let vol = contact_volume(datum);
        if vol.is_zero() {
            return Err(Error::InvalidDatum("contact condition fails".into()));
        }
        let orientation = if vol.re().is_positive() { root } else { -root };
        let g_inv = g.inverse()?;
        let ext = ce.exterior();
        let n = ce.dim();
        let gram: Vec<Matrix> = (0..=n)
            .map(|k| {
                let ms = ext.masks(k);
                Matrix::from_fn(ms.len(), ms.len(), |a, b| {
                    let rows = bits(ms[a]);
                    let cols = bits(ms[b]);
                    g_inv.select_rows(&rows).select_columns(&cols).det().expect("square")
                })
            })
            .collect();
        let vol_q = Q::from(orientation.clone());
        let star = (0..=n)
            .map(|k| {
                let mut s = Matrix::zeros(ext.dim(n - k), ext.dim(k));
                for (a, &ma) in ext.masks(k).iter().enumerate() {
                    let (c, sgn) = ext.complement(ma);
                    let row = ext.position(c);
                    for b in 0..ext.dim(k) {
                        let gab = &gram[k][(a, b)];
                        if !gab.is_zero() {
                            s[(row, b)] += gab * &vol_q * Q::from(sgn);
                        }
                    }
                }
                s
            })
            .collect();
        Ok(Metric { g, g_inv, gram, star, volume_coefficient: orientation })
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn g_inv(&self) -> &Matrix {
        &self.g_inv
    }

    pub fn gram(&self, k: usize) -> &Matrix {
        &self.gram[k]
    }

    pub fn star(&self, k: usize) -> &Matrix {
        &self.star[k]
    }

    /// Coefficient `v` with `vol = v · e^0 ∧ … ∧ e^{N−1}`.
    pub fn volume_coefficient(&self) -> &Rational {
        &self.volume_coefficient
    }

    /// `⋆_ξ ω = ∗(η ∧ ω)` on the ambient `Λ^k`, landing in `Λ^{N−1−k}`.
    pub fn star_xi(&self, ce: &CeAlgebra, k: usize) -> Matrix {
        let eta_wedge = ce.exterior().left_multiplication(1, &ce.eta_form(), k);
        &self.star[k + 1] * &eta_wedge
    }
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}
