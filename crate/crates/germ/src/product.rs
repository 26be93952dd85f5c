//! Wedge products of bundle-valued basic forms, combined fibrewise.

use num_traits::Zero;
use sasaki_bundle::TwistedComplex;
use sasaki_core::{Error, GaussianRational as Q, Result};
use sasaki_model::exterior::wedge_sign;

/// How fibre vectors multiply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberProduct {
    /// `End(ℂ^m)` with the commutator, basis `E_ab` at index `a·m + b`.
    Commutator { m: usize },
    /// `ℂ^{m1} ⊗ ℂ^{m2}`, `u ⊗ v` at index `u·m2 + v`.
    Tensor { m1: usize, m2: usize },
}

impl FiberProduct {
    pub fn ranks(self) -> (usize, usize, usize) {
        match self {
            FiberProduct::Commutator { m } => (m * m, m * m, m * m),
            FiberProduct::Tensor { m1, m2 } => (m1, m2, m1 * m2),
        }
    }

    fn apply(self, i: usize, j: usize, out: &mut Vec<(usize, i64)>) {
        out.clear();
        match self {
            FiberProduct::Commutator { m } => {
                // [E_ab, E_cd] = δ_bc E_ad − δ_da E_cb
                let (a, b, c, d) = (i / m, i % m, j / m, j % m);
                if b == c {
                    out.push((a * m + d, 1));
                }
                if d == a {
                    out.push((c * m + b, -1));
                }
            }
            FiberProduct::Tensor { m2, .. } => out.push((i * m2 + j, 1)),
        }
    }
}

/// `x ∧ y` on ambient coordinates `monomial · rank + fibre`.
pub fn ambient_product(
    tc: &TwistedComplex,
    fiber: FiberProduct,
    p: usize,
    x: &[Q],
    q: usize,
    y: &[Q],
) -> Vec<Q> {
    let ext = tc.forms().ce().exterior();
    let (r1, r2, r) = fiber.ranks();
    let mut out = vec![Q::zero(); ext.dim(p + q) * r];
    if p + q > ext.generators() {
        return out;
    }
    let mut terms = Vec::new();
    for (s, xs) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (ma, i) = (ext.mask(p, s / r1), s % r1);
        for (t, yt) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (mb, j) = (ext.mask(q, t / r2), t % r2);
            let Some(sign) = wedge_sign(ma, mb) else { continue };
            let base = ext.position(ma | mb) * r;
            fiber.apply(i, j, &mut terms);
            let xy = xs * yt;
            for &(k, c) in &terms {
                out[base + k] += &xy * &Q::from(sign * c);
            }
        }
    }
    out
}

/// Product of basic forms of `left` and `right` landing in `target`.
#[derive(Clone, Copy, Debug)]
pub struct FormProduct<'a> {
    pub left: &'a TwistedComplex,
    pub right: &'a TwistedComplex,
    pub target: &'a TwistedComplex,
    pub fiber: FiberProduct,
}

impl FormProduct<'_> {
    /// Arguments and result in basic coordinates.
    pub fn basic(&self, p: usize, x: &[Q], q: usize, y: &[Q]) -> Result<Vec<Q>> {
        let bc = self.target.basic();
        if p + q > bc.top() {
            return Ok(Vec::new());
        }
        let xa = self.left.basic().basis(p).mul_vec(x);
        let ya = self.right.basic().basis(q).mul_vec(y);
        let prod = ambient_product(self.target, self.fiber, p, &xa, q, &ya);
        let c = bc.coords(p + q).mul_vec(&prod);
        if bc.basis(p + q).mul_vec(&c) != prod {
            return Err(Error::NotContained(format!(
                "product of basic forms of degrees {p} and {q} is not basic"
            )));
        }
        Ok(c)
    }
}
