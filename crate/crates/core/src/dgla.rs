//! Finite-dimensional differential graded Lie algebras and their
//! Maurer–Cartan equations.

use std::collections::BTreeMap;
use std::ops::Range;

use num_traits::Zero;
use rayon::prelude::*;

use crate::complex::{CochainComplex, GradedVectorSpace};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::GaussianRational as Q;

/// Sparse vector as sorted `(index, coefficient)` pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, Q)>;

pub fn sparse_from_dense(v: &[Q]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn sign(e: i32) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::from(1)
    } else {
        Q::from(-1)
    }
}

/// Graded vector space with a differential of degree one and a bracket
/// stored on basis pairs.
#[derive(Clone, Debug)]
pub struct DglaModel {
    spaces: GradedVectorSpace,
    differential: BTreeMap<i32, Matrix>,
    /// `bracket[(p, q)][a * dim(q) + b] = [e^p_a, e^q_b]` in degree `p + q`.
    bracket: BTreeMap<(i32, i32), Vec<SparseVec>>,
}

impl DglaModel {
    /// Builds the bracket table from a function on basis pairs returning a
    /// dense vector of degree `p + q`. Pairs landing outside the graded
    /// range are not evaluated.
    pub fn from_bracket_fn(
        spaces: GradedVectorSpace,
        differential: BTreeMap<i32, Matrix>,
        f: impl Fn(i32, usize, i32, usize) -> Vec<Q> + Sync,
    ) -> Result<Self> {
        let degrees = spaces.degrees();
        let mut bracket = BTreeMap::new();
        for &p in &degrees {
            for &q in &degrees {
                let t = spaces.dim(p + q);
                let (dp, dq) = (spaces.dim(p), spaces.dim(q));
                if t == 0 || dp == 0 || dq == 0 {
                    continue;
                }
                let table: Vec<SparseVec> = (0..dp * dq)
                    .into_par_iter()
                    .map(|ab| {
                        let v = f(p, ab / dq, q, ab % dq);
                        assert_eq!(v.len(), t, "bracket value has wrong length");
                        sparse_from_dense(&v)
                    })
                    .collect();
                bracket.insert((p, q), table);
            }
        }
        Self::from_table(spaces, differential, bracket)
    }

    pub fn from_table(
        spaces: GradedVectorSpace,
        differential: BTreeMap<i32, Matrix>,
        bracket: BTreeMap<(i32, i32), Vec<SparseVec>>,
    ) -> Result<Self> {
        for (&k, d) in &differential {
            if d.shape() != (spaces.dim(k + 1), spaces.dim(k)) {
                return Err(Error::Dimension(format!("differential block {k} has wrong shape")));
            }
        }
        for (&(p, q), t) in &bracket {
            if t.len() != spaces.dim(p) * spaces.dim(q) {
                return Err(Error::Dimension(format!("bracket table ({p},{q}) has wrong size")));
            }
        }
        Ok(DglaModel { spaces, differential, bracket })
    }

    /// Abelian DGLA: zero bracket, zero differential.
    pub fn abelian(spaces: GradedVectorSpace) -> Self {
        DglaModel { spaces, differential: BTreeMap::new(), bracket: BTreeMap::new() }
    }

    pub fn spaces(&self) -> &GradedVectorSpace {
        &self.spaces
    }

    pub fn dim(&self, k: i32) -> usize {
        self.spaces.dim(k)
    }

    pub fn differential(&self, k: i32) -> Matrix {
        self.differential.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    pub fn complex(&self) -> CochainComplex {
        CochainComplex::new_unchecked(self.spaces.clone(), self.differential.clone())
            .expect("shapes checked on construction")
    }

    pub fn bracket_basis(&self, p: i32, a: usize, q: i32, b: usize) -> &[(usize, Q)] {
        match self.bracket.get(&(p, q)) {
            Some(t) => &t[a * self.dim(q) + b],
            None => &[],
        }
    }

    /// Bracket of a basis vector with a dense vector.
    fn bracket_basis_dense(&self, p: i32, a: usize, q: i32, y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim(p + q)];
        for (b, yb) in y.iter().enumerate() {
            if yb.is_zero() {
                continue;
            }
            for (w, c) in self.bracket_basis(p, a, q, b) {
                out[*w] += c * yb;
            }
        }
        out
    }

    /// Bracket of dense vectors of degrees `p` and `q`.
    pub fn bracket(&self, p: i32, x: &[Q], q: i32, y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim(p + q)];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (w, c) in self.bracket_basis_dense(p, a, q, y).into_iter().enumerate() {
                if !c.is_zero() {
                    out[w] += c * xa;
                }
            }
        }
        out
    }

    fn unit(&self, k: i32, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim(k)];
        v[i] = Q::from(1);
        v
    }

    /// Flat list of `(degree, index)` over all basis vectors.
    fn basis_list(&self) -> Vec<(i32, usize)> {
        self.spaces.degrees().into_iter().flat_map(|k| (0..self.dim(k)).map(move |i| (k, i))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DglaReport {
    pub square_zero: Option<String>,
    pub antisymmetry: Option<String>,
    pub jacobi: Option<String>,
    pub leibniz: Option<String>,
}

impl DglaReport {
    pub fn passed(&self) -> bool {
        self.square_zero.is_none()
            && self.antisymmetry.is_none()
            && self.jacobi.is_none()
            && self.leibniz.is_none()
    }
}

/// Checks `d² = 0`, graded antisymmetry, graded Jacobi and graded Leibniz
/// on basis tuples; each field holds the first violation found.
pub fn check_dgla(g: &DglaModel) -> DglaReport {
    let square_zero = g
        .complex()
        .square_zero_violation()
        .map(|(k, (i, j, v))| format!("(d∘d) in degree {k} has entry ({i},{j}) = {v}"));

    let basis = g.basis_list();
    let n = basis.len();

    let antisymmetry = (0..n).into_par_iter().find_map_first(|s| {
        let (p, a) = basis[s];
        (s..n).find_map(|t| {
            let (q, b) = basis[t];
            let xy = g.bracket(p, &g.unit(p, a), q, &g.unit(q, b));
            let yx = g.bracket(q, &g.unit(q, b), p, &g.unit(p, a));
            let s_ = sign(p * q);
            let ok = xy.iter().zip(&yx).all(|(u, v)| *u == -(v * &s_));
            (!ok).then(|| format!("[e{p}_{a}, e{q}_{b}] ≠ −(−1)^{{{}}}[e{q}_{b}, e{p}_{a}]", p * q))
        })
    });

    // With antisymmetry in place the Jacobiator is graded-symmetric up to
    // sign, so sorted triples suffice.
    let jacobi = (0..n).into_par_iter().find_map_first(|s| {
        let (p, a) = basis[s];
        let x = g.unit(p, a);
        for t in s..n {
            let (q, b) = basis[t];
            let y = g.unit(q, b);
            for u in t..n {
                let (r, c) = basis[u];
                if g.dim(p + q + r) == 0 {
                    continue;
                }
                let z = g.unit(r, c);
                let t1 = g.bracket(p, &x, q + r, &g.bracket(q, &y, r, &z));
                let t2 = g.bracket(q, &y, r + p, &g.bracket(r, &z, p, &x));
                let t3 = g.bracket(r, &z, p + q, &g.bracket(p, &x, q, &y));
                let (s1, s2, s3) = (sign(p * r), sign(q * p), sign(r * q));
                let bad = (0..t1.len()).any(|w| !(&s1 * &t1[w] + &s2 * &t2[w] + &s3 * &t3[w]).is_zero());
                if bad {
                    return Some(format!("graded Jacobi fails on (e{p}_{a}, e{q}_{b}, e{r}_{c})"));
                }
            }
        }
        None
    });

    let leibniz = (0..n).into_par_iter().find_map_first(|s| {
        let (p, a) = basis[s];
        let x = g.unit(p, a);
        let dx = g.differential(p).mul_vec(&x);
        (0..n).find_map(|t| {
            let (q, b) = basis[t];
            if g.dim(p + q + 1) == 0 {
                return None;
            }
            let y = g.unit(q, b);
            let dy = g.differential(q).mul_vec(&y);
            let lhs = g.differential(p + q).mul_vec(&g.bracket(p, &x, q, &y));
            let r1 = g.bracket(p + 1, &dx, q, &y);
            let r2 = g.bracket(p, &x, q + 1, &dy);
            let sp = sign(p);
            let ok = (0..lhs.len()).all(|w| lhs[w] == &r1[w] + &sp * &r2[w]);
            (!ok).then(|| format!("graded Leibniz fails on (e{p}_{a}, e{q}_{b})"))
        })
    });

    DglaReport { square_zero, antisymmetry, jacobi, leibniz }
}

/// A labeled range of equations inside an [`McConstraintSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationBlock {
    pub label: String,
    pub rows: Range<usize>,
}

/// Equations `L x + (xᵀ Q_w x)_w = 0` on the degree-one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McConstraintSystem {
    pub variables: Vec<String>,
    pub equations: Vec<String>,
    pub linear_part: Matrix,
    /// One symmetric matrix per equation.
    pub quadratic_part: Vec<Matrix>,
    pub blocks: Vec<EquationBlock>,
}

impl McConstraintSystem {
    pub fn evaluate(&self, x: &[Q]) -> Vec<Q> {
        let lin = self.linear_part.mul_vec(x);
        lin.into_iter()
            .zip(&self.quadratic_part)
            .map(|(l, qm)| {
                let qx = qm.mul_vec(x);
                l + x.iter().zip(&qx).map(|(a, b)| a * b).sum::<Q>()
            })
            .collect()
    }

    /// Indices of equations with a nonzero linear or quadratic coefficient.
    pub fn nontrivial_equations(&self) -> Vec<usize> {
        (0..self.equations.len())
            .filter(|&w| {
                self.linear_part.row(w).iter().any(|c| !c.is_zero()) || !self.quadratic_part[w].is_zero()
            })
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.nontrivial_equations().is_empty()
    }

    pub fn has_linear_terms(&self) -> bool {
        !self.linear_part.is_zero()
    }

    pub fn has_quadratic_terms(&self) -> bool {
        self.quadratic_part.iter().any(|m| !m.is_zero())
    }

    pub fn block(&self, label: &str) -> Option<&EquationBlock> {
        self.blocks.iter().find(|b| b.label == label)
    }
}

fn labels_or_default(g: &DglaModel, k: i32, prefix: &str) -> Vec<String> {
    match g.spaces().labels(k) {
        Some(l) => l.to_vec(),
        None => (0..g.dim(k)).map(|i| format!("{prefix}{i}")).collect(),
    }
}

/// Maurer–Cartan equation `dω + ½[ω, ω] = 0` in coordinates on degree one.
pub fn mc_system(g: &DglaModel) -> McConstraintSystem {
    let n1 = g.dim(1);
    let n2 = g.dim(2);
    let half = Q::from_ratio(1, 2);
    let mut quadratic = vec![Matrix::zeros(n1, n1); n2];
    for a in 0..n1 {
        for b in 0..n1 {
            for (w, c) in g.bracket_basis(1, a, 1, b) {
                quadratic[*w][(a, b)] = c * &half;
            }
        }
    }
    McConstraintSystem {
        variables: labels_or_default(g, 1, "x"),
        equations: labels_or_default(g, 2, "w"),
        linear_part: g.differential(1),
        quadratic_part: quadratic,
        blocks: vec![EquationBlock { label: "degree-2".into(), rows: 0..n2 }],
    }
}
