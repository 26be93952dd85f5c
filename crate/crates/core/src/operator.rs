//! Homogeneous operators on a graded space concentrated in degrees
//! `0..dims.len()`.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::GaussianRational as Q;

/// A homogeneous operator of degree `shift`; `blocks[k] : C^k → C^{k+shift}`.
/// Blocks whose target lies outside the graded range have zero rows.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedOperator {
    shift: i32,
    dims: Vec<usize>,
    blocks: Vec<Matrix>,
}

impl GradedOperator {
    fn target_dim(dims: &[usize], k: usize, shift: i32) -> usize {
        let t = k as i32 + shift;
        if t < 0 || t as usize >= dims.len() {
            0
        } else {
            dims[t as usize]
        }
    }

    pub fn zero(dims: &[usize], shift: i32) -> Self {
        let blocks =
            (0..dims.len()).map(|k| Matrix::zeros(Self::target_dim(dims, k, shift), dims[k])).collect();
        GradedOperator { shift, dims: dims.to_vec(), blocks }
    }

    pub fn identity(dims: &[usize]) -> Self {
        GradedOperator {
            shift: 0,
            dims: dims.to_vec(),
            blocks: dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    /// Builds an operator from a block function; shapes are checked.
    pub fn from_fn(dims: &[usize], shift: i32, mut f: impl FnMut(usize) -> Matrix) -> Result<Self> {
        let mut blocks = Vec::with_capacity(dims.len());
        for k in 0..dims.len() {
            let want = (Self::target_dim(dims, k, shift), dims[k]);
            let b = if want.0 == 0 { Matrix::zeros(0, want.1) } else { f(k) };
            if b.shape() != want {
                return Err(Error::Dimension(format!(
                    "block {k} of degree-{shift} operator is {:?}, expected {:?}",
                    b.shape(),
                    want
                )));
            }
            blocks.push(b);
        }
        Ok(GradedOperator { shift, dims: dims.to_vec(), blocks })
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn block(&self, k: usize) -> &Matrix {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    fn same_space(&self, o: &GradedOperator) {
        assert_eq!(self.dims, o.dims, "operators act on different graded spaces");
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &GradedOperator) -> GradedOperator {
        self.same_space(o);
        let shift = self.shift + o.shift;
        let blocks = (0..self.dims.len())
            .map(|k| {
                let mid = k as i32 + o.shift;
                let rows = Self::target_dim(&self.dims, k, shift);
                if mid < 0 || mid as usize >= self.dims.len() || rows == 0 {
                    Matrix::zeros(rows, self.dims[k])
                } else {
                    &self.blocks[mid as usize] * &o.blocks[k]
                }
            })
            .collect();
        GradedOperator { shift, dims: self.dims.clone(), blocks }
    }

    pub fn scale(&self, c: &Q) -> GradedOperator {
        GradedOperator {
            shift: self.shift,
            dims: self.dims.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn add(&self, o: &GradedOperator) -> GradedOperator {
        self.same_space(o);
        assert_eq!(self.shift, o.shift, "adding operators of different degree");
        GradedOperator {
            shift: self.shift,
            dims: self.dims.clone(),
            blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &GradedOperator) -> GradedOperator {
        self.add(&o.scale(&Q::from(-1)))
    }

    /// Graded commutator `AB − (−1)^{|A||B|} BA`.
    pub fn supercommutator(&self, o: &GradedOperator) -> GradedOperator {
        let ab = self.compose(o);
        let ba = o.compose(self);
        if (self.shift * o.shift).rem_euclid(2) == 0 {
            ab.sub(&ba)
        } else {
            ab.add(&ba)
        }
    }

    /// Adjoint for the Hermitian products `⟨x, y⟩_k = yᴴ G_k x`:
    /// `A*` on degree `k + shift` is `G_k⁻¹ Aᴴ G_{k+shift}`.
    pub fn gram_adjoint(&self, gram: &[Matrix], gram_inv: &[Matrix]) -> GradedOperator {
        let n = self.dims.len();
        let shift = -self.shift;
        let blocks = (0..n)
            .map(|j| {
                let src = j as i32 + shift;
                if src < 0 || src as usize >= n {
                    Matrix::zeros(0, self.dims[j])
                } else {
                    let k = src as usize;
                    &(&gram_inv[k] * &self.blocks[k].adjoint()) * &gram[j]
                }
            })
            .collect();
        GradedOperator { shift, dims: self.dims.clone(), blocks }
    }

    /// Conjugate every block by per-degree changes of basis: `P_{k+s} A_k P_k⁻¹`
    /// given `P` and `P⁻¹`.
    pub fn change_basis(&self, p: &[Matrix], p_inv: &[Matrix], new_dims: &[usize]) -> GradedOperator {
        let n = self.dims.len();
        let blocks = (0..n)
            .map(|k| {
                let t = k as i32 + self.shift;
                if t < 0 || t as usize >= n {
                    Matrix::zeros(0, new_dims[k])
                } else {
                    &(&p[t as usize] * &self.blocks[k]) * &p_inv[k]
                }
            })
            .collect();
        GradedOperator { shift: self.shift, dims: new_dims.to_vec(), blocks }
    }

    /// First degree whose block differs from `o`, with one differing entry.
    pub fn first_difference(&self, o: &GradedOperator) -> Option<(usize, usize, usize, Q, Q)> {
        self.same_space(o);
        if self.shift != o.shift {
            return Some((0, 0, 0, Q::from(0), Q::from(0)));
        }
        for k in 0..self.dims.len() {
            let (a, b) = (&self.blocks[k], &o.blocks[k]);
            if a != b {
                let diff = a - b;
                let (i, j, _) = diff.first_nonzero().expect("blocks differ");
                return Some((k, i, j, a[(i, j)].clone(), b[(i, j)].clone()));
            }
        }
        None
    }
}

impl fmt::Debug for GradedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedOperator(shift {}, dims {:?})", self.shift, self.dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nilpotent() -> GradedOperator {
        GradedOperator::from_fn(&[1, 1], 1, |_| Matrix::identity(1)).unwrap()
    }

    #[test]
    fn square_of_degree_one_step_vanishes() {
        let d = nilpotent();
        assert!(d.compose(&d).is_zero());
        // [d, d] = 2 d² for odd d
        assert!(d.supercommutator(&d).is_zero());
    }

    #[test]
    fn adjoint_of_adjoint() {
        let d =
            GradedOperator::from_fn(&[1, 2], 1, |_| Matrix::from_rows(vec![vec![Q::from(1)], vec![Q::i()]]))
                .unwrap();
        let g = vec![Matrix::identity(1), Matrix::from_ints(&[&[2, 1], &[1, 1]])];
        let gi: Vec<Matrix> = g.iter().map(|m| m.inverse().unwrap()).collect();
        let a = d.gram_adjoint(&g, &gi);
        assert_eq!(a.shift(), -1);
        assert_eq!(a.gram_adjoint(&g, &gi), d);
        // ⟨d x, y⟩ = ⟨x, d* y⟩ with x = 1, y = (1, i)
        let x = vec![Q::from(1)];
        let y = vec![Q::from(1), Q::i()];
        let dx = d.block(0).mul_vec(&x);
        let lhs: Q = (0..2)
            .map(|i| (0..2).map(|j| y[i].conj() * g[1][(i, j)].clone() * dx[j].clone()).sum::<Q>())
            .sum();
        let ay = a.block(1).mul_vec(&y);
        let rhs = ay[0].conj() * x[0].clone();
        assert_eq!(lhs, rhs);
    }
}
