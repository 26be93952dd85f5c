//! Dense matrices over `ℚ(i)`.
//!
//! Ranks and determinants use fraction-free (Bareiss) elimination after
//! clearing denominators row by row, so every intermediate entry stays in
//! `ℤ[i]`. Bases of kernels and column spaces come from the reduced row
//! echelon form.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational as Q;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. All rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect())
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[Q]) -> Self {
        Self::from_columns(v.len(), &[v.to_vec()])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Q::conj).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        let mut out = vec![Q::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let orow = o.row(k);
                let base = i * o.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with row index `i * other.rows + k`.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = &o[(k, l)];
                        if !b.is_zero() {
                            out[(i * o.rows + k, j * o.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows, "hstack rows");
        Matrix::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                o[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    /// Writes `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    /// True when the matrix equals its conjugate transpose.
    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    /// Reduced row echelon form and pivot columns (field elimination).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            let prow: Vec<(usize, Q)> =
                (c..m.cols).filter(|&j| !m[(r, j)].is_zero()).map(|j| (j, m[(r, j)].clone())).collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for (j, v) in &prow {
                    let t = &f * v;
                    m[(i, *j)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Copy with every row scaled to clear denominators, so all entries lie
    /// in `ℤ[i]`. Row scaling by nonzero constants preserves rank.
    fn integral_rows(&self) -> Matrix {
        let mut m = self.clone();
        for i in 0..m.rows {
            let mut l = BigInt::one();
            for j in 0..m.cols {
                let d = m[(i, j)].denom_lcm();
                l = num_integer::lcm(l, d);
            }
            if !l.is_one() {
                let s = BigRational::from_integer(l);
                for j in 0..m.cols {
                    if !m[(i, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].scale(&s);
                    }
                }
            }
        }
        m
    }

    /// Fraction-free elimination. Returns the rank and, for square input,
    /// the determinant of the integral-row-scaled matrix together with the
    /// product of the scalings (so `det(self) = det_scaled / scale`).
    fn bareiss(&self) -> (usize, Q) {
        let mut m = self.integral_rows();
        let mut prev = Q::one();
        let mut rank = 0;
        let mut sign_flip = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap_rows(r, p);
                sign_flip = !sign_flip;
            }
            let piv = m[(r, c)].clone();
            for i in (r + 1)..m.rows {
                let f = m[(i, c)].clone();
                for j in (c + 1)..m.cols {
                    let v = &(&piv * &m[(i, j)]) - &(&f * &m[(r, j)]);
                    // exact in ℤ[i] by Sylvester's identity
                    m[(i, j)] = &v / &prev;
                }
                m[(i, c)] = Q::zero();
            }
            prev = piv;
            rank += 1;
            r += 1;
        }
        let det = if m.is_square() && rank == m.rows {
            if sign_flip {
                -prev
            } else {
                prev
            }
        } else {
            Q::zero()
        };
        (rank, det)
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.bareiss().0
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<Q> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("determinant of {}x{}", self.rows, self.cols)));
        }
        if self.rows == 0 {
            return Ok(Q::one());
        }
        let (_, det_scaled) = self.bareiss();
        if det_scaled.is_zero() {
            return Ok(det_scaled);
        }
        let mut scale = Q::one();
        for i in 0..self.rows {
            let mut l = BigInt::one();
            for j in 0..self.cols {
                l = num_integer::lcm(l, self[(i, j)].denom_lcm());
            }
            scale = &scale * &Q::from_rational(BigRational::from_integer(l));
        }
        Ok(&det_scaled / &scale)
    }

    /// Columns spanning the kernel, one per free variable of the RREF.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k[(f, t)] = Q::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                let v = &r[(pi, f)];
                if !v.is_zero() {
                    k[(pc, t)] = -v.clone();
                }
            }
        }
        k
    }

    /// Solves `self · x = b` for one particular solution.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows, "solve shape");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = r[(pi, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Matrix::zeros(0, 0));
        }
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular(format!("{n}x{n} matrix is not invertible")));
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    /// Left inverse `(AᴴA)⁻¹Aᴴ` of a matrix with independent columns.
    pub fn left_inverse(&self) -> Result<Matrix> {
        let a_h = self.adjoint();
        let g = &a_h * self;
        Ok(&g.inverse()? * &a_h)
    }

    /// Leading principal minors, in order of increasing size.
    pub fn leading_principal_minors(&self) -> Vec<Q> {
        (1..=self.rows.min(self.cols))
            .map(|k| self.submatrix(0..k, 0..k).det().expect("square minor"))
            .collect()
    }

    /// Position and value of the first nonzero entry, for witnesses.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Q)> {
        self.data
            .iter()
            .position(|x| !x.is_zero())
            .map(|p| (p / self.cols, p % self.cols, self.data[p].clone()))
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.checked_mul(o).expect("matrix product shape")
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, o: Matrix) -> Matrix {
        &self * &o
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        assert_eq!(self.shape(), o.shape(), "matrix sum shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for Matrix {
    type Output = Matrix;
    fn add(self, o: Matrix) -> Matrix {
        &self + &o
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        assert_eq!(self.shape(), o.shape(), "matrix difference shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for Matrix {
    type Output = Matrix;
    fn sub(self, o: Matrix) -> Matrix {
        &self - &o
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert_eq!(Matrix::identity(3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::identity(3).rank(), 3);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let k = Matrix::zeros(2, 3).kernel_basis();
        assert_eq!(k.cols(), 3);
        assert_eq!(Matrix::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn gaussian_kernel_example() {
        // row 2 = -i · row 1; by hand x + i y = 0, so the kernel is
        // spanned by (1, i)ᵀ.
        let m = Matrix::from_rows(vec![vec![q("1"), q("1*i")], vec![q("-1*i"), q("1")]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!((&m * &k).is_zero());
        let v = k.column(0);
        assert_eq!(&v[1] / &v[0], q("1*i"));
        // (i, 1)ᵀ is not a kernel vector: m · (i, 1)ᵀ = (2i, 2)ᵀ
        let w = m.mul_vec(&[q("1*i"), q("1")]);
        assert_eq!(w, vec![q("2*i"), q("2")]);
    }

    #[test]
    fn bareiss_determinant_matches_cofactor_expansion() {
        let m = Matrix::from_rows(vec![
            vec![q("1/2"), q("2+1*i"), q("0")],
            vec![q("3"), q("-1/3*i"), q("1")],
            vec![q("1"), q("1"), q("2/5")],
        ]);
        let cof = |a: &Matrix| -> Q {
            let d2 = |r0: usize, r1: usize, c0: usize, c1: usize| {
                &(&a[(r0, c0)] * &a[(r1, c1)]) - &(&a[(r0, c1)] * &a[(r1, c0)])
            };
            &(&a[(0, 0)] * &d2(1, 2, 1, 2)) - &(&a[(0, 1)] * &d2(1, 2, 0, 2)) + &a[(0, 2)] * &d2(1, 2, 0, 1)
        };
        assert_eq!(m.det().unwrap(), cof(&m));
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_rows(vec![vec![q("2"), q("1*i")], vec![q("1"), q("3")]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        let b = Matrix::column_vector(&[q("1"), q("2")]);
        let x = m.solve(&b).unwrap();
        assert_eq!(&m * &x, b);
        assert!(Matrix::zeros(2, 2).inverse().is_err());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = Matrix::identity(2);
        let k = a.kron(&b);
        assert_eq!(k.shape(), (4, 4));
        assert_eq!(k[(2, 0)], Q::from(3));
        assert_eq!(k[(3, 1)], Q::from(3));
        assert_eq!(k[(3, 0)], Q::zero());
    }
}
