//! Exterior algebra `Λ(V*)` on a finite basis `e^0, …, e^{N−1}`, with
//! monomials stored as bit masks in lexicographic order within each degree.

use num_traits::Zero;
use sasaki_core::{GaussianRational as Q, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorAlgebra {
    n: usize,
    masks: Vec<Vec<u32>>,
    position: Vec<usize>,
}

/// Sign of `e^a ∧ e^b` relative to `e^{a ∪ b}`, or `None` if they overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        // elements of a above j
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

fn combinations(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut out);
    out
}

impl ExteriorAlgebra {
    pub fn new(n: usize) -> Self {
        assert!(n < 31, "exterior algebra on at most 30 generators");
        let masks: Vec<Vec<u32>> = (0..=n).map(|k| combinations(n, k)).collect();
        let mut position = vec![0; 1 << n];
        for ms in &masks {
            for (i, &m) in ms.iter().enumerate() {
                position[m as usize] = i;
            }
        }
        ExteriorAlgebra { n, masks, position }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn dim(&self, k: usize) -> usize {
        self.masks.get(k).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.n).map(|k| self.dim(k)).collect()
    }

    pub fn mask(&self, k: usize, i: usize) -> u32 {
        self.masks[k][i]
    }

    pub fn masks(&self, k: usize) -> &[u32] {
        &self.masks[k]
    }

    pub fn position(&self, mask: u32) -> usize {
        self.position[mask as usize]
    }

    /// `"1"` for the unit, otherwise `"e0^e2^e3"`.
    pub fn label(&self, mask: u32) -> String {
        if mask == 0 {
            return "1".into();
        }
        (0..self.n).filter(|i| mask & (1 << i) != 0).map(|i| format!("e{i}")).collect::<Vec<_>>().join("^")
    }

    pub fn labels(&self, k: usize) -> Vec<String> {
        self.masks[k].iter().map(|&m| self.label(m)).collect()
    }

    /// Coefficient vector of a single monomial.
    pub fn monomial_vector(&self, mask: u32) -> Vec<Q> {
        let k = mask.count_ones() as usize;
        let mut v = vec![Q::zero(); self.dim(k)];
        v[self.position(mask)] = Q::from(1);
        v
    }

    /// Coefficient vector of `e^{i_1} ∧ … ∧ e^{i_r}` in the listed order.
    pub fn wedge_of_generators(&self, idx: &[usize]) -> Vec<Q> {
        let mut mask = 0u32;
        let mut s = 1i64;
        for &i in idx {
            match wedge_sign(mask, 1 << i) {
                Some(t) => {
                    s *= t;
                    mask |= 1 << i;
                }
                None => return vec![Q::zero(); self.dim(idx.len())],
            }
        }
        let mut v = self.monomial_vector(mask);
        v[self.position(mask)] = Q::from(s);
        v
    }

    /// `x ∧ y` for `x ∈ Λ^p`, `y ∈ Λ^q`.
    pub fn wedge(&self, p: usize, x: &[Q], q: usize, y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim(p + q)];
        if p + q > self.n {
            return out;
        }
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            let ma = self.masks[p][a];
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let mb = self.masks[q][b];
                if let Some(s) = wedge_sign(ma, mb) {
                    out[self.position(ma | mb)] += xa * yb * Q::from(s);
                }
            }
        }
        out
    }

    /// Matrix of `ω ↦ α ∧ ω` from `Λ^k` to `Λ^{k+p}`, for `α ∈ Λ^p`.
    pub fn left_multiplication(&self, p: usize, alpha: &[Q], k: usize) -> Matrix {
        let rows = self.dim(k + p);
        let mut m = Matrix::zeros(rows, self.dim(k));
        if rows == 0 {
            return m;
        }
        for (a, ca) in alpha.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ma = self.masks[p][a];
            for (j, &mb) in self.masks[k].iter().enumerate() {
                if let Some(s) = wedge_sign(ma, mb) {
                    m[(self.position(ma | mb), j)] += ca * &Q::from(s);
                }
            }
        }
        m
    }

    /// Interior product `i_X : Λ^k → Λ^{k−1}`,
    /// `i_X(e^{i_0} ∧ … ∧ e^{i_{k−1}}) = Σ_t (−1)^t X^{i_t} e^{… î_t …}`.
    pub fn interior(&self, x: &[Q], k: usize) -> Matrix {
        assert_eq!(x.len(), self.n, "vector length");
        if k == 0 {
            return Matrix::zeros(0, 1);
        }
        let mut m = Matrix::zeros(self.dim(k - 1), self.dim(k));
        if k > self.n {
            return m;
        }
        for (j, &mask) in self.masks[k].iter().enumerate() {
            let mut t = 0;
            for i in 0..self.n {
                if mask & (1 << i) == 0 {
                    continue;
                }
                if !x[i].is_zero() {
                    let s = if t % 2 == 0 { x[i].clone() } else { -x[i].clone() };
                    m[(self.position(mask & !(1 << i)), j)] += s;
                }
                t += 1;
            }
        }
        m
    }

    /// Extends a map on generators `e^i ↦ images[i] ∈ Λ^{1+s}` to a
    /// derivation of degree `s` on `Λ^k`: the image of `e^{i_0} ∧ … ∧ e^{i_{k−1}}`
    /// is `Σ_t (−1)^{s t} e^{i_0…i_{t−1}} ∧ images[i_t] ∧ e^{i_{t+1}…}`.
    pub fn derivation(&self, images: &[Vec<Q>], s: usize, k: usize) -> Matrix {
        assert_eq!(images.len(), self.n, "one image per generator");
        let rows = self.dim(k + s);
        let mut m = Matrix::zeros(rows, self.dim(k));
        if rows == 0 {
            return m;
        }
        for (j, &mask) in self.masks[k].iter().enumerate() {
            let mut t = 0usize;
            for i in 0..self.n {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let before = mask & ((1u32 << i) - 1);
                let after = mask & !((1u32 << (i + 1)) - 1);
                let sign_t = if (s * t).is_multiple_of(2) { 1 } else { -1 };
                for (c, coeff) in images[i].iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mid = self.masks[1 + s][c];
                    let Some(s1) = wedge_sign(before, mid) else { continue };
                    let Some(s2) = wedge_sign(before | mid, after) else { continue };
                    let target = self.position(before | mid | after);
                    m[(target, j)] += coeff * &Q::from(sign_t * s1 * s2);
                }
                t += 1;
            }
        }
        m
    }

    /// Mask complementary to `mask` and the sign of `e^mask ∧ e^complement`
    /// relative to the top monomial.
    pub fn complement(&self, mask: u32) -> (u32, i64) {
        let full = (1u32 << self.n) - 1;
        let c = full & !mask;
        (c, wedge_sign(mask, c).expect("disjoint"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_are_binomial() {
        assert_eq!(ExteriorAlgebra::new(5).dims(), vec![1, 5, 10, 10, 5, 1]);
    }

    #[test]
    fn wedge_is_graded_commutative() {
        let e = ExteriorAlgebra::new(4);
        let a = e.wedge_of_generators(&[0, 2]);
        let b = e.wedge_of_generators(&[1]);
        let ab = e.wedge(2, &a, 1, &b);
        let ba = e.wedge(1, &b, 2, &a);
        assert_eq!(ab, ba);
        let c = e.wedge_of_generators(&[3]);
        let bc = e.wedge(1, &b, 1, &c);
        let cb = e.wedge(1, &c, 1, &b);
        assert_eq!(bc, cb.iter().map(|x| -x.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn interior_is_antiderivation() {
        let e = ExteriorAlgebra::new(3);
        let x = vec![Q::from(1), Q::from(2), Q::i()];
        // i_X(e^0 ∧ e^1) = X^0 e^1 − X^1 e^0
        let v = e.interior(&x, 2).mul_vec(&e.wedge_of_generators(&[0, 1]));
        let mut want = vec![Q::zero(); 3];
        want[1] = Q::from(1);
        want[0] = Q::from(-2);
        assert_eq!(v, want);
    }

    #[test]
    fn left_multiplication_matches_wedge() {
        let e = ExteriorAlgebra::new(4);
        let a = e.wedge_of_generators(&[1, 3]);
        let m = e.left_multiplication(2, &a, 1);
        for j in 0..4 {
            let y = e.monomial_vector(1 << j);
            assert_eq!(m.mul_vec(&y), e.wedge(2, &a, 1, &y));
        }
    }
}
