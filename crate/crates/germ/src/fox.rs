//! Finitely presented groups, matrix representations, the tangent space
//! `H¹(Γ, ad ρ)` by Fox calculus, and relators expanded to order two.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use sasaki_core::dgla::{EquationBlock, McConstraintSystem};
use sasaki_core::{Error, GaussianRational as Q, Matrix, Result, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// Generators are single lowercase ASCII letters; in a word the uppercase
/// letter stands for the inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<char>,
    relators: Vec<Vec<Letter>>,
}

impl GroupPresentation {
    pub fn new<S: AsRef<str>>(generators: &[S], relators: &[S]) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            let g = g.as_ref();
            let mut chars = g.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_lowercase() => {
                    if gens.contains(&c) {
                        return Err(Error::Parse(format!("duplicate generator {c:?}")));
                    }
                    gens.push(c);
                }
                _ => return Err(Error::Parse(format!("generator {g:?} is not a single lowercase letter"))),
            }
        }
        let mut gp = GroupPresentation { generators: gens, relators: Vec::new() };
        for r in relators {
            let w = gp.parse_word(r.as_ref())?;
            if let Some(i) = (1..w.len()).find(|&i| is_cancelling(w[i - 1], w[i])) {
                return Err(Error::Parse(format!(
                    "relator {:?} is not freely reduced at position {i}",
                    r.as_ref()
                )));
            }
            gp.relators.push(w);
        }
        Ok(gp)
    }

    pub fn parse_word(&self, w: &str) -> Result<Vec<Letter>> {
        w.chars()
            .map(|c| {
                let lower = c.to_ascii_lowercase();
                self.generators
                    .iter()
                    .position(|&g| g == lower)
                    .map(|generator| Letter { generator, inverse: c.is_ascii_uppercase() })
                    .ok_or_else(|| Error::Parse(format!("letter {c:?} in {w:?} is not a generator")))
            })
            .collect()
    }

    pub fn word_string(&self, w: &[Letter]) -> String {
        w.iter()
            .map(|l| {
                let c = self.generators[l.generator];
                if l.inverse {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    }

    pub fn generators(&self) -> &[char] {
        &self.generators
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        let mut chars = label.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => self.generators.iter().position(|&g| g == c),
            _ => None,
        }
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators.iter().map(|r| self.word_string(r)).collect()
    }

    /// `Γ₃ = ⟨a, b, c | [a,b]c⁻¹, [a,c], [b,c]⟩`, the lattice of the
    /// three-dimensional Heisenberg group.
    pub fn heisenberg3() -> Self {
        Self::new(&["a", "b", "c"], &["abABC", "acAC", "bcBC"]).expect("valid presentation")
    }

    /// Lattice of the five-dimensional Heisenberg group: pairs `(a, b)` and
    /// `(c, d)` with `[a,b] = [c,d] = z`, all other pairs commuting, `z` central.
    pub fn heisenberg5() -> Self {
        Self::new(
            &["a", "b", "c", "d", "z"],
            &["abABZ", "cdCDZ", "acAC", "adAD", "bcBC", "bdBD", "azAZ", "bzBZ", "czCZ", "dzDZ"],
        )
        .expect("valid presentation")
    }

    pub fn free(generators: &[&str]) -> Result<Self> {
        Self::new(generators, &[])
    }
}

fn is_cancelling(a: Letter, b: Letter) -> bool {
    a.generator == b.generator && a.inverse != b.inverse
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(char::to_string).collect();
        write!(f, "⟨{} | {}⟩", gens.join(", "), self.relator_strings().join(", "))
    }
}

/// Images of the generators in `GL_m`, checked against every relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    rank: usize,
    images: Vec<Matrix>,
    inverses: Vec<Matrix>,
}

impl Representation {
    pub fn new(gp: &GroupPresentation, images: Vec<Matrix>) -> Result<Self> {
        if images.len() != gp.generators().len() {
            return Err(Error::InvalidRepresentation(format!(
                "{} images for {} generators",
                images.len(),
                gp.generators().len()
            )));
        }
        let rank = images.first().map_or(1, Matrix::rows);
        let mut inverses = Vec::with_capacity(images.len());
        for (g, m) in gp.generators().iter().zip(&images) {
            if m.shape() != (rank, rank) {
                return Err(Error::InvalidRepresentation(format!("image of {g} is not {rank}×{rank}")));
            }
            inverses.push(
                m.inverse().map_err(|_| Error::InvalidRepresentation(format!("image of {g} is singular")))?,
            );
        }
        let rho = Representation { rank, images, inverses };
        for r in gp.relators() {
            if rho.evaluate(r) != Matrix::identity(rank) {
                return Err(Error::InvalidRepresentation(format!(
                    "relator {} does not evaluate to the identity",
                    gp.word_string(r)
                )));
            }
        }
        Ok(rho)
    }

    pub fn trivial(gp: &GroupPresentation, rank: usize) -> Self {
        let id = Matrix::identity(rank);
        let n = gp.generators().len();
        Representation { rank, images: vec![id.clone(); n], inverses: vec![id; n] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn is_trivial(&self) -> bool {
        let id = Matrix::identity(self.rank);
        self.images.iter().all(|m| *m == id)
    }

    fn letter(&self, l: Letter) -> &Matrix {
        if l.inverse {
            &self.inverses[l.generator]
        } else {
            &self.images[l.generator]
        }
    }

    pub fn evaluate(&self, w: &[Letter]) -> Matrix {
        w.iter().fold(Matrix::identity(self.rank), |acc, &l| &acc * self.letter(l))
    }
}

/// `Ad_P` on `gl_m` in row-major coordinates: `X ↦ P X P⁻¹`.
fn ad(p: &Matrix, p_inv: &Matrix) -> Matrix {
    p.kron(&p_inv.transpose())
}

/// Jacobian of `u ↦ (u(r))_r` on crossed homomorphisms, with
/// `u(gh) = u(g) + Ad_{ρ(g)} u(h)` and `u(g⁻¹) = −Ad_{ρ(g)⁻¹} u(g)`.
/// Rows are relator-major, columns generator-major, each block `m² × m²`.
pub fn fox_jacobian(gp: &GroupPresentation, rho: &Representation) -> Matrix {
    let m = rho.rank();
    let mm = m * m;
    let ngen = gp.generators().len();
    let mut jac = Matrix::zeros(gp.relators().len() * mm, ngen * mm);
    for (ri, r) in gp.relators().iter().enumerate() {
        let mut prefix = Matrix::identity(m);
        let mut prefix_inv = Matrix::identity(m);
        for &l in r {
            let g = l.generator;
            let block = if l.inverse {
                let p = &prefix * &rho.inverses[g];
                let p_inv = &rho.images[g] * &prefix_inv;
                ad(&p, &p_inv).scale(&-Q::one())
            } else {
                ad(&prefix, &prefix_inv)
            };
            let r0 = ri * mm;
            let c0 = g * mm;
            let current = jac.submatrix(r0..r0 + mm, c0..c0 + mm);
            jac.set_block(r0, c0, &(&current + &block));
            prefix = &prefix * rho.letter(l);
            let step_inv = rho.letter(Letter { generator: g, inverse: !l.inverse }).clone();
            prefix_inv = &step_inv * &prefix_inv;
        }
    }
    jac
}

/// `X ↦ (X − Ad_{ρ(g)} X)_g`, whose image is the coboundaries.
pub fn principal_map(gp: &GroupPresentation, rho: &Representation) -> Matrix {
    let m = rho.rank();
    let mm = m * m;
    let id = Matrix::identity(mm);
    let mut out = Matrix::zeros(gp.generators().len() * mm, mm);
    for g in 0..gp.generators().len() {
        out.set_block(g * mm, 0, &(&id - &ad(&rho.images[g], &rho.inverses[g])));
    }
    out
}

#[derive(Clone, Debug)]
pub struct FoxTangent {
    pub rank: usize,
    pub jacobian: Matrix,
    /// `Z¹(Γ, ad ρ)` inside `⊕_g gl_m`.
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
    /// Columns spanning a complement of `B¹` in `Z¹`.
    pub representatives: Matrix,
}

impl FoxTangent {
    pub fn z1_dim(&self) -> usize {
        self.cocycles.dim()
    }

    pub fn b1_dim(&self) -> usize {
        self.coboundaries.dim()
    }

    pub fn h1_dim(&self) -> usize {
        self.representatives.cols()
    }
}

pub fn fox_tangent(gp: &GroupPresentation, rho: &Representation) -> Result<FoxTangent> {
    let jacobian = fox_jacobian(gp, rho);
    let cocycles = Subspace::kernel(&jacobian);
    let coboundaries = Subspace::image(&principal_map(gp, rho));
    if !cocycles.contains_subspace(&coboundaries) {
        return Err(Error::Inconsistent("principal crossed homomorphisms are not cocycles".into()));
    }
    let representatives = cocycles.quotient_basis(&coboundaries)?;
    Ok(FoxTangent { rank: rho.rank(), jacobian, cocycles, coboundaries, representatives })
}

/// Polynomial matrix truncated above order two, in variables `0..nvars`.
#[derive(Clone, Debug)]
struct Truncated {
    m0: Matrix,
    m1: BTreeMap<usize, Matrix>,
    /// Keys `(a, b)` with `a ≤ b`, coefficient of `x_a x_b`.
    m2: BTreeMap<(usize, usize), Matrix>,
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Matrix>, k: K, m: Matrix) {
    if m.is_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(e) => *e = &*e + &m,
        None => {
            map.insert(k, m);
        }
    }
}

impl Truncated {
    fn constant(m0: Matrix) -> Self {
        Truncated { m0, m1: BTreeMap::new(), m2: BTreeMap::new() }
    }

    fn mul(&self, o: &Truncated) -> Truncated {
        let mut m1 = BTreeMap::new();
        for (&v, a) in &self.m1 {
            add_into(&mut m1, v, a * &o.m0);
        }
        for (&v, b) in &o.m1 {
            add_into(&mut m1, v, &self.m0 * b);
        }
        let mut m2 = BTreeMap::new();
        for (&k, a) in &self.m2 {
            add_into(&mut m2, k, a * &o.m0);
        }
        for (&k, b) in &o.m2 {
            add_into(&mut m2, k, &self.m0 * b);
        }
        for (&va, a) in &self.m1 {
            for (&vb, b) in &o.m1 {
                add_into(&mut m2, (va.min(vb), va.max(vb)), a * b);
            }
        }
        Truncated { m0: &self.m0 * &o.m0, m1, m2 }
    }
}

/// Matrix unit `E_ij`.
fn unit(m: usize, i: usize, j: usize) -> Matrix {
    Matrix::from_fn(m, m, |a, b| if (a, b) == (i, j) { Q::one() } else { Q::zero() })
}

/// `I ± U + U²/2` with `U = Σ u_v E_v` over the variables of generator `g`.
fn exp_order2(m: usize, g: usize, sign: &Q) -> Truncated {
    let mm = m * m;
    let half = Q::from_ratio(1, 2);
    let e: Vec<Matrix> = (0..mm).map(|k| unit(m, k / m, k % m)).collect();
    let mut t = Truncated::constant(Matrix::identity(m));
    for (k, ek) in e.iter().enumerate() {
        t.m1.insert(g * mm + k, ek.scale(sign));
    }
    for a in 0..mm {
        for b in a..mm {
            let s = if a == b { &e[a] * &e[a] } else { &(&e[a] * &e[b]) + &(&e[b] * &e[a]) };
            add_into(&mut t.m2, (g * mm + a, g * mm + b), s.scale(&half));
        }
    }
    t
}

/// Substitutes `ρ(g)(I + U_g + U_g²/2)` for `g` and `(I − U_g + U_g²/2)ρ(g)⁻¹`
/// for `g⁻¹` in every relator and keeps the terms of order one and two.
/// Variables are the entries of `U_g`, generator-major and row-major.
pub fn relator_order2(gp: &GroupPresentation, rho: &Representation) -> McConstraintSystem {
    let m = rho.rank();
    let mm = m * m;
    let nvars = gp.generators().len() * mm;
    let variables = gp
        .generators()
        .iter()
        .flat_map(|g| (0..mm).map(move |k| format!("u_{g}[{},{}]", k / m, k % m)))
        .collect();
    let mut equations = Vec::new();
    let mut linear = Matrix::zeros(gp.relators().len() * mm, nvars);
    let mut quadratic = Vec::new();
    let mut blocks = Vec::new();
    let half = Q::from_ratio(1, 2);
    for (ri, r) in gp.relators().iter().enumerate() {
        let word = gp.word_string(r);
        let mut acc = Truncated::constant(Matrix::identity(m));
        for &l in r {
            let factor = if l.inverse {
                exp_order2(m, l.generator, &-Q::one())
                    .mul(&Truncated::constant(rho.inverses[l.generator].clone()))
            } else {
                Truncated::constant(rho.images[l.generator].clone()).mul(&exp_order2(
                    m,
                    l.generator,
                    &Q::one(),
                ))
            };
            acc = acc.mul(&factor);
        }
        for k in 0..mm {
            let (i, j) = (k / m, k % m);
            let row = ri * mm + k;
            equations.push(format!("{word}[{i},{j}]"));
            for (&v, c) in &acc.m1 {
                linear[(row, v)] = c[(i, j)].clone();
            }
            let mut qm = Matrix::zeros(nvars, nvars);
            for (&(a, b), c) in &acc.m2 {
                let x = &c[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if a == b {
                    qm[(a, a)] = x.clone();
                } else {
                    let h = x * &half;
                    qm[(a, b)] = h.clone();
                    qm[(b, a)] = h;
                }
            }
            quadratic.push(qm);
        }
        blocks.push(EquationBlock { label: word, rows: ri * mm..(ri + 1) * mm });
    }
    McConstraintSystem { variables, equations, linear_part: linear, quadratic_part: quadratic, blocks }
}

/// Agreement of `Z¹` computed from the Fox Jacobian and from the order-one
/// expansion, the two related by `u_g = Ad_{ρ(g)} U_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearKernelCheck {
    pub fox_kernel_dim: usize,
    pub expansion_kernel_dim: usize,
    /// The linear part equals the Fox Jacobian composed with `⊕ Ad_{ρ(g)}`.
    pub jacobians_agree: bool,
    pub kernels_agree: bool,
}

pub fn linear_kernel_check(gp: &GroupPresentation, rho: &Representation) -> LinearKernelCheck {
    let m = rho.rank();
    let mm = m * m;
    let ngen = gp.generators().len();
    let mut adjoint = Matrix::zeros(ngen * mm, ngen * mm);
    for g in 0..ngen {
        adjoint.set_block(g * mm, g * mm, &ad(&rho.images[g], &rho.inverses[g]));
    }
    let fox = fox_jacobian(gp, rho);
    let sys = relator_order2(gp, rho);
    let fox_kernel = Subspace::kernel(&fox);
    let expansion_kernel = Subspace::kernel(&sys.linear_part);
    LinearKernelCheck {
        fox_kernel_dim: fox_kernel.dim(),
        expansion_kernel_dim: expansion_kernel.dim(),
        jacobians_agree: &fox * &adjoint == sys.linear_part,
        kernels_agree: expansion_kernel.map(&adjoint) == fox_kernel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing_and_reduction() {
        let gp = GroupPresentation::heisenberg3();
        assert_eq!(gp.relator_strings(), vec!["abABC", "acAC", "bcBC"]);
        assert!(GroupPresentation::new(&["a", "b"], &["aAb"]).is_err());
        assert!(GroupPresentation::new(&["a", "a"], &[]).is_err());
        assert!(GroupPresentation::new(&["a"], &["ab"]).is_err());
        assert!(GroupPresentation::new(&["ab"], &[]).is_err());
    }

    #[test]
    fn representations_are_checked() {
        let gp = GroupPresentation::heisenberg3();
        let upper = Matrix::from_ints(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let lower = Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
        let id = Matrix::identity(3);
        // a, b do not commute in this choice, so c = [a, b] must be nontrivial
        assert!(Representation::new(&gp, vec![upper.clone(), lower.clone(), id.clone()]).is_err());
        let comm = gp.parse_word("abAB").unwrap();
        let rho = Representation {
            rank: 3,
            images: vec![upper.clone(), lower.clone(), id.clone()],
            inverses: vec![upper.inverse().unwrap(), lower.inverse().unwrap(), id],
        };
        let c = rho.evaluate(&comm);
        assert_ne!(c, Matrix::identity(3));
    }

    #[test]
    fn heisenberg3_tangent() {
        let gp = GroupPresentation::heisenberg3();
        let t = fox_tangent(&gp, &Representation::trivial(&gp, 1)).unwrap();
        assert_eq!((t.z1_dim(), t.b1_dim(), t.h1_dim()), (2, 0, 2));
        // u_c = 0 on cocycles
        assert!(t.cocycles.basis().row(2).iter().all(Q::is_zero));
        let sys = relator_order2(&gp, &Representation::trivial(&gp, 1));
        assert_eq!(sys.linear_part.rank(), 1);
        // only exp(−u_c) contributes at order two for a scalar target
        let mut q = Matrix::zeros(3, 3);
        q[(2, 2)] = Q::from_ratio(1, 2);
        assert_eq!(sys.quadratic_part, vec![q, Matrix::zeros(3, 3), Matrix::zeros(3, 3)]);
    }

    #[test]
    fn heisenberg5_tangent() {
        let gp = GroupPresentation::heisenberg5();
        assert_eq!(gp.relators().len(), 10);
        for (m, h1) in [(1, 4), (2, 16)] {
            let rho = Representation::trivial(&gp, m);
            let t = fox_tangent(&gp, &rho).unwrap();
            assert_eq!(t.h1_dim(), h1);
            assert_eq!(t.b1_dim(), 0);
            let k = linear_kernel_check(&gp, &rho);
            assert!(k.jacobians_agree && k.kernels_agree);
        }
    }

    #[test]
    fn free_group_has_empty_system() {
        let gp = GroupPresentation::free(&["a", "b"]).unwrap();
        let sys = relator_order2(&gp, &Representation::trivial(&gp, 2));
        assert!(sys.equations.is_empty());
        assert_eq!(fox_tangent(&gp, &Representation::trivial(&gp, 2)).unwrap().h1_dim(), 8);
    }

    #[test]
    fn commutator_expansion_is_the_bracket() {
        let gp = GroupPresentation::new(&["a", "b"], &["abAB"]).unwrap();
        let sys = relator_order2(&gp, &Representation::trivial(&gp, 2));
        assert!(sys.linear_part.is_zero());
        // U_a = E_01, U_b = E_10: [U_a, U_b] = E_00 − E_11
        let mut x = vec![Q::zero(); 8];
        x[1] = Q::one();
        x[4 + 2] = Q::one();
        let v = sys.evaluate(&x);
        assert_eq!(v, vec![Q::one(), Q::zero(), Q::zero(), -Q::one()]);
    }

    #[test]
    fn nontrivial_rank_two_representation() {
        // a ↦ diag(1, −1), b ↦ diag(−1, 1) on ⟨a, b | [a, b]⟩
        let gp = GroupPresentation::new(&["a", "b"], &["abAB"]).unwrap();
        let a = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
        let b = Matrix::from_ints(&[&[-1, 0], &[0, 1]]);
        let rho = Representation::new(&gp, vec![a, b]).unwrap();
        let t = fox_tangent(&gp, &rho).unwrap();
        // B¹ ≅ gl₂ / centraliser = off-diagonal part
        assert_eq!(t.b1_dim(), 2);
        let k = linear_kernel_check(&gp, &rho);
        assert!(k.jacobians_agree && k.kernels_agree);
        assert_eq!(k.fox_kernel_dim, t.z1_dim());
    }
}
