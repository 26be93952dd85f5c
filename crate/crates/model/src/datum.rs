//! Lie-algebra data `(g, η, ξ, I)` for left-invariant Sasakian structures,
//! and the validator checking each defining axiom.

use num_traits::{One, Signed, Zero};
use sasaki_core::{Error, GaussianRational as Q, Matrix, Rational, Result, Subspace};

use crate::exterior::ExteriorAlgebra;

/// One structure constant: `[e_i, e_j]` has `coeff` along `e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SasakianLieDatum {
    name: String,
    dim: usize,
    brackets: Vec<Bracket>,
    /// `c[(i * dim + j) * dim + k] = c_{ij}^k`, antisymmetric in `i, j`.
    structure: Vec<Q>,
    eta: Vec<Q>,
    xi: Vec<Q>,
    /// Column `j` is `I(e_j)`.
    cplx: Matrix,
    orientation: i8,
}

impl SasakianLieDatum {
    /// Builds a datum from a list of brackets `[e_i, e_j] = Σ coeff e_k`
    /// (the list gives each unordered pair `i, j` once per `k`).
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        brackets: Vec<Bracket>,
        eta: Vec<Q>,
        xi: Vec<Q>,
        cplx: Matrix,
        orientation: i8,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDatum("dimension must be positive".into()));
        }
        if eta.len() != dim || xi.len() != dim {
            return Err(Error::Dimension(format!("eta/xi must have length {dim}")));
        }
        if cplx.shape() != (dim, dim) {
            return Err(Error::Dimension(format!("I must be {dim}x{dim}")));
        }
        if orientation != 1 && orientation != -1 {
            return Err(Error::InvalidDatum("orientation must be +1 or -1".into()));
        }
        let mut structure = vec![Q::zero(); dim * dim * dim];
        let mut seen = std::collections::BTreeSet::new();
        for b in &brackets {
            if b.i >= dim || b.j >= dim || b.k >= dim {
                return Err(Error::InvalidDatum(format!(
                    "bracket index out of range: ({}, {}, {})",
                    b.i, b.j, b.k
                )));
            }
            if b.i == b.j {
                if !b.coeff.is_zero() {
                    return Err(Error::InvalidDatum(format!("[e{}, e{}] must vanish", b.i, b.i)));
                }
                continue;
            }
            let key = (b.i.min(b.j), b.i.max(b.j), b.k);
            if !seen.insert(key) {
                return Err(Error::InvalidDatum(format!(
                    "bracket [e{}, e{}] along e{} given twice",
                    key.0, key.1, key.2
                )));
            }
            structure[(b.i * dim + b.j) * dim + b.k] += b.coeff.clone();
            structure[(b.j * dim + b.i) * dim + b.k] -= &b.coeff;
        }
        Ok(SasakianLieDatum { name: name.into(), dim, brackets, structure, eta, xi, cplx, orientation })
    }

    /// Heisenberg algebra `h_{2n+1}`: `[e_{2i−1}, e_{2i}] = −e_0`, `η = e^0`,
    /// `ξ = e_0`, `I e_{2i−1} = e_{2i}`, `I e_{2i} = −e_{2i−1}`.
    pub fn heisenberg(n: usize) -> Self {
        let dim = 2 * n + 1;
        let brackets =
            (1..=n).map(|i| Bracket { i: 2 * i - 1, j: 2 * i, k: 0, coeff: Q::from(-1) }).collect();
        Self::new(
            format!("h{dim}"),
            dim,
            brackets,
            unit(dim, 0),
            unit(dim, 0),
            standard_complex_structure(n),
            1,
        )
        .expect("well-formed Heisenberg datum")
    }

    /// Abelian algebra of odd dimension with the Heisenberg choices of
    /// `η`, `ξ`, `I`; fails the contact condition.
    pub fn abelian(n: usize) -> Self {
        let dim = 2 * n + 1;
        Self::new(
            format!("abelian{dim}"),
            dim,
            vec![],
            unit(dim, 0),
            unit(dim, 0),
            standard_complex_structure(n),
            1,
        )
        .expect("well-formed abelian datum")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Transverse complex dimension `n` with `dim = 2n + 1`.
    pub fn n(&self) -> usize {
        (self.dim - 1) / 2
    }

    pub fn brackets(&self) -> &[Bracket] {
        &self.brackets
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn eta(&self) -> &[Q] {
        &self.eta
    }

    pub fn xi(&self) -> &[Q] {
        &self.xi
    }

    pub fn cplx(&self) -> &Matrix {
        &self.cplx
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// `[X, Y]` for coefficient vectors.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim;
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// `dη(e_i, e_j) = −η([e_i, e_j])` as an antisymmetric matrix.
    pub fn d_eta_matrix(&self) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, n, |i, j| {
            -(0..n).map(|k| self.structure_constant(i, j, k) * &self.eta[k]).sum::<Q>()
        })
    }

    /// `g(X, Y) = dη(X, IY) + η(X)η(Y)`.
    pub fn metric_matrix(&self) -> Matrix {
        let de = self.d_eta_matrix();
        let l = &de * &self.cplx;
        let n = self.dim;
        Matrix::from_fn(n, n, |i, j| l[(i, j)].clone() + &self.eta[i] * &self.eta[j])
    }

    /// Basis of `S = ker η`, one column per vector.
    pub fn contact_distribution(&self) -> Subspace {
        Subspace::kernel(&Matrix::from_rows(vec![self.eta.clone()]))
    }

    pub fn validate(&self) -> ValidationReport {
        validate_sasakian(self)
    }
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// `I` on `e_0, …, e_{2n}` with `I e_0 = 0`, `I e_{2i−1} = e_{2i}`.
pub fn standard_complex_structure(n: usize) -> Matrix {
    let mut m = Matrix::zeros(2 * n + 1, 2 * n + 1);
    for i in 1..=n {
        m[(2 * i, 2 * i - 1)] = Q::one();
        m[(2 * i - 1, 2 * i)] = Q::from(-1);
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn axiom(name: &'static str, witness: Option<String>) -> AxiomCheck {
    AxiomCheck { name, passed: witness.is_none(), witness }
}

/// Coefficient of `η ∧ (dη)ⁿ` on `e^0 ∧ … ∧ e^{2n}`.
pub fn contact_volume(datum: &SasakianLieDatum) -> Q {
    let ext = ExteriorAlgebra::new(datum.dim());
    let de = datum.d_eta_matrix();
    let d_eta: Vec<Q> = ext
        .masks(2)
        .iter()
        .map(|&m| {
            let i = m.trailing_zeros() as usize;
            let j = 31 - m.leading_zeros() as usize;
            de[(i, j)].clone()
        })
        .collect();
    let mut acc = datum.eta().to_vec();
    let mut deg = 1;
    for _ in 0..datum.n() {
        acc = ext.wedge(deg, &acc, 2, &d_eta);
        deg += 2;
    }
    acc.into_iter().next().unwrap_or_else(Q::zero)
}

/// Checks every defining axiom of a left-invariant Sasakian structure.
pub fn validate_sasakian(datum: &SasakianLieDatum) -> ValidationReport {
    let n = datum.dim();
    let e = |i: usize| unit(n, i);
    let mut checks = Vec::new();

    checks.push(axiom("odd-dimension", n.is_multiple_of(2).then(|| format!("dimension {n} is even"))));

    let real = datum.cplx.first_nonzero_imag();
    checks.push(axiom(
        "complex-structure-real",
        real.map(|(i, j)| format!("I has non-real entry at ({i},{j})")),
    ));

    let mut jac = None;
    'outer: for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let t1 = datum.bracket(&e(a), &datum.bracket(&e(b), &e(c)));
                let t2 = datum.bracket(&e(b), &datum.bracket(&e(c), &e(a)));
                let t3 = datum.bracket(&e(c), &datum.bracket(&e(a), &e(b)));
                if (0..n).any(|k| !(&t1[k] + &t2[k] + &t3[k]).is_zero()) {
                    jac = Some(format!("Jacobi fails on (e{a}, e{b}, e{c})"));
                    break 'outer;
                }
            }
        }
    }
    checks.push(axiom("jacobi", jac));

    let eta_xi: Q = datum.eta.iter().zip(&datum.xi).map(|(a, b)| a * b).sum();
    checks.push(axiom("reeb-normalization", (!eta_xi.is_one()).then(|| format!("η(ξ) = {eta_xi}"))));

    let de = datum.d_eta_matrix();
    let ixi = de.transpose().mul_vec(&datum.xi);
    checks.push(axiom(
        "reeb-contact-compatibility",
        ixi.iter().position(|c| !c.is_zero()).map(|j| format!("dη(ξ, e{j}) = {}", ixi[j])),
    ));

    let vol = contact_volume(datum);
    checks.push(axiom("contact-condition", vol.is_zero().then(|| "η ∧ (dη)^n = 0".to_string())));
    let sign_ok = vol.is_zero()
        || (vol.re().is_positive() && datum.orientation == 1)
        || (vol.re().is_negative() && datum.orientation == -1);
    checks.push(axiom(
        "orientation",
        (!sign_ok)
            .then(|| format!("η ∧ (dη)^n = {vol}·e^0..e^{}, orientation field {}", n - 1, datum.orientation)),
    ));

    let i_xi = datum.cplx.mul_vec(&datum.xi);
    checks.push(axiom(
        "complex-structure-kills-reeb",
        i_xi.iter().any(|c| !c.is_zero()).then(|| "I(ξ) ≠ 0".to_string()),
    ));

    let s = datum.contact_distribution();
    let i_s = &datum.cplx * s.basis();
    let eta_row = Matrix::from_rows(vec![datum.eta.clone()]);
    let i2 = &datum.cplx * &i_s;
    let square = if !(&eta_row * &i_s).is_zero() {
        Some("I does not preserve ker η".to_string())
    } else if i2 != -s.basis() {
        Some("I² ≠ −Id on ker η".to_string())
    } else {
        None
    };
    checks.push(axiom("complex-structure-square", square.clone()));

    // T^{1,0}: +i eigenspace of I inside S ⊗ ℂ
    let shifted = &datum.cplx - &Matrix::scalar(n, &Q::i());
    let t10 = Subspace::kernel(&shifted).intersect(&s).expect("same ambient");
    let mut integrable = None;
    if square.is_none() && t10.dim() != datum.n() {
        integrable = Some(format!("T^(1,0) has dimension {} ≠ {}", t10.dim(), datum.n()));
    }
    if integrable.is_none() {
        let cols = t10.basis().columns();
        'int: for (a, za) in cols.iter().enumerate() {
            for (b, zb) in cols.iter().enumerate().skip(a + 1) {
                if !t10.contains(&datum.bracket(za, zb)) {
                    integrable = Some(format!("[Z{a}, Z{b}] ∉ T^(1,0)"));
                    break 'int;
                }
            }
        }
    }
    checks.push(axiom("cr-integrability", integrable));

    let reeb = t10
        .basis()
        .columns()
        .iter()
        .position(|z| !t10.contains(&datum.bracket(&datum.xi, z)))
        .map(|a| format!("[ξ, Z{a}] ∉ T^(1,0)"));
    checks.push(axiom("reeb-preserves-cr", reeb));

    let l_full = &de * &datum.cplx;
    let l_s = &(&s.basis().transpose() * &l_full) * s.basis();
    let levi = if l_s != l_s.transpose() {
        Some("L_η(X, Y) = dη(X, IY) is not symmetric on ker η".to_string())
    } else {
        l_s.leading_principal_minors()
            .iter()
            .position(|m| !(m.is_real() && m.re() > &Rational::zero()))
            .map(|k| format!("leading principal minor {} of L_η is not positive", k + 1))
    };
    checks.push(axiom("levi-form-positive", levi));

    ValidationReport { checks }
}

trait ImagScan {
    fn first_nonzero_imag(&self) -> Option<(usize, usize)>;
}

impl ImagScan for Matrix {
    fn first_nonzero_imag(&self) -> Option<(usize, usize)> {
        (0..self.rows())
            .flat_map(|i| (0..self.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| !self[(i, j)].is_real())
    }
}
