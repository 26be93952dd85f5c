//! The finite DGLA `L = H_B(End E) ⊕ H_B(End E)·η` with
//! `d(y·η) = (−1)^{|y|} y ∧ [dη]`, its Maurer–Cartan cone, and the
//! quadraticity verdict.

use std::collections::BTreeMap;
use std::fmt;

use sasaki_bundle::TwistedComplex;
use sasaki_core::complex::{mapping_cone_model, CochainComplex, Cohomology, GradedVectorSpace};
use sasaki_core::dgla::{check_dgla, mc_system, DglaModel, DglaReport, EquationBlock, McConstraintSystem};
use sasaki_core::{Error, GaussianRational as Q, Matrix, Result};
use sasaki_model::kahler::lefschetz_operator;

use crate::product::{FiberProduct, FormProduct};

/// Basic cohomology of an endomorphism bundle with its bracket and `[dη] ∧ ·`.
#[derive(Clone, Debug)]
pub struct BasicCohomologyAlgebra {
    pub n: usize,
    pub rank: usize,
    /// `H^k_B` for `k = 0..=2n`.
    pub groups: Vec<Cohomology>,
    /// `lefschetz[k] : H^k_B → H^{k+2}_B` in representative bases.
    pub lefschetz: Vec<Matrix>,
    /// `bracket[(p, q)][a * dim H^q + b]` is `[h^p_a, h^q_b]` in `H^{p+q}_B`.
    pub bracket: BTreeMap<(usize, usize), Vec<Vec<Q>>>,
}

impl BasicCohomologyAlgebra {
    pub fn dim(&self, k: usize) -> usize {
        self.groups.get(k).map_or(0, Cohomology::dim)
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.groups.len()).map(|k| self.dim(k)).collect()
    }

    pub fn bracket_basis(&self, p: usize, a: usize, q: usize, b: usize) -> Vec<Q> {
        match self.bracket.get(&(p, q)) {
            Some(t) => t[a * self.dim(q) + b].clone(),
            None => vec![Q::from(0); self.dim(p + q)],
        }
    }

    /// Bilinear extension of the bracket to arbitrary classes.
    pub fn bracket(&self, p: usize, x: &[Q], q: usize, y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::from(0); self.dim(p + q)];
        for (a, xa) in x.iter().enumerate().filter(|(_, c)| **c != Q::from(0)) {
            for (b, yb) in y.iter().enumerate().filter(|(_, c)| **c != Q::from(0)) {
                let xy = xa * yb;
                for (o, v) in out.iter_mut().zip(self.bracket_basis(p, a, q, b)) {
                    *o += &xy * &v;
                }
            }
        }
        out
    }

    pub fn lefschetz_apply(&self, k: usize, x: &[Q]) -> Vec<Q> {
        match self.lefschetz.get(k) {
            Some(l) if k + 2 < self.groups.len() => l.mul_vec(x),
            _ => Vec::new(),
        }
    }
}

fn integer_sqrt(r: usize) -> Option<usize> {
    let m = (r as f64).sqrt().round() as usize;
    (m * m == r).then_some(m)
}

/// Cohomology of the basic complex of `tc` (an endomorphism bundle of
/// rank `m²`, fibre basis `E_ab` at `a·m + b`) with its bracket.
pub fn basic_cohomology_algebra(tc: &TwistedComplex) -> Result<BasicCohomologyAlgebra> {
    let bc = tc.basic();
    let rank = tc.bundle().rank();
    let m = integer_sqrt(rank)
        .ok_or_else(|| Error::InvalidBundle(format!("rank {rank} is not that of an endomorphism bundle")))?;
    let top = bc.top();
    let complex = bc.complex();
    let groups: Vec<Cohomology> = (0..=top).map(|k| complex.cohomology(k as i32)).collect();
    let l = lefschetz_operator(bc)?;
    let lefschetz = (0..=top)
        .map(|k| {
            if k + 2 > top {
                Matrix::zeros(0, groups[k].dim())
            } else {
                &(&groups[k + 2].projection * l.block(k)) * &groups[k].representatives
            }
        })
        .collect();
    let prod = FormProduct { left: tc, right: tc, target: tc, fiber: FiberProduct::Commutator { m } };
    let mut bracket = BTreeMap::new();
    for p in 0..=top {
        for q in 0..=top - p {
            let (dp, dq) = (groups[p].dim(), groups[q].dim());
            if dp == 0 || dq == 0 || groups[p + q].dim() == 0 {
                continue;
            }
            let mut table = Vec::with_capacity(dp * dq);
            for a in 0..dp {
                let x = groups[p].representatives.column(a);
                for b in 0..dq {
                    let y = groups[q].representatives.column(b);
                    let v = prod.basic(p, &x, q, &y)?;
                    table.push(groups[p + q].projection.mul_vec(&v));
                }
            }
            bracket.insert((p, q), table);
        }
    }
    Ok(BasicCohomologyAlgebra { n: bc.n(), rank: m, groups, lefschetz, bracket })
}

/// `L^k = H^k_B ⊕ H^{k−1}_B·η`, laid out as the `H^k_B` part followed by
/// the `η` part.
#[derive(Clone, Debug)]
pub struct GermModel {
    pub algebra: BasicCohomologyAlgebra,
    pub dgla: DglaModel,
    pub dgla_report: DglaReport,
    /// `dim ε(L⁰)` for evaluation of `H⁰_B(End E)` at a point.
    pub augmentation_rank: usize,
}

impl GermModel {
    pub fn n(&self) -> usize {
        self.algebra.n
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank
    }

    /// Cohomology of the model itself.
    pub fn complex(&self) -> CochainComplex {
        self.dgla.complex()
    }
}

fn sign(k: usize) -> Q {
    if k.is_multiple_of(2) {
        Q::from(1)
    } else {
        Q::from(-1)
    }
}

/// Builds the model from the twisted complex of `End(E)`.
pub fn build_germ_model(tc_end: &TwistedComplex) -> Result<GermModel> {
    let algebra = basic_cohomology_algebra(tc_end)?;
    let dims = algebra.dims();
    let top = dims.len() - 1;
    let h = |k: i32| -> usize {
        if k < 0 || k as usize > top {
            0
        } else {
            dims[k as usize]
        }
    };
    let base =
        CochainComplex::zero_differential(GradedVectorSpace::new((0..=top).map(|k| (k as i32, dims[k]))));
    let l_blocks: BTreeMap<i32, Matrix> =
        (0..=top).filter(|k| k + 2 <= top).map(|k| (k as i32, algebra.lefschetz[k].clone())).collect();
    let cone = mapping_cone_model(&base, &l_blocks)?;
    let degrees = cone.degrees();
    let mut spaces = GradedVectorSpace::new(degrees.iter().map(|&k| (k, h(k) + h(k - 1))));
    for &k in &degrees {
        let mut labels: Vec<String> = (0..h(k)).map(|i| format!("h{k}_{i}")).collect();
        labels.extend((0..h(k - 1)).map(|i| format!("h{}_{i}.eta", k - 1)));
        spaces = spaces.with_labels(k, labels);
    }
    let diffs: BTreeMap<i32, Matrix> = degrees.iter().map(|&k| (k, cone.differential(k))).collect();
    let alg = &algebra;
    let bracket = |p: i32, a: usize, q: i32, b: usize| -> Vec<Q> {
        let t = p + q;
        let (hx, hy) = (h(t), h(t - 1));
        let mut out = vec![Q::from(0); hx + hy];
        let part = |deg: i32, idx: usize| -> (bool, usize, usize) {
            // (is η part, cohomological degree, index)
            if idx < h(deg) {
                (false, deg as usize, idx)
            } else {
                (true, (deg - 1) as usize, idx - h(deg))
            }
        };
        let (ea, pa, ia) = part(p, a);
        let (eb, pb, ib) = part(q, b);
        match (ea, eb) {
            (false, false) => {
                if (t as usize) <= top {
                    out[..hx].clone_from_slice(&alg.bracket_basis(pa, ia, pb, ib));
                }
            }
            (false, true) => {
                if t >= 1 && (t - 1) as usize <= top {
                    out[hx..].clone_from_slice(&alg.bracket_basis(pa, ia, pb, ib));
                }
            }
            (true, false) => {
                // y·η · x = (−1)^{|x|} (y x)·η
                if t >= 1 && (t - 1) as usize <= top {
                    let s = sign(pb);
                    let v = alg.bracket_basis(pa, ia, pb, ib);
                    for (o, c) in out[hx..].iter_mut().zip(v) {
                        *o = &s * &c;
                    }
                }
            }
            (true, true) => {}
        }
        out
    };
    let dgla = DglaModel::from_bracket_fn(spaces, diffs, bracket)?;
    let dgla_report = check_dgla(&dgla);
    if !dgla_report.passed() {
        return Err(Error::Inconsistent(format!("germ model fails the DGLA axioms: {dgla_report:?}")));
    }
    let augmentation_rank =
        if dims[0] == 0 { 0 } else { (tc_end.basic().basis(0) * &algebra.groups[0].representatives).rank() };
    Ok(GermModel { algebra, dgla, dgla_report, augmentation_rank })
}

/// `dω + ½[ω, ω] = 0` for `ω = α + β·η`, split into the `H²_B` rows
/// ("quadratic-block") and the `H¹_B·η` rows ("bracket-block").
pub fn mc_cone(g: &GermModel) -> McConstraintSystem {
    let mut sys = mc_system(&g.dgla);
    let h2 = g.algebra.dim(2);
    let total = sys.equations.len();
    sys.blocks = vec![
        EquationBlock { label: "quadratic-block".into(), rows: 0..h2.min(total) },
        EquationBlock { label: "bracket-block".into(), rows: h2.min(total)..total },
    ];
    sys
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    QuadraticCertified,
    HypothesisViolated,
    IdentityFailed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::QuadraticCertified => "quadratic-certified",
            Verdict::HypothesisViolated => "hypothesis-violated",
            Verdict::IdentityFailed => "identity-failed",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct QuadraticityReport {
    pub n: usize,
    pub lefschetz_rank: usize,
    pub h1_dim: usize,
    pub lefschetz_injective: bool,
    /// `L[α, β] = [α, Lβ]` for basis `α ∈ H¹_B`, `β ∈ H⁰_B`.
    pub lefschetz_compatible: bool,
    /// Polarised `[α, [α, α]] = 0` on basis triples of `H¹_B`.
    pub cubic_jacobi: bool,
    pub identity_check: bool,
    pub verdict: Verdict,
    pub cone: McConstraintSystem,
    pub witness: Option<String>,
}

pub fn quadraticity_check(g: &GermModel, n: usize) -> QuadraticityReport {
    let alg = &g.algebra;
    let (h0, h1) = (alg.dim(0), alg.dim(1));
    let unit = |k: usize, i: usize| -> Vec<Q> { (0..alg.dim(k)).map(|j| Q::from((i == j) as i64)).collect() };
    let mut witness = None;

    let lefschetz_compatible = (0..h1).all(|a| {
        (0..h0).all(|b| {
            let lhs = alg.lefschetz_apply(1, &alg.bracket_basis(1, a, 0, b));
            let lb = alg.lefschetz_apply(0, &unit(0, b));
            let rhs = alg.bracket(1, &unit(1, a), 2, &lb);
            let ok = lhs == rhs;
            if !ok {
                witness.get_or_insert_with(|| format!("L[h1_{a}, h0_{b}] ≠ [h1_{a}, L h0_{b}]"));
            }
            ok
        })
    });

    let mut cubic_jacobi = true;
    'outer: for a in 0..h1 {
        for b in a..h1 {
            for c in b..h1 {
                let t = |x: usize, y: usize, z: usize| {
                    alg.bracket(1, &unit(1, x), 2, &alg.bracket_basis(1, y, 1, z))
                };
                let (t1, t2, t3) = (t(a, b, c), t(b, c, a), t(c, a, b));
                if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| x + y + z.clone() != Q::from(0)) {
                    cubic_jacobi = false;
                    witness.get_or_insert_with(|| {
                        format!("[α,[α,α]] polarisation fails on (h1_{a}, h1_{b}, h1_{c})")
                    });
                    break 'outer;
                }
            }
        }
    }

    let lefschetz_rank = if alg.groups.len() > 3 { alg.lefschetz[1].rank() } else { 0 };
    let lefschetz_injective = lefschetz_rank == h1;
    let identity_check = lefschetz_compatible && cubic_jacobi;
    let verdict = if n < 2 {
        Verdict::HypothesisViolated
    } else if identity_check && lefschetz_injective {
        Verdict::QuadraticCertified
    } else {
        Verdict::IdentityFailed
    };
    if !lefschetz_injective {
        witness.get_or_insert_with(|| format!("Lefschetz H¹_B → H³_B has rank {lefschetz_rank} < {h1}"));
    }
    QuadraticityReport {
        n,
        lefschetz_rank,
        h1_dim: h1,
        lefschetz_injective,
        lefschetz_compatible,
        cubic_jacobi,
        identity_check,
        verdict,
        cone: mc_cone(g),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sasaki_bundle::{attach_bundle, FlatBundleDatum};
    use sasaki_model::SasakianLieDatum;

    fn trivial_end(n: usize, m: usize) -> GermModel {
        let dim = 2 * n + 1;
        let end = FlatBundleDatum::trivial(dim, m).endomorphisms();
        let tc = attach_bundle(&SasakianLieDatum::heisenberg(n), &end).unwrap();
        build_germ_model(&tc).unwrap()
    }

    #[test]
    fn gl2_on_h5() {
        let g = trivial_end(2, 2);
        assert_eq!(g.algebra.dims(), vec![4, 16, 24, 16, 4]);
        assert_eq!(g.augmentation_rank, 4);
        let cone = mc_cone(&g);
        assert_eq!(cone.variables.len(), 20);
        assert_eq!(cone.block("quadratic-block").unwrap().rows.len(), 24);
        assert_eq!(cone.block("bracket-block").unwrap().rows.len(), 16);
        let r = quadraticity_check(&g, 2);
        assert_eq!(r.lefschetz_rank, 16);
        assert_eq!(r.verdict, Verdict::QuadraticCertified, "{:?}", r.witness);
    }

    #[test]
    fn rank_one_is_abelian() {
        let g = trivial_end(2, 1);
        assert!(g.algebra.bracket.values().flatten().flatten().all(|c| *c == Q::from(0)));
        let cone = mc_cone(&g);
        assert!(!cone.has_quadratic_terms());
        // d(β·η) = β ∧ [dη] is injective on H⁰, so the linear part has rank 1 on degree one
        assert_eq!(cone.linear_part.rank(), 1);
    }

    #[test]
    fn h3_violates_the_hypothesis() {
        let g = trivial_end(1, 2);
        let r = quadraticity_check(&g, 1);
        assert_eq!(r.verdict, Verdict::HypothesisViolated);
        assert!(!r.lefschetz_injective);
    }
}
