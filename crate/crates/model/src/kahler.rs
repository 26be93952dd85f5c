//! Transverse operator calculus on basic forms: `∂`, `∂̄`, Lefschetz `L`,
//! Gram adjoints, Laplacians, and the identities relating them.

use sasaki_core::operator::GradedOperator;
use sasaki_core::{Error, GaussianRational as Q, Matrix, Result};

use crate::basic::BasicComplex;

/// Every operator is a Gram adjoint of its partner where applicable.
#[derive(Clone, Debug)]
pub struct OperatorSuite {
    pub d: GradedOperator,
    pub del: GradedOperator,
    pub delbar: GradedOperator,
    pub lefschetz: GradedOperator,
    /// Adjoint of `L`.
    pub lambda: GradedOperator,
    /// Adjoint of `d` on basic forms.
    pub delta_xi: GradedOperator,
    /// Adjoint of `∂`.
    pub del_adj: GradedOperator,
    /// Adjoint of `∂̄`.
    pub delbar_adj: GradedOperator,
    pub laplacian: GradedOperator,
    pub laplacian_del: GradedOperator,
    pub laplacian_delbar: GradedOperator,
}

/// `L = dη ∧ ·` on basic forms.
pub fn lefschetz_operator(bc: &BasicComplex) -> Result<GradedOperator> {
    let d_eta = bc.bundle().ce().d_eta_form();
    bc.restrict(2, |k| bc.bundle().wedge_scalar(2, &d_eta, k))
}

fn laplacian(a: &GradedOperator, a_adj: &GradedOperator) -> GradedOperator {
    a.compose(a_adj).add(&a_adj.compose(a))
}

/// Splits a degree-one operator into its `(1,0)` and `(0,1)` parts,
/// failing if other bidegrees occur.
pub fn split_type(
    bc: &BasicComplex,
    op: &GradedOperator,
    what: &str,
) -> Result<(GradedOperator, GradedOperator)> {
    let a = bc.bidegree_part(op, 1, 0);
    let b = bc.bidegree_part(op, 0, 1);
    if a.add(&b) != *op {
        return Err(Error::Inconsistent(format!("{what} has components outside bidegrees (1,0), (0,1)")));
    }
    Ok((a, b))
}

pub fn operator_suite(bc: &BasicComplex) -> Result<OperatorSuite> {
    let d = bc.d().clone();
    let (del, delbar) = split_type(bc, &d, "d")?;
    let lefschetz = lefschetz_operator(bc)?;
    let lambda = bc.adjoint(&lefschetz);
    let delta_xi = bc.adjoint(&d);
    let del_adj = bc.adjoint(&del);
    let delbar_adj = bc.adjoint(&delbar);
    Ok(OperatorSuite {
        laplacian: laplacian(&d, &delta_xi),
        laplacian_del: laplacian(&del, &del_adj),
        laplacian_delbar: laplacian(&delbar, &delbar_adj),
        d,
        del,
        delbar,
        lefschetz,
        lambda,
        delta_xi,
        del_adj,
        delbar_adj,
    })
}

/// Result of comparing two operators, broken down by source bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: String,
    pub statement: String,
    pub holds: bool,
    pub failing_bidegrees: Vec<(usize, usize)>,
    pub witness: Option<String>,
}

pub fn compare_operators(
    bc: &BasicComplex,
    id: &str,
    statement: &str,
    lhs: &GradedOperator,
    rhs: &GradedOperator,
) -> IdentityCheck {
    let mut failing = Vec::new();
    let mut witness = None;
    if lhs.shift() != rhs.shift() {
        return IdentityCheck {
            id: id.into(),
            statement: statement.into(),
            holds: false,
            failing_bidegrees: vec![],
            witness: Some(format!("degrees {} and {} differ", lhs.shift(), rhs.shift())),
        };
    }
    for k in 0..lhs.dims().len() {
        let diff = lhs.block(k) - rhs.block(k);
        for b in bc.blocks(k) {
            let bad = b
                .columns
                .clone()
                .find_map(|j| (0..diff.rows()).find(|&i| diff[(i, j)] != Q::from(0)).map(|i| (i, j)));
            if let Some((i, j)) = bad {
                failing.push((b.p, b.q));
                witness.get_or_insert_with(|| {
                    format!(
                        "bidegree ({},{}): entry ({i},{j}) is {} vs {}",
                        b.p,
                        b.q,
                        lhs.block(k)[(i, j)],
                        rhs.block(k)[(i, j)]
                    )
                });
            }
        }
    }
    IdentityCheck {
        id: id.into(),
        statement: statement.into(),
        holds: failing.is_empty(),
        failing_bidegrees: failing,
        witness,
    }
}

/// Checks the commutator identities between `Λ` and a pair `(P, Q)` of
/// operators of bidegree-type `(1,0)`/`(0,1)` against `±i` times adjoints,
/// in both sign conventions.
pub fn commutator_identities(
    bc: &BasicComplex,
    lambda: &GradedOperator,
    names: (&str, &str),
    p: &GradedOperator,
    q: &GradedOperator,
    id_prefix: &str,
) -> Vec<IdentityCheck> {
    let i = Q::i();
    let mi = -Q::i();
    let (pn, qn) = names;
    let lp = lambda.supercommutator(p);
    let lq = lambda.supercommutator(q);
    let p_adj = bc.adjoint(p);
    let q_adj = bc.adjoint(q);
    vec![
        compare_operators(
            bc,
            &format!("{id_prefix}-first"),
            &format!("[Λ, {pn}] = −i ({qn})*"),
            &lp,
            &q_adj.scale(&mi),
        ),
        compare_operators(
            bc,
            &format!("{id_prefix}-second"),
            &format!("[Λ, {qn}] = i ({pn})*"),
            &lq,
            &p_adj.scale(&i),
        ),
        compare_operators(
            bc,
            &format!("{id_prefix}-first-conjugate-sign"),
            &format!("[Λ, {pn}] = i ({qn})*"),
            &lp,
            &q_adj.scale(&i),
        ),
        compare_operators(
            bc,
            &format!("{id_prefix}-second-conjugate-sign"),
            &format!("[Λ, {qn}] = −i ({pn})*"),
            &lq,
            &p_adj.scale(&mi),
        ),
    ]
}

#[derive(Clone, Debug)]
pub struct KahlerReport {
    pub checks: Vec<IdentityCheck>,
}

impl KahlerReport {
    pub fn get(&self, id: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// The identities with the signs `[Λ,∂] = −i∂̄*`, `[Λ,∂̄] = i∂*` plus the Laplacian relations.
    pub fn minus_i_first_holds(&self) -> bool {
        ["kahler-first", "kahler-second", "laplacian-del", "laplacian-delbar"]
            .iter()
            .all(|id| self.get(id).is_some_and(|c| c.holds))
    }

    pub fn plus_i_first_holds(&self) -> bool {
        ["kahler-first-conjugate-sign", "kahler-second-conjugate-sign", "laplacian-del", "laplacian-delbar"]
            .iter()
            .all(|id| self.get(id).is_some_and(|c| c.holds))
    }
}

/// `[Λ, ∂] = ∓i ∂̄*`, `[Λ, ∂̄] = ±i ∂*` in both sign conventions,
/// `Δ = 2Δ′ = 2Δ″`, and `[L, Λ] = (k − n)` on `k`-forms.
pub fn verify_kahler_identities(bc: &BasicComplex, ops: &OperatorSuite) -> KahlerReport {
    let mut checks = commutator_identities(bc, &ops.lambda, ("∂", "∂̄"), &ops.del, &ops.delbar, "kahler");
    let two = Q::from(2);
    checks.push(compare_operators(
        bc,
        "laplacian-del",
        "Δ = 2Δ′",
        &ops.laplacian,
        &ops.laplacian_del.scale(&two),
    ));
    checks.push(compare_operators(
        bc,
        "laplacian-delbar",
        "Δ = 2Δ″",
        &ops.laplacian,
        &ops.laplacian_delbar.scale(&two),
    ));
    let n = bc.n() as i64;
    let weight =
        GradedOperator::from_fn(&bc.dims(), 0, |k| Matrix::scalar(bc.dim(k), &Q::from(k as i64 - n)))
            .expect("square");
    checks.push(compare_operators(
        bc,
        "lefschetz-sl2",
        "[L, Λ] = (k − n) on k-forms",
        &ops.lefschetz.supercommutator(&ops.lambda),
        &weight,
    ));
    KahlerReport { checks }
}

/// Relation of a `⋆`-formula operator to the Gram adjoint in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRelation {
    BothZero,
    Equal,
    Negated,
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct StarComparison {
    pub operator: String,
    pub formula: String,
    pub per_degree: Vec<(usize, SignRelation)>,
}

impl StarComparison {
    pub fn has_mismatch(&self) -> bool {
        self.per_degree.iter().any(|(_, r)| *r == SignRelation::Mismatch)
    }
}

/// `⋆_ξ` restricted to basic forms, `A^k_B → A^{2n−k}_B`.
pub fn transverse_star(bc: &BasicComplex) -> Result<Vec<Matrix>> {
    let top = bc.top();
    (0..=top).map(|k| bc.restrict_to(k, top - k, &bc.bundle().star_xi(k))).collect()
}

fn sign_relation(a: &Matrix, b: &Matrix) -> SignRelation {
    if a.is_zero() && b.is_zero() {
        SignRelation::BothZero
    } else if a == b {
        SignRelation::Equal
    } else if *a == -b {
        SignRelation::Negated
    } else {
        SignRelation::Mismatch
    }
}

/// Evaluates `−⋆_ξ T ⋆_ξ` and compares it degreewise with the Gram adjoint.
pub fn star_formula(bc: &BasicComplex, star: &[Matrix], t: &GradedOperator) -> GradedOperator {
    let top = bc.top() as i32;
    let s = t.shift();
    GradedOperator::from_fn(&bc.dims(), -s, |k| {
        let mid = top - k as i32;
        let out = mid + s;
        if mid < 0 || out < 0 || out > top {
            return Matrix::zeros(0, bc.dim(k));
        }
        -&(&(&star[out as usize] * t.block(mid as usize)) * &star[k])
    })
    .expect("shapes")
}

/// `⋆`-formula cross-checks for `δ_ξ`, `∂*`, `∂̄*` and `Λ`.
pub fn star_cross_checks(bc: &BasicComplex, ops: &OperatorSuite) -> Result<Vec<StarComparison>> {
    let star = transverse_star(bc)?;
    let cases = [
        ("δ_ξ", "−⋆_ξ d ⋆_ξ", &ops.d, &ops.delta_xi),
        ("∂*", "−⋆_ξ ∂̄ ⋆_ξ", &ops.delbar, &ops.del_adj),
        ("∂̄*", "−⋆_ξ ∂ ⋆_ξ", &ops.del, &ops.delbar_adj),
        ("Λ", "−⋆_ξ L ⋆_ξ", &ops.lefschetz, &ops.lambda),
    ];
    Ok(cases
        .into_iter()
        .map(|(name, formula, t, adj)| {
            let f = star_formula(bc, &star, t);
            StarComparison {
                operator: name.into(),
                formula: formula.into(),
                per_degree: (0..bc.dims().len())
                    .map(|k| (k, sign_relation(f.block(k), adj.block(k))))
                    .collect(),
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaRelationReport {
    /// `δω = δ_ξω + ∗(dη ∧ ⋆_ξ ω)` for basic `ω`, per degree.
    pub relation: Vec<(usize, bool)>,
    /// `δ = δ_ξ` on basic one-forms.
    pub one_forms_agree: bool,
    /// `Δ_ξ f = Δ f` on basic functions.
    pub functions_agree: bool,
}

impl DeltaRelationReport {
    pub fn passed(&self) -> bool {
        self.relation.iter().all(|(_, ok)| *ok) && self.one_forms_agree && self.functions_agree
    }
}

pub fn delta_relation_check(bc: &BasicComplex, ops: &OperatorSuite) -> DeltaRelationReport {
    let fb = bc.bundle();
    let delta = fb.d_adjoint();
    let d_eta = fb.ce().d_eta_form();
    let top = bc.top();
    let mut relation = Vec::new();
    let mut one_forms_agree = true;
    for k in 0..=top {
        let lhs = if k == 0 { Matrix::zeros(0, bc.dim(0)) } else { delta.block(k) * bc.basis(k) };
        if k == 0 {
            relation.push((0, true));
            continue;
        }
        let via_xi = bc.basis(k - 1) * ops.delta_xi.block(k);
        let transverse_k = top - k;
        let extra = &(&fb.star(transverse_k + 2) * &fb.wedge_scalar(2, &d_eta, transverse_k))
            * &(&fb.star_xi(k) * bc.basis(k));
        relation.push((k, lhs == &via_xi + &extra));
        if k == 1 {
            one_forms_agree = lhs == via_xi;
        }
    }
    let full_lap0 = &(delta.block(1) * fb.d(0)) * bc.basis(0);
    let functions_agree = full_lap0 == bc.basis(0) * ops.laplacian.block(0);
    DeltaRelationReport { relation, one_forms_agree, functions_agree }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzRecord {
    pub r: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    /// `r ≤ n − 1`.
    pub predicted_injective: bool,
    /// `r ≥ n − 1`.
    pub predicted_surjective: bool,
}

impl LefschetzRecord {
    pub fn prediction_holds(&self) -> bool {
        (!self.predicted_injective || self.injective) && (!self.predicted_surjective || self.surjective)
    }
}

/// `[dη] ∧ · : H^r_B → H^{r+2}_B` in representative bases.
pub fn lefschetz_map(bc: &BasicComplex, r: usize) -> Result<(Matrix, LefschetzRecord)> {
    let l = lefschetz_operator(bc)?;
    let c = bc.complex();
    let hs = c.cohomology(r as i32);
    let ht = c.cohomology(r as i32 + 2);
    let m = if r + 2 > bc.top() {
        Matrix::zeros(0, hs.dim())
    } else {
        &(&ht.projection * l.block(r)) * &hs.representatives
    };
    let rank = m.rank();
    let n = bc.n();
    let rec = LefschetzRecord {
        r,
        source_dim: hs.dim(),
        target_dim: ht.dim(),
        rank,
        injective: rank == hs.dim(),
        surjective: rank == ht.dim(),
        predicted_injective: r < n,
        predicted_surjective: r + 1 >= n,
    };
    Ok((m, rec))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::basic::BigradingConvention;
    use crate::ce::CeAlgebra;
    use crate::datum::SasakianLieDatum;
    use crate::forms::FormBundle;
    use crate::metric::Metric;

    fn basic(n: usize, convention: BigradingConvention) -> BasicComplex {
        let ce = Arc::new(CeAlgebra::new(&SasakianLieDatum::heisenberg(n)));
        let m = Arc::new(Metric::new(&ce).unwrap());
        BasicComplex::new(Arc::new(FormBundle::trivial(ce, m, 1)), convention).unwrap()
    }

    #[test]
    fn lambda_of_d_eta_on_h3() {
        let bc = basic(1, BigradingConvention::Annihilator);
        let ops = operator_suite(&bc).unwrap();
        // A^2_B is spanned by dη up to scale; Λ L 1 = n · 1
        let l1 = ops.lefschetz.block(0).column(0);
        let back = ops.lambda.block(2).mul_vec(&l1);
        assert_eq!(back, vec![Q::from(1)]);
    }

    #[test]
    fn untwisted_identities_hold_in_both_conventions() {
        for n in 1..=3 {
            for conv in [BigradingConvention::Annihilator, BigradingConvention::MetricDual] {
                let bc = basic(n, conv);
                let ops = operator_suite(&bc).unwrap();
                let rep = verify_kahler_identities(&bc, &ops);
                assert!(rep.minus_i_first_holds(), "h{} {:?}", 2 * n + 1, conv);
                assert!(rep.get("lefschetz-sl2").unwrap().holds);
            }
        }
    }

    #[test]
    fn delta_relation_on_h5() {
        let bc = basic(2, BigradingConvention::Annihilator);
        let ops = operator_suite(&bc).unwrap();
        let rep = delta_relation_check(&bc, &ops);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn star_formulas_differ_from_adjoints_by_signs_only() {
        let bc = basic(2, BigradingConvention::Annihilator);
        let ops = operator_suite(&bc).unwrap();
        for c in star_cross_checks(&bc, &ops).unwrap() {
            assert!(!c.has_mismatch(), "{} {:?}", c.operator, c.per_degree);
        }
    }

    #[test]
    fn lefschetz_ranks() {
        let h5 = basic(2, BigradingConvention::Annihilator);
        let (_, r1) = lefschetz_map(&h5, 1).unwrap();
        assert_eq!((r1.source_dim, r1.target_dim, r1.rank), (4, 4, 4));
        assert!(r1.injective && r1.prediction_holds());
        let (_, r0) = lefschetz_map(&h5, 0).unwrap();
        assert!(r0.injective && r0.prediction_holds());
        let h3 = basic(1, BigradingConvention::Annihilator);
        let (_, r) = lefschetz_map(&h3, 1).unwrap();
        assert!(!r.injective && r.prediction_holds());
    }
}
