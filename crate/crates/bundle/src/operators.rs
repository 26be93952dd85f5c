//! `D′ = ∂_h + θ̄`, `D″ = ∂̄_h + θ` and `Dᶜ = i(D″ − D′)` on basic forms,
//! with the identities among them and the twisted Kähler identities.

use sasaki_core::operator::GradedOperator;
use sasaki_core::{Error, GaussianRational as Q, Result};
use sasaki_model::kahler::{
    commutator_identities, compare_operators, lefschetz_operator, split_type, IdentityCheck,
};
use sasaki_model::BigradingConvention;

use crate::bundle::TwistedComplex;
use crate::harmonic::{harmonic_split, wedge_operator};

/// Operators on the basic complex of a twisted bundle, in basic coordinates.
#[derive(Clone, Debug)]
pub struct TwistedOperators {
    pub d: GradedOperator,
    pub phi: GradedOperator,
    /// `∇ = D − φ∧`.
    pub nabla: GradedOperator,
    pub del_h: GradedOperator,
    pub delbar_h: GradedOperator,
    pub theta: GradedOperator,
    pub theta_bar: GradedOperator,
    pub d_prime: GradedOperator,
    pub d_second: GradedOperator,
    pub d_c: GradedOperator,
    pub lefschetz: GradedOperator,
    pub lambda: GradedOperator,
}

pub fn build_operators(tc: &TwistedComplex) -> Result<TwistedOperators> {
    let bc = tc.basic();
    let split = harmonic_split(tc);
    let d = bc.d().clone();
    let phi = wedge_operator(tc, &split.phi)?;
    let theta = wedge_operator(tc, &split.theta)?;
    let theta_bar = wedge_operator(tc, &split.theta_bar)?;
    if theta.add(&theta_bar) != phi {
        return Err(Error::Inconsistent("θ + θ̄ ≠ φ on basic forms".into()));
    }
    let nabla = d.sub(&phi);
    let (del_h, delbar_h) = split_type(bc, &nabla, "∇")?;
    let d_prime = del_h.add(&theta_bar);
    let d_second = delbar_h.add(&theta);
    let d_c = d_second.sub(&d_prime).scale(&Q::i());
    let lefschetz = lefschetz_operator(bc)?;
    let lambda = bc.adjoint(&lefschetz);
    Ok(TwistedOperators {
        d,
        phi,
        nabla,
        del_h,
        delbar_h,
        theta,
        theta_bar,
        d_prime,
        d_second,
        d_c,
        lefschetz,
        lambda,
    })
}

/// Algebraic identities of the decomposition `D = D′ + D″`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub sum_is_d: bool,
    pub d_prime_squared_zero: bool,
    pub d_second_squared_zero: bool,
    pub anticommute: bool,
    pub d_c_squared_zero: bool,
    pub d_d_c_anticommute: bool,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.sum_is_d
            && self.d_prime_squared_zero
            && self.d_second_squared_zero
            && self.anticommute
            && self.d_c_squared_zero
            && self.d_d_c_anticommute
    }
}

pub fn build_dprime_dsecond(tc: &TwistedComplex) -> Result<(TwistedOperators, DecompositionReport)> {
    let ops = build_operators(tc)?;
    let report = DecompositionReport {
        sum_is_d: ops.d_prime.add(&ops.d_second) == ops.d,
        d_prime_squared_zero: ops.d_prime.compose(&ops.d_prime).is_zero(),
        d_second_squared_zero: ops.d_second.compose(&ops.d_second).is_zero(),
        anticommute: ops.d_prime.supercommutator(&ops.d_second).is_zero(),
        d_c_squared_zero: ops.d_c.compose(&ops.d_c).is_zero(),
        d_d_c_anticommute: ops.d.supercommutator(&ops.d_c).is_zero(),
    };
    Ok((ops, report))
}

/// Commutator identities between `Λ` and `D′`, `D″` for one bigrading convention.
#[derive(Clone, Debug)]
pub struct TwistedKahlerReport {
    pub convention: BigradingConvention,
    pub checks: Vec<IdentityCheck>,
}

impl TwistedKahlerReport {
    pub fn get(&self, id: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    fn all(&self, ids: &[&str]) -> bool {
        ids.iter().all(|id| self.get(id).is_some_and(|c| c.holds))
    }

    /// `[Λ, D′] = −i (D″)*` and `[Λ, D″] = i (D′)*`.
    pub fn minus_i_first_holds(&self) -> bool {
        self.all(&["twisted-first", "twisted-second"])
    }

    /// `[Λ, D′] = i (D″)*` and `[Λ, D″] = −i (D′)*`.
    pub fn plus_i_first_holds(&self) -> bool {
        self.all(&["twisted-first-conjugate-sign", "twisted-second-conjugate-sign"])
    }

    pub fn laplacians_hold(&self) -> bool {
        self.all(&["twisted-laplacian-d-prime", "twisted-laplacian-d-second"])
    }
}

fn laplacian(a: &GradedOperator, a_adj: &GradedOperator) -> GradedOperator {
    a.compose(a_adj).add(&a_adj.compose(a))
}

/// Checks the twisted identities, including `[Λ, D″] = (D′)*` without the
/// factor `i`, and `Δ_D = 2Δ_{D′} = 2Δ_{D″}`.
pub fn verify_twisted_kahler(tc: &TwistedComplex) -> Result<TwistedKahlerReport> {
    let bc = tc.basic();
    let ops = build_operators(tc)?;
    let mut checks =
        commutator_identities(bc, &ops.lambda, ("D′", "D″"), &ops.d_prime, &ops.d_second, "twisted");
    checks.push(compare_operators(
        bc,
        "twisted-second-without-i",
        "[Λ, D″] = (D′)*",
        &ops.lambda.supercommutator(&ops.d_second),
        &bc.adjoint(&ops.d_prime),
    ));
    let two = Q::from(2);
    let lap = laplacian(&ops.d, &bc.adjoint(&ops.d));
    let lap_p = laplacian(&ops.d_prime, &bc.adjoint(&ops.d_prime));
    let lap_s = laplacian(&ops.d_second, &bc.adjoint(&ops.d_second));
    checks.push(compare_operators(
        bc,
        "twisted-laplacian-d-prime",
        "Δ_D = 2Δ_{D′}",
        &lap,
        &lap_p.scale(&two),
    ));
    checks.push(compare_operators(
        bc,
        "twisted-laplacian-d-second",
        "Δ_D = 2Δ_{D″}",
        &lap,
        &lap_s.scale(&two),
    ));
    Ok(TwistedKahlerReport { convention: bc.convention(), checks })
}

/// [`verify_twisted_kahler`] under both bigrading conventions.
pub fn verify_twisted_kahler_both(tc: &TwistedComplex) -> Result<[TwistedKahlerReport; 2]> {
    let a = tc.with_convention(BigradingConvention::Annihilator)?;
    let m = tc.with_convention(BigradingConvention::MetricDual)?;
    Ok([verify_twisted_kahler(&a)?, verify_twisted_kahler(&m)?])
}
