use sasaki_bundle::{attach_bundle, FlatBundleDatum};
use sasaki_core::{GaussianRational as Q, Matrix};
use sasaki_germ::cup::{cup_product_matrix, cup_vanishing_check, ConeModel};
use sasaki_germ::fox::{fox_tangent, GroupPresentation, Representation};
use sasaki_germ::{build_germ_model, quadraticity_check, Verdict};
use sasaki_model::SasakianLieDatum;

/// At the trivial representation of rank `m`, `H¹ = Hom(Γ_ab, gl_m)`, whose
/// dimension is `m²` times the corank of the exponent-sum matrix.
fn abelianised_h1(gp: &GroupPresentation, m: usize) -> usize {
    let ngen = gp.generators().len();
    let rows: Vec<Vec<Q>> = gp
        .relators()
        .iter()
        .map(|r| {
            let mut v = vec![0i64; ngen];
            for l in r {
                v[l.generator] += if l.inverse { -1 } else { 1 };
            }
            v.into_iter().map(Q::from).collect()
        })
        .collect();
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
    m * m * (ngen - rank)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim H^k` of the Heisenberg algebra: `C(2n, k) − C(2n, k−2)` for `k ≤ n`,
/// and Poincaré duality above.
fn heisenberg_betti(n: usize, k: usize) -> usize {
    let prim = |j: usize| binomial(2 * n, j) - if j >= 2 { binomial(2 * n, j - 2) } else { 0 };
    if k <= n {
        prim(k)
    } else {
        prim(2 * n + 1 - k)
    }
}

#[test]
fn fox_tangent_matches_abelianisation() {
    for (gp, m) in [
        (GroupPresentation::heisenberg3(), 1),
        (GroupPresentation::heisenberg3(), 2),
        (GroupPresentation::heisenberg5(), 1),
        (GroupPresentation::heisenberg5(), 2),
    ] {
        let t = fox_tangent(&gp, &Representation::trivial(&gp, m)).unwrap();
        assert_eq!(t.h1_dim(), abelianised_h1(&gp, m), "{gp} rank {m}");
    }
    assert_eq!(abelianised_h1(&GroupPresentation::heisenberg5(), 1), 4);
    assert_eq!(abelianised_h1(&GroupPresentation::heisenberg5(), 2), 16);
}

#[test]
fn germ_model_dimensions_follow_the_basic_torus() {
    // basic forms of h_{2n+1} are the exterior algebra on 2n closed generators
    for (n, m) in [(1, 2), (2, 1), (2, 2)] {
        let end = FlatBundleDatum::trivial(2 * n + 1, m).endomorphisms();
        let tc = attach_bundle(&SasakianLieDatum::heisenberg(n), &end).unwrap();
        let g = build_germ_model(&tc).unwrap();
        let expected: Vec<usize> = (0..=2 * n).map(|k| m * m * binomial(2 * n, k)).collect();
        assert_eq!(g.algebra.dims(), expected);
        let h1 = g.complex().cohomology(1).dim();
        assert_eq!(h1, m * m * heisenberg_betti(n, 1));
        let r = quadraticity_check(&g, n);
        let want = if n < 2 { Verdict::HypothesisViolated } else { Verdict::QuadraticCertified };
        assert_eq!(r.verdict, want);
    }
}

#[test]
fn cone_model_cohomology_of_h7() {
    let tc = attach_bundle(&SasakianLieDatum::heisenberg(3), &FlatBundleDatum::trivial(7, 1)).unwrap();
    let cm = ConeModel::new(&tc).unwrap();
    for k in 0..=7 {
        assert_eq!(cm.complex.cohomology(k).dim(), heisenberg_betti(3, k as usize), "degree {k}");
    }
}

#[test]
fn h7_cup_products_vanish_for_characters() {
    let h7 = SasakianLieDatum::heisenberg(3);
    let triv = FlatBundleDatum::trivial(7, 1);
    let pairs = [
        (FlatBundleDatum::character(7, 1, Q::from(1)), FlatBundleDatum::character(7, 1, Q::from(-1))),
        (FlatBundleDatum::character(7, 1, Q::i()), FlatBundleDatum::character(7, 3, Q::i())),
        (FlatBundleDatum::character(7, 2, Q::from(2)), triv.clone()),
        (triv.clone(), triv),
    ];
    for (e1, e2) in pairs {
        let a = attach_bundle(&h7, &e1).unwrap();
        let b = attach_bundle(&h7, &e2).unwrap();
        let r = cup_vanishing_check(&a, &b, 2, 2).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn guard_products_outside_the_range() {
    let tc = attach_bundle(&SasakianLieDatum::heisenberg(3), &FlatBundleDatum::trivial(7, 1)).unwrap();
    // H¹ ⊗ H¹ → H² contains the class of e¹ ∧ e³
    let m = cup_product_matrix(&tc, &tc, 1, 1).unwrap();
    assert!(!m.is_zero());
    // every basic 4-form is dη ∧ (basic 2-form), so H¹ ⊗ H³ → H⁴ is zero as well
    assert!(cup_product_matrix(&tc, &tc, 1, 3).unwrap().is_zero());
    assert_eq!(cup_product_matrix(&tc, &tc, 0, 2).unwrap().rank(), 14);
}
