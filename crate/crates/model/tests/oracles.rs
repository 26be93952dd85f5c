use sasaki_core::GaussianRational as Q;
use sasaki_model::{CeAlgebra, SasakianLieDatum};

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Primitive-class count below the middle degree, Poincaré duality above.
fn heisenberg_betti(n: usize) -> Vec<usize> {
    let low: Vec<usize> =
        (0..=n).map(|k| binom(2 * n, k) - if k >= 2 { binom(2 * n, k - 2) } else { 0 }).collect();
    low.iter().chain(low.iter().rev()).copied().collect()
}

#[test]
fn heisenberg_cohomology_matches_primitive_count() {
    for n in 1..=3 {
        let c = CeAlgebra::new(&SasakianLieDatum::heisenberg(n)).complex();
        let got: Vec<usize> = c.betti().values().copied().collect();
        assert_eq!(got, heisenberg_betti(n), "n = {n}");
    }
}

#[test]
fn d_eta_is_the_standard_symplectic_form() {
    // dη(X, Y) = −η([X, Y]) and [e_{2i−1}, e_{2i}] = −e_0.
    for n in 1..=3 {
        let ce = CeAlgebra::new(&SasakianLieDatum::heisenberg(n));
        let ext = ce.exterior();
        let mut omega = vec![Q::from(0); ext.dim(2)];
        for i in 1..=n {
            for (o, w) in omega.iter_mut().zip(ext.wedge_of_generators(&[2 * i - 1, 2 * i])) {
                *o += w;
            }
        }
        assert_eq!(ce.d_eta_form(), omega);
    }
}

#[test]
fn heisenberg_models_are_sasakian_and_abelian_ones_are_not() {
    for n in 1..=3 {
        let r = SasakianLieDatum::heisenberg(n).validate();
        assert!(r.passed(), "{r:?}");
        let ce = CeAlgebra::new(&SasakianLieDatum::heisenberg(n));
        assert_eq!(ce.square_zero_violation(), None);
        assert_eq!(ce.cartan_violation(), None);
        assert!(!SasakianLieDatum::abelian(n).validate().passed());
    }
}
