use proptest::prelude::*;
use sasaki_core::{GaussianRational as Q, Matrix};
use sasaki_model::{CeAlgebra, SasakianLieDatum};

fn scalar() -> impl Strategy<Value = Q> {
    prop_oneof![2 => Just(Q::from(0)), 3 => (-3i64..=3, -2i64..=2).prop_map(|(a, b)| Q::from_int(a) + Q::from_int(b) * Q::i())]
}

fn vector(len: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(scalar(), len)
}

fn h5() -> CeAlgebra {
    CeAlgebra::new(&SasakianLieDatum::heisenberg(2))
}

fn binom5(k: usize) -> usize {
    [1, 5, 10, 10, 5, 1][k]
}

/// Two forms of degrees `p`, `q` with `p + q ≤ 4` on h5.
fn form_pair() -> impl Strategy<Value = (usize, Vec<Q>, usize, Vec<Q>)> {
    (0usize..=4)
        .prop_flat_map(|p| (Just(p), 0..=4 - p))
        .prop_flat_map(|(p, q)| (Just(p), vector(binom5(p)), Just(q), vector(binom5(q))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_is_an_antiderivation((p, a, q, b) in form_pair()) {
        let ce = h5();
        let ext = ce.exterior();
        let lhs = ce.d(p + q).mul_vec(&ext.wedge(p, &a, q, &b));
        let da_b = ext.wedge(p + 1, &ce.d(p).mul_vec(&a), q, &b);
        let a_db = ext.wedge(p, &a, q + 1, &ce.d(q).mul_vec(&b));
        let sign = if p % 2 == 0 { Q::from(1) } else { Q::from(-1) };
        let rhs: Vec<Q> = da_b.iter().zip(&a_db).map(|(x, y)| x + &(&sign * y)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_formula_for_any_vector(x in vector(5), k in 0usize..=5) {
        let ce = h5();
        let mut rhs = &ce.interior(&x, k + 1) * ce.d(k);
        if k > 0 {
            rhs = &rhs + &(ce.d(k - 1) * &ce.interior(&x, k));
        }
        prop_assert_eq!(ce.lie_derivative(&x, k), rhs);
        if k >= 2 {
            prop_assert!((&ce.interior(&x, k - 1) * &ce.interior(&x, k)).is_zero());
        }
    }

    #[test]
    fn lie_derivative_is_a_representation(x in vector(5), y in vector(5), k in 0usize..=5) {
        let ce = h5();
        let (lx, ly) = (ce.lie_derivative(&x, k), ce.lie_derivative(&y, k));
        let comm: Matrix = &(&lx * &ly) - &(&ly * &lx);
        let xy = ce.datum().bracket(&x, &y);
        prop_assert_eq!(comm, ce.lie_derivative(&xy, k));
    }
}
