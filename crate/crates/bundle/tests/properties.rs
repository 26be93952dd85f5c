use proptest::prelude::*;
use sasaki_bundle::operators::verify_twisted_kahler_both;
use sasaki_bundle::{
    attach_bundle, build_dprime_dsecond, formality_chain, verify_ddc_lemma, FlatBundleDatum,
};
use sasaki_core::GaussianRational as Q;
use sasaki_model::SasakianLieDatum;

fn gaussian() -> impl Strategy<Value = Q> {
    (-3i64..=3, -3i64..=3, 1i64..=3).prop_map(|(a, b, d)| Q::from_ratio(a, d) + Q::from_ratio(b, d).mul_i())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Every closed invariant character on h5 gives exact identities,
    /// the DDᶜ-lemma and the formality chain.
    #[test]
    fn closed_characters_on_h5(coeffs in proptest::collection::vec(gaussian(), 4)) {
        let mut form = vec![Q::from(0)];
        form.extend(coeffs);
        let fb = FlatBundleDatum::diagonal(&[form], None).unwrap();
        let tc = attach_bundle(&SasakianLieDatum::heisenberg(2), &fb).unwrap();
        let (_, dec) = build_dprime_dsecond(&tc).unwrap();
        prop_assert!(dec.passed());
        prop_assert!(verify_ddc_lemma(&tc).unwrap().holds());
        let [ann, dual] = verify_twisted_kahler_both(&tc).unwrap();
        prop_assert!(ann.plus_i_first_holds() && dual.minus_i_first_holds());
        prop_assert!(ann.laplacians_hold() && dual.laplacians_hold());
        let fc = formality_chain(&tc).unwrap();
        prop_assert!(fc.passed());
        prop_assert_eq!(fc.basic_eta.betti(), fc.full.betti());
    }
}
