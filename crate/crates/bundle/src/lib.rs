//! Flat bundles with harmonic metrics over left-invariant Sasakian models:
//! the operators `D′`, `D″`, `Dᶜ`, the `DDᶜ`-lemma, finite Hodge theory and
//! the chain of quasi-isomorphisms down to `H_B ⊕ H_B∧η`.

pub mod bundle;
pub mod ddc;
pub mod formality;
pub mod harmonic;
pub mod hodge;
pub mod operators;

pub use bundle::{attach_bundle, attach_bundle_with, FlatBundleDatum, TwistedComplex};
pub use ddc::{verify_ddc_lemma, DdcReport};
pub use formality::{formality_chain, ker_dxi_splitting, FormalityChain, SplittingReport};
pub use harmonic::{check_harmonicity, harmonic_split, theta_split_and_conditions, HarmonicDecomposition};
pub use hodge::{basic_harmonic_projector, full_harmonic_projector, harmonic_projector, HodgeDecomposition};
pub use operators::{
    build_dprime_dsecond, verify_twisted_kahler, verify_twisted_kahler_both, TwistedOperators,
};
