//! Deformation germs of flat bundles over Sasakian nilmanifolds: the finite
//! DGLA built from basic cohomology, cup-product vanishing, and Fox calculus
//! on lattice presentations.

pub mod compare;
pub mod cup;
pub mod fox;
pub mod model;
pub mod product;

pub use compare::{
    compare_cone_with_variety, normalized_quadrics, ComparisonReport, Matching, NormalizedQuadrics,
};
pub use cup::{cup_product_matrix, cup_vanishing_check, in_vanishing_range, CupVanishingReport};
pub use fox::{
    fox_tangent, linear_kernel_check, relator_order2, FoxTangent, GroupPresentation, Representation,
};
pub use model::{
    basic_cohomology_algebra, build_germ_model, mc_cone, quadraticity_check, BasicCohomologyAlgebra,
    GermModel, QuadraticityReport, Verdict,
};
pub use product::{ambient_product, FiberProduct, FormProduct};
