//! Left-invariant models of Sasakian manifolds: Chevalley–Eilenberg
//! complex, basic forms and their bigrading, the metric and Hodge stars,
//! and the transverse Kähler operators.

pub mod basic;
pub mod ce;
pub mod datum;
pub mod exterior;
pub mod forms;
pub mod kahler;
pub mod metric;

pub use basic::{BasicComplex, BigradingConvention};
pub use ce::CeAlgebra;
pub use datum::{Bracket, SasakianLieDatum, ValidationReport};
pub use forms::FormBundle;
pub use metric::Metric;
