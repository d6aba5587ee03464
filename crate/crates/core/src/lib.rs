//! Exact computations for first-order congruences of `(n-1)`-secant lines
//! in `Pⁿ` and the codimension-two varieties they are attached to.

pub mod catalog;
pub mod congruence;
pub mod exact;
pub mod formulas;
pub mod schubert;

pub use catalog::{ClassificationReport, VarietyRecord};
pub use congruence::{Congruence, DeterminantalCongruence, FocalSliceReport, LinearCongruence, ProjLine};
pub use exact::{BinaryForm, MultiPoly, Rational, RationalMatrix};
pub use formulas::{SectionInvariants, SurfaceInvariants, ThreefoldInvariants};
pub use schubert::{Multidegree, SchubertClass};
