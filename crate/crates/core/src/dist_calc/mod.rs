//! Exact calculus for distributions on `[0, L]`.
//!
//! An expression is a sum of windowed trigonometric polynomials
//! `f(x)·θ(x)·θ(L − x)` and Dirac deltas on the two walls. Deltas are sifted as
//! soon as they appear, so in canonical form every delta carries a constant
//! coefficient and `δ′` never arises.

mod expr;
mod smooth;
mod well;

pub use expr::{DeltaWeight, DistExpr, DistTerm, Site};
pub use smooth::{Pole, SmoothFn, Trig, TrigTerm};
pub use well::{
    assembled_force_matrix_element, boundary_term, eigenfunction, force_term, mode_function, potential_term,
    symmetric_specification_form, symmetric_specification_form_unsifted,
};
