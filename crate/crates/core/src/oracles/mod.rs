//! Independent numerical ground truth for the closed forms.

mod convergence;
mod derivative;
mod finite_well;
mod grid;

pub use convergence::{convergence_study, ladder_from_e1_multiples, ConvergenceRow, ConvergenceTable, PairSummary};
pub use derivative::{numerical_time_derivative, Richardson};
pub use finite_well::{
    bisect, finite_force_matrix_element, solve_finite_well_levels, FiniteWell, FiniteWellLevel, FiniteWellSpectrum,
    Parity,
};
pub use grid::{grid_expectation, grid_overlap, GridField, GridObservable};
