//! Symbolic and numerical tools for the one-dimensional infinite square well.
//!
//! Three layers:
//!
//! * [`dist_calc`]: exact calculus for distributions supported on `[0, L]`:
//!   windowed trigonometric polynomials plus Dirac deltas sitting on the walls.
//!   It derives `V(x)Ψₙ(x)` as a pair of boundary deltas and assembles the
//!   force matrix elements from it.
//! * [`spectral`]: closed-form eigenpairs, wave packets and the time-dependent
//!   expectation values `⟨x⟩`, `⟨p⟩`, `d⟨p⟩/dt` and `⟨dV/dx⟩`.
//! * [`oracles`]: independent numerical checks. A finite-depth well solved by
//!   bisection, grid quadrature, finite-difference time derivatives.
//!
//! Batch evaluation (time grids, barrier-height ladders) goes through
//! [`Execution`], which dispatches to rayon when the `parallel` feature is on
//! and runs sequentially otherwise.

pub mod dist_calc;
mod error;
pub mod oracles;
mod par;
pub mod spectral;

pub use error::{Error, Result};
pub use par::Execution;
pub use spectral::{WavePacket, WellConfig};
