//! Infinite-well expressions built from the distribution calculus.

use super::{DeltaWeight, DistExpr, Pole, Site, SmoothFn};
use crate::spectral::{eigenvalue, WellConfig};
use crate::{Error, Result};

fn check_n(n: usize) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidQuantumNumber(n));
    }
    Ok(n as i64)
}

/// `uₙ(x) = √(2/L)·sin(kₙx)`.
pub fn mode_function(n: usize, cfg: &WellConfig) -> Result<SmoothFn> {
    let mode = check_n(n)?;
    Ok(SmoothFn::sin((2.0 / cfg.length()).sqrt(), mode))
}

/// `Ψₙ = uₙ·θ(x)·θ(L − x)`.
pub fn eigenfunction(n: usize, cfg: &WellConfig) -> Result<DistExpr> {
    Ok(DistExpr::windowed(cfg.length(), mode_function(n, cfg)?))
}

/// `V(x)Ψₙ(x)`, obtained as `(ħ²/2m)Ψₙ″ + EₙΨₙ`.
///
/// Inside the well the two pieces cancel, leaving
/// `√(2/L)(ħ²/2m)kₙ[δ(x) − cos(kₙL)δ(L − x)]`.
pub fn potential_term(n: usize, cfg: &WellConfig) -> Result<DistExpr> {
    let psi = eigenfunction(n, cfg)?;
    let kinetic = psi.differentiate()?.differentiate()?.scale(cfg.hbar2_over_2m());
    kinetic.add(&psi.scale(eigenvalue(n, cfg)?))?.sift()
}

/// `(dΨₙ/dx)·V(x)Ψⱼ(x)`, as boundary deltas.
pub fn force_term(n: usize, j: usize, cfg: &WellConfig) -> Result<DistExpr> {
    let slope = eigenfunction(n, cfg)?.differentiate()?;
    slope.multiply_expr(&potential_term(j, cfg)?)
}

/// `Ψₙ·V·Ψⱼ`, the total-derivative piece of the product-rule split.
///
/// Both walls sift to `Ψₙ(0)` and `Ψₙ(L)`, which vanish, so the result is empty.
pub fn boundary_term(n: usize, j: usize, cfg: &WellConfig) -> Result<DistExpr> {
    eigenfunction(n, cfg)?.multiply_expr(&potential_term(j, cfg)?)
}

/// `⟨n|dV/dx|j⟩` assembled from the product rule
/// `Ψₙ V′ Ψⱼ = (ΨₙVΨⱼ)′ − Ψₙ′(VΨⱼ) − (ΨₙV)Ψⱼ′` with half-weight wall integrals.
pub fn assembled_force_matrix_element(n: usize, j: usize, cfg: &WellConfig) -> Result<f64> {
    let boundary = boundary_term(n, j, cfg)?;
    let surface = boundary.delta_coefficient(Site::Right)? - boundary.delta_coefficient(Site::Left)?;
    let left = force_term(n, j, cfg)?.integrate_over_well(DeltaWeight::HalfAtWalls)?;
    let right = force_term(j, n, cfg)?.integrate_over_well(DeltaWeight::HalfAtWalls)?;
    Ok(surface - left - right)
}

/// `[δ(x)/x + δ(L − x)/(L − x)]·uₙ(x)`, with the right-wall factor written as
/// `uₙ(x) = √(2/L)·sin(kₙ(x − L))·cos(kₙL)`.
fn wall_quotients(n: usize, cfg: &WellConfig) -> Result<DistExpr> {
    let u = mode_function(n, cfg)?;
    let l = cfg.length();
    let left = DistExpr::delta(l, Site::Left, SmoothFn::constant(1.0).with_pole(Pole::OverX)).multiply_unsifted(&u)?;
    let right = DistExpr::delta(l, Site::Right, SmoothFn::constant(1.0).with_pole(Pole::OverLMinusX))
        .multiply_unsifted(&u.rewrite_about_right_wall())?;
    left.add(&right)
}

/// `(ħ²/2m)[δ(x)/x + δ(L − x)/(L − x)]·uₙ(x)` before sifting.
pub fn symmetric_specification_form_unsifted(n: usize, cfg: &WellConfig) -> Result<DistExpr> {
    Ok(wall_quotients(n, cfg)?.scale(cfg.hbar2_over_2m()))
}

/// Sifted symmetric form; coefficient-for-coefficient equal to [`potential_term`].
pub fn symmetric_specification_form(n: usize, cfg: &WellConfig) -> Result<DistExpr> {
    // scaling after the sift keeps the floating-point operation order of potential_term
    Ok(wall_quotients(n, cfg)?.sift()?.scale(cfg.hbar2_over_2m()))
}
