//! Finite square well on `[0, L]` with barriers of height `V₀` on both sides.
//!
//! In the centred coordinate `y = x − L/2` and with `z = kL/2`,
//! `z₀ = (L/2)·√(2mV₀)/ħ`, bound states satisfy
//!
//! * even: `z·sin z − √(z₀² − z²)·cos z = 0`
//! * odd:  `z·cos z + √(z₀² − z²)·sin z = 0`
//!
//! Level `n` has its root in `((n−1)π/2, nπ/2)` and is even for odd `n`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::{Error, Result, WellConfig};

/// Subintervals scanned for a sign change inside each level's window.
const SCAN_STEPS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiniteWell {
    v0: f64,
    cfg: WellConfig,
}

impl FiniteWell {
    pub fn new(v0: f64, cfg: WellConfig) -> Result<Self> {
        if !(v0.is_finite() && v0 > 0.0) {
            return Err(Error::InvalidConfig(format!("barrier height must be finite and > 0, got {v0}")));
        }
        Ok(FiniteWell { v0, cfg })
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn config(&self) -> &WellConfig {
        &self.cfg
    }

    /// Dimensionless well strength `z₀`.
    pub fn strength(&self) -> f64 {
        0.5 * self.cfg.length() * (2.0 * self.cfg.mass() * self.v0).sqrt() / self.cfg.hbar()
    }

    pub fn bound_state_count(&self) -> usize {
        (self.strength() / FRAC_PI_2).ceil() as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

fn matching_condition(parity: Parity, z: f64, z0: f64) -> f64 {
    let s = (z0 * z0 - z * z).max(0.0).sqrt();
    match parity {
        Parity::Even => z * z.sin() - s * z.cos(),
        Parity::Odd => z * z.cos() + s * z.sin(),
    }
}

/// Bisection on a sign-changing bracket until the interval stops shrinking.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// One bound state, normalized over the whole line with `ψ(0) > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FiniteWellLevel {
    pub index: usize,
    pub parity: Parity,
    pub energy: f64,
    /// interior wavenumber `k = √(2mE)/ħ`
    pub wavenumber: f64,
    /// exterior decay rate `κ = √(2m(V₀ − E))/ħ`
    pub decay: f64,
    /// interior amplitude: `A·cos(ky)` or `A·sin(ky)`
    pub amplitude: f64,
    half_width: f64,
    /// `|matching condition|/z₀` at the accepted root
    pub root_residual: f64,
}

impl FiniteWellLevel {
    fn inner(&self, y: f64) -> f64 {
        match self.parity {
            Parity::Even => self.amplitude * (self.wavenumber * y).cos(),
            Parity::Odd => self.amplitude * (self.wavenumber * y).sin(),
        }
    }

    fn inner_slope(&self, y: f64) -> f64 {
        let k = self.wavenumber;
        match self.parity {
            Parity::Even => -self.amplitude * k * (k * y).sin(),
            Parity::Odd => self.amplitude * k * (k * y).cos(),
        }
    }

    /// `ψ(0)`
    pub fn left_wall_value(&self) -> f64 {
        self.inner(-self.half_width)
    }

    /// `ψ(L)`, tied to `ψ(0)` by parity.
    pub fn right_wall_value(&self) -> f64 {
        match self.parity {
            Parity::Even => self.left_wall_value(),
            Parity::Odd => -self.left_wall_value(),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        let a = self.half_width;
        let y = x - a;
        if y.abs() <= a {
            self.inner(y)
        } else {
            let wall = if y < 0.0 { self.left_wall_value() } else { self.right_wall_value() };
            wall * (-self.decay * (y.abs() - a)).exp()
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let a = self.half_width;
        let y = x - a;
        if y.abs() <= a {
            self.inner_slope(y)
        } else {
            // outside, ψ decays away from the well: ψ′ = ∓κψ
            self.value(x) * if y < 0.0 { self.decay } else { -self.decay }
        }
    }

    /// Largest mismatch of value and slope between the interior and exterior
    /// forms at the two walls, relative to `|A|·(k + κ)` for slopes and `|A|` for values.
    pub fn matching_residual(&self) -> f64 {
        let a = self.half_width;
        let scale = self.amplitude.abs();
        let slope_scale = scale * (self.wavenumber + self.decay);
        let left_out_value = self.left_wall_value();
        let right_out_value = self.right_wall_value();
        let value_res = (self.inner(-a) - left_out_value).abs().max((self.inner(a) - right_out_value).abs()) / scale;
        let slope_res = (self.inner_slope(-a) - self.decay * left_out_value)
            .abs()
            .max((self.inner_slope(a) + self.decay * right_out_value).abs())
            / slope_scale;
        value_res.max(slope_res)
    }

    /// Sign changes of `ψ` on a uniform sample of the open interval `(0, L)`.
    pub fn node_count(&self, samples: usize) -> usize {
        let l = 2.0 * self.half_width;
        let vals: Vec<f64> =
            (1..samples).map(|i| self.value(l * i as f64 / samples as f64)).filter(|v| *v != 0.0).collect();
        vals.windows(2).filter(|w| w[0].signum() != w[1].signum()).count()
    }
}

/// Solved levels `1..=count` of a finite well.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteWellSpectrum {
    well: FiniteWell,
    levels: Vec<FiniteWellLevel>,
}

impl FiniteWellSpectrum {
    pub fn well(&self) -> &FiniteWell {
        &self.well
    }

    pub fn levels(&self) -> &[FiniteWellLevel] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> Result<&FiniteWellLevel> {
        n.checked_sub(1).and_then(|i| self.levels.get(i)).ok_or(Error::UnsolvedLevel(n))
    }

    /// `⟨n|dV/dx|j⟩` with `dV/dx = −V₀δ(x) + V₀δ(x − L)`:
    /// `V₀·[ψₙ(L)ψⱼ(L) − ψₙ(0)ψⱼ(0)]`.
    pub fn force_matrix_element(&self, n: usize, j: usize) -> Result<f64> {
        let (a, b) = (self.level(n)?, self.level(j)?);
        Ok(self.well.v0 * (a.right_wall_value() * b.right_wall_value() - a.left_wall_value() * b.left_wall_value()))
    }
}

pub fn finite_force_matrix_element(spectrum: &FiniteWellSpectrum, n: usize, j: usize) -> Result<f64> {
    spectrum.force_matrix_element(n, j)
}

/// Solve the lowest `count` bound states by bisection.
pub fn solve_finite_well_levels(well: &FiniteWell, count: usize) -> Result<FiniteWellSpectrum> {
    if count == 0 {
        return Err(Error::InvalidConfig("need at least one finite-well level".into()));
    }
    let available = well.bound_state_count();
    if available < count {
        return Err(Error::InsufficientDepth { requested: count, available });
    }
    let z0 = well.strength();
    let cfg = well.cfg;
    let half_width = 0.5 * cfg.length();
    let levels = (1..=count)
        .map(|n| {
            let parity = if n % 2 == 1 { Parity::Even } else { Parity::Odd };
            let f = |z: f64| matching_condition(parity, z, z0);
            let lo = (n - 1) as f64 * FRAC_PI_2;
            let hi = (n as f64 * FRAC_PI_2).min(z0);
            let bracket = scan_bracket(&f, lo, hi).ok_or(Error::BracketingFailure(n))?;
            let z = bisect(f, bracket.0, bracket.1).ok_or(Error::BracketingFailure(n))?;

            let k = z / half_width;
            let kappa = (z0 * z0 - z * z).max(0.0).sqrt() / half_width;
            let energy = cfg.hbar2_over_2m() * k * k;
            // ∫ inside of cos²(ky) or sin²(ky), plus two exponential tails
            let s2 = (2.0 * z).sin() / (2.0 * k);
            let (inside, wall) = match parity {
                Parity::Even => (half_width + s2, z.cos()),
                Parity::Odd => (half_width - s2, z.sin()),
            };
            let mut amplitude = (inside + wall * wall / kappa).sqrt().recip();
            let left = match parity {
                Parity::Even => z.cos(),
                Parity::Odd => -z.sin(),
            };
            if left < 0.0 {
                amplitude = -amplitude;
            }
            Ok(FiniteWellLevel {
                index: n,
                parity,
                energy,
                wavenumber: k,
                decay: kappa,
                amplitude,
                half_width,
                root_residual: f(z).abs() / z0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteWellSpectrum { well: *well, levels })
}

/// Find the single sign change of `f` on `[lo, hi]`; `None` if there are zero or several.
fn scan_bracket(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    if !(hi > lo) {
        return None;
    }
    let h = (hi - lo) / SCAN_STEPS as f64;
    let mut found = None;
    let mut prev = (lo, f(lo));
    for i in 1..=SCAN_STEPS {
        let x = if i == SCAN_STEPS { hi } else { lo + i as f64 * h };
        let fx = f(x);
        if prev.1 == 0.0 || prev.1.signum() != fx.signum() {
            if found.is_some() {
                return None;
            }
            found = Some((prev.0, x));
        }
        prev = (x, fx);
    }
    found
}
