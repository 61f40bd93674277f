//! Quadrature on uniform grids that put both walls on nodes.

use num_complex::Complex64;

use super::finite_well::FiniteWellLevel;
use crate::spectral::packet_value;
use crate::{Error, Result, WavePacket, WellConfig};

/// Uniformly sampled complex field on `[−a, L + a′]`.
///
/// The well `[0, L]` spans an even number of intervals, so the walls are also
/// nodes of the coarse grid made of every other sample.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    origin: f64,
    spacing: f64,
    samples: Vec<Complex64>,
    hbar: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridObservable {
    Probability,
    Position,
    Momentum,
}

impl GridField {
    /// Sample `f` on `points` nodes with `pad_nodes` nodes left of `x = 0`.
    pub fn sample(cfg: &WellConfig, points: usize, pad_nodes: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let free = points.checked_sub(1 + 2 * pad_nodes).filter(|&m| m >= 4).ok_or_else(|| {
            Error::InvalidGrid(format!("{points} points cannot hold {pad_nodes} padding nodes per side"))
        })?;
        let interior = free - free % 2;
        let spacing = cfg.length() / interior as f64;
        let origin = -(pad_nodes as f64) * spacing;
        let samples = (0..points).map(|i| f(origin + i as f64 * spacing)).collect();
        Ok(GridField { origin, spacing, samples, hbar: cfg.hbar() })
    }

    pub fn from_packet(p: &WavePacket, t: f64, cfg: &WellConfig, points: usize, pad_nodes: usize) -> Result<Self> {
        Self::sample(cfg, points, pad_nodes, |x| packet_value(p, x, t, cfg))
    }

    pub fn from_finite_level(
        level: &FiniteWellLevel,
        cfg: &WellConfig,
        points: usize,
        pad_nodes: usize,
    ) -> Result<Self> {
        Self::sample(cfg, points, pad_nodes, |x| Complex64::new(level.value(x), 0.0))
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.spacing
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }
}

/// Trapezoid sum over nodes `0, stride, 2·stride, …, last` (with `last` a multiple of `stride`).
fn trapezoid(values: &[f64], h: f64, stride: usize, last: usize) -> f64 {
    let mut s = 0.5 * (values[0] + values[last]);
    let mut i = stride;
    while i < last {
        s += values[i];
        i += stride;
    }
    s * h * stride as f64
}

/// `h·Σ ψᵢ* (Dψ)ᵢ` using the fourth-order central stencil on every `stride`-th node,
/// with the field taken as zero beyond the sampled range.
fn derivative_inner_product(samples: &[Complex64], h: f64, stride: usize) -> Complex64 {
    let coarse: Vec<Complex64> = samples.iter().step_by(stride).copied().collect();
    let hs = h * stride as f64;
    let at = |i: isize| -> Complex64 {
        if i < 0 || i as usize >= coarse.len() {
            Complex64::new(0.0, 0.0)
        } else {
            coarse[i as usize]
        }
    };
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..coarse.len() as isize {
        let d = (at(i - 2) - at(i - 1) * 8.0 + at(i + 1) * 8.0 - at(i + 2)) / (12.0 * hs);
        s += at(i).conj() * d;
    }
    s * hs
}

/// Expectation value of `observable` with a Richardson error estimate from the
/// every-other-node grid; fails with `GridTooCoarse` when the estimate exceeds `tolerance`.
pub fn grid_expectation(field: &GridField, observable: GridObservable, tolerance: f64) -> Result<f64> {
    let h = field.spacing;
    let n = field.samples.len();
    let (value, estimate) = match observable {
        GridObservable::Probability | GridObservable::Position => {
            let integrand: Vec<f64> = field
                .samples
                .iter()
                .enumerate()
                .map(|(i, z)| {
                    let w = if observable == GridObservable::Position { field.x(i) } else { 1.0 };
                    w * z.norm_sqr()
                })
                .collect();
            let full = trapezoid(&integrand, h, 1, n - 1);
            let last_even = (n - 1) - (n - 1) % 2;
            let fine = trapezoid(&integrand, h, 1, last_even);
            let coarse = trapezoid(&integrand, h, 2, last_even);
            (full, (fine - coarse).abs() / 3.0)
        }
        GridObservable::Momentum => {
            let fine = derivative_inner_product(&field.samples, h, 1);
            let coarse = derivative_inner_product(&field.samples, h, 2);
            // ⟨p⟩ = −iħ·S
            let p_fine = Complex64::new(0.0, -field.hbar) * fine;
            let p_coarse = Complex64::new(0.0, -field.hbar) * coarse;
            let imag_tol = tolerance.max(1e-12 * p_fine.norm());
            if p_fine.im.abs() > imag_tol {
                return Err(Error::NonRealExpectation { imag: p_fine.im });
            }
            (p_fine.re, (p_fine.re - p_coarse.re).abs() / 15.0)
        }
    };
    if !(estimate <= tolerance) {
        return Err(Error::GridTooCoarse { estimate, tolerance });
    }
    Ok(value)
}

/// `∫ a* b dx` by the trapezoid rule (both fields on the same grid).
pub fn grid_overlap(a: &GridField, b: &GridField) -> Result<Complex64> {
    if a.len() != b.len() || a.spacing != b.spacing || a.origin != b.origin {
        return Err(Error::InvalidGrid("fields are sampled on different grids".into()));
    }
    let n = a.len();
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        s += a.samples[i].conj() * b.samples[i] * w;
    }
    Ok(s * a.spacing)
}
