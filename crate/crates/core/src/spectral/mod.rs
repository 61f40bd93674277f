//! Closed-form spectral dynamics of wave packets in the infinite square well.

mod config;
mod dynamics;
mod packet;
pub(crate) mod series;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use config::WellConfig;
pub use dynamics::{
    double_sum, ehrenfest_residual, force_expectation, momentum_expectation, momentum_rate, packet_value,
    position_expectation, Kernel, Selection,
};
pub use packet::{parse_packet_json, parse_packet_text, PacketEntry, WavePacket, DEFAULT_NORM_TOLERANCE};
pub use series::{
    evaluate_amplitude_series, evaluate_series, time_grid, Observable, SeriesMetadata, SeriesValues, TimeSeries,
};

use crate::{Error, Result};

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidQuantumNumber(n))
    } else {
        Ok(())
    }
}

/// `Eₙ = ħ²kₙ²/2m`
pub fn eigenvalue(n: usize, cfg: &WellConfig) -> Result<f64> {
    check_n(n)?;
    let k = cfg.wavenumber(n);
    Ok(cfg.hbar2_over_2m() * k * k)
}

/// `ωₙ = Eₙ/ħ`
pub fn angular_frequency(n: usize, cfg: &WellConfig) -> Result<f64> {
    Ok(eigenvalue(n, cfg)? / cfg.hbar())
}

/// `Ψₙ(x) = √(2/L) sin(kₙx)` inside the well, zero outside.
pub fn eigenfunction_value(n: usize, x: f64, cfg: &WellConfig) -> f64 {
    let l = cfg.length();
    if x <= 0.0 || x >= l {
        return 0.0;
    }
    (2.0 / l).sqrt() * (cfg.wavenumber(n) * x).sin()
}

/// Parity factor `βₙⱼ = 1 − (−1)ⁿ⁺ʲ`: 0 for even `n + j`, 2 for odd.
pub fn beta(n: usize, j: usize) -> u8 {
    if (n + j) % 2 == 0 {
        0
    } else {
        2
    }
}

/// `⟨n|dV/dx|j⟩ = −(ħ²/mL)·kₙkⱼ·βₙⱼ`
pub fn force_matrix_element(n: usize, j: usize, cfg: &WellConfig) -> Result<f64> {
    check_n(n)?;
    check_n(j)?;
    if beta(n, j) == 0 {
        return Ok(0.0);
    }
    Ok(-cfg.force_scale() * cfg.wavenumber(n) * cfg.wavenumber(j) * 2.0)
}

/// `⟨n|p̂|j⟩ = −iħ(2/L)·kₙkⱼβₙⱼ/(kₙ² − kⱼ²)`, zero on the diagonal.
pub fn momentum_matrix_element(n: usize, j: usize, cfg: &WellConfig) -> Result<Complex64> {
    check_n(n)?;
    check_n(j)?;
    if n == j {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ratio = momentum_ratio(n, j);
    Ok(Complex64::new(0.0, -cfg.hbar() * 2.0 / cfg.length() * ratio))
}

/// `kₙkⱼβₙⱼ/(kₙ² − kⱼ²)`; the `π/L` factors cancel.
pub(crate) fn momentum_ratio(n: usize, j: usize) -> f64 {
    let (nf, jf) = (n as f64, j as f64);
    nf * jf * f64::from(beta(n, j)) / (nf * nf - jf * jf)
}

/// `⟨n|x̂|j⟩`: `L/2` on the diagonal, `−8Lnj/(π²(n² − j²)²)` for odd `n + j`, else zero.
pub fn position_matrix_element(n: usize, j: usize, cfg: &WellConfig) -> Result<f64> {
    check_n(n)?;
    check_n(j)?;
    let l = cfg.length();
    if n == j {
        return Ok(0.5 * l);
    }
    if beta(n, j) == 0 {
        return Ok(0.0);
    }
    let (nf, jf) = (n as f64, j as f64);
    let d = nf * nf - jf * jf;
    Ok(-8.0 * l * nf * jf / (PI * PI * d * d))
}
