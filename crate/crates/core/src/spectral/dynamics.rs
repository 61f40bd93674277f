//! Time-dependent expectation values.
//!
//! With `bₙ(t) = aₙe^{−iωₙt}` every observable here is a double sum
//! `Σₙⱼ bₙ*bⱼ Wₙⱼ` over a Hermitian kernel `W`. The public functions add each
//! `(n, j)` term to its `(j, n)` conjugate before summing, so the results are
//! real by construction. [`double_sum`] keeps the unpaired complex sum around as
//! an independent check.

use num_complex::Complex64;

use super::{
    angular_frequency, beta, eigenfunction_value, momentum_ratio, position_matrix_element, WavePacket, WellConfig,
};

fn evolved(p: &WavePacket, t: f64, cfg: &WellConfig) -> Vec<Complex64> {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let w = angular_frequency(i + 1, cfg).expect("mode index starts at 1");
            a * phase(w, t)
        })
        .collect()
}

/// `e^{−iωt}`. The rounding error of `ω·t` is recovered with a fused
/// multiply-add and applied to first order, so nearby times stay consistent.
fn phase(w: f64, t: f64) -> Complex64 {
    let wt = w * t;
    let err = w.mul_add(t, -wt);
    let (s, c) = wt.sin_cos();
    Complex64::new(c - err * s, -(s + err * c))
}

/// `Σ_{n<j, n+j odd} 2·Re(bₙ*bⱼ)·kₙkⱼβₙⱼ`
fn parity_weighted_sum(p: &WavePacket, t: f64, cfg: &WellConfig) -> f64 {
    let b = evolved(p, t, cfg);
    let mut s = 0.0;
    for n in 0..b.len() {
        for j in (n + 1..b.len()).step_by(2) {
            let z = b[n].conj() * b[j];
            s += 2.0 * z.re * cfg.wavenumber(n + 1) * cfg.wavenumber(j + 1) * f64::from(beta(n + 1, j + 1));
        }
    }
    s
}

/// `Ψ(x, t) = Σₙ aₙΨₙ(x)e^{−iωₙt}`
pub fn packet_value(p: &WavePacket, x: f64, t: f64, cfg: &WellConfig) -> Complex64 {
    evolved(p, t, cfg).iter().enumerate().map(|(i, b)| b * eigenfunction_value(i + 1, x, cfg)).sum()
}

/// `⟨dV/dx⟩(t) = −(ħ²/mL) Σₙⱼ aₙ*aⱼ kₙkⱼβₙⱼ e^{i(ωₙ−ωⱼ)t}`
pub fn force_expectation(p: &WavePacket, t: f64, cfg: &WellConfig) -> f64 {
    // 0 − x rather than −x keeps stationary states at +0
    0.0 - cfg.force_scale() * parity_weighted_sum(p, t, cfg)
}

/// `d⟨p⟩/dt`, differentiating the `⟨p⟩(t)` series term by term.
///
/// Each term gains a factor `i(ωₙ − ωⱼ)`; the `(kₙ² − kⱼ²)` denominators are
/// not cancelled by hand, so this stays independent of [`force_expectation`]
/// and the pair gives a genuine numerical residual.
pub fn momentum_rate(p: &WavePacket, t: f64, cfg: &WellConfig) -> f64 {
    let b = evolved(p, t, cfg);
    let w: Vec<f64> = (1..=b.len()).map(|n| angular_frequency(n, cfg).expect("mode index starts at 1")).collect();
    let mut s = 0.0;
    for n in 0..b.len() {
        for j in (n + 1..b.len()).step_by(2) {
            // d(Im z)/dt = (ωₙ − ωⱼ)·Re z
            let z = b[n].conj() * b[j];
            s += 2.0 * momentum_ratio(n + 1, j + 1) * (w[n] - w[j]) * z.re;
        }
    }
    2.0 * cfg.hbar() / cfg.length() * s
}

/// `⟨p⟩(t) = −iħ(2/L) Σ_{n≠j} aₙ*aⱼ kₙkⱼβₙⱼ/(kₙ² − kⱼ²) e^{i(ωₙ−ωⱼ)t}`
pub fn momentum_expectation(p: &WavePacket, t: f64, cfg: &WellConfig) -> f64 {
    let b = evolved(p, t, cfg);
    let mut s = 0.0;
    for n in 0..b.len() {
        for j in (n + 1..b.len()).step_by(2) {
            // antisymmetric ratio: C(z − z̄) = 2iC·Im z
            let z = b[n].conj() * b[j];
            s += 2.0 * momentum_ratio(n + 1, j + 1) * z.im;
        }
    }
    // −iħ(2/L)·(i·s)
    2.0 * cfg.hbar() / cfg.length() * s
}

/// `⟨x⟩(t)` from the closed-form position matrix elements.
pub fn position_expectation(p: &WavePacket, t: f64, cfg: &WellConfig) -> f64 {
    let b = evolved(p, t, cfg);
    let mut diag = 0.0;
    let mut off = 0.0;
    for n in 0..b.len() {
        // |bₙ|² = |aₙ|² exactly; skip the rounded phase
        diag += p.coeffs()[n].norm_sqr();
        for j in (n + 1..b.len()).step_by(2) {
            let x = position_matrix_element(n + 1, j + 1, cfg).expect("mode index starts at 1");
            off += 2.0 * (b[n].conj() * b[j]).re * x;
        }
    }
    0.5 * cfg.length() * diag + off
}

/// `d⟨p⟩/dt + ⟨dV/dx⟩`; zero when Ehrenfest's theorem holds.
pub fn ehrenfest_residual(p: &WavePacket, t: f64, cfg: &WellConfig) -> f64 {
    momentum_rate(p, t, cfg) + force_expectation(p, t, cfg)
}

/// Matrix kernel of an observable in the eigenbasis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    Force,
    MomentumRate,
    Momentum,
    Position,
}

/// Which `(n, j)` pairs enter a [`double_sum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    All,
    OddSumOnly,
}

impl Kernel {
    fn weight(self, n: usize, j: usize, cfg: &WellConfig) -> Complex64 {
        let kk = cfg.wavenumber(n) * cfg.wavenumber(j) * f64::from(beta(n, j));
        match self {
            Kernel::Force => Complex64::new(-cfg.force_scale() * kk, 0.0),
            Kernel::MomentumRate => Complex64::new(cfg.force_scale() * kk, 0.0),
            Kernel::Momentum if n == j => Complex64::new(0.0, 0.0),
            Kernel::Momentum => {
                let kn2 = cfg.wavenumber(n).powi(2);
                let kj2 = cfg.wavenumber(j).powi(2);
                Complex64::new(0.0, -cfg.hbar() * 2.0 / cfg.length() * kk / (kn2 - kj2))
            }
            Kernel::Position => {
                Complex64::new(position_matrix_element(n, j, cfg).expect("mode index starts at 1"), 0.0)
            }
        }
    }
}

/// Unpaired `Σₙⱼ bₙ*bⱼ Wₙⱼ` over every ordered pair, returned as a complex number.
pub fn double_sum(p: &WavePacket, t: f64, cfg: &WellConfig, kernel: Kernel, selection: Selection) -> Complex64 {
    let b = evolved(p, t, cfg);
    let mut s = Complex64::new(0.0, 0.0);
    for n in 0..b.len() {
        for j in 0..b.len() {
            if selection == Selection::OddSumOnly && (n + j) % 2 == 0 {
                continue;
            }
            s += b[n].conj() * b[j] * kernel.weight(n + 1, j + 1, cfg);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn two_state() -> WavePacket {
        WavePacket::new(vec![Complex64::new(FRAC_1_SQRT_2, 0.0); 2]).unwrap()
    }

    #[test]
    fn single_eigenstate_is_static() {
        let cfg = WellConfig::new(1.4, 0.7, 1.1).unwrap();
        let p = WavePacket::eigenstate(3).unwrap();
        for t in [0.0, 0.3, 7.0] {
            assert_eq!(momentum_expectation(&p, t, &cfg), 0.0);
            assert_eq!(momentum_rate(&p, t, &cfg), 0.0);
            assert_eq!(force_expectation(&p, t, &cfg), 0.0);
            assert_eq!(ehrenfest_residual(&p, t, &cfg), 0.0);
            assert!((position_expectation(&p, t, &cfg) - 0.7).abs() < 1e-15);
        }
    }

    #[test]
    fn two_state_values() {
        let cfg = WellConfig::default();
        let p = two_state();
        assert_eq!(momentum_expectation(&p, 0.0, &cfg), 0.0);
        assert!((momentum_rate(&p, 0.0, &cfg) - 4.0 * PI * PI).abs() < 1e-12);
        let x0 = 0.5 - 16.0 / (9.0 * PI * PI);
        assert!((position_expectation(&p, 0.0, &cfg) - x0).abs() < 1e-15);
        let w12 = 1.5 * PI * PI;
        for t in [0.0, 0.1, 0.77, 3.0] {
            let want = -4.0 * PI * PI * (w12 * t).cos();
            assert!((force_expectation(&p, t, &cfg) - want).abs() < 1e-12);
        }
        // amplitude of ⟨p⟩ is |⟨1|p|2⟩| = 8ħ/3L
        let t_quarter = 0.5 * PI / w12;
        assert!((momentum_expectation(&p, t_quarter, &cfg).abs() - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn odd_parity_pair_has_no_force() {
        let cfg = WellConfig::default();
        let p = WavePacket::from_entries(
            &[super::super::PacketEntry(1, FRAC_1_SQRT_2, 0.0), super::super::PacketEntry(3, FRAC_1_SQRT_2, 0.0)],
            false,
        )
        .unwrap();
        for t in [0.0, 0.4, 1.3] {
            assert_eq!(force_expectation(&p, t, &cfg), 0.0);
        }
    }

    #[test]
    fn paired_matches_full_sum() {
        let cfg = WellConfig::new(1.3, 0.8, 1.0).unwrap();
        let p = WavePacket::normalized(vec![
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.2, 0.5),
            Complex64::new(0.4, -0.3),
            Complex64::new(0.1, 0.2),
        ])
        .unwrap();
        let t = 0.37;
        let cases: [(Kernel, fn(&WavePacket, f64, &WellConfig) -> f64); 4] = [
            (Kernel::Force, force_expectation),
            (Kernel::MomentumRate, momentum_rate),
            (Kernel::Momentum, momentum_expectation),
            (Kernel::Position, position_expectation),
        ];
        for (kernel, f) in cases {
            let full = double_sum(&p, t, &cfg, kernel, Selection::All);
            let paired = f(&p, t, &cfg);
            assert!(full.im.abs() < 1e-12 * full.norm().max(1.0), "{kernel:?}");
            assert!((full.re - paired).abs() < 1e-12 * paired.abs().max(1.0), "{kernel:?}");
        }
    }
}
