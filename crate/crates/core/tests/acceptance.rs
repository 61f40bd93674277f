//! Acceptance suite. Prints one line per criterion and exits nonzero on any failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use boxwell::dist_calc::{
    assembled_force_matrix_element, boundary_term, potential_term, symmetric_specification_form, Site,
};
use boxwell::oracles::{
    convergence_study, grid_expectation, ladder_from_e1_multiples, numerical_time_derivative, GridField,
    GridObservable, Richardson,
};
use boxwell::spectral::{
    angular_frequency, ehrenfest_residual, eigenvalue, force_expectation, force_matrix_element, momentum_expectation,
    momentum_rate, position_expectation,
};
use boxwell::{Execution, WavePacket, WellConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

fn random_packet(rng: &mut ChaCha8Rng, max_modes: usize) -> WavePacket {
    loop {
        let modes = rng.gen_range(1..=max_modes);
        let coeffs: Vec<Complex64> =
            (0..modes).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        if coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>() > 1e-3 {
            return WavePacket::normalized(coeffs).expect("non-degenerate packet");
        }
    }
}

fn potential_coefficients() -> Outcome {
    let mut worst = 0.0f64;
    for cfg in [WellConfig::default(), WellConfig::new(2.0, 0.7, 1.3).unwrap()] {
        let l = cfg.length();
        for n in 1..=50 {
            let e = potential_term(n, &cfg).unwrap();
            if !e.windowed_part().is_zero() {
                return outcome(false, format!("n = {n}: windowed part {} is not zero", e.windowed_part()));
            }
            let k = n as f64 * PI / l;
            let amp = (2.0 / l).sqrt() * cfg.hbar() * cfg.hbar() / (2.0 * cfg.mass()) * k;
            let cos_kl = if n % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst
                .max(rel(e.delta_coefficient(Site::Left).unwrap(), amp))
                .max(rel(e.delta_coefficient(Site::Right).unwrap(), -cos_kl * amp));
        }
    }
    outcome(worst < 1e-12, format!("max relative error {worst:.3e} over n = 1..50, two configs"))
}

fn symmetric_form() -> Outcome {
    for cfg in [WellConfig::default(), WellConfig::new(2.0, 0.7, 1.3).unwrap()] {
        for n in 1..=50 {
            let a = symmetric_specification_form(n, &cfg).unwrap();
            let b = potential_term(n, &cfg).unwrap();
            if a != b {
                return outcome(false, format!("n = {n}: {a} differs from {b}"));
            }
        }
    }
    outcome(true, "identical term lists for n = 1..50, two configs")
}

fn force_elements() -> Outcome {
    let mut worst = 0.0f64;
    for cfg in [WellConfig::default(), WellConfig::new(2.0, 0.7, 1.3).unwrap()] {
        let l = cfg.length();
        for n in 1..=20 {
            for j in 1..=20 {
                let assembled = assembled_force_matrix_element(n, j, &cfg).unwrap();
                let closed = force_matrix_element(n, j, &cfg).unwrap();
                if (n + j) % 2 == 0 {
                    if assembled != 0.0 || closed != 0.0 {
                        return outcome(false, format!("({n},{j}): expected 0, got {assembled} / {closed}"));
                    }
                    continue;
                }
                let (kn, kj) = (n as f64 * PI / l, j as f64 * PI / l);
                let want = -cfg.hbar() * cfg.hbar() / (cfg.mass() * l) * kn * kj * 2.0;
                worst = worst.max(rel(assembled, want)).max(rel(closed, want));
            }
        }
    }
    outcome(worst < 1e-12, format!("even n+j exactly 0; odd max relative error {worst:.3e}"))
}

fn two_state_example() -> Outcome {
    let cfg = WellConfig::default();
    let a = std::f64::consts::FRAC_1_SQRT_2;
    let p = WavePacket::new(vec![Complex64::new(a, 0.0), Complex64::new(a, 0.0)]).unwrap();
    let e1 = eigenvalue(1, &cfg).unwrap();
    let amp = 8.0 * e1 / cfg.length();
    if (amp - 4.0 * PI * PI).abs() > 1e-12 {
        return outcome(false, format!("8E1/L = {amp}, expected 4 pi^2"));
    }
    let w12 = angular_frequency(2, &cfg).unwrap() - angular_frequency(1, &cfg).unwrap();
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let t = i as f64 * 1e-3;
        worst = worst.max((force_expectation(&p, t, &cfg) + amp * (w12 * t).cos()).abs());
    }
    outcome(worst < 1e-12, format!("8E1/L = {amp:.6}; max abs error {worst:.3e} over 1000 times"))
}

fn ehrenfest_residuals(rng: &mut ChaCha8Rng) -> Outcome {
    let cfg = WellConfig::default();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = random_packet(rng, 15);
        for _ in 0..100 {
            let t = rng.gen_range(0.0..10.0);
            worst = worst.max(ehrenfest_residual(&p, t, &cfg).abs());
        }
    }
    outcome(worst < 1e-9, format!("max |residual| {worst:.3e} over 100 packets x 100 times"))
}

fn derivative_cross_check(rng: &mut ChaCha8Rng) -> Outcome {
    let cfg = WellConfig::default();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let p = random_packet(rng, 15);
        let t = rng.gen_range(0.0..2.0);
        let d = numerical_time_derivative(|s| momentum_expectation(&p, s, &cfg), t, 1e-6, Richardson::On).unwrap();
        worst = worst.max((d - momentum_rate(&p, t, &cfg)).abs());
    }
    outcome(worst < 1e-6, format!("max abs difference {worst:.3e} over 10 packets"))
}

fn finite_well_limit() -> Outcome {
    let cfg = WellConfig::default();
    let ladder = ladder_from_e1_multiples(&cfg, &[1e2, 1e3, 1e4, 1e5]).unwrap();
    let table = match convergence_study(&cfg, &[(1, 2), (2, 3)], &ladder, Execution::Parallel) {
        Ok(t) => t,
        Err(e) => return outcome(false, format!("study failed: {e}")),
    };
    let mut details = Vec::new();
    let mut pass = true;
    for (n, j) in [(1, 2), (2, 3)] {
        let errs: Vec<f64> = table.rows_for(n, j).map(|r| r.rel_err).collect();
        let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
        let last = *errs.last().unwrap();
        pass &= decreasing && last < 0.02;
        details.push(format!(
            "({n},{j}) rel err {}",
            errs.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>().join(" > ")
        ));
    }
    outcome(pass, details.join("; "))
}

fn grid_oracle(rng: &mut ChaCha8Rng) -> Outcome {
    let cfg = WellConfig::default();
    let (points, pad) = (4096, 8);
    let mut worst_p = 0.0f64;
    let mut worst_x = 0.0f64;
    for _ in 0..5 {
        let p = random_packet(rng, 6);
        for _ in 0..10 {
            let t = rng.gen_range(0.0..2.0);
            let field = GridField::from_packet(&p, t, &cfg, points, pad).unwrap();
            let gp = match grid_expectation(&field, GridObservable::Momentum, 1e-6) {
                Ok(v) => v,
                Err(e) => return outcome(false, format!("momentum quadrature: {e}")),
            };
            let gx = match grid_expectation(&field, GridObservable::Position, 1e-6) {
                Ok(v) => v,
                Err(e) => return outcome(false, format!("position quadrature: {e}")),
            };
            worst_p = worst_p.max((gp - momentum_expectation(&p, t, &cfg)).abs());
            worst_x = worst_x.max((gx - position_expectation(&p, t, &cfg)).abs());
        }
    }
    let mut worst_norm = 0.0f64;
    for n in 1..=10 {
        let field = GridField::from_packet(&WavePacket::eigenstate(n).unwrap(), 0.0, &cfg, points, pad).unwrap();
        match grid_expectation(&field, GridObservable::Probability, 1e-8) {
            Ok(v) => worst_norm = worst_norm.max((v - 1.0).abs()),
            Err(e) => return outcome(false, format!("norm quadrature, n = {n}: {e}")),
        }
    }
    outcome(
        worst_p < 1e-6 && worst_x < 1e-6 && worst_norm < 1e-8,
        format!("max |dp| {worst_p:.3e}, |dx| {worst_x:.3e}; single-mode norm error {worst_norm:.3e}"),
    )
}

fn boundary_vanishing() -> Outcome {
    let cfg = WellConfig::default();
    for n in 1..=10 {
        for j in 1..=10 {
            let e = boundary_term(n, j, &cfg).unwrap();
            if !e.is_sifted() {
                return outcome(false, format!("({n},{j}) not sifted"));
            }
            for site in [Site::Left, Site::Right] {
                let c = e.delta_coefficient(site).unwrap();
                if c != 0.0 {
                    return outcome(false, format!("({n},{j}) {site}: coefficient {c}"));
                }
            }
        }
    }
    outcome(true, "delta coefficients exactly 0 at both walls for all 100 pairs")
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b0c5);
    let mut failed = 0;
    let mut report = |id: u8, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id}. {name}: {} ({:.0?})", o.detail, start.elapsed());
        if !o.pass {
            failed += 1;
        }
    };
    report(1, "potential term coefficients", &mut potential_coefficients);
    report(2, "symmetric wall form equals potential term", &mut symmetric_form);
    report(3, "assembled vs closed-form force elements", &mut force_elements);
    report(4, "two-state force expectation", &mut two_state_example);
    report(5, "Ehrenfest residual", &mut || ehrenfest_residuals(&mut rng));
    report(6, "momentum rate vs finite difference", &mut || derivative_cross_check(&mut rng));
    report(7, "finite-well limit", &mut finite_well_limit);
    report(8, "grid quadrature oracle", &mut || grid_oracle(&mut rng));
    report(9, "boundary term vanishes at walls", &mut boundary_vanishing);
    if failed == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
