use boxwell::dist_calc::{assembled_force_matrix_element, potential_term, DistExpr, Site, SmoothFn, Trig, TrigTerm};
use boxwell::oracles::{numerical_time_derivative, Richardson};
use boxwell::spectral::{
    double_sum, ehrenfest_residual, force_expectation, force_matrix_element, momentum_expectation, momentum_rate,
    position_expectation, Kernel, Selection,
};
use boxwell::{WavePacket, WellConfig};
use num_complex::Complex64;
use proptest::prelude::*;

fn trig_term() -> impl Strategy<Value = TrigTerm> {
    (prop_oneof![Just(Trig::Sin), Just(Trig::Cos)], -3.0..3.0f64, 0i64..8, -4i64..4)
        .prop_map(|(f, c, m, q)| TrigTerm::new(f, c, m, q))
}

fn smooth() -> impl Strategy<Value = SmoothFn> {
    prop::collection::vec(trig_term(), 1..5).prop_map(SmoothFn::from_terms)
}

fn windowed_expr(length: f64) -> impl Strategy<Value = DistExpr> {
    smooth().prop_map(move |f| DistExpr::windowed(length, f))
}

fn mixed_expr(length: f64) -> impl Strategy<Value = DistExpr> {
    (smooth(), smooth(), smooth()).prop_map(move |(w, l, r)| {
        DistExpr::windowed(length, w)
            .add(&DistExpr::delta(length, Site::Left, l))
            .unwrap()
            .add(&DistExpr::delta(length, Site::Right, r))
            .unwrap()
    })
}

fn packet(max_modes: usize) -> impl Strategy<Value = WavePacket> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=max_modes)
        .prop_filter("non-degenerate", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(|v| WavePacket::normalized(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap())
}

fn real_packet(max_modes: usize) -> impl Strategy<Value = WavePacket> {
    prop::collection::vec(-1.0..1.0f64, 1..=max_modes)
        .prop_filter("non-degenerate", |v| v.iter().map(|a| a * a).sum::<f64>() > 1e-3)
        .prop_map(|v| WavePacket::normalized(v.into_iter().map(|a| Complex64::new(a, 0.0)).collect()).unwrap())
}

fn config() -> impl Strategy<Value = WellConfig> {
    (0.5..3.0f64, 0.3..3.0f64, 0.5..2.0f64).prop_map(|(l, m, h)| WellConfig::new(l, m, h).unwrap())
}

fn assert_same_distribution(a: &DistExpr, b: &DistExpr, tol: f64) {
    let l = a.length();
    for i in 0..=16 {
        let x = l * i as f64 / 16.0;
        let (va, vb) = (a.windowed_value(x).unwrap(), b.windowed_value(x).unwrap());
        assert!((va - vb).abs() <= tol * (1.0 + va.abs()), "windowed at x={x}: {va} vs {vb}");
    }
    for site in [Site::Left, Site::Right] {
        let (ca, cb) = (a.delta_coefficient(site).unwrap(), b.delta_coefficient(site).unwrap());
        assert!((ca - cb).abs() <= tol * (1.0 + ca.abs()), "{site}: {ca} vs {cb}");
    }
}

proptest! {
    #[test]
    fn differentiation_is_linear(e1 in windowed_expr(1.3), e2 in windowed_expr(1.3), a in -2.0..2.0f64, b in -2.0..2.0f64) {
        let lhs = e1.scale(a).add(&e2.scale(b)).unwrap().differentiate().unwrap();
        let rhs = e1.differentiate().unwrap().scale(a).add(&e2.differentiate().unwrap().scale(b)).unwrap().sift().unwrap();
        assert_same_distribution(&lhs, &rhs, 1e-12);
    }

    #[test]
    fn sifting_is_idempotent(e in mixed_expr(0.9)) {
        let once = e.sift().unwrap();
        prop_assert!(once.is_sifted());
        prop_assert_eq!(once.sift().unwrap(), once);
    }

    #[test]
    fn unit_window_is_absorbed(e in mixed_expr(2.1)) {
        let canon = e.sift().unwrap();
        let window = DistExpr::windowed(2.1, SmoothFn::constant(1.0));
        prop_assert_eq!(canon.multiply_expr(&window).unwrap(), canon.clone());
        prop_assert_eq!(window.multiply_expr(&canon).unwrap(), canon);
    }

    #[test]
    fn second_derivative_window_matches_pointwise(f in smooth()) {
        let l = 1.7;
        let e = DistExpr::windowed(l, f.clone());
        let d2 = e.differentiate();
        // δ′ only appears when f does not vanish at a wall
        let vanishes = f.numerator_at_wall(Site::Left) == 0.0 && f.numerator_at_wall(Site::Right) == 0.0;
        prop_assert_eq!(d2.is_ok(), true);
        let d2 = d2.unwrap().differentiate();
        prop_assert_eq!(d2.is_ok(), vanishes);
        if let Ok(d2) = d2 {
            let h = 1e-4;
            let x = 0.61;
            let fd = (f.numerator_value(x + h, l) - 2.0 * f.numerator_value(x, l) + f.numerator_value(x - h, l)) / (h * h);
            prop_assert!((d2.windowed_value(x).unwrap() - fd).abs() < 1e-4 * (1.0 + fd.abs()));
        }
    }

    #[test]
    fn potential_term_scales_with_config(cfg in config(), n in 1usize..30) {
        let e = potential_term(n, &cfg).unwrap();
        prop_assert!(e.windowed_part().terms.is_empty());
        let amp = (2.0 / cfg.length()).sqrt() * cfg.hbar2_over_2m() * cfg.wavenumber(n);
        let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((e.delta_coefficient(Site::Left).unwrap() - amp).abs() <= 1e-12 * amp);
        prop_assert!((e.delta_coefficient(Site::Right).unwrap() + parity * amp).abs() <= 1e-12 * amp);
    }

    #[test]
    fn bridge_holds_for_any_units(cfg in config(), n in 1usize..12, j in 1usize..12) {
        let closed = force_matrix_element(n, j, &cfg).unwrap();
        let assembled = assembled_force_matrix_element(n, j, &cfg).unwrap();
        prop_assert!((closed - assembled).abs() <= 1e-12 * closed.abs());
    }

    #[test]
    fn double_sums_are_hermitian(p in packet(15), cfg in config(), t in -5.0..5.0f64) {
        for kernel in [Kernel::Force, Kernel::MomentumRate, Kernel::Momentum, Kernel::Position] {
            let s = double_sum(&p, t, &cfg, kernel, Selection::All);
            prop_assert!(s.im.abs() < 1e-12 * s.norm().max(1.0), "{:?}: {}", kernel, s);
        }
    }

    #[test]
    fn rate_is_minus_force(p in packet(15), cfg in config(), t in -5.0..5.0f64) {
        prop_assert!((momentum_rate(&p, t, &cfg) + force_expectation(&p, t, &cfg)).abs() < 1e-13 * (1.0 + force_expectation(&p, t, &cfg).abs()));
    }

    #[test]
    fn only_odd_parity_pairs_contribute(p in packet(12), cfg in config(), t in 0.0..3.0f64) {
        for kernel in [Kernel::Force, Kernel::Momentum] {
            let all = double_sum(&p, t, &cfg, kernel, Selection::All);
            let odd = double_sum(&p, t, &cfg, kernel, Selection::OddSumOnly);
            prop_assert!((all - odd).norm() <= 1e-12 * all.norm().max(1.0));
        }
    }

    #[test]
    fn paired_sums_match_full_sums(p in packet(12), cfg in config(), t in 0.0..3.0f64) {
        let f = double_sum(&p, t, &cfg, Kernel::Force, Selection::All).re;
        let m = double_sum(&p, t, &cfg, Kernel::Momentum, Selection::All).re;
        let x = double_sum(&p, t, &cfg, Kernel::Position, Selection::All).re;
        prop_assert!((f - force_expectation(&p, t, &cfg)).abs() <= 1e-11 * f.abs().max(1.0));
        prop_assert!((m - momentum_expectation(&p, t, &cfg)).abs() <= 1e-11 * m.abs().max(1.0));
        prop_assert!((x - position_expectation(&p, t, &cfg)).abs() <= 1e-12 * x.abs().max(1.0));
    }

    #[test]
    fn time_reversal_for_real_packets(p in real_packet(10), t in 0.0..4.0f64) {
        let cfg = WellConfig::default();
        let (pp, pm) = (momentum_expectation(&p, t, &cfg), momentum_expectation(&p, -t, &cfg));
        let (fp, fm) = (force_expectation(&p, t, &cfg), force_expectation(&p, -t, &cfg));
        prop_assert!((pp + pm).abs() < 1e-12 * pp.abs().max(1.0));
        prop_assert!((fp - fm).abs() < 1e-12 * fp.abs().max(1.0));
    }

    #[test]
    fn zero_padding_changes_nothing(p in packet(8), extra in 1usize..6, t in 0.0..2.0f64) {
        let cfg = WellConfig::default();
        let q = p.extended(extra);
        prop_assert_eq!(momentum_expectation(&p, t, &cfg), momentum_expectation(&q, t, &cfg));
        prop_assert_eq!(force_expectation(&p, t, &cfg), force_expectation(&q, t, &cfg));
        prop_assert_eq!(position_expectation(&p, t, &cfg), position_expectation(&q, t, &cfg));
        prop_assert_eq!(p.digest(), q.digest());
    }

    #[test]
    fn ehrenfest_residual_vanishes(p in packet(10), t in -10.0..10.0f64) {
        prop_assert!(ehrenfest_residual(&p, t, &WellConfig::default()).abs() < 1e-9);
    }

    #[test]
    fn position_rate_is_momentum_over_mass(p in packet(5), cfg in config(), t in 0.0..2.0f64) {
        let w_max = boxwell::spectral::angular_frequency(p.len(), &cfg).unwrap();
        let h = 1e-2 / w_max;
        let d = numerical_time_derivative(|s| position_expectation(&p, s, &cfg), t, h, Richardson::On).unwrap();
        let want = momentum_expectation(&p, t, &cfg) / cfg.mass();
        prop_assert!((d - want).abs() < 1e-6 * want.abs().max(1.0), "{} vs {}", d, want);
    }
}
