//! Worked values through the public API.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

use pcircle::erdkober::{
    diff_formula_residual, ek_derivative, ek_integral, integral_recurrence_j, multivar_ek,
    EkParams,
};
use pcircle::genbessel::{
    gamma_ratio_inequality_check, gen_bessel, gen_bessel_integral, gen_bessel_series,
    phi_coefficient, script_j, script_j_order1_large_arg, truncation_bound,
};
use pcircle::hardy::{classical_hardy_sum, hardy_partial_sum, HardySumConfig};
use pcircle::numkernel::{
    beta, central_diff, classical_bessel_j, compensated_sum, gamma, integrate, log_gamma,
    EndpointSingularity,
};
use pcircle::pgeom::{
    area_term, count_lattice_points, enumerate_shells, error_term_direct, from_distorted_polar,
    p_norm, r2_function, to_distorted_polar, DistortedPolar,
};
use pcircle::{DiffSpec, EvalPath, GenBesselParams, PExponent, QuadratureSpec, SeriesControl};

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
}

fn p(q: u32) -> PExponent {
    PExponent::new(q).unwrap()
}

#[test]
fn kernel_values() {
    close(log_gamma(1.0).unwrap(), 0.0, 1e-15);
    close(log_gamma(0.5).unwrap(), 0.572_364_942_924_700_1, 1e-14);
    close(log_gamma(5.0).unwrap(), 24f64.ln(), 1e-14);
    close(beta(1.0, 1.0).unwrap(), 1.0, 1e-15);
    close(beta(0.5, 0.5).unwrap(), PI, 1e-14);
    close(beta(1.5, 0.5).unwrap(), FRAC_PI_2, 1e-14);

    close(classical_bessel_j(0.0, 0.0).unwrap(), 1.0, 0.0);
    close(classical_bessel_j(1.0, 0.0).unwrap(), 0.0, 0.0);
    close(classical_bessel_j(0.0, 2.404_825_557_695_773).unwrap(), 0.0, 1e-10);

    let q = QuadratureSpec::default();
    close(integrate(|_| 1.0, 0.0, 1.0, &q).unwrap().value, 1.0, 1e-14);
    let sing = QuadratureSpec::for_singularity(EndpointSingularity::Left);
    close(integrate(|t| t.powf(-0.5), 0.0, 1.0, &sing).unwrap().value, 2.0, 1e-10);
    close(integrate(|t| (40.0 * PI * t).cos(), 0.0, 1.0, &q).unwrap().value, 0.0, 1e-10);

    let d = DiffSpec::default();
    close(central_diff(|t| t * t, 3.0, &d), 6.0, 1e-9);
    close(central_diff(|_| 7.0, 2.0, &d), 0.0, 1e-12);
    close(central_diff(f64::sin, 0.0, &d), 1.0, 1e-10);

    assert_eq!(compensated_sum([1.0, -1.0, 1e-16]), 1e-16);
    assert_eq!(compensated_sum(std::iter::empty::<f64>()), 0.0);
    close(compensated_sum(std::iter::repeat_n(0.1, 1_000_000)), 1e5, 1e-9);
}

#[test]
fn geometry_values() {
    assert_eq!(p_norm([3.0, 4.0], PExponent::CIRCLE), 5.0);
    assert_eq!(p_norm([1.0, 1.0], PExponent::DIAMOND), 2.0);
    for q in 1..=4 {
        assert_eq!(p_norm([1.0, 0.0], p(q)), 1.0);
        let dp = to_distorted_polar([1.0, 0.0], p(q)).unwrap();
        assert_eq!((dp.r, dp.phi), (1.0, 0.0));
        assert_eq!(from_distorted_polar(DistortedPolar { r: 1.0, phi: 0.0 }, p(q)), [1.0, 0.0]);
    }
    let dp = to_distorted_polar([1.0, 1.0], PExponent::DIAMOND).unwrap();
    close(dp.r, 2.0, 1e-15);
    close(dp.phi, FRAC_PI_4, 1e-15);
    let dp = to_distorted_polar([0.0, -2.0], PExponent::CIRCLE).unwrap();
    close(dp.r, 2.0, 1e-15);
    close(dp.phi, 1.5 * PI, 1e-15);
    let x = from_distorted_polar(DistortedPolar { r: 1.0, phi: FRAC_PI_4 }, PExponent::CIRCLE);
    close(x[0], 0.5f64.sqrt(), 1e-15);
    close(x[1], 0.5f64.sqrt(), 1e-15);
    let x = from_distorted_polar(DistortedPolar { r: 2.0, phi: FRAC_PI_4 }, PExponent::DIAMOND);
    close(x[0], 1.0, 1e-15);
    close(x[1], 1.0, 1e-15);
}

#[test]
fn lattice_values() {
    assert_eq!(count_lattice_points(PExponent::CIRCLE, 1.5).unwrap(), 9);
    assert_eq!(count_lattice_points(PExponent::DIAMOND, 1.5).unwrap(), 5);
    for q in 1..=4 {
        assert_eq!(count_lattice_points(p(q), 0.5).unwrap(), 1);
        let e = error_term_direct(p(q), 0.5).unwrap();
        close(e.value, 1.0 - area_term(p(q), 0.5), 1e-15);
    }
    close(area_term(PExponent::CIRCLE, 1.0), PI, 1e-14);
    close(area_term(PExponent::DIAMOND, 1.0), 2.0, 1e-14);
    close(area_term(PExponent::ASTROID, 1.0), 3.0 * PI / 8.0, 1e-14);
    close(error_term_direct(PExponent::CIRCLE, 1.5).unwrap().value, 9.0 - 2.25 * PI, 1e-13);
    close(error_term_direct(PExponent::DIAMOND, 1.5).unwrap().value, 0.5, 1e-14);
}

#[test]
fn shell_values() {
    let s = enumerate_shells(PExponent::CIRCLE, 1.0);
    assert_eq!(s.len(), 1);
    let mut angles = s[0].angles.clone();
    angles.sort_by(f64::total_cmp);
    for (a, b) in angles.iter().zip([0.0, FRAC_PI_2, PI, 1.5 * PI]) {
        close(*a, b, 1e-15);
    }
    let s: Vec<f64> = enumerate_shells(PExponent::CIRCLE, 3.5).iter().map(|s| s.s).collect();
    assert_eq!(s, vec![1.0, 2.0]);
    let s: Vec<(f64, usize)> = enumerate_shells(PExponent::DIAMOND, 2.0)
        .iter()
        .map(|s| (s.s, s.multiplicity()))
        .collect();
    assert_eq!(s, vec![(1.0, 4), (2.0, 8)]);
    assert_eq!(enumerate_shells(PExponent::DIAMOND, 2.0)[1].bound(PExponent::DIAMOND), 8);
    assert_eq!((r2_function(1), r2_function(3), r2_function(25)), (4, 0, 12));
}

#[test]
fn bessel_values() {
    let ctrl = SeriesControl::default();
    let quad = QuadratureSpec::default();
    for q in 1..=4 {
        let qf = f64::from(q);
        let at_zero = qf * qf / gamma(qf).unwrap();
        let params = GenBesselParams::new(p(q), 0.0).unwrap();
        close(gen_bessel_series(params, [0.0, 0.0], &ctrl).unwrap().value, at_zero, 1e-14);
        close(gen_bessel_integral(params, [0.0, 0.0], &quad).unwrap().value, at_zero, 1e-12);
        let params = GenBesselParams::new(p(q), 1.0).unwrap();
        assert_eq!(gen_bessel_series(params, [0.0, 0.0], &ctrl).unwrap().value, 0.0);
        close(phi_coefficient(PExponent::CIRCLE, 7, 0.3 * qf), 1.0, 1e-13);
    }
    close(phi_coefficient(PExponent::DIAMOND, 0, 1.1), 1.0 / PI, 1e-15);

    for omega in [0.0, 0.5, 1.0, 2.5] {
        let params = GenBesselParams::new(PExponent::CIRCLE, omega).unwrap();
        for r in [0.5, 5.0, 12.0] {
            let v = gen_bessel_series(params, [r, 0.0], &ctrl).unwrap().value;
            close(v, classical_bessel_j(omega, r).unwrap(), 1e-10);
        }
    }
    let params = GenBesselParams::new(PExponent::CIRCLE, 0.0).unwrap();
    close(
        gen_bessel_integral(params, [5.0, 0.0], &quad).unwrap().value,
        classical_bessel_j(0.0, 5.0).unwrap(),
        1e-12,
    );
    let params = GenBesselParams::new(PExponent::DIAMOND, 0.0).unwrap();
    close(
        gen_bessel_integral(params, [3.0, 4.0], &quad).unwrap().value,
        gen_bessel_series(params, [3.0, 4.0], &ctrl).unwrap().value,
        1e-8,
    );

    let path = EvalPath::auto();
    for q in 1..=4 {
        for omega in [0.0, 1.0, 1.5] {
            let params = GenBesselParams::new(p(q), omega).unwrap();
            for (phi, r) in [(0.4, 3.0), (2.0, 7.5)] {
                let x = from_distorted_polar(DistortedPolar { r, phi }, p(q));
                let direct = gen_bessel_series(params, x, &ctrl).unwrap().value;
                close(script_j(params, phi, r, &path, &ctrl, &quad).unwrap(), direct, 1e-10);
            }
            if omega == 1.0 {
                assert_eq!(script_j(params, 0.7, 0.0, &path, &ctrl, &quad).unwrap(), 0.0);
            }
        }
    }
    let params = GenBesselParams::new(PExponent::CIRCLE, 0.7).unwrap();
    close(
        script_j(params, 2.2, 6.0, &path, &ctrl, &quad).unwrap(),
        classical_bessel_j(0.7, 6.0).unwrap(),
        1e-10,
    );

    close(
        script_j_order1_large_arg(PExponent::CIRCLE, 1.0, 5.0, &quad).unwrap(),
        classical_bessel_j(1.0, 5.0).unwrap(),
        1e-12,
    );
    let wide = SeriesControl::default().with_arg_limit(25.0);
    let x = from_distorted_polar(DistortedPolar { r: 20.0, phi: FRAC_PI_4 }, PExponent::DIAMOND);
    let series = gen_bessel_series(GenBesselParams::new(PExponent::DIAMOND, 1.0).unwrap(), x, &wide).unwrap();
    close(script_j_order1_large_arg(PExponent::DIAMOND, FRAC_PI_4, 20.0, &quad).unwrap(), series.value, 1e-6);
    for q in 1..=4 {
        let small = script_j_order1_large_arg(p(q), 0.9, 1e-6, &quad).unwrap();
        assert!(small.abs() < 1e-5);
    }
}

#[test]
fn bound_values() {
    for q in 1..=4 {
        let b = truncation_bound(GenBesselParams::new(p(q), 0.0).unwrap(), [0.0, 0.0], 0);
        assert!(b.is_finite() && b > 0.0);
    }
    assert!(truncation_bound(GenBesselParams::new(PExponent::CIRCLE, 0.0).unwrap(), [1.0, 0.0], 20) < 1e-15);
    assert!(gamma_ratio_inequality_check(1, 0, 0));
    assert!(gamma_ratio_inequality_check(2, 3, 5));
    assert!(gamma_ratio_inequality_check(4, 10, 0));
}

#[test]
fn erdelyi_kober_values() {
    let quad = QuadratureSpec::default();
    for (alpha, eta) in [(0.5, 0.0), (1.5, 2.0), (0.25, -0.5)] {
        let e = EkParams::new(alpha, eta, 2.0 / 3.0).unwrap();
        let want = (log_gamma(eta + 1.0).unwrap() - log_gamma(eta + 1.0 + alpha).unwrap()).exp();
        close(ek_integral(|_| Ok(1.0), e, 2.5, &quad).unwrap(), want, 1e-10);
        let m = multivar_ek(|_| Ok(1.0), 0.7, eta, alpha, [1.0, -2.0], &quad).unwrap();
        close(m, want, 1e-10);
    }
    let avg = multivar_ek(|x| Ok(x[0] * x[1]), 0.0, 0.0, 1.0, [3.0, 2.0], &quad).unwrap();
    close(avg, 6.0, 1e-12);

    let e = EkParams::new(0.5, 0.0, 1.0).unwrap();
    let f = |t: f64| ek_integral(|_| Ok(1.0), e, t, &quad);
    close(ek_derivative(f, e, 2.0, &quad, &DiffSpec::scaled_for(2.0)).unwrap(), 1.0, 1e-5);

    close(
        integral_recurrence_j(PExponent::CIRCLE, 0.0, 1.0, [6.0, 0.0], &quad).unwrap(),
        classical_bessel_j(1.0, 6.0).unwrap(),
        1e-7,
    );
    close(
        integral_recurrence_j(PExponent::CIRCLE, 1.0, 0.5, [5.0, 0.0], &quad).unwrap(),
        classical_bessel_j(1.5, 5.0).unwrap(),
        1e-7,
    );
    let ctrl = SeriesControl::default();
    for q in 1..=4 {
        let x = [2.0, -3.0];
        let want = gen_bessel(GenBesselParams::new(p(q), 1.0).unwrap(), x, &EvalPath::auto(), &ctrl, &quad)
            .unwrap()
            .value;
        close(integral_recurrence_j(p(q), 0.0, 1.0, x, &quad).unwrap(), want, 1e-7);
    }

    let d = diff_formula_residual(PExponent::DIAMOND, 1.0, FRAC_PI_3, 4.0, &DiffSpec::scaled_for(4.0)).unwrap();
    assert!(d <= 1e-6, "{d}");
    for r in [0.1, 0.01] {
        let d = diff_formula_residual(PExponent::ASTROID, 0.0, 0.5, r, &DiffSpec::new(r * 1e-3, 2).unwrap()).unwrap();
        assert!(d <= 1e-8, "r={r}: {d}");
    }
}

#[test]
fn hardy_values() {
    let cfg = HardySumConfig::new(PExponent::CIRCLE, 1.5, 0.5).unwrap();
    assert_eq!(hardy_partial_sum(&cfg).unwrap(), 0.0);
    assert_eq!(classical_hardy_sum(1.5, 0), 0.0);
    let a = classical_hardy_sum(1.5, 5000);
    close(a, 9.0 - 2.25 * PI, 0.05 * (9.0 - 2.25 * PI));
}
