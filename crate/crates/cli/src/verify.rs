//! Property and oracle checks run by `pcircle verify`.
//!
//! Every row passes when `measured <= tolerance`. Rows hold no timings, so a
//! report depends only on the build and the `--fast` flag.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use pcircle::erdkober::{diff_formula_residual, ek_derivative, ek_integral, EkParams};
use pcircle::genbessel::{
    gamma_ratio_inequality_check, gen_bessel_integral, gen_bessel_series, phi_coefficient,
    truncation_bound, PhiCoefficients, ScriptJ,
};
use pcircle::hardy::{
    classical_hardy_sum, convergence_trace, decay_slope_estimate, hardy_partial_sum,
    tail_schedule, HardySumConfig,
};
use pcircle::numkernel::{classical_bessel_j, try_integrate, Abscissa};
use pcircle::pgeom::{
    count_lattice_points_with_proximity, from_distorted_polar, shell_bound_census, DistortedPolar,
};
use pcircle::{
    DiffSpec, Error, EvalPath, GenBesselParams, PExponent, QuadratureSpec, Result, SeriesControl,
};
use serde_json::json;

use crate::output::{Cell, Report};

#[derive(Clone, Debug, PartialEq)]
pub struct Measure {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Measure {
    fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub outcome: std::result::Result<Measure, String>,
}

impl CheckResult {
    /// NaN never passes.
    pub fn passed(&self) -> bool {
        matches!(&self.outcome, Ok(m) if m.value <= m.tolerance)
    }

    fn status(&self) -> &'static str {
        match &self.outcome {
            Ok(_) if self.passed() => "pass",
            Ok(_) => "fail",
            Err(_) => "error",
        }
    }
}

struct Suite {
    module: &'static str,
    name: &'static str,
    run: fn(bool) -> Result<Vec<Measure>>,
}

const SUITES: &[Suite] = &[
    Suite { module: "numkernel", name: "circle_collapse", run: circle_collapse },
    Suite { module: "genbessel", name: "path_agreement", run: path_agreement },
    Suite { module: "genbessel", name: "angular_coefficients", run: angular_coefficients },
    Suite { module: "genbessel", name: "series_bounds", run: series_bounds },
    Suite { module: "pgeom", name: "lattice_exact", run: lattice_exact },
    Suite { module: "pgeom", name: "shell_bound", run: shell_bound },
    Suite { module: "erdkober", name: "monomials", run: ek_monomials },
    Suite { module: "erdkober", name: "order_raising", run: ek_order_raising },
    Suite { module: "erdkober", name: "differential_formula", run: ek_differential },
    Suite { module: "hardy", name: "circle_identity", run: hardy_circle },
    Suite { module: "hardy", name: "diamond_trace", run: hardy_diamond },
    Suite { module: "hardy", name: "decay_slopes", run: decay_slopes },
];

/// Runs every suite whose `module.name` contains `filter`.
pub fn run(filter: Option<&str>, fast: bool) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for s in SUITES {
        let full = format!("{}.{}", s.module, s.name);
        if filter.is_some_and(|f| !full.contains(f)) {
            continue;
        }
        match (s.run)(fast) {
            Ok(ms) => out.extend(ms.into_iter().map(|m| CheckResult {
                suite: s.module,
                name: m.name.clone(),
                outcome: Ok(m),
            })),
            Err(e) => out.push(CheckResult {
                suite: s.module,
                name: s.name.to_string(),
                outcome: Err(e.to_string()),
            }),
        }
    }
    out
}

pub fn report(results: &[CheckResult], fast: bool) -> Report {
    let rows = results
        .iter()
        .map(|r| {
            let (value, tol, detail) = match &r.outcome {
                Ok(m) => (m.value, m.tolerance, String::new()),
                Err(e) => (f64::NAN, f64::NAN, e.clone()),
            };
            vec![
                Cell::from(r.suite),
                Cell::from(r.name.as_str()),
                Cell::from(r.status()),
                value.into(),
                tol.into(),
                detail.into(),
            ]
        })
        .collect();
    let passed = results.iter().filter(|r| r.passed()).count();
    let checks: Vec<_> = results
        .iter()
        .map(|r| match &r.outcome {
            Ok(m) => json!({
                "suite": r.suite, "check": r.name, "status": r.status(),
                "measured": m.value, "tolerance": m.tolerance,
            }),
            Err(e) => json!({
                "suite": r.suite, "check": r.name, "status": r.status(), "detail": e,
            }),
        })
        .collect();
    Report {
        header: vec!["suite", "check", "status", "measured", "tolerance", "detail"],
        rows,
        json: json!({
            "fast": fast,
            "passed": passed,
            "failed": results.len() - passed,
            "checks": checks,
        }),
    }
}

fn all_p() -> Vec<PExponent> {
    (1..=4).map(|q| PExponent::new(q).expect("q >= 1")).collect()
}

fn real_p() -> [f64; 4] {
    [2.0, 1.0, 2.0 / 3.0, 0.5]
}

fn angles(n: usize) -> Vec<f64> {
    (0..n).map(|j| TAU * (j as f64 + 0.25) / n as f64).collect()
}

fn circle_collapse(fast: bool) -> Result<Vec<Measure>> {
    let n = if fast { 50 } else { 200 };
    let ctrl = SeriesControl::default();
    let mut worst = 0.0f64;
    for omega in [0.0, 1.0] {
        let params = GenBesselParams::new(PExponent::CIRCLE, omega)?;
        for i in 0..n {
            let r = 18.0 * i as f64 / (n - 1) as f64;
            let s = gen_bessel_series(params, [r, 0.0], &ctrl)?.value;
            worst = worst.max((s - classical_bessel_j(omega, r)?).abs());
        }
    }
    Ok(vec![Measure::new("classical_j", worst, 1e-10)])
}

fn path_agreement(fast: bool) -> Result<Vec<Measure>> {
    let n = if fast { 25 } else { 100 };
    let ctrl = SeriesControl::default();
    let quad = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for p in all_p() {
        for omega in [0.0, 1.0] {
            let params = GenBesselParams::new(p, omega)?;
            for i in 0..n {
                let r = 18.0 * (i + 1) as f64 / n as f64;
                let phi = TAU * ((i as f64 * 0.618_033_988_75).fract()) + 0.1;
                let x = from_distorted_polar(DistortedPolar { r, phi }, p);
                let s = gen_bessel_series(params, x, &ctrl)?.value;
                let v = gen_bessel_integral(params, x, &quad)?.value;
                worst = worst.max((s - v).abs() / s.abs().max(1.0));
            }
        }
    }
    Ok(vec![Measure::new("series_vs_integral", worst, 1e-8)])
}

/// `(k! 4^k/π) Σ_{m1+m2=k} Γ(q(m1+½))Γ(q(m2+½))/((2m1)!(2m2)!) |cos^{m1} sin^{m2}|^{2q}`.
fn phi_direct(q: u32, k: usize, phi: f64) -> f64 {
    let qf = f64::from(q);
    let (s, c) = phi.sin_cos();
    let cw = c.abs().powi(2 * q as i32);
    let sw = s.abs().powi(2 * q as i32);
    let mut t = 0.0;
    for m1 in 0..=k {
        let m2 = k - m1;
        let (a, b) = (m1 as f64, m2 as f64);
        let ln = lgamma(qf * (a + 0.5)) + lgamma(qf * (b + 0.5))
            - lgamma(2.0 * a + 1.0)
            - lgamma(2.0 * b + 1.0);
        t += ln.exp() * cw.powi(m1 as i32) * sw.powi(m2 as i32);
    }
    let kf = k as f64;
    t * (lgamma(kf + 1.0) + kf * 4f64.ln()).exp() / PI
}

fn lgamma(x: f64) -> f64 {
    pcircle::numkernel::log_gamma(x).expect("positive argument")
}

fn angular_coefficients(fast: bool) -> Result<Vec<Measure>> {
    let n = if fast { 16 } else { 64 };
    let mut invariance = 0.0f64;
    for phi in angles(n) {
        let table = PhiCoefficients::new(PExponent::CIRCLE, phi, 30);
        for k in 0..=30 {
            invariance = invariance
                .max((phi_coefficient(PExponent::CIRCLE, k, phi) - 1.0).abs())
                .max((table.value(k) - 1.0).abs());
        }
    }
    let mut forms = 0.0f64;
    for q in 2..=4 {
        let p = PExponent::new(q)?;
        for phi in angles(n) {
            let table = PhiCoefficients::new(p, phi, 20);
            for k in 0..=20 {
                let d = phi_direct(q, k, phi);
                forms = forms
                    .max((phi_coefficient(p, k, phi) - d).abs() / d)
                    .max((table.value(k) - d).abs() / d);
            }
        }
    }
    Ok(vec![
        Measure::new("circle_invariance", invariance, 1e-12),
        Measure::new("direct_form", forms, 1e-11),
    ])
}

fn series_bounds(fast: bool) -> Result<Vec<Measure>> {
    let mut violations = 0u32;
    for k in 1..=12 {
        for n in 0..=15 {
            for m in 0..=15 {
                if !gamma_ratio_inequality_check(k, n, m) {
                    violations += 1;
                }
            }
        }
    }
    let orders: &[f64] = if fast { &[0.0, 1.0] } else { &[0.0, 0.5, 1.0, 2.5] };
    let wide = SeriesControl::default().with_arg_limit(40.0);
    let mut ratio = 0.0f64;
    for p in all_p() {
        for &omega in orders {
            let params = GenBesselParams::new(p, omega)?;
            for x in [[1.0, 0.5], [4.0, 3.0], [9.0, 0.0], [2.0, 11.0]] {
                let full = gen_bessel_series(params, x, &wide)?.value;
                for k in [1usize, 3, 6, 10, 20] {
                    let ctrl = SeriesControl {
                        max_terms: k,
                        tail_tol: 1e-300,
                        ..wide
                    };
                    let part = match gen_bessel_series(params, x, &ctrl) {
                        Err(Error::NonConvergence { estimate, .. }) => estimate,
                        Ok(v) => v.value,
                        Err(e) => return Err(e),
                    };
                    let tail = (part - full).abs();
                    // below this the measured tail is rounding noise
                    if tail > 1e-14 {
                        ratio = ratio.max(tail / truncation_bound(params, x, k));
                    }
                }
            }
        }
    }
    Ok(vec![
        Measure::new("gamma_inequality_violations", f64::from(violations), 0.0),
        Measure::new("tail_over_bound", ratio, 1.0),
    ])
}

fn brute_count(p: PExponent, r: f64) -> u64 {
    let m = r.ceil() as i64;
    let rp = p.pow_p(r);
    let mut c = 0;
    for a in -m..=m {
        for b in -m..=m {
            if p.pow_p(a.unsigned_abs() as f64) + p.pow_p(b.unsigned_abs() as f64) < rp {
                c += 1;
            }
        }
    }
    c
}

fn lattice_exact(fast: bool) -> Result<Vec<Measure>> {
    let n = if fast { 15 } else { 50 };
    let mut mismatches = 0u32;
    for p in all_p() {
        for i in 1..=n {
            let r = 0.513 + 0.977 * (i - 1) as f64 * 50.0 / n as f64;
            let r = r.min(49.9);
            let c = count_lattice_points_with_proximity(p, r)?;
            if c.near_boundary || c.count != brute_count(p, r) {
                mismatches += 1;
            }
        }
    }
    Ok(vec![Measure::new("count_mismatches", f64::from(mismatches), 0.0)])
}

fn shell_bound(fast: bool) -> Result<Vec<Measure>> {
    let s_max = if fast { 200.0 } else { 1000.0 };
    let violations: usize = all_p()
        .into_iter()
        .map(|p| shell_bound_census(p, s_max).violations.len())
        .sum();
    Ok(vec![Measure::new("cardinality_violations", violations as f64, 0.0)])
}

fn ek_monomials(fast: bool) -> Result<Vec<Measure>> {
    let quad = QuadratureSpec::default();
    let radii: &[f64] = if fast { &[1.0] } else { &[0.5, 1.0, 2.0] };
    let mut eigen = 0.0f64;
    for lambda in [0.0, 1.0, 2.0, 3.5] {
        for alpha in [0.25, 0.5, 1.0, 1.5] {
            for eta in [-0.5, 0.0, 1.0] {
                for p in real_p() {
                    let e = EkParams::new(alpha, eta, p)?;
                    let s = eta + lambda / p + 1.0;
                    for &r in radii {
                        let want = (lgamma(s) - lgamma(s + alpha)).exp() * r.powf(lambda);
                        let got = ek_integral(|t| Ok(t.powf(lambda)), e, r, &quad)?;
                        eigen = eigen.max((got - want).abs() / want);
                    }
                }
            }
        }
    }
    let lambdas: &[f64] = if fast { &[0.0, 2.0] } else { &[0.0, 1.0, 2.0, 3.5] };
    let mut comp = 0.0f64;
    let r = 1.3;
    for &lambda in lambdas {
        for alpha in [0.25, 0.5, 0.75] {
            for eta in [-0.5, 0.0, 1.0] {
                for p in real_p() {
                    let e = EkParams::new(alpha, eta, p)?;
                    let f = |t: f64| ek_integral(|s| Ok(s.powf(lambda)), e, t, &quad);
                    let got = ek_derivative(f, e, r, &quad, &DiffSpec::scaled_for(r))?;
                    let want = r.powf(lambda);
                    comp = comp.max((got - want).abs() / want);
                }
            }
        }
    }
    Ok(vec![
        Measure::new("monomial_eigenvalue", eigen, 1e-8),
        Measure::new("derivative_of_integral", comp, 1e-5),
    ])
}

fn ek_order_raising(fast: bool) -> Result<Vec<Measure>> {
    let quad = QuadratureSpec::default();
    let ctrl = SeriesControl::default();
    let phis = angles(if fast { 2 } else { 8 });
    let mut worst = 0.0f64;
    for q in 1..=3 {
        let p = PExponent::new(q)?;
        for omega in [0.0, 0.5, 1.0] {
            for g in [0.5, 1.0] {
                let e = EkParams::order_raising(p, omega, g)?;
                for &phi in &phis {
                    let lower = ScriptJ::new(GenBesselParams::new(p, omega)?, phi, EvalPath::auto(), ctrl, quad)?;
                    let upper = ScriptJ::new(GenBesselParams::new(p, omega + g)?, phi, EvalPath::auto(), ctrl, quad)?;
                    for r in [0.5, 2.0, 8.0] {
                        let got = ek_integral(|t| lower.eval(t), e, r, &quad)?;
                        let want = (p.p() / r).powf(g) * upper.eval(r)?;
                        worst = worst.max((got - want).abs());
                    }
                }
            }
        }
    }
    Ok(vec![Measure::new("integral_raises_order", worst, 1e-6)])
}

fn ek_differential(fast: bool) -> Result<Vec<Measure>> {
    let quad = QuadratureSpec::default();
    let ctrl = SeriesControl::default();
    let phis = angles(if fast { 4 } else { 16 });
    let mut residual = 0.0f64;
    for p in all_p() {
        for omega in [0.0, 1.0, 2.0] {
            for &phi in &phis {
                for r in [0.5, 2.0, 8.0] {
                    residual = residual.max(diff_formula_residual(p, omega, phi, r, &DiffSpec::scaled_for(r))?);
                }
            }
        }
    }
    let mut integrated = 0.0f64;
    for p in all_p() {
        for &phi in phis.iter().take(8) {
            let j0 = ScriptJ::new(GenBesselParams::new(p, 0.0)?, phi, EvalPath::auto(), ctrl, quad)?;
            let j1 = ScriptJ::new(GenBesselParams::new(p, 1.0)?, phi, EvalPath::auto(), ctrl, quad)?;
            for r in [0.5, 2.0, 8.0] {
                let lhs = try_integrate(|a: Abscissa| Ok(a.x * j0.eval(a.x)?), 0.0, r, &quad)?.value;
                integrated = integrated.max((lhs - r * j1.eval(r)?).abs());
            }
        }
    }
    Ok(vec![
        Measure::new("order_lowering_residual", residual, 1e-6),
        Measure::new("integrated_form", integrated, 1e-7),
    ])
}

fn hardy_circle(fast: bool) -> Result<Vec<Measure>> {
    let r = 1.5;
    let cfg = HardySumConfig::new(PExponent::CIRCLE, r, 5000.0)?;
    let trace = convergence_trace(&cfg, &tail_schedule(5000.0, 8), 8)?;
    let direct = trace.checkpoints[0].direct_error_term;
    let rel = (trace.tail_average - direct).abs() / direct.abs();
    let truncations: &[u64] = if fast { &[10, 100] } else { &[10, 100, 1000] };
    let mut agree = 0.0f64;
    for r in [0.8, 1.5, 2.3] {
        for &t in truncations {
            let a = classical_hardy_sum(r, t);
            let b = hardy_partial_sum(&HardySumConfig::new(PExponent::CIRCLE, r, t as f64)?)?;
            agree = agree.max((a - b).abs() / (1.0 + a.abs()));
        }
    }
    Ok(vec![
        Measure::new("tail_average_relative_error", rel, 0.05),
        Measure::new("classical_agreement", agree, 1e-9),
    ])
}

fn hardy_diamond(fast: bool) -> Result<Vec<Measure>> {
    let r = 0.75;
    let marks: &[f64] = if fast { &[25.0, 50.0, 100.0] } else { &[50.0, 100.0, 200.0, 400.0] };
    let last = *marks.last().expect("non-empty");
    let mut schedule: Vec<f64> = marks[..marks.len() - 1].to_vec();
    schedule.extend(tail_schedule(last, 8));
    schedule.dedup();
    let cfg = HardySumConfig::new(PExponent::DIAMOND, r, last)?;
    let trace = convergence_trace(&cfg, &schedule, 8)?;
    let env: Vec<f64> = marks
        .iter()
        .map(|m| {
            trace
                .checkpoints
                .iter()
                .find(|c| c.s_max == *m)
                .map_or(f64::NAN, |c| c.envelope)
        })
        .collect();
    let growth = env.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let direct = trace.checkpoints[0].direct_error_term;
    Ok(vec![
        Measure::new("envelope_growth", if env.iter().any(|v| v.is_nan()) { f64::NAN } else { growth }, 0.0),
        Measure::new("tail_residual", trace.tail_residual().abs(), 0.3f64.max(0.25 * direct.abs())),
    ])
}

fn decay_slopes(fast: bool) -> Result<Vec<Measure>> {
    let points = if fast { 2001 } else { 7001 };
    let grid: Vec<f64> = (0..points).map(|i| 50.0 + 350.0 * i as f64 / (points - 1) as f64).collect();
    let quad = QuadratureSpec::default();
    let mut out = Vec::new();
    for (q, target) in [(1, -0.5), (2, -0.5), (3, -1.0 / 3.0)] {
        let fit = decay_slope_estimate(PExponent::new(q)?, FRAC_PI_4, &grid, &quad)?;
        out.push(Measure::new(format!("slope_deviation_q{q}"), (fit.slope - target).abs(), 0.15));
    }
    Ok(out)
}
