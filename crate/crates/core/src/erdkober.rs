//! Erdélyi-Kober fractional integrals and derivatives (lower limit 0) and
//! the order-raising and order-lowering relations they induce on `J_ω^[p]`.
//!
//! All one-variable integrals are taken in the variable `u = τ^p`, where the
//! weight is `u^η (1−u)^{α−1}` and tanh-sinh handles both endpoints.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genbessel::{gen_bessel, EvalPath, GenBesselParams, ScriptJ};
use crate::numkernel::{
    gamma, try_central_diff, try_integrate, Abscissa, DiffSpec, EndpointSingularity, QuadMethod,
    QuadratureSpec, SeriesControl,
};
use crate::pgeom::{p_norm, PExponent};

/// Inner quadratures are held to at least this relative tolerance.
const EK_REL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EkParams {
    pub alpha: f64,
    pub eta: f64,
    /// Scale exponent; any positive real.
    pub p: f64,
}

impl EkParams {
    pub fn new(alpha: f64, eta: f64, p: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
        }
        if !eta.is_finite() {
            return Err(Error::domain("eta must be finite"));
        }
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::domain(format!("p must be positive, got {p}")));
        }
        Ok(Self { alpha, eta, p })
    }

    /// Parameters under which the integral raises `𝒥_ω` by `γ`:
    /// `η = (1 − 1/p)ω + 2/p − 1`, `α = γ`.
    pub fn order_raising(p: PExponent, omega: f64, gamma: f64) -> Result<Self> {
        let pf = p.p();
        Self::new(gamma, (1.0 - 1.0 / pf) * omega + 2.0 / pf - 1.0, pf)
    }
}

fn beta_spec(quad: &QuadratureSpec) -> QuadratureSpec {
    quad.with_method(QuadMethod::DoubleExponential)
        .with_singularity(EndpointSingularity::Both)
        .with_tolerances(quad.rel_tol.min(EK_REL_TOL), quad.abs_tol)
}

/// `(1−u)^{e}` from the distance to 1.
#[inline]
fn right_weight(a: &Abscissa, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        a.to_b.powf(e)
    }
}

/// `1 − τ^p` accurate near `τ = 1`.
#[inline]
fn one_minus_pow(a: &Abscissa, p: f64) -> f64 {
    -(p * (-a.to_b).ln_1p()).exp_m1()
}

/// `(I^α_{0+;p,η} f)(r) = (1/Γ(α)) ∫_0^1 u^η (1−u)^{α−1} f(u^{1/p} r) du`.
pub fn ek_integral<F>(f: F, params: EkParams, r: f64, quad: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::domain(format!("radius must be positive, got {r}")));
    }
    let EkParams { alpha, eta, p } = params;
    let inv_p = 1.0 / p;
    let q = try_integrate(
        |a: Abscissa| {
            let u = a.x;
            // f lives on (0, r]; an underflowed argument stands for its limit at 0+
            let t = (u.powf(inv_p) * r).max(f64::MIN_POSITIVE);
            Ok(u.powf(eta) * right_weight(&a, alpha - 1.0) * f(t)?)
        },
        0.0,
        1.0,
        &beta_spec(quad),
    )?;
    Ok(q.value / gamma(alpha)?)
}

/// `(D^α_{0+;p,η} f)(r) = r^{−pη} (1/(p r^{p−1})) d/dr [r^{p(1+η)} (I^{1−α}_{0+;p,η+α} f)(r)]`
/// for `0 < α < 1`. The outer derivative is a central difference.
pub fn ek_derivative<F>(
    f: F,
    params: EkParams,
    r: f64,
    quad: &QuadratureSpec,
    diff: &DiffSpec,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let EkParams { alpha, eta, p } = params;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("derivative order must lie in (0, 1), got {alpha}")));
    }
    if !(r.is_finite() && r > diff.step) {
        return Err(Error::domain(format!(
            "radius {r} must exceed the difference step {}",
            diff.step
        )));
    }
    let inner = EkParams::new(1.0 - alpha, eta + alpha, p)?;
    let lift = p * (1.0 + eta);
    let g = |t: f64| -> Result<f64> { Ok(t.powf(lift) * ek_integral(&f, inner, t, quad)?) };
    let dg = try_central_diff(g, r, diff)?;
    Ok(r.powf(-p * eta) * dg / (p * r.powf(p - 1.0)))
}

/// `|x|_p^γ/(p^{γ−1}Γ(γ)) ∫_0^1 J_ω^[p](τx) τ^{(p−1)ω+1} (1−τ^p)^{γ−1} dτ`,
/// which equals `J_{ω+γ}^[p](x)`.
pub fn integral_recurrence_j(
    p: PExponent,
    omega: f64,
    gamma_order: f64,
    x: [f64; 2],
    quad: &QuadratureSpec,
) -> Result<f64> {
    check_gamma(gamma_order)?;
    let norm = p_norm(x, p);
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::domain("argument must be finite and non-zero"));
    }
    let params = GenBesselParams::new(p, omega)?;
    let path = EvalPath::auto();
    let ctrl = SeriesControl::default();
    let pf = p.p();
    let tau_exp = (pf - 1.0) * omega + 1.0;
    let q = try_integrate(
        |a: Abscissa| {
            let tau = a.x;
            let j = gen_bessel(params, [tau * x[0], tau * x[1]], &path, &ctrl, quad)?.value;
            Ok(j * tau.powf(tau_exp) * one_minus_pow(&a, pf).powf(gamma_order - 1.0))
        },
        0.0,
        1.0,
        &beta_spec(quad),
    )?;
    Ok(norm.powf(gamma_order) / (pf.powf(gamma_order - 1.0) * gamma(gamma_order)?) * q.value)
}

/// The same relation along a distorted ray: the result equals `𝒥_{ω+γ,φ}(r)`.
pub fn integral_recurrence_script_j(
    p: PExponent,
    omega: f64,
    gamma_order: f64,
    phi: f64,
    r: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    check_gamma(gamma_order)?;
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::domain(format!("radius must be positive, got {r}")));
    }
    let eval = ScriptJ::new(
        GenBesselParams::new(p, omega)?,
        phi,
        EvalPath::auto(),
        SeriesControl::default(),
        *quad,
    )?;
    let pf = p.p();
    let tau_exp = (pf - 1.0) * omega + 1.0;
    let q = try_integrate(
        |a: Abscissa| {
            let tau = a.x;
            Ok(eval.eval(tau * r)? * tau.powf(tau_exp) * one_minus_pow(&a, pf).powf(gamma_order - 1.0))
        },
        0.0,
        1.0,
        &beta_spec(quad),
    )?;
    Ok(r.powf(gamma_order) / (pf.powf(gamma_order - 1.0) * gamma(gamma_order)?) * q.value)
}

fn check_gamma(g: f64) -> Result<()> {
    if g.is_finite() && g > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("order increment must be positive, got {g}")))
    }
}

/// `(1/Γ(α)) ∫_0^1 t^η f(t^κ x) (1−t)^{α−1} dt` for `f` on ℝ².
pub fn multivar_ek<F>(
    f: F,
    kappa: f64,
    eta: f64,
    alpha: f64,
    x: [f64; 2],
    quad: &QuadratureSpec,
) -> Result<f64>
where
    F: Fn([f64; 2]) -> Result<f64>,
{
    if !(kappa.is_finite() && kappa >= 0.0) {
        return Err(Error::domain(format!("kappa must be finite and >= 0, got {kappa}")));
    }
    // validates alpha and eta; the scale slot is unused here
    EkParams::new(alpha, eta, 1.0)?;
    if !(x[0].is_finite() && x[1].is_finite()) || x == [0.0, 0.0] {
        return Err(Error::domain("argument must be finite and non-zero"));
    }
    let q = try_integrate(
        |a: Abscissa| {
            let t = a.x;
            let s = if kappa == 0.0 { 1.0 } else { t.powf(kappa) };
            Ok(t.powf(eta) * right_weight(&a, alpha - 1.0) * f([s * x[0], s * x[1]])?)
        },
        0.0,
        1.0,
        &beta_spec(quad),
    )?;
    Ok(q.value / gamma(alpha)?)
}

/// `|d/dr[r^a 𝒥_{ω+1,φ}(r)] − r^a 𝒥_{ω,φ}(r)|` with `a = 1 + (p−1)ω`.
pub fn diff_formula_residual(
    p: PExponent,
    omega: f64,
    phi: f64,
    r: f64,
    diff: &DiffSpec,
) -> Result<f64> {
    if !(r.is_finite() && r > diff.step) {
        return Err(Error::domain(format!(
            "radius {r} must exceed the difference step {}",
            diff.step
        )));
    }
    let ctrl = SeriesControl::default();
    let quad = QuadratureSpec::default();
    let lower = ScriptJ::new(GenBesselParams::new(p, omega)?, phi, EvalPath::auto(), ctrl, quad)?;
    let upper = ScriptJ::new(GenBesselParams::new(p, omega + 1.0)?, phi, EvalPath::auto(), ctrl, quad)?;
    let a = 1.0 + (p.p() - 1.0) * omega;
    let lhs = try_central_diff(|t| Ok(t.powf(a) * upper.eval(t)?), r, diff)?;
    Ok((lhs - r.powf(a) * lower.eval(r)?).abs())
}
