//! Integral representations of `J_ω^[p]`.
//!
//! Order 0 is the beta-weighted integral over `t ∈ (0, 1)`. Substituting
//! `t = sin²θ` turns the weight `t^{q/2−1}(1−t)^{q/2−1} dt` into
//! `2(sinθ cosθ)^{q−1} dθ`, which is smooth for integer `q`, so composite
//! Gauss-Legendre applies with the panel count tied to the oscillation count.
//!
//! Order 1 swaps the τ integral of the order-raising recurrence with the θ
//! integral and does the τ integral in closed form:
//! `∫_0^1 τ cos(τa) cos(τb) dτ = ½[h(a+b) + h(a−b)]` with
//! `h(c) = sin c/c + (cos c − 1)/c²`. Other orders nest a tanh-sinh τ integral
//! around the order-0 integral.

use std::f64::consts::FRAC_PI_2;

use super::GenBesselParams;
use crate::error::{Error, Result};
use crate::numkernel::{
    try_integrate, Abscissa, EndpointSingularity, QuadMethod, Quadrature, QuadratureSpec,
};
use crate::pgeom::{from_distorted_polar, p_norm, DistortedPolar, PExponent};

/// `2q²/Γ(q/2)²`, the θ-form normalisation of the order-0 integral.
fn theta_constant(q: u32) -> f64 {
    let qf = f64::from(q);
    2.0 * qf * qf * (-2.0 * libm::lgamma(0.5 * qf)).exp()
}

/// Panels so that each one carries roughly one oscillation.
fn panel_hint(x: [f64; 2]) -> usize {
    ((x[0].abs() + x[1].abs()) / 8.0).ceil() as usize + 2
}

fn gl_spec(quad: &QuadratureSpec, x: [f64; 2]) -> QuadratureSpec {
    quad.with_method(QuadMethod::CompositeGaussLegendre)
        .with_singularity(EndpointSingularity::None)
        .with_min_panels(quad.min_panels.max(panel_hint(x)))
}

#[inline]
fn theta_parts(theta: f64, q: u32) -> (f64, f64, f64) {
    let (s, c) = theta.sin_cos();
    let qi = q as i32;
    let w = if q == 1 { 1.0 } else { (s * c).powi(qi - 1) };
    (s.powi(qi), c.powi(qi), w)
}

/// `J_0^[p](x)`.
pub(crate) fn j0_integral(p: PExponent, x: [f64; 2], quad: &QuadratureSpec) -> Result<Quadrature> {
    let q = p.q();
    let spec = gl_spec(quad, x);
    let (x1, x2) = (x[0], x[1]);
    let mut r = try_integrate(
        |a: Abscissa| {
            let (sq, cq, w) = theta_parts(a.x, q);
            Ok((x1 * sq).cos() * (x2 * cq).cos() * w)
        },
        0.0,
        FRAC_PI_2,
        &spec,
    )?;
    let k = theta_constant(q);
    r.value *= k;
    r.error *= k;
    Ok(r)
}

/// `∫_0^1 τ cos(τc) dτ`.
#[inline]
pub(crate) fn tau_cos_moment(c: f64) -> f64 {
    if c.abs() < 0.5 {
        // Σ (−1)^n c^{2n} / ((2n)! (2n+2))
        let c2 = c * c;
        let mut term = 1.0;
        let mut sum = 0.5;
        for n in 1..12 {
            let nf = f64::from(n);
            term *= -c2 / ((2.0 * nf - 1.0) * 2.0 * nf);
            sum += term / (2.0 * nf + 2.0);
        }
        sum
    } else {
        let (s, co) = c.sin_cos();
        s / c + (co - 1.0) / (c * c)
    }
}

/// `J_1^[p](x)` through the single θ integral.
pub(crate) fn j1_integral(p: PExponent, x: [f64; 2], quad: &QuadratureSpec) -> Result<Quadrature> {
    let norm = p_norm(x, p);
    if norm == 0.0 {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            nodes: 0,
        });
    }
    let q = p.q();
    let spec = gl_spec(quad, x);
    let (x1, x2) = (x[0], x[1]);
    let mut r = try_integrate(
        |t: Abscissa| {
            let (sq, cq, w) = theta_parts(t.x, q);
            let (a, b) = (x1 * sq, x2 * cq);
            Ok(0.5 * (tau_cos_moment(a + b) + tau_cos_moment(a - b)) * w)
        },
        0.0,
        FRAC_PI_2,
        &spec,
    )?;
    let k = theta_constant(q) * norm;
    r.value *= k;
    r.error *= k;
    Ok(r)
}

/// `|x|_p^ω/(p^{ω−1}Γ(ω)) ∫_0^1 J_0(τx) τ (1−τ^p)^{ω−1} dτ` for general `ω > 0`.
///
/// For `ω < 1` the weight is singular at `τ = 1`, badly so as `ω → 0`. There
/// the value at `τ = 1` is subtracted and its weighted integral added back in
/// closed form, `∫_0^1 (1−τ^p)^{ω−1} dτ = B(1/p, ω)/p`.
fn nested_integral(p: PExponent, omega: f64, x: [f64; 2], quad: &QuadratureSpec) -> Result<Quadrature> {
    let norm = p_norm(x, p);
    if norm == 0.0 {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            nodes: 0,
        });
    }
    let pf = p.p();
    let outer = quad
        .with_method(QuadMethod::DoubleExponential)
        .with_singularity(EndpointSingularity::Both);
    let (anchor, mut inner_nodes) = if omega < 1.0 {
        let at_one = j0_integral(p, x, quad)?;
        (at_one.value, at_one.nodes)
    } else {
        (0.0, 0)
    };
    let mut r = try_integrate(
        |t: Abscissa| {
            let tau = t.x;
            let inner = j0_integral(p, [tau * x[0], tau * x[1]], quad)?;
            inner_nodes += inner.nodes;
            // 1 − τ^p from the distance to 1, to keep it accurate near τ = 1
            let one_minus = -(pf * (-t.to_b).ln_1p()).exp_m1();
            let weight = if omega == 1.0 { 1.0 } else { one_minus.powf(omega - 1.0) };
            Ok((inner.value * tau - anchor) * weight)
        },
        0.0,
        1.0,
        &outer,
    )?;
    let k = norm.powf(omega) / (pf.powf(omega - 1.0) * libm::tgamma(omega));
    r.value *= k;
    r.error *= k;
    if anchor != 0.0 {
        // k · B(1/p, ω)/p with Γ(ω) cancelled
        let inv_p = 1.0 / pf;
        let ln = omega * (norm / pf).ln() + libm::lgamma(inv_p) - libm::lgamma(inv_p + omega);
        r.value += anchor * ln.exp();
    }
    r.nodes += inner_nodes;
    Ok(r)
}

/// `J_ω^[p](x)` by quadrature. Valid at every argument; the cost grows
/// linearly with `|x1| + |x2|`.
pub fn gen_bessel_integral(
    params: GenBesselParams,
    x: [f64; 2],
    quad: &QuadratureSpec,
) -> Result<Quadrature> {
    if !(x[0].is_finite() && x[1].is_finite()) {
        return Err(Error::domain("argument must be finite"));
    }
    quad.validate()?;
    let omega = params.omega;
    if omega == 0.0 {
        j0_integral(params.p, x, quad)
    } else if omega == 1.0 {
        j1_integral(params.p, x, quad)
    } else {
        nested_integral(params.p, omega, x, quad)
    }
}

/// `𝒥_{1,φ}(r)` from order-0 integrands only, for arguments past the series
/// window.
pub fn script_j_order1_large_arg(
    p: PExponent,
    phi: f64,
    r: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::domain(format!("radius must be finite and >= 0, got {r}")));
    }
    let x = from_distorted_polar(DistortedPolar { r, phi }, p);
    j1_integral(p, x, quad).map(|q| q.value)
}
