//! Numerical integration on finite intervals.
//!
//! Two rules are provided. Composite Gauss-Legendre handles smooth and
//! oscillatory integrands; the panel count starts from a caller hint (usually
//! proportional to the number of oscillations) and doubles until two
//! successive estimates agree. Double-exponential (tanh-sinh) quadrature
//! handles algebraic endpoint singularities; integrands that blow up at an
//! endpoint should read the distance to that endpoint from [`Abscissa`]
//! instead of recomputing it from `x`, which loses all relative accuracy.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::sum::CompensatedSum;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadMethod {
    CompositeGaussLegendre,
    DoubleExponential,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndpointSingularity {
    None,
    Left,
    Right,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub method: QuadMethod,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_nodes: usize,
    pub endpoint_singularity: EndpointSingularity,
    /// Initial panel count for Gauss-Legendre.
    pub min_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            method: QuadMethod::CompositeGaussLegendre,
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_nodes: 1 << 22,
            endpoint_singularity: EndpointSingularity::None,
            min_panels: 1,
        }
    }
}

impl QuadratureSpec {
    pub fn new(
        method: QuadMethod,
        rel_tol: f64,
        abs_tol: f64,
        max_nodes: usize,
        endpoint_singularity: EndpointSingularity,
    ) -> Result<Self> {
        let spec = Self {
            method,
            rel_tol,
            abs_tol,
            max_nodes,
            endpoint_singularity,
            min_panels: 1,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Default rule for the given endpoint behaviour: tanh-sinh when an
    /// endpoint is singular, composite Gauss-Legendre otherwise.
    pub fn for_singularity(endpoint_singularity: EndpointSingularity) -> Self {
        let method = match endpoint_singularity {
            EndpointSingularity::None => QuadMethod::CompositeGaussLegendre,
            _ => QuadMethod::DoubleExponential,
        };
        Self {
            method,
            endpoint_singularity,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_nodes < 8 {
            return Err(Error::domain("quadrature needs max_nodes >= 8"));
        }
        Ok(())
    }

    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_min_panels(mut self, panels: usize) -> Self {
        self.min_panels = panels.max(1);
        self
    }

    pub fn with_method(mut self, method: QuadMethod) -> Self {
        self.method = method;
        self
    }

    pub fn with_singularity(mut self, endpoint_singularity: EndpointSingularity) -> Self {
        self.endpoint_singularity = endpoint_singularity;
        self
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// A quadrature node together with its exact distances to both endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_a: f64,
    pub to_b: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub error: f64,
    pub nodes: usize,
}

/// `∫_a^b f` for an infallible integrand.
pub fn integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    try_integrate(|x: Abscissa| Ok(f(x.x)), a, b, spec)
}

/// `∫_a^b f` for a fallible integrand that sees the full [`Abscissa`].
pub fn try_integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: FnMut(Abscissa) -> Result<f64>,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::domain(format!("integration interval [{a}, {b}] is not a < b")));
    }
    match spec.method {
        QuadMethod::CompositeGaussLegendre => gauss_legendre(f, a, b, spec),
        QuadMethod::DoubleExponential => tanh_sinh(f, a, b, spec),
    }
}

const GL_ORDER: usize = 20;

/// Nodes and weights of the `GL_ORDER`-point Gauss-Legendre rule on [-1, 1],
/// non-negative half only (the rule is symmetric).
fn gl_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let nf = n as f64;
        let mut out = Vec::with_capacity(n / 2);
        for i in 0..n / 2 {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // three-term recurrence for P_n and its derivative
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = nf * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out.push((x, w));
        }
        out
    })
}

fn gl_composite<F>(f: &mut F, a: f64, b: f64, panels: usize) -> Result<f64>
where
    F: FnMut(Abscissa) -> Result<f64>,
{
    let rule = gl_rule();
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let mut total = CompensatedSum::new();
    for j in 0..panels {
        let lo = a + j as f64 * width;
        let hi = if j + 1 == panels { b } else { lo + width };
        let mid = 0.5 * (lo + hi);
        let mut panel = 0.0;
        for &(t, w) in rule {
            for x in [mid - half * t, mid + half * t] {
                panel += w * f(Abscissa {
                    x,
                    from_a: x - a,
                    to_b: b - x,
                })?;
            }
        }
        total.add(panel * half);
    }
    Ok(total.value())
}

fn gauss_legendre<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: FnMut(Abscissa) -> Result<f64>,
{
    let mut panels = spec.min_panels.max(1);
    let mut coarse = gl_composite(&mut f, a, b, panels)?;
    let mut nodes = panels * GL_ORDER;
    loop {
        panels *= 2;
        let fine = gl_composite(&mut f, a, b, panels)?;
        nodes += panels * GL_ORDER;
        let err = (fine - coarse).abs();
        if err <= spec.tolerance(fine) {
            return Ok(Quadrature {
                value: fine,
                error: err,
                nodes,
            });
        }
        if nodes + 2 * panels * GL_ORDER > spec.max_nodes {
            return Err(Error::NonConvergence {
                what: "Gauss-Legendre quadrature",
                estimate: fine,
                error_estimate: err,
            });
        }
        coarse = fine;
    }
}

/// Largest `t` visited; the complement `1 - tanh(π/2·sinh t)` is ~1e-275 here.
const DE_T_MAX: f64 = 6.0;
const DE_MAX_LEVEL: u32 = 12;
const DE_MIN_LEVEL: u32 = 3;

struct DeNode {
    /// distance from the nearer endpoint, in units of the half width
    complement: f64,
    weight: f64,
}

fn de_node(t: f64) -> DeNode {
    let u = FRAC_PI_2 * t.sinh();
    let e = (-2.0 * u).exp();
    // 1 - tanh(u) = 2e^{-2u}/(1+e^{-2u}); cosh²u = (1+e^{-2u})²/(4e^{-2u})
    let complement = 2.0 * e / (1.0 + e);
    let weight = FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
    DeNode { complement, weight }
}

fn tanh_sinh<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: FnMut(Abscissa) -> Result<f64>,
{
    let half = 0.5 * (b - a);
    let width = b - a;
    let eval_pair = |t: f64, f: &mut F| -> Result<f64> {
        let node = de_node(t);
        if node.weight == 0.0 || node.complement == 0.0 {
            return Ok(0.0);
        }
        let d = half * node.complement;
        let left = Abscissa {
            x: a + d,
            from_a: d,
            to_b: width - d,
        };
        let right = Abscissa {
            x: b - d,
            from_a: width - d,
            to_b: d,
        };
        Ok(node.weight * (f(left)? + f(right)?))
    };

    // level 0: h = 1
    let mut sum = CompensatedSum::new();
    sum.add(FRAC_PI_2 * f(Abscissa {
        x: a + half,
        from_a: half,
        to_b: half,
    })?);
    let mut nodes = 1usize;
    let mut k = 1.0;
    while k <= DE_T_MAX {
        sum.add(eval_pair(k, &mut f)?);
        nodes += 2;
        k += 1.0;
    }
    let mut h = 1.0;
    let mut prev = sum.value() * h * half;
    let mut err = f64::INFINITY;
    for level in 1..=DE_MAX_LEVEL {
        h *= 0.5;
        // new nodes are the odd multiples of h
        let mut j = 1u64;
        loop {
            let t = j as f64 * h;
            if t > DE_T_MAX {
                break;
            }
            sum.add(eval_pair(t, &mut f)?);
            nodes += 2;
            j += 2;
        }
        let cur = sum.value() * h * half;
        err = (cur - prev).abs();
        if level >= DE_MIN_LEVEL && err <= spec.tolerance(cur) {
            return Ok(Quadrature {
                value: cur,
                error: err,
                nodes,
            });
        }
        prev = cur;
        if 2 * nodes > spec.max_nodes {
            break;
        }
    }
    Err(Error::NonConvergence {
        what: "tanh-sinh quadrature",
        estimate: prev,
        error_estimate: err,
    })
}
