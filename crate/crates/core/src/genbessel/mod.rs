//! Generalized Bessel functions `J_ω^[p]` on ℝ² and their one-variable
//! restrictions `𝒥_{ω,φ}(r) = J_ω^[p](x(r, φ))` along a distorted ray.

mod integral;
mod series;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{QuadratureSpec, SeriesControl, SERIES_ARG_LIMIT};
use crate::pgeom::{from_distorted_polar, p_norm, DistortedPolar, PExponent};

pub use integral::{gen_bessel_integral, script_j_order1_large_arg};
pub use series::{
    gamma_ratio_inequality_check, gen_bessel_series, phi_coefficient, truncation_bound,
    PhiCoefficients, SeriesValue,
};

pub(crate) use integral::j1_integral;
pub(crate) use series::rows_needed;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenBesselParams {
    pub p: PExponent,
    pub omega: f64,
}

impl GenBesselParams {
    pub fn new(p: PExponent, omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::domain(format!("order must be finite and >= 0, got {omega}")));
        }
        Ok(Self { p, omega })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathMode {
    Series,
    Integral,
    Auto,
}

impl fmt::Display for PathMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathMode::Series => "series",
            PathMode::Integral => "integral",
            PathMode::Auto => "auto",
        })
    }
}

/// Which representation to evaluate; `Auto` uses the series up to
/// `series_arg_limit` (in p-norm) and quadrature beyond.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalPath {
    pub mode: PathMode,
    pub series_arg_limit: f64,
}

impl EvalPath {
    pub fn new(mode: PathMode, series_arg_limit: f64) -> Result<Self> {
        if !(series_arg_limit > 0.0) {
            return Err(Error::domain("series_arg_limit must be positive"));
        }
        Ok(Self {
            mode,
            series_arg_limit,
        })
    }

    pub fn auto() -> Self {
        Self {
            mode: PathMode::Auto,
            series_arg_limit: SERIES_ARG_LIMIT,
        }
    }

    pub(crate) fn use_series(&self, argument: f64) -> bool {
        match self.mode {
            PathMode::Series => true,
            PathMode::Integral => false,
            PathMode::Auto => argument <= self.series_arg_limit,
        }
    }
}

impl Default for EvalPath {
    fn default() -> Self {
        Self::auto()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathUsed {
    Series,
    Integral,
}

impl fmt::Display for PathUsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathUsed::Series => "series",
            PathUsed::Integral => "integral",
        })
    }
}

/// A value together with how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: f64,
    pub path: PathUsed,
    /// Certified tail bound for the series, quadrature error estimate otherwise.
    pub error_estimate: f64,
    /// Diagonals summed, or integrand evaluations.
    pub work: usize,
}

/// `J_ω^[p](x)` on the path selected by `path`.
pub fn gen_bessel(
    params: GenBesselParams,
    x: [f64; 2],
    path: &EvalPath,
    ctrl: &SeriesControl,
    quad: &QuadratureSpec,
) -> Result<Evaluation> {
    if path.use_series(p_norm(x, params.p)) {
        let s = gen_bessel_series(params, x, ctrl)?;
        Ok(Evaluation {
            value: s.value,
            path: PathUsed::Series,
            error_estimate: s.tail_bound,
            work: s.terms_used,
        })
    } else {
        let q = gen_bessel_integral(params, x, quad)?;
        Ok(Evaluation {
            value: q.value,
            path: PathUsed::Integral,
            error_estimate: q.error,
            work: q.nodes,
        })
    }
}

/// `𝒥_{ω,φ}(r)` with path details. The series path goes through the
/// angular coefficients at `φ`; the integral path evaluates `J_ω^[p]` at
/// the image of `(r, φ)`.
pub fn script_j_detailed(
    params: GenBesselParams,
    phi: f64,
    r: f64,
    path: &EvalPath,
    ctrl: &SeriesControl,
    quad: &QuadratureSpec,
) -> Result<Evaluation> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::domain(format!("radius must be finite and >= 0, got {r}")));
    }
    if !phi.is_finite() {
        return Err(Error::domain("angle must be finite"));
    }
    let x = from_distorted_polar(DistortedPolar { r, phi }, params.p);
    if path.use_series(r) {
        if r > ctrl.arg_limit {
            return Err(Error::PathRefused {
                argument: r,
                limit: ctrl.arg_limit,
            });
        }
        let rows = rows_needed(params, x, ctrl.tail_tol, ctrl.max_terms);
        let table = PhiCoefficients::new(params.p, phi, rows);
        let s = table.script_j(params.omega, r, ctrl)?;
        Ok(Evaluation {
            value: s.value,
            path: PathUsed::Series,
            error_estimate: s.tail_bound,
            work: s.terms_used,
        })
    } else {
        let q = gen_bessel_integral(params, x, quad)?;
        Ok(Evaluation {
            value: q.value,
            path: PathUsed::Integral,
            error_estimate: q.error,
            work: q.nodes,
        })
    }
}

/// `𝒥_{ω,φ}(r)`.
pub fn script_j(
    params: GenBesselParams,
    phi: f64,
    r: f64,
    path: &EvalPath,
    ctrl: &SeriesControl,
    quad: &QuadratureSpec,
) -> Result<f64> {
    script_j_detailed(params, phi, r, path, ctrl, quad).map(|e| e.value)
}

/// `r ↦ 𝒥_{ω,φ}(r)` at a fixed angle, reusing one table of angular
/// coefficients for every radius inside the series window.
#[derive(Clone, Debug)]
pub struct ScriptJ {
    params: GenBesselParams,
    phi: f64,
    path: EvalPath,
    ctrl: SeriesControl,
    quad: QuadratureSpec,
    table: Option<PhiCoefficients>,
}

impl ScriptJ {
    pub fn new(
        params: GenBesselParams,
        phi: f64,
        path: EvalPath,
        ctrl: SeriesControl,
        quad: QuadratureSpec,
    ) -> Result<Self> {
        ctrl.validate()?;
        quad.validate()?;
        if !phi.is_finite() {
            return Err(Error::domain("angle must be finite"));
        }
        let reach = match path.mode {
            PathMode::Integral => None,
            PathMode::Series => Some(ctrl.arg_limit),
            PathMode::Auto => Some(path.series_arg_limit.min(ctrl.arg_limit)),
        };
        let table = reach.map(|r| {
            let x = from_distorted_polar(DistortedPolar { r, phi }, params.p);
            let rows = rows_needed(params, x, ctrl.tail_tol, ctrl.max_terms);
            PhiCoefficients::new(params.p, phi, rows)
        });
        Ok(Self {
            params,
            phi,
            path,
            ctrl,
            quad,
            table,
        })
    }

    pub fn params(&self) -> GenBesselParams {
        self.params
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::domain(format!("radius must be finite and >= 0, got {r}")));
        }
        match &self.table {
            Some(table) if self.path.use_series(r) => {
                table.script_j(self.params.omega, r, &self.ctrl).map(|s| s.value)
            }
            _ => {
                let x = from_distorted_polar(DistortedPolar { r, phi: self.phi }, self.params.p);
                gen_bessel_integral(self.params, x, &self.quad).map(|q| q.value)
            }
        }
    }
}
