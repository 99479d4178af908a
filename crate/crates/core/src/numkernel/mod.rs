//! Scalar numerical kernel: gamma and beta functions, classical Bessel
//! functions, compensated summation, quadrature and numerical differentiation.

pub mod bessel;
pub mod diff;
pub mod dword;
pub mod gamma;
pub mod quad;
pub mod sum;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bessel::{classical_bessel_j, BESSEL_CROSSOVER};
pub use diff::{central_diff, try_central_diff, DiffSpec};
pub use dword::DoubleWord;
pub use gamma::{beta, gamma, log_beta, log_gamma};
pub use quad::{
    integrate, try_integrate, Abscissa, EndpointSingularity, QuadMethod, Quadrature,
    QuadratureSpec,
};
pub use sum::{compensated_sum, CompensatedSum};

/// Default argument limit for the alternating power series paths.
pub const SERIES_ARG_LIMIT: f64 = 18.0;

/// Truncation control for the power-series evaluators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub max_terms: usize,
    /// Absolute target for the certified truncation tail.
    pub tail_tol: f64,
    /// Accumulate in double-word precision.
    pub compensated: bool,
    /// Arguments (in p-norm) beyond this are refused.
    pub arg_limit: f64,
}

impl SeriesControl {
    pub fn new(max_terms: usize, tail_tol: f64, compensated: bool) -> Result<Self> {
        let ctrl = Self {
            max_terms,
            tail_tol,
            compensated,
            arg_limit: SERIES_ARG_LIMIT,
        };
        ctrl.validate()?;
        Ok(ctrl)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(Error::domain("series control needs max_terms >= 1"));
        }
        if !(self.tail_tol > 0.0) {
            return Err(Error::domain("series tail tolerance must be positive"));
        }
        if !(self.arg_limit > 0.0) {
            return Err(Error::domain("series argument limit must be positive"));
        }
        Ok(())
    }

    pub fn with_arg_limit(mut self, limit: f64) -> Self {
        self.arg_limit = limit;
        self
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 400,
            tail_tol: 1e-17,
            compensated: true,
            arg_limit: SERIES_ARG_LIMIT,
        }
    }
}
