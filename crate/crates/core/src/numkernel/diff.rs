use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Step control for central differences.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffSpec {
    pub step: f64,
    pub richardson_levels: u32,
}

impl DiffSpec {
    pub fn new(step: f64, richardson_levels: u32) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::domain(format!("difference step must be positive, got {step}")));
        }
        Ok(Self {
            step,
            richardson_levels,
        })
    }

    /// `h = 1e-4·max(1, r)` with one extrapolation level.
    pub fn scaled_for(r: f64) -> Self {
        Self {
            step: 1e-4 * r.abs().max(1.0),
            richardson_levels: 1,
        }
    }
}

impl Default for DiffSpec {
    fn default() -> Self {
        Self {
            step: 1e-3,
            richardson_levels: 2,
        }
    }
}

/// Central difference at `r` with Richardson extrapolation over successively
/// halved steps. The error is `O(h^{2(L+1)})` for `L` levels.
pub fn try_central_diff<F>(mut f: F, r: f64, spec: &DiffSpec) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let levels = spec.richardson_levels as usize;
    let mut table = Vec::with_capacity(levels + 1);
    let mut h = spec.step;
    for _ in 0..=levels {
        let d = (f(r + h)? - f(r - h)?) / (2.0 * h);
        table.push(d);
        h *= 0.5;
    }
    let mut factor = 1.0;
    for level in 1..=levels {
        factor *= 4.0;
        for j in 0..=(levels - level) {
            table[j] = table[j + 1] + (table[j + 1] - table[j]) / (factor - 1.0);
        }
    }
    Ok(table[0])
}

/// Infallible convenience wrapper around [`try_central_diff`].
pub fn central_diff<F>(f: F, r: f64, spec: &DiffSpec) -> f64
where
    F: Fn(f64) -> f64,
{
    try_central_diff(|t| Ok(f(t)), r, spec).expect("infallible integrand")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        let d = central_diff(|t| t * t, 3.0, &DiffSpec::default());
        assert!((d - 6.0).abs() < 1e-9);
    }

    #[test]
    fn constant() {
        assert_eq!(central_diff(|_| 4.2, 17.0, &DiffSpec::default()), 0.0);
    }

    #[test]
    fn sine_at_origin() {
        let d = central_diff(f64::sin, 0.0, &DiffSpec::new(1e-3, 1).unwrap());
        assert!((d - 1.0).abs() < 1e-10);
        // without extrapolation the h² term is visible
        let d0 = central_diff(f64::sin, 0.0, &DiffSpec::new(1e-3, 0).unwrap());
        assert!((d0 - 1.0).abs() > 1e-8);
    }

    #[test]
    fn errors_propagate() {
        let r = try_central_diff(|_| Err(Error::domain("nope")), 1.0, &DiffSpec::default());
        assert!(r.is_err());
        assert!(DiffSpec::new(0.0, 1).is_err());
    }
}
