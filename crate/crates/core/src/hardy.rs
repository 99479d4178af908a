//! Truncated Hardy-type series for the lattice error term `P_p(r)`, the
//! classical circle case, convergence traces, and decay fits of `𝒥_0`.
//!
//! Shells are summed in ascending `s`. `J_1^[p]` is even in each coordinate
//! and symmetric under swapping them, so each canonical pair `a ≥ b ≥ 0` is
//! evaluated once and weighted by the number of points it represents.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genbessel::{gen_bessel_integral, gen_bessel_series, j1_integral, EvalPath, GenBesselParams};
use crate::numkernel::{classical_bessel_j, gamma, CompensatedSum, QuadratureSpec, SeriesControl};
use crate::pgeom::{
    error_term_direct, from_distorted_polar, lattice_angle, p_norm, r2_function, shell_classes,
    CanonicalPair, DistortedPolar, LatticePoint, PExponent,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardySumConfig {
    pub p: PExponent,
    pub r: f64,
    pub s_max: f64,
    pub path: EvalPath,
    pub ctrl: SeriesControl,
    pub quad: QuadratureSpec,
}

impl HardySumConfig {
    /// Default evaluation settings.
    pub fn new(p: PExponent, r: f64, s_max: f64) -> Result<Self> {
        let cfg = Self {
            p,
            r,
            s_max,
            path: EvalPath::auto(),
            ctrl: SeriesControl::default(),
            quad: QuadratureSpec::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(Error::domain(format!("radius must be positive, got {}", self.r)));
        }
        if self.s_max.is_nan() {
            return Err(Error::domain("s_max must be a number"));
        }
        self.ctrl.validate()?;
        self.quad.validate()
    }

    /// `pΓ(1/p)²/(2π) · r`.
    fn prefactor(&self) -> f64 {
        let p = self.p.p();
        let g = gamma(1.0 / p).expect("1/p > 0");
        p * g * g / TAU * self.r
    }
}

/// Contribution of one shell before the prefactor:
/// `s^{−1/p} Σ_{n in shell} J_1^[p](2πr n)`.
fn shell_term(cfg: &HardySumConfig, s: f64, pairs: &[CanonicalPair]) -> Result<f64> {
    let params = GenBesselParams {
        p: cfg.p,
        omega: 1.0,
    };
    let scale = TAU * cfg.r;
    let mut sum = CompensatedSum::new();
    let mut norm = 0.0;
    for pair in pairs {
        let n = [pair.a as f64, pair.b as f64];
        norm = p_norm(n, cfg.p);
        let x = [scale * n[0], scale * n[1]];
        let j = if cfg.path.use_series(scale * norm) {
            gen_bessel_series(params, x, &cfg.ctrl).map(|v| v.value)
        } else {
            j1_integral(cfg.p, x, &cfg.quad).map(|q| q.value)
        };
        let j = j.map_err(|e| Error::Evaluation {
            s,
            phi: lattice_angle(LatticePoint::new(pair.a as i64, pair.b as i64), cfg.p),
            source: Box::new(e),
        })?;
        sum.add(f64::from(pair.multiplicity) * j);
    }
    Ok(sum.value() / norm)
}

/// Shell values and their terms for `s ≤ s_max`, in ascending order.
fn shell_terms(cfg: &HardySumConfig, s_max: f64) -> Result<Vec<(f64, f64)>> {
    let classes = shell_classes(cfg.p, s_max);
    classes
        .par_iter()
        .map(|(_, s, pairs)| shell_term(cfg, *s, pairs).map(|t| (*s, t)))
        .collect()
}

/// `pΓ(1/p)²/(2π) · r · Σ_{1 ≤ s ≤ s_max} s^{−1/p} Σ_{φ ∈ shell} 𝒥_{1,φ}(2π s^{1/p} r)`.
pub fn hardy_partial_sum(cfg: &HardySumConfig) -> Result<f64> {
    cfg.validate()?;
    if cfg.s_max < 1.0 {
        return Ok(0.0);
    }
    let terms = shell_terms(cfg, cfg.s_max)?;
    let mut sum = CompensatedSum::new();
    for (_, t) in terms {
        sum.add(t);
    }
    Ok(cfg.prefactor() * sum.value())
}

/// `r Σ_{k=1}^{k_max} r_2(k) k^{−1/2} J_1(2π√k r)`.
pub fn classical_hardy_sum(r: f64, k_max: u64) -> f64 {
    let mut sum = CompensatedSum::new();
    for k in 1..=k_max {
        let rk = r2_function(k);
        if rk == 0 {
            continue;
        }
        let sk = (k as f64).sqrt();
        let j = classical_bessel_j(1.0, TAU * sk * r).expect("order 1 at a finite argument");
        sum.add(rk as f64 * j / sk);
    }
    r * sum.value()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub s_max: f64,
    pub partial_sum: f64,
    pub direct_error_term: f64,
    /// `partial_sum − direct_error_term`.
    pub residual: f64,
    /// Largest `|residual|` over truncations in `(s_max/2, s_max]`.
    pub envelope: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialSumTrace {
    pub checkpoints: Vec<Checkpoint>,
    /// Mean of the partial sums at the last `window` checkpoints.
    pub tail_average: f64,
    pub window: usize,
}

impl PartialSumTrace {
    pub fn tail_residual(&self) -> f64 {
        self.tail_average - self.checkpoints.last().map_or(0.0, |c| c.direct_error_term)
    }
}

/// Partial sums at each `s_max` in `schedule`. Every shell term is computed
/// once; `cfg.s_max` is ignored in favour of the schedule.
pub fn convergence_trace(
    cfg: &HardySumConfig,
    schedule: &[f64],
    window: usize,
) -> Result<PartialSumTrace> {
    cfg.validate()?;
    if schedule.is_empty() {
        return Err(Error::domain("empty checkpoint schedule"));
    }
    if schedule.windows(2).any(|w| !(w[0] < w[1])) || schedule.iter().any(|s| !s.is_finite()) {
        return Err(Error::domain("checkpoint schedule must be finite and strictly ascending"));
    }
    if window == 0 {
        return Err(Error::domain("window must be positive"));
    }
    let direct = error_term_direct(cfg.p, cfg.r)?.value;
    let last = *schedule.last().expect("non-empty");
    let terms = if last >= 1.0 { shell_terms(cfg, last)? } else { Vec::new() };

    // running[i] is the partial sum after the first i shells
    let pref = cfg.prefactor();
    let mut running = Vec::with_capacity(terms.len() + 1);
    running.push(0.0);
    let mut acc = CompensatedSum::new();
    for (_, t) in &terms {
        acc.add(*t);
        running.push(pref * acc.value());
    }
    let shells_upto = |s: f64| terms.partition_point(|(v, _)| *v <= s);

    let checkpoints: Vec<Checkpoint> = schedule
        .iter()
        .map(|&s| {
            let hi = shells_upto(s);
            let lo = shells_upto(0.5 * s);
            let partial_sum = running[hi];
            let envelope = running[lo..=hi]
                .iter()
                .map(|v| (v - direct).abs())
                .fold(0.0, f64::max);
            Checkpoint {
                s_max: s,
                partial_sum,
                direct_error_term: direct,
                residual: partial_sum - direct,
                envelope,
            }
        })
        .collect();
    let w = window.min(checkpoints.len());
    let tail = &checkpoints[checkpoints.len() - w..];
    let tail_average = tail.iter().map(|c| c.partial_sum).sum::<f64>() / w as f64;
    Ok(PartialSumTrace {
        checkpoints,
        tail_average,
        window,
    })
}

/// `count` checkpoints evenly spaced over `[s_max/2, s_max]`.
pub fn tail_schedule(s_max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![s_max],
        n => (0..n)
            .map(|i| 0.5 * s_max * (1.0 + i as f64 / (n - 1) as f64))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    /// Least-squares slope of `log |peak|` against `log r`.
    pub slope: f64,
    pub intercept: f64,
    /// Refined `(r, |𝒥_0|)` at each local maximum.
    pub peaks: Vec<(f64, f64)>,
}

/// Fit `|𝒥_{0,φ}(r)| ≈ C r^slope` through the local maxima of `|𝒥_{0,φ}|`
/// sampled on `r_grid`.
pub fn decay_slope_estimate(
    p: PExponent,
    phi: f64,
    r_grid: &[f64],
    quad: &QuadratureSpec,
) -> Result<DecayFit> {
    if r_grid.windows(2).any(|w| !(w[0] < w[1])) || r_grid.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::domain("radius grid must be positive and strictly ascending"));
    }
    if !phi.is_finite() {
        return Err(Error::domain("angle must be finite"));
    }
    let params = GenBesselParams { p, omega: 0.0 };
    let values: Vec<f64> = r_grid
        .par_iter()
        .map(|&r| {
            let x = from_distorted_polar(DistortedPolar { r, phi }, p);
            gen_bessel_integral(params, x, quad).map(|q| q.value.abs())
        })
        .collect::<Result<_>>()?;

    let mut peaks = Vec::new();
    for i in 1..values.len().saturating_sub(1) {
        let (a, b, c) = (values[i - 1], values[i], values[i + 1]);
        if b > a && b >= c {
            peaks.push(refine_peak([r_grid[i - 1], r_grid[i], r_grid[i + 1]], [a, b, c]));
        }
    }
    if peaks.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} local maxima on the grid, need at least 3",
            peaks.len()
        )));
    }
    let (slope, intercept) = least_squares(peaks.iter().map(|&(r, v)| (r.ln(), v.ln())));
    Ok(DecayFit {
        slope,
        intercept,
        peaks,
    })
}

/// Vertex of the parabola through three samples; falls back to the middle
/// sample if the fit is degenerate.
fn refine_peak(r: [f64; 3], v: [f64; 3]) -> (f64, f64) {
    let (d1, d2) = (r[1] - r[0], r[2] - r[1]);
    let s1 = (v[1] - v[0]) / d1;
    let s2 = (v[2] - v[1]) / d2;
    let curv = (s2 - s1) / (r[2] - r[0]);
    if !(curv < 0.0) {
        return (r[1], v[1]);
    }
    // v(t) = v1 + m (t − r1) + curv (t − r1)², m the slope at r1
    let m = s1 + curv * d1;
    let dt = (-m / (2.0 * curv)).clamp(-d1, d2);
    (r[1] + dt, v[1] + m * dt + curv * dt * dt)
}

fn least_squares(points: impl Iterator<Item = (f64, f64)>) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = points.collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
