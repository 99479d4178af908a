use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{p_norm, PExponent};
use crate::error::{Error, Result};
use crate::numkernel::{gamma, DoubleWord};

/// Relative distance to the curve below which a radius counts as a boundary
/// radius.
pub const PROXIMITY_REL: f64 = 1e-9;

/// Relative margin under which the f64 row test is re-done in double-word.
const RECHECK_REL: f64 = 1e-9;

/// Rows above this count are scanned in parallel.
const PAR_ROWS: i64 = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeCount {
    pub count: u64,
    /// Smallest `| |n|_p - r |` over the points examined next to the curve.
    pub min_distance: f64,
    /// Some lattice point lies within `PROXIMITY_REL · r` of the curve.
    pub near_boundary: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorTerm {
    pub value: f64,
    pub count: u64,
    pub area: f64,
    pub near_boundary: bool,
}

/// `(2/p)·Γ(1/p)²/Γ(2/p)·r²`, the area enclosed by the p-circle of radius `r`.
pub fn area_term(p: PExponent, r: f64) -> f64 {
    let q = f64::from(p.q());
    let g = gamma(0.5 * q).expect("q >= 1");
    q * g * g / gamma(q).expect("q >= 1") * r * r
}

/// Exact `#{n ∈ ℤ² : |n|_p < r}`.
pub fn count_lattice_points(p: PExponent, r: f64) -> Result<u64> {
    count_lattice_points_with_proximity(p, r).map(|c| c.count)
}

/// [`count_lattice_points`] together with a boundary-proximity diagnostic.
pub fn count_lattice_points_with_proximity(p: PExponent, r: f64) -> Result<LatticeCount> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::domain(format!("radius must be positive and finite, got {r}")));
    }
    // the count is about the area; leave generous headroom below u64::MAX
    if area_term(p, r) > 1e18 || r > 1e9 {
        return Err(Error::Overflow(r));
    }
    let scan = RowScan::new(p, r);
    // largest integer strictly below r bounds |n1|
    let m = if r.fract() == 0.0 { r as i64 - 1 } else { r.floor() as i64 };

    let (rows, min_distance) = if m >= PAR_ROWS {
        (1..=m)
            .into_par_iter()
            .map(|n1| scan.row(n1))
            .reduce(|| (0, f64::INFINITY), |a, b| (a.0 + b.0, a.1.min(b.1)))
    } else {
        (1..=m)
            .map(|n1| scan.row(n1))
            .fold((0, f64::INFINITY), |a, b| (a.0 + b.0, a.1.min(b.1)))
    };
    let (centre, centre_dist) = scan.row(0);
    let count = centre
        .checked_add(rows.checked_mul(2).ok_or(Error::Overflow(r))?)
        .ok_or(Error::Overflow(r))?;
    let min_distance = min_distance.min(centre_dist);
    Ok(LatticeCount {
        count,
        min_distance,
        near_boundary: min_distance < PROXIMITY_REL * r,
    })
}

/// `P_p(r) = N_p(r) − area`, flagged when `r` sits on (or next to) a lattice
/// point.
pub fn error_term_direct(p: PExponent, r: f64) -> Result<ErrorTerm> {
    let c = count_lattice_points_with_proximity(p, r)?;
    let area = area_term(p, r);
    Ok(ErrorTerm {
        value: c.count as f64 - area,
        count: c.count,
        area,
        near_boundary: c.near_boundary,
    })
}

struct RowScan {
    p: PExponent,
    r: f64,
    rp: f64,
    rp_dw: DoubleWord,
}

impl RowScan {
    fn new(p: PExponent, r: f64) -> Self {
        Self {
            p,
            r,
            rp: p.pow_p(r),
            rp_dw: real_pow_p_dw(r, p),
        }
    }

    /// Is `a^p + b^p < r^p`?
    fn inside(&self, a: i64, b: i64) -> bool {
        let (af, bf) = (a as f64, b as f64);
        let lhs = self.p.pow_p(af) + self.p.pow_p(bf);
        let margin = self.rp - lhs;
        if margin.abs() > RECHECK_REL * self.rp {
            return margin > 0.0;
        }
        let lhs = self.p.pow_p_dw(af) + self.p.pow_p_dw(bf);
        (self.rp_dw - lhs).hi > 0.0
    }

    /// Number of points in row `n1` and the smallest distance to the curve of
    /// the two points straddling it.
    fn row(&self, n1: i64) -> (u64, f64) {
        let a = n1.unsigned_abs() as i64;
        let rest = self.rp - self.p.pow_p(a as f64);
        let mut m = if rest > 0.0 {
            let c = self.p.pow_inv_p(rest);
            (c.ceil() as i64 - 1).max(0)
        } else {
            0
        };
        if !self.inside(a, m) {
            // f64 guess overshot, or the row is empty
            while m >= 0 && !self.inside(a, m) {
                m -= 1;
            }
        } else {
            while self.inside(a, m + 1) {
                m += 1;
            }
        }
        let count = if m < 0 { 0 } else { 2 * m as u64 + 1 };
        let lo = if m >= 0 { (p_norm([a as f64, m as f64], self.p) - self.r).abs() } else { f64::INFINITY };
        let hi = (p_norm([a as f64, (m + 1) as f64], self.p) - self.r).abs();
        (count, lo.min(hi))
    }
}

/// `r^p` in double-word for a real `r`, as the root of `y^q = r²`.
fn real_pow_p_dw(r: f64, p: PExponent) -> DoubleWord {
    super::root_of_square_dw(r, p.q())
}
