//! Power series of `J_ω^[p]` summed along the diagonals `m1 + m2 = k`.
//!
//! With `q = 2/p` the series is rewritten as
//!
//! ```text
//! J_ω(x) = (|x|_p/p)^ω q²/Γ(q+ω) Σ_k (-1)^k ρ_k Σ_{m1+m2=k} B̃(m1,m2) x1^{2m1}/(2m1)! x2^{2m2}/(2m2)!
//! ```
//!
//! where `ρ_k = Γ(q(k+1))Γ(q+ω) / (Γ(q(k+1)+ω)Γ(q))` and
//! `B̃(m1,m2) = B(q(m1+½), q(m2+½)) / B(q/2, q/2)`. Both factors lie in (0, 1]
//! and follow rational recurrences, so no Γ of a large argument is formed.
//! Rows are accumulated in double-word arithmetic.

use serde::{Deserialize, Serialize};

use super::GenBesselParams;
use crate::error::{Error, Result};
use crate::numkernel::{log_gamma, DoubleWord, SeriesControl};
use crate::pgeom::{p_norm, PExponent};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    /// Number of diagonals summed.
    pub terms_used: usize,
    /// Certified bound on the neglected tail.
    pub tail_bound: f64,
}

/// Diagonal sums `Σ_{m1+m2=k} B̃ u1^{2m1}/(2m1)! u2^{2m2}/(2m2)!`, one row at a time.
pub(crate) struct RowEngine {
    q: u32,
    k: usize,
    b_first: DoubleWord,
    /// `u^{2m}/(2m)!`
    e1: Vec<DoubleWord>,
    e2: Vec<DoubleWord>,
    u1sq: DoubleWord,
    u2sq: DoubleWord,
    /// `Π_{j<q} (q(2m+1)/2 + j)`
    pfac: Vec<DoubleWord>,
}

impl RowEngine {
    pub(crate) fn new(q: u32, u1: f64, u2: f64) -> Self {
        Self {
            q,
            k: 0,
            b_first: DoubleWord::ONE,
            e1: vec![DoubleWord::ONE],
            e2: vec![DoubleWord::ONE],
            u1sq: DoubleWord::product(u1, u1),
            u2sq: DoubleWord::product(u2, u2),
            pfac: Vec::new(),
        }
    }

    fn pfac(&mut self, m: usize) -> DoubleWord {
        while self.pfac.len() <= m {
            let i = self.pfac.len();
            let base = 0.5 * f64::from(self.q) * (2 * i + 1) as f64;
            let mut prod = DoubleWord::ONE;
            for j in 0..self.q {
                prod = prod.mul_f64(base + f64::from(j));
            }
            self.pfac.push(prod);
        }
        self.pfac[m]
    }

    /// Returns row `k` and advances to `k + 1`.
    pub(crate) fn next_row(&mut self) -> DoubleWord {
        let k = self.k;
        if k > 0 {
            let two_k = (2 * k) as f64;
            let step = (two_k - 1.0) * two_k;
            let n1 = (self.e1[k - 1] * self.u1sq).div_f64(step);
            let n2 = (self.e2[k - 1] * self.u2sq).div_f64(step);
            self.e1.push(n1);
            self.e2.push(n2);
        }
        let mut b = self.b_first;
        let mut row = DoubleWord::ZERO;
        let u2_zero = self.u2sq.hi == 0.0;
        let u1_zero = self.u1sq.hi == 0.0;
        for m in 0..=k {
            if !(u1_zero && m > 0) && !(u2_zero && m < k) {
                row += b * self.e1[m] * self.e2[k - m];
            }
            if m < k {
                let num = self.pfac(m);
                let den = self.pfac(k - m - 1);
                b = b * num / den;
            }
        }
        // first coefficient of the next row
        let qf = f64::from(self.q);
        let lo = 0.5 * qf * (2 * k + 1) as f64;
        let hi = qf * (k + 1) as f64;
        let mut ratio = DoubleWord::ONE;
        for j in 0..self.q {
            let jf = f64::from(j);
            ratio = ratio.mul_f64(lo + jf).div_f64(hi + jf);
        }
        self.b_first = self.b_first * ratio;
        self.k += 1;
        row
    }
}

/// `ρ_{k+1}/ρ_k = Π_{j<q} (q(k+1)+j)/(q(k+1)+ω+j)`.
pub(crate) fn rho_step(rho: DoubleWord, q: u32, omega: f64, k: usize) -> DoubleWord {
    if omega == 0.0 {
        return rho;
    }
    let base = f64::from(q) * (k + 1) as f64;
    let mut r = rho;
    for j in 0..q {
        let jf = f64::from(j);
        r = r.mul_f64(base + jf).div_f64(base + omega + jf);
    }
    r
}

/// `q²/Γ(q+ω)`.
pub(crate) fn lead_constant(q: u32, omega: f64) -> f64 {
    let qf = f64::from(q);
    qf * qf * (-libm::lgamma(qf + omega)).exp()
}

/// `(|x|_p/p)^ω`, with `0^0 = 1`.
pub(crate) fn radial_factor(norm: f64, p: PExponent, omega: f64) -> f64 {
    if omega == 0.0 {
        1.0
    } else {
        (norm / p.p()).powf(omega)
    }
}

fn check_params(params: &GenBesselParams) -> Result<()> {
    if !(params.omega.is_finite() && params.omega >= 0.0) {
        return Err(Error::domain(format!("order must be finite and >= 0, got {}", params.omega)));
    }
    Ok(())
}

/// `J_ω^[p](x)` from its power series.
pub fn gen_bessel_series(
    params: GenBesselParams,
    x: [f64; 2],
    ctrl: &SeriesControl,
) -> Result<SeriesValue> {
    check_params(&params)?;
    ctrl.validate()?;
    if !(x[0].is_finite() && x[1].is_finite()) {
        return Err(Error::domain("argument must be finite"));
    }
    let p = params.p;
    let norm = p_norm(x, p);
    if norm > ctrl.arg_limit {
        return Err(Error::PathRefused {
            argument: norm,
            limit: ctrl.arg_limit,
        });
    }
    let omega = params.omega;
    if omega > 0.0 && norm == 0.0 {
        return Ok(SeriesValue {
            value: 0.0,
            terms_used: 0,
            tail_bound: 0.0,
        });
    }
    let q = p.q();
    let mut rows = RowEngine::new(q, x[0].abs(), x[1].abs());
    let mut rho = DoubleWord::ONE;
    let mut sum = DoubleWord::ZERO;
    let mut tail = f64::INFINITY;
    let mut used = 0;
    while used < ctrl.max_terms {
        let row = rows.next_row() * rho;
        if used % 2 == 0 {
            sum += row;
        } else {
            sum = sum - row;
        }
        rho = rho_step(rho, q, omega, used);
        used += 1;
        tail = truncation_bound(params, x, used);
        if tail <= ctrl.tail_tol {
            break;
        }
    }
    let scale = radial_factor(norm, p, omega) * lead_constant(q, omega);
    let value = if ctrl.compensated {
        sum.to_f64() * scale
    } else {
        sum.hi * scale
    };
    if tail > ctrl.tail_tol {
        return Err(Error::NonConvergence {
            what: "generalized Bessel series",
            estimate: value,
            error_estimate: tail,
        });
    }
    Ok(SeriesValue {
        value,
        terms_used: used,
        tail_bound: tail,
    })
}

/// `C(ω) = 1/Γ(ω+1)` for `ω > 0`, 1 for `ω = 0`.
fn c_omega(omega: f64) -> f64 {
    if omega == 0.0 {
        1.0
    } else {
        (-libm::lgamma(omega + 1.0)).exp()
    }
}

/// `Σ_{k≥K} S^{2k}/(2k)!`.
pub(crate) fn even_exp_remainder(s: f64, from: usize) -> f64 {
    if s == 0.0 {
        return if from == 0 { 1.0 } else { 0.0 };
    }
    let ln_s = s.ln();
    let mut k = from;
    let mut ln_t = 2.0 * k as f64 * ln_s - libm::lgamma(2.0 * k as f64 + 1.0);
    let mut total = 0.0;
    loop {
        let t = ln_t.exp();
        total += t;
        let ratio = s * s / (((2 * k + 1) * (2 * k + 2)) as f64);
        if ratio < 0.5 && t * ratio <= 1e-18 * total {
            // remaining ratios only shrink
            return total + t * ratio / (1.0 - ratio);
        }
        ln_t += ratio.ln();
        k += 1;
    }
}

/// Upper bound on the series tail after `terms_used` diagonals:
/// `4C(ω)|x|_p^ω / (p^{ω+2}Γ(2/p)) · Σ_{k≥K} (|x1|+|x2|)^{2k}/(2k)!`.
pub fn truncation_bound(params: GenBesselParams, x: [f64; 2], terms_used: usize) -> f64 {
    let p = params.p;
    let omega = params.omega;
    let norm = p_norm(x, p);
    let pf = p.p();
    let lead = if omega == 0.0 { 1.0 } else { norm.powf(omega) };
    let qf = f64::from(p.q());
    let constant = 4.0 * c_omega(omega) * lead / (pf.powf(omega + 2.0) * libm::tgamma(qf));
    constant * even_exp_remainder(x[0].abs() + x[1].abs(), terms_used)
}

/// `ln Γ(n+k/2) + ln Γ(m+k/2) − ln Γ(n+m+k) ≤ 2 ln Γ(k/2) − ln Γ(k)`, with
/// `1e-9` relative slack.
pub fn gamma_ratio_inequality_check(k: u32, n: u32, m: u32) -> bool {
    if k == 0 {
        return false;
    }
    let (kf, nf, mf) = (f64::from(k), f64::from(n), f64::from(m));
    let half = 0.5 * kf;
    let lhs = libm::lgamma(nf + half) + libm::lgamma(mf + half) - libm::lgamma(nf + mf + kf);
    let rhs = 2.0 * libm::lgamma(half) - libm::lgamma(kf);
    lhs <= rhs + 1e-9 * rhs.abs().max(1.0)
}

/// `Φ_{k,φ}`, the angular coefficient of the one-variable series, summed
/// directly from its binomial-beta form in log space.
pub fn phi_coefficient(p: PExponent, k: usize, phi: f64) -> f64 {
    let q = f64::from(p.q());
    let qi = p.q() as i32;
    let (s, c) = phi.sin_cos();
    let cw = c.abs().powi(2 * qi);
    let sw = s.abs().powi(2 * qi);
    let kf = k as f64;
    let lead = log_gamma(q * (kf + 1.0)).expect("positive");
    let mut total = 0.0;
    for n in 0..=k {
        let nf = n as f64;
        let rest = kf - nf;
        let mut ln_t = lead - libm::lgamma(nf + 1.0) - libm::lgamma(rest + 1.0)
            + libm::lgamma(q * (nf + 0.5))
            + libm::lgamma(q * (rest + 0.5))
            - libm::lgamma(q * (kf + 1.0))
            - libm::lgamma(nf + 0.5)
            - libm::lgamma(rest + 0.5)
            + libm::lgamma(kf + 1.0);
        if n > 0 {
            if cw == 0.0 {
                continue;
            }
            ln_t += nf * cw.ln();
        }
        if n < k {
            if sw == 0.0 {
                continue;
            }
            ln_t += rest * sw.ln();
        }
        total += ln_t.exp();
    }
    total
}

/// Table of angular coefficients at a fixed distorted angle.
///
/// `hat[k]` is the diagonal sum with unit radius, i.e. the row that the
/// series multiplies by `r^{2k}`; [`PhiCoefficients::value`] rescales it to
/// the conventional `Φ_{k,φ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiCoefficients {
    pub p: PExponent,
    pub phi: f64,
    hat: Vec<DoubleWord>,
}

impl PhiCoefficients {
    /// Rows `0..=k_max`.
    pub fn new(p: PExponent, phi: f64, k_max: usize) -> Self {
        let q = p.q() as i32;
        let (s, c) = phi.sin_cos();
        let mut rows = RowEngine::new(p.q(), c.abs().powi(q), s.abs().powi(q));
        let hat = (0..=k_max).map(|_| rows.next_row()).collect();
        Self { p, phi, hat }
    }

    pub fn len(&self) -> usize {
        self.hat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hat.is_empty()
    }

    pub fn hat(&self, k: usize) -> DoubleWord {
        self.hat[k]
    }

    /// `Φ_{k,φ} = k! 4^k Γ(q(k+1)) Γ(q/2)² / (π Γ(q)) · hat[k]`.
    pub fn value(&self, k: usize) -> f64 {
        let q = f64::from(self.p.q());
        let kf = k as f64;
        let ln_scale = libm::lgamma(kf + 1.0) + kf * 4f64.ln() + libm::lgamma(q * (kf + 1.0))
            + 2.0 * libm::lgamma(0.5 * q)
            - std::f64::consts::PI.ln()
            - libm::lgamma(q);
        (self.hat[k].mul_f64(ln_scale.exp())).to_f64()
    }

    /// `𝒥_{ω,φ}(r)` from the stored rows; fails if the table is too short for
    /// the requested tail tolerance.
    pub fn script_j(&self, omega: f64, r: f64, ctrl: &SeriesControl) -> Result<SeriesValue> {
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::domain(format!("order must be finite and >= 0, got {omega}")));
        }
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::domain(format!("radius must be finite and >= 0, got {r}")));
        }
        if r > ctrl.arg_limit {
            return Err(Error::PathRefused {
                argument: r,
                limit: ctrl.arg_limit,
            });
        }
        let params = GenBesselParams::new(self.p, omega)?;
        if omega > 0.0 && r == 0.0 {
            return Ok(SeriesValue {
                value: 0.0,
                terms_used: 0,
                tail_bound: 0.0,
            });
        }
        let q = self.p.q() as i32;
        let (s, c) = self.phi.sin_cos();
        // |x1| + |x2| at the image point drives the tail bound
        let x = [r * c.abs().powi(q), r * s.abs().powi(q)];
        let r2 = DoubleWord::product(r, r);
        let mut rk = DoubleWord::ONE;
        let mut rho = DoubleWord::ONE;
        let mut sum = DoubleWord::ZERO;
        let mut tail = f64::INFINITY;
        let mut used = 0;
        while used < self.hat.len().min(ctrl.max_terms) {
            let row = self.hat[used] * rk * rho;
            if used % 2 == 0 {
                sum += row;
            } else {
                sum = sum - row;
            }
            rho = rho_step(rho, self.p.q(), omega, used);
            rk = rk * r2;
            used += 1;
            tail = truncation_bound(params, x, used);
            if tail <= ctrl.tail_tol {
                break;
            }
        }
        let value = sum.to_f64() * radial_factor(r, self.p, omega) * lead_constant(self.p.q(), omega);
        if tail > ctrl.tail_tol {
            return Err(Error::NonConvergence {
                what: "angular coefficient series",
                estimate: value,
                error_estimate: tail,
            });
        }
        Ok(SeriesValue {
            value,
            terms_used: used,
            tail_bound: tail,
        })
    }
}

/// Smallest number of diagonals whose tail bound is below `tol`.
pub(crate) fn rows_needed(params: GenBesselParams, x: [f64; 2], tol: f64, max: usize) -> usize {
    (1..=max)
        .find(|&k| truncation_bound(params, x, k) <= tol)
        .unwrap_or(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::classical_bessel_j;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn params(q: u32, omega: f64) -> GenBesselParams {
        GenBesselParams::new(PExponent::new(q).unwrap(), omega).unwrap()
    }

    fn series(q: u32, omega: f64, x: [f64; 2]) -> f64 {
        gen_bessel_series(params(q, omega), x, &SeriesControl::default().with_arg_limit(40.0))
            .unwrap()
            .value
    }

    /// `(k! 4^k/π) Σ_{m1+m2=k} Γ(q(m+½))/(2m)! |cos^{m1} sin^{m2}|^{2q}`, term by term.
    fn phi_direct(q: u32, k: usize, phi: f64) -> f64 {
        let qf = f64::from(q);
        let (s, c) = phi.sin_cos();
        let cw = c.abs().powi(2 * q as i32);
        let sw = s.abs().powi(2 * q as i32);
        let mut t = 0.0;
        for m1 in 0..=k {
            let m2 = k - m1;
            let ln = libm::lgamma(qf * (m1 as f64 + 0.5)) + libm::lgamma(qf * (m2 as f64 + 0.5))
                - libm::lgamma(2.0 * m1 as f64 + 1.0)
                - libm::lgamma(2.0 * m2 as f64 + 1.0);
            t += ln.exp() * cw.powi(m1 as i32) * sw.powi(m2 as i32);
        }
        let kf = k as f64;
        t * (libm::lgamma(kf + 1.0) + kf * 4f64.ln()).exp() / PI
    }

    #[test]
    fn value_at_origin() {
        for q in 1..=4 {
            let qf = f64::from(q);
            let want = qf * qf / libm::tgamma(qf);
            assert!((series(q, 0.0, [0.0, 0.0]) - want).abs() < 1e-15);
            assert_eq!(series(q, 1.0, [0.0, 0.0]), 0.0);
        }
    }

    #[test]
    fn circle_case_is_classical() {
        for omega in [0.0, 0.5, 1.0, 2.0, 3.5] {
            for i in 0..=90 {
                let r = 0.2 * i as f64;
                let got = series(1, omega, [r, 0.0]);
                let want = classical_bessel_j(omega, r).unwrap();
                assert!((got - want).abs() < 1e-12, "omega={omega} r={r}: {got} vs {want}");
                // rotation invariance
                let (s, c) = 0.7f64.sin_cos();
                let rot = series(1, omega, [r * c, r * s]);
                assert!((rot - want).abs() < 1e-12, "omega={omega} r={r}");
            }
        }
    }

    #[test]
    fn diamond_closed_form() {
        // J_0^[1](a,b) = 4∫_0^1 cos(at) cos(b(1-t)) dt
        let oracle = |a: f64, b: f64| -> f64 {
            if (a - b).abs() < 1e-12 {
                2.0 * (a.sin() / a + a.cos())
            } else {
                2.0 * ((a.sin() + b.sin()) / (a + b) + (a.sin() - b.sin()) / (a - b))
            }
        };
        for (a, b) in [(0.3, 0.0001), (3.0, 4.0), (7.5, 2.25), (10.0, 8.0), (0.5, 17.0)] {
            let got = series(2, 0.0, [a, b]);
            assert!((got - oracle(a, b)).abs() < 1e-12, "({a},{b}): {got} vs {}", oracle(a, b));
        }
    }

    #[test]
    fn refuses_large_arguments() {
        let err = gen_bessel_series(params(2, 0.0), [15.0, 10.0], &SeriesControl::default())
            .unwrap_err();
        assert!(matches!(err, Error::PathRefused { .. }));
        assert!(err.is_non_convergence());
    }

    #[test]
    fn short_budget_is_reported() {
        let ctrl = SeriesControl::new(3, 1e-17, true).unwrap();
        let err = gen_bessel_series(params(1, 0.0), [10.0, 0.0], &ctrl).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn tail_bound_examples() {
        let b = truncation_bound(params(1, 0.0), [1.0, 0.0], 20);
        assert!(b < 1e-15 && b > 0.0);
        let b0 = truncation_bound(params(3, 0.0), [0.0, 0.0], 0);
        assert!(b0.is_finite() && b0 > 0.0);
        assert_eq!(truncation_bound(params(3, 0.0), [0.0, 0.0], 1), 0.0);
        // Σ_{k≥0} S^{2k}/(2k)! = cosh S
        let r = even_exp_remainder(3.0, 0);
        assert!((r - 3f64.cosh()).abs() < 1e-12 * 3f64.cosh());
    }

    #[test]
    fn tail_bound_dominates_measured_tail() {
        for q in 1..=4 {
            for omega in [0.0, 1.0, 2.5] {
                let pr = params(q, omega);
                for x in [[1.0, 0.5], [4.0, 3.0], [9.0, 0.0], [2.0, 11.0]] {
                    let wide = SeriesControl::default().with_arg_limit(40.0);
                    let full = gen_bessel_series(pr, x, &wide).unwrap();
                    for k in [1usize, 3, 6, 10, 20] {
                        let ctrl = SeriesControl {
                            max_terms: k,
                            tail_tol: 1e-300,
                            ..wide
                        };
                        let part = match gen_bessel_series(pr, x, &ctrl) {
                            Err(Error::NonConvergence { estimate, .. }) => estimate,
                            other => panic!("unexpected {other:?}"),
                        };
                        let tail = (part - full.value).abs();
                        let bound = truncation_bound(pr, x, k);
                        assert!(tail <= bound * (1.0 + 1e-12) + 1e-15, "q={q} omega={omega} x={x:?} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn tail_bound_is_monotone() {
        let pr = params(3, 1.0);
        let mut prev = f64::INFINITY;
        for k in 0..60 {
            let b = truncation_bound(pr, [5.0, 6.0], k);
            assert!(b <= prev);
            prev = b;
        }
    }

    #[test]
    fn gamma_inequality_examples() {
        assert!(gamma_ratio_inequality_check(1, 0, 0));
        assert!(gamma_ratio_inequality_check(2, 3, 5));
        assert!(gamma_ratio_inequality_check(4, 10, 0));
        for k in 1..=12 {
            for n in 0..=15 {
                for m in 0..=15 {
                    assert!(gamma_ratio_inequality_check(k, n, m), "k={k} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        for k in 0..=30 {
            for j in 0..64 {
                let phi = TAU * j as f64 / 64.0;
                assert!((phi_coefficient(PExponent::CIRCLE, k, phi) - 1.0).abs() < 1e-12);
            }
        }
        for j in 0..8 {
            let phi = j as f64 * 0.4;
            assert!((phi_coefficient(PExponent::DIAMOND, 0, phi) - 1.0 / PI).abs() < 1e-15);
        }
        // φ = 0 leaves only the n = k summand
        let p = PExponent::ASTROID;
        let q = 3.0;
        let alone = (libm::lgamma(2.0 * q) + libm::lgamma(1.5 * q) + libm::lgamma(0.5 * q)
            - libm::lgamma(2.0 * q)
            - libm::lgamma(1.5)
            - libm::lgamma(0.5))
        .exp();
        assert!((phi_coefficient(p, 1, 0.0) - alone).abs() < 1e-13 * alone);
    }

    #[test]
    fn phi_forms_agree() {
        for q in 1..=4u32 {
            let p = PExponent::new(q).unwrap();
            for j in 0..64 {
                let phi = TAU * (j as f64 + 0.25) / 64.0;
                let table = PhiCoefficients::new(p, phi, 20);
                for k in 0..=20 {
                    let direct = phi_direct(q, k, phi);
                    let eq6 = phi_coefficient(p, k, phi);
                    let rows = table.value(k);
                    assert!((eq6 - direct).abs() <= 1e-11 * direct, "q={q} k={k} phi={phi}");
                    assert!((rows - direct).abs() <= 1e-11 * direct, "q={q} k={k} phi={phi}");
                }
            }
        }
    }

    #[test]
    fn table_script_j_matches_series() {
        for q in 1..=4 {
            let p = PExponent::new(q).unwrap();
            for phi in [0.0, 0.3, 1.2, 2.9, 4.4] {
                let table = PhiCoefficients::new(p, phi, 120);
                for r in [0.0, 0.7, 5.0, 12.5, 18.0] {
                    for omega in [0.0, 1.0, 0.5] {
                        let x = crate::pgeom::from_distorted_polar(
                            crate::pgeom::DistortedPolar { r, phi },
                            p,
                        );
                        let want = series(q, omega, x);
                        let got = table.script_j(omega, r, &SeriesControl::default()).unwrap().value;
                        assert!((got - want).abs() < 1e-12, "q={q} phi={phi} r={r} omega={omega}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn symmetric_under_flips_and_swap(q in 1u32..=4, omega in 0.0f64..3.0, a in -9.0f64..9.0, b in -9.0f64..9.0) {
            let v = series(q, omega, [a, b]);
            for y in [[-a, b], [a, -b], [b, a], [-b, -a]] {
                prop_assert!((series(q, omega, y) - v).abs() <= 1e-13 * v.abs().max(1.0));
            }
        }
    }
}
