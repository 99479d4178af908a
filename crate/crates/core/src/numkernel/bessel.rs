//! Bessel functions of the first kind `J_ω(r)` for real `ω ≥ 0`, `r ≥ 0`.
//!
//! Two evaluation paths:
//!
//! * the power series `Σ (-1)^k (r/2)^{2k+ω} / (k! Γ(k+ω+1))`, accumulated in
//!   double-word arithmetic so the alternating cancellation (about `r/ln 10`
//!   digits) does not eat into the result below the crossover;
//! * Hankel's large-argument expansion beyond [`BESSEL_CROSSOVER`].

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::dword::DoubleWord;
use crate::error::{Error, Result};

/// Radius above which the asymptotic expansion replaces the series.
pub const BESSEL_CROSSOVER: f64 = 18.0;

fn check_args(omega: f64, r: f64) -> Result<()> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::domain(format!("Bessel order must be finite and >= 0, got {omega}")));
    }
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::domain(format!("Bessel argument must be finite and >= 0, got {r}")));
    }
    Ok(())
}

/// `J_ω(r)`.
pub fn classical_bessel_j(omega: f64, r: f64) -> Result<f64> {
    check_args(omega, r)?;
    if r == 0.0 {
        return Ok(if omega == 0.0 { 1.0 } else { 0.0 });
    }
    // The Hankel expansion only becomes useful once r dominates ω².
    if r > BESSEL_CROSSOVER && r > omega * omega {
        Ok(bessel_j_asymptotic(omega, r))
    } else {
        Ok(bessel_j_series(omega, r))
    }
}

/// Power-series evaluation of `J_ω(r)`; any `r`, but the cost grows linearly
/// and the double-word headroom runs out around `r ≈ 60`.
pub fn bessel_j_series(omega: f64, r: f64) -> f64 {
    if r == 0.0 {
        return if omega == 0.0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * r;
    let lead = if omega == 0.0 {
        1.0
    } else {
        (omega * half.ln() - libm::lgamma(omega + 1.0)).exp()
    };
    let z = DoubleWord::product(half, half);
    let mut term = DoubleWord::from_f64(1.0);
    let mut sum = DoubleWord::ONE;
    let mut k = 0u32;
    loop {
        k += 1;
        let kf = f64::from(k);
        term = -(term * z).div_f64(kf * (kf + omega));
        sum += term;
        if kf > half && term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) {
            break;
        }
        if k > 10_000 {
            break;
        }
    }
    sum.mul_f64(lead).to_f64()
}

/// Hankel's asymptotic expansion, truncated at its smallest term.
pub fn bessel_j_asymptotic(omega: f64, r: f64) -> f64 {
    let mu = 4.0 * omega * omega;
    let mut a = 1.0_f64;
    let mut p = 1.0_f64;
    let mut q = 0.0_f64;
    let mut prev = f64::INFINITY;
    for k in 1..200u32 {
        let odd = f64::from(2 * k - 1);
        a *= (mu - odd * odd) / (f64::from(k) * 8.0 * r);
        let mag = a.abs();
        if mag > prev || mag < 1e-18 {
            break;
        }
        prev = mag;
        // a_k enters P with sign (-1)^{k/2} for even k and Q with (-1)^{(k-1)/2} for odd k.
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
    }
    let chi = r - (omega * FRAC_PI_2 + FRAC_PI_4);
    (2.0 / (PI * r)).sqrt() * (p * chi.cos() - q * chi.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bessel's integral `J_n(r) = (1/π)∫_0^π cos(nθ − r sin θ) dθ`; the
    /// trapezoidal rule is spectrally accurate on this periodic integrand.
    fn bessel_integer_oracle(n: u32, r: f64) -> f64 {
        let m = 2000;
        let h = PI / m as f64;
        let mut s = 0.0;
        for i in 0..=m {
            let t = i as f64 * h;
            let w = if i == 0 || i == m { 0.5 } else { 1.0 };
            s += w * (f64::from(n) * t - r * t.sin()).cos();
        }
        s * h / PI
    }

    #[test]
    fn trivial_values() {
        assert_eq!(classical_bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(classical_bessel_j(1.0, 0.0).unwrap(), 0.0);
        assert!(classical_bessel_j(0.0, -1.0).is_err());
        assert!(classical_bessel_j(-0.5, 1.0).is_err());
    }

    #[test]
    fn first_zero_of_j0() {
        // bisection on the series for the first zero, frozen
        let z = 2.404825557695773;
        assert!(classical_bessel_j(0.0, z).unwrap().abs() < 1e-10);
        let (mut lo, mut hi) = (2.0, 3.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if bessel_j_series(0.0, mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - z).abs() < 1e-14);
    }

    #[test]
    fn integer_orders_match_bessel_integral() {
        for n in 0..4u32 {
            for i in 0..=250 {
                let r = 0.2 * i as f64;
                let got = classical_bessel_j(f64::from(n), r).unwrap();
                let want = bessel_integer_oracle(n, r);
                assert!((got - want).abs() < 1e-11, "n={n} r={r}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn half_orders_match_closed_forms() {
        for i in 1..=200 {
            let r = 0.25 * i as f64;
            let j_half = (2.0 / (PI * r)).sqrt() * r.sin();
            let j_3half = (2.0 / (PI * r)).sqrt() * (r.sin() / r - r.cos());
            assert!((classical_bessel_j(0.5, r).unwrap() - j_half).abs() < 1e-11);
            assert!((classical_bessel_j(1.5, r).unwrap() - j_3half).abs() < 1e-11);
        }
    }

    #[test]
    fn series_and_asymptotic_agree_in_overlap() {
        for omega in [0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
            for i in 0..=40 {
                let r = 18.0 + 0.3 * i as f64;
                let s = bessel_j_series(omega, r);
                let a = bessel_j_asymptotic(omega, r);
                assert!((s - a).abs() < 1e-9, "omega={omega} r={r}: {s} vs {a}");
            }
        }
    }

    #[test]
    fn derivative_identity_r_j1() {
        use crate::numkernel::diff::{central_diff, DiffSpec};
        let spec = DiffSpec::new(1e-3, 2).unwrap();
        for i in 1..=60 {
            let r = 0.5 * i as f64;
            let d = central_diff(|t| t * classical_bessel_j(1.0, t).unwrap(), r, &spec);
            let rhs = r * classical_bessel_j(0.0, r).unwrap();
            assert!((d - rhs).abs() < 1e-8, "r={r}: {d} vs {rhs}");
        }
    }
}
