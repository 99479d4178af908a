//! Geometry of the p-circle `|x1|^p + |x2|^p = r^p` for `p = 2/q`.

mod lattice;
mod shells;

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::DoubleWord;

pub use lattice::{
    area_term, count_lattice_points, count_lattice_points_with_proximity, error_term_direct,
    ErrorTerm, LatticeCount, PROXIMITY_REL,
};
pub use shells::{
    enumerate_shells, r2_function, shell_bound, shell_bound_census, CanonicalPair, Shell,
    ShellCensus, ShellKey,
};

pub(crate) use shells::shell_classes;

/// The exponent `p`, stored through the integer `q = 2/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PExponent {
    q: u32,
}

impl PExponent {
    /// Circle.
    pub const CIRCLE: Self = Self { q: 1 };
    /// Diamond, `p = 1`.
    pub const DIAMOND: Self = Self { q: 2 };
    /// Astroid, `p = 2/3`.
    pub const ASTROID: Self = Self { q: 3 };

    pub fn new(q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::domain("q = 2/p must be a positive integer"));
        }
        Ok(Self { q })
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q
    }

    #[inline]
    pub fn p(self) -> f64 {
        2.0 / f64::from(self.q)
    }

    /// `x^p` for `x ≥ 0`.
    #[inline]
    pub fn pow_p(self, x: f64) -> f64 {
        match self.q {
            1 => x * x,
            2 => x,
            q => x.powf(2.0 / f64::from(q)),
        }
    }

    /// `x^{1/p} = x^{q/2}` for `x ≥ 0`.
    #[inline]
    pub fn pow_inv_p(self, x: f64) -> f64 {
        match self.q {
            1 => x.sqrt(),
            2 => x,
            4 => x * x,
            q => x.powf(0.5 * f64::from(q)),
        }
    }

    /// `n^p` in double-word precision, for an integer-valued `n ≥ 0`.
    pub(crate) fn pow_p_dw(self, n: f64) -> DoubleWord {
        root_of_square_dw(n, self.q)
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            1 => write!(f, "p=2"),
            2 => write!(f, "p=1"),
            q => write!(f, "p=2/{q}"),
        }
    }
}

/// `y = x^{2/q}` in double-word precision, i.e. the positive root of `y^q = x²`.
/// Exact for `q ∈ {1, 2}` when `x` is an integer below `2^26`.
pub(crate) fn root_of_square_dw(x: f64, q: u32) -> DoubleWord {
    let x = x.abs();
    match q {
        1 => DoubleWord::product(x, x),
        2 => DoubleWord::from_f64(x),
        _ if x == 0.0 => DoubleWord::ZERO,
        _ => {
            let target = DoubleWord::product(x, x);
            let mut y = DoubleWord::from_f64(x.powf(2.0 / f64::from(q)));
            // Newton on y^q - x²; the f64 seed has ~53 bits, two steps is plenty.
            for _ in 0..2 {
                let yq1 = y.powi(q - 1);
                let f = yq1 * y - target;
                y = y - f / yq1.mul_f64(f64::from(q));
            }
            y
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub n1: i64,
    pub n2: i64,
}

impl LatticePoint {
    pub const fn new(n1: i64, n2: i64) -> Self {
        Self { n1, n2 }
    }

    pub fn as_f64(self) -> [f64; 2] {
        [self.n1 as f64, self.n2 as f64]
    }
}

/// Distorted polar coordinates `(r, φ)`; `r = |x|_p` and `φ ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistortedPolar {
    pub r: f64,
    pub phi: f64,
}

/// `|x|_p`.
pub fn p_norm(x: [f64; 2], p: PExponent) -> f64 {
    let a = x[0].abs();
    let b = x[1].abs();
    match p.q() {
        1 => a.hypot(b),
        2 => a + b,
        _ => {
            let (big, small) = if a >= b { (a, b) } else { (b, a) };
            if big == 0.0 {
                return 0.0;
            }
            // factor out the larger coordinate so huge inputs do not overflow
            big * p.pow_inv_p(1.0 + p.pow_p(small / big))
        }
    }
}

/// Inverse of [`from_distorted_polar`].
pub fn to_distorted_polar(x: [f64; 2], p: PExponent) -> Result<DistortedPolar> {
    let r = p_norm(x, p);
    if r == 0.0 {
        return Err(Error::domain("the distorted angle of the origin is undefined"));
    }
    let inv_q = 1.0 / f64::from(p.q());
    let c = (x[0].abs() / r).powf(inv_q).copysign(x[0]);
    let s = (x[1].abs() / r).powf(inv_q).copysign(x[1]);
    let mut phi = s.atan2(c);
    if phi < 0.0 {
        phi += TAU;
    }
    if phi >= TAU {
        phi = 0.0;
    }
    Ok(DistortedPolar { r, phi })
}

/// `x = (sgn(cos φ) r |cos φ|^q, sgn(sin φ) r |sin φ|^q)`.
pub fn from_distorted_polar(dp: DistortedPolar, p: PExponent) -> [f64; 2] {
    let (s, c) = dp.phi.sin_cos();
    let q = p.q() as i32;
    let x1 = dp.r * c.abs().powi(q);
    let x2 = dp.r * s.abs().powi(q);
    [signed(x1, c), signed(x2, s)]
}

fn signed(mag: f64, sign_of: f64) -> f64 {
    if sign_of < 0.0 {
        -mag
    } else {
        mag
    }
}

/// Distorted angle of a nonzero lattice point, snapped to the exact value on
/// the axes and diagonals.
pub(crate) fn lattice_angle(pt: LatticePoint, p: PExponent) -> f64 {
    match (pt.n1.signum(), pt.n2.signum()) {
        (1, 0) => 0.0,
        (0, 1) => 0.5 * PI,
        (-1, 0) => PI,
        (0, -1) => 1.5 * PI,
        _ => {
            to_distorted_polar(pt.as_f64(), p)
                .expect("nonzero lattice point")
                .phi
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    fn all_p() -> [PExponent; 4] {
        [1, 2, 3, 4].map(|q| PExponent::new(q).unwrap())
    }

    #[test]
    fn exponent_basics() {
        assert!(PExponent::new(0).is_err());
        let a = PExponent::new(3).unwrap();
        assert_eq!(a, PExponent::ASTROID);
        assert!((a.p() - 2.0 / 3.0).abs() < 1e-16);
        assert_eq!(a.to_string(), "p=2/3");
        assert_eq!(PExponent::CIRCLE.to_string(), "p=2");
    }

    #[test]
    fn p_norm_examples() {
        assert_eq!(p_norm([3.0, 4.0], PExponent::CIRCLE), 5.0);
        assert_eq!(p_norm([1.0, 1.0], PExponent::DIAMOND), 2.0);
        for p in all_p() {
            assert_eq!(p_norm([1.0, 0.0], p), 1.0);
            assert_eq!(p_norm([0.0, -1.0], p), 1.0);
            assert_eq!(p_norm([0.0, 0.0], p), 0.0);
        }
        // astroid: (1,1) has |x|_p = 2^{3/2}
        let v = p_norm([1.0, 1.0], PExponent::ASTROID);
        assert!((v - 2f64.powf(1.5)).abs() < 1e-14);
    }

    #[test]
    fn polar_examples() {
        for p in all_p() {
            let dp = to_distorted_polar([1.0, 0.0], p).unwrap();
            assert_eq!((dp.r, dp.phi), (1.0, 0.0));
            let x = from_distorted_polar(DistortedPolar { r: 1.0, phi: 0.0 }, p);
            assert_eq!(x, [1.0, 0.0]);
        }
        let dp = to_distorted_polar([1.0, 1.0], PExponent::DIAMOND).unwrap();
        assert_eq!(dp.r, 2.0);
        assert!((dp.phi - FRAC_PI_4).abs() < 1e-15);
        let dp = to_distorted_polar([0.0, -2.0], PExponent::CIRCLE).unwrap();
        assert_eq!(dp.r, 2.0);
        assert!((dp.phi - 1.5 * PI).abs() < 1e-15);
        assert!(to_distorted_polar([0.0, 0.0], PExponent::CIRCLE).is_err());

        let x = from_distorted_polar(
            DistortedPolar {
                r: 1.0,
                phi: FRAC_PI_4,
            },
            PExponent::CIRCLE,
        );
        let h = 0.5f64.sqrt();
        assert!((x[0] - h).abs() < 1e-15 && (x[1] - h).abs() < 1e-15);
        let x = from_distorted_polar(
            DistortedPolar {
                r: 2.0,
                phi: FRAC_PI_4,
            },
            PExponent::DIAMOND,
        );
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn round_trip_grid() {
        for p in all_p() {
            for ri in 1..=50 {
                let r = 2.0 * ri as f64;
                for j in 0..256 {
                    let phi = TAU * j as f64 / 256.0;
                    let x = from_distorted_polar(DistortedPolar { r, phi }, p);
                    assert!((p_norm(x, p) - r).abs() <= 1e-12 * r);
                    let back = to_distorted_polar(x, p).unwrap();
                    assert!((back.r - r).abs() <= 1e-12 * r, "{p} r={r} phi={phi}");
                    let dphi = (back.phi - phi).abs();
                    assert!(dphi.min(TAU - dphi) < 1e-12, "{p} r={r} phi={phi}: {}", back.phi);
                }
            }
        }
    }

    #[test]
    fn root_of_square_is_accurate() {
        // 8^{2/3} = 4, 16^{2/4} = 4, 2^{2/3} vs its cube
        assert_eq!(root_of_square_dw(8.0, 3).to_f64(), 4.0);
        assert_eq!(root_of_square_dw(16.0, 4).to_f64(), 4.0);
        let y = root_of_square_dw(2.0, 3);
        let err = (y * y * y - DoubleWord::from_f64(4.0)).hi.abs();
        assert!(err < 1e-30, "{err}");
    }

    #[test]
    fn lattice_angles_on_axes_are_exact() {
        for p in all_p() {
            assert_eq!(lattice_angle(LatticePoint::new(3, 0), p), 0.0);
            assert_eq!(lattice_angle(LatticePoint::new(0, -2), p), 1.5 * PI);
        }
    }

    proptest! {
        #[test]
        fn image_has_requested_norm(q in 1u32..=6, r in 1e-3f64..1e3, phi in 0.0f64..TAU) {
            let p = PExponent::new(q).unwrap();
            let x = from_distorted_polar(DistortedPolar { r, phi }, p);
            prop_assert!((p_norm(x, p) - r).abs() <= 1e-12 * r);
        }
    }
}
