//! Shells `{n : |n|_p^p = s}` and their distorted angles.
//!
//! For `p = 2/q` an integer `a` contributes `a^p = v·τ^{1/k}`, where
//! `k = q/2, e = 1` for even `q`, `k = q, e = 2` for odd `q`, and
//! `a^e = τ·v^k` with `τ` free of `k`-th powers. Roots `τ^{1/k}` of distinct
//! `k`-th-power-free integers are linearly independent over ℚ, so the map
//! `τ ↦ coefficient` identifies a shell value exactly.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{lattice_angle, LatticePoint, PExponent};
use crate::numkernel::DoubleWord;

/// Exact identity of a shell value `s = Σ c_τ · τ^{1/k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShellKey {
    k: u32,
    /// `(τ, c_τ)` sorted by `τ`, all `c_τ > 0`
    terms: Vec<(u64, u64)>,
}

impl ShellKey {
    /// Key of `|a|^p + |b|^p`.
    pub fn of_pair(p: PExponent, a: u64, b: u64) -> Self {
        let (k, e) = root_shape(p);
        let mut terms = Vec::with_capacity(2);
        for x in [a, b] {
            if x > 0 {
                let (tau, v) = decompose(x, k, e);
                push_term(&mut terms, tau, v);
            }
        }
        terms.sort_unstable();
        Self { k, terms }
    }

    fn single(k: u32, tau: u64, c: u64) -> Self {
        Self {
            k,
            terms: vec![(tau, c)],
        }
    }

    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }

    /// True when `s` is an integer.
    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|&(tau, _)| tau == 1)
    }

    pub fn value_dw(&self) -> DoubleWord {
        let mut s = DoubleWord::ZERO;
        for &(tau, c) in &self.terms {
            s += kth_root_dw(tau as f64, self.k).mul_f64(c as f64);
        }
        s
    }

    pub fn value(&self) -> f64 {
        self.value_dw().to_f64()
    }
}

fn push_term(terms: &mut Vec<(u64, u64)>, tau: u64, v: u64) {
    match terms.iter_mut().find(|t| t.0 == tau) {
        Some(t) => t.1 += v,
        None => terms.push((tau, v)),
    }
}

fn root_shape(p: PExponent) -> (u32, u32) {
    let q = p.q();
    if q.is_multiple_of(2) {
        (q / 2, 1)
    } else {
        (q, 2)
    }
}

/// Split `x^e = τ·v^k` with `τ` free of `k`-th powers.
fn decompose(x: u64, k: u32, e: u32) -> (u64, u64) {
    let mut tau = 1u64;
    let mut v = 1u64;
    let mut rest = x;
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut f = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                f += 1;
            }
            accumulate(&mut tau, &mut v, d, f * e, k);
        }
        d += 1;
    }
    if rest > 1 {
        accumulate(&mut tau, &mut v, rest, e, k);
    }
    (tau, v)
}

fn accumulate(tau: &mut u64, v: &mut u64, prime: u64, exp: u32, k: u32) {
    *v *= prime.pow(exp / k);
    *tau *= prime.pow(exp % k);
}

/// Decompositions of every `a ≤ limit`, via a smallest-prime-factor sieve.
struct RootTable {
    tau: Vec<u64>,
    v: Vec<u64>,
}

impl RootTable {
    fn new(limit: usize, k: u32, e: u32) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        let mut tau = vec![1u64; limit + 1];
        let mut v = vec![1u64; limit + 1];
        if limit >= 1 {
            v[0] = 0;
        }
        for a in 2..=limit {
            let (mut t, mut w) = (1u64, 1u64);
            let mut rest = a;
            while rest > 1 {
                let pr = spf[rest] as usize;
                let mut f = 0;
                while rest % pr == 0 {
                    rest /= pr;
                    f += 1;
                }
                accumulate(&mut t, &mut w, pr as u64, f * e, k);
            }
            tau[a] = t;
            v[a] = w;
        }
        Self { tau, v }
    }
}

/// `τ^{1/k}` in double-word precision.
fn kth_root_dw(tau: f64, k: u32) -> DoubleWord {
    if k == 1 || tau == 1.0 {
        return DoubleWord::from_f64(tau);
    }
    let target = DoubleWord::from_f64(tau);
    let mut y = DoubleWord::from_f64(tau.powf(1.0 / f64::from(k)));
    for _ in 0..2 {
        let yk1 = y.powi(k - 1);
        y = y - (yk1 * y - target) / yk1.mul_f64(f64::from(k));
    }
    y
}

fn cmp_dw(a: DoubleWord, b: DoubleWord) -> Ordering {
    let d = (a - b).hi;
    if d < 0.0 {
        Ordering::Less
    } else if d > 0.0 {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// `4⌊s^{1/p}⌋`, exact for integer-type keys and single-root keys.
pub fn shell_bound(p: PExponent, key: &ShellKey) -> u64 {
    let (k, e) = root_shape(p);
    if let [(tau, c)] = key.terms[..] {
        // s^{1/p} = (c^k τ)^{1/e}
        let n = u128::from(c).pow(k) * u128::from(tau);
        let m = if e == 1 { n } else { isqrt(n) };
        return 4 * m as u64;
    }
    // several independent roots: s^{1/p} is irrational, an f64 floor is safe
    4 * p.pow_inv_p(key.value()).floor() as u64
}

fn isqrt(n: u128) -> u128 {
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Canonical pair `a ≥ b ≥ 0` and the number of lattice points it stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPair {
    pub a: u64,
    pub b: u64,
    pub multiplicity: u32,
}

impl CanonicalPair {
    fn new(a: u64, b: u64) -> Self {
        let multiplicity = match (a, b) {
            (_, 0) => 4,
            _ if a == b => 4,
            _ => 8,
        };
        Self { a, b, multiplicity }
    }

    /// All lattice points `(±a, ±b), (±b, ±a)`, sorted.
    pub fn points(&self) -> Vec<LatticePoint> {
        let (a, b) = (self.a as i64, self.b as i64);
        let mut pts = Vec::with_capacity(8);
        for (x, y) in [(a, b), (b, a)] {
            for sx in [-1, 1] {
                for sy in [-1, 1] {
                    pts.push(LatticePoint::new(sx * x, sy * y));
                }
            }
        }
        pts.sort_unstable();
        pts.dedup();
        pts
    }
}

/// One shell value together with its lattice points and distorted angles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Shell {
    pub s: f64,
    pub key: ShellKey,
    /// Lexicographic by `(n1, n2)`.
    pub points: Vec<LatticePoint>,
    /// Same order as `points`.
    pub angles: Vec<f64>,
    pub pairs: Vec<CanonicalPair>,
}

impl Shell {
    pub fn multiplicity(&self) -> usize {
        self.points.len()
    }

    pub fn bound(&self, p: PExponent) -> u64 {
        shell_bound(p, &self.key)
    }
}

/// All shells with `1 ≤ s ≤ s_max`, ascending in `s`.
pub fn enumerate_shells(p: PExponent, s_max: f64) -> Vec<Shell> {
    let classes = shell_classes(p, s_max);
    classes
        .into_iter()
        .map(|(key, s, pairs)| {
            let mut points: Vec<LatticePoint> = pairs.iter().flat_map(|c| c.points()).collect();
            points.sort_unstable();
            let angles = points.iter().map(|&pt| lattice_angle(pt, p)).collect();
            Shell {
                s,
                key,
                points,
                angles,
                pairs,
            }
        })
        .collect()
}

/// Shell keys, values and canonical pairs for `s ≤ s_max`, ascending in `s`.
/// Points are not materialised.
pub(crate) fn shell_classes(p: PExponent, s_max: f64) -> Vec<(ShellKey, f64, Vec<CanonicalPair>)> {
    if !(s_max >= 1.0) {
        return Vec::new();
    }
    let (k, e) = root_shape(p);
    let limit = p.pow_inv_p(s_max).floor() as usize + 1;
    let table = RootTable::new(limit, k, e);
    let s_max_dw = DoubleWord::from_f64(s_max);
    // a^p for every a, so the range test below costs one addition
    let powers: Vec<DoubleWord> = (0..=limit)
        .map(|a| kth_root_dw(table.tau[a] as f64, k).mul_f64(table.v[a] as f64))
        .collect();
    let slack = 1e-12 * s_max;
    let mut classes: HashMap<[(u64, u64); 2], Vec<CanonicalPair>> = HashMap::new();
    for a in 1..=limit {
        let (ta, va) = (table.tau[a], table.v[a]);
        for b in 0..=a {
            if (powers[a] + powers[b] - s_max_dw).hi > slack {
                break;
            }
            let (tb, vb) = (table.tau[b], table.v[b]);
            let terms = if b == 0 || ta == tb {
                [(ta, va + vb), (0, 0)]
            } else if ta < tb {
                [(ta, va), (tb, vb)]
            } else {
                [(tb, vb), (ta, va)]
            };
            classes
                .entry(terms)
                .or_default()
                .push(CanonicalPair::new(a as u64, b as u64));
        }
    }
    let classes = classes.into_iter().filter_map(|(terms, pairs)| {
        let key = ShellKey {
            k,
            terms: terms.into_iter().filter(|t| t.1 > 0).collect(),
        };
        (cmp_dw(key.value_dw(), s_max_dw) != Ordering::Greater).then_some((key, pairs))
    });
    let mut out: Vec<_> = classes
        .map(|(key, mut pairs)| {
            pairs.sort_unstable_by_key(|c| (c.a, c.b));
            let v = key.value_dw();
            (key, v, pairs)
        })
        .collect();
    out.sort_by(|x, y| cmp_dw(x.1, y.1).then_with(|| x.0.cmp(&y.0)));
    out.into_iter().map(|(k, v, pairs)| (k, v.to_f64(), pairs)).collect()
}

/// Summary of a bound check on every shell up to some `s_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShellCensus {
    pub p: PExponent,
    pub s_max: f64,
    /// Single-root shells counted exactly.
    pub shells_checked: u64,
    /// Largest `multiplicity / bound` seen.
    pub max_ratio: f64,
    /// `(s, multiplicity, bound)` for every shell breaking the bound.
    pub violations: Vec<(f64, u64, u64)>,
    /// Bound at `s = 2`. Shells whose key has two roots come from a single
    /// canonical pair with both entries nonzero, hence have at most 8 points
    /// and `s ≥ 2`.
    pub two_root_min_bound: u64,
}

impl ShellCensus {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.two_root_min_bound >= 8
    }
}

/// Checks `#points ≤ 4⌊s^{1/p}⌋` on every shell `s ≤ s_max` without listing
/// the lattice points.
///
/// Shells with one root class `τ` are counted by convolving the admissible
/// coefficients of that class; this is what makes `s_max = 1000` feasible
/// for `q = 4`, where the points themselves number in the trillions.
pub fn shell_bound_census(p: PExponent, s_max: f64) -> ShellCensus {
    let (k, e) = root_shape(p);
    let mut census = ShellCensus {
        p,
        s_max,
        shells_checked: 0,
        max_ratio: 0.0,
        violations: Vec::new(),
        two_root_min_bound: if k == 1 { 8 } else { 4 * p.pow_inv_p(2.0).floor() as u64 },
    };
    if !(s_max >= 1.0) {
        return census;
    }
    let limit = p.pow_inv_p(s_max).floor() as usize + 1;
    let table = RootTable::new(limit, k, e);
    let s_max_dw = DoubleWord::from_f64(s_max);

    let mut families: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for a in 1..=limit {
        families.entry(table.tau[a]).or_default().push((table.v[a], a as u64));
    }
    for (tau, mut members) in families {
        let root = kth_root_dw(tau as f64, k);
        let c_max = (s_max / root.to_f64()).floor() as u64 + 1;
        members.retain(|&(v, _)| v <= c_max);
        members.sort_unstable();
        // counts[c] = points with key {τ: c}
        let mut counts = vec![0u64; c_max as usize + 1];
        let with_zero: Vec<(u64, u64)> = std::iter::once((0, 0)).chain(members.iter().copied()).collect();
        for &(v1, a1) in &with_zero {
            for &(v2, a2) in &with_zero {
                let c = v1 + v2;
                if c == 0 {
                    continue;
                }
                if c > c_max {
                    break;
                }
                let m1 = if a1 == 0 { 1 } else { 2 };
                let m2 = if a2 == 0 { 1 } else { 2 };
                counts[c as usize] += m1 * m2;
            }
        }
        for (c, &mult) in counts.iter().enumerate() {
            if mult == 0 {
                continue;
            }
            let key = ShellKey::single(k, tau, c as u64);
            if cmp_dw(key.value_dw(), s_max_dw) == Ordering::Greater {
                continue;
            }
            let bound = shell_bound(p, &key);
            census.shells_checked += 1;
            census.max_ratio = census.max_ratio.max(mult as f64 / bound as f64);
            if mult > bound {
                census.violations.push((key.value(), mult, bound));
            }
        }
    }
    census
}

/// `R(k) = #{n ∈ ℤ² : n1² + n2² = k} = 4(d₁(k) − d₃(k))`.
pub fn r2_function(k: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    let (mut d1, mut d3) = (0u64, 0u64);
    let mut d = 1u64;
    while d * d <= k {
        if k.is_multiple_of(d) {
            for x in [d, k / d] {
                match x % 4 {
                    1 => d1 += 1,
                    3 => d3 += 1,
                    _ => {}
                }
            }
            if d * d == k {
                // counted twice above
                match d % 4 {
                    1 => d1 -= 1,
                    3 => d3 -= 1,
                    _ => {}
                }
            }
        }
        d += 1;
    }
    4 * (d1 - d3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn all_p() -> [PExponent; 4] {
        [1, 2, 3, 4].map(|q| PExponent::new(q).unwrap())
    }

    fn brute_shell(p: PExponent, s: f64, tol: f64) -> usize {
        let m = p.pow_inv_p(s).ceil() as i64 + 1;
        let mut c = 0;
        for a in -m..=m {
            for b in -m..=m {
                let v = p.pow_p(a.abs() as f64) + p.pow_p(b.abs() as f64);
                if (v - s).abs() <= tol * s {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn circle_unit_shell() {
        let shells = enumerate_shells(PExponent::CIRCLE, 1.0);
        assert_eq!(shells.len(), 1);
        assert_eq!(shells[0].s, 1.0);
        let mut angles = shells[0].angles.clone();
        angles.sort_by(f64::total_cmp);
        assert_eq!(angles, vec![0.0, 0.5 * PI, PI, 1.5 * PI]);
    }

    #[test]
    fn circle_skips_three() {
        let shells = enumerate_shells(PExponent::CIRCLE, 3.5);
        let s: Vec<f64> = shells.iter().map(|sh| sh.s).collect();
        assert_eq!(s, vec![1.0, 2.0]);
    }

    #[test]
    fn diamond_shells() {
        let shells = enumerate_shells(PExponent::DIAMOND, 2.0);
        assert_eq!(shells.len(), 2);
        assert_eq!((shells[0].s, shells[0].multiplicity()), (1.0, 4));
        assert_eq!((shells[1].s, shells[1].multiplicity()), (2.0, 8));
        assert_eq!(shells[1].bound(PExponent::DIAMOND), 8);
        let want: Vec<LatticePoint> = [(-2, 0), (-1, -1), (-1, 1), (0, -2), (0, 2), (1, -1), (1, 1), (2, 0)]
            .iter()
            .map(|&(a, b)| LatticePoint::new(a, b))
            .collect();
        assert_eq!(shells[1].points, want);
    }

    #[test]
    fn below_one_is_empty() {
        assert!(enumerate_shells(PExponent::CIRCLE, 0.5).is_empty());
        assert!(enumerate_shells(PExponent::CIRCLE, f64::NAN).is_empty());
    }

    #[test]
    fn astroid_coincidence_is_one_shell() {
        // 125^{2/3} = 25 = 27^{2/3} + 64^{2/3}
        let p = PExponent::ASTROID;
        assert_eq!(ShellKey::of_pair(p, 125, 0), ShellKey::of_pair(p, 64, 27));
        let shells = enumerate_shells(p, 25.0);
        let last = shells.last().unwrap();
        assert_eq!(last.s, 25.0);
        assert_eq!(last.pairs.len(), 2);
        assert_eq!(last.multiplicity(), 12);
        assert_eq!(last.multiplicity(), brute_shell(p, 25.0, 1e-12));
    }

    #[test]
    fn shells_partition_the_points() {
        for p in all_p() {
            let s_max = match p.q() {
                1 => 400.5,
                2 => 40.5,
                3 => 12.3,
                _ => 7.7,
            };
            let shells = enumerate_shells(p, s_max);
            let total: usize = shells.iter().map(Shell::multiplicity).sum();
            let r = p.pow_inv_p(s_max);
            let n = super::super::count_lattice_points(p, r).unwrap();
            assert_eq!(total as u64, n - 1, "{p}");
            for w in shells.windows(2) {
                assert!(w[0].s < w[1].s);
            }
            for sh in &shells {
                assert!(sh.s >= 1.0 && sh.s <= s_max);
                assert_eq!(sh.points.len(), sh.angles.len());
                assert!(sh.multiplicity() as u64 <= sh.bound(p), "{p} s={}", sh.s);
                for pt in &sh.points {
                    let v = p.pow_p(pt.n1.abs() as f64) + p.pow_p(pt.n2.abs() as f64);
                    assert!((v - sh.s).abs() <= 1e-12 * sh.s);
                }
            }
        }
    }

    #[test]
    fn circle_shell_sizes_are_r2() {
        let shells = enumerate_shells(PExponent::CIRCLE, 500.0);
        let mut by_s = std::collections::HashMap::new();
        for sh in &shells {
            by_s.insert(sh.s as u64, sh.multiplicity() as u64);
        }
        for k in 1..=500u64 {
            assert_eq!(by_s.get(&k).copied().unwrap_or(0), r2_function(k), "k={k}");
        }
    }

    #[test]
    fn r2_examples() {
        assert_eq!(r2_function(1), 4);
        assert_eq!(r2_function(3), 0);
        assert_eq!(r2_function(25), 12);
        assert_eq!(r2_function(2), 4);
        assert_eq!(r2_function(65), 16);
    }

    #[test]
    fn exact_bound_on_integer_shells() {
        // q=4: s=3 ⇒ ⌊9⌋ = 9; q=3: s=4 ⇒ ⌊8⌋ = 8
        let p4 = PExponent::new(4).unwrap();
        assert_eq!(shell_bound(p4, &ShellKey::single(2, 1, 3)), 36);
        assert_eq!(shell_bound(PExponent::ASTROID, &ShellKey::single(3, 1, 4)), 32);
        // q=3, s=2·2^{2/3}: s^{3/2} = 2^{3/2}·2 = 5.65…
        assert_eq!(shell_bound(PExponent::ASTROID, &ShellKey::single(3, 4, 2)), 20);
    }

    #[test]
    fn census_agrees_with_enumeration() {
        for p in all_p() {
            let s_max = match p.q() {
                1 => 300.0,
                2 => 30.0,
                3 => 9.0,
                _ => 6.0,
            };
            let census = shell_bound_census(p, s_max);
            assert!(census.holds(), "{p}: {:?}", census.violations);
            let single_root = enumerate_shells(p, s_max)
                .into_iter()
                .filter(|sh| sh.key.terms().len() == 1)
                .count() as u64;
            assert_eq!(census.shells_checked, single_root, "{p}");
        }
    }

    #[test]
    fn decompose_matches_sieve() {
        for (k, e) in [(1, 2), (1, 1), (3, 2), (2, 1)] {
            let table = RootTable::new(2000, k, e);
            for a in 1..=2000u64 {
                assert_eq!(decompose(a, k, e), (table.tau[a as usize], table.v[a as usize]));
            }
        }
    }
}
