//! Evaluation of every upper bound the theory provides, including the
//! prime-window machinery behind the general bound.
//!
//! Integral bounds are computed in big integers; only the `g`-value
//! terms are floating point, and those bounds are ceilinged before any
//! comparison against exact counts.

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frac::{Fraction, LSet};
use crate::primes::{is_prime, primes_above};
use crate::serde_util::{ser_biguint, ser_ratio_u64};

/// Exact binomial coefficient, 0 when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let mut k = k as u64;
    if k > n - k {
        k = n - k;
    }
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

/// `Σ_{j=lo}^{hi} C(n, j)`; zero when the range is empty.
pub fn binomial_sum(n: u64, lo: u64, hi: u64) -> BigUint {
    let mut acc = BigUint::zero();
    let mut j = lo;
    while j <= hi {
        acc += binomial(n, j as i64);
        j += 1;
    }
    acc
}

/// Which form of `g(t,n)` to use. The theorem statement carries a factor
/// 2 that the proof text omits; the statement is the default and the
/// proof variant stays available behind this flag.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum GFormula {
    Statement,
    Proof,
}

/// `g(t,n) = 2(2t + ln n)/ln(2t + ln n)` (theorem statement form).
pub fn g_value(t: u64, n: u64) -> f64 {
    g_value_with(t, n, GFormula::Statement)
}

/// The proof-text variant without the leading factor 2.
pub fn g_value_proof_variant(t: u64, n: u64) -> f64 {
    g_value_with(t, n, GFormula::Proof)
}

pub fn g_value_with(t: u64, n: u64, formula: GFormula) -> f64 {
    assert!(t >= 1 && n >= 2);
    let inner = 2.0 * t as f64 + (n as f64).ln();
    let base = inner / inner.ln();
    match formula {
        GFormula::Statement => 2.0 * base,
        GFormula::Proof => base,
    }
}

/// The shortest run of consecutive primes greater than `t` whose product
/// exceeds `n`.
pub fn prime_window(t: u64, n: u64) -> Vec<u64> {
    let mut window = Vec::new();
    let mut product = BigUint::one();
    let target = BigUint::from(n);
    for p in primes_above(t) {
        window.push(p);
        product *= BigUint::from(p);
        if product > target {
            break;
        }
    }
    window
}

/// The first `c1` primes greater than `t` (the windowing used when
/// `t > n - c1`).
pub fn prime_window_first(t: u64, c1: u64) -> Vec<u64> {
    primes_above(t).take(c1 as usize).collect()
}

/// Per-residue bound: `C(n,s) + C(n,i)` when `i < s`, else `C(n,s)`.
pub fn fi_bound(n: u64, s: u64, i: u64) -> BigUint {
    let mut acc = binomial(n, s as i64);
    if i < s {
        acc += binomial(n, i as i64);
    }
    acc
}

#[derive(Clone, Serialize)]
pub struct CaseB {
    pub c1: u64,
    pub bound: f64,
}

/// Everything the general bound produces, with intermediates.
#[derive(Clone, Serialize)]
pub struct Theorem1Report {
    pub n: u64,
    pub s: u64,
    pub t: u64,
    pub g_formula: GFormula,
    pub g: f64,
    pub g_proof_variant: f64,
    pub prime_window: Vec<u64>,
    /// `(Σ_{p∈P} p − |P|)·C(n,s) + |P|·Σ_{j=1}^{s−1} C(n,j)`, exact.
    #[serde(serialize_with = "ser_biguint")]
    pub exact_prime_bound: BigUint,
    /// `2 C(n,s) g² ln g + (Σ_{i=1}^{s−1} C(n,i)) g`.
    pub general_bound: f64,
    /// Present when `s ≤ n + 1 − 2g ln g`.
    pub case_a_bound: Option<f64>,
    /// Case (b) with the smallest `c1` such that `t > n − c1`.
    pub case_b: CaseB,
    /// `C(n,s)`; applies when the family is t-uniform.
    #[serde(serialize_with = "ser_biguint")]
    pub uniform_bound: BigUint,
}

fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Evaluates the general bound and both special cases for a family of
/// subsets of `[n]` with fraction set `L`.
pub fn theorem1_bound(n: u64, l: &LSet) -> Theorem1Report {
    theorem1_bound_with(n, l, GFormula::Statement)
}

pub fn theorem1_bound_with(n: u64, l: &LSet, formula: GFormula) -> Theorem1Report {
    assert!(n >= 2);
    let s = l.size() as u64;
    let t = l.t_parameter();
    let g = g_value_with(t, n, formula);
    let window = prime_window(t, n);

    let c_n_s = binomial(n, s as i64);
    let small_sum = if s >= 2 {
        binomial_sum(n, 1, s - 1)
    } else {
        BigUint::zero()
    };

    let p_sum: u64 = window.iter().sum();
    let exact = (BigUint::from(p_sum - window.len() as u64)) * &c_n_s
        + BigUint::from(window.len() as u64) * &small_sum;

    let lng = g.ln();
    let general = 2.0 * big_to_f64(&c_n_s) * g * g * lng + big_to_f64(&small_sum) * g;
    let case_a = (s as f64 <= n as f64 + 1.0 - 2.0 * g * lng)
        .then(|| 2.0 * big_to_f64(&c_n_s) * g * g * lng);
    let c1 = if t <= n { n - t + 1 } else { 1 };
    let case_b = CaseB {
        c1,
        bound: 2.0 * c1 as f64 * big_to_f64(&c_n_s) * g * lng + c1 as f64 * big_to_f64(&small_sum),
    };

    Theorem1Report {
        n,
        s,
        t,
        g_formula: formula,
        g,
        g_proof_variant: g_value_proof_variant(t, n),
        prime_window: window,
        exact_prime_bound: exact,
        general_bound: general,
        case_a_bound: case_a,
        case_b,
        uniform_bound: c_n_s,
    }
}

/// Smallest `k >= 0` with `b^k >= n`, in pure integer arithmetic.
pub fn ceil_log(b: u64, n: u64) -> u64 {
    assert!(b >= 2 && n >= 1);
    let mut k = 0;
    let mut pow = BigUint::one();
    let target = BigUint::from(n);
    while pow < target {
        pow *= BigUint::from(b);
        k += 1;
    }
    k
}

/// Singleton-`L` bound for prime `b`: `(b−1)(n+1)⌈ln n / ln b⌉ + 1`, and
/// simply `n` when `a = 0`.
pub fn theorem2_bound(n: u64, frac: Fraction) -> Result<BigUint> {
    assert!(n >= 2);
    if frac.is_zero() {
        return Ok(BigUint::from(n));
    }
    let b = frac.den();
    if !is_prime(b) {
        return Err(Error::CompositeDenominator(b));
    }
    Ok(BigUint::from(b - 1) * BigUint::from(n + 1) * BigUint::from(ceil_log(b, n)) + BigUint::one())
}

/// The large-sets threshold `α = max(1/2, (4a − b)/(2b))` for the maximum
/// fraction `a/b` in `L`. Families with all members above `αn` have at
/// most `n` sets.
pub fn theorem3_threshold(l: &LSet) -> Ratio<u64> {
    let f = l.max_fraction();
    let half = Ratio::new(1, 2);
    let (a, b) = (f.num(), f.den());
    if 4 * a > b {
        half.max(Ratio::new(4 * a - b, 2 * b))
    } else {
        half
    }
}

/// The conclusion of the large-sets bound.
pub const fn theorem3_bound(n: u64) -> u64 {
    n
}

#[derive(Clone, Serialize)]
pub struct SizeWindow {
    /// Integer cardinalities inside the closed interval, clamped to `0..=n`.
    pub sizes: Vec<u64>,
    /// Center `b n / (4(b−a))` as an exact rational.
    #[serde(serialize_with = "ser_ratio_u64")]
    pub center: Ratio<u64>,
    /// Squared radius `b² n / (16 a² δ²)` as an exact rational.
    #[serde(serialize_with = "ser_ratio_u64")]
    pub radius_sq: Ratio<u64>,
}

/// The restricted-size window
/// `[bn/(4(b−a)) − (b/(4aδ))√n, bn/(4(b−a)) + (b/(4aδ))√n]`,
/// resolved to the integer cardinalities it contains. Membership is
/// decided by exact squared comparison, never through `√n` in floats.
pub fn theorem4_window(n: u64, frac: Fraction, delta: Ratio<u64>) -> Result<SizeWindow> {
    if frac.is_zero() {
        return Err(Error::ZeroNumeratorWindow);
    }
    if delta.numer() <= delta.denom() {
        return Err(Error::DeltaNotAboveOne);
    }
    let (a, b) = (frac.num() as i128, frac.den() as i128);
    let (dp, dq) = (*delta.numer() as i128, *delta.denom() as i128);
    let center = Ratio::<i128>::new(b * n as i128, 4 * (b - a));
    let radius_sq = Ratio::<i128>::new(b * b * n as i128 * dq * dq, 16 * a * a * dp * dp);
    let inside = |x: u64| {
        let d = Ratio::<i128>::from_integer(x as i128) - center;
        d * d <= radius_sq
    };
    let sizes: Vec<u64> = (0..=n).filter(|&x| inside(x)).collect();
    Ok(SizeWindow {
        sizes,
        center: Ratio::new(
            *center.numer() as u64,
            *center.denom() as u64,
        ),
        radius_sq: Ratio::new(
            *radius_sq.numer() as u64,
            *radius_sq.denom() as u64,
        ),
    })
}

/// The bound `δ²/(δ²−1) · n` for window families, as an exact rational.
pub fn theorem4_bound(n: u64, delta: Ratio<u64>) -> Result<BigRational> {
    if delta.numer() <= delta.denom() {
        return Err(Error::DeltaNotAboveOne);
    }
    let p = BigRational::from_integer((*delta.numer()).into());
    let q = BigRational::from_integer((*delta.denom()).into());
    let d2 = &p * &p / (&q * &q);
    Ok(&d2 / (&d2 - BigRational::one()) * BigRational::from_integer(n.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(spec: &str) -> LSet {
        spec.parse().unwrap()
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), 10u32.into());
        assert_eq!(binomial(3, 5), 0u32.into());
        assert_eq!(binomial(3, -1), 0u32.into());
        assert_eq!(binomial(0, 0), 1u32.into());
        assert_eq!(
            binomial(64, 32).to_string(),
            "1832624140942590534"
        );
    }

    #[test]
    fn g_value_examples() {
        // Frozen from direct evaluation of the statement formula.
        assert!((g_value(2, 3) - 6.259927793592).abs() < 1e-9);
        assert!((g_value(1, 2) - 5.436799700335).abs() < 1e-9);
        assert!(g_value(10, 2) > g_value(1, 2));
        assert!((g_value_proof_variant(2, 3) - 3.129963896796).abs() < 1e-9);
    }

    #[test]
    fn prime_window_examples() {
        assert_eq!(prime_window(2, 10), vec![3, 5]);
        assert_eq!(prime_window(1, 1), vec![2]);
        assert_eq!(prime_window(4, 100), vec![5, 7, 11]);
        assert_eq!(prime_window_first(2, 3), vec![3, 5, 7]);
    }

    #[test]
    fn fi_bound_examples() {
        assert_eq!(fi_bound(10, 3, 1), 130u32.into());
        assert_eq!(fi_bound(10, 3, 5), 120u32.into());
        assert_eq!(fi_bound(3, 5, 1), 3u32.into());
    }

    #[test]
    fn theorem1_exact_examples() {
        let r = theorem1_bound(10, &l("1/2"));
        assert_eq!((r.s, r.t), (1, 2));
        assert_eq!(r.prime_window, vec![3, 5]);
        assert_eq!(r.exact_prime_bound, 60u32.into());

        let r = theorem1_bound(4, &l("1/2"));
        assert_eq!(r.exact_prime_bound, 24u32.into());
        assert_eq!(r.uniform_bound, binomial(4, 1));
    }

    #[test]
    fn theorem1_small_sum_empty_when_s_is_1() {
        // The Σ_{j=1}^{0} term is an empty sum.
        let r = theorem1_bound(12, &l("1/3"));
        let expect = (BigUint::from(r.prime_window.iter().sum::<u64>())
            - BigUint::from(r.prime_window.len() as u64))
            * binomial(12, 1);
        assert_eq!(r.exact_prime_bound, expect);
    }

    #[test]
    fn theorem2_examples() {
        assert_eq!(
            theorem2_bound(16, Fraction::new(1, 2).unwrap()).unwrap(),
            69u32.into()
        );
        assert_eq!(theorem2_bound(10, Fraction::zero()).unwrap(), 10u32.into());
        assert_eq!(
            theorem2_bound(9, Fraction::new(1, 3).unwrap()).unwrap(),
            41u32.into()
        );
        assert!(matches!(
            theorem2_bound(9, Fraction::new(1, 4).unwrap()),
            Err(Error::CompositeDenominator(4))
        ));
    }

    #[test]
    fn ceil_log_is_exact_at_powers() {
        assert_eq!(ceil_log(2, 16), 4);
        assert_eq!(ceil_log(3, 9), 2);
        assert_eq!(ceil_log(2, 17), 5);
        assert_eq!(ceil_log(5, 1), 0);
    }

    #[test]
    fn theorem3_examples() {
        assert_eq!(theorem3_threshold(&l("1/2")), Ratio::new(1, 2));
        assert_eq!(theorem3_threshold(&l("2/3")), Ratio::new(5, 6));
        assert_eq!(theorem3_threshold(&l("3/4")), Ratio::new(1, 1));
        assert_eq!(theorem3_threshold(&l("1/5")), Ratio::new(1, 2));
        assert_eq!(theorem3_bound(7), 7);
    }

    #[test]
    fn theorem4_examples() {
        let half = Fraction::new(1, 2).unwrap();
        let w = theorem4_window(100, half, Ratio::new(2, 1)).unwrap();
        assert_eq!(w.sizes, vec![48, 49, 50, 51, 52]);

        let w = theorem4_window(4, half, Ratio::new(2, 1)).unwrap();
        assert_eq!(w.sizes, vec![2]);

        let b = theorem4_bound(100, Ratio::new(2, 1)).unwrap();
        assert_eq!(b, BigRational::new(400.into(), 3.into()));

        let b = theorem4_bound(6, Ratio::new(1000, 1)).unwrap();
        assert_eq!(b, BigRational::new(6_000_000.into(), 999_999.into()));

        assert!(matches!(
            theorem4_window(10, Fraction::zero(), Ratio::new(2, 1)),
            Err(Error::ZeroNumeratorWindow)
        ));
        assert!(matches!(
            theorem4_bound(10, Ratio::new(1, 1)),
            Err(Error::DeltaNotAboveOne)
        ));
    }
}
