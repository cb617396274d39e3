//! Upper bounds on `Y(m, k)` and the preheart configuration count.
//!
//! Exact evaluations use arbitrary-precision rationals; the `ln` variants
//! stay finite for any size through `ln Γ`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

use crate::{Error, Result};

/// `C = 441 e^3 / 2`, the constant of the small-excess bound.
pub fn enumeration_constant() -> f64 {
    441.0 * 3f64.exp() / 2.0
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn ln_factorial(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Ear-decomposition bound `(m+k)^k m^{2k} (m-1)! / k!`, exactly.
/// `k = 0` gives `(m-1)!`.
pub fn ear_bound(m: u64, k: u64) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::param("m must be at least 1"));
    }
    let k32 = u32::try_from(k).map_err(|_| Error::param("k too large"))?;
    let num = BigUint::from(m + k).pow(k32) * BigUint::from(m).pow(2 * k32) * factorial(m - 1);
    Ok(BigRational::new(BigInt::from(num), BigInt::from(factorial(k))))
}

/// Natural log of [`ear_bound`].
pub fn ear_bound_ln(m: u64, k: u64) -> f64 {
    let (mf, kf) = (m as f64, k as f64);
    let first = if k == 0 { 0.0 } else { kf * (mf + kf).ln() + 2.0 * kf * mf.ln() };
    first + ln_factorial(m - 1) - ln_factorial(k)
}

/// The small-excess bound `C m! m^{3k-1} / (2k-1)!`, defined for
/// `1 <= k <= sqrt(m)/3`.
#[derive(Clone, Debug, PartialEq)]
pub enum RefinedBound {
    InDomain {
        /// `m! m^{3k-1} / (2k-1)!` exactly; the bound is this times `C`.
        rational_part: BigRational,
        value: f64,
        ln_value: f64,
    },
    OutOfDomain,
}

impl RefinedBound {
    pub fn value(&self) -> Option<f64> {
        match self {
            RefinedBound::InDomain { value, .. } => Some(*value),
            RefinedBound::OutOfDomain => None,
        }
    }

    pub fn ln_value(&self) -> Option<f64> {
        match self {
            RefinedBound::InDomain { ln_value, .. } => Some(*ln_value),
            RefinedBound::OutOfDomain => None,
        }
    }

    pub fn in_domain(&self) -> bool {
        matches!(self, RefinedBound::InDomain { .. })
    }
}

/// `k <= sqrt(m)/3` is checked as `9k^2 <= m` to stay exact.
pub fn refined_bound(m: u64, k: u64) -> RefinedBound {
    if k == 0 || 9 * k * k > m {
        return RefinedBound::OutOfDomain;
    }
    let ln_value = enumeration_constant().ln() + ln_factorial(m) + (3 * k - 1) as f64 * (m as f64).ln()
        - ln_factorial(2 * k - 1);
    // The rational part is only materialized when it is of modest size.
    let rational_part = if m <= 20_000 {
        let num = factorial(m) * BigUint::from(m).pow((3 * k - 1) as u32);
        BigRational::new(BigInt::from(num), BigInt::from(factorial(2 * k - 1)))
    } else {
        BigRational::zero()
    };
    let value = if ln_value < 709.0 { ln_value.exp() } else { f64::INFINITY };
    RefinedBound::InDomain { rational_part, value, ln_value }
}

/// Number of preheart configurations for a degree sequence with `m`
/// vertices, `m_prime` heart vertices and excess `k`:
/// `(m' + k)/(m + k) * (m + k)!`.
pub fn preheart_count(m: u64, m_prime: u64, k: u64) -> Result<BigUint> {
    if k < 1 {
        return Err(Error::param("k must be at least 1"));
    }
    if m_prime > m.min(2 * k) {
        return Err(Error::param(format!("m' = {m_prime} exceeds min(m, 2k) = {}", m.min(2 * k))));
    }
    let numerator = BigUint::from(m_prime + k) * factorial(m + k);
    let (q, r) = numerator.div_rem(&BigUint::from(m + k));
    if !r.is_zero() {
        return Err(Error::Internal(format!("preheart count not integral for ({m}, {m_prime}, {k})")));
    }
    Ok(q)
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    (x >> shift).to_f64().expect("fits in f64").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational of any size.
pub fn ln_rational(r: &BigRational) -> f64 {
    ln_big(r.numer()) - ln_big(r.denom())
}

/// Lossy conversion used for reporting; `inf` past `f64` range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(r: &BigRational) -> BigInt {
        assert!(r.is_integer());
        r.to_integer()
    }

    #[test]
    fn ear_bound_arithmetic() {
        assert_eq!(int(&ear_bound(3, 0).unwrap()), BigInt::from(2));
        assert_eq!(int(&ear_bound(2, 1).unwrap()), BigInt::from(12));
        assert_eq!(int(&ear_bound(3, 1).unwrap()), BigInt::from(72));
        // Non-integral case: 5^3 2^6 / 3! = 4000/3.
        assert_eq!(ear_bound(2, 3).unwrap(), BigRational::new(4000.into(), 3.into()));
    }

    #[test]
    fn ear_bound_log_matches_exact() {
        for (m, k) in [(3, 1), (10, 4), (50, 7), (200, 30)] {
            let exact = ear_bound(m, k).unwrap();
            let ln_exact = ln_rational(&exact);
            let ln = ear_bound_ln(m, k);
            assert!((ln - ln_exact).abs() < 1e-9 * ln.abs().max(1.0), "({m},{k}): {ln} vs {ln_exact}");
        }
        assert!(ear_bound_ln(10_000, 1_000).is_finite());
    }

    #[test]
    fn refined_bound_values() {
        let c = enumeration_constant();
        let v = refined_bound(9, 1).value().unwrap();
        let expected = c * 362_880.0 * 81.0;
        assert!((v / expected - 1.0).abs() < 1e-12);
        assert!((v - 1.3018e11).abs() / 1.3018e11 < 1e-4);
        assert_eq!(refined_bound(4, 1), RefinedBound::OutOfDomain);
        assert_eq!(refined_bound(100, 0), RefinedBound::OutOfDomain);
        assert!(refined_bound(36, 2).in_domain());
        assert!(!refined_bound(35, 2).in_domain());
        assert!(refined_bound(1_000_000, 300).ln_value().unwrap().is_finite());
    }

    #[test]
    fn refined_versus_ear() {
        // At k = 1 the refined bound exceeds the ear bound by ~C m/(m+1).
        let refined = refined_bound(16, 1).value().unwrap();
        let ear = rational_to_f64(&ear_bound(16, 1).unwrap());
        assert!(refined > ear);
        let ratio = refined / ear;
        assert!((ratio - enumeration_constant() * 16.0 / 17.0).abs() < 1e-6 * ratio);
        // For larger excess the 1/(2k-1)! factor wins.
        let refined = refined_bound(900, 10).ln_value().unwrap();
        assert!(refined < ear_bound_ln(900, 10));
    }

    #[test]
    fn preheart_count_values() {
        assert_eq!(preheart_count(3, 2, 1).unwrap(), BigUint::from(18u32));
        assert_eq!(preheart_count(4, 2, 1).unwrap(), BigUint::from(72u32));
        for k in 1..6 {
            for m in 1..=2 * k {
                assert_eq!(preheart_count(m, m, k).unwrap(), factorial(m + k));
            }
        }
        assert!(preheart_count(5, 3, 1).is_err());
        assert!(preheart_count(3, 1, 0).is_err());
    }
}
