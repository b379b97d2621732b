//! Exact arithmetic: rationals, the infinitesimal-ordered ring `Q[e]`,
//! Bernoulli polynomials and zeta-regularized sums.

mod bernoulli;
mod eps;

pub use bernoulli::{bernoulli_poly_at, zeta_reg_sum, BernoulliTable};
pub use eps::{eps_compare, EpsPoly};

use alloc::string::ToString;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big_to_rational(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `(-1)^e` as an `i64`.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn pow2(e: i64) -> Rational {
    let two = int(2);
    if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        num_traits::pow(two, (-e) as usize).recip()
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `1/k!`, with the convention `1/k! = 0` for negative `k`.
pub fn recip_factorial(k: i64) -> Rational {
    if k < 0 {
        Rational::zero()
    } else {
        Rational::new(BigInt::one(), factorial(k as u64))
    }
}

/// Generalized binomial coefficient `binom(n, k)` for any integer `n` and `k >= 0`;
/// zero for negative `k`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
    }
    Rational::new(num, factorial(k as u64))
}

/// Binomial coefficient as an integer; `n, k >= 0`.
pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => BigInt::from_str(s)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> alloc::string::String {
    q.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&rat(-1623, 256)), "-1623/256");
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(parse_rational("35/512").unwrap(), rat(35, 512));
        assert_eq!(parse_rational(" -6/4").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(-3, 2), int(6));
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 5), int(0));
        assert_eq!(binomial(4, -1), int(0));
        assert_eq!(recip_factorial(-2), int(0));
        assert_eq!(recip_factorial(3), rat(1, 6));
        assert_eq!(binomial_int(6, 3), BigInt::from(20));
        assert_eq!(pow2(-9), rat(1, 512));
        assert_eq!(sign(-3), -1);
    }
}
