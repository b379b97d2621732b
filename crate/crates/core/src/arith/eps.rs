use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Polynomial in a single positive infinitesimal `e` with rational coefficients.
///
/// Ordered lexicographically on the coefficients of `e^0, e^1, e^2, ...`, which
/// is the order of the values at every sufficiently small positive `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EpsPoly {
    // strictly increasing exponents, no zero coefficients
    terms: Vec<(u32, Rational)>,
}

impl EpsPoly {
    pub fn zero() -> Self {
        EpsPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The infinitesimal `e` itself.
    pub fn eps() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: u32, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            EpsPoly {
                terms: alloc::vec![(exp, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut v: Vec<(u32, Rational)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(u32, Rational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        EpsPoly { terms: out }
    }

    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.terms
            .iter()
            .find(|t| t.0 == exp)
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value if no positive power of `e` occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn signum(&self) -> Ordering {
        match self.terms.first() {
            None => Ordering::Equal,
            Some((_, c)) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        EpsPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Divides by a nonzero rational.
    pub fn div_rational(&self, k: &Rational) -> Self {
        self.scale(&k.recip())
    }

    /// Evaluates at a concrete rational value of `e`.
    pub fn eval(&self, e: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(x, c)| c * num_traits::pow(e.clone(), *x as usize))
            .fold(Rational::zero(), |a, b| a + b)
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sgn = |c: &Rational| if negate_other { -c.clone() } else { c.clone() };
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, sgn(&b[j].1)));
                j += 1;
            } else {
                let c = &a[i].1 + sgn(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        EpsPoly { terms: out }
    }
}

impl Ord for EpsPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for EpsPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on eps-polynomials; `e` is a positive infinitesimal.
pub fn eps_compare(a: &EpsPoly, b: &EpsPoly) -> Ordering {
    a.cmp(b)
}

impl<'a> Add<&'a EpsPoly> for &'a EpsPoly {
    type Output = EpsPoly;
    fn add(self, rhs: &'a EpsPoly) -> EpsPoly {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a EpsPoly> for &'a EpsPoly {
    type Output = EpsPoly;
    fn sub(self, rhs: &'a EpsPoly) -> EpsPoly {
        self.combine(rhs, true)
    }
}

impl<'a> Mul<&'a EpsPoly> for &'a EpsPoly {
    type Output = EpsPoly;
    fn mul(self, rhs: &'a EpsPoly) -> EpsPoly {
        EpsPoly::from_terms(
            self.terms
                .iter()
                .flat_map(|(e1, c1)| rhs.terms.iter().map(move |(e2, c2)| (e1 + e2, c1 * c2))),
        )
    }
}

impl Add for EpsPoly {
    type Output = EpsPoly;
    fn add(self, rhs: EpsPoly) -> EpsPoly {
        &self + &rhs
    }
}

impl Sub for EpsPoly {
    type Output = EpsPoly;
    fn sub(self, rhs: EpsPoly) -> EpsPoly {
        &self - &rhs
    }
}

impl Mul for EpsPoly {
    type Output = EpsPoly;
    fn mul(self, rhs: EpsPoly) -> EpsPoly {
        &self * &rhs
    }
}

impl Neg for EpsPoly {
    type Output = EpsPoly;
    fn neg(self) -> EpsPoly {
        self.scale(&-Rational::one())
    }
}

impl From<Rational> for EpsPoly {
    fn from(c: Rational) -> Self {
        EpsPoly::constant(c)
    }
}

impl fmt::Display for EpsPoly {
    /// Writes the literal syntax accepted by `FromStr`, e.g. `1-e^2` or `-2/3+1/3*e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "e")?,
                (_, false) => write!(f, "{a}*e")?,
            }
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for EpsPoly {
    type Err = Error;

    /// Parses sums of terms `c`, `c*e`, `c*e^k`, `e^k`, with `c` a rational `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse(s.to_string()));
        }
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = src.as_bytes();
        for (i, ch) in src.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && bytes[i - 1] != b'^' {
                pieces.push((negative, &src[start..i]));
                negative = ch == '-';
                start = i + 1;
            } else if (ch == '+' || ch == '-') && i == 0 {
                negative = ch == '-';
                start = 1;
            }
        }
        pieces.push((negative, &src[start..]));

        let mut terms = Vec::new();
        for (neg, piece) in pieces {
            let bad = || Error::Parse(s.to_string());
            if piece.is_empty() {
                return Err(bad());
            }
            let (coef, exp) = match piece.find('e') {
                None => (parse_rational(piece)?, 0u32),
                Some(pos) => {
                    let head = piece[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() {
                        Rational::one()
                    } else {
                        parse_rational(head)?
                    };
                    let tail = &piece[pos + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<u32>()
                            .map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            terms.push((exp, if neg { -coef } else { coef }));
        }
        Ok(EpsPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn e(s: &str) -> EpsPoly {
        s.parse().unwrap()
    }

    #[test]
    fn infinitesimal_order() {
        assert!(e("e") > e("e^2"));
        assert!(e("1-e") < e("1"));
        assert!(e("0") < e("e"));
        assert!(e("-e^5") < e("0"));
        assert!(e("1/3") > e("1/3-e^4"));
    }

    #[test]
    fn literals_round_trip() {
        for s in [
            "0",
            "1-e",
            "1-e^2",
            "-2/3+1/3*e+1/3*e^2",
            "e",
            "-e^3",
            "1/3",
        ] {
            assert_eq!(e(s).to_string(), s);
        }
        assert_eq!(e("1 - e + e"), EpsPoly::one());
        assert_eq!(e("2e^2"), EpsPoly::monomial(2, int(2)));
        assert!("1-".parse::<EpsPoly>().is_err());
        assert!("e^x".parse::<EpsPoly>().is_err());
    }

    #[test]
    fn arithmetic() {
        let p = e("1-e");
        let q = e("1+e");
        assert_eq!(&p * &q, e("1-e^2"));
        assert_eq!(&p + &q, e("2"));
        assert_eq!(p.scale(&rat(1, 2)), e("1/2-1/2*e"));
        assert_eq!(e("2-e").as_constant(), None);
        assert_eq!(e("3/4").as_constant(), Some(rat(3, 4)));
    }

    fn arb_eps() -> impl Strategy<Value = EpsPoly> {
        proptest::collection::vec((0u32..4, -5i64..5, 1i64..4), 0..4)
            .prop_map(|v| EpsPoly::from_terms(v.into_iter().map(|(x, n, d)| (x, rat(n, d)))))
    }

    proptest! {
        #[test]
        fn order_is_total_and_translation_invariant(a in arb_eps(), b in arb_eps(), c in arb_eps()) {
            let ab = a.cmp(&b);
            prop_assert_eq!(ab, b.cmp(&a).reverse());
            prop_assert_eq!((&a + &c).cmp(&(&b + &c)), ab);
        }

        #[test]
        fn order_compatible_with_positive_scaling(a in arb_eps(), b in arb_eps(), k in 1i64..7, d in 1i64..5) {
            let q = rat(k, d);
            prop_assert_eq!(a.scale(&q).cmp(&b.scale(&q)), a.cmp(&b));
        }

        #[test]
        fn order_matches_small_numeric_values(a in arb_eps(), b in arb_eps()) {
            // coefficients are bounded by 5 and exponents by 3, so e = 1/10^4 is small enough
            let small = rat(1, 10_000);
            let ord = a.cmp(&b);
            prop_assert_eq!(a.eval(&small).cmp(&b.eval(&small)), ord);
        }
    }
}
