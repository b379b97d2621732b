use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{big_to_rational, binomial_int, Rational};

/// Bernoulli polynomials `B_0(x), ..., B_max(x)` with
/// `t e^{xt} / (e^t - 1) = sum_n B_n(x) t^n / n!`.
///
/// The table is filled once on construction and never mutated, so it can be
/// shared freely between threads.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    numbers: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new(max: usize) -> Self {
        // B_0 = 1, sum_{k<m+1} binom(m+1, k) B_k = 0
        let mut numbers: Vec<Rational> = Vec::with_capacity(max + 1);
        numbers.push(Rational::one());
        for m in 1..=max {
            let mut acc = Rational::zero();
            for (k, b) in numbers.iter().enumerate() {
                acc += big_to_rational(binomial_int(m as u64 + 1, k as u64)) * b;
            }
            numbers.push(-acc / Rational::from_integer((m as i64 + 1).into()));
        }
        BernoulliTable { numbers }
    }

    pub fn max_degree(&self) -> usize {
        self.numbers.len() - 1
    }

    /// `B_n = B_n(0)`. Panics if `n` exceeds the table.
    pub fn number(&self, n: usize) -> &Rational {
        &self.numbers[n]
    }

    /// Coefficients of `B_n(x)` in increasing powers of `x`.
    pub fn poly(&self, n: usize) -> Vec<Rational> {
        (0..=n)
            .map(|j| big_to_rational(binomial_int(n as u64, j as u64)) * &self.numbers[n - j])
            .collect()
    }

    pub fn eval(&self, n: usize, x: &Rational) -> Rational {
        // Horner on the coefficient list
        self.poly(n)
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

/// `B_n(x)`.
pub fn bernoulli_poly_at(n: usize, x: &Rational) -> Rational {
    BernoulliTable::new(n).eval(n, x)
}

/// Zeta-regularized `sum_{d >= 1} p(d)` for `p = sum_k coeffs[k] d^k`,
/// using `sum d^k = zeta(-k) = -B_{k+1}(1)/(k+1)`.
pub fn zeta_reg_sum(coeffs: &[Rational]) -> Rational {
    if coeffs.is_empty() {
        return Rational::zero();
    }
    let table = BernoulliTable::new(coeffs.len());
    let one = Rational::one();
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let z = -table.eval(k + 1, &one) / Rational::from_integer((k as i64 + 1).into());
            c * z
        })
        .fold(Rational::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorial, int, rat};
    use proptest::prelude::*;

    // B_n(x) from the generating function by power-series division:
    // (e^t - 1)/t = sum t^k/(k+1)!, and t e^{xt}/(e^t-1) = e^{xt} / that.
    fn oracle(n: usize, x: &Rational) -> Rational {
        let den: Vec<Rational> = (0..=n)
            .map(|k| Rational::new(1.into(), factorial(k as u64 + 1)))
            .collect();
        let num: Vec<Rational> = (0..=n)
            .map(|k| num_traits::pow(x.clone(), k) / big_to_rational(factorial(k as u64)))
            .collect();
        let mut q: Vec<Rational> = Vec::new();
        for k in 0..=n {
            let mut s = num[k].clone();
            for j in 1..=k {
                s -= &den[j] * &q[k - j];
            }
            q.push(s);
        }
        &q[n] * big_to_rational(factorial(n as u64))
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli_poly_at(0, &rat(7, 3)), int(1));
        assert_eq!(bernoulli_poly_at(2, &int(1)), rat(1, 6));
        assert_eq!(bernoulli_poly_at(1, &int(0)), rat(-1, 2));
        assert_eq!(bernoulli_poly_at(1, &int(1)), rat(1, 2));
        let t = BernoulliTable::new(12);
        assert_eq!(t.number(12), &rat(-691, 2730));
        assert_eq!(t.number(7), &int(0));
    }

    #[test]
    fn regularized_sums() {
        assert_eq!(zeta_reg_sum(&[int(0), int(1)]), rat(-1, 12));
        assert_eq!(zeta_reg_sum(&[]), int(0));
        assert_eq!(zeta_reg_sum(&[int(0)]), int(0));
        assert_eq!(zeta_reg_sum(&[int(1)]), rat(-1, 2));
        assert_eq!(zeta_reg_sum(&[int(0), int(0), int(1)]), int(0));
        assert_eq!(zeta_reg_sum(&[int(0), int(0), int(0), int(1)]), rat(1, 120));
    }

    proptest! {
        #[test]
        fn matches_generating_function(n in 0usize..12, p in -9i64..9, q in 1i64..6) {
            let x = rat(p, q);
            prop_assert_eq!(bernoulli_poly_at(n, &x), oracle(n, &x));
        }

        #[test]
        fn regularization_is_linear(a in proptest::collection::vec(-5i64..5, 0..5),
                                    b in proptest::collection::vec(-5i64..5, 0..5),
                                    k in -3i64..4) {
            let len = a.len().max(b.len());
            let get = |v: &[i64], i: usize| v.get(i).map(|&x| int(x)).unwrap_or_else(|| int(0));
            let sum: Vec<Rational> = (0..len).map(|i| get(&a, i) + int(k) * get(&b, i)).collect();
            let ra: Vec<Rational> = a.iter().map(|&x| int(x)).collect();
            let rb: Vec<Rational> = b.iter().map(|&x| int(x)).collect();
            prop_assert_eq!(zeta_reg_sum(&sum), zeta_reg_sum(&ra) + int(k) * zeta_reg_sum(&rb));
        }
    }
}
