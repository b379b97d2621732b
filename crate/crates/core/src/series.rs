//! Multivariate Laurent series with exact rational coefficients.
//!
//! A [`MultiLaurent`] stores finitely many terms plus a description of the
//! part it does not know. For every variable `v` it records
//!
//! * `exact_to[v]`: every unknown term has, in at least one variable `v`, an
//!   exponent strictly above `exact_to[v]` (`None`: no unknown term is
//!   witnessed by `v`);
//! * `lower[v]`: a lower bound on the exponents of `v` in known and unknown
//!   terms alike (`None`: unbounded below).
//!
//! So the coefficient of a monomial is exact as soon as each of its exponents
//! is at most the corresponding `exact_to`. Every operation propagates both
//! bounds, and extraction refuses to answer outside the exact box.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, int, recip_factorial, BernoulliTable, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiLaurent {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, Rational>,
    exact_to: Vec<Option<i64>>,
    lower: Vec<Option<i64>>,
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl MultiLaurent {
    fn with_vars(vars: &[&str]) -> Self {
        MultiLaurent {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
            exact_to: vec![None; vars.len()],
            lower: vec![Some(0); vars.len()],
        }
    }

    /// The exact zero series.
    pub fn zero(vars: &[&str]) -> Self {
        Self::with_vars(vars)
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        Self::monomial(vars, &vec![0; vars.len()], c)
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The exact monomial `c * prod vars[i]^exps[i]`.
    pub fn monomial(vars: &[&str], exps: &[i64], c: Rational) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent vector length");
        let mut s = Self::with_vars(vars);
        s.lower = exps.iter().map(|&e| Some(e.min(0))).collect();
        if !c.is_zero() {
            s.terms.insert(exps.to_vec(), c);
        }
        s
    }

    /// The variable `name` as an exact series.
    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let i = index_of(vars, name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(Self::monomial(vars, &e, Rational::one()))
    }

    /// An exact Laurent polynomial from explicit terms.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, Rational)>,
    {
        let mut s = Self::with_vars(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            for (lo, x) in s.lower.iter_mut().zip(&e) {
                *lo = lo.map(|l| l.min(*x));
            }
            add_term(&mut s.terms, e, c);
        }
        s
    }

    /// A linear form as an exact polynomial.
    pub fn from_linear(vars: &[&str], form: &LinearForm) -> Result<Self> {
        let mut terms = vec![(vec![0; vars.len()], form.constant.clone())];
        for (name, c) in &form.coeffs {
            let i = index_of(vars, name)?;
            let mut e = vec![0; vars.len()];
            e[i] = 1;
            terms.push((e, c.clone()));
        }
        Ok(Self::from_terms(vars, terms))
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn exact_to(&self) -> &[Option<i64>] {
        &self.exact_to
    }

    pub fn lower_bounds(&self) -> &[Option<i64>] {
        &self.lower
    }

    /// True when no unknown part remains.
    pub fn is_exact(&self) -> bool {
        self.exact_to.iter().all(Option::is_none)
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Precondition(alloc::format!("unknown variable {name}")))
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    fn in_box(&self, e: &[i64]) -> bool {
        e.iter()
            .zip(&self.exact_to)
            .all(|(x, n)| n.is_none_or(|n| *x <= n))
    }

    fn prune(&mut self) {
        let box_ = self.exact_to.clone();
        self.terms.retain(|e, _| {
            e.iter()
                .zip(&box_)
                .all(|(x, n)| n.is_none_or(|n| *x <= n))
        });
    }

    /// Coefficient of a full monomial; errors if it is not yet determined.
    pub fn coeff(&self, exps: &[i64]) -> Result<Rational> {
        if exps.len() != self.vars.len() {
            return Err(Error::LengthMismatch {
                expected: self.vars.len(),
                found: exps.len(),
            });
        }
        for (i, (x, n)) in exps.iter().zip(&self.exact_to).enumerate() {
            if let Some(n) = n {
                if x > n {
                    return Err(Error::InsufficientTruncation {
                        variable: self.vars[i].clone(),
                        exact_to: *n,
                        needed: *x,
                    });
                }
            }
        }
        Ok(self.terms.get(exps).cloned().unwrap_or_else(Rational::zero))
    }

    /// The coefficient of `var^k`, as a series in the remaining variables.
    pub fn coefficient(&self, var: &str, k: i64) -> Result<Self> {
        let i = self.index(var)?;
        if let Some(n) = self.exact_to[i] {
            if k > n {
                return Err(Error::InsufficientTruncation {
                    variable: var.to_string(),
                    exact_to: n,
                    needed: k,
                });
            }
        }
        let drop = |v: &[Option<i64>]| {
            let mut v = v.to_vec();
            v.remove(i);
            v
        };
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut out = MultiLaurent {
            vars,
            terms: BTreeMap::new(),
            exact_to: drop(&self.exact_to),
            lower: drop(&self.lower),
        };
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e2 = e.clone();
                e2.remove(i);
                out.terms.insert(e2, c.clone());
            }
        }
        Ok(out)
    }

    /// `res_{var}`: the coefficient of `var^{-1}`.
    pub fn residue(&self, var: &str) -> Result<Self> {
        self.coefficient(var, -1)
    }

    /// For a series in no variables, its value.
    pub fn as_scalar(&self) -> Option<Rational> {
        if self.vars.is_empty() {
            Some(
                self.terms
                    .get(&Vec::new())
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    /// Forgets everything above `var^order`.
    pub fn truncate(&self, var: &str, order: i64) -> Result<Self> {
        let i = self.index(var)?;
        let mut out = self.clone();
        out.exact_to[i] = min_opt(out.exact_to[i], Some(order));
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = self.clone();
        if k.is_zero() {
            out.terms.clear();
        } else {
            for c in out.terms.values_mut() {
                *c *= k;
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = MultiLaurent {
            vars: self.vars.clone(),
            terms: self.terms.clone(),
            exact_to: self
                .exact_to
                .iter()
                .zip(&other.exact_to)
                .map(|(a, b)| min_opt(*a, *b))
                .collect(),
            lower: self
                .lower
                .iter()
                .zip(&other.lower)
                .map(|(a, b)| match (a, b) {
                    (Some(x), Some(y)) => Some(*x.min(y)),
                    _ => None,
                })
                .collect(),
        };
        for (e, c) in &other.terms {
            add_term(&mut out.terms, e.clone(), c.clone());
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let n = self.vars.len();
        let mut exact_to = vec![None; n];
        let mut lower = vec![None; n];
        for v in 0..n {
            // unknown terms of one factor times anything of the other
            let mut bound = None;
            for (f, g) in [(self, other), (other, self)] {
                if let Some(nf) = f.exact_to[v] {
                    let lo =
                        g.lower[v].ok_or_else(|| Error::UnboundedBelow(self.vars[v].clone()))?;
                    bound = min_opt(bound, Some(nf + lo));
                }
            }
            exact_to[v] = bound;
            lower[v] = match (self.lower[v], other.lower[v]) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
        }
        let mut out = MultiLaurent {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
            exact_to,
            lower,
        };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if out.in_box(&e) {
                    add_term(&mut out.terms, e, c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(&self.vars());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `d/d var`.
    pub fn derivative(&self, var: &str) -> Result<Self> {
        let i = self.index(var)?;
        let mut out = self.clone();
        out.terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.terms.insert(e2, c * int(e[i]));
            }
        }
        out.exact_to[i] = out.exact_to[i].map(|x| x - 1);
        out.lower[i] = out.lower[i].map(|x| x - 1);
        Ok(out)
    }

    /// Multiplicative inverse of a power series (all exponents non-negative)
    /// with nonzero constant term, exact in the same box as `self`.
    ///
    /// Variables in which `self` is exact must not occur in its non-constant
    /// part; call [`truncate`](Self::truncate) first to choose working orders.
    pub fn invert(&self) -> Result<Self> {
        if self.lower.iter().any(|l| l.is_none_or(|l| l < 0)) {
            return Err(Error::Precondition(
                "invert_series needs a power series".into(),
            ));
        }
        let zero = vec![0; self.vars.len()];
        let c0 = self
            .terms
            .get(&zero)
            .cloned()
            .ok_or(Error::ZeroConstantTerm)?;
        let h = {
            let mut h = self.scale(&c0.recip());
            h.terms.remove(&zero);
            h
        };
        if h.terms.is_empty() && h.is_exact() {
            return Ok(Self::constant(&self.vars(), c0.recip()));
        }
        // 1/(1+h) = sum (-h)^j; h^j has total degree >= j
        let mut depth: i64 = 0;
        for (i, n) in self.exact_to.iter().enumerate() {
            match n {
                Some(n) => depth += (*n).max(0),
                None if h.terms.keys().any(|e| e[i] > 0) => {
                    return Err(Error::InsufficientTruncation {
                        variable: self.vars[i].clone(),
                        exact_to: i64::MAX,
                        needed: i64::MAX,
                    })
                }
                None => {}
            }
        }
        let neg_h = h.neg();
        let mut acc = Self::one(&self.vars());
        let mut power = Self::one(&self.vars());
        for _ in 0..depth {
            power = power.mul(&neg_h)?;
            acc = acc.add(&power)?;
        }
        // the tail is unknown but lies outside the box of `self`
        acc.exact_to = self.exact_to.clone();
        acc.prune();
        Ok(acc.scale(&c0.recip()))
    }
}

fn add_term(terms: &mut BTreeMap<Vec<i64>, Rational>, e: Vec<i64>, c: Rational) {
    if c.is_zero() {
        return;
    }
    use alloc::collections::btree_map::Entry;
    match terms.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn index_of(vars: &[&str], name: &str) -> Result<usize> {
    vars.iter()
        .position(|v| *v == name)
        .ok_or_else(|| Error::Precondition(alloc::format!("unknown variable {name}")))
}

impl fmt::Display for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, x) in self.vars.iter().zip(e) {
                match x {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{x}")?,
                }
            }
        }
        let open: Vec<_> = self
            .vars
            .iter()
            .zip(&self.exact_to)
            .filter_map(|(v, n)| n.map(|n| alloc::format!("{v}^{}", n + 1)))
            .collect();
        if !open.is_empty() {
            write!(f, " + O({})", open.join(", "))?;
        }
        Ok(())
    }
}

/// `constant + sum c_v * v`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearForm {
    pub constant: Rational,
    pub coeffs: BTreeMap<String, Rational>,
}

impl LinearForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        LinearForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    /// Adds `c * var`.
    pub fn term(mut self, var: &str, c: Rational) -> Self {
        let e = self
            .coeffs
            .entry(var.to_string())
            .or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(var);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }
}

/// Variables listed from smallest to largest: `[z1, z2]` means `|z1| < |z2|`,
/// each infinitesimally small compared with the next. Constants dominate
/// every variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionRegion {
    order: Vec<String>,
}

impl ExpansionRegion {
    pub fn new(smallest_first: &[&str]) -> Self {
        ExpansionRegion {
            order: smallest_first.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn rank(&self, v: &str) -> Option<usize> {
        self.order.iter().position(|x| x == v)
    }
}

/// Expands `base^exponent` in the region.
///
/// Writing `base = c_L x_L (1 + u)` with `x_L` its dominant part, the result
/// is exact up to `order` in every other variable of `base`; it is exact in
/// `x_L` and in variables not occurring in `base`.
pub fn expand_binomial_pole(
    vars: &[&str],
    base: &LinearForm,
    exponent: i64,
    region: &ExpansionRegion,
    order: i64,
) -> Result<MultiLaurent> {
    if base.is_zero() {
        return Err(Error::ZeroBase);
    }
    if exponent >= 0 {
        return MultiLaurent::from_linear(vars, base)?.pow(exponent as u32);
    }
    // symbols: None is the constant
    let mut symbols: Vec<(Option<&str>, &Rational)> = Vec::new();
    if !base.constant.is_zero() {
        symbols.push((None, &base.constant));
    }
    for (v, c) in &base.coeffs {
        index_of(vars, v)?;
        symbols.push((Some(v.as_str()), c));
    }
    let lead_pos = if symbols.len() == 1 {
        0
    } else {
        let key = |s: &Option<&str>| -> Result<usize> {
            match s {
                None => Ok(usize::MAX),
                Some(v) => region.rank(v).ok_or_else(|| {
                    Error::AmbiguousRegion(alloc::format!("{v} is not ordered by the region"))
                }),
            }
        };
        let mut best = 0;
        for i in 1..symbols.len() {
            if key(&symbols[i].0)? > key(&symbols[best].0)? {
                best = i;
            }
        }
        best
    };
    let (lead, lead_c) = symbols[lead_pos];
    let n = vars.len();

    // prefactor c_L^e x_L^e
    let mut pre_exp = vec![0i64; n];
    if let Some(v) = lead {
        pre_exp[index_of(vars, v)?] = exponent;
    }
    let pre_c = num_traits::pow(lead_c.recip(), (-exponent) as usize);

    // u = sum_{i != L} (c_i / c_L) x_i / x_L
    let mut u_terms = Vec::new();
    let mut others = Vec::new();
    for (i, (s, c)) in symbols.iter().enumerate() {
        if i == lead_pos {
            continue;
        }
        let mut e = vec![0i64; n];
        if let Some(v) = s {
            let k = index_of(vars, v)?;
            e[k] = 1;
            others.push(k);
        }
        if let Some(v) = lead {
            e[index_of(vars, v)?] -= 1;
        }
        u_terms.push((e, *c / lead_c));
    }
    let u = MultiLaurent::from_terms(vars, u_terms);
    let depth = order.max(0) * others.len() as i64;

    let mut acc = MultiLaurent::zero(vars);
    let mut power = MultiLaurent::one(vars);
    for j in 0..=depth {
        if j > 0 {
            power = power.mul(&u)?;
        }
        acc = acc.add(&power.scale(&binomial(exponent, j)))?;
    }
    let mut out = MultiLaurent::monomial(vars, &pre_exp, pre_c).mul(&acc)?;
    for &k in &others {
        out.exact_to[k] = Some(order);
    }
    if let Some(v) = lead {
        out.lower[index_of(vars, v)?] = None;
    }
    out.prune();
    Ok(out)
}

/// `1/(1 - exp(a z))` with `a` the variable `scale` (or `a = 1`), exact up to `z^order`:
/// `-sum_{n >= 0} B_n (a z)^{n-1} / n!`.
pub fn one_minus_exp_reciprocal(
    vars: &[&str],
    var: &str,
    scale: Option<&str>,
    order: i64,
) -> Result<MultiLaurent> {
    let zi = index_of(vars, var)?;
    let ai = scale.map(|s| index_of(vars, s)).transpose()?;
    let top = (order + 1).max(0) as usize;
    let table = BernoulliTable::new(top);
    let mut terms = Vec::new();
    for m in 0..=top {
        let c = -table.number(m) * recip_factorial(m as i64);
        let mut e = vec![0i64; vars.len()];
        e[zi] = m as i64 - 1;
        if let Some(a) = ai {
            e[a] = m as i64 - 1;
        }
        terms.push((e, c));
    }
    let mut out = MultiLaurent::from_terms(vars, terms);
    out.exact_to[zi] = Some(order);
    out.prune();
    Ok(out)
}

/// Smallest order to which one factor must be expanded in `var` so that a
/// product with factors of the given lower bounds in `var` is exact at
/// exponent `target`.
pub fn required_order(target: i64, other_lower_bounds: &[i64]) -> i64 {
    target - other_lower_bounds.iter().sum::<i64>()
}

impl MultiLaurent {
    /// Coefficients `[x^0, ..., x^max]` of a series in one variable.
    pub fn univariate_coeffs(&self, max: i64) -> Result<Vec<Rational>> {
        if self.vars.len() != 1 {
            return Err(Error::Precondition("univariate series expected".into()));
        }
        (0..=max).map(|k| self.coeff(&[k])).collect()
    }

    /// The sum of absolute values of the coefficients, for size diagnostics.
    pub fn weight(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .fold(Rational::zero(), |a, b| a + b)
    }
}
