//! Classes, parabolic weights, slope functions and Joyce's combinatorial
//! coefficients `S` and `U`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::{int, is_integer, rat, recip_factorial, EpsPoly, Rational};
use crate::combinat::{breakpoints, ordered_set_partitions, permutations};
use crate::error::{Error, Result};

/// A type `(r, d, f, v)`; `f` and `v` are optional.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassVec {
    pub r: u32,
    pub d: i64,
    pub f: Option<Vec<u32>>,
    pub v: Option<u32>,
}

impl ClassVec {
    pub fn new(r: u32, d: i64) -> Self {
        ClassVec {
            r,
            d,
            f: None,
            v: None,
        }
    }

    pub fn with_flag(r: u32, d: i64, f: Vec<u32>) -> Self {
        ClassVec {
            r,
            d,
            f: Some(f),
            v: None,
        }
    }

    pub fn triple(r: u32, d: i64, f: Vec<u32>, v: u32) -> Self {
        ClassVec {
            r,
            d,
            f: Some(f),
            v: Some(v),
        }
    }

    /// The flag piece with `r = |f|` and `d = |f| * slope`.
    pub fn flag_piece(f: Vec<u32>, slope: &Rational) -> Result<Self> {
        let r: u32 = f.iter().sum();
        let d = slope * int(r as i64);
        if !is_integer(&d) {
            return Err(Error::DegreeMismatch(format!(
                "|f| = {r} times slope {slope} is not an integer"
            )));
        }
        Ok(ClassVec::with_flag(r, crate::arith::to_i64(&d).unwrap(), f))
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0
            && self.d == 0
            && self.f.as_ref().is_none_or(|f| f.iter().all(|x| *x == 0))
            && self.v.unwrap_or(0) == 0
    }

    pub fn flag_size(&self) -> u32 {
        self.f.as_ref().map_or(0, |f| f.iter().sum())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let f = match (&self.f, &other.f) {
            (None, None) => None,
            (Some(a), Some(b)) if a.len() == b.len() => {
                Some(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Some(a), Some(b)) => {
                return Err(Error::LengthMismatch {
                    expected: a.len(),
                    found: b.len(),
                })
            }
            _ => {
                return Err(Error::Precondition(
                    "adding classes with and without a flag".into(),
                ))
            }
        };
        let v = match (self.v, other.v) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(0) + b.unwrap_or(0)),
        };
        Ok(ClassVec {
            r: self.r + other.r,
            d: self.d + other.d,
            f,
            v,
        })
    }

    pub fn sum(classes: &[ClassVec]) -> Result<Self> {
        let (first, rest) = classes
            .split_first()
            .ok_or_else(|| Error::Precondition("empty sum".into()))?;
        rest.iter().try_fold(first.clone(), |acc, c| acc.try_add(c))
    }
}

impl fmt::Display for ClassVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}", self.r, self.d)?;
        if let Some(fl) = &self.f {
            write!(f, ",")?;
            for x in fl {
                write!(f, "{x}")?;
            }
        }
        if let Some(v) = self.v {
            write!(f, ",{v}")?;
        }
        write!(f, ")")
    }
}

/// `0 <= c_1 <= ... <= c_l <= 1` in the order of `Q[e]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicWeight(Vec<EpsPoly>);

impl ParabolicWeight {
    pub fn new(c: Vec<EpsPoly>) -> Result<Self> {
        let zero = EpsPoly::zero();
        let one = EpsPoly::one();
        for (i, x) in c.iter().enumerate() {
            if *x < zero || *x > one {
                return Err(Error::InvalidWeight(format!(
                    "c_{} = {x} lies outside [0, 1]",
                    i + 1
                )));
            }
        }
        if let Some(i) = c.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::InvalidWeight(format!("c_{} > c_{}", i + 1, i + 2)));
        }
        Ok(ParabolicWeight(c))
    }

    /// Parses comma-separated literals such as `0,1-e,1-e^2`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Self::new(Vec::new());
        }
        let c = s
            .split(',')
            .map(|p| p.parse::<EpsPoly>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(c)
    }

    pub fn zero(len: usize) -> Self {
        ParabolicWeight(vec![EpsPoly::zero(); len])
    }

    /// `c_i = 1 - e^{i-1}`.
    pub fn plus(r: usize) -> Self {
        ParabolicWeight(
            (0..r)
                .map(|i| &EpsPoly::one() - &EpsPoly::monomial(i as u32, Rational::one()))
                .collect(),
        )
    }

    /// `c_i = e^{r-i}`.
    pub fn minus(r: usize) -> Self {
        ParabolicWeight(
            (0..r)
                .map(|i| EpsPoly::monomial((r - 1 - i) as u32, Rational::one()))
                .collect(),
        )
    }

    pub fn values(&self) -> &[EpsPoly] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The entries at the positions where `f` is nonzero.
    pub fn restrict(&self, f: &[u32]) -> Result<Self> {
        if f.len() != self.0.len() {
            return Err(Error::LengthMismatch {
                expected: self.0.len(),
                found: f.len(),
            });
        }
        Ok(ParabolicWeight(
            self.0
                .iter()
                .zip(f)
                .filter(|(_, x)| **x > 0)
                .map(|(c, _)| c.clone())
                .collect(),
        ))
    }

    /// `k * c` for `0 <= k <= 1`.
    pub fn scaled(&self, k: &Rational) -> Result<Self> {
        Self::new(self.0.iter().map(|c| c.scale(k)).collect())
    }

    fn pairing(&self, f: &[u32]) -> Result<EpsPoly> {
        if f.len() != self.0.len() {
            return Err(Error::LengthMismatch {
                expected: self.0.len(),
                found: f.len(),
            });
        }
        Ok(self
            .0
            .iter()
            .zip(f)
            .filter(|(_, x)| **x > 0)
            .fold(EpsPoly::zero(), |acc, (c, x)| {
                &acc + &c.scale(&int(*x as i64))
            }))
    }
}

impl fmt::Display for ParabolicWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// An element of `Q[e]` or `+inf`, which exceeds everything else.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlopeValue {
    Finite(EpsPoly),
    Infinite,
}

impl fmt::Display for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeValue::Finite(p) => write!(f, "{p}"),
            SlopeValue::Infinite => write!(f, "+inf"),
        }
    }
}

/// `mu_c(r, d, f) = (d - sum c_i f_i) / r`, or `+inf` when `r = 0`.
pub fn slope_mu_c(cls: &ClassVec, c: &ParabolicWeight) -> Result<SlopeValue> {
    slope_mu_c_eps(cls, c, &EpsPoly::zero())
}

/// `(d - sum c_i f_i + pair_weight * v) / r`, or `+inf` when `r = 0`.
pub fn slope_mu_c_eps(
    cls: &ClassVec,
    c: &ParabolicWeight,
    pair_weight: &EpsPoly,
) -> Result<SlopeValue> {
    let cf = match &cls.f {
        Some(f) => c.pairing(f)?,
        None => EpsPoly::zero(),
    };
    if cls.r == 0 {
        return Ok(SlopeValue::Infinite);
    }
    let mut num = &EpsPoly::constant(int(cls.d)) - &cf;
    if let Some(v) = cls.v {
        num = &num + &pair_weight.scale(&int(v as i64));
    }
    Ok(SlopeValue::Finite(num.div_rational(&int(cls.r as i64))))
}

/// A slope function `mu_c` or `mu_c^e` on classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeFn {
    pub weight: ParabolicWeight,
    pub pair_weight: Option<EpsPoly>,
}

impl SlopeFn {
    pub fn new(weight: ParabolicWeight) -> Self {
        SlopeFn {
            weight,
            pair_weight: None,
        }
    }

    pub fn with_pair_weight(weight: ParabolicWeight, pair_weight: EpsPoly) -> Self {
        SlopeFn {
            weight,
            pair_weight: Some(pair_weight),
        }
    }

    pub fn eval(&self, cls: &ClassVec) -> Result<SlopeValue> {
        slope_mu_c_eps(
            cls,
            &self.weight,
            self.pair_weight.as_ref().unwrap_or(&EpsPoly::zero()),
        )
    }
}

/// The stability conditions `(tau, tau')` on either side of a wall-crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityPair {
    pub tau: SlopeFn,
    pub tau_prime: SlopeFn,
}

impl StabilityPair {
    pub fn new(tau: SlopeFn, tau_prime: SlopeFn) -> Self {
        StabilityPair { tau, tau_prime }
    }
}

fn subflags(f: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &x in f {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=x).map(move |y| {
                    let mut q = p.clone();
                    q.push(y);
                    q
                })
            })
            .collect();
    }
    out
}

/// Sub-types `(r', f')` with `f' <= f` and `0 < r' = |f'| < r`; without a
/// flag, all `0 < r' < r`.
fn subtypes(r: u32, f: Option<&[u32]>) -> Vec<(u32, Option<Vec<u32>>)> {
    match f {
        None => (1..r).map(|rp| (rp, None)).collect(),
        Some(f) => subflags(f)
            .into_iter()
            .filter_map(|fp| {
                let rp: u32 = fp.iter().sum();
                (rp > 0 && rp < r).then_some((rp, Some(fp)))
            })
            .collect(),
    }
}

/// No sub-type `(r', d', f')` has the same `mu_c`-slope as `(r, d, f)`.
///
/// For each `(r', f')` the `d'` solving the slope equation is computed in
/// `Q[e]`; `c` is generic iff none of these is an integer.
pub fn is_generic(c: &ParabolicWeight, r: u32, d: i64, f: Option<&[u32]>) -> Result<bool> {
    if r == 0 {
        return Err(Error::Precondition("is_generic needs r > 0".into()));
    }
    let cls = ClassVec {
        r,
        d,
        f: f.map(<[u32]>::to_vec),
        v: None,
    };
    let SlopeValue::Finite(mu) = slope_mu_c(&cls, c)? else {
        unreachable!()
    };
    for (rp, fp) in subtypes(r, f) {
        let cf = match &fp {
            Some(fp) => c.pairing(fp)?,
            None => EpsPoly::zero(),
        };
        let dp = &mu.scale(&int(rp as i64)) + &cf;
        if dp.as_constant().is_some_and(|q| is_integer(&q)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All subset averages `sum_{i in I} c_i / |I|` are pairwise distinct.
pub fn is_strongly_generic(c: &ParabolicWeight) -> Result<bool> {
    let r = c.len();
    if r >= 20 {
        return Err(Error::TooLarge(format!("2^{r} subsets")));
    }
    let mut seen: Vec<EpsPoly> = Vec::new();
    for mask in 1u32..(1 << r) {
        let size = mask.count_ones() as i64;
        let sum = (0..r)
            .filter(|i| mask >> i & 1 == 1)
            .fold(EpsPoly::zero(), |acc, i| &acc + &c.values()[i]);
        let avg = sum.div_rational(&int(size));
        if seen.contains(&avg) {
            return Ok(false);
        }
        seen.push(avg);
    }
    Ok(true)
}

/// Slopes of sub-types with `d'/r'` below (above) `d/r` stay below (above)
/// `mu_c(r, d, f)`.
///
/// Since `0 <= sum c_i f'_i <= r'`, only `d'` with `|d' - r' d / r| <= r' + 1`
/// can break the condition, so the scan is finite.
pub fn is_close_to_zero(c: &ParabolicWeight, r: u32, d: i64, f: Option<&[u32]>) -> Result<bool> {
    if r == 0 {
        return Err(Error::Precondition("is_close_to_zero needs r > 0".into()));
    }
    let cls = ClassVec {
        r,
        d,
        f: f.map(<[u32]>::to_vec),
        v: None,
    };
    let mu = slope_mu_c(&cls, c)?;
    let base = rat(d, r as i64);
    for (rp, fp) in subtypes(r, f) {
        let centre = &base * int(rp as i64);
        let lo = (centre.floor().to_integer()) - (rp as i64 + 1);
        let hi = (centre.ceil().to_integer()) + (rp as i64 + 1);
        let mut dp = lo;
        while dp <= hi {
            let d64 = crate::arith::to_i64(&Rational::from_integer(dp.clone())).unwrap();
            let sub = ClassVec {
                r: rp,
                d: d64,
                f: fp.clone(),
                v: None,
            };
            let ord = rat(d64, rp as i64).cmp(&base);
            let mu_sub = slope_mu_c(&sub, c)?;
            let ok = match ord {
                Ordering::Less => mu_sub < mu,
                Ordering::Greater => mu_sub > mu,
                Ordering::Equal => true,
            };
            if !ok {
                return Ok(false);
            }
            dp += 1;
        }
    }
    Ok(true)
}

/// `r^2 (g-1) + v (r (N+g-1) + d - v) + sum_{i<j} f_i f_j + 1`, omitting the
/// terms whose data are absent.
pub fn dim_class(cls: &ClassVec, g: i64, n: i64) -> i64 {
    let r = cls.r as i64;
    let mut dim = r * r * (g - 1) + 1;
    if let Some(v) = cls.v {
        let v = v as i64;
        dim += v * (r * (n + g - 1) + cls.d - v);
    }
    if let Some(f) = &cls.f {
        let s: i64 = f.iter().map(|&x| x as i64).sum();
        let sq: i64 = f.iter().map(|&x| (x as i64) * (x as i64)).sum();
        dim += (s * s - sq) / 2;
    }
    dim
}

/// Ordered tuples `(f_1, ..., f_n)` of nonzero 0/1 vectors summing to `1^r`
/// with `r0 | |f_i|` and `n >= n_min`.
///
/// Sorted by `n`, then lexicographically by the position sets of the blocks.
pub fn enumerate_flag_decomps(r: u32, r0: u32, n_min: usize) -> Result<Vec<Vec<Vec<u32>>>> {
    if r == 0 || r0 == 0 || !r.is_multiple_of(r0) {
        return Err(Error::Precondition(format!(
            "need r >= 1 and r0 | r, got r = {r}, r0 = {r0}"
        )));
    }
    if r > 10 {
        return Err(Error::TooLarge(format!(
            "ordered set partitions of {r} positions"
        )));
    }
    let mut blocks: Vec<Vec<Vec<usize>>> = ordered_set_partitions(r as usize)
        .into_iter()
        .filter(|p| p.len() >= n_min && p.iter().all(|b| (b.len() as u32).is_multiple_of(r0)))
        .collect();
    blocks.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(blocks
        .into_iter()
        .map(|p| p.iter().map(|b| block_to_flag(b, r as usize)).collect())
        .collect())
}

pub(crate) fn block_to_flag(block: &[usize], r: usize) -> Vec<u32> {
    let mut f = vec![0; r];
    for &i in block {
        f[i] = 1;
    }
    f
}

fn partial_sum(seq: &[ClassVec]) -> Result<ClassVec> {
    ClassVec::sum(seq)
}

/// Joyce's sign coefficient `S(a_1, ..., a_n; tau, tau')`.
pub fn coeff_s(seq: &[ClassVec], pair: &StabilityPair) -> Result<i64> {
    let mut s = 1;
    for i in 0..seq.len().saturating_sub(1) {
        let a = pair.tau.eval(&seq[i])?.cmp(&pair.tau.eval(&seq[i + 1])?);
        let b = pair
            .tau_prime
            .eval(&partial_sum(&seq[..=i])?)?
            .cmp(&pair.tau_prime.eval(&partial_sum(&seq[i + 1..])?)?);
        match (a, b) {
            (Ordering::Greater, Ordering::Less | Ordering::Equal) => {}
            (Ordering::Less | Ordering::Equal, Ordering::Greater) => s = -s,
            _ => return Ok(0),
        }
    }
    Ok(s)
}

/// Joyce's coefficient `U(a_1, ..., a_n; tau, tau')`: the sum over double
/// refinements `0 = a_0 < ... < a_m = n`, `0 = b_0 < ... < b_l = m`.
pub fn coeff_u(seq: &[ClassVec], pair: &StabilityPair) -> Result<Rational> {
    let n = seq.len();
    if n == 0 {
        return Err(Error::Precondition("U of an empty sequence".into()));
    }
    let alpha = partial_sum(seq)?;
    let tau_p_alpha = pair.tau_prime.eval(&alpha)?;
    let tau_each: Vec<SlopeValue> = seq
        .iter()
        .map(|c| pair.tau.eval(c))
        .collect::<Result<_>>()?;
    let mut total = Rational::zero();
    for a in breakpoints(n) {
        let m = a.len() - 1;
        let betas: Vec<ClassVec> = (0..m)
            .map(|i| partial_sum(&seq[a[i]..a[i + 1]]))
            .collect::<Result<_>>()?;
        let mut ok = true;
        for i in 0..m {
            let tb = pair.tau.eval(&betas[i])?;
            if (a[i]..a[i + 1]).any(|j| tau_each[j] != tb) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let weight = (0..m).fold(Rational::one(), |acc, i| {
            acc * recip_factorial((a[i + 1] - a[i]) as i64)
        });
        for b in breakpoints(m) {
            let l = b.len() - 1;
            let mut term =
                Rational::new((if l % 2 == 1 { 1 } else { -1 }).into(), (l as i64).into());
            let mut keep = true;
            for i in 0..l {
                let group = &betas[b[i]..b[i + 1]];
                if pair.tau_prime.eval(&partial_sum(group)?)? != tau_p_alpha {
                    keep = false;
                    break;
                }
                let s = coeff_s(group, pair)?;
                if s == 0 {
                    keep = false;
                    break;
                }
                term *= int(s);
            }
            if keep {
                total += term * &weight;
            }
        }
    }
    Ok(total)
}

/// `sigma -> U(a_{sigma(1)}, ..., a_{sigma(n)})` over all permutations
/// (0-based), omitting zeros.
pub fn u_table(
    classes: &[ClassVec],
    pair: &StabilityPair,
) -> Result<BTreeMap<Vec<usize>, Rational>> {
    if classes.len() > 7 {
        return Err(Error::TooLarge(format!("{}! permutations", classes.len())));
    }
    let mut out = BTreeMap::new();
    for sigma in permutations(classes.len()) {
        let seq: Vec<ClassVec> = sigma.iter().map(|&i| classes[i].clone()).collect();
        let u = coeff_u(&seq, pair)?;
        if !u.is_zero() {
            out.insert(sigma, u);
        }
    }
    Ok(out)
}

/// `r / gcd(r, d)`.
pub fn r0_of(r: u32, d: i64) -> u32 {
    let g = crate::arith::gcd(r as i64, d).unsigned_abs() as u32;
    r.checked_div(g).unwrap_or(1)
}

impl ClassVec {
    pub fn to_compact_string(&self) -> alloc::string::String {
        self.to_string()
    }
}
