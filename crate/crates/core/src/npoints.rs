//! Torus localization on `(P^1)^n // PGL_2`.
//!
//! Classes are `t^{2m} y_1^{a_1} ... y_n^{a_n}`. At the fixed point `p_e`
//! we have `y_i = (-1)^{e_i} t` and `e(N) = (-1)^{|e|} 2^n t^n`, so every
//! pairing below is a signed count over `{0,1}^n`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{binomial, int, pow2, sign, Rational};
use crate::error::{Error, Result};
use crate::series::{expand_binomial_pole, ExpansionRegion, LinearForm, MultiLaurent};

const MAX_POINTS: usize = 24;

/// A torus fixed point `p_e` of `(P^1)^n`, `e: {1..n} -> {0,1}` stored as bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FixedPointMap {
    bits: u32,
    n: usize,
}

impl FixedPointMap {
    pub fn new(e: &[u8]) -> Result<Self> {
        if e.len() > MAX_POINTS {
            return Err(Error::TooLarge(format!("2^{} fixed points", e.len())));
        }
        let mut bits = 0;
        for (i, &x) in e.iter().enumerate() {
            match x {
                0 => {}
                1 => bits |= 1 << i,
                _ => {
                    return Err(Error::Precondition(format!(
                        "e({}) = {x} is not 0 or 1",
                        i + 1
                    )))
                }
            }
        }
        Ok(FixedPointMap { bits, n: e.len() })
    }

    /// All `2^n` maps.
    pub fn all(n: usize) -> Result<impl Iterator<Item = FixedPointMap>> {
        if n > MAX_POINTS {
            return Err(Error::TooLarge(format!("2^{n} fixed points")));
        }
        Ok((0u32..1 << n).map(move |bits| FixedPointMap { bits, n }))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize) -> u8 {
        (self.bits >> i & 1) as u8
    }

    /// `|e|`.
    pub fn size(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// `e . a`.
    pub fn dot(&self, a: &[u32]) -> i64 {
        a.iter()
            .enumerate()
            .filter(|(i, _)| self.get(*i) == 1)
            .map(|(_, &x)| x as i64)
            .sum()
    }

    /// `1 - e`.
    pub fn flip(&self) -> Self {
        FixedPointMap {
            bits: !self.bits & ((1u64 << self.n) - 1) as u32,
            n: self.n,
        }
    }

    /// Value of the moment map, `2|e| - n`.
    pub fn moment(&self) -> i64 {
        2 * self.size() as i64 - self.n as i64
    }
}

/// `t^{2m} y_1^{a_1} ... y_n^{a_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialClass {
    pub m: u32,
    pub a: Vec<u32>,
}

impl MonomialClass {
    pub fn new(m: u32, a: Vec<u32>) -> Self {
        MonomialClass { m, a }
    }

    /// `y_i` on `n` points (0-based `i`).
    pub fn y(n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        MonomialClass { m: 0, a }
    }

    /// `|a|`.
    pub fn a_weight(&self) -> i64 {
        self.a.iter().map(|&x| x as i64).sum()
    }

    /// Cohomological degree over two: `2m + |a|`.
    pub fn degree(&self) -> i64 {
        2 * self.m as i64 + self.a_weight()
    }

    /// `xi * y_{n+1}`.
    pub fn times_new_y(&self) -> Self {
        let mut a = self.a.clone();
        a.push(1);
        MonomialClass { m: self.m, a }
    }

    pub fn permuted(&self, sigma: &[usize]) -> Self {
        MonomialClass {
            m: self.m,
            a: sigma.iter().map(|&i| self.a[i]).collect(),
        }
    }
}

/// A `Q`-linear combination of monomial classes.
pub type ClassCombination = Vec<(Rational, MonomialClass)>;

/// `sum c_i f(xi_i)`.
pub fn pair_combination(
    combo: &[(Rational, MonomialClass)],
    f: impl Fn(&MonomialClass) -> Result<Rational>,
) -> Result<Rational> {
    combo
        .iter()
        .try_fold(Rational::zero(), |acc, (c, cls)| Ok(acc + c * f(cls)?))
}

fn check_class(cls: &MonomialClass, n: usize, degree: i64) -> Result<()> {
    if cls.a.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: cls.a.len(),
        });
    }
    if cls.degree() != degree {
        return Err(Error::DegreeMismatch(format!(
            "2m + |a| = {} but need {degree}",
            cls.degree()
        )));
    }
    Ok(())
}

fn check_even(r: usize, cls: &MonomialClass) -> Result<()> {
    if r < 2 {
        return Err(Error::Precondition(format!("need r >= 2, got {r}")));
    }
    check_class(cls, 2 * r, 2 * r as i64 - 3)?;
    if cls.a_weight() % 2 == 0 {
        return Err(Error::DegreeMismatch("|a| must be odd".into()));
    }
    Ok(())
}

/// `res_{t=0} t^2 xi|_{p_e} / e(N_{p_e})` on `(P^1)^n`.
pub fn fixed_point_residue(e: &FixedPointMap, cls: &MonomialClass) -> Result<Rational> {
    let n = e.len();
    let num = MultiLaurent::monomial(&["t"], &[cls.degree() + 2], int(sign(e.dot(&cls.a))));
    let euler_inv = MultiLaurent::monomial(
        &["t"],
        &[-(n as i64)],
        int(sign(e.size() as i64)) * pow2(-(n as i64)),
    );
    Ok(num
        .mul(&euler_inv)?
        .residue("t")?
        .as_scalar()
        .unwrap_or_else(Rational::zero))
}

/// `4 sum_{|e| > n/2} res_t t^2 xi / e(N)` over the fixed points of `(P^1)^n`.
fn positive_chamber_sum(n: usize, cls: &MonomialClass) -> Result<Rational> {
    let mut total = Rational::zero();
    for e in FixedPointMap::all(n)? {
        if 2 * e.size() > n {
            total += fixed_point_residue(&e, cls)?;
        }
    }
    Ok(total * int(4))
}

/// `sum_{|e| = k} (-1)^{e.a + |e|}` restricted by `keep(|e|)`.
fn signed_count(a: &[u32], keep: impl Fn(usize) -> bool) -> Result<i64> {
    let mut s = 0;
    for e in FixedPointMap::all(a.len())? {
        if keep(e.size()) {
            s += sign(e.dot(a) + e.size() as i64);
        }
    }
    Ok(s)
}

/// `int_{Y_n} xi` for `n` odd, by residues at the fixed points with positive
/// moment.
pub fn pairing_odd(n: usize, cls: &MonomialClass) -> Result<Rational> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "n must be odd and at least 3, got {n}"
        )));
    }
    check_class(cls, n, n as i64 - 3)?;
    positive_chamber_sum(n, cls)
}

/// `2^{2-n} sum_{|e| > n/2} (-1)^{e.a + |e|}`.
pub fn pairing_odd_closed(n: usize, cls: &MonomialClass) -> Result<Rational> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "n must be odd and at least 3, got {n}"
        )));
    }
    check_class(cls, n, n as i64 - 3)?;
    Ok(pow2(2 - n as i64) * int(signed_count(&cls.a, |k| 2 * k > n)?))
}

/// Pairing through the resolution `Y_{2r+1} -> Y_{2r}`: `int_{Y_{2r+1}} xi y_{2r+1}`.
pub fn pairing_even_resolution(r: usize, cls: &MonomialClass) -> Result<Rational> {
    check_even(r, cls)?;
    pairing_odd(2 * r + 1, &cls.times_new_y())
}

/// `2^{2-2r} sum_{|e| >= r+1} (-1)^{e.a + |e|}`, after the `|e| = r` terms cancel.
pub fn pairing_even_resolution_closed(r: usize, cls: &MonomialClass) -> Result<Rational> {
    check_even(r, cls)?;
    Ok(pow2(2 - 2 * r as i64) * int(signed_count(&cls.a, |k| k > r)?))
}

/// The wall-crossing part of the desingularized pairing: residues at the
/// `|e| > r` fixed points of `(P^1)^{2r}`.
pub fn wall_crossing_sum(r: usize, cls: &MonomialClass) -> Result<Rational> {
    check_even(r, cls)?;
    positive_chamber_sum(2 * r, cls)
}

/// `sum_{|e| = r} (-1)^{e.a + r}`; zero whenever `|a|` is odd.
pub fn balanced_sum(a: &[u32]) -> Result<i64> {
    if a.len() % 2 == 1 {
        return Err(Error::Precondition(format!(
            "need an even number of points, got {}",
            a.len()
        )));
    }
    let r = a.len() / 2;
    let mut s = 0;
    for e in FixedPointMap::all(a.len())? {
        if e.size() == r {
            s += sign(e.dot(a) + r as i64);
        }
    }
    Ok(s)
}

/// `4 res_t int_{P^{r-2}} t^{2r-1} / (4 t^2 (y - 2t)^r)`, the part of each
/// blowup term that does not depend on `e`.
pub fn blowup_local_residue(r: usize) -> Result<Rational> {
    if r < 2 {
        return Err(Error::Precondition(format!("need r >= 2, got {r}")));
    }
    let r = r as i64;
    let vars = ["y", "t"];
    // |y| << |t|, as in the expansion in y/(2t)
    let pole = expand_binomial_pole(
        &vars,
        &LinearForm::new().term("y", int(1)).term("t", int(-2)),
        -r,
        &ExpansionRegion::new(&vars),
        r - 2,
    )?;
    let f = MultiLaurent::monomial(&vars, &[0, 2 * r - 1], int(1)).mul(&pole)?;
    let f = f.mul(&MultiLaurent::monomial(
        &vars,
        &[0, -2],
        Rational::new(1.into(), 4.into()),
    ))?;
    // int_{P^{r-2}} y^{r-2} = 1
    Ok(f.residue("t")?.coeff(&[r - 2])? * int(4))
}

/// `2^{2-2r} binom(2r-3, r-2) sum_{|e| = r} (-1)^{e.a + r}`.
pub fn blowup_correction_closed(r: usize, cls: &MonomialClass) -> Result<Rational> {
    check_even(r, cls)?;
    let r64 = r as i64;
    Ok(pow2(2 - 2 * r64) * binomial(2 * r64 - 3, r64 - 2) * int(balanced_sum(&cls.a)?))
}

/// The new wall-crossing terms after blowing up the `|e| = r` orbits,
/// computed by residues and checked against the closed form.
pub fn blowup_correction(r: usize, cls: &MonomialClass) -> Result<Rational> {
    check_even(r, cls)?;
    let local = blowup_local_residue(r)?;
    let mut total = Rational::zero();
    for e in FixedPointMap::all(2 * r)? {
        if e.size() == r {
            total += &local * int(sign(e.dot(&cls.a)));
        }
    }
    let closed = blowup_correction_closed(r, cls)?;
    if total != closed {
        return Err(Error::RouteMismatch(format!(
            "blowup correction: residues {total}, closed form {closed}"
        )));
    }
    Ok(total)
}

/// Pairing through the partial desingularization: wall-crossing sum plus
/// blowup correction, checked against the closed form.
pub fn pairing_even_desing(r: usize, cls: &MonomialClass) -> Result<Rational> {
    let value = wall_crossing_sum(r, cls)? + blowup_correction(r, cls)?;
    let closed = pow2(2 - 2 * r as i64) * int(signed_count(&cls.a, |k| k > r)?);
    if value != closed {
        return Err(Error::RouteMismatch(format!(
            "desingularization: assembled {value}, closed form {closed}"
        )));
    }
    Ok(value)
}

/// Truncated `(1+z^2)^{2r}/(1-z^4) - binom(2r, r)/2 * z^{2r-2}/(1-z^2)`,
/// coefficients of `z^0 .. z^max_degree`.
pub fn ih_poincare_series(r: usize, max_degree: usize) -> Result<Vec<Rational>> {
    if r == 0 {
        return Err(Error::Precondition("need r >= 1".into()));
    }
    let v = ["z"];
    let k = max_degree as i64;
    let one_plus =
        MultiLaurent::from_terms(&v, [(vec![0], int(1)), (vec![2], int(1))]).truncate("z", k)?;
    let num = one_plus.pow(2 * r as u32)?;
    let geo4 = MultiLaurent::from_terms(&v, [(vec![0], int(1)), (vec![4], int(-1))])
        .truncate("z", k)?
        .invert()?;
    let geo2 = MultiLaurent::from_terms(&v, [(vec![0], int(1)), (vec![2], int(-1))])
        .truncate("z", k)?
        .invert()?;
    let r64 = r as i64;
    let corr =
        MultiLaurent::monomial(&v, &[2 * r64 - 2], binomial(2 * r64, r64) / int(2)).mul(&geo2)?;
    num.mul(&geo4)?.sub(&corr)?.univariate_coeffs(k)
}

/// One representative per `S_n`-orbit of classes of the given degree:
/// `a` non-increasing.
pub fn classes_up_to_symmetry(n: usize, degree: i64) -> Vec<MonomialClass> {
    fn parts(total: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if total == 0 {
            let mut a = cur.clone();
            a.resize(cur.len() + slots, 0);
            out.push(a);
            return;
        }
        if slots == 0 {
            return;
        }
        for x in (1..=max.min(total)).rev() {
            cur.push(x);
            parts(total - x, x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    for m in 0..=(degree / 2) {
        let w = (degree - 2 * m) as u32;
        let mut a_list = Vec::new();
        parts(w, w, n, &mut Vec::new(), &mut a_list);
        out.extend(a_list.into_iter().map(|a| MonomialClass::new(m as u32, a)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::combinat::permutations;

    #[test]
    fn odd_pairings() {
        assert_eq!(
            pairing_odd(3, &MonomialClass::new(0, vec![0; 3])).unwrap(),
            int(1)
        );
        assert_eq!(
            pairing_odd(5, &MonomialClass::new(1, vec![0; 5])).unwrap(),
            rat(-3, 4)
        );
        assert!(matches!(
            pairing_odd(5, &MonomialClass::new(0, vec![0; 5])),
            Err(Error::DegreeMismatch(_))
        ));
        assert!(pairing_odd(4, &MonomialClass::new(0, vec![0; 4])).is_err());
        for n in [3, 5, 7] {
            for cls in classes_up_to_symmetry(n, n as i64 - 3) {
                assert_eq!(
                    pairing_odd(n, &cls).unwrap(),
                    pairing_odd_closed(n, &cls).unwrap()
                );
            }
        }
    }

    #[test]
    fn permutation_invariance() {
        let cls = MonomialClass::new(0, vec![1, 0, 1, 0, 0]);
        let v = pairing_odd(5, &cls).unwrap();
        for s in permutations(5) {
            assert_eq!(pairing_odd(5, &cls.permuted(&s)).unwrap(), v);
        }
        let even = MonomialClass::new(0, vec![3, 0, 0, 0, 0, 0]);
        let v = pairing_even_desing(3, &even).unwrap();
        for s in permutations(6).into_iter().step_by(37) {
            assert_eq!(pairing_even_desing(3, &even.permuted(&s)).unwrap(), v);
        }
    }

    #[test]
    fn even_routes() {
        for r in 2..=4 {
            for cls in classes_up_to_symmetry(2 * r, 2 * r as i64 - 3) {
                let res = pairing_even_resolution(r, &cls).unwrap();
                assert_eq!(res, pairing_even_resolution_closed(r, &cls).unwrap());
                assert_eq!(res, pairing_even_desing(r, &cls).unwrap(), "r={r} {cls:?}");
                assert_eq!(blowup_correction(r, &cls).unwrap(), int(0));
            }
        }
        let cls = MonomialClass::new(0, vec![3, 0, 0, 0, 0, 0]);
        assert_eq!(
            pairing_even_desing(3, &cls).unwrap(),
            pairing_even_resolution(3, &cls).unwrap()
        );
    }

    #[test]
    fn ih_pairing_on_y4() {
        let combo: ClassCombination = (0..4).map(|i| (int(1), MonomialClass::y(4, i))).collect();
        assert_eq!(
            pair_combination(&combo, |c| pairing_even_desing(2, c)).unwrap(),
            int(1)
        );
        assert_eq!(
            pairing_even_desing(2, &MonomialClass::y(4, 0)).unwrap(),
            rat(1, 4)
        );
    }

    #[test]
    fn blowup_pieces() {
        // e = 1 on two of four points, a = e_1: the six signs cancel
        assert_eq!(balanced_sum(&[1, 0, 0, 0]).unwrap(), 0);
        assert_eq!(balanced_sum(&[2, 0, 0, 0]).unwrap(), 6);
        for r in 2..=6 {
            let r64 = r as i64;
            assert_eq!(
                blowup_local_residue(r).unwrap(),
                int(sign(r64)) * pow2(2 - 2 * r64) * binomial(2 * r64 - 3, r64 - 2)
            );
        }
        let fp = FixedPointMap::new(&[1, 0, 1, 1]).unwrap();
        assert_eq!((fp.size(), fp.moment(), fp.flip().size()), (3, 2, 1));
        assert_eq!(fp.dot(&[1, 5, 2, 0]), 3);
        assert!(FixedPointMap::new(&[2]).is_err());
        assert!(matches!(
            pairing_even_resolution(2, &MonomialClass::new(0, vec![1, 0, 0])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn ih_series() {
        let s = ih_poincare_series(2, 6).unwrap();
        assert_eq!(&s[..3], &[int(1), int(0), int(1)]);
        // 6 + 1 from the numerator over 1 - z^4, minus 3
        assert_eq!(s[4], int(4));
        let s3 = ih_poincare_series(3, 4).unwrap();
        assert_eq!(s3[2], int(6));
        assert_eq!(s3[0], int(1));
    }
}
