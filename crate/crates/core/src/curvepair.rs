//! Intersection pairings for rank 2 and rank 3 curve moduli.
//!
//! Rank 2: the Jeffrey-Kirwan pairing of `a_2^m f_2^n / n!` and the two
//! blowup corrections of the partial desingularization. Rank 3: the double
//! residue formula for `<[J(2,0), J(1,0)], prod S_{1,0,l}^{m_l} exp(alpha S_{1,2,2})>`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{
    bernoulli_poly_at, binomial, factorial, int, pow2, rat, recip_factorial, sign, Rational,
};
use crate::error::{Error, Result};
use crate::series::{
    expand_binomial_pole, one_minus_exp_reciprocal, required_order, ExpansionRegion, LinearForm,
    MultiLaurent,
};

fn fact(n: i64) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

/// `a_2^m f_2^n / n!` on genus `g`, with `2m + n = 4g - 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rank2Monomial {
    pub g: u32,
    pub m: u32,
    pub n: u32,
}

impl Rank2Monomial {
    pub fn new(g: u32, m: u32, n: u32) -> Result<Self> {
        if g < 2 {
            return Err(Error::Precondition(format!(
                "genus must be at least 2, got {g}"
            )));
        }
        if 2 * m as i64 + n as i64 != 4 * g as i64 - 3 {
            return Err(Error::DegreeMismatch(format!(
                "2m + n = {} but 4g - 3 = {}",
                2 * m + n,
                4 * g - 3
            )));
        }
        Ok(Rank2Monomial { g, m, n })
    }
}

/// `(-1)^{g-m} / 2^{2m-g+1} * B_{2g-2-2m}(1) / (2g-2-2m)!`, zero once `m >= g`.
pub fn jk_pairing_rank2(g: u32, m: u32) -> Rational {
    if m >= g {
        return Rational::zero();
    }
    let (g, m) = (g as i64, m as i64);
    let b = (2 * g - 2 - 2 * m) as usize;
    int(sign(g - m))
        * pow2(g - 1 - 2 * m)
        * bernoulli_poly_at(b, &int(1))
        * recip_factorial(b as i64)
}

/// First blowup: `delta_{g,n} 2^{1-3g} sum_{k+l=g-1} 2^{-l} binom(g+k,k) binom(g+l-1,l)`.
pub fn blowup1_rank2(x: &Rank2Monomial) -> Rational {
    if x.n != x.g {
        return Rational::zero();
    }
    let g = x.g as i64;
    let s = (0..g).fold(Rational::zero(), |acc, k| {
        let l = g - 1 - k;
        acc + pow2(-l) * binomial(g + k, k) * binomial(g + l - 1, l)
    });
    pow2(1 - 3 * g) * s
}

/// `C_{r,s,l}` for `r + s + l <= total`: the coefficient of `z^r x^s t^l` in
/// `((1 - 2t) sum_{k+l <= g-1} (-1)^{g-1-k-l}/l! binom(g,k) x^k z^l)^{-1}`.
pub fn c_table(g: u32, total: u32) -> Result<BTreeMap<(u32, u32, u32), Rational>> {
    if g == 0 {
        return Err(Error::Precondition("genus must be positive".into()));
    }
    let v = ["z", "x", "t"];
    let g64 = g as i64;
    let mut terms = Vec::new();
    for k in 0..g64 {
        for l in 0..g64 - k {
            terms.push((
                vec![l, k, 0],
                int(sign(g64 - 1 - k - l)) * recip_factorial(l) * binomial(g64, k),
            ));
        }
    }
    let p = MultiLaurent::from_terms(&v, terms);
    let f = MultiLaurent::from_terms(&v, [(vec![0, 0, 0], int(1)), (vec![0, 0, 1], int(-2))])
        .mul(&p)?;
    let mut f = f;
    for var in v {
        f = f.truncate(var, total as i64)?;
    }
    let inv = f.invert()?;
    let mut out = BTreeMap::new();
    for (e, c) in inv.terms() {
        if e.iter().sum::<i64>() <= total as i64 {
            out.insert((e[0] as u32, e[1] as u32, e[2] as u32), c.clone());
        }
    }
    Ok(out)
}

/// The two sums of the second blowup correction, evaluated as written.
pub fn blowup2_rank2_parts(x: &Rank2Monomial) -> Result<(Rational, Rational)> {
    let (g, m, n) = (x.g as i64, x.m as i64, x.n as i64);
    let total = 2 * m - g + 1;
    if total < 0 {
        return Ok((Rational::zero(), Rational::zero()));
    }
    let c = c_table(x.g, total as u32)?;
    let cg = |r: i64, s: i64, l: i64| {
        c.get(&(r as u32, s as u32, l as u32))
            .cloned()
            .unwrap_or_else(Rational::zero)
    };
    let inv_n = recip_factorial(n);

    let mut inner = Rational::zero();
    if n <= 2 * g {
        for k in 0..=(2 * g - n) / 2 {
            inner += int(sign(k))
                * fact(2 * g - 2 * k)
                * fact(2 * g - n)
                * fact(g)
                * recip_factorial(2 * g - 2 * k - n)
                * recip_factorial(k)
                * recip_factorial(g - k);
        }
    }
    let mut first = Rational::zero();
    for l in (g - 2).max(0)..=total {
        first += cg(total - l, 0, l) * int(sign(l + n - 1)) * recip_factorial(l - g + 2) * &inv_n;
    }
    let first = first * inner * pow2(-2 * g);

    let mut second = Rational::zero();
    for s in 0..=g.min(total) {
        let w = fact(2 * g - s - 1) * int(g) * recip_factorial(g - s);
        for l in 0..=total - s {
            second += cg(total - s - l, s, l)
                * int(sign(l + n))
                * recip_factorial(s + l - 2 * g + 2)
                * &inv_n
                * &w;
        }
    }
    Ok((first, second * pow2(-n)))
}

/// Second blowup correction, the sum of [`blowup2_rank2_parts`].
pub fn blowup2_rank2(x: &Rank2Monomial) -> Result<Rational> {
    let (a, b) = blowup2_rank2_parts(x)?;
    Ok(a + b)
}

/// The three components of the desingularized pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jkkw {
    pub jk: Rational,
    pub blowup1: Rational,
    pub blowup2: Rational,
    pub value: Rational,
}

/// `int a_2^m f_2^n / n!` on the partial desingularization; times `n!` when
/// `include_n_factorial` is set.
pub fn jkkw_pairing_rank2(x: &Rank2Monomial, include_n_factorial: bool) -> Result<Jkkw> {
    let jk = jk_pairing_rank2(x.g, x.m);
    let blowup1 = blowup1_rank2(x);
    let blowup2 = blowup2_rank2(x)?;
    let mut value = &jk + &blowup1 + &blowup2;
    if include_n_factorial {
        value *= fact(x.n as i64);
    }
    Ok(Jkkw {
        jk,
        blowup1,
        blowup2,
        value,
    })
}

/// Exponents for `prod_l S_{1,0,l}^{m_l} * S_{1,2,2}^k` on genus `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank3PairingSpec {
    pub g: u32,
    pub m: BTreeMap<u32, u32>,
    pub k: u32,
}

impl Rank3PairingSpec {
    pub fn new(g: u32, m: BTreeMap<u32, u32>, k: u32) -> Result<Self> {
        if g < 2 {
            return Err(Error::Precondition(format!(
                "genus must be at least 2, got {g}"
            )));
        }
        if let Some(l) = m.keys().find(|&&l| l < 2) {
            return Err(Error::Precondition(format!("S_{{1,0,{l}}} needs l >= 2")));
        }
        Ok(Rank3PairingSpec { g, m, k })
    }

    /// `sum_l l m_l`.
    pub fn s_degree(&self) -> i64 {
        self.m.iter().map(|(&l, &c)| l as i64 * c as i64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.s_degree() + self.k as i64 == 9 * (self.g as i64 - 1) + 1
    }
}

/// Checked pairing: errors unless `sum l m_l + k = 9(g-1) + 1`.
pub fn bracket_j20_j10_pairing(spec: &Rank3PairingSpec) -> Result<Rational> {
    if !spec.is_balanced() {
        return Err(Error::DegreeMismatch(format!(
            "sum l m_l + k = {} but the component has dimension {}",
            spec.s_degree() + spec.k as i64,
            9 * (spec.g as i64 - 1) + 1
        )));
    }
    bracket_j20_j10_with_margin(spec, 0)
}

/// The residue extraction without the balance check; unbalanced specs give 0.
pub fn bracket_j20_j10_raw(spec: &Rank3PairingSpec) -> Result<Rational> {
    bracket_j20_j10_with_margin(spec, 0)
}

/// As [`bracket_j20_j10_raw`], with every expansion taken `margin` orders
/// beyond what the residues need.
pub fn bracket_j20_j10_with_margin(spec: &Rank3PairingSpec, margin: i64) -> Result<Rational> {
    let v = ["z1", "z2", "alpha"];
    let p = 2 * spec.g as i64 - 2;
    let region = ExpansionRegion::new(&["z1", "z2"]);

    // S-classes restrict to (1/l!) (w_1^l + w_2^l + w_3^l) on the weights
    let third = rat(1, 3);
    let weights = [
        LinearForm::new().term("z1", -&third).term("z2", -&third),
        LinearForm::new()
            .term("z1", int(2) * &third)
            .term("z2", -&third),
        LinearForm::new()
            .term("z1", -&third)
            .term("z2", int(2) * &third),
    ];
    let mut poly = MultiLaurent::one(&v);
    for (&l, &c) in &spec.m {
        let mut s = MultiLaurent::zero(&v);
        for w in &weights {
            s = s.add(&MultiLaurent::from_linear(&v, w)?.pow(l)?)?;
        }
        poly = poly.mul(&s.scale(&recip_factorial(l as i64)).pow(c)?)?;
    }

    // z1-exponents: z1^{-p} from the prefactor, -1 from the Bernoulli factor,
    // >= 0 from the rest; the z1-residue reads exponent -1
    let pole = expand_binomial_pole(
        &v,
        &LinearForm::new().term("z2", int(1)).term("z1", int(-1)),
        -p,
        &region,
        required_order(-1, &[-p, -1]) + margin,
    )?;
    let bern = one_minus_exp_reciprocal(
        &v,
        "z1",
        Some("alpha"),
        required_order(-1, &[-p, 0]) + margin,
    )?;
    let pre = MultiLaurent::monomial(&v, &[-p, -p, 3 * spec.g as i64], rat(-1, 2));

    let f = pre.mul(&pole)?.mul(&bern)?.mul(&poly)?;
    let r = f.residue("z1")?.residue("z2")?;
    Ok(r.coeff(&[spec.k as i64])? * fact(spec.k as i64))
}
