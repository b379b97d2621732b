use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use wallcross_core::arith::{format_rational, parse_rational, zeta_reg_sum};
use wallcross_core::curvepair::{
    bracket_j20_j10_pairing, jk_pairing_rank2, jkkw_pairing_rank2, Rank2Monomial, Rank3PairingSpec,
};
use wallcross_core::freelie::{assoc_from_table, utilde_solve, LiePoly};
use wallcross_core::npoints::{
    blowup_correction, ih_poincare_series, pairing_even_desing, pairing_even_resolution,
    pairing_odd, wall_crossing_sum, MonomialClass,
};
use wallcross_core::stability::{
    coeff_s, u_table, ClassVec, ParabolicWeight, SlopeFn, StabilityPair,
};
use wallcross_core::wallcross::{
    jk_minus_joyce_general, jk_minus_joyce_special, jk_minus_pi_pair_expr, pi_pair_expansion,
    render, Chain, LieExpr, Sign,
};
use wallcross_core::Rational;

use crate::json as js;

/// What a command prints: a plain line (or lines) and the JSON payload.
pub struct Output {
    pub plain: String,
    pub json: Value,
}

impl Output {
    fn value(q: &Rational, inputs: Value, route: Value) -> Self {
        Output {
            plain: format_rational(q),
            json: json!({ "inputs": inputs, "value": js::rational(q), "route": route }),
        }
    }

    fn expr(e: &LieExpr, inputs: Value) -> Self {
        let s = render(e);
        Output {
            json: json!({ "inputs": inputs, "value": s, "expr": js::lie_expr(e) }),
            plain: s,
        }
    }
}

/// Weights: `plus`, `minus`, or comma-separated literals like `0,1-e,1-e^2`.
#[derive(Clone, Debug)]
pub enum WeightArg {
    Special(Sign),
    Explicit(ParabolicWeight),
}

impl WeightArg {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "plus" | "c+" => WeightArg::Special(Sign::Plus),
            "minus" | "c-" => WeightArg::Special(Sign::Minus),
            other => WeightArg::Explicit(ParabolicWeight::parse(other)?),
        })
    }

    fn resolve(&self, len: usize) -> ParabolicWeight {
        match self {
            WeightArg::Special(s) => s.weight(len),
            WeightArg::Explicit(c) => c.clone(),
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse::<T>()
                .map_err(|e| anyhow!("bad list entry {p:?}: {e}"))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NpointsMode {
    Odd,
    Resolution,
    Desing,
    Correction,
    IhSeries,
}

#[derive(Args, Debug)]
pub struct NpointsArgs {
    /// Number of points.
    #[arg(long)]
    pub n: Option<usize>,
    /// Half the number of points, for the even case.
    #[arg(long)]
    pub r: Option<usize>,
    /// Exponent of t^2.
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    /// Exponents of y_1, ..., y_n, comma-separated; zeros if omitted.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<NpointsMode>,
    /// Highest power of z for ih-series.
    #[arg(long)]
    pub max_degree: Option<usize>,
}

pub fn npoints(args: &NpointsArgs) -> Result<Output> {
    let n = match (args.n, args.r) {
        (Some(n), None) => n,
        (None, Some(r)) => 2 * r,
        (Some(n), Some(r)) if n == 2 * r => n,
        (Some(_), Some(_)) => bail!("--n must equal 2 * --r"),
        (None, None) => bail!("one of --n or --r is required"),
    };
    let mode = args.mode.unwrap_or(if n % 2 == 1 {
        NpointsMode::Odd
    } else {
        NpointsMode::Desing
    });
    if mode != NpointsMode::Odd && n % 2 == 1 {
        bail!("precondition violated: mode {mode:?} needs an even number of points");
    }
    let r = n / 2;
    if mode == NpointsMode::IhSeries {
        let max = args.max_degree.unwrap_or(2 * r);
        let s = ih_poincare_series(r, max)?;
        let plain = s.iter().map(format_rational).collect::<Vec<_>>().join(" ");
        return Ok(Output {
            plain,
            json: json!({ "inputs": { "r": r, "max_degree": max }, "coefficients": js::rationals(&s) }),
        });
    }
    let a: Vec<u32> = match &args.a {
        Some(s) => parse_list(s)?,
        None => vec![0; n],
    };
    let cls = MonomialClass::new(args.m, a.clone());
    let inputs = json!({ "n": n, "m": args.m, "a": a, "mode": format!("{mode:?}").to_lowercase() });
    Ok(match mode {
        NpointsMode::Odd => Output::value(&pairing_odd(n, &cls)?, inputs, json!({})),
        NpointsMode::Resolution => {
            Output::value(&pairing_even_resolution(r, &cls)?, inputs, json!({}))
        }
        NpointsMode::Desing => {
            let v = pairing_even_desing(r, &cls)?;
            let route = json!({
                "wall_crossing": js::rational(&wall_crossing_sum(r, &cls)?),
                "blowup_correction": js::rational(&blowup_correction(r, &cls)?),
            });
            Output::value(&v, inputs, route)
        }
        NpointsMode::Correction => Output::value(&blowup_correction(r, &cls)?, inputs, json!({})),
        NpointsMode::IhSeries => unreachable!(),
    })
}

#[derive(Args, Debug)]
pub struct WcfArgs {
    /// A class `r,d` or `r,d,flag` such as `1,0,100`; repeat for each class.
    #[arg(long = "class", required = true)]
    pub classes: Vec<String>,
    /// Weight of the first slope function.
    #[arg(long)]
    pub tau: String,
    /// Weight of the second slope function.
    #[arg(long)]
    pub tau_prime: String,
}

fn parse_class(s: &str) -> Result<ClassVec> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let r: u32 = parts
        .first()
        .context("empty class")?
        .parse()
        .with_context(|| format!("bad rank in {s:?}"))?;
    let d: i64 = parts
        .get(1)
        .context("class needs r,d")?
        .parse()
        .with_context(|| format!("bad degree in {s:?}"))?;
    match parts.get(2) {
        None => Ok(ClassVec::new(r, d)),
        Some(f) => {
            let flag = f
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| anyhow!("bad flag digit {c:?} in {s:?}"))
                })
                .collect::<Result<Vec<u32>>>()?;
            Ok(ClassVec::with_flag(r, d, flag))
        }
    }
}

pub fn wcf_coeffs(args: &WcfArgs) -> Result<Output> {
    let classes = args
        .classes
        .iter()
        .map(|s| parse_class(s))
        .collect::<Result<Vec<_>>>()?;
    let len = classes
        .first()
        .and_then(|c| c.f.as_ref())
        .map_or(0, |f| f.len());
    let pair = StabilityPair::new(
        SlopeFn::new(WeightArg::parse(&args.tau)?.resolve(len)),
        SlopeFn::new(WeightArg::parse(&args.tau_prime)?.resolve(len)),
    );
    let n = classes.len();
    let u = u_table(&classes, &pair)?;
    let ut = utilde_solve(&u, n)?;
    let lie = LiePoly::from_assoc(&assoc_from_table(&u))?;
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for sigma in wallcross_core::combinat::permutations(n) {
        let seq: Vec<ClassVec> = sigma.iter().map(|&i| classes[i].clone()).collect();
        let s = coeff_s(&seq, &pair)?;
        let zero = Rational::from_integer(0.into());
        let uu = u.get(&sigma).unwrap_or(&zero);
        let tt = ut.get(&sigma).unwrap_or(&zero);
        let word: Vec<usize> = sigma.iter().map(|i| i + 1).collect();
        let w = word
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        lines.push(format!(
            "{w}\tS={s}\tU={}\tU~={}",
            format_rational(uu),
            format_rational(tt)
        ));
        rows.push(
            json!({ "sigma": word, "S": s, "U": js::rational(uu), "Utilde": js::rational(tt) }),
        );
    }
    let lie_str = lie.render(|i| format!("a{}", i + 1));
    lines.push(format!("lie: {lie_str}"));
    Ok(Output {
        plain: lines.join("\n"),
        json: json!({
            "inputs": {
                "classes": classes.iter().map(js::class).collect::<Vec<_>>(),
                "tau": js::weight(&pair.tau.weight),
                "tau_prime": js::weight(&pair.tau_prime.weight),
            },
            "rows": rows,
            "lie": js::lie_poly(&lie),
            "value": lie_str,
        }),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Auto,
    General,
    Special,
}

#[derive(Args, Debug)]
pub struct JkArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub d: i64,
    /// `plus`, `minus`, or comma-separated weight literals.
    #[arg(long)]
    pub weights: String,
    #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
    pub route: RouteArg,
}

pub fn jk_minus_joyce(args: &JkArgs) -> Result<Output> {
    let w = WeightArg::parse(&args.weights)?;
    let e = match (&w, args.route) {
        (WeightArg::Special(s), RouteArg::Auto | RouteArg::Special) => {
            jk_minus_joyce_special(args.r, args.d, *s)?
        }
        (WeightArg::Explicit(_), RouteArg::Special) => {
            bail!("the special route needs --weights plus or minus")
        }
        _ => jk_minus_joyce_general(args.r, args.d, &w.resolve(args.r as usize))?,
    };
    let inputs =
        json!({ "r": args.r, "d": args.d, "weights": js::weight(&w.resolve(args.r as usize)) });
    Ok(Output::expr(&e, inputs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChainArg {
    Ascending,
    Descending,
}

#[derive(Args, Debug)]
pub struct ChainExpansionArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub d: i64,
    #[arg(long)]
    pub weights: String,
    #[arg(long, value_enum, default_value_t = ChainArg::Ascending)]
    pub chain: ChainArg,
}

pub fn chain_expansion(args: &ChainExpansionArgs) -> Result<Output> {
    let c = WeightArg::parse(&args.weights)?.resolve(args.r as usize);
    let chain = match args.chain {
        ChainArg::Ascending => Chain::Ascending,
        ChainArg::Descending => Chain::Descending,
    };
    let e = jk_minus_pi_pair_expr(args.r, args.d, &c, chain)?;
    let inputs = json!({ "r": args.r, "d": args.d, "weights": js::weight(&c), "chain": format!("{chain:?}").to_lowercase() });
    Ok(Output::expr(&e, inputs))
}

#[derive(Args, Debug)]
pub struct RdArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub d: i64,
}

pub fn pi_pair(args: &RdArgs) -> Result<Output> {
    Ok(Output::expr(
        &pi_pair_expansion(args.r, args.d)?,
        json!({ "r": args.r, "d": args.d }),
    ))
}

#[derive(Args, Debug)]
pub struct Rank2JkArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long)]
    pub m: u32,
}

pub fn rank2_jk(args: &Rank2JkArgs) -> Result<Output> {
    if args.g < 2 || 2 * args.m > 4 * args.g - 3 {
        bail!("precondition violated: need g >= 2 and 2m <= 4g - 3");
    }
    Ok(Output::value(
        &jk_pairing_rank2(args.g, args.m),
        json!({ "g": args.g, "m": args.m }),
        json!([]),
    ))
}

#[derive(Args, Debug)]
pub struct Rank2JkkwArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long)]
    pub m: u32,
    /// Exponent of f_2.
    #[arg(long)]
    pub nn: u32,
    /// Pair with a_2^m f_2^n instead of a_2^m f_2^n / n!.
    #[arg(long)]
    pub raw: bool,
}

pub fn rank2_jkkw(args: &Rank2JkkwArgs) -> Result<Output> {
    let x = Rank2Monomial::new(args.g, args.m, args.nn)?;
    let p = jkkw_pairing_rank2(&x, args.raw)?;
    let inputs = json!({ "g": args.g, "m": args.m, "n": args.nn, "raw": args.raw });
    Ok(Output::value(
        &p.value,
        inputs,
        js::rationals(&[p.jk, p.blowup1, p.blowup2]),
    ))
}

#[derive(Args, Debug)]
pub struct Rank3Args {
    #[arg(long)]
    pub g: u32,
    /// Multiplicities `l:m_l`, comma-separated, e.g. `3:1`.
    #[arg(long)]
    pub m: String,
    /// Exponent of S_{1,2,2}.
    #[arg(long)]
    pub k: u32,
}

pub fn rank3_bracket(args: &Rank3Args) -> Result<Output> {
    let mut m = BTreeMap::new();
    for part in args.m.split(',').filter(|p| !p.trim().is_empty()) {
        let (l, c) = part
            .split_once(':')
            .ok_or_else(|| anyhow!("expected l:m_l, got {part:?}"))?;
        *m.entry(l.trim().parse::<u32>()?).or_insert(0) += c.trim().parse::<u32>()?;
    }
    let spec = Rank3PairingSpec::new(args.g, m.clone(), args.k)?;
    let v = bracket_j20_j10_pairing(&spec)?;
    let ms: BTreeMap<String, u32> = m.into_iter().map(|(l, c)| (l.to_string(), c)).collect();
    Ok(Output::value(
        &v,
        json!({ "g": args.g, "m": ms, "k": args.k }),
        json!([]),
    ))
}

#[derive(Args, Debug)]
pub struct IhArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub max_degree: Option<usize>,
}

pub fn ih_series(args: &IhArgs) -> Result<Output> {
    npoints(&NpointsArgs {
        n: None,
        r: Some(args.r),
        m: 0,
        a: None,
        mode: Some(NpointsMode::IhSeries),
        max_degree: args.max_degree,
    })
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    /// Coefficients of p(d) from the constant term up, e.g. `0,1` for d.
    #[arg(long)]
    pub coeffs: String,
}

pub fn zeta_reg(args: &ZetaArgs) -> Result<Output> {
    let c = args
        .coeffs
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Output::value(
        &zeta_reg_sum(&c),
        json!({ "coeffs": js::rationals(&c) }),
        json!([]),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_literals() {
        assert_eq!(
            parse_class("2,1,011").unwrap(),
            ClassVec::with_flag(2, 1, vec![0, 1, 1])
        );
        assert_eq!(parse_class("3,-2").unwrap(), ClassVec::new(3, -2));
        assert!(parse_class("1,0,1x").is_err());
        assert!(parse_class("1").is_err());
    }

    #[test]
    fn weight_keywords() {
        assert!(matches!(
            WeightArg::parse("plus").unwrap(),
            WeightArg::Special(Sign::Plus)
        ));
        assert!(matches!(
            WeightArg::parse("c-").unwrap(),
            WeightArg::Special(Sign::Minus)
        ));
        assert_eq!(WeightArg::parse("0,1/2").unwrap().resolve(2).len(), 2);
        assert!(WeightArg::parse("1/2,0").is_err());
    }
}
