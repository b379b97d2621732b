//! Golden values, recomputed on every run.

use anyhow::Result;

use crate::commands::{self, *};

type Golden = (&'static str, Box<dyn Fn() -> Result<String>>, &'static str);

fn golden() -> Vec<Golden> {
    fn plain(o: Result<Output>) -> Result<String> {
        o.map(|o| o.plain)
    }
    let np = |n: usize, m: u32, a: Option<&'static str>, mode: Option<NpointsMode>| NpointsArgs {
        n: Some(n),
        r: None,
        m,
        a: a.map(String::from),
        mode,
        max_degree: None,
    };
    let jk = |r: u32, d: i64, w: &'static str| JkArgs {
        r,
        d,
        weights: w.into(),
        route: RouteArg::Auto,
    };
    vec![
        (
            "npoints n=3",
            Box::new(move || plain(commands::npoints(&np(3, 0, None, None)))),
            "1",
        ),
        (
            "npoints n=5 m=1",
            Box::new(move || plain(commands::npoints(&np(5, 1, None, None)))),
            "-3/4",
        ),
        (
            "npoints n=4 a=e_1",
            Box::new(move || plain(commands::npoints(&np(4, 0, Some("1,0,0,0"), None)))),
            "1/4",
        ),
        (
            "npoints n=4 a=e_1 resolution",
            Box::new(move || {
                plain(commands::npoints(&np(
                    4,
                    0,
                    Some("1,0,0,0"),
                    Some(NpointsMode::Resolution),
                )))
            }),
            "1/4",
        ),
        (
            "jk-minus-joyce 2,0,plus",
            Box::new(move || plain(jk_minus_joyce(&jk(2, 0, "plus")))),
            "0",
        ),
        (
            "jk-minus-joyce 3,0,plus",
            Box::new(move || plain(jk_minus_joyce(&jk(3, 0, "plus")))),
            "-1/6 [J(2,0),J(1,0)]",
        ),
        (
            "jk-minus-joyce 3,0,minus",
            Box::new(move || plain(jk_minus_joyce(&jk(3, 0, "minus")))),
            "1/6 [J(2,0),J(1,0)]",
        ),
        (
            "jk-minus-joyce 4,0,plus",
            Box::new(move || plain(jk_minus_joyce(&jk(4, 0, "plus")))),
            "-1/4 [J(3,0),J(1,0)] + 1/24 [[J(2,0),J(1,0)],J(1,0)]",
        ),
        (
            "jk-minus-joyce 4,2,minus",
            Box::new(move || plain(jk_minus_joyce(&jk(4, 2, "minus")))),
            "0",
        ),
        (
            "thm75 2,0,e,1/3",
            Box::new(|| {
                plain(chain_expansion(&ChainExpansionArgs {
                    r: 2,
                    d: 0,
                    weights: "e,1/3".into(),
                    chain: ChainArg::Ascending,
                }))
            }),
            "1/4 [PiJ'(1,0),JK(1,0;c=e)]",
        ),
        (
            "rank2-jk g=2 m=0",
            Box::new(|| plain(rank2_jk(&Rank2JkArgs { g: 2, m: 0 }))),
            "1/6",
        ),
        (
            "rank2-jkkw g=m=n=3 raw",
            Box::new(|| {
                plain(rank2_jkkw(&Rank2JkkwArgs {
                    g: 3,
                    m: 3,
                    nn: 3,
                    raw: true,
                }))
            }),
            "-1623/256",
        ),
        (
            "rank3-bracket g=2",
            Box::new(|| {
                plain(rank3_bracket(&Rank3Args {
                    g: 2,
                    m: "3:1".into(),
                    k: 7,
                }))
            }),
            "70/9",
        ),
        (
            "rank3-bracket g=3",
            Box::new(|| {
                plain(rank3_bracket(&Rank3Args {
                    g: 3,
                    m: "3:3".into(),
                    k: 10,
                }))
            }),
            "-32200/729",
        ),
        (
            "ih-series r=2",
            Box::new(|| {
                plain(ih_series(&IhArgs {
                    r: 2,
                    max_degree: Some(4),
                }))
            }),
            "1 0 1 0 4",
        ),
        (
            "zeta-reg d",
            Box::new(|| {
                plain(zeta_reg(&ZetaArgs {
                    coeffs: "0,1".into(),
                }))
            }),
            "-1/12",
        ),
    ]
}

pub struct Report {
    pub lines: Vec<String>,
    pub passed: usize,
    pub failed: usize,
}

pub fn run() -> Report {
    let mut r = Report {
        lines: Vec::new(),
        passed: 0,
        failed: 0,
    };
    for (name, f, want) in golden() {
        match f() {
            Ok(got) if got == want => {
                r.passed += 1;
                r.lines.push(format!("PASS {name}: {got}"));
            }
            Ok(got) => {
                r.failed += 1;
                r.lines
                    .push(format!("FAIL {name}: got {got}, expected {want}"));
            }
            Err(e) => {
                r.failed += 1;
                r.lines.push(format!("FAIL {name}: error: {e}"));
            }
        }
    }
    r
}
