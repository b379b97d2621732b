use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallcross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn plain(args: &[&str]) -> String {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&plain(&a)).unwrap()
}

#[test]
fn examples() {
    assert_eq!(plain(&["npoints", "--n", "3", "--m", "0"]), "1");
    assert_eq!(
        plain(&[
            "jk-minus-joyce",
            "--r",
            "3",
            "--d",
            "0",
            "--weights",
            "plus"
        ]),
        "-1/6 [J(2,0),J(1,0)]"
    );
    assert_eq!(
        plain(&["rank3-bracket", "--g", "2", "--m", "3:1", "--k", "7"]),
        "70/9"
    );
    assert_eq!(plain(&["zeta-reg", "--coeffs", "0,1"]), "-1/12");
    assert_eq!(
        plain(&[
            "npoints",
            "--r",
            "2",
            "--mode",
            "ih-series",
            "--max-degree",
            "2"
        ]),
        "1 0 1"
    );
}

#[test]
fn general_and_special_routes_print_the_same() {
    let a = plain(&[
        "jk-minus-joyce",
        "--r",
        "4",
        "--d",
        "0",
        "--weights",
        "minus",
        "--route",
        "general",
    ]);
    let b = plain(&[
        "jk-minus-joyce",
        "--r",
        "4",
        "--d",
        "0",
        "--weights",
        "minus",
        "--route",
        "special",
    ]);
    assert_eq!(a, b);
}

#[test]
fn plain_and_json_agree() {
    let cases: &[&[&str]] = &[
        &["npoints", "--n", "5", "--m", "1"],
        &["npoints", "--n", "6", "--a", "3,0,0,0,0,0"],
        &["rank2-jk", "--g", "2", "--m", "0"],
        &["rank2-jkkw", "--g", "3", "--m", "3", "--nn", "3"],
        &[
            "thm75",
            "--r",
            "3",
            "--d",
            "0",
            "--weights",
            "e,1/3,1/2",
            "--chain",
            "descending",
        ],
        &["pi-pair", "--r", "3", "--d", "0"],
    ];
    for args in cases {
        let j = json(args);
        assert_eq!(j["schema"], "1");
        assert_eq!(j["value"].as_str().unwrap(), plain(args), "{args:?}");
    }
}

#[test]
fn jkkw_route_sums_to_value() {
    let j = json(&["rank2-jkkw", "--g", "3", "--m", "3", "--nn", "3"]);
    let parse = |v: &Value| wallcross_core::arith::parse_rational(v.as_str().unwrap()).unwrap();
    let route: Vec<_> = j["route"].as_array().unwrap().iter().map(parse).collect();
    assert_eq!(route[1], wallcross_core::arith::rat(35, 512));
    let total = route
        .iter()
        .fold(wallcross_core::arith::int(0), |a, b| a + b);
    assert_eq!(parse(&j["value"]), total.clone());
    let raw = json(&["rank2-jkkw", "--g", "3", "--m", "3", "--nn", "3", "--raw"]);
    assert_eq!(parse(&raw["value"]), total * wallcross_core::arith::int(6));
}

#[test]
fn wcf_table() {
    let out = plain(&[
        "wcf-coeffs",
        "--class",
        "1,0,100",
        "--class",
        "2,1,011",
        "--tau",
        "0,1/3,1/2",
        "--tau-prime",
        "1/3,2/3,1",
    ]);
    assert!(out.ends_with("lie: -1/2 [a1,a2]"), "{out}");
    let j = json(&[
        "wcf-coeffs",
        "--class",
        "1,0,100",
        "--class",
        "2,1,011",
        "--tau",
        "0,1/3,1/2",
        "--tau-prime",
        "1/3,2/3,1",
    ]);
    assert_eq!(j["rows"].as_array().unwrap().len(), 2);
    assert_eq!(j["lie"][0]["coefficient"], "-1/2");
}

#[test]
fn exit_codes() {
    let o = run(&["npoints", "--n", "5", "--m", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("degree mismatch"));

    assert_eq!(run(&["npoints", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(
        run(&["rank3-bracket", "--g", "2", "--m", "3:1", "--k", "6"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "jk-minus-joyce",
            "--r",
            "3",
            "--d",
            "0",
            "--weights",
            "1/2,1/3,1"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify"]);
    let b = run(&["--verify"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let failed = text.lines().any(|l| l.starts_with("FAIL"));
    assert_eq!(a.status.success(), !failed);
    assert!(text.lines().last().unwrap().ends_with("failed"));
}
