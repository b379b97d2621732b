//! `wallcross`: exact wall-crossing coefficients and intersection pairings.
//!
//! Exit codes: 0 on success, 1 on a domain error or a failed `verify`,
//! 2 on a usage error.

mod commands;
mod json;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::*;

#[derive(Parser, Debug)]
#[command(
    name = "wallcross",
    version,
    about = "Exact wall-crossing coefficients and intersection pairings"
)]
struct Cli {
    /// Print JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Run the golden-value table.
    #[arg(long)]
    verify: bool,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Pairings on the moduli of n points on P^1.
    Npoints(NpointsArgs),
    /// S, U and U~ tables for a list of classes.
    WcfCoeffs(WcfArgs),
    /// JK_{r,d}(c) - J_{r,d} as a Lie expression.
    JkMinusJoyce(JkArgs),
    /// JK_{r,d}(c) - PiJ'_{r,d} over slope chains.
    #[command(name = "thm75")]
    ChainExpansion(ChainExpansionArgs),
    /// PiJ'_{r,d} in terms of Joyce classes.
    PiPair(RdArgs),
    /// Rank 2 Jeffrey-Kirwan pairing.
    Rank2Jk(Rank2JkArgs),
    /// Rank 2 pairing on the partial desingularization.
    Rank2Jkkw(Rank2JkkwArgs),
    /// Rank 3 pairing of [J(2,0),J(1,0)].
    Rank3Bracket(Rank3Args),
    /// Truncated intersection Poincare series.
    IhSeries(IhArgs),
    /// Zeta-regularized sum of a polynomial in d.
    ZetaReg(ZetaArgs),
    /// Recompute the golden values.
    Verify,
}

fn name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Npoints(_) => "npoints",
        Cmd::WcfCoeffs(_) => "wcf-coeffs",
        Cmd::JkMinusJoyce(_) => "jk-minus-joyce",
        Cmd::ChainExpansion(_) => "thm75",
        Cmd::PiPair(_) => "pi-pair",
        Cmd::Rank2Jk(_) => "rank2-jk",
        Cmd::Rank2Jkkw(_) => "rank2-jkkw",
        Cmd::Rank3Bracket(_) => "rank3-bracket",
        Cmd::IhSeries(_) => "ih-series",
        Cmd::ZetaReg(_) => "zeta-reg",
        Cmd::Verify => "verify",
    }
}

fn run_verify(as_json: bool) -> ExitCode {
    let r = verify::run();
    if as_json {
        let v = json::envelope(
            "verify",
            json!({ "passed": r.passed, "failed": r.failed, "lines": r.lines }),
        );
        println!("{v}");
    } else {
        for l in &r.lines {
            println!("{l}");
        }
        println!("{} passed, {} failed", r.passed, r.failed);
    }
    if r.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let cmd = match cli.cmd {
        Some(Cmd::Verify) => return run_verify(cli.json),
        None if cli.verify => return run_verify(cli.json),
        None => {
            eprintln!("error: a subcommand is required (try --help)");
            return ExitCode::from(2);
        }
        Some(c) => c,
    };
    let out = match &cmd {
        Cmd::Npoints(a) => npoints(a),
        Cmd::WcfCoeffs(a) => wcf_coeffs(a),
        Cmd::JkMinusJoyce(a) => jk_minus_joyce(a),
        Cmd::ChainExpansion(a) => chain_expansion(a),
        Cmd::PiPair(a) => pi_pair(a),
        Cmd::Rank2Jk(a) => rank2_jk(a),
        Cmd::Rank2Jkkw(a) => rank2_jkkw(a),
        Cmd::Rank3Bracket(a) => rank3_bracket(a),
        Cmd::IhSeries(a) => ih_series(a),
        Cmd::ZetaReg(a) => zeta_reg(a),
        Cmd::Verify => unreachable!(),
    };
    match out {
        Ok(o) if cli.json => {
            println!("{}", json::envelope(name(&cmd), o.json));
            ExitCode::SUCCESS
        }
        Ok(o) => {
            println!("{}", o.plain);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!(
                "error: {}",
                format!("{e:#}").lines().next().unwrap_or_default()
            );
            ExitCode::from(1)
        }
    }
}
