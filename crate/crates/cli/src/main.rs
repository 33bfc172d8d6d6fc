//! Command-line front end for the spherical series and local-factor
//! toolkit.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports a
//! failure, 2 on usage or input errors.

mod params_io;
mod render;
mod suites;

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hecke_core::engine::{Engine, PrimeMode};
use hecke_core::lfactor::{
    eisenstein_params, hodge_spinor, ikeda_params, lift_merge_params, motivic_range_warning,
    spin_polynomial, standard_polynomial, FactoredXPoly, SatakeParams,
};
use hecke_core::spherical::{SphericalContext, VarGroup};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "hecke-series",
    about = "Exact generating series, verification suites, and local-factor utilities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Print the closed form (and optionally coefficients) of a
    /// spherical generating series.
    Series {
        /// Genus of the underlying group (1 or 2).
        #[arg(long, default_value_t = 2)]
        genus: usize,
        /// Substitute each variable by its m-th power before summing.
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Number of series coefficients to print (0 for none).
        #[arg(long, default_value_t = 0)]
        terms: usize,
        /// Output format.
        #[arg(long, default_value = "text", value_parser = ["text", "json", "latex"])]
        format: String,
    },
    /// Run a verification suite and report per-check results.
    Verify {
        /// Suite name, or `all`.
        suite: String,
        /// Series-prefix comparison depth for the convolution suite.
        #[arg(long, default_value_t = 12)]
        prefix_order: u32,
        /// Specialize the formal prime to this integer (at least 2)
        /// where a numeric check is available.
        #[arg(long)]
        prime: Option<u32>,
        /// Output format.
        #[arg(long, default_value = "text", value_parser = ["text", "json"])]
        format: String,
    },
    /// Local-factor utilities over exact Satake parameters.
    #[command(subcommand)]
    Lfactor(LfactorCmd),
}

#[derive(Subcommand)]
enum LfactorCmd {
    /// Spinor polynomial of the parameter set read from stdin.
    Spin,
    /// Standard polynomial of the parameter set read from stdin.
    Standard,
    /// Hodge type of the spinor motive at the given genus and weight.
    Hodge {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        /// Weight as an affine expression in `k` and `l`, e.g. `k` or `k-2`.
        #[arg(long, default_value = "k")]
        weight: String,
    },
    /// Merge two parameter sets (read `{"f": ..., "g": ...}` from stdin)
    /// into the parameter set of the degenerate lift.
    Merge {
        /// Accept weights that do not satisfy the lift relation.
        #[arg(long)]
        allow_weight_mismatch: bool,
    },
    /// Satake parameters of a genus-n Eisenstein series.
    Eisenstein {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, default_value = "k")]
        weight: String,
    },
    /// Satake parameters of the degree-2m lift of an elliptic form.
    Ikeda {
        /// Genus of the lift (even, at least 2).
        #[arg(long, default_value_t = 2)]
        genus: usize,
        /// Weight `k` of the lift; the elliptic input has weight `2k`.
        #[arg(long, default_value = "k")]
        weight: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Commands::Series {
            genus,
            power,
            terms,
            format,
        } => cmd_series(genus, power, terms, &format),
        Commands::Verify {
            suite,
            prefix_order,
            prime,
            format,
        } => cmd_verify(&suite, prefix_order, prime, &format),
        Commands::Lfactor(cmd) => cmd_lfactor(cmd),
    }
}

fn cmd_series(genus: usize, power: u32, terms: usize, format: &str) -> Result<u8, String> {
    if power == 0 {
        return Err("power must be at least 1".to_string());
    }
    let ctx = SphericalContext::new(genus, VarGroup::X).map_err(|e| e.to_string())?;
    let closed = if power == 1 {
        match genus {
            1 => ctx.series_genus1(),
            _ => ctx.andrianov_series_genus2(),
        }
    } else {
        ctx.power_series_closed_form(power)
    }
    .map_err(|e| e.to_string())?;
    let coeffs = if terms > 0 {
        closed
            .series_expand(ctx.series_var(), terms - 1)
            .map_err(|e| e.to_string())?
    } else {
        Vec::new()
    };
    match format {
        "json" => {
            let out = json!({
                "genus": genus,
                "power": power,
                "terms": terms,
                "closed_form": closed.to_json(),
                "coefficients": coeffs.iter().map(|c| c.render()).collect::<Vec<_>>(),
            });
            self::out(&serde_json::to_string_pretty(&out).expect("serializable"));
        }
        "latex" => {
            out(&render::latex_rf(ctx.table(), &closed));
            for (i, c) in coeffs.iter().enumerate() {
                out(&format!("X^{{{}}}: {}", i, render::latex_poly(ctx.table(), c)));
            }
        }
        _ => {
            out(&closed.render());
            for (i, c) in coeffs.iter().enumerate() {
                out(&format!("X^{}: {}", i, c.render()));
            }
        }
    }
    Ok(0)
}

fn cmd_verify(
    suite: &str,
    prefix_order: u32,
    prime: Option<u32>,
    format: &str,
) -> Result<u8, String> {
    let mode = match prime {
        Some(p) if p < 2 => return Err("prime must be at least 2".to_string()),
        Some(p) => PrimeMode::Numeric(p),
        None => PrimeMode::Symbolic,
    };
    let engine = Engine::new(mode)
        .map_err(|e| e.to_string())?
        .with_prefix_order(prefix_order);
    let report = suites::run_report(&engine, suite).ok_or_else(|| {
        format!(
            "unknown suite '{}'; expected one of: {}, all",
            suite,
            suites::SUITES.join(", ")
        )
    })?;
    match format {
        "json" => out(&serde_json::to_string_pretty(&report.to_json()).expect("serializable")),
        _ => {
            let text = report.render_text();
            let _ = write!(std::io::stdout(), "{}", text);
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_lfactor(cmd: LfactorCmd) -> Result<u8, String> {
    match cmd {
        LfactorCmd::Spin => {
            let params = read_params_stdin()?;
            emit(&factors_json(&params, &spin_polynomial(&params)));
        }
        LfactorCmd::Standard => {
            let params = read_params_stdin()?;
            let poly = standard_polynomial(&params).map_err(|e| e.to_string())?;
            emit(&factors_json(&params, &poly));
        }
        LfactorCmd::Hodge { genus, weight } => {
            if genus == 0 {
                return Err("genus must be at least 1".to_string());
            }
            let k = params_io::parse_aff_text(&weight)?;
            let hodge = hodge_spinor(genus, &k);
            emit(&json!({
                "genus": genus,
                "weight": k.to_string(),
                "pairs": hodge.to_json(),
                "warning": motivic_range_warning(genus, &k),
            }));
        }
        LfactorCmd::Merge {
            allow_weight_mismatch,
        } => {
            let input = read_stdin_json()?;
            let f = params_io::params_from_json(
                input.get("f").ok_or("missing field \"f\" on stdin")?,
            )?;
            let g = params_io::params_from_json(
                input.get("g").ok_or("missing field \"g\" on stdin")?,
            )?;
            let merged =
                lift_merge_params(&f, &g, allow_weight_mismatch).map_err(|e| e.to_string())?;
            emit(&json!({
                "params": params_io::params_to_json(&merged.params),
                "warning": merged.warning,
            }));
        }
        LfactorCmd::Eisenstein { genus, weight } => {
            require_even_genus(genus)?;
            let k = params_io::parse_aff_text(&weight)?;
            emit(&params_io::params_to_json(&eisenstein_params(&k, genus)));
        }
        LfactorCmd::Ikeda { genus, weight } => {
            require_even_genus(genus)?;
            let k = params_io::parse_aff_text(&weight)?;
            emit(&params_io::params_to_json(&ikeda_params(&k, genus / 2)));
        }
    }
    Ok(0)
}

fn require_even_genus(genus: usize) -> Result<(), String> {
    if genus < 2 || genus % 2 != 0 {
        return Err("genus must be even and at least 2".to_string());
    }
    Ok(())
}

fn read_stdin_json() -> Result<Value, String> {
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| format!("reading stdin: {}", e))?;
    serde_json::from_str(&buf).map_err(|e| format!("stdin is not valid JSON: {}", e))
}

fn read_params_stdin() -> Result<SatakeParams, String> {
    params_io::params_from_json(&read_stdin_json()?)
}

fn factors_json(params: &SatakeParams, poly: &FactoredXPoly) -> Value {
    json!({
        "genus": params.genus(),
        "factors": poly.to_json(),
        "product": poly.render(),
    })
}

fn emit(v: &Value) {
    out(&serde_json::to_string_pretty(v).expect("serializable"));
}

/// Print a line, quietly tolerating a closed pipe (e.g. `| head`).
fn out(s: &str) {
    let _ = writeln!(std::io::stdout(), "{}", s);
}
