//! Batch front end: certificates, oracle verification, witness construction
//! and seeded sweeps, all emitting one JSON document per invocation.
//!
//! Exit codes: 0 success / CERTIFIED / PASS, 2 CONDITION_FAILS or
//! verification FAIL, 3 NOT_APPLICABLE, 4 input error, 5 numerical failure.

mod sweep;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use zerocert::certifier::{
    best_simplicity_verdict, best_verdict, certify_auto, certify_cubic, certify_even,
    certify_hutchinson, certify_odd, certify_real, certify_truncated_entire, certify_uniform,
    Certificate, Verdict,
};
use zerocert::constants::{cubic_sharp_constant, ThresholdTable};
use zerocert::cubic::{discriminant3, max_modulus_scan, CubicParams};
use zerocert::extremal::{
    cubic_extremal, extremal_entire_truncation, extremal_even, extremal_odd, real_counterexample,
};
use zerocert::polyseries::{
    parse_input, parse_quotient_seq, quotients, serialize_poly, ComplexPoly,
};
use zerocert::rootlab::{
    find_roots_poly, realness_check, verify_annuli, AnnulusVerdict, RootConfig,
};
use zerocert::Error;

const EXIT_OK: i32 = 0;
const EXIT_CONDITION_FAILS: i32 = 2;
const EXIT_NOT_APPLICABLE: i32 = 3;
const EXIT_INPUT: i32 = 4;
const EXIT_NUMERICAL: i32 = 5;

#[derive(Parser)]
#[command(
    name = "zerocert",
    version,
    about = "Simple-zero certificates for polynomials with nonzero coefficients, with independent numerical verification"
)]
struct Cli {
    /// Emit compact single-line JSON instead of pretty-printed JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Threshold constants b(2n), b_infinity and the cubic sharp constant.
    Constants {
        /// Highest even degree to tabulate.
        #[arg(long, default_value_t = 8)]
        upto: u32,
        #[arg(long, default_value_t = 1e-12, allow_hyphen_values = true)]
        tol: f64,
    },
    /// Check the sufficient conditions against a polynomial file.
    Certify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = TheoremArg::Auto)]
        theorem: TheoremArg,
        /// For --theorem entire: assert that all unseen quotients also
        /// satisfy the bound (the input must be in quotient form).
        #[arg(long)]
        claimed_tail: bool,
    },
    /// Find all roots with the simultaneous-iteration oracle.
    Roots {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-12, allow_hyphen_values = true)]
        tol: f64,
    },
    /// Certify, then verify the annulus layout by winding counts and check
    /// realness where applicable; emits a combined report.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Construct a sharpness witness and write it as a polynomial file.
    Extremal {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Half-degree parameter (seed half-degree for --family entire,
        /// where 0 means choose the smallest that works).
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Quotient modulus for the even family; defaults to its threshold.
        #[arg(long)]
        c: Option<f64>,
        /// Factor offset for the odd family.
        #[arg(long, default_value_t = 1e4)]
        d: f64,
        /// Perturbation for the real family.
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
        /// Quotient slack for the entire family.
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Number of linear factors for the entire family.
        #[arg(long, default_value_t = 8)]
        levels: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The degree-3 sharp analysis.
    Cubic {
        #[command(subcommand)]
        command: CubicCommand,
    },
    /// Seeded random study: sample quotient sequences around a threshold,
    /// certify each, and verify with the oracles.
    Sweep {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
        margin_low: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        margin_high: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CubicCommand {
    /// Scan the reduced quartic's root moduli over a lambda grid.
    Scan {
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Evaluate the multiple-root locus at quotient parameters (a, b).
    Locus {
        #[arg(long, value_parser = parse_complex_arg)]
        a: Complex64,
        #[arg(long, value_parser = parse_complex_arg)]
        b: Complex64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Auto,
    Even,
    Odd,
    Uniform,
    Cubic,
    Real,
    Hutchinson,
    Entire,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Even,
    Odd,
    Entire,
    Real,
    Cubic,
}

fn parse_complex_arg(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got {s:?}"))?;
    Ok(Complex64::new(
        re.trim()
            .parse()
            .map_err(|e| format!("bad real part: {e}"))?,
        im.trim()
            .parse()
            .map_err(|e| format!("bad imaginary part: {e}"))?,
    ))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are successes; anything else is bad input
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(run(cli));
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::PhiDomain(_)
        | Error::ZeroCoefficient(_)
        | Error::DegreeTooSmall(_)
        | Error::DegreeTooLarge { .. }
        | Error::CoefficientRange { .. }
        | Error::Parse(_)
        | Error::BadParameter(_) => EXIT_INPUT,
        Error::NoConvergence(_)
        | Error::ContourTooClose { .. }
        | Error::NonIntegerWinding(_)
        | Error::BranchTracking(_)
        | Error::FactorSearch { .. } => EXIT_NUMERICAL,
    }
}

fn envelope(command: &str, payload: Value) -> Value {
    json!({
        "tool": "zerocert",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "result": payload,
    })
}

fn emit(compact: bool, doc: &Value) {
    if compact {
        println!("{doc}");
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(doc).expect("serializable")
        );
    }
}

fn read_poly(path: &PathBuf) -> Result<ComplexPoly, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

fn complex_pairs(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|z| json!([z.re, z.im])).collect())
}

fn verdict_exit(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Certified => EXIT_OK,
        Verdict::ConditionFails => EXIT_CONDITION_FAILS,
        Verdict::NotApplicable => EXIT_NOT_APPLICABLE,
    }
}

fn run(cli: Cli) -> i32 {
    let compact = cli.json;
    let outcome = match cli.command {
        Command::Constants { upto, tol } => cmd_constants(compact, upto, tol),
        Command::Certify {
            input,
            theorem,
            claimed_tail,
        } => cmd_certify(compact, &input, theorem, claimed_tail),
        Command::Roots { input, tol } => cmd_roots(compact, &input, tol),
        Command::Verify { input } => cmd_verify(compact, &input),
        Command::Extremal {
            family,
            n,
            c,
            d,
            delta,
            eps,
            levels,
            out,
        } => cmd_extremal(compact, family, n, c, d, delta, eps, levels, out),
        Command::Cubic { command } => cmd_cubic(compact, command),
        Command::Sweep {
            degree,
            trials,
            margin_low,
            margin_high,
            seed,
        } => sweep::run(compact, degree, trials, margin_low, margin_high, seed),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn cmd_constants(compact: bool, upto: u32, tol: f64) -> Result<i32, Error> {
    if upto < 2 {
        return Err(Error::BadParameter(format!(
            "--upto must be an even degree of at least 2, got {upto}"
        )));
    }
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::BadParameter(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    let table = ThresholdTable::compute(upto / 2, tol);
    let mut b = serde_json::Map::new();
    for (n, value) in &table.by_even_degree {
        b.insert((2 * n).to_string(), json!(value));
    }
    let doc = envelope(
        "constants",
        json!({
            "b": b,
            "b_inf": table.b_infinity,
            "cubic": table.cubic_constant,
            "tolerance": table.tolerance,
        }),
    );
    emit(compact, &doc);
    Ok(EXIT_OK)
}

fn certificates_json(certs: &[Certificate]) -> Value {
    serde_json::to_value(certs).expect("certificates serialize")
}

fn cmd_certify(
    compact: bool,
    input: &PathBuf,
    theorem: TheoremArg,
    claimed_tail: bool,
) -> Result<i32, Error> {
    let text =
        fs::read_to_string(input).map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
    let certs = if theorem == TheoremArg::Entire {
        // prefix of an entire function: quotient form carries the anchors
        let seq = match parse_quotient_seq(&text) {
            Ok(seq) => seq,
            Err(_) => quotients(&parse_input(&text)?),
        };
        vec![certify_truncated_entire(&seq, claimed_tail)]
    } else {
        let poly = parse_input(&text)?;
        match theorem {
            TheoremArg::Auto => certify_auto(&poly),
            TheoremArg::Even => vec![certify_even(&poly)],
            TheoremArg::Odd => vec![certify_odd(&poly)],
            TheoremArg::Uniform => vec![certify_uniform(&poly)],
            TheoremArg::Cubic => vec![certify_cubic(&poly)],
            TheoremArg::Real => vec![certify_real(&poly)],
            TheoremArg::Hutchinson => vec![certify_hutchinson(&poly)],
            TheoremArg::Entire => unreachable!(),
        }
    };
    // in auto mode the exit verdict answers the simple-zero question;
    // realness-only certificates are still reported but cannot drive it
    let verdict = if theorem == TheoremArg::Auto {
        best_simplicity_verdict(&certs)
    } else {
        best_verdict(&certs)
    };
    let doc = envelope(
        "certify",
        json!({
            "verdict": serde_json::to_value(verdict).expect("verdict serializes"),
            "certificates": certificates_json(&certs),
        }),
    );
    emit(compact, &doc);
    Ok(verdict_exit(verdict))
}

fn cmd_roots(compact: bool, input: &PathBuf, tol: f64) -> Result<i32, Error> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::BadParameter(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    let poly = read_poly(input)?;
    let cfg = RootConfig {
        tol,
        ..RootConfig::default()
    };
    let report = find_roots_poly(&poly, &cfg)?;
    let converged = report.converged;
    let doc = envelope(
        "roots",
        serde_json::to_value(&report).expect("report serializes"),
    );
    emit(compact, &doc);
    Ok(if converged { EXIT_OK } else { EXIT_NUMERICAL })
}

fn cmd_verify(compact: bool, input: &PathBuf) -> Result<i32, Error> {
    let poly = read_poly(input)?;
    let cfg = RootConfig::default();
    let certs = certify_auto(&poly);
    let verification = verify_annuli(&poly, &cfg)?;
    let realness = poly
        .is_real()
        .then(|| realness_check(&verification.report, cfg.im_tol));
    let code = match verification.verdict {
        AnnulusVerdict::Pass => EXIT_OK,
        AnnulusVerdict::Fail | AnnulusVerdict::Mismatch => EXIT_CONDITION_FAILS,
        AnnulusVerdict::ContourAbstain => EXIT_NUMERICAL,
    };
    let doc = envelope(
        "verify",
        json!({
            "certify_verdict": serde_json::to_value(best_verdict(&certs)).expect("serializes"),
            "certificates": certificates_json(&certs),
            "annuli": serde_json::to_value(&verification).expect("serializes"),
            "all_real": realness,
        }),
    );
    emit(compact, &doc);
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn cmd_extremal(
    compact: bool,
    family: FamilyArg,
    n: u32,
    c: Option<f64>,
    d: f64,
    delta: f64,
    eps: f64,
    levels: u32,
    out: Option<PathBuf>,
) -> Result<i32, Error> {
    let (name, poly, extra) = match family {
        FamilyArg::Even => {
            let c = c.unwrap_or_else(|| zerocert::constants::b_even(n));
            ("even", extremal_even(n, c)?, json!({ "n": n, "c": c }))
        }
        FamilyArg::Odd => ("odd", extremal_odd(n, d)?, json!({ "n": n, "d": d })),
        FamilyArg::Entire => {
            let t = extremal_entire_truncation(n, eps, levels)?;
            let extra = json!({ "n0": t.n0, "eps": eps, "levels": levels, "d": t.factors_d });
            ("entire", t.poly, extra)
        }
        FamilyArg::Real => (
            "real",
            real_counterexample(n, delta)?,
            json!({ "n": n, "delta": delta }),
        ),
        FamilyArg::Cubic => ("cubic", cubic_extremal(), json!({})),
    };
    let wire = serialize_poly(&poly);
    if let Some(path) = &out {
        fs::write(path, &wire).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    let moduli: Vec<f64> = quotients(&poly).moduli();
    let doc = envelope(
        "extremal",
        json!({
            "family": name,
            "params": extra,
            "degree": poly.degree(),
            "coeffs": complex_pairs(poly.coeffs()),
            "quotient_moduli": moduli,
            "written_to": out.as_ref().map(|p| p.display().to_string()),
        }),
    );
    emit(compact, &doc);
    Ok(EXIT_OK)
}

fn cmd_cubic(compact: bool, command: CubicCommand) -> Result<i32, Error> {
    match command {
        CubicCommand::Scan { grid } => {
            let scan = max_modulus_scan(grid)?;
            let doc = envelope(
                "cubic scan",
                json!({
                    "grid": grid,
                    "sup_modulus": scan.sup_modulus,
                    "argmax_lambda": scan.argmax_lambda,
                    "sharp_constant": cubic_sharp_constant(),
                }),
            );
            emit(compact, &doc);
            Ok(EXIT_OK)
        }
        CubicCommand::Locus { a, b } => {
            let params = CubicParams::new(a, b)?;
            let residual = zerocert::cubic::multiple_root_locus_residual(a, b);
            let poly = params.poly()?;
            let disc = discriminant3(poly.coeffs())?;
            let doc = envelope(
                "cubic locus",
                json!({
                    "a": [a.re, a.im],
                    "b": [b.re, b.im],
                    "residual": [residual.re, residual.im],
                    "residual_abs": residual.norm(),
                    "discriminant": [disc.re, disc.im],
                    "on_locus": residual.norm() < 1e-9,
                }),
            );
            emit(compact, &doc);
            Ok(EXIT_OK)
        }
    }
}
