//! Command-line front end: compute, transform, curve, and verify.
//!
//! Exit codes: 0 on success, 1 on verification failure (or an internal
//! engine inconsistency), 2 on usage errors.

pub mod cache;
pub mod emit;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::json::{poly_to_json, series_to_json};
use crate::algebra::rational::rat_int;
use crate::algebra::{Family, Policy, VarId};
use crate::engines::extract::TildeConvention;
use crate::tseries::Model;

#[derive(Parser)]
#[command(
    name = "topgrav",
    version,
    about = "Exact genus-expanded free energies of topological gravity models in renormalized couplings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute a free energy (closed polynomial for genus >= 2, truncated
    /// series for genus 0, derivative table for genus 1).
    Compute(ComputeArgs),
    /// Emit coordinate-transform series between bare and renormalized
    /// couplings.
    Transform(TransformArgs),
    /// Emit a spectral-curve deformation over an order window.
    Curve(CurveArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    /// Native engine variables: (v, I) or (w, J).
    Raw,
    /// 2D only: rewritten in (v, I) variables.
    Iv,
    /// 2D native (w, J) — alias of raw.
    Jw,
    /// Normalized tilde table.
    Tilde,
    /// Shorthand for the native form rendered as LaTeX.
    Latex,
    /// Shorthand for the native form rendered as JSON.
    Json,
}

#[derive(Args)]
pub struct ComputeArgs {
    /// Model: 1d, hmm, hmm-fat, or 2d.
    #[arg(long)]
    pub model: String,
    /// Genus (1d/hmm/2d).
    #[arg(long)]
    pub genus: Option<u32>,
    /// 't Hooft order (hmm-fat), or truncation depth for genus 0.
    #[arg(long)]
    pub order: Option<u32>,
    #[arg(long, value_enum, default_value = "raw")]
    pub form: FormArg,
    /// Render as LaTeX.
    #[arg(long)]
    pub latex: bool,
    /// Render as canonical JSON.
    #[arg(long)]
    pub json: bool,
    /// Evaluate the matrix order N at an integer.
    #[arg(long, alias = "eval-N", value_name = "N")]
    pub eval_n: Option<i64>,
    /// Also print the correlator table.
    #[arg(long)]
    pub correlators: bool,
    /// Write the JSON artifact to a file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct TransformArgs {
    /// One of: i0, i, t, ghost, roundtrip.
    #[arg(long)]
    pub what: String,
    /// Index for i/t/ghost.
    #[arg(long)]
    pub n: Option<u32>,
    /// Highest participating variable index.
    #[arg(long, default_value_t = 4)]
    pub max_var: u32,
    /// Maximum number of variable factors per term.
    #[arg(long, default_value_t = 4)]
    pub max_deg: u32,
    /// Restrict the result to the base point I_0 = 0 (t-side: t_0 = 0).
    #[arg(long)]
    pub at_i0_zero: bool,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CurveArgs {
    /// Model: 1d, hmm, hmm-fat, or 2d.
    #[arg(long)]
    pub model: String,
    /// Coordinate system of the coefficients: t or i.
    #[arg(long, default_value = "i")]
    pub coords: String,
    /// Inclusive order window, e.g. "-6..6" or "-5/2..7/2".
    #[arg(long, default_value = "-6..6", allow_hyphen_values = true)]
    pub orders: String,
    #[arg(long, default_value_t = 3)]
    pub max_var: u32,
    #[arg(long, default_value_t = 4)]
    pub max_deg: u32,
    /// 't Hooft order for the fat deformation.
    #[arg(long, default_value_t = 2)]
    pub thooft_order: u32,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Suite: tables, virasoro, homogeneity, curves, or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Write a JSON report.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Usage failure (exit 2) carrying its message.
pub struct UsageError(pub String);

/// Print a line, tolerating a closed pipe.
fn print_line(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{s}");
}

pub fn run(cli: Cli) -> Result<i32, UsageError> {
    match cli.command {
        Command::Compute(args) => run_compute(args),
        Command::Transform(args) => run_transform(args),
        Command::Curve(args) => run_curve(args),
        Command::Verify(args) => run_verify(args),
    }
}

fn parse_model(s: &str) -> Result<Model, UsageError> {
    Model::parse(s).ok_or_else(|| UsageError(format!("unknown model `{s}`")))
}

fn emit(text: String, json: Option<String>, out: &Option<PathBuf>) -> Result<i32, UsageError> {
    if let (Some(json), Some(path)) = (&json, out) {
        std::fs::write(path, json)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    print_line(&text);
    Ok(0)
}

fn run_compute(args: ComputeArgs) -> Result<i32, UsageError> {
    let model = parse_model(&args.model)?;
    let revision = cache::ENGINE_REVISION;
    match model {
        Model::HmmFat => {
            let k = args
                .order
                .or(args.genus)
                .ok_or_else(|| UsageError("hmm-fat needs --order".into()))?;
            if k == 0 {
                return Err(UsageError("fat order starts at 1".into()));
            }
            if k == 1 {
                let df = crate::engines::matrix_model::fat1_deriv(1);
                let text = format!(
                    "F^t_(0,1) = (1/2) log(1/(1-I1)); derivative table: dF/dI1 = {df}"
                );
                return emit(text, None, &args.out);
            }
            let poly = compute_cached("hmm-fat", k, || {
                crate::engines::matrix_model::fat_tower(k).map(|p| p.as_ref().clone())
            })?;
            render_poly(&args, model, k, poly)
        }
        _ => {
            let genus = args
                .genus
                .ok_or_else(|| UsageError("missing --genus".into()))?;
            match genus {
                0 => {
                    let order = args.order.unwrap_or(4).max(1);
                    let series = match model {
                        Model::OneDim => crate::engines::one_dim::f0_series(
                            &Policy::i_vars(order, order),
                        ),
                        Model::Hmm => crate::engines::matrix_model::f0_series(
                            &Policy::i_vars(order, order).with_nullary(Family::BigN),
                        ),
                        Model::TwoDim => crate::engines::two_dim::f0_series(
                            &Policy::i_vars(order, order),
                        ),
                        Model::HmmFat => unreachable!(),
                    };
                    let json = emit::artifact_json(
                        model.name(),
                        0,
                        "series",
                        revision,
                        &series_to_json(&series),
                    );
                    let text = if args.json {
                        json.clone()
                    } else {
                        format!("{}", series.body())
                    };
                    emit(text, Some(json), &args.out)
                }
                1 => {
                    let (df, var) = match model {
                        Model::OneDim => (crate::engines::one_dim::genus1_deriv(1), "I1"),
                        Model::Hmm => (crate::engines::matrix_model::genus1_deriv(1), "I1"),
                        Model::TwoDim => (crate::engines::two_dim::genus1_deriv(1), "J1"),
                        Model::HmmFat => unreachable!(),
                    };
                    let text =
                        format!("genus 1 is a logarithm; derivative table: dF1/d{var} = {df}");
                    emit(text, None, &args.out)
                }
                g => {
                    let poly = compute_cached(model.name(), g, || match model {
                        Model::OneDim => {
                            crate::engines::one_dim::free_energy(g).map(|p| p.as_ref().clone())
                        }
                        Model::Hmm => crate::engines::matrix_model::free_energy(g)
                            .map(|p| p.as_ref().clone()),
                        Model::TwoDim => {
                            crate::engines::two_dim::free_energy(g).map(|p| p.as_ref().clone())
                        }
                        Model::HmmFat => unreachable!(),
                    })?;
                    render_poly(&args, model, g, poly)
                }
            }
        }
    }
}

fn compute_cached(
    model: &str,
    genus: u32,
    fresh: impl FnOnce() -> Result<crate::algebra::Poly, crate::engines::EngineError>,
) -> Result<crate::algebra::Poly, UsageError> {
    if let Some(dir) = cache::cache_dir() {
        if let Some(hit) = cache::load(&dir, model, genus) {
            return Ok(hit);
        }
        let poly = fresh().map_err(|e| UsageError(format!("engine failure: {e}")))?;
        let _ = cache::store(&dir, model, genus, &poly);
        return Ok(poly);
    }
    fresh().map_err(|e| UsageError(format!("engine failure: {e}")))
}

fn render_poly(
    args: &ComputeArgs,
    model: Model,
    genus: u32,
    mut poly: crate::algebra::Poly,
) -> Result<i32, UsageError> {
    let revision = cache::ENGINE_REVISION;
    if let Some(n) = args.eval_n {
        poly = poly.eval_var(VarId::big_n(), &rat_int(n));
    }
    let form = match args.form {
        FormArg::Iv if model == Model::TwoDim => {
            poly = crate::engines::two_dim::to_i_form(&poly);
            "iv"
        }
        FormArg::Iv | FormArg::Raw | FormArg::Jw | FormArg::Latex | FormArg::Json => "raw",
        FormArg::Tilde => "tilde",
    };
    let (text, json) = if form == "tilde" {
        let (conv, letter) = match model {
            Model::TwoDim => (TildeConvention::ThirdPower, 'I'),
            Model::Hmm => (TildeConvention::HalfPowerFactorial, 'I'),
            _ => (TildeConvention::HalfPower, 'I'),
        };
        let map = crate::engines::extract::tilde_form(model.name(), genus, &poly, conv)
            .map_err(|e| UsageError(format!("{e}")))?;
        let json = emit::artifact_json(
            model.name(),
            genus,
            "tilde",
            revision,
            &emit::tilde_to_json(&map),
        );
        let text = if args.latex || args.form == FormArg::Latex {
            emit::tilde_to_latex(&map, letter)
        } else if args.json || args.form == FormArg::Json {
            json.clone()
        } else {
            emit::tilde_to_text(&map, letter)
        };
        (text, json)
    } else {
        let json =
            emit::artifact_json(model.name(), genus, form, revision, &poly_to_json(&poly));
        let text = if args.latex || args.form == FormArg::Latex {
            emit::poly_to_latex(&poly)
        } else if args.json || args.form == FormArg::Json {
            json.clone()
        } else {
            format!("{poly}")
        };
        (text, json)
    };
    let mut full = text;
    if args.correlators {
        let table = match model {
            Model::OneDim => crate::engines::one_dim::correlators(genus),
            Model::Hmm => crate::engines::matrix_model::correlators(genus),
            Model::TwoDim => crate::engines::two_dim::correlators(genus),
            Model::HmmFat => crate::engines::extract::correlators(
                "hmm-fat",
                genus,
                &poly,
                TildeConvention::HalfPower,
                2 * genus as i64 - 2,
            ),
        }
        .map_err(|e| UsageError(format!("{e}")))?;
        let _ = write!(full, "\n{}", emit::correlators_to_text(&table));
    }
    emit(full, Some(json), &args.out)
}

fn run_transform(args: TransformArgs) -> Result<i32, UsageError> {
    if args.max_deg < 1 {
        return Err(UsageError("--max-deg must be at least 1".into()));
    }
    let policy = Policy::t_vars(args.max_var, args.max_deg);
    let series = match args.what.as_str() {
        "i0" => crate::coords::i0_series(&policy),
        "i" => {
            let n = args.n.ok_or_else(|| UsageError("--what i needs --n".into()))?;
            if n == 0 {
                return Err(UsageError("use --what i0 for the base series".into()));
            }
            crate::coords::i_from_t(n, &policy)
        }
        "t" => {
            let n = args.n.ok_or_else(|| UsageError("--what t needs --n".into()))?;
            let ipolicy = Policy::i_vars(args.max_var + args.max_deg, args.max_deg);
            crate::coords::t_from_i(n, &ipolicy)
        }
        "ghost" => {
            let n = args.n.ok_or_else(|| UsageError("--what ghost needs --n".into()))?;
            if n == 0 {
                return Err(UsageError("ghost index starts at 1".into()));
            }
            crate::coords::ghost_from_t(n, &policy)
        }
        "roundtrip" => {
            let report = crate::coords::roundtrip_check(&policy);
            if report.pass() {
                print_line(&format!(
                    "roundtrip ok: t -> I -> t identity for n <= {}",
                    args.max_var
                ));
                return Ok(0);
            }
            let (n, m, c) = report.first_failure.unwrap();
            print_line(&format!("roundtrip FAILED at t_{n}: residual ({c}) * {m}"));
            return Ok(1);
        }
        other => return Err(UsageError(format!("unknown transform `{other}`"))),
    };
    let series = if args.at_i0_zero {
        let body = match args.what.as_str() {
            "t" => series.body().eval_var(VarId::i(0), &rat_int(0)),
            _ => series.body().eval_var(VarId::t(0), &rat_int(0)),
        };
        crate::algebra::TruncatedSeries::from_poly(body, series.policy().clone())
    } else {
        series
    };
    let json = series_to_json(&series);
    let text = if args.json { json.clone() } else { format!("{}", series.body()) };
    emit(text, Some(json), &args.out)
}

fn parse_half(s: &str) -> Result<i64, UsageError> {
    let bad = || UsageError(format!("bad order `{s}`"));
    if let Some(num) = s.strip_suffix("/2") {
        return num.parse::<i64>().map_err(|_| bad());
    }
    if let Some(rest) = s.strip_suffix(".5") {
        let sign = if rest.starts_with('-') { -1 } else { 1 };
        let whole: i64 = rest.parse().map_err(|_| bad())?;
        return Ok(2 * whole + sign);
    }
    s.parse::<i64>().map(|v| 2 * v).map_err(|_| bad())
}

fn run_curve(args: CurveArgs) -> Result<i32, UsageError> {
    let model = parse_model(&args.model)?;
    let (lo, hi) = args
        .orders
        .split_once("..")
        .ok_or_else(|| UsageError("orders must look like a..b".into()))?;
    let window = (parse_half(lo)?, parse_half(hi)?);
    if window.0 > window.1 {
        return Err(UsageError("empty order window".into()));
    }
    let top = (window.1 / 2).max(0) as u32 + args.max_deg + 1;
    let curve = match (model, args.coords.as_str()) {
        (Model::HmmFat, "i") => {
            let lp = crate::spectral::hmm_fat_curve_exact(top, args.thooft_order)
                .map_err(|e| UsageError(format!("{e}")))?;
            let policy = Policy::i_vars(top, args.max_deg)
                .with_nullary(Family::THooft)
                .with_nullary(Family::V);
            crate::spectral::curve_series_i(&lp, window, &policy, true)
        }
        (Model::HmmFat, _) => {
            return Err(UsageError("the fat deformation exists in i-coordinates only".into()))
        }
        (m, "i") => {
            let lp = match m {
                Model::OneDim => crate::spectral::one_dim_curve_exact(top),
                Model::Hmm => crate::spectral::hmm_thin_curve_exact(top),
                Model::TwoDim => crate::spectral::two_dim_curve_exact(top),
                Model::HmmFat => unreachable!(),
            };
            let mut policy = Policy::i_vars(top, args.max_deg);
            if m == Model::Hmm {
                policy = policy.with_nullary(Family::BigN);
            }
            crate::spectral::curve_series_i(&lp, window, &policy, m != Model::TwoDim)
        }
        (m, "t") => {
            let mut policy = Policy::t_vars(args.max_var, args.max_deg);
            if m == Model::Hmm {
                policy = policy.with_nullary(Family::BigN);
            }
            crate::spectral::curve_t_form(m, window, &policy)
                .map_err(|e| UsageError(format!("{e}")))?
        }
        (_, other) => return Err(UsageError(format!("unknown coords `{other}`"))),
    };
    let json = emit::curve_to_json(&curve);
    let text = if args.json { json.clone() } else { emit::curve_to_text(&curve) };
    emit(text, Some(json), &args.out)
}

fn run_verify(args: VerifyArgs) -> Result<i32, UsageError> {
    let suite = args.suite.as_str();
    if !crate::verify::SUITES.contains(&suite) {
        return Err(UsageError(format!("unknown suite `{suite}`")));
    }
    let outcome = crate::verify::run_suite(suite)
        .map_err(|e| UsageError(format!("engine failure: {e}")))?;
    for (line, ok) in &outcome.checks {
        print_line(&format!("[{}] {line}", if *ok { "pass" } else { "FAIL" }));
    }
    if let Some(path) = args.report {
        std::fs::write(&path, outcome.to_json())
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if outcome.pass() { 0 } else { 1 })
}
