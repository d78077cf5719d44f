//! `gacurve`: classification checks for additive group actions on curves
//! over a discrete valuation ring. Reads JSON, writes a JSON report.
//!
//! Exit codes: 0 affirmative, 1 negative, 2 input error, 3 bound exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use gacurve::coefficients::CoeffConfig;
use gacurve::curve::{self, Curve, CurveData, MemberBounds};
use gacurve::lfihd::{self, SeriesVerdict};
use gacurve::poly::{parse_poly, Namespace};
use gacurve::stability::{self, SearchSpace};
use gacurve::{io, selftest, Error};

const ENV_MAX_DEGREE: &str = "GACURVE_MAX_DEGREE";
const ENV_MAX_VAL: &str = "GACURVE_MAX_VAL";
const ENV_MAX_MONOMIALS: &str = "GACURVE_MAX_MONOMIALS";

#[derive(Parser, Debug)]
#[command(name = "gacurve", version, about = "Additive group actions on curves over a DVR")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Leave wall-clock timing out of the report.
    #[arg(long, global = true)]
    no_timing: bool,

    /// Largest x-degree of alpha-monomials tried in membership tests
    /// [env: GACURVE_MAX_DEGREE; default: 2 deg g + 4].
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<u32>,

    /// Largest t-denominator allowed while solving membership systems
    /// [env: GACURVE_MAX_VAL; default: 64].
    #[arg(long, global = true, value_name = "N")]
    max_val: Option<i64>,

    /// Cap on alpha-monomials per membership system
    /// [env: GACURVE_MAX_MONOMIALS; default: 5000].
    #[arg(long, global = true, value_name = "N")]
    max_monomials: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the conditions on f and describe the special fiber.
    Verify { curve: PathBuf },
    /// Print alpha_1..alpha_{n+1}, the presentation ideal and the tower.
    Alphas { curve: PathBuf },
    /// Decide whether a polynomial in x lies in B.
    Member {
        curve: PathBuf,
        /// Element of K[x], e.g. "(x^2 + x)/t".
        #[arg(long)]
        elem: String,
    },
    /// Analyse the substitution x -> x + s(T) on B.
    Act(ActArgs),
    /// Enumerate stable series over a grid.
    Search { curve: PathBuf, space: PathBuf },
    /// Check the higher-derivation axioms of a series on random polynomials.
    Axioms(AxiomArgs),
    /// Run the built-in regression and property suites.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["check", "free", "table", "pattern"])))]
struct ActArgs {
    curve: PathBuf,
    action: PathBuf,
    /// Is B stable under the action?
    #[arg(long)]
    check: bool,
    /// Is the induced action free?
    #[arg(long)]
    free: bool,
    /// Print the induced delta table on the generators.
    #[arg(long)]
    table: bool,
    /// Check the t-divisibility pattern of the deltas.
    #[arg(long)]
    pattern: bool,
}

#[derive(Args, Debug)]
struct AxiomArgs {
    action: PathBuf,
    /// Model when the action file names none: "Fp[t]", "Q[t]" or "Zp".
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
    seed: u64,
    /// Largest delta index checked.
    #[arg(long, default_value_t = 6)]
    bound: u32,
    /// Largest degree of the random polynomials.
    #[arg(long, default_value_t = 6)]
    degree: u32,
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BoundExceeded(_)) { 3 } else { 2 };
        Failure { code, kind: e.kind(), message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, kind: "input", message }
}

struct Outcome {
    affirmative: bool,
    args: Value,
    inputs: Value,
    result: Value,
}

struct Input {
    text: String,
    digest: Value,
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let bytes = std::fs::read(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| input_error(format!("{} is not UTF-8", path.display())))?;
    Ok(Input { text, digest: json!({"path": path.display().to_string(), "sha256": digest}) })
}

fn load_curve(path: &Path) -> Result<(CurveData, Value), Failure> {
    let input = read_input(path)?;
    Ok((io::parse_curve(&input.text)?, input.digest))
}

fn env_value<T: std::str::FromStr>(name: &str) -> Result<Option<T>, Failure> {
    match std::env::var(name) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| input_error(format!("{name}={v:?} is not a valid integer"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(input_error(format!("{name}: {e}"))),
    }
}

fn bounds(cli: &Cli) -> Result<MemberBounds, Failure> {
    let mut b =
        MemberBounds { max_monomial_degree: cli.max_degree.or(env_value(ENV_MAX_DEGREE)?), ..Default::default() };
    if let Some(v) = cli.max_val.or(env_value(ENV_MAX_VAL)?) {
        if v < 0 {
            return Err(input_error(format!("max-val must be non-negative, got {v}")));
        }
        b.max_certificate_valuation = v;
    }
    if let Some(v) = cli.max_monomials.or(env_value(ENV_MAX_MONOMIALS)?) {
        b.max_monomials = v;
    }
    Ok(b)
}

fn bounds_json(b: &MemberBounds) -> Value {
    json!({
        "max_degree": b.max_monomial_degree,
        "max_val": b.max_certificate_valuation,
        "max_monomials": b.max_monomials,
    })
}

fn run(cli: &Cli, b: &MemberBounds) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Verify { curve } => {
            let (data, digest) = load_curve(curve)?;
            let report = curve::verify_conditions(&data);
            let fiber = curve::special_fiber(&report);
            let mut result = io::conditions_json(&report, &fiber);
            result["curve"] = io::curve_json(&data);
            Ok(Outcome { affirmative: report.all_hold(), args: json!({}), inputs: json!({"curve": digest}), result })
        }
        Command::Alphas { curve } => {
            let (data, digest) = load_curve(curve)?;
            let c = Curve::new(data);
            let pres = curve::presentation(c.data());
            let kernel_ok = pres.maps_to_zero(c.alphas());
            let result = json!({
                "curve": io::curve_json(c.data()),
                "alphas": io::alphas_json(&c),
                "alpha_degrees": c.alpha_degrees(),
                "presentation": {
                    "variables": pres.ns.to_string(),
                    "generators": pres.gens.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "maps_to_zero": kernel_ok,
                },
                "tower": io::tower_json(&curve::tower_report(c.data())),
            });
            Ok(Outcome { affirmative: kernel_ok, args: json!({}), inputs: json!({"curve": digest}), result })
        }
        Command::Member { curve, elem } => {
            let (data, digest) = load_curve(curve)?;
            let g = parse_poly(elem, &Namespace::x(), data.config())?;
            let c = Curve::new(data);
            let out = c.member(&g, b)?;
            if let Some(cert) = out.certificate() {
                if !c.check_certificate(cert)? {
                    return Err(input_error("internal: certificate failed re-substitution".into()));
                }
            }
            Ok(Outcome {
                affirmative: out.is_member(),
                args: json!({"elem": elem}),
                inputs: json!({"curve": digest}),
                result: io::member_json(&out),
            })
        }
        Command::Act(a) => act(a, b),
        Command::Search { curve, space } => {
            let (data, curve_digest) = load_curve(curve)?;
            let space_in = read_input(space)?;
            let sp: SearchSpace = io::parse_space(&space_in.text, data.config())?;
            let c = Curve::new(data);
            let hits = stability::search_actions(&c, &sp, b)?;
            let criterion = stability::minimal_valuation_criterion_check(&c, &sp, b)?;
            let mut result = io::search_json(&hits, &criterion);
            result["curve"] = io::curve_json(c.data());
            Ok(Outcome {
                affirmative: criterion.counterexample.is_none(),
                args: json!({}),
                inputs: json!({"curve": curve_digest, "space": space_in.digest}),
                result,
            })
        }
        Command::Axioms(a) => axioms(a),
        Command::Selftest { seed } => {
            let report = selftest::run(*seed);
            Ok(Outcome {
                affirmative: report.passed(),
                args: json!({"seed": seed}),
                inputs: json!({}),
                result: report.to_json(),
            })
        }
    }
}

fn act(a: &ActArgs, b: &MemberBounds) -> Result<Outcome, Failure> {
    let (data, curve_digest) = load_curve(&a.curve)?;
    let action_in = read_input(&a.action)?;
    let s = io::parse_action(&action_in.text, Some(data.config()))?;
    let c = Curve::new(data);
    let inputs = json!({"curve": curve_digest, "action": action_in.digest});
    let series = io::series_json(&s);
    let (mode, affirmative, mut result) = if a.check {
        let r = stability::is_stable(&c, &s, b)?;
        ("check", r.stable, io::stability_json(&r))
    } else if a.free {
        match stability::is_free_action(&c, &s, b) {
            Ok(r) => ("free", r.free, io::freeness_json(&r)),
            Err(Error::NotStable) => ("free", false, json!({"free": false, "stable": false})),
            Err(e) => return Err(e.into()),
        }
    } else if a.table {
        match stability::induced_action(&c, &s, b) {
            Ok(t) => ("table", true, json!({"stable": true, "table": io::table_json(&t)})),
            Err(Error::NotStable) => {
                let r = stability::is_stable(&c, &s, b)?;
                ("table", false, io::stability_json(&r))
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        let r = stability::check_divisibility_pattern(&c, &s, b)?;
        ("pattern", r.holds(), io::pattern_json(&r))
    };
    result["series"] = series;
    Ok(Outcome { affirmative, args: json!({"mode": mode}), inputs, result })
}

fn axioms(a: &AxiomArgs) -> Result<Outcome, Failure> {
    let input = read_input(&a.action)?;
    let config: Option<CoeffConfig> = a.model.as_deref().map(|m| io::parse_config(m, a.p)).transpose()?;
    let s = io::parse_action(&input.text, config)?;
    let args = json!({"trials": a.trials, "seed": a.seed, "bound": a.bound, "degree": a.degree});
    let inputs = json!({"action": input.digest});
    let verdict = lfihd::validate_series(&s);
    let mut result = json!({"series": io::series_json(&s), "model": io::config_json(s.config())});
    result["additivity"] = io::series_verdict_json(&verdict);
    if let SeriesVerdict::Violation { .. } = verdict {
        return Ok(Outcome { affirmative: false, args, inputs, result });
    }
    let t = selftest::axiom_trials(&s, a.trials, a.seed, a.bound, a.degree)?;
    let violation = t
        .violation
        .as_ref()
        .map(|(g, h, v)| json!({"g": g, "h": h, "axiom": v.axiom.to_string(), "i": v.i, "j": v.j, "detail": v.detail}));
    result["axioms"] = json!({"trials": t.trials, "checks": t.checks, "violation": violation});
    Ok(Outcome { affirmative: t.violation.is_none(), args, inputs, result })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Alphas { .. } => "alphas",
        Command::Member { .. } => "member",
        Command::Act(_) => "act",
        Command::Search { .. } => "search",
        Command::Axioms(_) => "axioms",
        Command::Selftest { .. } => "selftest",
    }
}

fn fail(f: Failure) -> ExitCode {
    let body = json!({"error": {"kind": f.kind, "message": f.message}, "exit_code": f.code});
    eprintln!("{}", serde_json::to_string_pretty(&body).expect("JSON values serialize"));
    ExitCode::from(f.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(input_error(e.to_string().trim_end().to_string())),
    };
    let b = match bounds(&cli) {
        Ok(b) => b,
        Err(f) => return fail(f),
    };
    let start = Instant::now();
    let outcome = match run(&cli, &b) {
        Ok(o) => o,
        Err(f) => return fail(f),
    };
    let mut report = json!({
        "command": {"name": command_name(&cli.command), "args": outcome.args},
        "inputs": outcome.inputs,
        "bounds": bounds_json(&b),
        "verdict": if outcome.affirmative { "affirmative" } else { "negative" },
        "result": outcome.result,
    });
    if !cli.no_timing {
        report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    println!("{}", serde_json::to_string_pretty(&report).expect("JSON values serialize"));
    if outcome.affirmative {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
