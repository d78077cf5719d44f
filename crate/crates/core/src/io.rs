//! JSON input formats for curves, actions and search spaces, and rendering
//! of the analysis results as deterministic JSON values.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::coefficients::CoeffConfig;
use crate::curve::{
    ConditionsReport, Curve, CurveData, MemberOutcome, MembershipCertificate, SaturationVerdict, SpecialFiberReport,
    TowerStep,
};
use crate::error::{Error, Result};
use crate::lfihd::{AdditiveSeries, AxiomReport, FreenessCertificate, SeriesVerdict};
use crate::poly::parse_coeff;
use crate::stability::{
    FreenessReport, InducedActionTable, MinimalValuationReport, PatternReport, SearchHit, SearchSpace, StabilityReport,
};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveFile {
    model: String,
    p: Option<u64>,
    n: usize,
    f: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionTerm {
    coeff: String,
    frob: Option<u32>,
    exp: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    model: Option<String>,
    p: Option<u64>,
    terms: Vec<ActionTerm>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceFile {
    max_frob: u32,
    #[serde(default)]
    min_val: i64,
    max_val: i64,
    units: Vec<String>,
}

/// Largest series exponent accepted from files.
pub const MAX_EXPONENT: u64 = 1 << 12;

fn from_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{what}: {e}")))
}

pub fn parse_config(model: &str, p: Option<u64>) -> Result<CoeffConfig> {
    let need_p = || p.ok_or_else(|| Error::Input(format!("model {model} needs a prime p")));
    match model {
        "Fp[t]" => CoeffConfig::equichar_p(need_p()?),
        "Q[t]" => Ok(CoeffConfig::Equichar0),
        "Zp" => CoeffConfig::mixed_char(need_p()?),
        other => Err(Error::Input(format!("unknown model {other:?}; expected \"Fp[t]\", \"Q[t]\" or \"Zp\""))),
    }
}

/// `{"model": "Fp[t]"|"Q[t]"|"Zp", "p": .., "n": .., "f": [..]}`.
pub fn parse_curve(text: &str) -> Result<CurveData> {
    let file: CurveFile = from_json(text, "curve file")?;
    let config = parse_config(&file.model, file.p)?;
    if file.n != file.f.len() {
        return Err(Error::Input(format!("n = {} but {} polynomials given", file.n, file.f.len())));
    }
    let f: Vec<&str> = file.f.iter().map(String::as_str).collect();
    CurveData::parse(config, &f)
}

/// `{"terms": [{"coeff": .., "frob": ..}]}` meaning `sum coeff * T^{p^frob}`.
/// A term may give a raw exponent `"exp"` instead of `"frob"`, which allows
/// non-additive input. The file may name its own `"model"` and `"p"`;
/// otherwise `config` is used, and at least one of the two must be present.
pub fn parse_action(text: &str, config: Option<CoeffConfig>) -> Result<AdditiveSeries> {
    let file: ActionFile = from_json(text, "action file")?;
    let own = file.model.as_deref().map(|m| parse_config(m, file.p)).transpose()?;
    let config = match (own, config) {
        (Some(a), Some(b)) if a != b => return Err(Error::ConfigMismatch),
        (Some(c), _) | (None, Some(c)) => c,
        (None, None) => return Err(Error::Input("action file names no model and none was given".into())),
    };
    let p = config.char_exponent();
    let too_big = |e: String| Error::Input(format!("exponent {e} exceeds the supported maximum {MAX_EXPONENT}"));
    let terms = file
        .terms
        .iter()
        .map(|t| {
            let e = match (t.frob, t.exp) {
                (Some(s), None) => {
                    p.checked_pow(s).filter(|e| *e <= MAX_EXPONENT).ok_or_else(|| too_big(format!("{p}^{s}")))?
                }
                (None, Some(e)) if e > MAX_EXPONENT => return Err(too_big(e.to_string())),
                (None, Some(e)) if e > 0 => e,
                _ => return Err(Error::Input("each term needs exactly one of \"frob\" or a positive \"exp\"".into())),
            };
            Ok((parse_coeff(&t.coeff, config)?, e))
        })
        .collect::<Result<Vec<_>>>()?;
    AdditiveSeries::from_exponents(config, terms)
}

/// `{"max_frob": .., "min_val": .. (optional), "max_val": .., "units": [..]}`.
pub fn parse_space(text: &str, config: CoeffConfig) -> Result<SearchSpace> {
    let file: SpaceFile = from_json(text, "search space file")?;
    let units: Vec<&str> = file.units.iter().map(String::as_str).collect();
    SearchSpace::new(config, file.max_frob, file.min_val, file.max_val, &units)
}

pub fn config_json(c: CoeffConfig) -> Value {
    match c {
        CoeffConfig::EquicharP { p } | CoeffConfig::MixedChar { p } => json!({"model": c.label(), "p": p}),
        CoeffConfig::Equichar0 => json!({"model": c.label()}),
    }
}

pub fn curve_json(data: &CurveData) -> Value {
    let mut v = config_json(data.config());
    v["n"] = json!(data.n());
    v["f"] = json!(data.f().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    v
}

pub fn series_json(s: &AdditiveSeries) -> Value {
    let terms: Vec<Value> = s.terms().iter().map(|(c, e)| json!({"coeff": c.to_string(), "exponent": e})).collect();
    json!({"series": s.to_string(), "terms": terms})
}

pub fn conditions_json(r: &ConditionsReport, fiber: &SpecialFiberReport) -> Value {
    let jac: Vec<Value> = r
        .jacobian_units
        .iter()
        .enumerate()
        .map(|(i, j)| {
            json!({
                "i": i + 1,
                "derivative": j.derivative.to_string(),
                "unit": j.unit,
                "inverse": j.inverse.as_ref().map(|p| p.to_string()),
            })
        })
        .collect();
    json!({
        "all_hold": r.all_hold(),
        "reduced_mod_t": r.reduced.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "groebner_basis": r.basis.gens().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "zero_dimensional": r.zero_dimensional,
        "radical": r.radical,
        "eliminants": r.eliminants.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "jacobian_units": jac,
        "special_fiber": {
            "dimension": fiber.dimension,
            "standard_monomials": fiber.standard_monomials,
            "reduced": fiber.reduced,
        },
    })
}

pub fn tower_json(steps: &[TowerStep]) -> Value {
    let v: Vec<Value> = steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut step = json!({"ring": format!("B{}", i + 1), "generators": s.ring_generators});
            if let Some(ideal) = &s.ideal {
                step["ideal"] = json!(ideal);
                step["next"] = json!(format!("B{} = B{}[t^-1 I{}]", i + 2, i + 1, i + 1));
            }
            step
        })
        .collect();
    json!(v)
}

pub fn certificate_json(c: &MembershipCertificate) -> Value {
    json!({"element": c.g.to_string(), "certificate": c.p.to_string(), "degree_bound": c.degree_bound})
}

pub fn member_json(out: &MemberOutcome) -> Value {
    match out {
        MemberOutcome::Member(c) => {
            let mut v = certificate_json(c);
            v["member"] = json!(true);
            v
        }
        MemberOutcome::NotMember { bound, blocking_power, gap } => json!({
            "member": false,
            "degree_bound": bound,
            "blocking_x_power": blocking_power,
            "valuation_gap": gap,
        }),
    }
}

pub fn stability_json(r: &StabilityReport) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            json!({
                "i": e.i,
                "j": e.j,
                "element": e.element.to_string(),
                "certificate": e.outcome.certificate().map(|c| c.p.to_string()),
            })
        })
        .collect();
    let failure = r.failure.as_ref().map(|(i, j, e)| json!({"i": i, "j": j, "element": e.to_string()}));
    json!({"stable": r.stable, "entries": entries, "failure": failure})
}

pub fn table_json(t: &InducedActionTable) -> Value {
    let v: Vec<Value> = t
        .iter()
        .map(|(i, j, c)| json!({"i": i, "j": j, "value": c.g.to_string(), "certificate": c.p.to_string()}))
        .collect();
    json!(v)
}

pub fn freeness_certificate_json(c: &FreenessCertificate) -> Value {
    let v: Vec<Value> = c
        .entries
        .iter()
        .filter(|e| !e.c.is_zero())
        .map(|e| json!({"c": e.c.to_string(), "beta": e.beta, "generator": e.d}))
        .collect();
    json!(v)
}

pub fn freeness_json(r: &FreenessReport) -> Value {
    let units: Vec<Value> = r
        .entry_units
        .iter()
        .map(|(i, j, inv)| json!({"i": i, "j": j, "mod_t_inverse": inv.as_ref().map(|p| p.to_string())}))
        .collect();
    json!({
        "free": r.free,
        "special_fiber_unit": r.special_fiber_unit,
        "generic_fiber_unit": r.generic_fiber_unit,
        "entry_units": units,
        "certificate": r.certificate.as_ref().map(freeness_certificate_json),
    })
}

pub fn pattern_json(r: &PatternReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({"i": row.i, "required_t_power": row.required, "delta": row.value.to_string(), "divisible": row.divisible})
        })
        .collect();
    json!({"e": r.e, "n": r.n, "rows": rows, "holds": r.holds()})
}

pub fn search_json(hits: &[SearchHit], criterion: &MinimalValuationReport) -> Value {
    let hits: Vec<Value> = hits
        .iter()
        .map(|h| {
            let mut v = series_json(&h.series);
            v["free"] = json!(h.free);
            v
        })
        .collect();
    json!({
        "stable_series": hits,
        "minimal_valuation_criterion": {
            "applicable": criterion.applicable,
            "counterexample": criterion.counterexample.as_ref().map(|s| s.to_string()),
        },
    })
}

pub fn series_verdict_json(v: &SeriesVerdict) -> Value {
    match v {
        SeriesVerdict::Ok => json!({"additive": true}),
        SeriesVerdict::Violation { monomial, coefficient } => {
            json!({"additive": false, "monomial": monomial, "coefficient": coefficient.to_string()})
        }
    }
}

pub fn axioms_json(r: &AxiomReport) -> Value {
    let violation =
        r.violation.as_ref().map(|v| json!({"axiom": v.axiom.to_string(), "i": v.i, "j": v.j, "detail": v.detail}));
    json!({"ok": r.is_ok(), "checks": r.checks, "violation": violation})
}

pub fn saturation_json(v: &SaturationVerdict) -> Value {
    json!({
        "ok": v.is_ok(),
        "trials": v.trials,
        "expected_members": v.expected_members,
        "counterexample": v.counterexample.as_ref().map(|(q, e)| json!({"q": q, "expected_member": e})),
    })
}

pub fn alphas_json(curve: &Curve) -> Value {
    json!(curve.alphas().iter().map(|a| a.to_string()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_files() {
        let c = parse_curve(r#"{"model": "Fp[t]", "p": 2, "n": 1, "f": ["x1^2 + x1"]}"#).unwrap();
        assert_eq!(c.config(), CoeffConfig::EquicharP { p: 2 });
        assert_eq!(curve_json(&c), json!({"model": "Fp[t]", "p": 2, "n": 1, "f": ["x1^2 + x1"]}));
        assert!(parse_curve(r#"{"model": "Q[t]", "n": 2, "f": ["x1^2"]}"#).is_err());
        assert!(parse_curve(r#"{"model": "Fp[t]", "n": 0, "f": []}"#).is_err());
        assert!(parse_curve(r#"{"model": "Zp", "p": 9, "n": 0, "f": []}"#).is_err());
        assert!(parse_curve(r#"{"model": "Zp", "p": 3, "n": 0, "f": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn action_and_space_files() {
        let c = CoeffConfig::EquicharP { p: 2 };
        let s = parse_action(r#"{"terms": [{"coeff": "t", "frob": 0}, {"coeff": "t", "frob": 1}]}"#, Some(c)).unwrap();
        assert_eq!(s.to_string(), "t*T^2 + t*T");
        let own = r#"{"model": "Q[t]", "terms": [{"coeff": "1/2", "frob": 0}]}"#;
        assert_eq!(parse_action(own, None).unwrap().to_string(), "1/2*T");
        assert_eq!(parse_action(own, Some(c)), Err(Error::ConfigMismatch));
        assert!(parse_action(r#"{"terms": []}"#, None).is_err());
        let raw = parse_action(r#"{"terms": [{"coeff": "1", "exp": 3}]}"#, Some(c)).unwrap();
        assert_eq!(raw.to_string(), "T^3");
        assert!(parse_action(r#"{"terms": [{"coeff": "1", "exp": 3, "frob": 1}]}"#, Some(c)).is_err());
        assert!(parse_action(r#"{"terms": [{"coeff": "1"}]}"#, Some(c)).is_err());
        let sp = parse_space(r#"{"max_frob": 1, "max_val": 2, "units": ["1"]}"#, c).unwrap();
        assert_eq!((sp.min_val, sp.max_val), (0, 2));
        assert!(parse_space(r#"{"max_frob": 1, "max_val": 2, "units": ["t"]}"#, c).is_err());
    }
}
