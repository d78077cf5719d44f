use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const E1: &str = r#"{"model": "Fp[t]", "p": 2, "n": 1, "f": ["x1^2 + x1"]}"#;
const E2: &str = r#"{"model": "Q[t]", "n": 1, "f": ["x1^2 - 1"]}"#;
const E3: &str = r#"{"model": "Fp[t]", "p": 2, "n": 2, "f": ["x1^2 + x1", "x2^2 + x2 + x1"]}"#;
const NON_REDUCED: &str = r#"{"model": "Q[t]", "n": 1, "f": ["x1^2"]}"#;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files { dir: TempDir::new().unwrap() }
    }

    fn put(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn gacurve(args: &[&str], files: &[&Path], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gacurve"));
    cmd.args(args).args(files).arg("--no-timing");
    for var in ["GACURVE_MAX_DEGREE", "GACURVE_MAX_VAL", "GACURVE_MAX_MONOMIALS"] {
        cmd.env_remove(var);
    }
    cmd.envs(env.iter().copied());
    cmd.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn error_kind(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
    assert_eq!(v["exit_code"], code(o));
    v["error"]["kind"].as_str().unwrap().to_string()
}

fn action(f: &Files, name: &str, terms: &str) -> PathBuf {
    f.put(name, &format!(r#"{{"terms": [{terms}]}}"#))
}

#[test]
fn verify_exit_codes() {
    let f = Files::new();
    let o = gacurve(&["verify"], &[&f.put("e1.json", E1)], &[]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["verdict"], "affirmative");
    assert_eq!(r["result"]["all_hold"], true);
    assert_eq!(r["result"]["special_fiber"]["dimension"], 2);
    assert_eq!(r["inputs"]["curve"]["sha256"].as_str().unwrap().len(), 64);

    let o = gacurve(&["verify"], &[&f.put("bad.json", NON_REDUCED)], &[]);
    assert_eq!(code(&o), 1);
    assert_eq!(report(&o)["result"]["radical"], false);

    let o = gacurve(&["verify"], &[&f.put("junk.json", "{not json")], &[]);
    assert_eq!((code(&o), error_kind(&o).as_str()), (2, "input"));
    let o = gacurve(&["verify"], &[&f.put("wrong.json", r#"{"model": "Q[t]", "n": 1, "f": ["x2"]}"#)], &[]);
    assert_eq!((code(&o), error_kind(&o).as_str()), (2, "unknown_variable"));
    let o = gacurve(&["verify"], &[&f.dir.path().join("missing.json")], &[]);
    assert_eq!(code(&o), 2);
}

#[test]
fn alphas_report() {
    let f = Files::new();
    let o = gacurve(&["alphas"], &[&f.put("e3.json", E3)], &[]);
    assert_eq!(code(&o), 0);
    let r = report(&o)["result"].clone();
    assert_eq!(r["alpha_degrees"], serde_json::json!([1, 2, 4]));
    assert_eq!(r["presentation"]["maps_to_zero"], true);
    assert_eq!(r["tower"][1]["ideal"], serde_json::json!(["t", "x1^2 + x1", "x2^2 + x2 + x1"]));
    assert_eq!(r["alphas"][1], "1/t*x^2 + 1/t*x");
}

#[test]
fn member_exit_codes() {
    let f = Files::new();
    let e1 = f.put("e1.json", E1);
    let o = gacurve(&["member", "--elem", "x^2"], &[&e1], &[]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["result"]["certificate"], "t*T2 + T1");

    let o = gacurve(&["member", "--elem", "x/t"], &[&e1], &[]);
    assert_eq!(code(&o), 1);
    assert_eq!(report(&o)["result"]["member"], false);

    let o = gacurve(&["member", "--elem", "x^9", "--max-monomials", "3"], &[&e1], &[]);
    assert_eq!((code(&o), error_kind(&o).as_str()), (3, "bound_exceeded"));
    let o = gacurve(&["member", "--elem", "x^9"], &[&e1], &[("GACURVE_MAX_MONOMIALS", "3")]);
    assert_eq!(code(&o), 3);
    let o = gacurve(&["member", "--elem", "x^9"], &[&e1], &[("GACURVE_MAX_VAL", "1")]);
    assert_eq!(code(&o), 3);
    // flags win over the environment
    let o = gacurve(&["member", "--elem", "x^2", "--max-monomials", "100"], &[&e1], &[("GACURVE_MAX_MONOMIALS", "1")]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["bounds"]["max_monomials"], 100);

    let o = gacurve(&["member", "--elem", "x^2"], &[&e1], &[("GACURVE_MAX_DEGREE", "two")]);
    assert_eq!(code(&o), 2);
    let o = gacurve(&["member", "--elem", "x^^2"], &[&e1], &[]);
    assert_eq!((code(&o), error_kind(&o).as_str()), (2, "syntax"));
    let o = gacurve(&["member", "--elem", "y"], &[&e1], &[]);
    assert_eq!(code(&o), 2);
}

#[test]
fn act_exit_codes() {
    let f = Files::new();
    let e1 = f.put("e1.json", E1);
    let t = action(&f, "T.json", r#"{"coeff": "1", "frob": 0}"#);
    let tt = action(&f, "tT.json", r#"{"coeff": "t", "frob": 0}"#);
    let zero = action(&f, "zero.json", "");
    let not_tpow = action(&f, "ut.json", r#"{"coeff": "1 + t", "frob": 0}"#);
    let raw = action(&f, "T3.json", r#"{"coeff": "t", "exp": 3}"#);

    let o = gacurve(&["act", "--check"], &[&e1, &t], &[]);
    assert_eq!(code(&o), 1);
    let r = report(&o);
    assert_eq!(r["result"]["failure"]["element"], "1/t");
    assert_eq!((r["result"]["failure"]["i"].as_u64(), r["result"]["failure"]["j"].as_u64()), (Some(2), Some(1)));

    assert_eq!(code(&gacurve(&["act", "--check"], &[&e1, &tt], &[])), 0);
    let o = gacurve(&["act", "--free"], &[&e1, &tt], &[]);
    assert_eq!(code(&o), 0);
    assert!(report(&o)["result"]["certificate"].is_array());
    assert_eq!(code(&gacurve(&["act", "--free"], &[&e1, &zero], &[])), 1);
    assert_eq!(code(&gacurve(&["act", "--free"], &[&e1, &t], &[])), 1);

    let o = gacurve(&["act", "--table"], &[&e1, &tt], &[]);
    assert_eq!(code(&o), 0);
    let table = report(&o)["result"]["table"].clone();
    let d21 = table.as_array().unwrap().iter().find(|e| e["i"] == 2 && e["j"] == 1).unwrap();
    assert_eq!(d21["certificate"], "1");
    assert_eq!(code(&gacurve(&["act", "--table"], &[&e1, &t], &[])), 1);

    assert_eq!(code(&gacurve(&["act", "--pattern"], &[&e1, &tt], &[])), 0);
    let o = gacurve(&["act", "--pattern"], &[&e1, &not_tpow], &[]);
    assert_eq!((code(&o), error_kind(&o).as_str()), (2, "series_not_t_power_form"));

    let o = gacurve(&["act", "--check"], &[&e1, &raw], &[]);
    assert_eq!((code(&o), error_kind(&o).as_str()), (2, "invalid_series"));
    let o = gacurve(&["act", "--check"], &[&f.put("bad.json", NON_REDUCED), &tt], &[]);
    assert_eq!((code(&o), error_kind(&o).as_str()), (2, "conditions_not_met"));
    assert_eq!(code(&gacurve(&["act"], &[&e1, &tt], &[])), 2);
    assert_eq!(code(&gacurve(&["act", "--check", "--free"], &[&e1, &tt], &[])), 2);
    let q = f.put("q.json", r#"{"model": "Q[t]", "terms": [{"coeff": "t", "frob": 0}]}"#);
    let o = gacurve(&["act", "--check"], &[&e1, &q], &[]);
    assert_eq!((code(&o), error_kind(&o).as_str()), (2, "config_mismatch"));
}

#[test]
fn act_on_e2() {
    let f = Files::new();
    let e2 = f.put("e2.json", E2);
    for (lam, expected) in [("1", 1), ("t", 0), ("t^2", 0), ("2*t", 0)] {
        let s = action(&f, "s.json", &format!(r#"{{"coeff": "{lam}", "frob": 0}}"#));
        assert_eq!(code(&gacurve(&["act", "--check"], &[&e2, &s], &[])), expected, "lambda = {lam}");
    }
}

#[test]
fn search_exit_codes() {
    let f = Files::new();
    let e1 = f.put("e1.json", E1);
    let space = f.put("space.json", r#"{"max_frob": 1, "min_val": 1, "max_val": 1, "units": ["1"]}"#);
    let o = gacurve(&["search"], &[&e1, &space], &[]);
    assert_eq!(code(&o), 0);
    let r = report(&o)["result"].clone();
    let mut found: Vec<String> =
        r["stable_series"].as_array().unwrap().iter().map(|h| h["series"].as_str().unwrap().to_string()).collect();
    found.sort();
    assert_eq!(found, ["t*T", "t*T^2", "t*T^2 + t*T"]);
    assert_eq!(r["minimal_valuation_criterion"]["counterexample"], Value::Null);

    // the unit grid point on E2 needs alpha2, whose denominator is t
    let e2 = f.put("e2.json", E2);
    let small = f.put("small.json", r#"{"max_frob": 0, "max_val": 1, "units": ["1"]}"#);
    assert_eq!(code(&gacurve(&["search"], &[&e2, &small], &[])), 0);
    let o = gacurve(&["search", "--max-val", "0"], &[&e2, &small], &[]);
    assert_eq!((code(&o), error_kind(&o).as_str()), (3, "bound_exceeded"));
    let bad = f.put("bad.json", r#"{"max_frob": 1, "max_val": 1, "units": ["t"]}"#);
    assert_eq!(code(&gacurve(&["search"], &[&e1, &bad], &[])), 2);
}

#[test]
fn axioms_exit_codes() {
    let f = Files::new();
    let tt = action(&f, "tT.json", r#"{"coeff": "t", "frob": 0}, {"coeff": "t^2", "frob": 2}"#);
    let o = gacurve(&["axioms", "--model", "Fp[t]", "--p", "2", "--trials", "5", "--seed", "9"], &[&tt], &[]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["result"]["axioms"]["trials"], 5);

    let raw = f.put("T3.json", r#"{"model": "Fp[t]", "p": 2, "terms": [{"coeff": "1", "exp": 3}]}"#);
    let o = gacurve(&["axioms"], &[&raw], &[]);
    assert_eq!(code(&o), 1);
    assert_eq!(report(&o)["result"]["additivity"]["monomial"], "T^2*U");

    assert_eq!(code(&gacurve(&["axioms"], &[&tt], &[])), 2);
    assert_eq!(code(&gacurve(&["axioms", "--model", "Fp[t]", "--p", "4"], &[&tt], &[])), 2);
}

#[test]
fn reports_are_deterministic() {
    let f = Files::new();
    let e1 = f.put("e1.json", E1);
    let tt = action(&f, "tT.json", r#"{"coeff": "t", "frob": 0}"#);
    for args in [&["verify"][..], &["act", "--free"][..]] {
        let files: Vec<&Path> = if args.len() == 1 { vec![&e1] } else { vec![&e1, &tt] };
        let a = gacurve(args, &files, &[]);
        let b = gacurve(args, &files, &[]);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = gacurve(&["selftest"], &[], &[]);
    let b = gacurve(&["selftest"], &[], &[]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["result"]["passed"], true);

    // timing lives outside the result body
    let timed = Command::new(env!("CARGO_BIN_EXE_gacurve")).arg("selftest").output().unwrap();
    let timed = report(&timed);
    assert!(timed["timing_ms"].is_u64());
    assert_eq!(timed["result"], report(&a)["result"]);
}
