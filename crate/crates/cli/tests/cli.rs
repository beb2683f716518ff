use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;
use stdlab::field::PrimeField;
use stdlab::grading::LocalRing;
use stdlab::monoprime::minimal_primes_squarefree;
use stdlab::poly::{PolyRing, Polynomial};
use stdlab_cli::ast::*;
use stdlab_cli::parser::parse_session;
use stdlab_cli::printer::{format_source, print_ideal, print_poly, print_script};
use stdlab_cli::render::{report_schema, to_json};
use stdlab_cli::runner::{run_session, RunOptions};

const PREAMBLE: &str =
    "ring R = poly(F32003, [x,y]); ideal I = (x^7, x^6*y, x^2*y^5, y^7); ideal J = (x^7, y^7);";
const SEVEN_POWERS: &str = concat!(
    "ring R = poly(F32003, [x,y]); ideal I = (x^7, x^6*y, x^2*y^5, y^7); ideal J = (x^7, y^7);",
    " check standardness(I, J, n=3);"
);

fn corpus() -> Vec<(PathBuf, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "stdlab"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let s = std::fs::read_to_string(&p).unwrap();
            (p, s)
        })
        .collect()
}

fn run(src: &str) -> stdlab_cli::runner::Report {
    run_session(&parse_session(src).unwrap(), &RunOptions::default())
}

#[test]
fn seven_powers_script_has_four_nodes() {
    let script = parse_session(SEVEN_POWERS).unwrap();
    assert_eq!(script.len(), 4);
    let Statement::Check(c) = &script.statements[3].statement else {
        panic!("last node is a check");
    };
    assert_eq!(c.command, "standardness");
    assert_eq!(c.args[2].name.as_deref(), Some("n"));
    assert_eq!(c.args[2].value, ArgValue::Int(3));
}

#[test]
fn semigroup_script_has_two_nodes() {
    let script = parse_session("semigroup S = <4,5,11>; check standardness(S, J=4, n=3);").unwrap();
    assert_eq!(script.len(), 2);
    assert_eq!(
        script.statements[0].statement,
        Statement::Declare {
            name: "S".into(),
            decl: Decl::Semigroup(vec![4, 5, 11])
        }
    );
}

#[test]
fn empty_input_is_an_empty_script() {
    let script = parse_session("").unwrap();
    assert!(script.is_empty());
    let report = run_session(&script, &RunOptions::default());
    assert_eq!(report.exit_code, 0);
    assert_eq!(report.json["summary"]["commands"], 0);
}

#[test]
fn diagnostics_carry_positions_and_expected_tokens() {
    let e = parse_session("ring R = poly([x,y]);\ncheck standardness(I, (x), n=2);").unwrap_err();
    assert_eq!((e.pos.line, e.pos.column), (2, 20));
    assert!(e.message.contains("before it is declared"));

    let e = parse_session("ring R = poly([x,y]); check frobnicate(R);").unwrap_err();
    assert!(e.message.contains("unknown command"));
    assert!(e.expected.contains(&"`koszul`".to_string()));

    let e = parse_session("ring R = poly([x,y]); check colength((x), (y));").unwrap_err();
    assert!(e.message.contains("too many arguments"));

    let e = parse_session("ring R = poly([x,y]); check colength();").unwrap_err();
    assert!(e.message.contains("missing required parameter `A`"));

    let e = parse_session("ring R = poly([x,y]) $").unwrap_err();
    assert_eq!((e.pos.line, e.pos.column), (1, 22));
    assert!(e.message.contains("unexpected character"));

    let e = parse_session("ring R = poly([x,y])").unwrap_err();
    assert!(e.expected.contains(&"`;`".to_string()));

    let e = parse_session("ring R = poly([x,y]); check koszul(R, (x), 1, 1, j=2);").unwrap_err();
    assert!(e.message.contains("given twice"));
}

#[test]
fn exit_codes_follow_expectations() {
    let met = format!(
        "{} check standardness(I, J, n=3) expect fail at k=2;",
        PREAMBLE
    );
    assert_eq!(run(&met).exit_code, 0);
    let unmet = met.replace("expect fail at k=2", "expect pass");
    assert_eq!(run(&unmet).exit_code, 1);
    let wrong_level = met.replace("at k=2", "at k=3");
    assert_eq!(run(&wrong_level).exit_code, 1);
}

#[test]
fn binary_exit_codes() {
    let dir = std::env::temp_dir().join(format!("stdlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let body = PREAMBLE;
    let cases = [
        (
            format!("{body} check standardness(I, J, n=3) expect fail at k=2;"),
            0,
        ),
        (
            format!("{body} check standardness(I, J, n=3) expect pass;"),
            1,
        ),
        (format!("{body} check standardness(I, K, n=3);"), 2),
        (format!("{body} check colength(I & (x));"), 2),
    ];
    let exe = env!("CARGO_BIN_EXE_stdlab");
    for (i, (src, code)) in cases.iter().enumerate() {
        let path = dir.join(format!("case{i}.stdlab"));
        std::fs::write(&path, src).unwrap();
        let out = Command::new(exe).arg("run").arg(&path).output().unwrap();
        assert_eq!(out.status.code(), Some(*code), "case {i}: {src}");
    }
    let out = Command::new(exe).arg("schema").output().unwrap();
    assert!(out.status.success());
    let schema: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(schema, report_schema());
}

#[test]
fn corpus_round_trips_and_runs_clean() {
    for (path, src) in corpus() {
        let first = parse_session(&src).unwrap();
        let printed = print_script(&first);
        let second = parse_session(&printed).unwrap();
        assert_eq!(first.nodes(), second.nodes(), "{}", path.display());
        let formatted = format_source(&src).unwrap();
        assert_eq!(format_source(&formatted).unwrap(), formatted);
        assert_eq!(parse_session(&formatted).unwrap().nodes(), first.nodes());
        let report = run_session(&first, &RunOptions::default());
        assert_eq!(
            report.exit_code,
            0,
            "{}: {}",
            path.display(),
            to_json(&report)
        );
    }
}

#[test]
fn comments_before_statements_survive_formatting() {
    let src = "# header\nring R = poly([x]);\n// note\ncheck colength((x^2));\n# trailer\n";
    let out = format_source(src).unwrap();
    assert_eq!(
        out,
        "# header\nring R = poly([x]);\n// note\ncheck colength((x^2));\n# trailer\n"
    );
}

#[test]
fn reports_are_deterministic() {
    for (_, src) in corpus() {
        let a = to_json(&run(&src));
        let b = to_json(&run(&src));
        assert_eq!(a, b);
        assert!(!a.contains("elapsed_ms"));
    }
    let script =
        parse_session("ring R = poly([x,y]); check reduction(maximal^2, generic(maximal^2));")
            .unwrap();
    let seeded = |seed| {
        let opts = RunOptions {
            seed,
            ..RunOptions::default()
        };
        to_json(&run_session(&script, &opts))
    };
    assert_eq!(seeded(7), seeded(7));
}

/// Keys of every object appear in sorted order in the serialized report.
#[test]
fn report_keys_are_sorted() {
    fn check(v: &Value) {
        match v {
            Value::Object(m) => {
                let keys: Vec<&String> = m.keys().collect();
                let mut sorted = keys.clone();
                sorted.sort();
                assert_eq!(keys, sorted);
                m.values().for_each(check);
            }
            Value::Array(a) => a.iter().for_each(check),
            _ => {}
        }
    }
    let text = to_json(&run(&corpus()[0].1));
    check(&serde_json::from_str(&text).unwrap());
}

/// Validates the subset of JSON Schema used by the published report schema.
fn validate(schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    let fail = |msg: &str| Err(format!("{path}: {msg}"));
    if let Some(c) = schema.get("const") {
        if c != v {
            return fail("const mismatch");
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return fail("not in enum");
        }
    }
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return fail("bad type keyword"),
        };
        let ok = types.iter().any(|t| match *t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_i64() || v.is_u64(),
            "number" => v.is_number(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            _ => false,
        });
        if !ok {
            return fail(&format!("expected {types:?}"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_f64) {
        if v.as_f64().is_some_and(|x| x < min) {
            return fail("below minimum");
        }
    }
    if let Some(obj) = v.as_object() {
        let props = schema.get("properties").and_then(Value::as_object);
        for r in schema
            .get("required")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            if !obj.contains_key(r.as_str().unwrap()) {
                return fail(&format!("missing {r}"));
            }
        }
        for (k, val) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(sub) => validate(sub, val, &format!("{path}/{k}"))?,
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return fail(&format!("unexpected property {k}"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, val) in arr.iter().enumerate() {
            validate(items, val, &format!("{path}/{i}"))?;
        }
    }
    Ok(())
}

#[test]
fn reports_validate_against_schema() {
    let schema = report_schema();
    let mut reports: Vec<Value> = corpus().iter().map(|(_, s)| run(s).json).collect();
    reports
        .push(run("ring R = poly([x,y]); ideal I = (x) : (y, x*y - 1); check colength(I);").json);
    let timed = run_session(
        &parse_session(SEVEN_POWERS).unwrap(),
        &RunOptions {
            timing: true,
            fail_fast: true,
            ..RunOptions::default()
        },
    );
    reports.push(timed.json);
    for r in &reports {
        let reparsed: Value = serde_json::from_str(&serde_json::to_string(r).unwrap()).unwrap();
        validate(&schema, &reparsed, "").unwrap();
    }
    let mut broken = reports[0].clone();
    broken["exit_code"] = 5.into();
    assert!(validate(&schema, &broken, "").is_err());
}

#[test]
fn errors_are_captured_per_command() {
    let src =
        "ring R = poly([x,y]); check colength((x)); check colength((x, y^2)) expect length = 2;";
    let report = run(src);
    assert_eq!(report.exit_code, 2);
    let cmds = report.json["commands"].as_array().unwrap();
    assert_eq!(cmds[0]["status"], "error");
    assert_eq!(cmds[1]["status"], "met");

    let opts = RunOptions {
        fail_fast: true,
        ..RunOptions::default()
    };
    let report = run_session(&parse_session(src).unwrap(), &opts);
    assert_eq!(report.json["commands"][1]["status"], "skipped");
    assert_eq!(report.json["summary"]["skipped"], 1);
}

/// Witnesses reported as strings parse back into the ring and still witness
/// the failure.
#[test]
fn witnesses_reverify() {
    let src = format!(
        "{} check standardness(I, J, n=3) expect fail at k=2;",
        PREAMBLE
    );
    let report = run(&src);
    let witness = report.json["commands"][0]["result"]["witness"]
        .as_str()
        .unwrap()
        .to_string();

    let r = PolyRing::new(PrimeField::new(32003).unwrap(), ["x", "y"]);
    let ring = LocalRing::polynomial(&r);
    let p = |s: &str| Polynomial::parse(&r, s).unwrap();
    let i = ring
        .ideal(vec![p("x^7"), p("x^6*y"), p("x^2*y^5"), p("y^7")])
        .unwrap();
    let j = ring.ideal(vec![p("x^7"), p("y^7")]).unwrap();
    let w = p(&witness);
    let i2 = ring.power(&i, 2).unwrap();
    assert!(j.contains(&w).unwrap());
    assert!(i2.contains(&w).unwrap());
    assert!(!ring.product(&i, &j).unwrap().contains(&w).unwrap());

    // the witness also parses as a script polynomial
    let script = parse_session(&format!("ring R = poly([x, y]); ideal W = ({witness});")).unwrap();
    assert_eq!(script.len(), 2);

    let report = run(&std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus/monomial.stdlab"),
    )
    .unwrap());
    let conn = &report.json["commands"][1]["result"];
    assert_eq!(conn["witness"], serde_json::json!(["(x, y)", "(u, v)"]));
    let r4 = PolyRing::new(PrimeField::new(32003).unwrap(), ["x", "y", "u", "v"]);
    let ideal = stdlab::groebner::Ideal::new(
        &r4,
        ["x*u", "x*v", "y*u", "y*v"]
            .iter()
            .map(|s| Polynomial::parse(&r4, s).unwrap())
            .collect(),
    )
    .unwrap();
    let primes = minimal_primes_squarefree(&ideal).unwrap();
    let names: Vec<String> = primes
        .primes
        .iter()
        .map(|q| primes.format_prime(q))
        .collect();
    for w in conn["witness"].as_array().unwrap() {
        assert!(names.contains(&w.as_str().unwrap().to_string()));
    }

    let small = run(
        "ring P = quotient(F101, [x, y], [x*y]); check cycle(P, (x, y), (y, -x)) expect boundary;",
    );
    let result = &small.json["commands"][0]["result"];
    assert_eq!(result["certificate_verified"], true);
    let cert = result["certificate"].as_array().unwrap();
    assert_eq!(cert[0][1], "1");
    assert_eq!(cert[1][0], "-1");
}

fn arb_poly() -> impl Strategy<Value = PolyExpr> {
    let leaf = prop_oneof![
        (1u32..20).prop_map(|n| PolyExpr::Num(n.to_string(), None)),
        (1u32..9, 1u32..9).prop_map(|(n, d)| PolyExpr::Num(n.to_string(), Some(d.to_string()))),
        prop::sample::select(vec!["x", "y"]).prop_map(|v| PolyExpr::Var(v.into())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| PolyExpr::Neg(Box::new(a))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| PolyExpr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| PolyExpr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| PolyExpr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, e)| PolyExpr::Pow(Box::new(a), e)),
        ]
    })
}

fn arb_ideal() -> impl Strategy<Value = IdealExpr> {
    let leaf = prop_oneof![
        prop::collection::vec(arb_poly(), 0..3).prop_map(IdealExpr::Gens),
        Just(IdealExpr::Name("I".into())),
        Just(IdealExpr::Maximal),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), prop::option::of(0u64..5))
                .prop_map(|(a, s)| IdealExpr::Generic(Box::new(a), s)),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| IdealExpr::Sum(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| IdealExpr::Product(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| IdealExpr::Intersect(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| IdealExpr::Quotient(Box::new(a), Box::new(b))),
            (inner, 1u32..4).prop_map(|(a, k)| IdealExpr::Power(Box::new(a), k)),
        ]
    })
}

proptest! {
    #[test]
    fn printed_expressions_parse_back(e in arb_ideal(), p in arb_poly()) {
        let src = format!(
            "ring R = poly([x, y]); ideal I = (x); ideal A = {}; ideal B = ({}); check length(A, {});",
            print_ideal(&e),
            print_poly(&p),
            print_ideal(&e),
        );
        let script = parse_session(&src).unwrap();
        let Statement::Declare { decl: Decl::Ideal(back), .. } = &script.statements[2].statement else {
            panic!("ideal declaration");
        };
        prop_assert_eq!(back, &e);
        let Statement::Declare { decl: Decl::Ideal(IdealExpr::Gens(ps)), .. } = &script.statements[3].statement else {
            panic!("generator list");
        };
        prop_assert_eq!(&ps[0], &p);
        let reparsed = parse_session(&print_script(&script)).unwrap();
        prop_assert_eq!(reparsed.nodes(), script.nodes());
    }
}
