use std::path::PathBuf;

use foliation_lab_cli::{run_with_env, Outcome, EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN};
use serde_json::Value;

fn inputs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("inputs")
}

fn input(name: &str) -> String {
    inputs().join(name).to_str().unwrap().to_string()
}

fn run(args: &[&str], env: Option<&str>) -> Outcome {
    let argv = std::iter::once("foliation-lab").chain(args.iter().copied());
    run_with_env(argv, env.map(str::to_string))
}

fn report(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

fn scratch(name: &str, content: &str) -> String {
    let dir = std::env::temp_dir().join(format!("foliation-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p.to_str().unwrap().to_string()
}

const BARE_CUSP: &str = r#"{
  "vars": ["x", "y"],
  "foliation": {"kind": "affine", "form": {"dx": "-3*x^2", "dy": "2*y"}},
  "curves": {"f": "y^2 - x^3"}
}"#;

#[test]
fn checked_in_inputs_validate() {
    for entry in std::fs::read_dir(inputs()).unwrap() {
        let path = entry.unwrap().path();
        let o = run(
            &[
                "--input",
                path.to_str().unwrap(),
                "check",
                "--format",
                "json",
            ],
            None,
        );
        assert_eq!(o.code, EXIT_OK, "{path:?}: {}", o.stderr);
        assert_eq!(report(&o)["verdicts"]["valid"], true);
    }
}

#[test]
fn depth_from_environment() {
    let cusp = scratch("cusp.json", BARE_CUSP);
    let o = run(&["--input", &cusp, "reduce", "--format", "json"], Some("0"));
    assert_eq!(o.code, EXIT_UNKNOWN);
    assert_eq!(report(&o)["verdicts"]["status"], "DepthExceeded");

    let o = run(
        &["--input", &cusp, "reduce", "--max-depth", "12"],
        Some("0"),
    );
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);

    let o = run(&["--input", &cusp, "reduce"], None);
    assert_eq!(o.code, EXIT_OK);

    let o = run(&["--input", &cusp, "reduce"], Some("deep"));
    assert_eq!(o.code, EXIT_INPUT);
}

#[test]
fn params_depth_beats_environment() {
    let o = run(&["--input", &input("cusp.json"), "reduce"], Some("0"));
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
}

#[test]
fn cusp_blowup_is_logarithmic() {
    let o = run(
        &["--input", &input("cusp.json"), "blowup", "--format", "json"],
        None,
    );
    let v = report(&o);
    assert_eq!(v["verdicts"]["pullback_logarithmic"], true);
    assert_eq!(v["verdicts"]["m"], 1);
    assert_eq!(v["data"]["chart_map"], serde_json::json!(["x", "x*t"]));
}

#[test]
fn conic_division_and_integral() {
    let o = run(
        &[
            "--input",
            &input("conic.json"),
            "divide",
            "--format",
            "json",
        ],
        None,
    );
    let v = report(&o);
    assert_eq!(v["verdicts"]["certified"], true);
    assert_eq!(v["data"]["a"], "-z0");

    let o = run(
        &[
            "--input",
            &input("conic.json"),
            "first-integral",
            "--format",
            "json",
        ],
        None,
    );
    assert_eq!(report(&o)["data"]["integral"], "(z0*z1 + z2^2)/(z0)^2");
}

#[test]
fn several_curves_need_a_choice() {
    let path = input("lines_and_conic.json");
    let o = run(&["--input", &path, "extremal"], None);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("--curve"));

    let o = run(
        &[
            "--input", &path, "--curve", "f", "extremal", "--format", "json",
        ],
        None,
    );
    assert_eq!(o.code, EXIT_OK);
    let v = report(&o);
    assert_eq!(v["verdicts"]["closed"], true);
    assert_eq!(v["verdicts"]["hypothesis"], "Failed");
}

#[test]
fn text_and_json_agree_on_verdicts() {
    let text = run(&["demo", "radial"], None);
    let json = run(&["demo", "radial", "--format", "json"], None);
    assert!(text.stdout.starts_with("command: demo radial\n"));
    let v = report(&json);
    for (k, val) in v["verdicts"].as_object().unwrap() {
        let shown = match val {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        assert!(text.stdout.contains(&format!("{k}: {shown}\n")), "{k}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"], None).code, EXIT_OK);
    assert_eq!(run(&["--version"], None).code, EXIT_OK);
}

#[test]
fn error_json_is_stable() {
    let bad = scratch("bad.json", "{\"vars\": [\"x\", \"y\"],\n \"foliation\": 3}");
    let a = run(&["--input", &bad, "check", "--format", "json"], None);
    let b = run(&["--input", &bad, "check", "--format", "json"], None);
    assert_eq!(a.code, EXIT_INPUT);
    assert_eq!(a.stderr, b.stderr);
    let v: Value = serde_json::from_str(&a.stderr).unwrap();
    assert_eq!(v["errors"][0]["kind"], "parse");
    assert_eq!(v["errors"][0]["line"], 2);
}

#[test]
fn reports_match_the_schema() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let (cusp, conic, pencil) = (
        input("cusp.json"),
        input("conic.json"),
        input("pencil.json"),
    );
    let runs: Vec<Vec<&str>> = vec![
        vec!["demo", "radial"],
        vec!["demo", "cdf"],
        vec!["demo", "extremal-d1"],
        vec!["--input", &cusp, "check"],
        vec!["--input", &cusp, "blowup"],
        vec!["--input", &cusp, "dicritical", "--full-tree"],
        vec!["--input", &cusp, "reduce"],
        vec!["--input", &cusp, "logform"],
        vec!["--input", &pencil, "invariant"],
        vec!["--input", &pencil, "closed"],
        vec!["--input", &conic, "extremal"],
        vec!["--input", &conic, "divide"],
        vec!["--input", &conic, "first-integral"],
        vec!["--input", "/nonexistent.json", "check"],
    ];
    for args in runs {
        let mut args = args.clone();
        args.extend(["--format", "json"]);
        let o = run(&args, None);
        let doc = if o.code == EXIT_INPUT {
            &o.stderr
        } else {
            &o.stdout
        };
        let v: Value = serde_json::from_str(doc).unwrap();
        if let Err(e) = validator.validate(&v) {
            panic!("{args:?}: {e}");
        }
    }
}
