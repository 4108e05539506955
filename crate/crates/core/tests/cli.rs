use std::path::PathBuf;
use std::process::{Command, Output};

use monodromy::algebra::Cyclotomic;
use monodromy::cli::json;
use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monodromy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write_input(name: &str, v: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("monodromy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path
}

#[test]
fn envelope_has_sorted_keys_and_schema() {
    let out = run(&["betti", "--d", "4", "--n", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(
        keys,
        [
            "command",
            "params",
            "provenance",
            "result",
            "schema_version"
        ]
    );
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], "1.0");
    assert_eq!(v["command"], "betti");
    assert_eq!(v["params"], json!({"d": 4, "n": 2}));
    assert_eq!(v["result"], 21);
}

#[test]
fn hodge_and_signature_of_quartic_surface() {
    assert_eq!(
        run_json(&["hodge", "--d", "4", "--n", "2"])["result"]["values"],
        json!([1, 19, 1])
    );
    assert_eq!(
        run_json(&["signature", "--d", "4", "--n", "2"])["result"],
        json!({"r": 2, "s": 19})
    );
    assert_eq!(
        run_json(&["rank", "--d", "4", "--n", "2"])["result"],
        json!({"rank_complex": 10, "rank_real": 2})
    );
    assert_eq!(run_json(&["euler", "--d", "4", "--n", "2"])["result"], 24);
}

#[test]
fn cover_commands() {
    let h = run_json(&[
        "hodge-cover",
        "--d",
        "3",
        "--n",
        "2",
        "--k",
        "3",
        "--i",
        "1",
    ]);
    assert_eq!(h["result"]["values"], json!([0, 4, 1, 0]));
    let s = run_json(&["eigensig", "--d", "3", "--n", "2", "--k", "3", "--i", "1"]);
    assert_eq!(s["result"], json!({"p": 1, "q": 4}));
}

#[test]
fn lattice_and_suspension_checks() {
    assert_eq!(
        run_json(&["lattice-count", "--dmax", "2", "--nvars", "4", "--k", "4"])["result"],
        "19"
    );
    assert_eq!(
        run_json(&["suspend-check", "--two-d", "6", "--n", "2"])["result"]["holds"],
        true
    );
    let l = run_json(&["suspend-lattice", "--k", "4", "--times", "2"]);
    let gram = json::parse_matrix(&l["result"]["gram"]).unwrap();
    assert_eq!(l["result"]["cycle_dim"], 2);
    assert_eq!(gram.get(0, 0), &Cyclotomic::from_int(-2));
}

#[test]
fn golden_table_csv() {
    let out = run(&["table", "--d-max", "6", "--n-max", "4", "--format", "csv"]);
    assert!(out.status.success());
    let golden = include_str!("golden/table_d6_n4.csv");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn table_json_matches_csv_rows() {
    let v = run_json(&["table", "--d-max", "3", "--n-max", "2", "--format", "json"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[4]["verdict"], "KernelFinite(27)");
    assert_eq!(rows[4]["kernel_order"], 27);
    assert_eq!(rows[5]["gprime_type"], "A4:su(1,4)");
}

#[test]
fn classify_record() {
    let v = run_json(&["classify", "--d", "4", "--n", "2"]);
    let r = &v["result"];
    assert_eq!(r["verdict_label"], "KernelLarge");
    assert_eq!(r["g_type_label"], "B10:so(2,19)");
    assert_eq!(r["gprime_type_label"], "C10:sp(20)");
    assert_eq!(r["chosen_k"], 2);
    assert_eq!(r["nonisomorphic"], true);

    let text = run(&["classify", "--d", "3", "--n", "1", "--format", "text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("verdict: KernelFinite(27)"), "{}", text);
}

#[test]
fn reflect_round_trips_exact_values() {
    let z3 = Cyclotomic::zeta(3);
    let input = json!({
        "lambda": json::cyclo(&z3),
        "delta": [1, 0],
        "form": [[1, "-1/2"], ["-1/2", 1]],
        "x": [0, 1],
    });
    let path = write_input("reflect.json", &input);
    let v = run_json(&["reflect", "--input", path.to_str().unwrap()]);
    let m = json::parse_matrix(&v["result"]["matrix"]).unwrap();
    assert_eq!(v["result"]["order"], 3);
    assert_eq!(v["result"]["unitary"], true);
    assert_eq!(json::parse_cyclo(&v["result"]["determinant"]).unwrap(), z3);
    assert_eq!(json::parse_vector(&v["result"]["image"]).unwrap(), m.col(1));
    // re-encoding the parsed matrix reproduces the output verbatim
    assert_eq!(json::matrix(&m), v["result"]["matrix"]);
}

#[test]
fn nodal_and_join() {
    let v = run_json(&["nodal", "--k", "3", "--n", "1"]);
    assert_eq!(v["result"]["eigenpairs"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["order"], 3);

    let path = write_input(
        "join.json",
        &json!({"tf": [[0, -1], [1, -1]], "tg": [[-1]]}),
    );
    let j = run_json(&["join", "--input", path.to_str().unwrap()]);
    assert_eq!(j["result"]["order"], 6);
}

#[test]
fn group_closure_and_dichotomy() {
    let path = write_input(
        "closure.json",
        &json!({
            "form": [[1, "-1/2"], ["-1/2", 1]],
            "reflections": [{"lambda": -1, "delta": [1, 0]}, {"lambda": -1, "delta": [0, 1]}],
        }),
    );
    let v = run_json(&["group-closure", "--input", path.to_str().unwrap()]);
    assert_eq!(v["result"]["status"], json!({"kind": "Finite", "count": 6}));

    let d = run_json(&[
        "dichotomy",
        "--lambda-order",
        "3",
        "--h12",
        "0",
        "--signature",
        "2,0",
    ]);
    assert_eq!(d["result"], json!({"kind": "FiniteWitness", "count": 9}));
    let g = run_json(&[
        "dichotomy",
        "--lambda-order",
        "3",
        "--h12",
        "2",
        "--signature",
        "1,1",
        "--cap",
        "200",
    ]);
    assert_eq!(g["result"], json!({"kind": "GrowthEvidence", "count": 201}));
}

#[test]
fn product_obstruction_command() {
    let v = run_json(&["product-obstruction", "--d", "3", "--k", "3"]);
    assert_eq!(
        v["result"],
        json!({"holds": true, "max_order": "6", "discriminant_degree": "32"})
    );
}

#[test]
fn precondition_errors_exit_with_two_and_no_stdout() {
    for args in [
        &["betti", "--d", "1", "--n", "2"][..],
        &[
            "hodge-cover",
            "--d",
            "4",
            "--n",
            "1",
            "--k",
            "3",
            "--i",
            "1",
        ],
        &["signature", "--d", "3", "--n", "1"],
        &["eigensig", "--d", "4", "--n", "2", "--k", "2", "--i", "1"],
        &["product-obstruction", "--d", "4", "--k", "2"],
        &[
            "dichotomy",
            "--lambda-order",
            "2",
            "--h12",
            "0",
            "--signature",
            "2,0",
        ],
        &["reflect", "--input", "/nonexistent/input.json"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        assert!(out.stdout.is_empty(), "{:?}", args);
        assert!(!out.stderr.is_empty(), "{:?}", args);
    }
}

#[test]
fn unnormalized_root_is_rejected() {
    let path = write_input("bad.json", &json!({"lambda": -1, "delta": [1, 1]}));
    let out = run(&["reflect", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("normalized"));
}
