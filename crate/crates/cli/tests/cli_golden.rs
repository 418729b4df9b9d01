//! End-to-end tests of the hopflim binary: exit codes per failure class,
//! report shapes, determinism, and the make -> check -> compute flows.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

const BIN: &str = env!("CARGO_BIN_EXE_hopflim");

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopflim-golden-{}", std::process::id()));
    fs::create_dir_all(&dir).expect("scratch dir");
    dir.join(name)
}

/// Runs the binary and parses the single JSON report from stdout.
fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    let code = out.status.code().expect("terminated by signal");
    let stdout = String::from_utf8(out.stdout).expect("stdout is utf-8");
    let report = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).unwrap_or_else(|e| {
            panic!("stdout is not a JSON report ({e}):\n{stdout}");
        })
    };
    (code, report)
}

fn run_raw(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn make(recipe_args: &[&str], file: &str) -> String {
    let path = scratch(file);
    let path_str = path.to_str().expect("utf-8 path").to_string();
    let mut args = vec!["make"];
    args.extend_from_slice(recipe_args);
    args.extend_from_slice(&["--out", &path_str]);
    let (code, report) = run(&args);
    assert_eq!(code, 0, "make failed: {report}");
    path_str
}

#[test]
fn the_cyclic_four_document_flows_through_check_and_equalize() {
    let file = make(&["cyclic", "--order", "4"], "kz4.json");

    let (code, report) = run(&["check", &file]);
    assert_eq!(code, 0);
    assert_eq!(report["status"], "pass");
    assert_eq!(report["objects"]["kZ4"]["pass"], true);
    assert_eq!(report["objects"]["kZ4"]["level"], "hopf");
    assert_eq!(report["morphisms"]["inv"]["certificate"], "hopf");

    let (code, report) = run(&["equalize", &file, "--f", "id", "--g", "inv", "--method", "both"]);
    assert_eq!(code, 0);
    assert_eq!(report["status"], "ok");
    assert_eq!(report["level"], "hopf");
    assert_eq!(report["dims"]["carrier"], 2);
    assert_eq!(report["methods_agree"], true);
    // The involutions of Z4 are 1 and g^2: rows of the reduced basis.
    assert_eq!(
        report["carrier_basis"],
        json!([["1", "0", "0", "0"], ["0", "0", "1", "0"]])
    );
    assert_eq!(report["closure"]["mult_closed"], true);
    assert_eq!(report["closure"]["unit_in"], true);
    assert_eq!(report["closure"]["antipode_stable"], true);

    // Each single method must answer the same carrier.
    for method in ["direct", "descent"] {
        let (code, single) =
            run(&["equalize", &file, "--f", "id", "--g", "inv", "--method", method]);
        assert_eq!(code, 0);
        assert_eq!(single["carrier_basis"], report["carrier_basis"]);
    }
}

#[test]
fn products_of_group_algebras_report_tensor_dimensions() {
    let file = make(&["cyclic", "--order", "2", "--field", "F3"], "kz2.json");
    let (code, report) = run(&["product", &file, "--objects", "kZ2,kZ2", "--level", "hopf"]);
    assert_eq!(code, 0);
    assert_eq!(report["dims"]["product"], 4);
    assert_eq!(report["certificates"]["p0"], "hopf");
    assert_eq!(report["certificates"]["p1"], "hopf");
}

#[test]
fn limits_of_parallel_pair_diagrams_match_the_equalizer() {
    let file = make(&["cyclic", "--order", "4"], "kz4-diagram.json");
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    doc["diagrams"] = json!({
        "pair": {
            "nodes": [["a", "kZ4"], ["b", "kZ4"]],
            "arrows": [["id", "a", "b"], ["inv", "a", "b"]]
        }
    });
    fs::write(&file, serde_json::to_string(&doc).unwrap()).unwrap();

    let (code, report) = run(&["limit", &file, "--diagram", "pair"]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["dims"]["limit"], 2);
    assert_eq!(report["dims"]["product"], 16);
    assert_eq!(report["level"], "hopf");
    // Both cone legs exist and are certified.
    assert_eq!(report["cone"]["a"]["certificate"], "hopf");
    assert_eq!(report["cone"]["b"]["certificate"], "hopf");
}

#[test]
fn corrupted_comultiplications_exit_2_naming_coassociativity() {
    // Divided powers of degree 2 with one extra term in Delta(t2). The
    // counit laws still hold, so the named violation is coassociativity.
    let path = scratch("broken-coassoc.json");
    fs::write(
        &path,
        r#"{
            "format": "hopflim/1",
            "field": {"kind": "Q"},
            "objects": {
                "warped": {
                    "dim": 3,
                    "delta": [
                        [0,0,0,"1"],
                        [1,0,1,"1"], [1,1,0,"1"],
                        [2,0,2,"1"], [2,1,1,"1"], [2,2,0,"1"], [2,1,2,"1"]
                    ],
                    "epsilon": ["1", "0", "0"]
                }
            }
        }"#,
    )
    .unwrap();
    let file = path.to_str().unwrap();

    let (code, report) = run(&["check", file]);
    assert_eq!(code, 2);
    assert_eq!(report["status"], "fail");
    assert_eq!(report["objects"]["warped"]["pass"], false);
    assert_eq!(report["objects"]["warped"]["violation"]["identity"], "coassociativity");

    // Any non-check command rejects the same document with the axiom class.
    let (code, report) = run(&["equalize", file, "--f", "id", "--g", "id"]);
    assert_eq!(code, 2);
    assert_eq!(report["status"], "axiom-violation");
}

#[test]
fn corrupted_multiplications_exit_2_naming_the_compatibility_law() {
    // kZ2 with z*z = 1 + z: still associative and unital, but Delta is no
    // longer an algebra map.
    let path = scratch("broken-mult.json");
    fs::write(
        &path,
        r#"{
            "format": "hopflim/1",
            "field": {"kind": "Q"},
            "objects": {
                "skewed": {
                    "dim": 2,
                    "delta": [[0,0,0,"1"], [1,1,1,"1"]],
                    "epsilon": ["1", "1"],
                    "mult": [[0,0,0,"1"], [0,1,1,"1"], [1,0,1,"1"], [1,1,0,"1"], [1,1,1,"1"]],
                    "unit": ["1", "0"]
                }
            }
        }"#,
    )
    .unwrap();

    let (code, report) = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(report["status"], "fail");
    assert_eq!(
        report["objects"]["skewed"]["violation"]["identity"],
        "comultiplication is an algebra map"
    );
}

#[test]
fn corrupted_antipodes_exit_2_naming_the_convolution_law() {
    // kZ4 with the identity in place of the inversion antipode.
    let file = make(&["cyclic", "--order", "4"], "kz4-bad-antipode.json");
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    doc["objects"]["kZ4"]["antipode"] = json!([
        [0, 0, "1"], [1, 1, "1"], [2, 2, "1"], [3, 3, "1"]
    ]);
    fs::write(&file, serde_json::to_string(&doc).unwrap()).unwrap();

    let (code, report) = run(&["check", &file]);
    assert_eq!(code, 2);
    assert_eq!(report["status"], "fail");
    let identity = report["objects"]["kZ4"]["violation"]["identity"]
        .as_str()
        .unwrap();
    assert!(identity.contains("antipode convolution law"), "got {identity}");
}

#[test]
fn morphisms_failing_their_declared_level_exit_2() {
    let file = make(&["cyclic", "--order", "4"], "kz4-bad-morphism.json");
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    // The projection onto the unit coordinate is not a coalgebra map.
    doc["morphisms"]["crush"] = json!({
        "dom": "kZ4", "cod": "kZ4",
        "matrix": [[0, 0, "1"]],
        "level": "coalg"
    });
    fs::write(&file, serde_json::to_string(&doc).unwrap()).unwrap();

    let (code, report) = run(&["check", &file]);
    assert_eq!(code, 2, "{report}");
    assert_eq!(report["status"], "fail");
    assert_eq!(report["morphisms"]["crush"]["pass"], false);
    let identity = report["morphisms"]["crush"]["violation"]["identity"]
        .as_str()
        .unwrap();
    assert!(identity.starts_with("map "), "got {identity}");
    // The honest objects still pass.
    assert_eq!(report["objects"]["kZ4"]["pass"], true);
}

#[test]
fn unparseable_input_exits_5() {
    let path = scratch("nonsense.json");
    fs::write(&path, "{ this is not json").unwrap();
    let (code, report) = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 5);
    assert_eq!(report["status"], "parse-error");

    let missing = scratch("does-not-exist.json");
    let (code, report) = run(&["check", missing.to_str().unwrap()]);
    assert_eq!(code, 5);
    assert_eq!(report["status"], "parse-error");

    let wrong_format = scratch("wrong-format.json");
    fs::write(&wrong_format, r#"{"format": "hopflim/9", "field": {"kind": "Q"}}"#).unwrap();
    let (code, report) = run(&["check", wrong_format.to_str().unwrap()]);
    assert_eq!(code, 5);
    assert_eq!(report["status"], "parse-error");

    let file = make(&["cyclic", "--order", "2"], "kz2-names.json");
    let (code, report) = run(&["equalize", &file, "--f", "id", "--g", "ghost"]);
    assert_eq!(code, 5);
    assert_eq!(report["status"], "parse-error");
    assert!(report["error"].as_str().unwrap().contains("ghost"));
}

#[test]
fn usage_errors_exit_5_and_help_exits_0() {
    let out = run_raw(&["equalize", "somefile", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(5));

    let out = run_raw(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("equalize"));
    assert!(text.contains("antipode-core"));

    let out = run_raw(&[]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn unsupported_requests_exit_3() {
    // Sweedler's four-dimensional Hopf algebra is not cocommutative, so it
    // has no product in this fragment.
    let file = make(&["sweedler-h4"], "h4.json");
    let (code, report) = run(&["product", &file, "--objects", "H4,H4"]);
    assert_eq!(code, 3);
    assert_eq!(report["status"], "unsupported-fragment");
    assert!(report["error"].as_str().unwrap().contains("cocommutative"));
}

#[test]
fn violated_preconditions_exit_3() {
    // The identity does not vanish on the coaugmentation, so it cannot be
    // lifted into the cofree coalgebra.
    let file = make(&["divided-powers", "--n", "2"], "dp2.json");
    let (code, report) = run(&["lift", &file, "--object", "dp(2)", "--phi", "id", "--degree", "2"]);
    assert_eq!(code, 3);
    assert_eq!(report["status"], "precondition-violation");
    assert!(report["error"].as_str().unwrap().contains("vanish"));
}

#[test]
fn antipode_cores_of_honest_hopf_algebras_are_full() {
    let file = make(&["taft", "--n", "3", "--field", "F7"], "taft3.json");
    let (code, report) = run(&["antipode-core", &file, "--object", "T3", "--s", "s"]);
    assert_eq!(code, 0);
    assert_eq!(report["dims"]["core"], report["dims"]["object"]);
    assert_eq!(report["closure"]["mult_closed"], true);
    assert_eq!(report["closure"]["unit_in"], true);
    assert_eq!(report["closure"]["antipode_stable"], true);
}

#[test]
fn oracle_campaigns_succeed_and_reports_are_deterministic() {
    let (code, first) = run(&["oracle", "equalizer:seed=11,count=12"]);
    assert_eq!(code, 0, "{first}");
    assert_eq!(first["status"], "ok");
    assert_eq!(first["method_agreements"], 12);

    let (code, second) = run(&["oracle", "equalizer:seed=11,count=12"]);
    assert_eq!(code, 0);
    assert_eq!(first, second, "same seed must reproduce the same report");

    let (code, report) = run(&["oracle", "subcoalgebra"]);
    assert_eq!(code, 0);
    assert_eq!(report["status"], "ok");
    assert!(report["total_windows"].as_u64().unwrap() >= 300);
}

#[test]
fn repeated_runs_print_identical_bytes() {
    let file = make(&["cyclic", "--order", "6", "--field", "F5"], "kz6.json");
    let args = ["equalize", &file, "--f", "id", "--g", "inv"];
    let a = run_raw(&args);
    let b = run_raw(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn timings_are_reported_only_on_request() {
    let file = make(&["cyclic", "--order", "3"], "kz3.json");
    let (_, plain) = run(&["equalize", &file, "--f", "id", "--g", "inv"]);
    assert!(plain.get("timings").is_none());
    let (_, timed) = run(&["--timings", "equalize", &file, "--f", "id", "--g", "inv"]);
    assert!(timed["timings"]["total_ms"].is_number());
}

#[test]
fn made_documents_round_trip_byte_for_byte() {
    // Serializing what make wrote must reproduce the file exactly: the
    // document format has one canonical rendering.
    let file = make(&["taft", "--n", "3", "--field", "F7"], "taft3-rt.json");
    let text = fs::read_to_string(&file).unwrap();
    let copy = scratch("taft3-copy.json");
    let (code, _) = run(&["make", "taft", "--n", "3", "--field", "F7", "--out",
        copy.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(text, fs::read_to_string(&copy).unwrap());
}
