use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const HOPF: &str = r#"{"format": "pd", "crossings": [[1,3,2,4],[3,1,4,2]]}"#;
const TREFOIL_RIGHT: &str = r#"{"format": "braid", "strands": 2, "word": [1,1,1]}"#;
const T24: &str = r#"{"format": "braid", "strands": 4, "word": [1,2,3,1,2,3]}"#;

fn knotslope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotslope")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_out(o: &Output) -> Value {
    assert!(o.status.code().is_some(), "killed by signal");
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&o.stderr));
    })
}

#[test]
fn bracket_of_hopf_and_empty() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "hopf.json", HOPF);
    for engine in ["auto", "bruteforce", "contract"] {
        let o = knotslope(&["bracket", path(&h), "--engine", engine]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(json_out(&o), json!({"6": "1", "2": "1", "-2": "1", "-6": "1"}));
    }
    let e = write(&dir, "empty.json", r#"{"format": "pd", "crossings": []}"#);
    assert_eq!(json_out(&knotslope(&["bracket", path(&e)])), json!({"0": "1"}));
}

#[test]
fn malformed_files_exit_2() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [
        ("trunc.json", "{"),
        ("fmt.json", r#"{"format": "gauss", "code": []}"#),
        ("pd.json", r#"{"format": "pd", "crossings": [[1,2,3,4]]}"#),
    ] {
        let f = write(&dir, name, text);
        let o = knotslope(&["bracket", path(&f)]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(o.stdout.is_empty());
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    }
    let o = knotslope(&["bracket", path(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn guards_exit_2() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", TREFOIL_RIGHT);
    let o = knotslope(&["bracket", path(&t), "--engine", "bruteforce", "--max-bruteforce-crossings", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = knotslope(&["bracket", path(&t), "--engine", "contract", "--max-contract-width", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn jones_documents() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "hopf.json", HOPF);
    let o = knotslope(&["jones", path(&h), "--colors", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o), json!({"-6": "1", "-2": "1", "2": "1", "6": "1"}));
    assert_eq!(json_out(&knotslope(&["jones", path(&h), "-c", "1,1"])), json!({"0": "1"}));
    assert_eq!(knotslope(&["jones", path(&h), "-c", "2"]).status.code(), Some(2));
    assert_eq!(knotslope(&["jones", path(&h), "-c", "0,2"]).status.code(), Some(2));
}

#[test]
fn adequacy_and_slopes() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", TREFOIL_RIGHT);
    let a = json_out(&knotslope(&["adequacy", path(&t)]));
    assert_eq!(a["adequate"], json!(true));
    assert_eq!(a["crossings"], json!(3));
    let s = json_out(&knotslope(&["slopes", path(&t)]));
    assert_eq!(s["formula_matrix"], json!([["6"]]));
    assert_eq!(s["surface_slope"], json!(["6"]));
}

#[test]
fn verify_exit_statuses() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "hopf.json", HOPF);
    let o = knotslope(&["verify", path(&h)]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_out(&o);
    assert_eq!(r["verdict"], json!("agree"));
    assert_eq!(r["surface_slope"], json!(["1", "1"]));

    let t = write(&dir, "t.json", TREFOIL_RIGHT);
    let r = json_out(&knotslope(&["verify", path(&t)]));
    assert_eq!(r["verdict"], json!("agree"));
    assert_eq!(r["surface_slope"], json!(["6"]));

    // T(2,4) as the closure of (s1 s2 s3)^2 is not minus-adequate.
    let n = write(&dir, "t24.json", T24);
    let o = knotslope(&["verify", path(&n), "--max-color", "4"]);
    let r = json_out(&o);
    assert_eq!(r["adequate"], json!(false));
    assert_eq!(r["verdict"], json!("fit-only"));
    assert_eq!(r["formula_matrix"], Value::Null);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn fit_from_diagram_and_samples() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", TREFOIL_RIGHT);
    let out = dir.path().join("fit.json");
    let o = knotslope(&["fit", path(&t), "--max-color", "6", "--parity", "1", "--output", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let doc: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let fits = doc["fits"].as_array().unwrap();
    assert_eq!(fits.len(), 1);
    assert_eq!(fits[0]["matrix"], json!([["6"]]));

    // The sample grid can be fed back in on its own.
    let samples = json!({ "grid": fits[0]["samples"], "parity_offsets": [1] });
    let s = write(&dir, "samples.json", &samples.to_string());
    let r = json_out(&knotslope(&["fit", path(&s), "--samples"]));
    assert_eq!(r["matrix"], json!([["6"]]));
    assert_eq!(r["column_sums"], json!(["6"]));

    assert_eq!(knotslope(&["fit", path(&t), "--parity", "1,0"]).status.code(), Some(2));
}

#[test]
fn torus_documents() {
    let raw = json_out(&knotslope(&["torus", "2", "2", "--colors", "2,2"]));
    let normalized = json_out(&knotslope(&["torus", "2", "2", "--colors", "2,2", "--normalized"]));
    let hopf = json!({"-6": "1", "-2": "1", "2": "1", "6": "1"});
    assert_eq!(normalized, hopf);
    assert_eq!(raw, hopf);

    let raw = json_out(&knotslope(&["torus", "2", "3", "-c", "2"]));
    let normalized = json_out(&knotslope(&["torus", "2", "3", "-c", "2", "--normalized"]));
    for (e, c) in raw.as_object().unwrap() {
        let flipped = format!("{}", -c.as_str().unwrap().parse::<i64>().unwrap());
        assert_eq!(normalized[e], json!(flipped));
    }

    let s = json_out(&knotslope(&["torus", "2", "4", "--slopes"]));
    assert_eq!(s["slope_matrix"], json!([["2", "0"], ["0", "2"]]));
    assert_eq!(s["boundary_slope"], json!(["2", "2"]));

    let d = json_out(&knotslope(&["torus", "-2", "3", "--colors", "3", "--degrees"]));
    assert_eq!(d["case"], json!("negative-top-term"));
    assert_eq!(d["maxdeg"], d["case_formula_value"]);

    assert_eq!(knotslope(&["torus", "5", "0", "--slopes"]).status.code(), Some(2));
    assert_eq!(knotslope(&["torus", "2", "4", "--colors", "2"]).status.code(), Some(2));
    assert_eq!(knotslope(&["torus", "2", "3"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "hopf.json", HOPF);
    let a = knotslope(&["verify", path(&h)]);
    let b = knotslope(&["verify", path(&h)]);
    assert_eq!(a.stdout, b.stdout);
}
