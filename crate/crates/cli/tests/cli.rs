use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(input: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_breakdiv"))
        .arg("-i")
        .arg(data(input))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn ok(input: &str, args: &[&str]) -> Value {
    let out = run(input, args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    json_of(&out)
}

fn temp_json(value: &Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{value}").unwrap();
    f
}

#[test]
fn lists_trees_and_break_divisors() {
    assert_eq!(
        ok("theta.json", &["trees"]),
        json!([["e1"], ["e2"], ["e3"]])
    );
    assert_eq!(
        ok("k4.json", &["break-divisors"]).as_array().unwrap().len(),
        16
    );
    assert_eq!(ok("theta.json", &["cycles"]).as_array().unwrap().len(), 3);
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_breakdiv"))
        .arg("f-vector")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let text = std::fs::read(data("k4.json")).unwrap();
    child.stdin.take().unwrap().write_all(&text).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json_of(&out), json!([16, 48, 48, 16]));
}

#[test]
fn eom_round_trip() {
    let order = data("k4-order.json");
    let order = order.to_str().unwrap();
    for tree in ["ab,ac,ad", "ab,bc,cd", "ad,bc,bd"] {
        let d = ok("k4.json", &["eom", "--order", order, "--tree", tree]);
        let f = temp_json(&d);
        let back = ok(
            "k4.json",
            &[
                "eom-invert",
                "--order",
                order,
                "--divisor",
                f.path().to_str().unwrap(),
            ],
        );
        let ids: Vec<&str> = tree.split(',').collect();
        assert_eq!(back["tree"], json!(ids));
        assert!(back["flow_calls"].as_u64().unwrap() <= 3);
    }
}

#[test]
fn geometric_check_sets_exit_code() {
    let mut codes = Vec::new();
    for mask in 0..8 {
        let cfg: Vec<i8> = (0..3)
            .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        let f = temp_json(&json!(cfg));
        let out = run(
            "theta.json",
            &["check-geometric", "--config", f.path().to_str().unwrap()],
        );
        let v = json_of(&out);
        codes.push(out.status.code().unwrap());
        assert_eq!(v["geometric"], json!(out.status.code() == Some(0)));
        if v["geometric"] == json!(false) {
            assert!(v["certificate"]["relation"].is_array());
        }
    }
    assert_eq!(codes.iter().filter(|&&c| c == 0).count(), 6);
    assert_eq!(codes.iter().filter(|&&c| c == 1).count(), 2);
}

#[test]
fn bernardi_values_on_the_subdivision() {
    let r = "bng1-subdivision-ribbon.json";
    let t1 = ok(r, &["bernardi", "--start", "u,e12", "--tree", "e12,e2,e31"]);
    assert_eq!(t1["divisor"], json!({"v1": 1, "v2": 0, "u": 0, "w": 1}));
    let t2 = ok(r, &["bernardi", "--start", "u,e12", "--tree", "e11,e2,e31"]);
    assert_eq!(t2["divisor"], json!({"v1": 0, "v2": 1, "u": 1, "w": 0}));
    let cfg = ok(r, &["induced-config", "--start", "u,e12"]);
    assert_eq!(cfg["witnesses"].as_array().unwrap().len(), 1);
    let planar = ok("bng1-ribbon.json", &["induced-config", "--start", "v1,e1"]);
    assert!(planar["configuration"].is_array());
}

#[test]
fn planar_commands() {
    let order = ok("k4-ribbon.json", &["alg3", "--face", "1"]);
    assert_eq!(order["order"].as_array().unwrap().len(), 6);
    let dual = ok("planar-theta-ribbon.json", &["dual"]);
    assert_eq!(
        dual["dual"]["graph"]["vertices"].as_array().unwrap().len(),
        3
    );
    let zero = ok("k4-ribbon.json", &["torsor-delta", "face:2", "face:2"]);
    assert!(zero.as_object().unwrap().values().all(|x| x == 0));
    let pair = ok("k4-ribbon.json", &["torsor-delta", "face:0", "start:a,ab"]);
    assert!(pair.is_object());
    assert_eq!(
        run("bng1-ribbon.json", &["alg3", "--face", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn duality_and_control() {
    let mut control = 0;
    for face in 0..4 {
        for v in ["a", "b", "c", "d"] {
            let f = face.to_string();
            assert_eq!(
                run(
                    "k4-ribbon.json",
                    &["duality-check", "--face", &f, "--vertex", v]
                )
                .status
                .code(),
                Some(0)
            );
            let rev = run(
                "k4-ribbon.json",
                &["duality-check", "--face", &f, "--vertex", v, "--reversed"],
            );
            if rev.status.code() == Some(1) {
                control += 1;
            }
        }
    }
    assert!(control > 0);
}

#[test]
fn cells_export_rational_strings() {
    let cells = ok("diamond.json", &["cells", "--basis-tree", "e1,e3,e5"]);
    let cells = cells.as_array().unwrap();
    assert_eq!(cells.len(), 8);
    for c in cells {
        for x in c["base"].as_array().unwrap() {
            assert!(x.as_str().unwrap().contains('/'));
        }
        assert_eq!(c["generators"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn sampling_replays_under_a_seed() {
    let args = ["sample", "--seed", "5", "--count", "30"];
    let a = ok("k4.json", &args);
    assert_eq!(a, ok("k4.json", &args));
    assert_eq!(a["samples"].as_array().unwrap().len(), 30);
    assert_eq!(a["factors"], json!(["4", "4"]));
    assert_eq!(
        run("k4.json", &["sample", "--count", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_reports() {
    let r = ok("theta.json", &["verify", "round-trip"]);
    assert_eq!(r["pass"], json!(true));
    let r = ok("k4-ribbon.json", &["verify", "planar"]);
    assert_eq!(r["pass"], json!(true));
    assert_eq!(
        run("theta.json", &["verify", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run("theta.json", &["verify", "duality"]).status.code(),
        Some(2)
    );
}

#[test]
fn bad_input_exits_with_two() {
    let f = temp_json(&json!({"vertices": ["a"], "edges": [["x", "a", "a"]]}));
    let out = Command::new(env!("CARGO_BIN_EXE_breakdiv"))
        .args(["-i", f.path().to_str().unwrap(), "trees"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("loop"));
    assert_eq!(run("missing.json", &["trees"]).status.code(), Some(2));
    assert_eq!(
        run(
            "theta.json",
            &["eom", "--order", "/nonexistent", "--tree", "e1"]
        )
        .status
        .code(),
        Some(2)
    );
}
