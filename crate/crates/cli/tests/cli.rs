use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn lspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lspace"))
        .args(args)
        .output()
        .expect("spawn lspace")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

#[test]
fn trefoil_interval() {
    let o = lspace(&["interval", &data("trefoil.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), r#"{"kind":"closed","lo":"1/1","hi":"1/0"}"#);
}

#[test]
fn trefoil_check_negative_slope() {
    let o = lspace(&["check", &data("trefoil.json"), "--slope", "-1/1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), r#"{"lspace":false,"consistent":true}"#);
    let o = lspace(&["check", &data("trefoil.json"), "--slope", "7/2"]);
    assert_eq!(json(&o)["lspace"], true);
}

#[test]
fn sfs_euler_zero() {
    let o = lspace(&["sfs", r#"{"e0":-1,"fibers":[[1,2],[1,2]]}"#]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), r#"{"lspace":false,"reason":"euler-zero"}"#);
}

#[test]
fn sfs_fiber_thresholds() {
    let o = lspace(&[
        "sfs",
        r#"{"e0":-1,"fibers":[[1,2],[1,3],[1,7]]}"#,
        "--fiber",
        "3",
    ]);
    let v = json(&o);
    assert_eq!(v["euler"], "-1/42");
    assert_eq!(
        v["orbifold_bounds"],
        serde_json::json!(["-43/42", "37/210"])
    );
    assert_eq!(v["fiber"]["lower"], "0/1");
    assert_eq!(v["fiber"]["upper"], "1/5");
}

#[test]
fn glue_transcript() {
    let o = lspace(&["glue", &data("splice_true.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["lspace"], true);
    assert_eq!(v["judicious"]["mu1"], "6/1");
    assert_eq!(v["judicious"]["q_star"], 5);
    assert_eq!(v["conditions"]["transcript"][0], "L.iii b=35: 37/35 > 1");
    let o = lspace(&["glue", &data("splice_false.json")]);
    assert_eq!(json(&o)["lspace"], false);
}

#[test]
fn exit_codes() {
    let o = lspace(&["interval", r#"{"torsion_orders":[],"iota_m":{"free":1"#]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["error"], "ParseError");
    assert!(v["message"].as_str().unwrap().contains("line 1 column"));

    let t = std::fs::read_to_string(data("trefoil.json")).unwrap();
    let bad_det = format!(r#"{{"y1":{t},"y2":{t},"phi":[[1,1],[0,1]]}}"#);
    let o = lspace(&["glue", &bad_det]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "DeterminantError");

    let disjoint = format!(r#"{{"y1":{t},"y2":{t},"phi":[[-1,1],[0,1]]}}"#);
    let o = lspace(&["glue", &disjoint]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"], "HypothesisNotMet");

    let o = lspace(&[
        "interval",
        r#"{"iota_m":{"free":1,"torsion":[]},"iota_l":{"free":2,"torsion":[]}}"#,
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "NonTorsionLongitude");
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lspace"))
        .args(["dtau", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let t = std::fs::read(data("trefoil.json")).unwrap();
    child.stdin.take().unwrap().write_all(&t).unwrap();
    let o = child.wait_with_output().unwrap();
    let v = json(&o);
    assert_eq!(v["positive"][0]["delta"], 1);
}

#[test]
fn cfd_dot_and_oracle() {
    let o = lspace(&["cfd", &data("trefoil.json")]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("rho23"));
    let o = lspace(&[
        "oracle",
        &data("trefoil.json"),
        "--mu",
        "3/1",
        "--nu",
        "-1/1",
    ]);
    assert_eq!(stdout(&o), r#"{"lspace":false}"#);
    let o = lspace(&["gst", &data("trefoil.json")]);
    assert_eq!(json(&o)["generalized_solid_torus"], false);
}

#[test]
fn batch_preserves_order_and_is_deterministic() {
    let tre = data("trefoil.json");
    let mut lines = Vec::new();
    for k in -6..=6 {
        lines.push(format!(
            r#"{{"command":"check","input":"{tre}","slope":"{k}/1"}}"#
        ));
    }
    lines.push(r#"{"command":"sfs","input":{"e0":-1,"fibers":[[1,2],[1,2]]}}"#.to_string());
    lines.push("not json".to_string());
    let dir = std::env::temp_dir().join(format!("lspace-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("req.jsonl");
    std::fs::write(&path, lines.join("\n")).unwrap();

    let a = lspace(&["--batch", path.to_str().unwrap()]);
    let b = lspace(&["--batch", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(1));
    let out: Vec<serde_json::Value> = stdout(&a)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(out.len(), lines.len());
    for (i, k) in (-6..=6).enumerate() {
        assert_eq!(out[i]["lspace"], k >= 1, "slope {k}/1");
    }
    assert_eq!(out[13]["reason"], "euler-zero");
    assert_eq!(out[14]["error"], "ParseError");
    std::fs::remove_dir_all(dir).ok();
}
