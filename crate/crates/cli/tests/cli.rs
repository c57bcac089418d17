use std::process::{Command, Output};

fn weylc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylc")).args(args).env_remove("WEYL_PRECISION").output().expect("run weylc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn op_arithmetic() {
    let o = weylc(&["op", "mul", "d", "x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 + x*d");
    assert_eq!(stdout(&weylc(&["op", "comm", "d^2", "x"])), "2*d");
    assert_eq!(stdout(&weylc(&["op", "mul", "-x", "-d"])), "x*d");
}

#[test]
fn op_eval_respects_precision() {
    assert_eq!(stdout(&weylc(&["op", "eval", "d^2 + x", "x^3"])), "6*x + x^4 + O(x^14)");
    let o = Command::new(env!("CARGO_BIN_EXE_weylc")).args(["op", "eval", "x", "1"]).env("WEYL_PRECISION", "3").output().unwrap();
    assert_eq!(stdout(&o), "x + O(x^3)");
    assert_eq!(stdout(&weylc(&["op", "eval", "d", "1 + x + x^2 + O(x^3)"])), "1 + 2*x + O(x^2)");
}

#[test]
fn json_output() {
    let o = weylc(&["--json", "op", "mul", "d", "x"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_array() || v.is_object());
    let back = weylc(&["--json", "newton", "report", "x^2*d^3 + x*d + 1"]);
    let v: serde_json::Value = serde_json::from_slice(&back.stdout).unwrap();
    assert_eq!(v["subrectangular"], serde_json::json!(true));
    assert_eq!(v["polygon"]["hull"].as_array().unwrap().len(), 3);
}

#[test]
fn operator_from_file() {
    let dir = std::env::temp_dir().join(format!("weylc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let j = weylc(&["--json", "op", "mul", "x", "d^2"]);
    let path = dir.join("p.json");
    std::fs::write(&path, &j.stdout).unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(stdout(&weylc(&["op", "mul", &arg, "1"])), "x*d^2");
    let path = dir.join("p.txt");
    std::fs::write(&path, "d + 1\n").unwrap();
    assert_eq!(stdout(&weylc(&["op", "mul", &format!("@{}", path.display()), "1"])), "1 + d");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(weylc(&["op", "mul", "d^", "x"]).status.code(), Some(2));
    assert_eq!(weylc(&["nonsense"]).status.code(), Some(2));
    assert_eq!(weylc(&["schur", "compute", "x*d^2"]).status.code(), Some(2));
    assert_eq!(weylc(&["ode", "solve", "1 + x", "--a", "2", "--d", "3", "--z", "5"]).status.code(), Some(2));
    let o = weylc(&["decompose", "x^2", "d"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not an endomorphism"));
    assert_eq!(weylc(&["verify", "--bounds", "k=0"]).status.code(), Some(2));
    assert_eq!(weylc(&["verify", "--bounds", "k=2,idx=2,a=1,cases=3,inject=schur"]).status.code(), Some(1));
}

#[test]
fn schur_and_normal_form() {
    let o = weylc(&["schur", "compute", "d^2 - x", "--depth", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("S    = A_0*D^0"));
    let o = weylc(&["normal-form", "d^2 - x", "-d", "--depth", "6"]);
    assert!(stdout(&o).contains("tail matches true"), "{}", stdout(&o));
    let o = weylc(&["qp-tail", "2"]);
    assert!(stdout(&o).ends_with("@2"));
}

#[test]
fn ode_recurse_decompose() {
    assert_eq!(stdout(&weylc(&["ode", "solve", "1 + 2*x", "--a", "2", "--d", "3", "--c", "1/3"])), "H = 1/4 + x + x^2");
    let o = weylc(&["ode", "solve", "x - x^2", "--a", "1", "--d", "3", "--dense"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("no polynomial solution"));
    let o = weylc(&["recurse", "d^2", "d^3"]);
    assert!(stdout(&o).ends_with("stop Zero"));
    assert_eq!(stdout(&weylc(&["decompose", "x", "d + x^3"])), "PhiP(3,1)");
    assert_eq!(stdout(&weylc(&["decompose", "x", "d"])), "identity");
}

#[test]
fn verify_small_bounds() {
    let o = weylc(&["verify", "--seed", "3", "--bounds", "k=2,idx=2,a=1,cases=3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("seed 3"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("PASS")));
    assert_eq!(text, stdout(&weylc(&["verify", "--seed", "3", "--bounds", "k=2,idx=2,a=1,cases=3"])));
}
