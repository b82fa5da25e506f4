use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moorediag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

/// Writes `body` to a fresh file under the target tmp dir.
fn file(name: &str, body: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const F_B: &str =
    r#"{"kind":"eed","A":"Z/2","B":"Z/4","C":"Z/2","psi":[[1]],"eta":[[1]],"chi":[[2]]}"#;

#[test]
fn group_queries() {
    let o = run(&["group", "normalize", "Z/4+Z/2"]);
    assert_eq!((code(&o), stdout(&o)), (0, "Z/2+Z/4".into()));
    assert_eq!(stdout(&run(&["ext", "Z/2", "Z/2"])), "Z/2");
    assert_eq!(stdout(&run(&["hom", "Z/4", "Z/6"])), "Z/2");
    assert_eq!(stdout(&run(&["ext", "Z", "Z/3"])), "0");
    let o = run(&["--format", "json", "ext", "Z/4", "Z/2+Z/8"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["group"], "Z/2+Z/4");
}

#[test]
fn representable_b() {
    let o = run(&["cj", "representable", "b"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "F_b: Z/4 -psi [[1]]-> Z/2 -eta [[1]]-> Z/2 -chi [[2]]-> Z/4"
    );
    let o = run(&["--format", "json", "cj", "representable", "b"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::from_str::<serde_json::Value>(F_B).unwrap());
}

#[test]
fn cj_table_starts_with_hom_groups() {
    let o = run(&["cj", "table"]);
    let text = stdout(&o);
    assert!(text.contains("a Z    Z/2  0"), "{text}");
    assert!(text.contains("b->a->b: rho o eta.beta = 2*1_b"), "{text}");
}

#[test]
fn diagram_commands() {
    let fb = file("f_b.json", F_B);
    let o = run(&["diagram", "validate", &fb]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("valid eed"));
    assert!(stdout(&run(&["diagram", "exact", &fb])).ends_with(": exact"));
    assert_eq!(
        stdout(&run(&["diagram", "homset", &fb, &fb])),
        "Z/4 (4 morphisms)"
    );

    // chi = 0 breaks chi eta psi = 2 id_B.
    let broken = file(
        "broken.json",
        r#"{"kind":"eed","A":"Z/2","B":"Z/4","C":"Z/2","psi":[[1]],"eta":[[1]],"chi":[[0]]}"#,
    );
    let o = run(&["diagram", "validate", &broken]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("relation failed"));
}

#[test]
fn dualities_of_f_b() {
    let fb = file("f_b_dual.json", F_B);
    let o = run(&["dual", "j", &fb]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["--format", "json", "dual", "delta", &fb]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["B"], "Z/4");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["group", "normalize", "Z/x"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["verify", "nope"])), 2);
    let bad = file("bad.json", "{not json");
    assert_eq!(code(&run(&["diagram", "validate", &bad])), 1);
    let shape = file(
        "shape.json",
        r#"{"kind":"eed","A":"Z/2","B":"Z/4","C":"Z/2","psi":[[1,0]],"eta":[[1]],"chi":[[2]]}"#,
    );
    assert_eq!(code(&run(&["diagram", "validate", &shape])), 1);
    let moore = file(
        "moore.json",
        r#"{"kind":"moore","A":"Z/2","B":"Z/4","phi":[[2]],"psi":[[1]]}"#,
    );
    assert_eq!(code(&run(&["dual", "j", &moore])), 2);
}

#[test]
fn verify_json_is_deterministic() {
    let args = [
        "--format",
        "json",
        "verify",
        "cj-tables",
        "--max-order",
        "4",
        "--seed",
        "3",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);

    let args = [
        "--format",
        "json",
        "verify",
        "yoneda",
        "--max-order",
        "4",
        "--seed",
        "7",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
