use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn torifan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torifan")).args(args).env_remove("TORIFAN_SEED").output().expect("binary runs")
}

fn check(fan: &str, divisor: &str, flags: &[&str]) -> Output {
    let fan = data(fan);
    let divisor = data(divisor);
    let mut args = vec!["check", "--fan", fan.to_str().unwrap(), "--divisor", divisor.to_str().unwrap()];
    args.extend_from_slice(flags);
    torifan(&args)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn step<'a>(report: &'a serde_json::Value, description: &str) -> &'a serde_json::Value {
    report["steps"].as_array().unwrap().iter().find(|s| s["description"] == description).expect("step present")
}

#[test]
fn sato_example_passes() {
    let out = torifan(&["example", "sato"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["overall"], true);
    assert_eq!(step(&r, "m[sigma7]")["computed"], "(0,1,-1)");
    assert_eq!(step(&r, "-K_X is base point free")["computed"], "true");
    assert_eq!(step(&r, "-K_Z is nef")["computed"], "false");
}

#[test]
fn bundle_examples() {
    let out = torifan(&["example", "bundle", "--r", "2", "--s", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(step(&r, "-K_X is ample")["pass"], true);
    assert_eq!(step(&r, "-K_Z is nef")["pass"], true);

    let r = json(&torifan(&["example", "bundle", "--r", "1", "--s", "1"]));
    assert!(step(&r, "-K_X is ample")["pass"].is_null());
    assert!(step(&r, "-K_Z is nef")["pass"].is_null());

    let out = torifan(&["example", "bundle", "--r", "3", "--s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn double_cover_is_deterministic() {
    let a = torifan(&["example", "double-cover"]);
    let b = torifan(&["example", "double-cover"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["overall"], true);
}

#[test]
fn pretty_table() {
    let out = torifan(&["example", "double-cover", "--pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("example: double-cover\n"));
    assert!(text.trim_end().ends_with("overall: PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn check_p2_ample() {
    let out = check("p2_fan.json", "p2_anticanonical.json", &["--ample"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_f3_not_nef() {
    let out = check("f3_fan.json", "f3_anticanonical.json", &["--nef"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let nef = step(&r, "nef")["computed"].as_str().unwrap().to_owned();
    assert!(nef.starts_with("false") && nef.ends_with("value -1)"), "{nef}");
}

#[test]
fn check_delta_kappa() {
    let out = check("delta_fan.json", "delta_anticanonical.json", &["--kappa", "--points", "--pretty"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("kappa") && text.contains("computed=3 "), "{text}");
}

#[test]
fn check_all_flags_by_default() {
    let r = json(&check("p1xp1_fan.json", "p1xp1_anticanonical.json", &[]));
    for s in ["Cartier data", "base point free", "nef", "ample", "kappa", "lattice points of P_D"] {
        assert_eq!(step(&r, s)["pass"], true, "{s}");
    }
    assert_eq!(step(&r, "lattice points of P_D")["computed"], "9");
}

#[test]
fn check_non_cartier() {
    let out = check("p2_fan.json", "p2_half_line.json", &["--cartier", "--bpf"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(step(&r, "Cartier")["computed"], "false");
    assert!(step(&r, "base point free")["computed"].as_str().unwrap().starts_with("error"));
}

#[test]
fn input_errors_exit_2() {
    let out = check("invalid_duplicate_ray.json", "p2_anticanonical.json", &["--nef"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("torifan:"));
    assert_eq!(check("missing.json", "p2_anticanonical.json", &[]).status.code(), Some(2));
    assert_eq!(check("p2_fan.json", "f3_anticanonical.json", &[]).status.code(), Some(2));
    assert_eq!(torifan(&["example", "nope"]).status.code(), Some(2));
}

#[test]
fn selftest_seed_from_env() {
    let a = torifan(&["selftest"]);
    assert_eq!(a.status.code(), Some(0));
    let b = Command::new(env!("CARGO_BIN_EXE_torifan")).arg("selftest").env("TORIFAN_SEED", "0").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_torifan")).arg("selftest").env("TORIFAN_SEED", "7").output().unwrap();
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(json(&c)["example"], "selftest seed=7");
}
