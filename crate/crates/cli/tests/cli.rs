use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use jsonschema::JSONSchema;
use semifield::families::{self, Label};
use semifield::gf::{make_field, Fe};
use semifield::linmap::{BiprojPair, Presemifield, Product};
use semifield::serial::to_json;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_semifield");

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with(args: &[&str], cache: Option<&Path>, stdin: Option<&str>) -> Run {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("SEMIFIELD_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("SEMIFIELD_CACHE_DIR", dir);
    }
    cmd.stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() });
    cmd.stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with(args, None, None)
}

fn schema(name: &str) -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&v).expect("schema compiles")
}

fn assert_valid(schema: &JSONSchema, text: &str) -> Value {
    let v: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    if let Err(errors) = schema.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations {msgs:?} in {text}");
    }
    v
}

fn report(r: &Run) -> Value {
    assert_valid(&schema("report.schema.json"), &r.stdout)
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    let r = run(&all);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_valid(&schema("map.schema.json"), &r.stdout);
    let path = dir.join(name);
    std::fs::write(&path, &r.stdout).unwrap();
    path
}

fn s_map(dir: &Path) -> PathBuf {
    construct(dir, "s.json", &["--family", "S", "--p", "3", "--m", "6", "--k", "2"])
}

fn without_timings(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn field_info_report() {
    let r = run(&["field-info", "--p", "3", "--m", "6", "--k", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = report(&r);
    assert_eq!(v["payload"]["order"], 729);
    assert_eq!(v["payload"]["zsigmondy_prime"], 7);
    assert_eq!(run(&["field-info", "--p", "4", "--m", "2"]).code, 2);
}

#[test]
fn verify_nuclei_centralizer_on_family_s() {
    let dir = tempfile::tempdir().unwrap();
    let s = s_map(dir.path());
    let s = s.to_str().unwrap();

    let r = run(&["verify", "--in", s]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = report(&r);
    assert_eq!(v["ok"], true);
    assert_eq!(v["payload"]["certificate"]["biproj"]["kernel_computations"], 730);

    let v = report(&run(&["nuclei", "--in", s]));
    assert_eq!((v["payload"]["Nl"].as_u64(), v["payload"]["Nm"].as_u64(), v["payload"]["Nr"].as_u64()), (Some(3), Some(9), Some(3)));
    assert_eq!(v["payload"]["match"], true);

    let r = run(&["centralizer", "--in", s, "--audit"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = report(&r);
    assert_eq!(v["payload"]["order"], 5824);
    assert_eq!(v["payload"]["condition_c"], true);
    assert_eq!(v["payload"]["zsigmondy_prime"], 7);
}

#[test]
fn input_from_stdin() {
    let map = run(&["construct", "--family", "dickson", "--p", "3", "--m", "2", "--k", "1"]).stdout;
    let r = run_with(&["nuclei", "--in", "-"], None, Some(&map));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(report(&r)["payload"]["Nm"], 9);
}

#[test]
fn orbit_classify_compare_reports() {
    let r = run(&["orbit", "--p", "3", "--m", "6", "--k", "2", "--B", "1", "--a", "0"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = report(&r);
    assert_eq!(v["payload"]["size"], 12);

    let r = run(&["classify", "--family", "S", "--p", "3", "--m", "6"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = report(&r);
    assert_eq!(v["payload"]["count"], 3);
    assert_eq!(v["ok"], true);

    let r = run(&["classify", "--family", "S", "--p", "3", "--m", "6", "--csv"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("k,kbar,representative,orbit_size,nl,nm,nr,centralizer_order,condition_c"));
    let sizes: Vec<&str> = lines.map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(sizes.len(), 3);

    let dir = tempfile::tempdir().unwrap();
    let s = s_map(dir.path());
    let zp = construct(dir.path(), "zp.json", &["--family", "zp", "--p", "3", "--m", "6", "--k", "2", "--j", "5"]);
    let r = run(&["compare", "--a", s.to_str().unwrap(), "--b", zp.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = report(&r);
    assert_eq!(v["payload"]["report"]["verdict"]["verdict"], "not-isotopic");
    assert_eq!(v["payload"]["report"]["verdict"]["evidence"], "coefficient-contradiction");
}

fn non_planar_map() -> String {
    let ctx = make_field(3, 3).unwrap();
    let g = ctx.generator();
    // Dickson shape with both cross coefficients removed.
    let pair = BiprojPair::new(&ctx, 1, [Fe::ZERO, Fe::ZERO, Fe::ZERO, g], 0, [Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO]);
    let label: Label = families::dickson(3, 3, 1, g, false).unwrap().label().clone();
    to_json(&Presemifield::new(Product::Biproj(pair), label))
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, non_planar_map()).unwrap();
    let bad = bad.to_str().unwrap();
    for cmd in ["verify", "nuclei", "centralizer"] {
        let r = run(&[cmd, "--in", bad]);
        assert_eq!(r.code, 1, "{cmd}: {}", r.stderr);
        let v = report(&r);
        assert_eq!(v["ok"], false);
        let text = v["payload"].to_string();
        assert!(text.contains("witness"), "{cmd}: {text}");
    }

    let usage = [
        vec!["construct", "--family", "S", "--p", "3", "--m", "6", "--k", "3"],
        vec!["construct", "--family", "S", "--p", "3", "--m", "6", "--k", "2", "--B", "2"],
        vec!["construct", "--family", "zp", "--p", "3", "--m", "2", "--k", "1", "--j", "1"],
        vec!["construct", "--family", "cg", "--p", "3", "--m", "2"],
        vec!["verify", "--in", "/nonexistent/map.json"],
        vec!["classify", "--family", "S", "--p", "3", "--m", "5"],
        vec!["no-such-command"],
    ];
    for args in usage {
        let r = run(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stdout);
        assert!(r.stdout.is_empty(), "{args:?}");
        assert!(!r.stderr.is_empty(), "{args:?}");
    }
    let r = run_with(&["verify", "--in", "-"], None, Some("{\"schema\":\"x\"}"));
    assert_eq!(r.code, 2);
}

#[test]
fn certificate_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let s = s_map(dir.path());
    let args = ["verify", "--in", s.to_str().unwrap()];
    let first = run_with(&args, Some(&cache), None);
    assert_eq!(first.code, 0);
    let entries: Vec<PathBuf> = std::fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    // Tamper with the stored certificate: a second run must report the stored copy.
    let mut cert: Value = serde_json::from_str(&std::fs::read_to_string(&entries[0]).unwrap()).unwrap();
    cert["biproj"]["kernel_computations"] = 12345.into();
    std::fs::write(&entries[0], cert.to_string()).unwrap();
    let second = run_with(&args, Some(&cache), None);
    assert_eq!(report(&second)["payload"]["certificate"]["biproj"]["kernel_computations"], 12345);
    // A different oracle mode is a different key.
    let third = run_with(&["verify", "--in", s.to_str().unwrap(), "--oracle"], Some(&cache), None);
    assert_eq!(report(&third)["payload"]["certificate"]["biproj"]["kernel_computations"], 730);
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 2);
}

#[test]
fn payloads_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let s = s_map(dir.path());
    let s = s.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["field-info", "--p", "3", "--m", "6"],
        vec!["verify", "--in", s, "--seed", "7"],
        vec!["nuclei", "--in", s],
        vec!["centralizer", "--in", s],
        vec!["orbit", "--p", "3", "--m", "6", "--k", "2", "--B", "1", "--a", "28"],
        vec!["classify", "--family", "S", "--p", "3", "--m", "6"],
    ];
    for args in commands {
        let a = run(&args);
        let mut with_jobs = vec!["--jobs", "1"];
        with_jobs.extend_from_slice(&args);
        let b = run(&with_jobs);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(without_timings(&a.stdout).to_string(), without_timings(&b.stdout).to_string(), "{args:?}");
    }
    let c1 = run(&["construct", "--family", "b4", "--p", "5", "--s", "1", "--t", "2"]);
    let c2 = run(&["construct", "--family", "b4", "--p", "5", "--s", "1", "--t", "2"]);
    assert_eq!(c1.code, 0, "{}", c1.stderr);
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn every_family_constructs_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("field", vec!["--family", "field", "--p", "3", "--m", "4"]),
        ("dickson", vec!["--family", "dickson", "--p", "3", "--m", "3", "--k", "1"]),
        ("albert", vec!["--family", "albert", "--p", "3", "--m", "3", "--k", "1"]),
        ("albert-pair", vec!["--family", "albert", "--p", "3", "--m", "3", "--k", "2", "--a", "1"]),
        ("zp", vec!["--family", "zp", "--p", "3", "--m", "3", "--k", "1", "--j", "1"]),
        ("bh", vec!["--family", "bh", "--p", "3", "--m", "2", "--k", "1"]),
        ("cmdy", vec!["--family", "cmdy", "--p", "3", "--m", "5", "--sign", "minus"]),
        ("cg", vec!["--family", "cg", "--p", "3", "--m", "3"]),
        ("g", vec!["--family", "g", "--p", "3", "--m", "3"]),
        ("zkw", vec!["--family", "zkw", "--p", "3", "--s", "1", "--t", "2"]),
        ("b3", vec!["--family", "b3", "--p", "7", "--s", "1", "--t", "1"]),
    ];
    for (name, args) in cases {
        let path = construct(dir.path(), &format!("{name}.json"), &args);
        let r = run(&["verify", "--in", path.to_str().unwrap(), "--samples", "32"]);
        assert_eq!(r.code, 0, "{name}: {}{}", r.stdout, r.stderr);
        assert_eq!(report(&r)["payload"]["planar"], true, "{name}");
    }
}

#[test]
fn table1_csv() {
    let r = run(&["table1", "--p", "3", "--m", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let mut lines = r.stdout.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("family,form,p,m,n,k,j,valid,reason,planar,nl,nm,nr"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|l| l.starts_with("D,")));
    assert!(rows.iter().any(|l| l.starts_with("ZP,")));
    // m = 3 is odd: no Family S member is valid.
    assert!(rows.iter().filter(|l| l.starts_with("S,")).all(|l| l.contains(",false,")));
}
