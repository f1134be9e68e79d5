//! End-to-end runs of the binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("cadaudit-cli-{name}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn path(&self, f: &str) -> PathBuf {
        self.0.join(f)
    }

    fn write(&self, f: &str, text: &str) -> PathBuf {
        let p = self.path(f);
        fs::write(&p, text).unwrap();
        p
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cadaudit")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).trim().to_string()
}

fn json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn circle_pipeline() {
    let d = Scratch::new("circle");
    let f = d.write("circle.txt", "# unit circle\nx1^2 + x2^2 - 1\n");
    let cad = d.path("circle.json");
    let o = run(&["build", "-f", s(&f), "-n", "2", "-o", s(&cad)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "cells=13 levels=2 nullified=0");

    let cx = d.path("disk.cx.json");
    let o = run(&["complex", "--in", s(&cad), "--select", "f1 <= 0", "-o", s(&cx)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "vertices=5 f=(5,8,4)");

    let h = d.path("disk.h.json");
    let o = run(&["homology", "--in", s(&cx), "-o", s(&h)]);
    assert_eq!(stdout(&o), "betti=(1,0,0)");
    assert_eq!(json(&h)["betti"], serde_json::json!([1, 0, 0]));
    let o = run(&["homology", "--in", s(&cx), "--reduced", "-o", s(&h)]);
    assert_eq!(stdout(&o), "betti=(0,0,0)");

    let strict = d.path("bd.cx.json");
    let o = run(&["complex", "--in", s(&cad), "--select", "strict:3.3", "-o", s(&strict)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["homology", "--in", s(&strict)]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 1]));

    let r = d.path("props.json");
    let o = run(&["check", "--in", s(&cad), "--props", "wellbased,reduced,extension", "-o", s(&r)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&r);
    assert_eq!(v["wellbased"]["overall"], Value::Bool(true));
    assert_eq!(v["extension"]["overall"], Value::Bool(true));
}

#[test]
fn property_failures_exit_one() {
    let d = Scratch::new("props");
    let r = d.path("cf.json");
    let o = run(&["check", "--in", "fixture:noncf", "--props", "closurefinite", "-o", s(&r)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&r)["cells"]["seg"]["holds"], Value::Bool(false));

    let o = run(&["check", "--in", "fixture:whitney", "--props", "strong", "-o", s(&r)]);
    assert_eq!(o.status.code(), Some(1));
    let failures = json(&r)["cells"]["W"]["witness"]["lbc"]["lbc_failures"].clone();
    assert!(failures.as_array().unwrap().iter().any(|f| f["at"] == "Z" && f["stable_count"] == 2));
}

#[test]
fn audits() {
    let d = Scratch::new("audit");
    let f = d.write("sphere.txt", "x1^2 + x2^2 + x3^2 - 1\n");
    let cad = d.path("sphere.json");
    assert!(run(&["build", "-f", s(&f), "-n", "3", "-o", s(&cad)]).status.success());
    let a = d.path("ball.json");
    let o = run(&["audit", "--in", s(&cad), "--select", "f1 <= 0", "-o", s(&a)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&a)["overall"], "consistent-with-regular");

    let o = run(&["audit", "--in", "fixture:whitney", "-o", s(&a)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&a)["overall"], "homology proxies passed; regularity refuted by LBC");
}

#[test]
fn fixtures_list_and_emit() {
    let o = run(&["fixtures", "--list"]);
    let names: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(names.len(), 6);
    assert!(names.contains(&"whitney".to_string()));
    let d = Scratch::new("emit");
    let out = d.path("fx");
    assert!(run(&["fixtures", "--emit", s(&out)]).status.success());
    for n in &names {
        let v = json(&out.join(format!("{n}.json")));
        assert!(v["cells"].is_array());
    }
}

#[test]
fn errors_map_to_exit_codes() {
    let d = Scratch::new("errors");
    let f = d.write("c.txt", "x1^2 + x2^2 - 1\n");
    let bad = d.write("bad.txt", "x1^^2\n");
    let cases: [(Vec<&str>, i32); 6] = [
        (vec!["build", "-f", s(&f), "-n", "4"], 3),
        (vec!["build", "-f", s(&bad), "-n", "2"], 2),
        (vec!["complex", "--in", "fixture:cfsubadj"], 6),
        (vec!["complex", "--in", "fixture:whitney", "--select", "nope"], 2),
        (vec!["check", "--in", "fixture:whitney", "--props", "reduced"], 5),
        (vec!["check", "--in", "fixture:whitney", "--props", "lbc", "--factor", "2"], 2),
    ];
    for (args, code) in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stderr(&o));
        let err = stderr(&o);
        assert!(err.starts_with("error: ") && err.lines().count() == 1, "{err}");
    }
}
