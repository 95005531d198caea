use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn mfhrr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfhrr"))
        .args(args)
        .env("MFHRR_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_mf(dir: &TempDir, name: &str, json: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn residue_values_and_exit_codes() {
    let o = mfhrr(&["residue", "--vars", "x,y", "--num", "1", "--dens", "x,y"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
    let o = mfhrr(&["residue", "--vars", "x,y", "--num", "1", "--dens", "y,x"]);
    assert_eq!(stdout(&o).trim(), "-1");
    let o = mfhrr(&["residue", "--vars", "x", "--num", "1", "--dens", "x^2"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = mfhrr(&["residue", "--vars", "x", "--num", "x", "--dens", "2*x^2"]);
    assert_eq!(stdout(&o).trim(), "1/2");
    let o = mfhrr(&["residue", "--vars", "x,y", "--num", "1", "--dens", "x,x"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mfhrr(&["residue", "--vars", "x,y", "--num", "1 +", "--dens", "x,y"]);
    assert_eq!(o.status.code(), Some(1));
    let o = mfhrr(&["residue", "--vars", "x,y", "--num", "z", "--dens", "x,y"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn factorization_commands() {
    let dir = TempDir::new().unwrap();
    let x = write_mf(&dir, "x.json", r#"{"ring":["x","y"],"f":"x*y","A":[["x"]],"B":[["y"]]}"#);
    let r = write_mf(
        &dir,
        "r.json",
        r#"{"ring":["x","y"],"f":"x^3 + y^3","A":[["x + y"]],"B":[["x^2 - x*y + y^2"]]}"#,
    );
    let odd = write_mf(&dir, "odd.json", r#"{"ring":["x"],"f":"x^2","A":[["x"]],"B":[["x"]]}"#);
    let bad = write_mf(&dir, "bad.json", r#"{"ring":["x","y"],"f":"x*y","A":[["x"]],"B":[["x"]]}"#);

    assert_eq!(stdout(&mfhrr(&["chern", &r])).trim(), "-3*x*dx∧dy + 3*y*dx∧dy");
    assert_eq!(stdout(&mfhrr(&["chi", &x, &x])).trim(), "1");
    assert_eq!(stdout(&mfhrr(&["chi", &r, &r])).trim(), "2");
    assert_eq!(stdout(&mfhrr(&["pairing", &x, &x])).trim(), "-1");
    assert_eq!(stdout(&mfhrr(&["pairing", &r, &r])).trim(), "-2");

    let o = mfhrr(&["hrr-verify", &r, &r]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chi"], 2);
    assert_eq!(v["pairing"], "-2");
    assert_eq!(v["sign"], -1);
    assert_eq!(v["verdict"], true);

    assert_eq!(mfhrr(&["hrr-verify", &odd, &odd]).status.code(), Some(4));
    assert_eq!(mfhrr(&["chern", &odd]).status.code(), Some(4));
    assert_eq!(mfhrr(&["chi", &x, &r]).status.code(), Some(1));
    assert_eq!(mfhrr(&["chern", &bad]).status.code(), Some(1));
    assert_eq!(mfhrr(&["chern", "/nonexistent.json"]).status.code(), Some(1));
}

#[test]
fn corpus_reports() {
    let o = mfhrr(&["corpus"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["total"].as_u64().unwrap() > 0);
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["verdict"] == true));
    // byte-identical without timings
    assert_eq!(stdout(&o), stdout(&mfhrr(&["corpus"])));

    let o = mfhrr(&["corpus", "--filter", "fermat", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("entry,f,x,y,n,chi"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|l| l.starts_with("fermat")));

    let o = mfhrr(&["corpus", "--filter", "no-such-entry"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 0);

    let o = mfhrr(&["corpus", "--filter", "xy", "--timings"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["cases"][0]["millis"].is_u64());
}

#[test]
fn selftest_is_deterministic() {
    let args = ["selftest", "--seed", "42", "--cases", "4", "--len", "3"];
    let a = mfhrr(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(stdout(&a), stdout(&mfhrr(&args)));
    assert!(stdout(&a).contains("thm112"));

    let o = mfhrr(&["selftest", "thm112", "--jmax", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("7/7"));

    let o = mfhrr(&["selftest", "--suite", "psi", "--cases", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
    assert_ne!(mfhrr(&["selftest", "--suite", "nope"]).status.code(), Some(0));
    let o = mfhrr(&["selftest", "--suite", "b_squared", "--case-seed", "12345"]);
    assert!(o.status.success());
}
