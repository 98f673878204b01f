use std::path::Path;
use std::process::Command;

use schubert_core::asm::Asm;
use schubert_core::bpd::Bpd;
use schubert_core::gvd::verify::Report;
use schubert_core::monomial::MonomialIdeal;
use schubert_core::poly::Universe;
use schubert_core::{IntPoly, Permutation};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn schubert(args: &[&str]) -> Run {
    schubert_with(args, None)
}

fn schubert_with(args: &[&str], cache: Option<&Path>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_schubert"));
    cmd.args(args).env_remove("SCHUBERT_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.arg("--cache-dir").arg(dir);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let r = schubert(&all);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).expect("valid JSON");
    assert_eq!(v["schema"], "schubert-cli/1");
    v
}

#[test]
fn bpd_count_agrees_with_schubert_specialization() {
    let r = schubert(&["bpd", "count", "4721653"]);
    assert_eq!(r.code, 0);
    let poly = json(&["poly", "schubert", "4721653"]);
    assert_eq!(r.stdout.trim(), poly["at_one"].as_str().unwrap());
    assert_eq!(r.stdout.trim(), "54");
}

#[test]
fn main_theorem_exit_codes() {
    assert_eq!(schubert(&["verify", "main", "--all-sn", "4", "--order", "diag"]).code, 0);
    let r = schubert(&["verify", "main", "--all-sn", "4", "--order", "antidiag"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("FAIL  {1243}"), "{}", r.stdout);
    let r = schubert(&["verify", "main", "132", "--order", "antidiag"]);
    assert_eq!(r.code, 1);
    assert_eq!(schubert(&["verify", "main", "213", "132"]).code, 0);
}

#[test]
fn initial_ideal_of_214365() {
    let r = schubert(&["ideal", "init", "214365", "--order", "diag"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let got = MonomialIdeal::parse(Universe::Z { n: 6 }, r.stdout.trim().trim_matches(['(', ')'])).unwrap();
    let expected = MonomialIdeal::parse(
        Universe::Z { n: 6 },
        "z[1,1], z[1,2]*z[2,1]*z[3,3], z[1,2]*z[2,1]*z[3,4]*z[4,3]*z[5,5], \
         z[1,2]*z[2,3]*z[3,1]*z[3,4]*z[4,3]*z[5,5], z[1,3]*z[2,1]^2*z[3,2]*z[3,4]*z[4,3]*z[5,5]",
    )
    .unwrap();
    assert_eq!(got, expected);
    assert_eq!(got.gens().len(), 5);
}

#[test]
fn input_errors_exit_2_with_position() {
    let r = schubert(&["lattice", "perm", "0 1 0; 1 x 1; 0 1 0"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2, column 4"), "{}", r.stderr);
    let r = schubert(&["bpd", "count", "2a31"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("column 2"), "{}", r.stderr);
    let r = schubert(&["ideal", "gb", "2143", "--order", "tau:9"]);
    assert_eq!(r.code, 2);
    assert_eq!(schubert(&["bpd", "count", "2231"]).code, 2);
    assert_eq!(schubert(&["verify", "main", "--all-sn", "6"]).code, 2);
    assert_eq!(schubert(&["verify", "main", "2143", "321"]).code, 2);
    assert_eq!(schubert(&["no-such-command"]).code, 2);
}

#[test]
fn json_round_trips_through_parsers() {
    let v = json(&["bpd", "enum", "2143"]);
    let bpds = v["bpds"].as_array().unwrap();
    assert_eq!(bpds.len(), v["count"].as_u64().unwrap() as usize);
    for b in bpds {
        let from_tiles: Bpd = serde_json::from_value(b["tiles"].clone()).unwrap();
        let from_ascii = Bpd::parse_ascii(b["ascii"].as_str().unwrap()).unwrap();
        assert_eq!(from_tiles, from_ascii);
        assert_eq!(from_tiles.permutation(), &"2143".parse::<Permutation>().unwrap());
    }

    let v = json(&["poly", "dschubert", "2143"]);
    let p = IntPoly::parse(Universe::Xyb { n: 4 }, v["polynomial"].as_str().unwrap()).unwrap();
    assert_eq!(p.to_string(), v["polynomial"]);

    let v = json(&["lattice", "meet", "231", "312"]);
    let a: Asm = serde_json::from_value(v["matrix"].clone()).unwrap();
    assert_eq!(a, Asm::parse("0 1 0; 1 -1 1; 0 1 0").unwrap());
    assert_eq!(v["perm"], serde_json::json!(["231", "312"]));
    let v = json(&["lattice", "join", "231", "312"]);
    assert_eq!(v["perm"], serde_json::json!(["321"]));

    let v = json(&["ideal", "init", "2143", "--order", "antidiag"]);
    let back = json(&["mono", "decompose", v["initial_ideal"].as_str().unwrap()]);
    assert_eq!(back["ideal"], v["initial_ideal"]);

    let v = json(&["verify", "linkdecomp", "214365", "--corner", "5,5"]);
    let reports: Vec<Report> = serde_json::from_value(v["reports"].clone()).unwrap();
    assert_eq!(reports.len(), 1);
    assert!(reports[0].passed());
}

#[test]
fn text_subcommands_smoke() {
    for args in [
        &["poly", "groth", "132", "--beta"][..],
        &["poly", "groth", "132"],
        &["ideal", "fulton", "1432"],
        &["ideal", "asm", "0 1 0; 1 -1 1; 0 1 0"],
        &["ideal", "gb", "231", "312", "--order", "degrevlex"],
        &["mono", "ass", "z[1,1]^2*z[2,2], z[1,1]*z[1,2]"],
        &["mono", "kpoly", "(z[1,1], z[2,2])", "--grading", "standard"],
        &["mono", "multidegree", "z[1,1], z[2,3], z[3,2]"],
        &["lattice", "meet", "231", "312"],
        &["lattice", "decompose", "0 1 0; 1 -1 1; 0 1 0"],
        &["verify", "transition", "--all-sn", "4"],
        &["verify", "groth-transition", "--all-sn", "3"],
        &["verify", "theoremB", "4721653"],
        &["verify", "asm", "--all-sn", "3"],
        &["verify", "ycompat", "--all-sn", "4"],
        &["verify", "hilbert", "--all-sn", "3"],
    ] {
        let r = schubert(args);
        assert_eq!(r.code, 0, "{args:?}: {}{}", r.stdout, r.stderr);
        assert!(!r.stdout.trim().is_empty(), "{args:?}");
    }
    let r = schubert(&["mono", "multidegree", "z[1,1], z[2,3], z[3,2]"]);
    let expected = "x1*x2*x3 + x1*x2*y2 + x1*x3*y3 + x1*y2*y3 + x2*x3*y1 + x2*y1*y2 + x3*y1*y3 + y1*y2*y3";
    assert_eq!(r.stdout.trim(), expected);
}

#[test]
fn worker_count_does_not_change_output() {
    let args = ["verify", "transition", "--all-sn", "4", "--format", "json"];
    let one = schubert(&[&args[..], &["--workers", "1"]].concat());
    let many = schubert(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, many.stdout);
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "main", "--all-sn", "4", "--format", "json"];
    let uncached = schubert(&args);
    let cold = schubert_with(&args, Some(dir.path()));
    let warm = schubert_with(&args, Some(dir.path()));
    assert_eq!(cold.code, 0);
    assert_eq!(uncached.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    assert!(warm.stderr.is_empty(), "{}", warm.stderr);
    let files = cache_files(dir.path());
    assert_eq!(files.len(), 24);
    for f in &files {
        let entry: Value = serde_json::from_str(&std::fs::read_to_string(f).unwrap()).unwrap();
        assert_eq!(entry["schema"], "schubert-gb-cache/1");
    }

    // Damage one entry: the run warns, recomputes, and restores the same bytes.
    let victim = &files[files.len() / 2];
    let original = std::fs::read_to_string(victim).unwrap();
    std::fs::write(victim, "{ not json").unwrap();
    let repaired = schubert_with(&args, Some(dir.path()));
    assert_eq!(repaired.stdout, cold.stdout);
    assert!(repaired.stderr.contains("warning: corrupt cache entry"), "{}", repaired.stderr);
    assert_eq!(std::fs::read_to_string(victim).unwrap(), original);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(["ideal", "gb", "2143", "--order", "antidiag"])
        .env("SCHUBERT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(cache_files(dir.path()).len(), 1);
}

#[test]
fn concurrent_writers_leave_whole_entries() {
    let dir = tempfile::tempdir().unwrap();
    let children: Vec<_> = (0..8)
        .map(|_| {
            Command::new(env!("CARGO_BIN_EXE_schubert"))
                .args(["verify", "main", "--all-sn", "4", "--format", "json", "--cache-dir"])
                .arg(dir.path())
                .env_remove("SCHUBERT_CACHE_DIR")
                .output()
                .unwrap()
        })
        .collect();
    // `output()` above waits; run a second, truly overlapping batch too.
    let spawned: Vec<_> = (0..8)
        .map(|_| {
            Command::new(env!("CARGO_BIN_EXE_schubert"))
                .args(["ideal", "gb", "21543", "13254", "--order", "diag", "--cache-dir"])
                .arg(dir.path())
                .env_remove("SCHUBERT_CACHE_DIR")
                .stdout(std::process::Stdio::piped())
                .stderr(std::process::Stdio::piped())
                .spawn()
                .unwrap()
        })
        .collect();
    let outputs: Vec<_> = spawned.into_iter().map(|c| c.wait_with_output().unwrap()).collect();
    for out in children.iter().chain(&outputs) {
        assert!(out.status.success());
        assert!(out.stderr.is_empty(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert!(outputs.windows(2).all(|w| w[0].stdout == w[1].stdout));
    for f in cache_files(dir.path()) {
        assert_eq!(f.extension().and_then(|e| e.to_str()), Some("json"), "stray file {f:?}");
        let _: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    }
}
