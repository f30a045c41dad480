use std::fs;
use std::process::{Command, Output};

use csm_core::{Polynomial, Var};

fn csm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csm"))
        .args(args)
        .env_remove("CSM_CACHE_DIR")
        .env_remove("CSM_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn poly(s: &str) -> Polynomial {
    s.parse().unwrap()
}

#[test]
fn enumerate_dimensions() {
    let dims = |lambda: &str| -> Vec<usize> {
        let out = csm(&["enumerate", "--lambda", lambda]);
        assert!(out.status.success());
        let mut d: Vec<usize> = stdout(&out)
            .lines()
            .map(|l| {
                let field = l.split('\t').nth(1).unwrap();
                field.trim_start_matches("dim=").parse().unwrap()
            })
            .collect();
        d.sort();
        d
    };
    assert_eq!(dims("1,1"), [0, 1]);
    assert_eq!(dims("3"), [0]);
    assert_eq!(dims("2,2"), [0, 1, 2, 2, 3, 4]);
}

#[test]
fn enumerate_json_has_covers() {
    let out = csm(&["enumerate", "--lambda", "1,1", "--format", "json"]);
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["index"], "{1};{2}");
    assert_eq!(lines[0]["covered_by"][0], "{2};{1}");
    assert_eq!(lines[1]["covers"][0], "{1};{2}");
}

#[test]
fn weight_grassmannian_example() {
    let out = csm(&["weight", "--lambda", "1,2", "--index", "{1};{2,3}"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let w = text.lines().next().unwrap().strip_prefix("W = ").unwrap();
    let t = Polynomial::var(Var::t(1, 1));
    let expected = &(&Polynomial::var(Var::z(2)) - &t) * &(&Polynomial::var(Var::z(3)) - &t);
    assert_eq!(poly(w), expected);
}

#[test]
fn weight_of_point_is_one() {
    let out = csm(&["weight", "--lambda", "4", "--index", "{1,2,3,4}"]);
    assert_eq!(stdout(&out).lines().next(), Some("W = 1"));
}

#[test]
fn weight_tables_layout() {
    let out = csm(&[
        "weight",
        "--lambda",
        "1,1,1",
        "--index",
        "{2};{1};{3}",
        "--show-tables",
    ]);
    let text = stdout(&out);
    let first = "\
+------+------+----+
|      | t2_1 | z1 |
+------+------+----+
| t1_1 | t2_2 | z2 |
+------+------+----+
|      |      | z3 |
+------+------+----+
";
    let second = first
        .replace("t2_1", "tmp")
        .replace("t2_2", "t2_1")
        .replace("tmp", "t2_2");
    assert!(text.contains(first));
    assert!(text.contains(&second));
    assert_eq!(text.matches("term = ").count(), 2);
}

#[test]
fn weight_methods_agree_on_cli() {
    let run = |m| {
        stdout(&csm(&[
            "weight",
            "--lambda",
            "1,2,1",
            "--index",
            "{3};{1,4};{2}",
            "--method",
            m,
        ]))
    };
    assert_eq!(run("sym"), run("tables"));
}

#[test]
fn restrict_examples() {
    let r = |lambda: &str, i: &str, j: &str| {
        let out = csm(&["restrict", "--lambda", lambda, "--index", i, "--at", j]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        poly(stdout(&out).trim())
    };
    let expected = poly("1 + z1 - z2") * poly("z3 - z1") * poly("z3 - z2");
    assert_eq!(r("1,1,1", "{2};{1};{3}", "{2};{1};{3}"), expected);
    assert!(r("1,1", "{1};{2}", "{2};{1}").is_zero());
    assert!(r("1,1", "{2};{1}", "{1};{2}").is_one());
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&csm(&[
        "restrict",
        "--lambda",
        "1,1,1",
        "--index",
        "{3};{1};{2}",
        "--all",
    ]));
    let json = stdout(&csm(&[
        "restrict",
        "--lambda",
        "1,1,1",
        "--index",
        "{3};{1};{2}",
        "--all",
        "--format",
        "json",
    ]));
    let from_text: Vec<(String, Polynomial)> = text
        .lines()
        .map(|l| {
            let (j, p) = l.split_once('\t').unwrap();
            (j.to_string(), poly(p))
        })
        .collect();
    let from_json: Vec<(String, Polynomial)> = json
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            let p = Polynomial::from_json(&v["restriction"].to_string()).unwrap();
            (v["J"].as_str().unwrap().to_string(), p)
        })
        .collect();
    assert_eq!(from_text.len(), 6);
    assert_eq!(from_text, from_json);
    for (_, p) in &from_text {
        assert_eq!(poly(&p.to_string()).to_string(), p.to_string());
    }
}

#[test]
fn verify_passes() {
    for lambda in ["1,1,1", "2,2"] {
        let out = csm(&["verify", "--lambda", lambda, "--format", "json"]);
        assert!(out.status.success());
        for line in stdout(&out).lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["verdict"], "pass", "{line}");
            assert_eq!(v["shape"], lambda);
            assert!(v.get("witness").is_none());
        }
    }
}

#[test]
fn verify_single_index() {
    let out = csm(&["verify", "--lambda", "1,1,1", "--index", "{2};{1};{3}"]);
    assert!(out.status.success());
    // diagonal, euler top, 6 divisibility, 5 degree, 6 vanishing
    assert_eq!(stdout(&out).lines().count(), 19);
}

#[test]
fn verify_refuses_over_budget() {
    let start = std::time::Instant::now();
    let out = csm(&["verify", "--lambda", "1,1,1,1,1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("24883200"), "{err}");
    assert!(err.contains("budget"), "{err}");
    assert!(stdout(&out).is_empty());
    assert!(start.elapsed().as_secs() < 10);
}

#[test]
fn term_budget_flag() {
    let out = csm(&[
        "weight",
        "--lambda",
        "1,1,1",
        "--index",
        "{1};{2};{3}",
        "--term-budget",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = csm(&[
        "weight",
        "--lambda",
        "1,1,1",
        "--index",
        "{1};{2};{3}",
        "--term-budget",
        "2",
    ]);
    assert!(out.status.success());
    let out = csm(&["enumerate", "--lambda", "1,1", "--term-budget", "0"]);
    assert!(!out.status.success());
}

#[test]
fn bad_input_is_diagnosed() {
    let out = csm(&["weight", "--lambda", "1,1", "--index", "{1};{1}"]);
    assert_eq!(out.status.code(), Some(2));
    let out = csm(&["weight", "--lambda", "1,2", "--index", "{1,2};{3}"]);
    assert_eq!(out.status.code(), Some(2));
    let out = csm(&["enumerate", "--lambda", "1,x"]);
    assert!(!out.status.success());
    let out = csm(&["verify", "--lambda", "1,1", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(2));
    let out = csm(&["verify", "--lambda", "1,1", "--jobs", "0"]);
    assert!(!out.status.success());
}

#[test]
fn cache_hit_matches_miss() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "restrict",
        "--lambda",
        "1,2,1",
        "--index",
        "{4};{2,3};{1}",
        "--all",
        "--format",
        "json",
    ];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_csm"))
            .args(args)
            .env("CSM_CACHE_DIR", dir.path())
            .env("CSM_JOBS", "2")
            .output()
            .unwrap()
    };
    let miss = run();
    assert!(miss.status.success());
    let entries = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 12);
    let hit = run();
    assert_eq!(miss.stdout, hit.stdout);
    assert_eq!(miss.stdout, csm(&args).stdout);

    // a damaged entry is reported and recomputed
    let victim = fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    fs::write(&victim, "not json").unwrap();
    let repaired = run();
    assert!(repaired.status.success());
    assert_eq!(repaired.stdout, miss.stdout);
    assert!(String::from_utf8_lossy(&repaired.stderr).contains("warning"));
}

#[test]
fn verify_with_cache_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_csm"))
            .args(["verify", "--lambda", "1,1,1", "--cache-dir"])
            .arg(dir.path())
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn latex_output() {
    let out = csm(&[
        "weight",
        "--lambda",
        "1,1,1",
        "--index",
        "{2};{1};{3}",
        "--show-tables",
        "--format",
        "latex",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("W_{\\{2\\},\\{1\\},\\{3\\}} = "));
    assert_eq!(text.matches("\\begin{tabular}{|c|c|c|}").count(), 2);
    assert!(text.contains("_{type-3}"));
}
