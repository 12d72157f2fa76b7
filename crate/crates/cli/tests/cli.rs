use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wildcoll(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wildcoll"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = wildcoll(&all);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn keys(v: &Value) -> Vec<&str> {
    let mut k: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    k.sort();
    k
}

#[test]
fn classify_examples() {
    let out = wildcoll(&["classify", "--field", "3^1", "--poly", "x^9+x^5+x"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "S k=2 u=2 s=1 eps=0 m=2 w=0");

    let out = wildcoll(&["classify", "--field", "2^1", "--poly", "x^4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out).trim(), "no 2-collision");

    let out = wildcoll(&["classify", "--field", "2", "--poly", "x^4+x^2"]);
    assert_eq!(stdout(&out).trim(), "F");
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 4] = [
        (
            &[
                "construct",
                "m",
                "--field",
                "5",
                "--a",
                "2",
                "--b",
                "1",
                "--m",
                "2",
            ],
            "construct_m_f5.txt",
        ),
        (
            &[
                "construct",
                "s",
                "--field",
                "3",
                "--u",
                "2",
                "--s",
                "1",
                "--eps",
                "0",
                "--m",
                "2",
            ],
            "construct_s_f3.txt",
        ),
        (
            &[
                "construct",
                "frobenius",
                "--field",
                "2^2",
                "--poly",
                "x^2+2*x",
            ],
            "construct_frobenius_f4.txt",
        ),
        (&["count", "--p", "2", "--q", "4"], "count_2_4.txt"),
    ];
    for (args, file) in cases {
        let out = wildcoll(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&out), golden(file), "{args:?}");
    }
}

#[test]
fn construct_then_classify_round_trips() {
    // S over F_3 and F_4, every parameter tuple and shift
    for (field, q, ms) in [("3", 3u64, vec![1u64, 2]), ("2^2", 4, vec![1])] {
        for u in 1..q {
            for s in 1..q {
                for eps in 0..2 {
                    for &m in &ms {
                        for w in 0..q {
                            let params = [
                                u.to_string(),
                                s.to_string(),
                                eps.to_string(),
                                m.to_string(),
                                w.to_string(),
                            ];
                            let built = json(&[
                                "construct",
                                "s",
                                "--field",
                                field,
                                "--u",
                                &params[0],
                                "--s",
                                &params[1],
                                "--eps",
                                &params[2],
                                "--m",
                                &params[3],
                                "--w",
                                &params[4],
                            ]);
                            let f = built["f"].as_str().unwrap();
                            let k = built["k"].as_u64().unwrap();
                            let class = json(&["classify", "--field", field, "--poly", f]);
                            let want = if k >= 2 { "S" } else { "None" };
                            assert_eq!(class["class"], want, "S({params:?}) over {field}: {f}");
                            if k >= 2 {
                                assert_eq!(class["k"].as_u64(), Some(k));
                            }
                        }
                    }
                }
            }
        }
    }
    // M over F_5 with a few shifts
    for a in 1..5u64 {
        for b in 1..5u64 {
            if a == b {
                continue; // a = b^5 = b is excluded
            }
            for m in ["2", "3"] {
                let (a, b) = (a.to_string(), b.to_string());
                let built = json(&[
                    "construct",
                    "m",
                    "--field",
                    "5",
                    "--a",
                    &a,
                    "--b",
                    &b,
                    "--m",
                    m,
                    "--w",
                    "2",
                ]);
                let f = built["f"].as_str().unwrap();
                let out = wildcoll(&["classify", "--field", "5", "--poly", f]);
                assert_eq!(out.status.code(), Some(0));
                assert!(stdout(&out).starts_with("M "), "{}", stdout(&out));
            }
        }
    }
}

#[test]
fn json_keys() {
    let v = json(&["classify", "--field", "3", "--poly", "x^9+x^5+x"]);
    assert_eq!(keys(&v), ["class", "eps", "k", "m", "s", "u", "w"]);
    let v = json(&["classify", "--field", "2", "--poly", "x^4"]);
    assert_eq!(keys(&v), ["class"]);
    let v = json(&["count", "--p", "3", "--q", "9"]);
    assert_eq!(keys(&v), ["D", "c1", "c2", "c4", "p", "q"]);
    assert_eq!(v["c2"], "240");
    assert_eq!(v["D"], "6261");
    let v = json(&["nu", "--p", "3", "--q", "3"]);
    assert_eq!(v["nu"], "23/27");
    let v = json(&["identify", "--field", "3", "--poly", "x^9+x^5+x"]);
    assert_eq!(keys(&v), ["multiply", "simply"]);
    assert!(v["multiply"].is_null());
    let v = json(&["decompose", "--field", "2", "--poly", "x^4+x^2"]);
    assert_eq!(keys(&v), ["class", "complete", "decompositions", "f", "k"]);
    assert_eq!(v["k"], 2);
}

#[test]
fn identify_reports_failure() {
    let out = wildcoll(&["identify", "--field", "2", "--poly", "x^4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out).trim(), "failure");
    let out = wildcoll(&["identify", "--field", "5", "--poly", "x^25+x^5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["classify", "--field", "3"][..],
        &["classify", "--field", "6", "--poly", "x^36"],
        &["classify", "--field", "3", "--poly", "x^9+y"],
        &["classify", "--field", "3", "--poly", "x^8+x"],
        &[
            "construct",
            "s",
            "--field",
            "3",
            "--u",
            "2",
            "--s",
            "1",
            "--eps",
            "0",
        ],
        &[
            "construct",
            "s",
            "--field",
            "3",
            "--u",
            "7",
            "--s",
            "1",
            "--eps",
            "0",
            "--m",
            "1",
        ],
        &["count", "--p", "4", "--q", "16"],
        &["census", "--p", "3", "--q", "81"],
        &["frobnicate"],
    ] {
        let out = wildcoll(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = wildcoll(&[
        "construct",
        "s",
        "--field",
        "3",
        "--u",
        "2",
        "--s",
        "1",
        "--eps",
        "0",
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--m"));
}

#[test]
fn census_report_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let path_str = path.to_str().unwrap();
    let out = wildcoll(&[
        "census",
        "--p",
        "3",
        "--q",
        "3",
        "--out",
        path_str,
        "--threads",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("D=69"));

    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(
        keys(&report),
        [
            "class_counts",
            "decomposable_observed",
            "mismatches",
            "p",
            "pairs",
            "q",
            "simply_by_k",
            "spectrum_observed",
            "spectrum_predicted",
        ]
    );
    assert_eq!(report["class_counts"]["F"], 8);
    assert_eq!(report["spectrum_predicted"]["d_total"], "69");
    assert_eq!(wildcoll(&["verify", path_str]).status.code(), Some(0));

    let mut tampered = report.clone();
    tampered["spectrum_observed"]["2"] = Value::from(11);
    std::fs::write(&path, tampered.to_string()).unwrap();
    assert_eq!(wildcoll(&["verify", path_str]).status.code(), Some(2));
}
