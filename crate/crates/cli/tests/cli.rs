use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn assoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_assoc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

#[test]
fn count_prints_table_and_json() {
    let o = assoc(&["count", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["8", "36", "228", "36", "228"]));

    let o = assoc(&["count", "--n-max", "5", "--json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows[5]["type_ii"], 12);
    assert_eq!(rows[3]["type_i"], 2);
}

#[test]
fn classify_lists_canonical_parameters() {
    let o = assoc(&["classify", "--family", "hl", "--n", "4", "--json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
    let sizes: u64 = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["size"].as_u64().unwrap())
        .sum();
    assert_eq!(sizes, 8);
}

#[test]
fn build_verify_compare() {
    let dir = tempfile::tempdir().unwrap();
    let alt = dir.path().join("alt.hrep");
    let snake = dir.path().join("snake.hrep");
    let loday = dir.path().join("loday.hrep");
    assert!(assoc(&[
        "build",
        "--family",
        "hl",
        "--n",
        "4",
        "--sigma",
        "+-+",
        "--out",
        path(&alt)
    ])
    .status
    .success());
    assert!(assoc(&[
        "build",
        "--family",
        "santos",
        "--n",
        "4",
        "--out",
        path(&snake)
    ])
    .status
    .success());
    assert!(assoc(&[
        "build",
        "--family",
        "post",
        "--n",
        "4",
        "--out",
        path(&loday)
    ])
    .status
    .success());
    assert!(fs::read_to_string(&alt)
        .unwrap()
        .starts_with("HREP v1\ndim 5  polygon 7\n"));

    let o = assoc(&["verify", "--in", path(&snake), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["is_simple_associahedron"], true);
    assert_eq!(report["vertex_map"].as_object().unwrap().len(), 42);

    let o = assoc(&[
        "compare",
        "--in",
        path(&alt),
        "--in",
        path(&snake),
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["witness"]["matrix"].as_array().unwrap().len(), 4);
    let o = assoc(&["compare", "--in", path(&loday), "--in", path(&snake)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "not isomorphic");
}

#[test]
fn build_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.txt");
    fs::write(&pts, "0 0\n2 0\n3 1\n2 3\n0 2\n").unwrap();
    let out = dir.path().join("gkz.hrep");
    let o = assoc(&[
        "build",
        "--family",
        "gkz",
        "--n",
        "2",
        "--points",
        path(&pts),
        "--out",
        path(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        assoc(&["verify", "--in", path(&out)]).status.code(),
        Some(0)
    );

    let w = dir.path().join("w.txt");
    fs::write(&w, "1 1 1\n1 2 2\n1 3 1/2\n2 2 1\n2 3 3\n3 3 1\n").unwrap();
    let out = dir.path().join("post.hrep");
    assert!(assoc(&[
        "build",
        "--family",
        "post",
        "--n",
        "2",
        "--weights",
        path(&w),
        "--out",
        path(&out)
    ])
    .status
    .success());
    assert_eq!(
        assoc(&["verify", "--in", path(&out)]).status.code(),
        Some(0)
    );
}

#[test]
fn failing_verification_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.hrep");
    // a pentagon whose 0-2 facet was pushed outward until it no longer touches
    let good =
        String::from_utf8(assoc(&["build", "--family", "post", "--n", "2", "--out", "-"]).stdout)
            .unwrap();
    let bad: String = good
        .lines()
        .map(|l| {
            if l.starts_with("0 2 ") {
                "0 2 -1 0 0 -100".to_string()
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    fs::write(&f, bad).unwrap();
    assert_eq!(assoc(&["verify", "--in", path(&f)]).status.code(), Some(1));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.hrep");
    assert_eq!(
        assoc(&[
            "build",
            "--family",
            "hl",
            "--n",
            "3",
            "--sigma",
            "+",
            "--out",
            path(&out)
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        assoc(&[
            "build",
            "--family",
            "santos",
            "--n",
            "3",
            "--seed",
            "6: 0-3, 1-4",
            "--out",
            path(&out)
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        assoc(&[
            "build",
            "--family",
            "post",
            "--n",
            "3",
            "--sigma",
            "+-",
            "--out",
            path(&out)
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        assoc(&[
            "build",
            "--family",
            "loday",
            "--n",
            "3",
            "--out",
            path(&out)
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        assoc(&["verify", "--in", path(&dir.path().join("missing"))])
            .status
            .code(),
        Some(2)
    );
    let junk = dir.path().join("junk.hrep");
    fs::write(&junk, "HREP v2\n").unwrap();
    assert_eq!(
        assoc(&["verify", "--in", path(&junk)]).status.code(),
        Some(2)
    );
}

#[test]
fn atlas_reports_the_single_common_class() {
    let o = assoc(&["atlas", "--n", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["single_common_class"], true);
    assert_eq!(r["union_size"], 6);
    assert_eq!(r["common_pairs"].as_array().unwrap().len(), 1);
}
