use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn girthlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_girthlab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn construct_then_analyze_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let built = report(&girthlab(
        &[
            "construct",
            "regular",
            "--wc",
            "2",
            "--wr",
            "4",
            "--out",
            "h.alist",
        ],
        dir.path(),
    ));
    assert_eq!(
        (
            built["n"].as_u64(),
            built["m"].as_u64(),
            built["girth"].as_u64()
        ),
        (Some(16), Some(8), Some(8))
    );
    let digest = &built["manifest"]["outputs"]["h.alist"];
    assert_eq!(digest.as_str().unwrap().len(), 64);

    let analyzed = report(&girthlab(
        &["analyze", "h.alist", "--dmin", "--dmin-cap", "8", "--girth"],
        dir.path(),
    ));
    assert_eq!(analyzed["n"], 16);
    assert_eq!(analyzed["m"], 8);
    assert_eq!(analyzed["girth"], 8);
    assert_eq!(analyzed["dmin"]["kind"], "exact");
    assert_eq!(analyzed["dmin"]["value"], 4);
    assert_eq!(analyzed["manifest"]["inputs"]["h.alist"], *digest);
}

#[test]
fn semiregular_example() {
    let dir = tempfile::tempdir().unwrap();
    let built = report(&girthlab(
        &[
            "construct",
            "semiregular",
            "--t",
            "8",
            "--sequence",
            "greedy",
            "--out",
            "s.alist",
        ],
        dir.path(),
    ));
    assert_eq!(
        (built["n"].as_u64(), built["m"].as_u64()),
        (Some(64), Some(57))
    );
    assert_eq!(
        built["manifest"]["params"]["sequence"],
        serde_json::json!([1, 2, 4, 5, 10, 11, 13, 14])
    );

    let analyzed = report(&girthlab(&["analyze", "s.alist", "--girth"], dir.path()));
    assert_eq!(analyzed["girth"], 8);
    assert!(analyzed.get("dmin").is_none());

    fs::write(dir.path().join("seq.txt"), "1\n2\n4\n5\n10\n11\n13\n14\n").unwrap();
    let from_file = report(&girthlab(
        &[
            "construct",
            "semiregular",
            "--t",
            "8",
            "--sequence",
            "behrend",
            "--sequence-file",
            "seq.txt",
            "--out",
            "f.alist",
        ],
        dir.path(),
    ));
    assert_eq!(from_file["m"], 57);
    assert_eq!(
        fs::read(dir.path().join("s.alist")).unwrap(),
        fs::read(dir.path().join("f.alist")).unwrap()
    );

    let behrend = report(&girthlab(
        &[
            "construct",
            "semiregular",
            "--t",
            "6",
            "--sequence",
            "behrend",
            "--out",
            "b.alist",
        ],
        dir.path(),
    ));
    assert_eq!(behrend["girth"], 8);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["alist", "dense", "csv"] {
        for name in ["a", "b"] {
            let out = format!("{name}.{format}");
            report(&girthlab(
                &[
                    "construct",
                    "regular",
                    "--wc",
                    "3",
                    "--wr",
                    "4",
                    "--format",
                    format,
                    "--out",
                    &out,
                    "--labels",
                    &format!("{name}.labels"),
                ],
                dir.path(),
            ));
        }
        let read = |f: &str| fs::read(dir.path().join(f)).unwrap();
        assert_eq!(read(&format!("a.{format}")), read(&format!("b.{format}")));
        assert_eq!(read("a.labels"), read("b.labels"));
    }
    let csv = fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert!(csv.starts_with("row,col\n"));
    let labels = fs::read_to_string(dir.path().join("a.labels")).unwrap();
    assert!(labels.starts_with("col,coords\n"));
}

#[test]
fn convert_preserves_matrix() {
    let dir = tempfile::tempdir().unwrap();
    report(&girthlab(
        &[
            "construct",
            "regular",
            "--wc",
            "2",
            "--wr",
            "3",
            "--out",
            "h.alist",
        ],
        dir.path(),
    ));
    report(&girthlab(
        &["convert", "h.alist", "--to", "dense", "--out", "h.txt"],
        dir.path(),
    ));
    report(&girthlab(
        &[
            "convert",
            "h.txt",
            "--from",
            "dense",
            "--to",
            "alist",
            "--out",
            "back.alist",
        ],
        dir.path(),
    ));
    assert_eq!(
        fs::read(dir.path().join("h.alist")).unwrap(),
        fs::read(dir.path().join("back.alist")).unwrap()
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = girthlab(
        &[
            "construct",
            "regular",
            "--wc",
            "3",
            "--wr",
            "2",
            "--out",
            "x.alist",
        ],
        dir.path(),
    );
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("parameters out of range"));

    let unsupported = girthlab(
        &["bound", "--girth", "18", "--wc", "3", "--n", "100"],
        dir.path(),
    );
    assert_eq!(unsupported.status.code(), Some(2));

    let missing = girthlab(&["analyze", "nope.alist"], dir.path());
    assert_eq!(missing.status.code(), Some(1));

    report(&girthlab(
        &[
            "construct",
            "regular",
            "--wc",
            "2",
            "--wr",
            "4",
            "--out",
            "h.alist",
        ],
        dir.path(),
    ));
    let full = fs::read_to_string(dir.path().join("h.alist")).unwrap();
    let truncated: String = full.lines().take(6).map(|l| format!("{l}\n")).collect();
    fs::write(dir.path().join("t.alist"), truncated).unwrap();
    let out = girthlab(&["analyze", "t.alist"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 7"), "{err}");

    fs::write(dir.path().join("ap.txt"), "1\n2\n3\n4\n").unwrap();
    let ap = girthlab(
        &[
            "construct",
            "semiregular",
            "--t",
            "4",
            "--sequence-file",
            "ap.txt",
            "--out",
            "s.alist",
        ],
        dir.path(),
    );
    assert_eq!(ap.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&ap.stderr).contains("3-AP"));

    let threads = Command::new(env!("CARGO_BIN_EXE_girthlab"))
        .args(["bound", "--girth", "8", "--wc", "2", "--n", "64"])
        .env("GIRTHLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(2));
}

#[test]
fn bound_values() {
    let dir = tempfile::tempdir().unwrap();
    let g8 = report(&girthlab(
        &["bound", "--girth", "8", "--wc", "2", "--n", "64"],
        dir.path(),
    ));
    assert_eq!(g8["bound_ceil"], 16);
    assert!((g8["bound"].as_f64().unwrap() - 16.0).abs() < 1e-9);

    let g10 = report(&girthlab(
        &["bound", "--girth", "10", "--wc", "3", "--n", "1000"],
        dir.path(),
    ));
    let b = g10["bound"].as_f64().unwrap();
    assert!(b > 320.0 && b < 330.0, "{b}");
    assert_eq!(g10["method"], "polynomial_root");
}

#[test]
fn sweep_csv_slope() {
    let dir = tempfile::tempdir().unwrap();
    let out = girthlab(
        &[
            "sweep",
            "--girth",
            "14",
            "--wc",
            "3",
            "--n-from",
            "10000",
            "--n-to",
            "100000000",
            "--points",
            "6",
            "--out",
            "s.csv",
        ],
        dir.path(),
    );
    report(&out);
    let csv = fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,bound,exponent_fit"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 6);
    assert!(rows
        .windows(2)
        .all(|w| w[0][0] < w[1][0] && w[0][1] <= w[1][1]));
    // slope recomputed from the CSV columns
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r[0].ln(), r[1].ln())).collect();
    let k = pts.len() as f64;
    let (mx, my) = (
        pts.iter().map(|p| p.0).sum::<f64>() / k,
        pts.iter().map(|p| p.1).sum::<f64>() / k,
    );
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!((slope - 0.75).abs() < 0.05, "{slope}");
    assert!((rows[0][2] - slope).abs() < 1e-12);

    let few = girthlab(
        &[
            "sweep", "--girth", "14", "--wc", "3", "--n-from", "10", "--n-to", "100", "--points",
            "3", "--out", "x.csv",
        ],
        dir.path(),
    );
    assert_eq!(few.status.code(), Some(2));
}
