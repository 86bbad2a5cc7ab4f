use std::fs;
use std::process::{Command, Output};

use bayerkit::{load_raw, RawFilePair};

fn bayerkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bayerkit"))
        .args(args)
        .output()
        .expect("run bayerkit")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec![
            "unify", "--target", "rggb", "--mode", "pad", "x.pgm", "-o", "y.pgm",
        ],
        vec![
            "unify", "--target", "BGGR", "--mode", "shift", "x.pgm", "-o", "y.pgm",
        ],
        vec![
            "simulate",
            "--pattern",
            "RGGB",
            "--size",
            "64",
            "--seed",
            "1",
            "-o",
            "y.pgm",
        ],
        vec![
            "denoise",
            "--filter",
            "box:3",
            "--work-pattern",
            "RGGB",
            "x.pgm",
            "-o",
            "y.pgm",
        ],
        vec!["augment", "--seed", "3", "x.pgm", "-o", "y.pgm"],
        vec![
            "augment", "--hflip", "--plan", "p.json", "x.pgm", "-o", "y.pgm",
        ],
        vec!["frobnicate"],
    ] {
        let out = bayerkit(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn processing_errors_exit_1_with_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let d = |n: &str| dir.path().join(n).to_string_lossy().into_owned();

    let out = bayerkit(&["pack-roundtrip", &d("missing.pgm")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr(&out).trim_end().lines().count(), 1);

    let out = bayerkit(&[
        "simulate",
        "--pattern",
        "GBRG",
        "--size",
        "16x16",
        "--seed",
        "0",
        "-o",
        &d("g.pgm"),
    ]);
    assert!(out.status.success());

    for args in [
        vec![
            "augment".to_string(),
            "--transpose".into(),
            d("g.pgm"),
            "-o".into(),
            d("t.pgm"),
        ],
        vec!["disunify".to_string(), d("g.pgm"), "-o".into(), d("u.pgm")],
        vec![
            "augment".to_string(),
            "--patch".into(),
            "1,0,2,2".into(),
            d("g.pgm"),
            "-o".into(),
            d("t.pgm"),
        ],
    ] {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = bayerkit(&argv);
        assert_eq!(out.status.code(), Some(1), "{argv:?}");
        let msg = stderr(&out);
        assert_eq!(msg.trim_end().lines().count(), 1, "{msg}");
        assert!(msg.starts_with("error: "));
    }
    assert!(stderr(&bayerkit(&[
        "augment",
        "--transpose",
        &d("g.pgm"),
        "-o",
        &d("t.pgm")
    ]))
    .contains("GBRG"));

    fs::write(d("g.json"), r#"{"bayer_pattern":"gbrg"}"#).unwrap();
    let out = bayerkit(&["pack-roundtrip", &d("g.pgm")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown Bayer pattern"));
}

#[test]
fn unify_modes_write_expected_geometry() {
    let dir = tempfile::tempdir().unwrap();
    let d = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    assert!(bayerkit(&[
        "simulate",
        "--pattern",
        "RGGB",
        "--size",
        "12x16",
        "--seed",
        "4",
        "-o",
        &d("in.pgm")
    ])
    .status
    .success());
    assert!(bayerkit(&[
        "unify",
        "--target",
        "BGGR",
        "--mode",
        "crop",
        &d("in.pgm"),
        "-o",
        &d("c.pgm")
    ])
    .status
    .success());
    assert!(bayerkit(&[
        "unify",
        "--target",
        "BGGR",
        "--mode",
        "pad",
        &d("in.pgm"),
        "-o",
        &d("p.pgm")
    ])
    .status
    .success());

    let (crop, pad) = load_raw(&RawFilePair::new(d("c.pgm"))).unwrap();
    assert_eq!(
        (crop.height(), crop.width(), crop.pattern().as_str()),
        (10, 14, "BGGR")
    );
    assert!(pad.is_none());
    let (padded, pad) = load_raw(&RawFilePair::new(d("p.pgm"))).unwrap();
    assert_eq!((padded.height(), padded.width()), (14, 18));
    let pad = pad.expect("pad recorded in sidecar");
    assert_eq!(
        (pad.top, pad.left, pad.original_pattern.as_str()),
        (1, 1, "RGGB")
    );
}

#[test]
fn sampled_augment_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    assert!(bayerkit(&[
        "simulate",
        "--pattern",
        "BGGR",
        "--size",
        "40x40",
        "--seed",
        "9",
        "-o",
        &d("in.pgm")
    ])
    .status
    .success());
    let a = bayerkit(&[
        "augment",
        "--seed",
        "77",
        "--patch-size",
        "16",
        &d("in.pgm"),
        "-o",
        &d("a.pgm"),
    ]);
    let b = bayerkit(&[
        "augment",
        "--seed",
        "77",
        "--patch-size",
        "16",
        &d("in.pgm"),
        "-o",
        &d("b.pgm"),
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(fs::read(d("a.pgm")).unwrap(), fs::read(d("b.pgm")).unwrap());

    // the printed plan replays to the same output
    fs::write(d("plan.json"), &a.stdout).unwrap();
    assert!(bayerkit(&[
        "augment",
        "--plan",
        &d("plan.json"),
        &d("in.pgm"),
        "-o",
        &d("c.pgm")
    ])
    .status
    .success());
    assert_eq!(fs::read(d("a.pgm")).unwrap(), fs::read(d("c.pgm")).unwrap());
}

#[test]
fn metrics_prints_one_json_object() {
    let dir = tempfile::tempdir().unwrap();
    let d = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    assert!(bayerkit(&[
        "simulate",
        "--pattern",
        "GRBG",
        "--size",
        "32x32",
        "--seed",
        "2",
        "--noise",
        "0.01,0.02",
        "-o",
        &d("n.pgm"),
        "--clean",
        &d("c.pgm")
    ])
    .status
    .success());
    let out = bayerkit(&["metrics", "--ref", &d("c.pgm"), &d("n.pgm")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert!(v["psnr_db"].as_f64().unwrap() > 20.0);
    assert!(text.contains("\"ssim\":0.") && text.trim().ends_with('}'));

    let out = bayerkit(&["metrics", "--ref", &d("c.pgm"), &d("c.pgm")]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("\"psnr_db\":99.000000"));
}

#[test]
fn baseline_demo_reports_all_paths() {
    let out = bayerkit(&[
        "baseline-demo",
        "--seed",
        "3",
        "--count",
        "1",
        "--size",
        "32",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = v["paths"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["path"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        ["unify_crop", "naive_unify", "flip_bayer", "naive_flip"]
    );
    assert_eq!(v["seeds"], serde_json::json!([3]));
}
