use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conjwidth"))
        .args(args)
        .output()
        .expect("spawn conjwidth")
}

fn run_on(args: &[&str], input: &Path) -> Output {
    let mut all = args.to_vec();
    all.push("--in");
    all.push(input.to_str().unwrap());
    run(&all)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&o.stdout),
            String::from_utf8_lossy(&o.stderr)
        )
    })
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn thompson_bundled_decompose_and_verify() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cert.json");
    let o = run(&[
        "thompson",
        "decompose",
        "--in",
        data("thompson_bump.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(cert["group"], "thompson_f");
    assert!(cert["factors"].as_array().unwrap().len() <= 6);

    let v = run_on(&["thompson", "verify"], &out);
    assert_eq!(code(&v), 0);
    assert_eq!(stdout_json(&v)["verified"], true);
    let v = run_on(&["verify"], &out);
    assert_eq!(code(&v), 0);
}

#[test]
fn thompson_edge_inputs() {
    let o = run_on(&["thompson", "decompose"], &data("thompson_empty.json"));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["factors"].as_array().unwrap().len(), 0);

    let o = run_on(
        &["thompson", "decompose"],
        &data("thompson_identity_f.json"),
    );
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn thompson_f_outside_fprime_is_input_error() {
    let dir = TempDir::new().unwrap();
    // slope 2 at 0
    let p = write(
        &dir,
        "f.json",
        r#"{ "f": [["0","0"],["1/4","1/2"],["1/2","3/4"],["1","1"]], "h": [] }"#,
    );
    assert_eq!(code(&run_on(&["thompson", "decompose"], &p)), 2);
}

#[test]
fn sample_is_deterministic_and_decomposes() {
    let a = run(&["thompson", "sample", "--seed", "7", "--pairs", "2"]);
    let b = run(&["thompson", "sample", "--seed", "7", "--pairs", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["thompson", "sample", "--seed", "8", "--pairs", "2"]);
    assert_ne!(a.stdout, c.stdout);

    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in.json");
    std::fs::write(&input, &a.stdout).unwrap();
    let x = run_on(&["thompson", "decompose"], &input);
    let y = run_on(&["thompson", "decompose"], &input);
    assert_eq!(code(&x), 0);
    assert_eq!(x.stdout, y.stdout);
    assert_eq!(stdout_json(&x)["factors"].as_array().unwrap().len(), 6);
}

#[test]
fn tampered_certificate_fails_with_exit_one() {
    let o = run_on(&["thompson", "decompose"], &data("thompson_bump.json"));
    let mut cert = stdout_json(&o);
    let sign = &mut cert["factors"][0]["sign"];
    let flipped = -sign.as_i64().unwrap();
    *sign = flipped.into();
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.json", &cert.to_string());
    let v = run_on(&["verify"], &p);
    assert_eq!(code(&v), 1);
    assert_eq!(stdout_json(&v)["verified"], false);
}

#[test]
fn verify_rejects_garbage_and_wrong_group() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "junk.json", "{ not json");
    assert_eq!(code(&run_on(&["verify"], &p)), 2);

    let o = run_on(&["sl", "decompose"], &data("sl_t13_t32.json"));
    let p = write(&dir, "sl.json", &String::from_utf8(o.stdout).unwrap());
    assert_eq!(code(&run_on(&["thompson", "verify"], &p)), 2);
    assert_eq!(code(&run_on(&["verify"], &p)), 0);
}

#[test]
fn missing_input_flag_is_input_error() {
    assert_eq!(code(&run(&["sl", "decompose"])), 2);
    let o = run(&["sl", "decompose", "--in", "/nonexistent/x.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sl_examples() {
    let o = run_on(&["sl", "decompose"], &data("sl_identity.json"));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["factors"].as_array().unwrap().len(), 0);

    let o = run_on(&["sl", "decompose"], &data("sl_t13_t32.json"));
    assert_eq!(code(&o), 0);
    let cert = stdout_json(&o);
    assert_eq!(cert["group"], "sl_z");
    assert!(cert["factors"].as_array().unwrap().len() <= 4);

    let o = run_on(&["sl", "decompose"], &data("sl_det2.json"));
    assert_eq!(code(&o), 2);
}

#[test]
fn sl_big_entries_round_trip() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "m.json",
        r#"[[1,"123456789012345678901234567890",0],[0,1,0],[0,0,1]]"#,
    );
    let o = run_on(&["sl", "decompose"], &p);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let c = write(&dir, "c.json", &String::from_utf8(o.stdout).unwrap());
    assert_eq!(code(&run_on(&["verify"], &c)), 0);
}

#[test]
fn sl_width_reports() {
    let o = run(&["sl", "width", "--n", "3", "--p", "2"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["width"], 3);
    assert_eq!(v["ball_sizes"], serde_json::json!([1, 22, 120, 168]));

    let o = run(&["sl", "width", "--n", "2", "--p", "2"]);
    assert_eq!(stdout_json(&o)["ball_sizes"], serde_json::json!([1, 4, 6]));

    assert_eq!(code(&run(&["sl", "width", "--n", "3", "--p", "6"])), 2);
    assert_eq!(
        code(&run(&[
            "sl",
            "width",
            "--n",
            "3",
            "--p",
            "5",
            "--max-size",
            "100"
        ])),
        2
    );
}

#[test]
fn freeprod_examples() {
    let o = run_on(&["freeprod", "decompose"], &data("z2z2_abab.json"));
    assert_eq!(code(&o), 0);
    let cert = stdout_json(&o);
    assert_eq!(cert["group"], "z2z2");
    assert_eq!(cert["factors"].as_array().unwrap().len(), 2);

    assert_eq!(
        code(&run_on(&["freeprod", "decompose"], &data("z3z2_word.json"))),
        2
    );

    let o = run_on(
        &["freeprod", "palindrome-check"],
        &data("z2cubed_palindromes.json"),
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["holds"], true);

    assert_eq!(
        code(&run_on(
            &["freeprod", "palindrome-check"],
            &data("z3z2_palindromes.json")
        )),
        2
    );
}

#[test]
fn freeprod_bad_z2z2_base_rejected() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "c.json",
        r#"{"group":"z2z2","format_version":1,"target":[[0,1]],"factors":[{"conjugator":[],"base":2}]}"#,
    );
    assert_eq!(code(&run_on(&["verify"], &p)), 2);
}

#[test]
fn finite_width_s3() {
    let o = run_on(&["finite", "width"], &data("s3_width.json"));
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["order"], 6);
    assert_eq!(v["set_size"], 3);
    assert_eq!(v["width"], 2);
    assert_eq!(v["ball_sizes"], serde_json::json!([1, 4, 6]));
}

#[test]
fn finite_size_guard() {
    let o = run_on(&["finite", "width"], &data("s12_oversized.json"));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn finite_bergman_extension_norms() {
    let o = run_on(&["finite", "bergman"], &data("s4_bergman.json"));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["report"]["holds"], true);

    let o = run_on(&["finite", "extension"], &data("s4_extension.json"));
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["holds"], true);
    assert_eq!(v["invariant_in_h"], true);

    let o = run_on(&["finite", "norms"], &data("s4_norms.json"));
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert!(v["word_norm_violation"].is_null());
    assert!(v["metric_violation"].is_null());
    assert!(v["chain_norm_violation"].is_null());
}

#[test]
fn finite_bergman_failed_hypothesis_is_input_error() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "b.json",
        r#"{ "group": { "named": "S4" }, "subgroup": ["(0 1 2)"], "u": ["()"], "n": 1 }"#,
    );
    assert_eq!(code(&run_on(&["finite", "bergman"], &p)), 2);
}

#[test]
fn finite_norms_rejects_non_normal_chain() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "n.json",
        r#"{ "group": { "named": "S3" }, "s": ["(0 1)"], "chain": [[], ["(0 1)"], ["(0 1)", "(0 1 2)"]] }"#,
    );
    assert_eq!(code(&run_on(&["finite", "norms"], &p)), 2);
}

#[test]
fn out_file_matches_stdout() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o.json");
    let a = run_on(&["freeprod", "decompose"], &data("z2z2_abab.json"));
    let b = run(&[
        "freeprod",
        "decompose",
        "--in",
        data("z2z2_abab.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&b), 0);
    assert!(b.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}
