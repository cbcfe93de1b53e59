use std::path::PathBuf;
use std::process::Command;

use galrep::repfile::{parse_rep_file, parse_rep_text, serialize_rep};
use galrep::{run, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, EXIT_UNDECIDED};

fn example(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "examples", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn args(line: &str) -> Vec<String> {
    line.split_whitespace()
        .map(|t| t.strip_prefix('@').map_or_else(|| t.to_string(), example))
        .collect()
}

fn galrep(line: &str) -> galrep::Outcome {
    run(args(line))
}

#[test]
fn documented_values() {
    let out = galrep("mbound --n 1 --ell 5 --e 1 --f 1 --plain");
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "4 = 2^2\n"));
    let out = galrep("mbound --n 2 --order 1 --plain");
    assert_eq!(out.stdout, "120\n");
    let out = galrep("dm --n 2 --m 2 --plain");
    assert_eq!(out.stdout, "34\n");
    let out = galrep("m-char @rotation_single.json --word 0 --m 2 --plain");
    assert_eq!(out.stdout, "-2\n");
    let out = galrep("weil --q 2 --w 0 --d 1 --plain");
    assert_eq!(out.stdout, "1 -1\n1 1\n");
    let out = galrep("weil --q 3 --w 1 --d 1 --count-only");
    assert_eq!(out.stdout, "0\n");
    let out = galrep("weil --q 2 --w 1 --d 2 --places 3 --plain");
    assert_eq!(out.stdout, "216\n");
}

#[test]
fn identical_files_are_equivalent_with_witness_one() {
    let out = galrep("check-pe @rotation_single.json @rotation_single.json");
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["status"], "equivalent_with_witness");
    assert_eq!(v["witness_m"], 1);
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(galrep("check-pe @i.json @minus_i.json").code, EXIT_OK);
    assert_eq!(galrep("check-pe @rotation_single.json @doubling_single.json").code, EXIT_NEGATIVE);
    assert_eq!(galrep("check-pe @unipotent_free.json @identity_free.json").code, EXIT_UNDECIDED);
    assert_eq!(galrep("twist @i.json @minus_i.json").code, EXIT_OK);
    assert_eq!(galrep("falsim @s3_bundle.json").code, EXIT_OK);
    assert_eq!(galrep("weil --q 9 --w 3 --d 8").code, EXIT_UNDECIDED);
    let bad = galrep("dm --n 2 --m 2 --frobnicate");
    assert_eq!(bad.code, EXIT_INPUT);
    assert!(bad.stderr.contains("Usage"));
    assert_eq!(galrep("check-pe @i.json @missing.json").code, EXIT_INPUT);
    assert_eq!(galrep("check-pe @i.json @rotation_single.json").code, EXIT_INPUT);
    assert_eq!(galrep("mbound --n 1 --ell 4 --e 1 --f 1").code, EXIT_INPUT);
    assert_eq!(galrep("mbound --n 100 --ell 3 --e 1 --f 1").code, EXIT_UNDECIDED);
    assert_eq!(galrep("--help").code, EXIT_OK);
}

#[test]
fn twist_of_non_twists_is_negative() {
    let out = galrep("twist @i.json @i.json --plain");
    assert_eq!(out.stdout, "twist root_order=4 generator_exponents=[0]\n");
    let dir = std::env::temp_dir().join(format!("galrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // Z/4 by diag(1, i) against diag(1, -1): no character relates them
    let a = r#"{"cyclotomic_order":4,"dimension":2,"kind":"finite","generators":[
        [[["1/1","0/1"],["0/1","0/1"]],[["0/1","0/1"],["0/1","1/1"]]]]}"#;
    let b = r#"{"cyclotomic_order":4,"dimension":2,"kind":"finite","generators":[
        [[["1/1","0/1"],["0/1","0/1"]],[["0/1","0/1"],["-1/1","0/1"]]]]}"#;
    std::fs::write(dir.join("a.json"), a).unwrap();
    std::fs::write(dir.join("b.json"), b).unwrap();
    let out = run([
        "twist".to_string(),
        dir.join("a.json").display().to_string(),
        dir.join("b.json").display().to_string(),
    ]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert!(out.stdout.contains("\"twist\": null"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn diagnostic_codes_reach_stderr() {
    let dir = std::env::temp_dir().join(format!("galrep-diag-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        (r#"{"cyclotomic_order":1,"dimension":1,"kind":"single","generators":[[[["0.5"]]]]}"#, "E_DECIMAL"),
        (r#"{"cyclotomic_order":4,"dimension":1,"kind":"single","generators":[[[["1"]]]]}"#, "E_ENTRY_LENGTH"),
        (r#"{"cyclotomic_order":1,"dimension":1,"kind":"finite","generators":[[[["0"]]]]}"#, "E_SINGULAR_GENERATOR"),
        (r#"{"cyclotomic_order":1,"dimension":1,"generators":[[[["1"]]]]}"#, "E_SCHEMA"),
    ];
    for (i, (text, code)) in cases.iter().enumerate() {
        let path = dir.join(format!("{i}.json"));
        std::fs::write(&path, text).unwrap();
        let out = run(["m-char".to_string(), path.display().to_string(), "--m".into(), "1".into()]);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stderr.starts_with(&format!("error[{code}]")), "{}", out.stderr);
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn example_files_are_canonical() {
    for name in [
        "i.json",
        "minus_i.json",
        "unipotent_free.json",
        "identity_free.json",
        "rotation_single.json",
        "doubling_single.json",
    ] {
        let path = example(name);
        let text = std::fs::read_to_string(&path).unwrap();
        let rep = parse_rep_file(path.as_ref()).unwrap();
        assert_eq!(serialize_rep(&rep), text, "{name}");
        assert_eq!(parse_rep_text(&serialize_rep(&rep)).unwrap(), rep);
    }
}

fn binary(line: &str, budget: Option<&str>) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_galrep"));
    cmd.args(args(line));
    match budget {
        Some(b) => cmd.env("GALREP_BUDGET", b),
        None => cmd.env_remove("GALREP_BUDGET"),
    };
    cmd.output().unwrap()
}

#[test]
fn budget_environment_variable() {
    let ok = binary("weil --q 2 --w 1 --d 2 --count-only", None);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let refused = binary("weil --q 2 --w 1 --d 2 --count-only", Some("3"));
    assert_eq!(refused.status.code(), Some(EXIT_UNDECIDED));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("budget of 3"));
    let garbage = binary("weil --q 2 --w 1 --d 2", Some("lots"));
    assert_eq!(garbage.status.code(), Some(EXIT_INPUT));
}

#[test]
fn binary_matches_in_process_runner() {
    for line in ["falsim @s3_bundle.json", "newton --n 3 --m 4 --plain", "check-pe @i.json @minus_i.json"] {
        let out = binary(line, None);
        let inproc = galrep(line);
        assert_eq!(String::from_utf8(out.stdout).unwrap(), inproc.stdout);
        assert_eq!(out.status.code(), Some(inproc.code));
    }
}
