use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genus-census")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn hurwitz_signature_is_the_only_one_at_84() {
    let o = run(&["enumerate-signatures", "--rho", "84"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0;2,3,7\n");
}

#[test]
fn cyclic_quotients_of_four_period_group() {
    let o = run(&["count-kernels", "--sig", "0;5,5,5,5", "--group", "C5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "13");
    let j: serde_json::Value =
        serde_json::from_slice(&run(&["count-kernels", "--sig", "0;5^4", "--group", "C5", "--json"]).stdout).unwrap();
    assert_eq!(j["kernels"], 13);
    assert_eq!(j["signature"], "0;5,5,5,5");
}

#[test]
fn classify_json_has_three_psl_13_surfaces() {
    let o = run(&["classify", "--p", "13", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let records: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let x = records.as_array().unwrap().iter().find(|r| r["case_id"] == "x").expect("case x");
    assert_eq!(x["group"], "PSL(2,13)");
    assert_eq!(x["surfaces"]["kind"], "finite");
    assert_eq!(x["surfaces"]["count"], 3);
}

#[test]
fn output_is_independent_of_thread_count() {
    let one = run(&["classify", "--p", "7", "--threads", "1"]);
    let four = run(&["classify", "--p", "7", "--threads", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
    let h1 = run(&["hypermaps", "--p", "7", "--json", "--threads", "1"]);
    let h3 = run(&["hypermaps", "--p", "7", "--json", "--threads", "3"]);
    assert_eq!(stdout(&h1), stdout(&h3));
}

#[test]
fn usage_errors_exit_two_and_name_the_token() {
    let o = run(&["count-kernels", "--sig", "0;5,5,q", "--group", "C5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`q`"), "{}", stderr(&o));

    let o = run(&["count-kernels", "--sig", "0;5,5,5,5", "--group", "Q7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`Q7`"), "{}", stderr(&o));

    let o = run(&["enumerate-signatures", "--rho", "x/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("x/2"), "{}", stderr(&o));

    let o = run(&["classify", "--p", "13", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--frobnicate"));

    assert_eq!(run(&["classify", "--p", "15"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn exhausted_budget_is_an_error_not_a_truncation() {
    let o = run(&["count-kernels", "--sig", "0;2,3,7", "--group", "PSL(2,13)", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("budget"));
    let o = run(&["count-kernels", "--sig", "0;2,3,7", "--group", "PSL(2,13)", "--budget", "100000"]);
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn subcommands_produce_text_and_json() {
    for sub in ["hypermaps", "nonorientable", "jacobian"] {
        let text = run(&[sub, "--p", "7"]);
        assert_eq!(text.status.code(), Some(0), "{sub}: {}", stderr(&text));
        assert!(!stdout(&text).is_empty());
        let json = run(&[sub, "--p", "7", "--json"]);
        let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
        assert!(!v.as_array().unwrap().is_empty(), "{sub}");
    }
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

#[test]
fn verify_exit_code_follows_the_report() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 fail"));

    // Without the documented deviations the same discrepancies are failures.
    let dir = std::env::temp_dir().join(format!("census-data-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for entry in std::fs::read_dir(data_dir()).unwrap() {
        let path = entry.unwrap().path();
        std::fs::copy(&path, dir.join(path.file_name().unwrap())).unwrap();
    }
    std::fs::write(dir.join("deviations.txt"), "# census-data v1\n").unwrap();
    let o =
        Command::new(env!("CARGO_BIN_EXE_genus-census")).arg("verify").env("CENSUS_DATA_DIR", &dir).output().unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL") && l.contains("sigma rho=8")));
}

#[test]
fn missing_data_dir_is_reported() {
    let o = Command::new(env!("CARGO_BIN_EXE_genus-census"))
        .arg("verify")
        .env("CENSUS_DATA_DIR", "/nonexistent/census-data")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sigma.txt") || stderr(&o).contains("cannot read"));
}
