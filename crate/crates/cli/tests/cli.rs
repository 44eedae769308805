use std::process::{Command, Output};

fn sgweil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgweil"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn find_prints_quadruple() {
    let out = sgweil(&["find", "--g", "83"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "g,p,a,s\n83,311,24,2\n");
}

#[test]
fn find_without_prime_exits_one() {
    let out = sgweil(&["find", "--g", "5", "--p-max", "43"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no prime"));
}

#[test]
fn bad_dimension_exits_two() {
    assert_eq!(sgweil(&["find", "--g", "7"]).status.code(), Some(2));
    assert_eq!(sgweil(&["limit", "--g", "4"]).status.code(), Some(2));
    assert_eq!(sgweil(&["density", "--g", "11", "--x-max", "0"]).status.code(), Some(2));
}

#[test]
fn oversized_sieve_exits_three() {
    let out = sgweil(&["density", "--g", "11", "--x-max", "1e12"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn certify_failure_names_first_check() {
    let out = sgweil(&["certify", "--g", "11", "--p", "47", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("check:P2,FAIL"), "{text}");
}

#[test]
fn certify_json_fields() {
    let out = sgweil(&["certify", "--g", "11", "--p", "59", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["body"]["aut_order"], 46);
    assert_eq!(doc["body"]["cm_discriminant"], "-23");
    assert_eq!(doc["body"]["degree_d"], 11);

    let out = sgweil(&["certify", "--g", "5", "--p", "47", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["body"]["aut_order"], 22);
    assert_eq!(doc["body"]["small_dimension_case"], false);
}

#[test]
fn classnum_accepts_negative() {
    let out = sgweil(&["classnum", "--disc", "-92"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "discriminant,class_number\n-92,3\n");
    assert_eq!(sgweil(&["classnum", "--disc", "5"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("limit.md");
    let out = sgweil(&["limit", "--g", "5", "--format", "md", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("| g |"), "{text}");
    assert!(text.contains("| 5 | -44 | 3 | 2 | 15 | 0.13333333 |"), "{text}");
}

#[test]
fn unwritable_output_exits_one() {
    let out = sgweil(&["limit", "--g", "5", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn density_series_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.csv");
    let out = sgweil(&[
        "density", "--g", "11", "--x-max", "1000", "--series", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("1000,22,168,11,84,0.13095238,0.02056277\n"));
    let series = std::fs::read_to_string(&path).unwrap();
    let mut lines = series.lines();
    assert_eq!(lines.next(), Some("p,count_pg,count_p,f_num,f_den,f_decimal"));
    assert_eq!(lines.count(), 168);
}

#[test]
fn plot_is_svg_with_limit_line() {
    let out = sgweil(&["plot", "--g", "11", "--x-max", "10000"]);
    assert_eq!(out.status.code(), Some(0));
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("class=\"limit\"").count(), 1);
    assert_eq!(svg.matches("<circle").count(), 1229);
}

#[test]
fn scan_general_m() {
    let out = sgweil(&["scan", "--g", "5", "--p-max", "50", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "47,12,2"));
}
