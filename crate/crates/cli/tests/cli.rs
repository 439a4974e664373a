//! End-to-end checks of the command-line surface: exit codes, file
//! round trips, determinism across worker counts.

use std::path::Path;
use std::process::{Command, Output};

fn sumfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumfree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn group_info_reports_type_i_data() {
    let out = sumfree(&["group-info", "Z10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# schema=1"));
    assert!(text.contains("type_i_prime,2"));
    assert!(text.contains("mu,1/2"));
    assert!(text.contains("order_q_elements,1"));

    let out = sumfree(&["group-info", "Z9"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("not Type I"));

    let out = sumfree(&["group-info", "Z4xZ2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("type_i_prime,2"));
    // both order-2 listings: element count and subgroup count agree
    assert!(text.contains("order_q_elements,3"));
    assert!(text.contains("index_two_subgroups,3"));
}

#[test]
fn parse_errors_exit_4_with_json_error() {
    let out = sumfree(&["group-info", "Z1"]);
    assert_eq!(out.status.code(), Some(4));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["schema"], 1);
    assert_eq!(err["error"]["code"], 4);
}

#[test]
fn sf0_lists_families_and_rejects_non_type_i() {
    let out = sumfree(&["sf0", "Z5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "# schema=1\n1 4\n2 3\n");

    let out = sumfree(&["sf0", "Z6"]);
    assert_eq!(stdout(&out), "# schema=1\n1 3 5\n");

    let out = sumfree(&["sf0", "Z7"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn count_table_shape_and_values() {
    let out = sumfree(&["count", "Z5", "--m", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema=1"));
    assert_eq!(lines.next(), Some("n,m,exact,leading,lower_bonf,upper_bonf,ratio"));
    assert_eq!(lines.next(), Some("5,2,2,2,2,2,1"));

    let out = sumfree(&["count", "Z10", "--m", "2..5"]);
    assert_eq!(stdout(&out).lines().count(), 2 + 4, "4 data rows for 2..5");

    // empty range: header only, exit 0
    let out = sumfree(&["count", "Z10", "--m", "5..2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn encode_decode_file_round_trip(){
    let dir = std::env::temp_dir().join("sumfree-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("main.cert");
    let cert_str = cert.to_str().unwrap();

    let out = sumfree(&[
        "encode", "main", "--group", "Z20", "--set", "1,5,9,13,17,19", "--beta", "0.45",
        "--gamma", "0.15", "--capital-c", "1", "--verify",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::write(&cert, stdout(&out)).unwrap();

    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.starts_with("main\n"));
    assert_eq!(text.lines().count(), 3);

    let out = sumfree(&["decode", cert_str, "--verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let decoded = stdout(&out);
    assert!(decoded.starts_with("# schema=1\n"));

    // corrupt line 3: nonzero decode exit
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    lines[2] = "1 frog 3".into();
    let bad = dir.join("bad.cert");
    std::fs::write(&bad, lines.join("\n") + "\n").unwrap();
    let out = sumfree(&["decode", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));

    // tampered selection: replay inconsistency
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    lines[2].push_str(" 2");
    std::fs::write(&bad, lines.join("\n") + "\n").unwrap();
    let out = sumfree(&["decode", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn basic_certificate_empty_selection() {
    let dir = std::env::temp_dir().join("sumfree-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("basic.cert");

    // stop size = |V|: S stays empty, A = V
    let out = sumfree(&[
        "encode", "basic", "--group", "Z6", "--cayley", "1,5", "--set", "1,3", "--stop-size", "6",
    ]);
    assert!(out.status.success());
    std::fs::write(&cert, stdout(&out)).unwrap();
    let out = sumfree(&["decode", cert.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "# schema=1\n0 1 2 3 4 5\n");
}

#[test]
fn spectra_matches_cycle_formula() {
    let out = sumfree(&["spectra", "Z12", "--set", "1,11", "--dense"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# schema=1\nindex,eigenvalue\n"));
    // top of the cycle spectrum is the degree
    assert!(text.lines().nth(2).unwrap().starts_with("0,2"));
    assert_eq!(text.lines().count(), 2 + 12);
}

#[test]
fn janson_reports_exact_below_transfer_bound() {
    let out = sumfree(&["--format", "json", "janson", "--graph", "C5", "--m", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["exact"], "1/2");
    assert!(v["bounds"]["transferred_product"].as_f64().unwrap() >= 0.5);
}

#[test]
fn blowup_is_seeded_and_deterministic_across_workers() {
    let a = sumfree(&["--seed", "7", "blowup", "--t", "2", "--part", "4", "--d", "4"]);
    let b = sumfree(&[
        "--seed", "7", "--workers", "1", "blowup", "--t", "2", "--part", "4", "--d", "4",
    ]);
    let c = sumfree(&[
        "--seed", "7", "--workers", "3", "blowup", "--t", "2", "--part", "4", "--d", "4",
    ]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a), stdout(&c));
    // different seed, different graph
    let d = sumfree(&["--seed", "8", "blowup", "--t", "2", "--part", "4", "--d", "4"]);
    assert_ne!(stdout(&a), stdout(&d));
    // spectrum contains −d/t
    let out = sumfree(&["--seed", "7", "blowup", "--t", "2", "--part", "4", "--d", "4", "--spectrum"]);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.contains(",-1.9999999") || l.contains(",-2")));
}

#[test]
fn stability_profile_and_sweep() {
    let out = sumfree(&["stability", "Z10", "--min-size-fraction", "0.4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# schema=1\nsize,schur_count,min_distance\n"));
    // extremal members appear as (5,0,0)
    assert!(text.lines().any(|l| l == "5,0,0"));

    let out = sumfree(&["stability", "Z10", "--min-size-fraction", "0.4", "--sweep"]);
    assert!(stdout(&out).starts_with("# schema=1\ngamma,max_beta\n"));

    // exhaustive guard
    let out = sumfree(&["stability", "Z20", "--min-size-fraction", "0.4"]);
    assert_eq!(out.status.code(), Some(4));
    let out = sumfree(&["stability", "Z20", "--min-size-fraction", "0.4", "--mode", "sample", "--samples", "50"]);
    assert!(out.status.success());
}

#[test]
fn report_rows_and_out_file() {
    let dir = std::env::temp_dir().join("sumfree-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = sumfree(&["--out", path.to_str().unwrap(), "report", "--k-range", "8..9"]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(Path::new(&path)).unwrap();
    assert!(text.starts_with("# schema=1\nn,m,exact,leading,lower_bonf,upper_bonf,ratio\n"));
    // k=8: m in 4..=8 (5 rows); k=9: m in 5..=9 (5 rows)
    assert_eq!(text.lines().count(), 2 + 10);
    for line in text.lines().skip(2) {
        let ratio: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(ratio >= 1.0);
    }
}
