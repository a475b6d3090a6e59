use std::process::{Command, Output};

use mfd_core::analysis::Report;
use mfd_core::verify::{CheckResult, Status};

fn mfd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfd"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_extraspecial_reports_c_and_mu() {
    let o = mfd(&[
        "compute",
        "--group",
        "xsp_p3_expP",
        "--p",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.order, 27);
    assert_eq!(r.c.as_ref().unwrap().value, 9);
    assert_eq!(r.mu.as_ref().unwrap().value, 9);
    assert_eq!(r.center_rank, 1);
}

#[test]
fn compute_with_mu_flag_on_order_p5() {
    let o = mfd(&[
        "compute",
        "--group",
        "phi4_2111a",
        "--p",
        "5",
        "--mu",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.c.as_ref().unwrap().value, 50);
    let mu = r.mu.as_ref().unwrap();
    assert_eq!(mu.value, 50);
    assert_eq!(mu.subgroups.len(), 2);
    assert_eq!(mu.orbits, 2);
    assert_eq!(mu.action.len(), 5);
}

#[test]
fn json_report_round_trips_and_is_stable() {
    let args = [
        "compute",
        "--group",
        "xsp2_x_cp2",
        "--p",
        "3",
        "--dump-table",
        "--format",
        "json",
    ];
    let first = stdout(&mfd(&args));
    let second = stdout(&mfd(&args));
    assert_eq!(first, second);
    let r: Report = serde_json::from_str(&first).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", first);
    assert!(r.table.unwrap().starts_with("# order 243"));
}

#[test]
fn single_thread_output_matches_default() {
    let base = ["verify", "--suite", "smoke", "--format", "json"];
    let many = mfd(&base);
    let one = mfd(&[&base[..], &["--threads", "1"]].concat());
    assert_eq!(many.status.code(), Some(0));
    assert_eq!(stdout(&many), stdout(&one));
    let checks: Vec<CheckResult> = serde_json::from_str(&stdout(&one)).unwrap();
    assert!(checks.iter().all(|c| c.status != Status::Fail));
    assert!(checks.iter().any(|c| c.group == "xsp_p3_expP"
        && c.params == "p=3"
        && c.check == "claim.c"
        && c.computed == "9"));
}

#[test]
fn presentation_file_is_accepted() {
    let dir = std::env::temp_dir().join(format!("mfd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c3c9.pres");
    std::fs::write(&path, "# C3 x C9\ngens a, b;\nrels a^3, b^9, [a, b];\n").unwrap();
    let o = mfd(&[
        "compute",
        "--file",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.c.unwrap().value, 12);
    assert_eq!(r.mu.unwrap().value, 12);

    let inf = dir.join("infinite.pres");
    std::fs::write(&inf, "gens a, b; rels a^2, b^3;").unwrap();
    let o = mfd(&[
        "compute",
        "--file",
        inf.to_str().unwrap(),
        "--enum-limit",
        "5000",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(mfd(&["compute"]).status.code(), Some(2));
    assert_eq!(
        mfd(&["compute", "--group", "no_such_family"]).status.code(),
        Some(2)
    );
    assert_eq!(
        mfd(&["compute", "--group", "phi9", "--p", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mfd(&["verify", "--suite", "nightly"]).status.code(),
        Some(2)
    );
    assert_eq!(mfd(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        mfd(&["compute", "--group", "tower", "--p", "5", "--param", "n"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn catalog_lists_every_family_with_constraints() {
    let o = mfd(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in ["xsp_p3_expP", "phi4_221b", "phi42_3k", "tower", "sd16"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id} missing");
    }
    assert!(text.contains("p >= 5"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&mfd(&["catalog", "--format", "json"]))).unwrap();
    assert!(json.as_array().unwrap().len() >= 20);
}

#[test]
fn verify_single_group_reports_skips_with_reasons() {
    let o = mfd(&[
        "verify", "--group", "xsp_x_cp", "--p", "3", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let checks: Vec<CheckResult> = serde_json::from_str(&stdout(&o)).unwrap();
    let excl = checks
        .iter()
        .find(|c| c.check == "linear-exclusion")
        .unwrap();
    assert_eq!(excl.status, Status::Skipped);
    assert!(excl.reason.as_ref().unwrap().contains("d(Z(G) cap G')"));
}

#[test]
fn timeout_is_reported_as_budget() {
    let o = mfd(&[
        "compute",
        "--group",
        "phi12_ex_g3",
        "--p",
        "5",
        "--timeout",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(3));
}
