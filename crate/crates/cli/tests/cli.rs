use std::process::{Command, Output};

use serde_json::Value;

fn vdwshock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vdwshock"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn header(args: &[&str]) -> String {
    stdout(&vdwshock(args)).lines().next().unwrap().to_string()
}

#[test]
fn csv_headers_are_fixed() {
    assert_eq!(
        header(&["table"]),
        "beta_i,btilde,admissible,j,phi_star_deg,fixture_j,unshifted_j"
    );
    assert_eq!(
        header(&["field"]),
        "xi_over_kappa0,theta,region,rho1,formula_tag"
    );
    assert_eq!(
        header(&["front"]),
        "btilde,gradient_jump,shock_locus_coefficient,shock_speed,shock_strength"
    );
    assert_eq!(
        header(&["inner"]),
        "r_prime,theta_prime,eta,s_r,s_d,sonic_s,sonic_r,u_reflected,u_diffracted,u_linear,flow_type"
    );
}

#[test]
fn table_blanks_follow_admissibility() {
    let out = stdout(&vdwshock(&["table"]));
    for line in out.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[2] == "false", cells[3].is_empty(), "{line}");
    }
}

#[test]
fn field_centre_column_tends_to_four_thirds() {
    let out = stdout(&vdwshock(&[
        "field",
        "--field-x-min",
        "1e-9",
        "--field-x-max",
        "0.5",
    ]));
    for line in out.lines().skip(1).take(28) {
        let rho: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert!((rho - 4.0 / 3.0).abs() < 1e-6, "{line}");
    }
}

#[test]
fn merge_point_is_reported_singular() {
    let out = stdout(&vdwshock(&["field"]));
    let singular: Vec<&str> = out.lines().filter(|l| l.ends_with(",singular")).collect();
    assert_eq!(
        singular,
        ["1.0,90.0,boundary:reflected_line+sonic_arc,,singular"]
    );
}

#[test]
fn criterion_report_is_json() {
    let out = vdwshock(&["criterion", "--beta-i", "1.2"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["beta_i"], 1.2);
    assert!((v["j"].as_f64().unwrap() - 0.6421).abs() < 1e-4);
}

#[test]
fn inadmissible_ratio_is_reported_not_rejected() {
    let out = vdwshock(&["criterion", "--beta-i", "9"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["admissible"], false);
    assert!(v["j"].is_null());
}

#[test]
fn config_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"btilde": 0.2, "inner_r_count": 3, "inner_theta_count": 2}"#,
    )
    .unwrap();
    let path = dir.path().join("inner.csv");
    let out = vdwshock(&[
        "inner",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 7);
}

fn error_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn validation_errors_exit_two_with_json() {
    let out = vdwshock(&["criterion", "--btilde", "1.2"]);
    assert_eq!(out.status.code(), Some(2));
    let e = error_of(&out);
    assert_eq!(e["error"], "config");
    assert!(e["message"]
        .as_str()
        .unwrap()
        .contains("btilde must be below 1"));

    let out = vdwshock(&["field", "--alpha-deg", "90"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(error_of(&out)["message"]
        .as_str()
        .unwrap()
        .contains("alpha < pi/2"));

    let out = vdwshock(&["criterion", "--beta-i", "-1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = vdwshock(&["front", "--front-ray-deg", "30"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(error_of(&out)["message"]
        .as_str()
        .unwrap()
        .contains("shock ray"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{\n  \"gamma\": 1.4,\n  \"alpha_deg\": ,\n}").unwrap();
    let out = vdwshock(&["table", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(error_of(&out)["message"]
        .as_str()
        .unwrap()
        .contains("line 3"));
}

#[test]
fn check_lists_each_criterion_once() {
    let out = vdwshock(&["check"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for k in 1..=9 {
        let prefix = format!("{k}_");
        assert_eq!(
            names.iter().filter(|n| n.starts_with(&prefix)).count(),
            1,
            "{k}"
        );
    }
    let failures = v["failures"].as_u64().unwrap();
    assert_eq!(out.status.code(), Some(if failures == 0 { 0 } else { 3 }));
}
