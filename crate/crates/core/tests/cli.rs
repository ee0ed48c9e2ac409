use std::process::{Command, Output};

fn opcheb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opcheb"))
        .args(args)
        .env_remove("OPCHEB_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn coeffs_table() {
    let out = opcheb(&["coeffs", "--m", "2", "--p", "1", "--count", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let t: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(t, ["0/1", "1/2", "1/3", "1/6"]);
}

#[test]
fn coeffs_chebyshev_case() {
    let out = opcheb(&[
        "coeffs",
        "--m",
        "2",
        "--p",
        "0",
        "--count",
        "8",
        "--derived",
    ]);
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows[1][1], "1/2");
    assert!(rows[2..].iter().all(|r| r[1] == "1/4"));
    assert_eq!(text.lines().next().unwrap(), "n,t,t_decimal,r,s");
}

#[test]
fn m_one_is_rejected() {
    let out = opcheb(&["coeffs", "--m", "1", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m >= 2"));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(
        opcheb(&["coeffs", "--m", "2", "--p", "1/0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        opcheb(&["polys", "--m", "2", "--p", "-2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        opcheb(&["measure", "--m", "2", "--p", "-3/2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(opcheb(&["verify", "--blocks", "x"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_opcheb"))
        .args(["measure", "--m", "2", "--p", "1"])
        .env("OPCHEB_PRECISION", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn polys_are_monic_chebyshev_for_p_zero() {
    let out = opcheb(&["polys", "--m", "2", "--p", "0", "--count", "5"]);
    let expected = "family,index,degree,coeffs\n\
                    P,0,0,1/1\n\
                    P,1,1,0/1;1/1\n\
                    P,2,2,-1/2;0/1;1/1\n\
                    P,3,3,0/1;-3/4;0/1;1/1\n\
                    P,4,4,1/8;0/1;-1/1;0/1;1/1\n";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn example_row_matches_polys_row() {
    let ex = stdout(&opcheb(&[
        "example", "--m", "2", "--p", "1", "--n", "0", "--j", "1",
    ]));
    let polys = stdout(&opcheb(&["polys", "--m", "2", "--p", "1", "--count", "5"]));
    assert_eq!(ex.lines().nth(1), polys.lines().nth(5));
    let all = stdout(&opcheb(&["example", "--m", "3", "--p", "5/2", "--n", "1"]));
    let polys = stdout(&opcheb(&[
        "polys", "--m", "3", "--p", "5/2", "--count", "16",
    ]));
    for line in all.lines().skip(1) {
        assert!(polys.lines().any(|l| l == line), "{line}");
    }
}

#[test]
fn polys_json() {
    let out = opcheb(&[
        "polys", "--m", "3", "--p", "2", "--count", "4", "--family", "both", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[3]["degree"], 3);
    assert_eq!(rows[3]["coeffs"].as_array().unwrap().len(), 4);
    assert_eq!(rows[4]["family"], "Q");
}

#[test]
fn verify_cases() {
    for (m, p, blocks) in [("2", "1", "3"), ("3", "0", "3"), ("2", "5/2", "2")] {
        let out = opcheb(&["verify", "--m", m, "--p", p, "--blocks", blocks]);
        assert_eq!(out.status.code(), Some(0), "m={m} p={p}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["passed"], true);
        let checks = v["cases"][0]["checks"].as_array().unwrap();
        assert!(checks.iter().all(|c| c["passed"] == true));
    }
}

#[test]
fn verify_default_matrix() {
    let start = std::time::Instant::now();
    let out = opcheb(&["verify", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(start.elapsed().as_secs() < 60);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert!(rows.iter().all(|r| r.contains(",true,")));
    let cases: std::collections::BTreeSet<(&str, &str)> = rows
        .iter()
        .map(|r| {
            let mut f = r.split(',');
            (f.next().unwrap(), f.next().unwrap())
        })
        .collect();
    assert_eq!(cases.len(), 12);
}

#[test]
fn measure_gram_and_mass() {
    let out = opcheb(&["measure", "--m", "2", "--p", "1", "--gram", "13"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["mass"].as_f64().unwrap().abs() < 1e-8);
    assert!(v["gram"]["max_offdiag"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["support"], serde_json::json!([[-1.0, 1.0]]));
}

#[test]
fn measure_recovery() {
    let out = opcheb(&["measure", "--m", "2", "--p", "2", "--recover", "30"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["recovery"]["max_t_error"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn measure_singular_weight() {
    let out = opcheb(&[
        "measure",
        "--m",
        "2",
        "--p",
        "-1/2",
        "--gram",
        "9",
        "--recover",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["gram"]["max_offdiag"].as_f64().unwrap() <= 1e-9);
    assert!(v["recovery"]["max_t_error"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn measure_extended_precision() {
    let out = Command::new(env!("CARGO_BIN_EXE_opcheb"))
        .args(["measure", "--m", "2", "--p", "1", "--recover", "20"])
        .env("OPCHEB_PRECISION", "30")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["precision"], "double-double");
    assert!(v["recovery"]["max_t_error"].as_f64().unwrap() <= 1e-25);
}

#[test]
fn output_to_file() {
    let path = std::env::temp_dir().join(format!("opcheb-cli-{}.csv", std::process::id()));
    let out = opcheb(&[
        "coeffs",
        "--m",
        "3",
        "--p",
        "2",
        "--count",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn variant_explicit_form_reports_identity_failure() {
    // the alternative coefficients do not divide exactly here
    let out = opcheb(&[
        "example",
        "--m",
        "2",
        "--p",
        "1",
        "--n",
        "1",
        "--j",
        "0",
        "--variant",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let wrong = opcheb(&[
        "example",
        "--m",
        "2",
        "--p",
        "1",
        "--n",
        "1",
        "--j",
        "1",
        "--variant",
    ]);
    assert_eq!(wrong.status.code(), Some(1));
    let ok = opcheb(&[
        "example",
        "--m",
        "2",
        "--p",
        "1",
        "--n",
        "1",
        "--j",
        "3",
        "--variant",
    ]);
    assert_eq!(ok.status.code(), Some(0));
}
