use std::process::{Command, Output};

fn racusp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_racusp")).args(args).output().expect("run racusp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = racusp(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn qexp_delta_prime() {
    let v = json(&["qexp", "delta-prime", "--truncation", "4"]);
    assert_eq!(v["valuation"], -1);
    let coeffs = v["coeffs"].as_array().unwrap();
    assert_eq!(coeffs[0], serde_json::json!(["1", "1"]));
    assert_eq!(coeffs[3], serde_json::json!(["47709536", "1"]));
    assert_eq!(coeffs[5], serde_json::json!(["7552626810624", "1"]));
}

#[test]
fn qexp_csv_and_eisenstein_constant() {
    let o = racusp(&["qexp", "eisenstein2", "--truncation", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,coeff\n0,-1/24\n1,1\n2,3\n");
}

#[test]
fn hecke_on_delta() {
    let o = racusp(&["hecke", "--m", "2", "delta", "--truncation", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,coeff\n1,-24\n2,576\n3,-6048\n");
}

#[test]
fn hecke_from_a_file() {
    let dir = std::env::temp_dir().join(format!("racusp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("delta.json");
    let o = racusp(&["qexp", "delta", "--truncation", "12", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["hecke", "--m", "3", "--input", path.to_str().unwrap(), "--truncation", "4"]);
    // T_3 Delta = 252 Delta.
    assert_eq!(v["coeffs"][0], serde_json::json!(["252", "1"]));
    assert_eq!(v["truncation"], 4);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn alpha_and_sv() {
    let a = json(&["alpha", "--m", "3"]);
    assert_eq!(a["rational_part"], "116093250/691");
    assert_eq!(a["symbol"], "sigma");
    let sv = json(&["sv"]);
    assert!(sv["rho"].as_str().unwrap().starts_with("1842.8947269"));
    assert!(sv["sigma"].as_str().unwrap().starts_with("-3.5207704992"));
}

#[test]
fn periods_digits_follow_precision() {
    let v = json(&["periods", "--precision", "30"]);
    assert_eq!(v["precision_digits"], 30);
    let w = v["omega_plus"].as_str().unwrap();
    assert!(w.starts_with("-68916772.8095951947"));
    assert_eq!(w.chars().filter(|c| c.is_ascii_digit()).count(), 30);
}

#[test]
fn mock_json() {
    let v = json(&["mock", "--truncation", "10"]);
    assert_eq!(v["overall_scale"], "39916800");
    let terms = v["terms"].as_array().unwrap();
    let row = terms.iter().find(|t| t["n"] == "2").unwrap();
    assert_eq!(row["a"], "-1490923/64");
    assert_eq!(row["b"], "3/256");
}

#[test]
fn kloosterman_exit_codes() {
    let v = json(&["verify-kloosterman", "--n", "1,2", "--cmax", "50"]);
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(racusp(&["verify-kloosterman", "--n", "5", "--cmax", "2"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(racusp(&["periods", "--precision", "10"]).status.code(), Some(2));
    assert_eq!(racusp(&["periods", "--basepoint", "0.5i"]).status.code(), Some(2));
    assert_eq!(racusp(&["qexp", "eisenstein3"]).status.code(), Some(2));
    assert_eq!(racusp(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(racusp(&["ra-build", "--r", "3", "--s", "3"]).status.code(), Some(2));
    assert_eq!(racusp(&["ra-eval", "--r", "10", "--s", "0", "--z", "0,0.2"]).status.code(), Some(2));
}

#[test]
fn ra_build_schema() {
    let v = json(&["ra-build", "--family", "e", "--r", "1", "--s", "1", "--truncation", "10"]);
    assert_eq!(v["r"], 1);
    let constant = v["terms"].as_array().unwrap().iter().find(|t| t["k"] == -2 && t["m"] == 0 && t["n"] == 0).unwrap();
    assert_eq!(constant["coeff"]["zeta"], "-1/2");
}

#[test]
fn pipeline_is_deterministic() {
    let a = racusp(&["pipeline"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = racusp(&["pipeline"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 12);
    assert_eq!(v["all_passed"], true);
}
