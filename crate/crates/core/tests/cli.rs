use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besselprime")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn moments_json_is_byte_exact() {
    let o = bin(&["moments", "--nu", "1", "--max-order", "4", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        format!(
            "{{\"command\":\"moments\",\"nu\":\"1\",\"result\":{{\"moments\":[\"3/4\",\"0\",\"17/96\",\"0\",\"79/1536\"]}},\"version\":\"{}\"}}\n",
            env!("CARGO_PKG_VERSION")
        )
    );
}

#[test]
fn classify_text() {
    let o = bin(&["classify", "--nu", "-1/2", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "complex_count=2 imaginary_pair=true case=minus1_to_0\n");
}

#[test]
fn nuk_value_in_bracket() {
    let o = bin(&["nuk", "--k", "2", "--tol", "1e-15"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let x: f64 = v["result"]["value"].as_str().unwrap().parse().unwrap();
    assert!(x > -2.5 && x < -2.0, "{x}");
}

#[test]
fn hankel_check_exits_zero() {
    let o = bin(&["hankel", "--check", "--nu", "1", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn qpoly_coefficients() {
    let o = bin(&["qpoly", "--nu", "1", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["q"][2], serde_json::json!(["-1/8", "0", "1/2"]));
}

#[test]
fn scan_rows_are_ordered() {
    let o = bin(&["scan", "--from", "-3", "--to", "0", "--step", "0.25"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("nu,complex_count,imaginary_pair,counted_negatives,jp1,jp2,jp3"));
    let nus: Vec<f64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(nus.len(), 13);
    assert!(nus.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["moments", "--nu", "x"]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
    let o = bin(&["ppoly", "--nu", "0", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: NonpositiveNu"));
    assert_eq!(bin(&["--version"]).status.code(), Some(0));
}
