use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const STAR: &str = "1/2,1/2,-1/8,1/8,1/8";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trinoid")).args(args).output().expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("trinoid-cli-{}-{name}", std::process::id()))
}

#[test]
fn certify_reference_parameters() {
    let o = run(&["certify", "--params", STAR, "--t0", "4/5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["verdict"], "Unitarisable");
    assert_eq!(v["t0"], "4/5");
    assert_eq!(v["sign_table"]["++"], "-");
    // byte-identical on a second run
    assert_eq!(run(&["certify", "--params", STAR, "--t0", "4/5"]).stdout, o.stdout);
}

#[test]
fn zero_p_exits_with_structured_error() {
    let o = run(&["certify", "--params", "1/2,1/2,-1/8,1/8,0", "--t0", "4/5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "sign_assumption");
}

#[test]
fn weights_of_the_unbalanced_example() {
    let o = run(&["weights", "--params", "1/2,1/4,1/4,17/128,1/8"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["w_inf"].as_f64(), Some(0.0));
    assert_eq!(v["w_inf_over_pi"], "0/1");
    assert_eq!(v["balanced"], false);
    let end0 = v["balancing"].as_array().unwrap().iter().find(|b| b["end"] == "0").unwrap();
    assert_eq!(end0["holds"], false);
}

#[test]
fn decimals_need_approx_and_never_certify() {
    assert_eq!(run(&["weights", "--params", "0.5,1/2,-1/8,1/8,1/8"]).status.code(), Some(2));
    let o = run(&["weights", "--params", "0.5,0.5,-0.125,0.125,0.125", "--approx"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["w_inf_over_pi"], "1/16");
    assert_eq!(run(&["certify", "--params", STAR, "--t0", "0.8"]).status.code(), Some(2));
    assert_eq!(run(&["certify", "--params", STAR, "--t0", "4/5", "--approx"]).status.code(), Some(2));
}

#[test]
fn malformed_arguments_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["certify", "--t0", "4/5"]).status.code(), Some(2));
    assert_eq!(run(&["connection", "--params", STAR, "--t", "1/2", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["connection", "--params", STAR, "--t", "1/2", "--method", "guess"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--t0", "4/5"]).status.code(), Some(2));
}

#[test]
fn connection_methods_agree() {
    let o = run(&["connection", "--params", STAR, "--t", "1/5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert!(v["ratio_relative_gap"].as_f64().unwrap() < 1e-6);
    assert!(v["asymptotic"]["ratio"][0].as_f64().unwrap() < 0.0);
    let f = json_out(&run(&["connection", "--params", STAR, "--t", "1/5", "--method", "frobenius"]));
    assert!(f.get("asymptotic").is_none());
    assert_eq!(f["frobenius"]["ratio"], v["frobenius"]["ratio"]);
}

#[test]
fn monodromy_and_geometry_reports() {
    let o = run(&["monodromy", "--params", STAR, "--t", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["loops"].as_array().unwrap().len(), 3);
    assert!(v["composition_residual"].as_f64().unwrap() < 1e-7);
    assert!(v["series"]["m2_error"].as_f64().unwrap() < 1e-4);
    let g = json_out(&run(&["geom", "--params", STAR, "--t", "1"]));
    assert_eq!(g["pair"]["simultaneously_unitarisable"], true);
    assert!(!g["axes"]["intersection"].is_null());
}

#[test]
fn sweep_is_independent_of_job_count() {
    let grid = temp("grid.csv");
    std::fs::write(
        &grid,
        "w0,w1,r_hat0,r_hat1,p\n1/2,1/2,-1/8,1/8,1/8\n1/2,1/2,-1/8,1/8,0\n1,2\n501/1000,1/2,-1/8,1/8,1/8\n",
    )
    .unwrap();
    let g = grid.to_str().unwrap();
    let one = run(&["sweep", "--grid", g, "--t0", "4/5", "--jobs", "1"]);
    let four = run(&["sweep", "--grid", g, "--t0", "4/5", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header = rd.headers().unwrap().clone();
    assert_eq!(&header[11], "verdict");
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[0][11], "Unitarisable");
    assert_eq!(rows[0].iter().skip(6).take(4).collect::<Vec<_>>(), ["-", "+", "+", "+"]);
    assert_eq!(&rows[1][17], "sign_assumption");
    assert_eq!(&rows[2][11], "error");
    assert_eq!(&rows[3][11], "Unitarisable");

    let out = temp("sweep.csv");
    let o = run(&["sweep", "--grid", g, "--t0", "4/5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), text);
    let _ = std::fs::remove_file(grid);
    let _ = std::fs::remove_file(out);
}

#[test]
fn missing_grid_is_an_io_error() {
    let o = run(&["sweep", "--grid", "/nonexistent/grid.csv", "--t0", "4/5"]);
    assert_eq!(o.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "io");
}
