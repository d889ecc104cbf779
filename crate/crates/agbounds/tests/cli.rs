//! End-to-end runs of the binary: text output, the JSON envelope, and exit
//! codes.

use std::process::{Command, Output};

use agbounds::bounds;
use agbounds::curve::{LatticeDivisor, Point, TwoPointCurve};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agbounds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn dim_prints_the_riemann_roch_dimension() {
    let out = run(&["dim", "--curve", "hermitian:3", "--A", "4,0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn step_table_renders_the_worksheet() {
    let out = run(&[
        "table", "kn", "--curve", "hermitian:3", "--l", "0", "--i", "1", "--j", "-7..4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().map(|l| l.trim_end()).collect();
    assert_eq!(
        lines,
        [
            "    j    -7    -6   -5    -4  -3  -2  -1    0   1   2   3    4",
            "d_ref     2     4    6     0   2   4   6    0   2   4   6    0",
            "    k  (-4)  (-1)  (2)  (-3)   0   3   6  (1)   4   7  10  (5)",
            "  d_k     0     2    4     6   0   2   4    6   0   2   4    6",
            " diff    -2    -2   -2     6  -2  -2  -2    6  -2  -2  -2    6",
            "    N     0     0    0     0   1   1   1    0   1   1   1    0",
        ]
    );
}

#[test]
fn chain_bound_json_witness_survives_a_round_trip() {
    let out = run(&["--json", "bound", "chain", "--curve", "suzuki:4", "--C", "12,12"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "bound chain");
    assert_eq!(v["result"]["applicable"], true);
    assert_eq!(v["result"]["value"], 56);
    let chain: Vec<LatticeDivisor> =
        serde_json::from_value(v["witness"]["Chain"].clone()).unwrap();
    assert_eq!(chain.len(), 56);
    let c = TwoPointCurve::suzuki(4).unwrap();
    let thr = c.lattice_class(LatticeDivisor::new(12, 12));
    bounds::verify_chain(&c, Point::P, thr, &chain).unwrap();
}

#[test]
fn inapplicable_bound_exits_with_one() {
    // K + C and A + B + Z sit in different classes
    let out = run(&[
        "bound", "floor", "--curve", "suzuki:2", "--C", "2,2", "--A", "0,13", "--B", "0,13",
        "--Z", "1,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("inapplicable"));
}

#[test]
fn bad_arguments_exit_with_two() {
    let out = run(&["dim", "--curve", "nosuch:3", "--A", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["delta", "set", "--curve", "hermitian:3"]);
    assert_eq!(out.status.code(), Some(2));
}
