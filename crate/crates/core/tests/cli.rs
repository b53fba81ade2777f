use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knot-entropy")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn sequence_golden() {
    let cases: &[(&[&str], &str)] = &[
        (&["sequence", "3_1", "--rmax", "6"], "r,order\n1,1\n2,3\n3,4\n4,3\n5,1\n6,0\n"),
        (&["sequence", "4_1", "--rmax", "4"], "r,order\n1,1\n2,5\n3,16\n4,45\n"),
        (&["sequence", "0_1", "--rmax", "3"], "r,order\n1,1\n2,1\n3,1\n"),
    ];
    for (args, want) in cases {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), *want);
    }
}

#[test]
fn sequence_json_keeps_exact_integers() {
    let o = bin(&["sequence", "7_4", "--rmax", "200", "--json"]);
    let text = stdout(&o);
    let v = json(&o);
    let last = v["orders"][199].to_string();
    assert!(last.len() > 100, "{last}");
    assert!(text.contains(&last));
    assert!(!last.contains('e') && !last.contains('.'));
}

#[test]
fn analyze_five_two() {
    let o = bin(&["analyze", "5_2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["spectrum"]["entries"]["2"]["exponent"], "1");
    assert_eq!(v["spectrum"]["entries"]["inf"]["value"]["lo"], 0.0);
    assert_eq!(v["spectrum"]["entries"]["inf"]["value"]["hi"], 0.0);
    let m = v["mahler"]["enclosure"]["lo"].as_f64().unwrap();
    assert!((m - std::f64::consts::LN_2).abs() < 1e-9);
    assert_eq!(v["obstruction"]["no_obstruction"], false);
    assert_eq!(v["obstruction"]["witnesses"][0], 2);
    assert_eq!(v["leading_decomposition"]["holds"], true);
    assert_eq!(v["polynomial"], "2t^2 - 3t + 2");
}

#[test]
fn analyze_unknot_and_coefficients() {
    let v = json(&bin(&["analyze", "0_1"]));
    let entries = v["spectrum"]["entries"].as_object().unwrap();
    assert_eq!(entries.keys().collect::<Vec<_>>(), vec!["inf"]);
    assert_eq!(v["mahler"]["enclosure"]["hi"], 0.0);

    let v = json(&bin(&["analyze", "--coeffs", "2,-5,2"]));
    assert_eq!(v["spectrum"]["entries"]["2"]["exponent"], "1");
    let inf = v["spectrum"]["entries"]["inf"]["value"]["lo"].as_f64().unwrap();
    assert!((inf - std::f64::consts::LN_2).abs() < 1e-12);
    let total = v["spectrum"]["grand_total"]["hi"].as_f64().unwrap();
    assert!((total - 1.386_294_361_119_890_6).abs() < 1e-12);
}

#[test]
fn output_is_deterministic_with_sorted_keys() {
    let a = stdout(&bin(&["analyze", "6_3"]));
    let b = stdout(&bin(&["analyze", "6_3"]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn input_errors_exit_one() {
    let o = bin(&["analyze", "no_such_knot"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown knot"));
    assert_eq!(bin(&["sequence", "--coeffs", "1,1", "--rmax", "3"]).status.code(), Some(1));
    assert_eq!(bin(&["analyze", "--coeffs", "0,0"]).status.code(), Some(1));
    assert_eq!(bin(&["bogus"]).status.code(), Some(1));
}

#[test]
fn growth_reports() {
    let v = json(&bin(&["growth", "4_1", "--rmax", "100"]));
    assert!(v["report"]["deviation"].as_f64().unwrap() < 1e-4);
    let v = json(&bin(&["growth", "5_2", "--rmax", "400"]));
    assert!(v["report"]["deviation"].as_f64().unwrap() < 0.02);
    let v = json(&bin(&["growth", "3_1", "--rmax", "100"]));
    assert_eq!(v["periodicity"]["period"], 6);
    assert_eq!(v["periodicity"]["periodic"], true);
}

#[test]
fn growth_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.csv");
    let o = bin(&["growth", "4_1", "--rmax", "60", "--window", "20:60", "--plot-data", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,log_order_over_r,mahler_midpoint"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 41);
    assert!(rows[0].starts_with("20,"));
}

#[test]
fn table_check_builtin_and_files() {
    let o = bin(&["table-check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("10/10 passed"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "5_2,2,-3,2\nbad,1,1\n").unwrap();
    let o = bin(&["table-check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 2"));

    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let o = bin(&["table-check", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no records"));

    let good = dir.path().join("good.csv");
    std::fs::write(&good, "name,coefficients\n4_1,1,-3,1\n7_2,3,-5,3\n").unwrap();
    let o = bin(&["table-check", good.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o).as_array().unwrap().len(), 2);
}
