use std::process::{Command, Output};

use serde_json::Value;

fn dirac2d(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirac2d")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Vec<Value> {
    let out = dirac2d(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str::<Value>(&stdout(&out)).unwrap().as_array().unwrap().clone()
}

#[test]
fn table1_matches_golden_file() {
    let out = dirac2d(&["tables", "t1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), include_str!("golden/table1.txt"));
}

#[test]
fn table2_matches_golden_file() {
    let out = dirac2d(&["tables", "t2"]);
    assert!(out.status.success());
    let got = stdout(&out);
    let want = include_str!("golden/table2.txt");
    for (g, w) in got.lines().zip(want.lines()) {
        assert_eq!(g, w);
    }
    assert_eq!(got, want);
}

#[test]
fn unknown_table_is_a_usage_error() {
    assert_eq!(dirac2d(&["tables", "t3"]).status.code(), Some(2));
}

#[test]
fn levels_reproduce_reference_energies() {
    let rows = json(&["levels", "--n-max", "3", "--format", "json"]);
    assert_eq!(rows.len(), 9);
    let labels: Vec<&str> = rows.iter().map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["1s1/2", "2s1/2", "2p1/2", "2p3/2", "3s1/2", "3p1/2", "3p3/2", "3d3/2", "3d5/2"]);
    assert_eq!(rows[3]["energy"].as_f64(), Some(-0.222_223_537_086));

    let rows = json(&["levels", "--n-max", "1", "--format", "json"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["energy"].as_f64(), Some(-2.000_106_514_052));
    assert!(rows[0]["mu"].is_null());
}

#[test]
fn supercritical_charge_exits_three() {
    let out = dirac2d(&["levels", "--Z", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("supercritical"));
}

#[test]
fn zeeman_examples() {
    let row = &json(&["zeeman", "--n", "1", "--kappa", "1/2", "--mu", "1/2", "--format", "json"])[0];
    assert!((row["shift_e1"].as_f64().unwrap() - 0.499_973_37).abs() < 5e-9);
    assert_eq!(row["shift_nonrel"].as_f64(), Some(0.5));

    let row = &json(&["zeeman", "--n", "2", "--kappa", "-1/2", "--mu", "1/2", "--format", "json"])[0];
    assert!((row["shift_e1"].as_f64().unwrap() + 2.9586e-6).abs() < 5e-10);
    assert_eq!(row["shift_nonrel"].as_f64(), Some(0.0));

    let row = &json(&["zeeman", "--n", "3", "--kappa", "5/2", "--mu", "-5/2", "--format", "json"])[0];
    assert!((row["shift_e1"].as_f64().unwrap() + 1.499_994_67).abs() < 5e-9);
    assert_eq!(row["mu"], "-5/2");
}

#[test]
fn single_routes_and_field_energy() {
    for route in ["closed", "quadrature", "both"] {
        let row = &json(&["zeeman", "--n", "2", "--kappa", "1/2", "--route", route, "--B", "1e-3", "--format", "json"])[0];
        let e1 = row["shift_e1"].as_f64().unwrap();
        assert!((e1 - 0.499_997_04).abs() < 5e-9, "{route}");
        let shifted = row["energy_in_field"].as_f64().unwrap();
        assert!((shifted - (row["energy"].as_f64().unwrap() + 1e-3 * e1)).abs() < 2e-12);
    }
}

#[test]
fn route_disagreement_exits_four() {
    let out = dirac2d(&["zeeman", "--n", "2", "--kappa", "-1/2", "--mu", "1/2", "--route-tolerance", "0"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn invalid_states_and_flags_are_usage_errors() {
    for args in [
        &["zeeman", "--n", "1", "--kappa", "-1/2"][..],
        &["zeeman", "--n", "2", "--kappa", "0.5"],
        &["zeeman", "--n", "2", "--kappa", "3/2", "--mu", "1/2"],
        &["levels", "--n-max", "0"],
        &["levels", "--format", "xml"],
        &["levels", "--c", "-1"],
    ] {
        assert_eq!(dirac2d(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn wavefunction_samples() {
    let out = dirac2d(&["wavefunction", "--n", "1", "--kappa", "1/2", "--samples", "3", "--r-max", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["r", "F", "G", "density"]);
    let rows: Vec<Vec<f64>> =
        reader.records().map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][0], 1.0);
    assert!(rows.iter().all(|r| r[0] > 0.0 && r[1] > 0.0));

    let rows = json(&["wavefunction", "--n", "2", "--kappa", "1/2", "--samples", "200", "--r-max", "20", "--format", "json"]);
    let signs: Vec<bool> = rows.iter().map(|r| r["F"].as_f64().unwrap() > 0.0).collect();
    assert_eq!(signs.windows(2).filter(|w| w[0] != w[1]).count(), 1);
}

#[test]
fn verify_passes_and_negative_control_fails() {
    let out = dirac2d(&["verify"]);
    assert!(out.status.success());
    let base = stdout(&out).lines().filter(|l| l.starts_with("PASS")).count();
    assert_eq!(base, 10);

    let out = dirac2d(&["verify", "--with-grid"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), base + 4);

    let out = dirac2d(&["verify", "--tolerance-scale", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).lines().any(|l| l.starts_with("FAIL")));
}

fn type_matches(value: &Value, ty: &Value) -> bool {
    match ty {
        Value::Array(options) => options.iter().any(|t| type_matches(value, t)),
        Value::String(t) => match t.as_str() {
            "string" => value.is_string(),
            "integer" => value.is_u64() || value.is_i64(),
            "number" => value.is_number(),
            "null" => value.is_null(),
            "object" => value.is_object(),
            "array" => value.is_array(),
            _ => false,
        },
        _ => false,
    }
}

#[test]
fn json_follows_documented_schema() {
    let schema: Value = serde_json::from_str(include_str!("../../../docs/output_record.schema.json")).unwrap();
    let item = &schema["items"];
    let props = item["properties"].as_object().unwrap();
    let required: Vec<&str> = item["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let mut rows = json(&["levels", "--n-max", "2", "--format", "json"]);
    rows.extend(json(&["zeeman", "--n", "3", "--kappa", "-3/2", "--mu", "3/2", "--B", "1e-4", "--format", "json"]));
    for row in rows {
        let obj = row.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        assert_eq!(keys.len(), required.len());
        for k in &required {
            assert!(obj.contains_key(*k), "missing {k}");
        }
        for (k, v) in obj {
            let spec = props.get(k).unwrap_or_else(|| panic!("undocumented key {k}"));
            assert!(type_matches(v, &spec["type"]), "{k} = {v}");
        }
    }
}

#[test]
fn csv_and_json_carry_identical_values() {
    let args = ["zeeman", "--n", "3", "--kappa", "-1/2", "--mu", "-1/2", "--B", "2e-4"];
    let row = &json(&[&args[..], &["--format", "json"]].concat())[0];
    let out = dirac2d(&[&args[..], &["--format", "csv"]].concat());
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        ["label", "n", "n_prime", "kappa", "mu", "l", "energy", "shift_e1", "shift_nonrel", "energy_in_field"]
    );
    let record = reader.records().next().unwrap().unwrap();
    for (key, field) in header.iter().zip(record.iter()) {
        match &row[key] {
            Value::String(s) => assert_eq!(s, field),
            Value::Number(n) => assert_eq!(n.as_f64().unwrap(), field.parse::<f64>().unwrap(), "{key}"),
            other => panic!("{key}: {other}"),
        }
    }
}
