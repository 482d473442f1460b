//! End-to-end runs of the compiled binary: frozen output contracts, exit
//! codes, and byte-determinism of seeded commands.

use std::process::{Command, Output};

fn froblat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_froblat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = froblat(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

/// Data rows of a CSV output, metadata block and column header stripped.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn frobenius_prints_bare_number() {
    assert_eq!(stdout(&["frobenius", "6", "9", "20"]).trim(), "43");
    assert_eq!(stdout(&["frobenius", "2", "3"]).trim(), "1");
}

#[test]
fn non_primitive_input_exits_2() {
    let out = froblat(&["frobenius", "2", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("primitive"));
}

#[test]
fn usage_error_exits_64() {
    let out = froblat(&["frobenius", "--bogus", "6", "9"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn help_exits_0() {
    let out = froblat(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bridge_json_reports_both_sides() {
    let doc: serde_json::Value =
        serde_json::from_str(&stdout(&["bridge", "3", "4", "5"])).expect("valid json");
    assert_eq!(doc["f"], 2);
    assert_eq!(doc["rho_w"]["kind"], "exact");
    assert_eq!(doc["rho_w"]["value"], 14);
    let shifted = doc["scaled_shifted"].as_f64().expect("float");
    assert!((shifted - 14.0 / 60f64.sqrt()).abs() < 1e-12);
    let basis = doc["normalized_basis"].as_array().expect("basis rows");
    assert_eq!(basis.len(), 2);
    assert_eq!(basis[0].as_array().expect("row").len(), 2);
}

#[test]
fn bridge_batch_emits_contract_columns() {
    let text = stdout(&[
        "bridge", "--count", "5", "--dim", "3", "--T", "25", "--seed", "9",
    ]);
    let header = text
        .lines()
        .find(|l| !l.starts_with('#'))
        .expect("column header");
    assert_eq!(header, "a1,a2,a3,F,rho_w,scaled");
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    for row in &rows {
        assert_eq!(row.len(), 6);
        // Exact path in dimension 3: rho_w = F + sum(a) as integers.
        let a: i64 = row[..3].iter().map(|c| c.parse::<i64>().unwrap()).sum();
        let f: i64 = row[3].parse().unwrap();
        let rho_w: i64 = row[4].parse().unwrap();
        assert_eq!(f + a, rho_w);
    }
}

#[test]
fn rho_identity_basis_is_two() {
    assert_eq!(stdout(&["rho", "--dim", "2", "1", "0", "0", "1"]).trim(), "2");
}

#[test]
fn rho_grid_stays_below_exact() {
    let exact: f64 = stdout(&["rho", "--dim", "2", "1", "0.25", "0", "1"])
        .trim()
        .parse()
        .unwrap();
    let lower: f64 = stdout(&["rho", "--dim", "2", "--grid", "64", "1", "0.25", "0", "1"])
        .trim()
        .parse()
        .unwrap();
    assert!(lower <= exact + 1e-12, "grid {lower} above exact {exact}");
    assert!(lower > 0.9 * exact);
}

#[test]
fn sampled_bases_have_unit_covolume() {
    for method in ["haar2d", "schmidt"] {
        let text = stdout(&[
            "sample-lattice",
            "--method",
            method,
            "--dim",
            "2",
            "--count",
            "4",
            "--seed",
            "2",
        ]);
        let rows = csv_rows(&text);
        assert_eq!(rows.len(), 4, "{method}");
        for row in &rows {
            let b: Vec<f64> = row.iter().map(|c| c.parse().unwrap()).collect();
            assert_eq!(b.len(), 4);
            let det = b[0] * b[3] - b[1] * b[2];
            assert!((det.abs() - 1.0).abs() < 1e-9, "{method} det {det}");
        }
    }
}

#[test]
fn seeded_commands_are_byte_deterministic() {
    let args = ["psi", "--source", "haar2d", "--count", "100", "--seed", "7"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = [
        "sample-lattice",
        "--method",
        "schmidt",
        "--dim",
        "2",
        "--count",
        "3",
        "--seed",
        "4",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn psi_curve_is_a_survival_function() {
    let text = stdout(&[
        "psi", "--source", "haar2d", "--count", "200", "--seed", "1", "--grid", "50",
    ]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 51);
    let mut prev = f64::INFINITY;
    for row in &rows {
        let s: f64 = row[1].parse().unwrap();
        assert!((0.0..=1.0).contains(&s));
        assert!(s <= prev, "survival must not increase");
        prev = s;
    }
    assert_eq!(rows[0][1], "1");
    assert_eq!(rows[50][1], "0");
}

#[test]
fn compare_ends_with_a_ks_distance() {
    let text = stdout(&[
        "compare", "--source", "haar2d", "--against", "haar2d", "--count", "100", "--seed", "3",
    ]);
    let ks: f64 = text.lines().last().expect("value line").parse().unwrap();
    assert!((0.0..=1.0).contains(&ks));
    // Both sources drew 100 haar samples; identical streams would give 0.
    assert!(text.contains("# against-seed: 4"));
    assert!(ks > 0.0);
}

#[test]
fn farey_lists_order_4_fractions() {
    let text = stdout(&["farey", "--dim", "2", "--T", "4"]);
    let rows = csv_rows(&text);
    let pairs: Vec<(i64, i64)> = rows
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();
    assert_eq!(pairs, [(0, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4)]);
}

#[test]
fn count_primitive_matches_enumeration() {
    let doc: serde_json::Value =
        serde_json::from_str(&stdout(&["count-primitive", "--dim", "2", "--T", "10"]))
            .expect("valid json");
    // Coprime pairs in [1,10]^2: 63 of them.
    assert_eq!(doc["count"], 63);
    assert!((doc["density"].as_f64().unwrap() - 0.63).abs() < 1e-12);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("curve.csv");
    let args = ["psi", "--source", "haar2d", "--count", "50", "--seed", "6"];
    let direct = stdout(&args);
    let mut with_out: Vec<&str> = args.to_vec();
    let path_str = path.to_str().expect("utf8 path");
    with_out.extend(["--out", path_str]);
    assert_eq!(stdout(&with_out), "");
    assert_eq!(std::fs::read_to_string(&path).expect("file written"), direct);
}
