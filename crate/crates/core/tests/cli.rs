use std::process::{Command, Output};

use exciton_qft::circuit_sim::dft_matrix;
use exciton_qft::exciton_ring::{full_spectrum, RingModel};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exciton-qft"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

#[test]
fn spectrum_marks_lowest_and_bright_rows() {
    let v = json(&["spectrum", "--half-size", "8"]);
    assert_eq!(v["schema"], 1);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    let lowest: Vec<i64> = rows
        .iter()
        .filter(|r| r["is_lowest"] == true)
        .map(|r| r["n"].as_i64().unwrap())
        .collect();
    let bright: Vec<i64> = rows
        .iter()
        .filter(|r| r["is_bright"] == true)
        .map(|r| r["n"].as_i64().unwrap())
        .collect();
    assert_eq!(lowest, vec![8]);
    assert_eq!(bright, vec![-7, 7]);
    assert_eq!(rows[0]["energy"], -2.0);
}

#[test]
fn decoupled_spectrum_is_flat() {
    let v = json(&["spectrum", "--half-size", "8", "--v0", "0", "--e0", "1.5"]);
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["energy"] == 1.5 && r["is_lowest"] == true));
}

#[test]
fn eighteen_site_csv_matches_library() {
    let text = stdout(&["spectrum", "--half-size", "9", "--format", "csv"]);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 18);
    let spectrum = full_spectrum(&RingModel::acidophila());
    for (row, entry) in rows.iter().zip(spectrum.entries()) {
        assert_eq!(row[0].parse::<i64>().unwrap(), entry.n);
        assert!((row[2].parse::<f64>().unwrap() - entry.energy).abs() < 1e-13);
    }
    // ±n pairs print identical energies.
    for n in 1..9 {
        let energy = |n: i64| rows.iter().find(|r| r[0] == n.to_string()).unwrap()[2];
        assert_eq!(energy(n), energy(-n));
    }
}

#[test]
fn sixteen_site_spectrum_golden_head() {
    let text = stdout(&["spectrum", "--format", "csv"]);
    let head: Vec<&str> = text.lines().take(6).collect();
    assert_eq!(
        head,
        [
            "n,k,energy,is_lowest,is_bright",
            "8,15,-2,true,false",
            "-7,0,-1.84775906502257,false,true",
            "7,14,-1.84775906502257,false,true",
            "-6,1,-1.41421356237309,false,false",
            "6,13,-1.41421356237309,false,false",
        ]
    );
}

#[test]
fn verify_exit_codes() {
    for half in ["8", "9"] {
        let v = json(&["verify", "--half-size", half]);
        assert_eq!(v["verified"], true);
        assert!((v["min_fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    }
    assert_eq!(
        run(&["verify", "--half-size", "8", "--tolerance", "0"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn four_qubit_dump_golden() {
    assert_eq!(
        stdout(&["circuit", "-n", "4", "--dump", "--format", "csv"]),
        "index,kind,targets,p\n\
         0,H,0,\n1,CRp,1 0,2\n2,CRp,2 0,3\n3,CRp,3 0,4\n\
         4,H,1,\n5,CRp,2 1,2\n6,CRp,3 1,3\n\
         7,H,2,\n8,CRp,3 2,2\n\
         9,H,3,\n\
         10,SWAP,0 3,\n11,SWAP,1 2,\n"
    );
    let v = json(&["circuit", "-n", "4", "--dump"]);
    assert_eq!(v["n_qubits"], 4);
    assert_eq!(v["gates"].as_array().unwrap().len(), 12);
}

#[test]
fn checks_pass_for_small_and_large_registers() {
    for n in ["1", "8"] {
        let v = json(&["circuit", "-n", n, "--check"]);
        assert_eq!(v["passed"], true);
        assert!(v["max_abs_diff"].as_f64().unwrap() <= 1e-10);
    }
}

#[test]
fn unitary_csv_parses_back_to_dft() {
    let text = stdout(&["circuit", "-n", "3", "--unitary", "--format", "csv"]);
    let dft = dft_matrix(8);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    for (r, line) in lines.iter().enumerate() {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields.len(), 16);
        for c in 0..8 {
            assert!((fields[2 * c] - dft[(r, c)].re).abs() < 1e-14);
            assert!((fields[2 * c + 1] - dft[(r, c)].im).abs() < 1e-14);
        }
    }
}

#[test]
fn approx_table() {
    let v = json(&["approx"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 18);
    assert!((rows[0]["fidelity"].as_f64().unwrap() - 0.9428).abs() < 1e-4);
    assert_eq!(v["fractional_qubits"], 4.16992500144231);
    let csv = stdout(&["approx", "--format", "csv"]);
    assert!(csv
        .starts_with("# target_dimension=18 circuit_qubits=4 fractional_qubits=4.16992500144231"));
    assert_eq!(csv.lines().nth(2), Some("0,0,0.942809041582064"));
}

#[test]
fn hsp_examples() {
    let v = json(&[
        "hsp",
        "--group",
        "16",
        "--subgroup-order",
        "1",
        "--offset",
        "3",
    ]);
    assert_eq!(
        (v["recovered"].as_u64(), v["match"].as_bool()),
        (Some(16), Some(true))
    );
    let v = json(&[
        "hsp",
        "--group",
        "18",
        "--subgroup-order",
        "3",
        "--offset",
        "1",
    ]);
    assert_eq!(
        (
            v["generator"].as_u64(),
            v["recovered"].as_u64(),
            v["match"].as_bool()
        ),
        (Some(6), Some(6), Some(true))
    );
    assert_eq!(v["group_order"], 18);
    assert_eq!(v["subgroup_order"], 3);
}

#[test]
fn config_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    let out = dir.path().join("hsp.csv");
    std::fs::write(
        &cfg,
        format!(
            "group = 18\nsubgroup-order = 9\nformat = \"csv\"\nout = {:?}\n",
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let status = run(&["hsp", "--config", cfg.to_str().unwrap(), "--offset", "4"]);
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        "group_order,subgroup_order,coset_offset,generator,recovered,match\n18,9,4,2,2,true\n"
    );
}

#[test]
fn bad_arguments_print_usage() {
    let out = run(&["spectrum", "--half-size", "nine"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    let out = run(&["hsp", "--group", "16", "--subgroup-order", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not divide"));
}
