//! End-to-end tests of the `citesim` binary and the command layer:
//! file formats, round trips, validation behavior and exit codes.

use std::path::Path;
use std::process::Command;

use citesim::cli::csv::parse_results_csv;
use citesim::cli::{cmd_figure, cmd_sweep, ExperimentConfig, Overrides};
use citesim::montecarlo::Method;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_citesim"))
}

fn quick_overrides(dir: &Path) -> Overrides {
    Overrides {
        iterations: Some(10),
        out_dir: Some(dir.to_path_buf()),
        ..Overrides::default()
    }
}

#[test]
fn figure_smoke_run_emits_wellformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let files = cmd_figure(1, &quick_overrides(dir.path())).unwrap();
    assert!(files.csv.ends_with("fig1_results.csv"));
    assert!(files.svg.ends_with("fig1_fig.svg"));

    // CSV re-parses under the documented schema.
    let text = std::fs::read_to_string(&files.csv).unwrap();
    let rows = parse_results_csv(&files.csv, &text).unwrap();
    assert_eq!(rows.len(), 5 * 12);
    // Rows sorted by (n, method name); rate column is detections/iterations.
    let mut keys: Vec<(usize, &str)> = rows.iter().map(|r| (r.n, r.method.name())).collect();
    let sorted = {
        let mut s = keys.clone();
        s.sort();
        s
    };
    assert_eq!(keys, sorted);
    keys.dedup();
    assert_eq!(keys.len(), 60);
    for r in &rows {
        assert!((r.detection_rate - r.detections as f64 / r.iterations as f64).abs() < 1e-6);
    }

    // SVG: one polyline per method, well-formed tag nesting.
    let svg = std::fs::read_to_string(&files.svg).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 5);
    assert_xml_wellformed(&svg);
}

/// Minimal XML well-formedness check: every opened tag closes in order.
fn assert_xml_wellformed(text: &str) {
    let mut stack: Vec<String> = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find('<') {
        rest = &rest[start + 1..];
        let end = rest.find('>').expect("unterminated tag");
        let tag = &rest[..end];
        rest = &rest[end + 1..];
        if tag.starts_with('?') || tag.starts_with('!') {
            continue;
        }
        if let Some(name) = tag.strip_prefix('/') {
            let open = stack.pop().unwrap_or_else(|| panic!("stray closer {name}"));
            assert_eq!(open, name, "mismatched tag");
        } else if !tag.ends_with('/') {
            let name: String = tag
                .chars()
                .take_while(|c| !c.is_whitespace())
                .collect();
            stack.push(name);
        }
    }
    assert!(stack.is_empty(), "unclosed tags: {stack:?}");
}

#[test]
fn sweep_matching_preset_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let fig_dir = dir.path().join("fig");
    let sweep_dir = dir.path().join("sweep");
    std::fs::create_dir_all(&fig_dir).unwrap();
    std::fs::create_dir_all(&sweep_dir).unwrap();

    let fig_files = cmd_figure(3, &quick_overrides(&fig_dir)).unwrap();

    // A config file spelling out the fig3 preset (including its prefix).
    let config_path = dir.path().join("fig3.json");
    std::fs::write(
        &config_path,
        r#"{
            "mu0": 0.5, "mu1": 0.55, "sigma": 1.0,
            "iterations": 10,
            "output_prefix": "fig3"
        }"#,
    )
    .unwrap();
    let sweep_files = cmd_sweep(&config_path, &quick_overrides(&sweep_dir)).unwrap();

    let a = std::fs::read(&fig_files.csv).unwrap();
    let b = std::fs::read(&sweep_files.csv).unwrap();
    assert_eq!(a, b, "preset and equivalent sweep config differ");
}

#[test]
fn malformed_config_exits_2_listing_keys() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    std::fs::write(&config, r#"{"n_grid": [30, 31], "alpha": 5.0}"#).unwrap();
    let out = bin()
        .args(["sweep"])
        .arg(&config)
        .arg("--out-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("n_grid"), "{stderr}");
    assert!(stderr.contains("alpha"), "{stderr}");
}

#[test]
fn missing_data_file_exits_3() {
    let out = bin()
        .args(["fit", "/nonexistent/citations.csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("/nonexistent/citations.csv"), "{stderr}");
}

#[test]
fn malformed_data_row_exits_3_naming_line() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("cites.csv");
    std::fs::write(&data, "citations,factor\n4,0\nfive,1\n").unwrap();
    let out = bin()
        .args(["fit"])
        .arg(&data)
        .arg("--out-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains(":3:"), "{stderr}");
}

#[test]
fn fit_on_simulated_effect_detects_everywhere() {
    // Self-consistency: a large simulated effect must be detected by all
    // five methods at alpha = 0.05.
    use citesim::montecarlo::{generate_dataset, SimConfig};
    let cfg = SimConfig {
        mu0: 0.5,
        mu1: 1.0,
        sigma: 1.0,
        n: 2000,
        ..SimConfig::default()
    };
    let d = generate_dataset(&cfg, 0);
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("sim.csv");
    let mut text = String::from("citations,factor\n");
    for (c, g) in d.citations().iter().zip(d.factor()) {
        text.push_str(&format!("{},{}\n", c, u8::from(*g)));
    }
    std::fs::write(&data, text).unwrap();

    let out = bin()
        .args(["fit"])
        .arg(&data)
        .args(["--zero-policy", "auto", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let report_path = dir.path().join("sim_fit.csv");
    let report = std::fs::read_to_string(&report_path).unwrap();
    let mut seen = 0;
    for line in report.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(Method::parse(fields[0]).is_some(), true);
        let p: f64 = fields[6].parse().unwrap();
        assert!(p < 0.05, "{} did not detect: p = {p}", fields[0]);
        seen += 1;
    }
    assert_eq!(seen, 5);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("zero inflation"), "{stdout}");
}

#[test]
fn fit_zero_policy_governs_method_set() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    let mut text = String::from("citations,factor\n");
    for i in 0..40 {
        text.push_str(&format!("{},{}\n", i % 7 + 1, i % 2));
    }
    std::fs::write(&data, text).unwrap();
    for (policy, expected_methods) in [("truncate", 3), ("plus1", 3), ("both", 5)] {
        let out = bin()
            .args(["fit"])
            .arg(&data)
            .args(["--zero-policy", policy, "--out-dir"])
            .arg(dir.path())
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let report = std::fs::read_to_string(dir.path().join("d_fit.csv")).unwrap();
        let rows = report
            .lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .count();
        assert_eq!(rows, expected_methods, "policy {policy}");
    }
    let out = bin()
        .args(["fit"])
        .arg(&data)
        .args(["--zero-policy", "sometimes"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn same_seed_reproduces_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str, threads: &str| {
        let out_dir = dir.path().join(sub);
        std::fs::create_dir_all(&out_dir).unwrap();
        let out = bin()
            .args(["figure", "2", "--iterations", "8", "--seed", "99", "--threads", threads])
            .arg("--out-dir")
            .arg(&out_dir)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(out_dir.join("fig2_results.csv")).unwrap()
    };
    let a = run("a", "1");
    let b = run("b", "2");
    assert_eq!(a, b);
}

#[test]
fn unwritable_output_path_reports_io_error() {
    let out = bin()
        .args(["figure", "1", "--iterations", "8", "--out-dir", "/nonexistent/dir"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("/nonexistent/dir"), "{stderr}");
}
