//! Results-table CSV emission and parsing.
//!
//! Layout: `#`-prefixed manifest comment lines, then the header
//! `method,n,mu0,mu1,sigma,iterations,detections,failures,detection_rate,mc_se`
//! and one row per (method, n) sorted by (n, method name). Rates carry six
//! decimal places; everything else is plain decimal.

use std::path::Path;

use crate::cli::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::montecarlo::{DetectionSummary, Method};

pub const RESULTS_HEADER: &str =
    "method,n,mu0,mu1,sigma,iterations,detections,failures,detection_rate,mc_se";

/// Render the results table, manifest included, as a CSV string.
pub fn render_results_csv(cfg: &ExperimentConfig, rows: &[DetectionSummary]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# citesim {}\n# config {}\n",
        env!("CARGO_PKG_VERSION"),
        cfg.manifest_json()
    ));
    out.push_str(RESULTS_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{:.6},{:.6}\n",
            r.method.name(),
            r.n,
            r.mu0,
            r.mu1,
            r.sigma,
            r.iterations,
            r.detections,
            r.failures,
            r.detection_rate(),
            r.mc_se()
        ));
    }
    out
}

pub fn write_results_csv(
    path: &Path,
    cfg: &ExperimentConfig,
    rows: &[DetectionSummary],
) -> Result<()> {
    std::fs::write(path, render_results_csv(cfg, rows)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A parsed results row.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultsRow {
    pub method: Method,
    pub n: usize,
    pub mu0: f64,
    pub mu1: f64,
    pub sigma: f64,
    pub iterations: usize,
    pub detections: usize,
    pub failures: usize,
    pub detection_rate: f64,
    pub mc_se: f64,
}

/// Parse a results CSV produced by [`render_results_csv`]; comment lines
/// are skipped, the header is checked, every field must parse.
pub fn parse_results_csv(path: &Path, text: &str) -> Result<Vec<ResultsRow>> {
    let mut rows = Vec::new();
    let mut saw_header = false;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim_end_matches('\r');
        if line.starts_with('#') || line.is_empty() {
            continue;
        }
        if !saw_header {
            if line != RESULTS_HEADER {
                return Err(Error::MalformedRow {
                    path: path.to_path_buf(),
                    line: line_no,
                    message: format!("expected header {RESULTS_HEADER:?}, found {line:?}"),
                });
            }
            saw_header = true;
            continue;
        }
        let bad = |message: String| Error::MalformedRow {
            path: path.to_path_buf(),
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(bad(format!("expected 10 fields, found {}", fields.len())));
        }
        let method = Method::parse(fields[0])
            .ok_or_else(|| bad(format!("unknown method {:?}", fields[0])))?;
        fn num<T: std::str::FromStr>(s: &str, what: &str) -> std::result::Result<T, String> {
            s.parse::<T>()
                .map_err(|_| format!("cannot parse {what} from {s:?}"))
        }
        rows.push(ResultsRow {
            method,
            n: num(fields[1], "n").map_err(&bad)?,
            mu0: num(fields[2], "mu0").map_err(&bad)?,
            mu1: num(fields[3], "mu1").map_err(&bad)?,
            sigma: num(fields[4], "sigma").map_err(&bad)?,
            iterations: num(fields[5], "iterations").map_err(&bad)?,
            detections: num(fields[6], "detections").map_err(&bad)?,
            failures: num(fields[7], "failures").map_err(&bad)?,
            detection_rate: num(fields[8], "detection_rate").map_err(&bad)?,
            mc_se: num(fields[9], "mc_se").map_err(&bad)?,
        });
    }
    if !saw_header {
        return Err(Error::MalformedRow {
            path: path.to_path_buf(),
            line: 1,
            message: "no header line found".into(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rows() -> Vec<DetectionSummary> {
        vec![
            DetectionSummary {
                method: Method::AnovaLogPlus1,
                n: 30,
                mu0: 0.5,
                mu1: 0.55,
                sigma: 1.0,
                iterations: 1000,
                detections: 52,
                failures: 0,
            },
            DetectionSummary {
                method: Method::NbRaw,
                n: 30,
                mu0: 0.5,
                mu1: 0.55,
                sigma: 1.0,
                iterations: 1000,
                detections: 131,
                failures: 2,
            },
        ]
    }

    #[test]
    fn round_trip() {
        let cfg = ExperimentConfig::default();
        let rows = sample_rows();
        let text = render_results_csv(&cfg, &rows);
        let parsed = parse_results_csv(Path::new("test.csv"), &text).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].method, Method::AnovaLogPlus1);
        assert_eq!(parsed[0].detections, 52);
        assert_eq!(parsed[1].failures, 2);
        // detection_rate column is detections/iterations at 6 decimals.
        assert!((parsed[1].detection_rate - 0.131).abs() < 1e-9);
    }

    #[test]
    fn manifest_lines_present() {
        let cfg = ExperimentConfig::default();
        let text = render_results_csv(&cfg, &sample_rows());
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# citesim "));
        let config_line = lines.next().unwrap();
        assert!(config_line.starts_with("# config {"));
        assert!(config_line.contains("\"seed\":53"));
        assert_eq!(lines.next().unwrap(), RESULTS_HEADER);
    }

    #[test]
    fn malformed_rows_name_the_line() {
        let text = format!("{RESULTS_HEADER}\nNB_RAW,30,0.5,0.5,1,1000,10\n");
        let err = parse_results_csv(Path::new("x.csv"), &text).unwrap_err();
        assert!(err.to_string().contains("x.csv:2"), "{err}");

        let text = format!("{RESULTS_HEADER}\nWHAT,30,0.5,0.5,1,1000,10,0,0.01,0.003\n");
        let err = parse_results_csv(Path::new("x.csv"), &text).unwrap_err();
        assert!(err.to_string().contains("unknown method"), "{err}");
    }
}
