//! The model battery applied to a real citation dataset from CSV.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::distributions::DiscreteLogNormal;
use crate::error::{Error, Result};
use crate::glm::{logno_fit, nb_fit};
use crate::linear_model::{log_transform, ols_binary_fit, Dataset, ZeroHandling};
use crate::montecarlo::Method;

/// Zero-handling policy for the real-data battery.
///
/// Negative binomial regression needs no zero handling and runs under every
/// policy; the policy selects which log-based variants accompany it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitPolicy {
    /// All five methods, plus a zero-inflation check against the truncated
    /// lognormal fit.
    Auto,
    /// The zero-truncated variants only.
    Truncate,
    /// The +1 offset variants only.
    Plus1,
    /// Both zero-handling flavors, no zero-inflation check.
    Both,
}

impl FitPolicy {
    pub fn parse(s: &str) -> Option<FitPolicy> {
        match s {
            "auto" => Some(FitPolicy::Auto),
            "truncate" => Some(FitPolicy::Truncate),
            "plus1" => Some(FitPolicy::Plus1),
            "both" => Some(FitPolicy::Both),
            _ => None,
        }
    }

    pub fn methods(self) -> Vec<Method> {
        match self {
            FitPolicy::Auto | FitPolicy::Both => Method::ALL.to_vec(),
            FitPolicy::Truncate => vec![
                Method::NbRaw,
                Method::LognoTrunc,
                Method::AnovaLogTrunc,
            ],
            FitPolicy::Plus1 => vec![
                Method::NbRaw,
                Method::LognoPlus1,
                Method::AnovaLogPlus1,
            ],
        }
    }
}

/// One method's result on the data.
#[derive(Debug, Clone)]
pub struct FitRow {
    pub method: Method,
    pub n_used: usize,
    pub b0: f64,
    pub b1: f64,
    pub se_b1: f64,
    /// Test statistic: Wald z for NB, t for the lognormal model, F for ANOVA.
    pub statistic: f64,
    pub p_value: f64,
    pub converged: bool,
    /// Present when the fit errored out instead of producing numbers.
    pub error: Option<String>,
}

/// Comparison of the observed zero fraction against the zero mass implied
/// by the truncated lognormal fit.
#[derive(Debug, Clone)]
pub struct ZeroInflationCheck {
    pub observed_fraction: f64,
    pub implied_fraction: f64,
    pub binomial_se: f64,
    /// Observed zeros exceed the implied mass by more than 3 binomial SEs.
    pub flagged: bool,
}

#[derive(Debug, Clone)]
pub struct FitReport {
    pub rows: Vec<FitRow>,
    pub n: usize,
    pub zero_count: usize,
    pub alpha: f64,
    pub zero_inflation: Option<ZeroInflationCheck>,
}

/// Read a `citations,factor` CSV. UTF-8, LF or CRLF; citations are
/// non-negative integers and the factor is 0 or 1.
pub fn read_citation_csv(path: &Path) -> Result<Dataset> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let bad = |line: usize, message: String| Error::MalformedRow {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut citations = Vec::new();
    let mut factor = Vec::new();
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r').trim() == "citations,factor" => {}
        Some((_, header)) => {
            return Err(bad(
                1,
                format!("expected header \"citations,factor\", found {header:?}"),
            ))
        }
        None => return Err(bad(1, "file is empty".into())),
    }
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let (c, f) = match (parts.next(), parts.next(), parts.next()) {
            (Some(c), Some(f), None) => (c.trim(), f.trim()),
            _ => return Err(bad(line_no, "expected exactly two fields".into())),
        };
        let count: u64 = c.parse().map_err(|_| {
            bad(
                line_no,
                format!("citations must be a non-negative integer, found {c:?}"),
            )
        })?;
        let group = match f {
            "0" => false,
            "1" => true,
            other => {
                return Err(bad(
                    line_no,
                    format!("factor must be 0 or 1, found {other:?}"),
                ))
            }
        };
        citations.push(count);
        factor.push(group);
    }
    if citations.is_empty() {
        return Err(bad(1, "no data rows".into()));
    }
    let d = Dataset::new(citations, factor)?;
    let (n0, n1) = d.group_sizes();
    if n0 == 0 || n1 == 0 {
        return Err(Error::DegenerateData(
            "both factor levels must be present in the data".into(),
        ));
    }
    Ok(d)
}

fn fit_one(d: &Dataset, method: Method) -> FitRow {
    let errored = |e: Error| FitRow {
        method,
        n_used: 0,
        b0: f64::NAN,
        b1: f64::NAN,
        se_b1: f64::NAN,
        statistic: f64::NAN,
        p_value: f64::NAN,
        converged: false,
        error: Some(e.to_string()),
    };
    match method {
        Method::NbRaw => match nb_fit(d) {
            Ok(f) => FitRow {
                method,
                n_used: d.len(),
                b0: f.b0,
                b1: f.b1,
                se_b1: f.se_b1,
                statistic: f.wald_z,
                p_value: f.p_value,
                converged: f.converged,
                error: None,
            },
            Err(e) => errored(e),
        },
        Method::LognoTrunc | Method::LognoPlus1 => {
            let mode = if method == Method::LognoTrunc {
                ZeroHandling::DropZeros
            } else {
                ZeroHandling::AddOne
            };
            match logno_fit(d, mode) {
                Ok(f) => FitRow {
                    method,
                    n_used: f.n_used,
                    b0: f.b0,
                    b1: f.b1,
                    se_b1: f.se_b1,
                    statistic: f.t_stat,
                    p_value: f.p_value,
                    converged: true,
                    error: None,
                },
                Err(e) => errored(e),
            }
        }
        Method::AnovaLogTrunc | Method::AnovaLogPlus1 => {
            let mode = if method == Method::AnovaLogTrunc {
                ZeroHandling::DropZeros
            } else {
                ZeroHandling::AddOne
            };
            match log_transform(d, mode).and_then(|t| ols_binary_fit(&t.y, &t.factor)) {
                Ok(f) => FitRow {
                    method,
                    n_used: f.n_used,
                    b0: f.b0,
                    b1: f.b1,
                    se_b1: f.se_b1,
                    statistic: f.f_stat,
                    p_value: f.p_value,
                    converged: true,
                    error: None,
                },
                Err(e) => errored(e),
            }
        }
    }
}

/// Flag zero inflation when the observed zero fraction exceeds the zero
/// mass implied by the truncated lognormal fit by more than 3 binomial SEs.
fn check_zero_inflation(d: &Dataset) -> Option<ZeroInflationCheck> {
    let fit = logno_fit(d, ZeroHandling::DropZeros).ok()?;
    let (n0, n1) = d.group_sizes();
    let p0 = DiscreteLogNormal::new(fit.b0, fit.sigma_hat).ok()?.pmf(0);
    let p1 = DiscreteLogNormal::new(fit.b0 + fit.b1, fit.sigma_hat)
        .ok()?
        .pmf(0);
    let n = d.len() as f64;
    let implied = (n0 as f64 * p0 + n1 as f64 * p1) / n;
    let observed = d.zero_count() as f64 / n;
    let se = (implied * (1.0 - implied) / n).sqrt();
    Some(ZeroInflationCheck {
        observed_fraction: observed,
        implied_fraction: implied,
        binomial_se: se,
        flagged: observed > implied + 3.0 * se,
    })
}

/// Run the battery on a dataset under the given policy.
pub fn fit_battery(d: &Dataset, alpha: f64, policy: FitPolicy) -> FitReport {
    let rows = policy
        .methods()
        .into_iter()
        .map(|m| fit_one(d, m))
        .collect();
    let zero_inflation = if policy == FitPolicy::Auto {
        check_zero_inflation(d)
    } else {
        None
    };
    FitReport {
        rows,
        n: d.len(),
        zero_count: d.zero_count(),
        alpha,
        zero_inflation,
    }
}

/// Render the report as a CSV with a comment header.
pub fn render_fit_csv(report: &FitReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# citesim {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        out,
        "# n={} zeros={} alpha={}",
        report.n, report.zero_count, report.alpha
    );
    if let Some(z) = &report.zero_inflation {
        let _ = writeln!(
            out,
            "# zero_inflation: observed={:.6} implied={:.6} se={:.6} flagged={}",
            z.observed_fraction, z.implied_fraction, z.binomial_se, z.flagged
        );
    }
    let _ = writeln!(out, "method,n_used,b0,b1,se_b1,statistic,p_value,converged");
    for r in &report.rows {
        if let Some(err) = &r.error {
            let _ = writeln!(out, "{},0,,,,,,error: {}", r.method.name(), err);
        } else {
            let _ = writeln!(
                out,
                "{},{},{:.6},{:.6},{:.6},{:.6},{:.6e},{}",
                r.method.name(),
                r.n_used,
                r.b0,
                r.b1,
                r.se_b1,
                r.statistic,
                r.p_value,
                r.converged
            );
        }
    }
    out
}

/// Render the human-readable table printed to stdout.
pub fn render_fit_table(report: &FitReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} observations, {} zeros, alpha = {}",
        report.n, report.zero_count, report.alpha
    );
    let _ = writeln!(
        out,
        "{:<16} {:>7} {:>11} {:>11} {:>10} {:>11} {:>12}  note",
        "method", "n_used", "b0", "b1", "se_b1", "statistic", "p_value"
    );
    for r in &report.rows {
        if let Some(err) = &r.error {
            let _ = writeln!(out, "{:<16} {:>7} {err}", r.method.name(), "-");
        } else {
            let sig = if r.p_value < report.alpha { "*" } else { "" };
            let conv = if r.converged { "" } else { " (not converged)" };
            let _ = writeln!(
                out,
                "{:<16} {:>7} {:>11.4} {:>11.4} {:>10.4} {:>11.4} {:>12.4e}  {sig}{conv}",
                r.method.name(),
                r.n_used,
                r.b0,
                r.b1,
                r.se_b1,
                r.statistic,
                r.p_value
            );
        }
    }
    if let Some(z) = &report.zero_inflation {
        if z.flagged {
            let _ = writeln!(
                out,
                "zero inflation suspected: observed zero fraction {:.4} exceeds the {:.4} \
                 implied by the truncated lognormal fit by more than 3 SEs ({:.4}); \
                 prefer the zero-truncated variants",
                z.observed_fraction, z.implied_fraction, z.binomial_se
            );
        } else {
            let _ = writeln!(
                out,
                "no zero inflation detected (observed {:.4} vs implied {:.4}, SE {:.4})",
                z.observed_fraction, z.implied_fraction, z.binomial_se
            );
        }
    }
    out
}

/// Output path for the report: `<stem>_fit.csv` in `out_dir`.
pub fn fit_report_path(data_path: &Path, out_dir: &Path) -> PathBuf {
    let stem = data_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "data".into());
    out_dir.join(format!("{stem}_fit.csv"))
}
