//! Command-level entry points shared by the `citesim` binary and the
//! runnable examples: figure-preset reproduction, custom sweeps from JSON
//! configs, and the real-data battery, with CSV and SVG emission.

pub mod config;
pub mod csv;
pub mod fit;
pub mod svg;

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::montecarlo::{sweep, SweepResult};

pub use config::ExperimentConfig;
pub use fit::{fit_battery, read_citation_csv, FitPolicy, FitReport};

/// Command-line overrides; they take precedence over config-file values,
/// which take precedence over the documented defaults.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub iterations: Option<usize>,
    pub alpha: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(iterations) = self.iterations {
            cfg.iterations = iterations;
        }
        if let Some(alpha) = self.alpha {
            cfg.alpha = alpha;
        }
    }

    fn out_dir(&self) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| PathBuf::from("."))
    }
}

/// Paths written by a sweep-style command.
#[derive(Debug, Clone)]
pub struct OutputFiles {
    pub csv: PathBuf,
    pub svg: PathBuf,
}

/// The built-in scenario presets.
///
/// 1: null calibration (mu 0.5/0.5, sigma 1)      2: null, heavy tail (sigma 2)
/// 3: small effect (mu 0.5/0.55, sigma 1)         4: small effect, sigma 2
/// 5: moderate effect (mu 0.5/0.6, sigma 1)
pub fn figure_preset(id: u8) -> Result<ExperimentConfig> {
    let (mu0, mu1, sigma) = match id {
        1 => (0.5, 0.5, 1.0),
        2 => (0.5, 0.5, 2.0),
        3 => (0.5, 0.55, 1.0),
        4 => (0.5, 0.55, 2.0),
        5 => (0.5, 0.6, 1.0),
        other => {
            return Err(Error::Validation(vec![format!(
                "figure: id {other} is not one of 1..=5"
            )]))
        }
    };
    Ok(ExperimentConfig {
        mu0,
        mu1,
        sigma,
        output_prefix: format!("fig{id}"),
        ..ExperimentConfig::default()
    })
}

/// Robustness presets: the null-calibration scenario re-run at higher log
/// means (1.0 and 1.5) to show the conclusions do not depend on the mean.
pub fn robustness_preset(mu: f64) -> ExperimentConfig {
    ExperimentConfig {
        mu0: mu,
        mu1: mu,
        sigma: 1.0,
        output_prefix: format!("robustness_mu{mu}"),
        ..ExperimentConfig::default()
    }
}

/// Run a resolved experiment and write `<prefix>_results.csv` and
/// `<prefix>_fig.svg` into `out_dir`.
pub fn run_experiment(cfg: &ExperimentConfig, out_dir: &Path) -> Result<(SweepResult, OutputFiles)> {
    let base = cfg.sim_config(cfg.n_grid[0]);
    let result = sweep(&base, &cfg.n_grid)?;
    let csv_path = out_dir.join(format!("{}_results.csv", cfg.output_prefix));
    let svg_path = out_dir.join(format!("{}_fig.svg", cfg.output_prefix));
    csv::write_results_csv(&csv_path, cfg, &result.rows)?;
    svg::write_svg(&svg_path, cfg, &result.rows)?;
    Ok((
        result,
        OutputFiles {
            csv: csv_path,
            svg: svg_path,
        },
    ))
}

/// Reproduce one of the built-in figure presets.
pub fn cmd_figure(id: u8, overrides: &Overrides) -> Result<OutputFiles> {
    let mut cfg = figure_preset(id)?;
    overrides.apply(&mut cfg);
    let (_, files) = run_experiment(&cfg, &overrides.out_dir())?;
    Ok(files)
}

/// Run a sweep described by a JSON config file.
pub fn cmd_sweep(config_path: &Path, overrides: &Overrides) -> Result<OutputFiles> {
    let mut cfg = ExperimentConfig::load(config_path)?;
    overrides.apply(&mut cfg);
    let (_, files) = run_experiment(&cfg, &overrides.out_dir())?;
    Ok(files)
}

/// Run the battery on a citation CSV; returns the report and the path of
/// the written report file.
pub fn cmd_fit(
    data_path: &Path,
    alpha: f64,
    policy: FitPolicy,
    out_dir: &Path,
) -> Result<(FitReport, PathBuf)> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Validation(vec![format!(
            "alpha: {alpha} must lie strictly between 0 and 1"
        )]));
    }
    let dataset = read_citation_csv(data_path)?;
    let report = fit_battery(&dataset, alpha, policy);
    let path = fit::fit_report_path(data_path, out_dir);
    std::fs::write(&path, fit::render_fit_csv(&report)).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    Ok((report, path))
}
