//! Experiment configuration files (JSON) and their validation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::distributions::MIN_SIGMA;
use crate::error::{Error, Result};
use crate::montecarlo::{
    Method, SimConfig, DEFAULT_ALPHA, DEFAULT_ITERATIONS, DEFAULT_N_GRID, DEFAULT_SEED,
};

/// Raw config file: every key optional, unknown keys rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mu0: Option<f64>,
    mu1: Option<f64>,
    sigma: Option<f64>,
    n_grid: Option<Vec<i64>>,
    iterations: Option<u64>,
    alpha: Option<f64>,
    seed: Option<u64>,
    methods: Option<Vec<String>>,
    output_prefix: Option<String>,
}

/// A fully resolved experiment: defaults applied, every value validated.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mu0: f64,
    pub mu1: f64,
    pub sigma: f64,
    pub n_grid: Vec<usize>,
    pub iterations: usize,
    pub alpha: f64,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub output_prefix: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mu0: 0.5,
            mu1: 0.5,
            sigma: 1.0,
            n_grid: DEFAULT_N_GRID.to_vec(),
            iterations: DEFAULT_ITERATIONS,
            alpha: DEFAULT_ALPHA,
            seed: DEFAULT_SEED,
            methods: Method::ALL.to_vec(),
            output_prefix: "sweep".into(),
        }
    }
}

/// Manifest serialization order is the reproduction recipe; the output
/// prefix is deliberately not part of it.
#[derive(Serialize)]
struct Manifest<'a> {
    mu0: f64,
    mu1: f64,
    sigma: f64,
    n_grid: &'a [usize],
    iterations: usize,
    alpha: f64,
    seed: u64,
    methods: Vec<&'static str>,
}

impl ExperimentConfig {
    /// Parse and validate a JSON config file.
    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Parse and validate config JSON. Collects every offending key rather
    /// than bailing on the first.
    pub fn from_json(text: &str) -> Result<ExperimentConfig> {
        let raw: RawConfig = serde_json::from_str(text)
            .map_err(|e| Error::Validation(vec![format!("config JSON: {e}")]))?;
        let mut problems = Vec::new();

        let mu0 = raw.mu0.unwrap_or(0.5);
        let mu1 = raw.mu1.unwrap_or(0.5);
        if !mu0.is_finite() {
            problems.push(format!("mu0: {mu0} must be finite"));
        }
        if !mu1.is_finite() {
            problems.push(format!("mu1: {mu1} must be finite"));
        }

        let sigma = raw.sigma.unwrap_or(1.0);
        if !(sigma > MIN_SIGMA) {
            problems.push(format!("sigma: {sigma} must be positive"));
        }

        let n_grid: Vec<usize> = match raw.n_grid {
            None => DEFAULT_N_GRID.to_vec(),
            Some(entries) => {
                if entries.is_empty() {
                    problems.push("n_grid: must not be empty".into());
                }
                let mut grid = Vec::with_capacity(entries.len());
                for v in entries {
                    if v < 8 {
                        problems.push(format!("n_grid: entry {v} is below the minimum of 8"));
                    } else if v % 2 != 0 {
                        problems.push(format!(
                            "n_grid: entry {v} is odd; sample sizes must be even"
                        ));
                    } else {
                        grid.push(v as usize);
                    }
                }
                grid
            }
        };

        let iterations = raw.iterations.unwrap_or(DEFAULT_ITERATIONS as u64);
        if iterations == 0 {
            problems.push("iterations: must be at least 1".into());
        }

        let alpha = raw.alpha.unwrap_or(DEFAULT_ALPHA);
        if !(alpha > 0.0 && alpha < 1.0) {
            problems.push(format!("alpha: {alpha} must lie strictly between 0 and 1"));
        }

        let methods = match raw.methods {
            None => Method::ALL.to_vec(),
            Some(names) => {
                if names.is_empty() {
                    problems.push("methods: must not be empty".into());
                }
                let mut methods = Vec::with_capacity(names.len());
                for name in &names {
                    match Method::parse(name) {
                        Some(m) if methods.contains(&m) => {
                            problems.push(format!("methods: {name} listed more than once"));
                        }
                        Some(m) => methods.push(m),
                        None => problems.push(format!(
                            "methods: unknown method {name:?} (expected one of {})",
                            Method::ALL.map(|m| m.name()).join(", ")
                        )),
                    }
                }
                methods
            }
        };

        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        Ok(ExperimentConfig {
            mu0,
            mu1,
            sigma,
            n_grid,
            iterations: iterations as usize,
            alpha,
            seed: raw.seed.unwrap_or(DEFAULT_SEED),
            methods,
            output_prefix: raw.output_prefix.unwrap_or_else(|| "sweep".into()),
        })
    }

    /// The simulation config for one grid entry.
    pub fn sim_config(&self, n: usize) -> SimConfig {
        SimConfig {
            mu0: self.mu0,
            mu1: self.mu1,
            sigma: self.sigma,
            n,
            iterations: self.iterations,
            alpha: self.alpha,
            master_seed: self.seed,
            methods: self.methods.clone(),
        }
    }

    /// One-line JSON run manifest: seed and the full resolved scientific
    /// configuration, independent of output paths.
    pub fn manifest_json(&self) -> String {
        serde_json::to_string(&Manifest {
            mu0: self.mu0,
            mu1: self.mu1,
            sigma: self.sigma,
            n_grid: &self.n_grid,
            iterations: self.iterations,
            alpha: self.alpha,
            seed: self.seed,
            methods: self.methods.iter().map(|m| m.name()).collect(),
        })
        .expect("manifest serialization cannot fail")
    }
}
