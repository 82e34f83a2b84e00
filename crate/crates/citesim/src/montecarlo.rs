//! The simulation engine: generate discrete lognormal datasets with a
//! binary factor, run the five-method battery, and estimate detection
//! proportions across sample-size grids.
//!
//! Iterations are independent and run in parallel; each derives its own RNG
//! substream from `(master_seed, iteration index)` and the tallies are
//! integer sums, so results are bit-identical for any worker count.

use rayon::prelude::*;

use crate::distributions::{DiscreteLogNormal, MIN_SIGMA};
use crate::error::{Error, Result};
use crate::glm::{logno_fit, nb_fit};
use crate::linear_model::{log_transform, ols_binary_fit, Dataset, ZeroHandling};

/// Master seed used when none is given.
pub const DEFAULT_SEED: u64 = 53;

/// Default iteration count per parameter set.
pub const DEFAULT_ITERATIONS: usize = 1000;

/// Default significance level.
pub const DEFAULT_ALPHA: f64 = 0.05;

/// Default sample-size grid: roughly log-spaced over the range where the
/// power curves rise.
pub const DEFAULT_N_GRID: [usize; 12] = [
    30, 50, 100, 200, 350, 500, 750, 1000, 1500, 2000, 3000, 5000,
];

/// The five regression strategies under comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Negative binomial regression on the raw counts.
    NbRaw,
    /// Lognormal-error model after removing zero counts.
    LognoTrunc,
    /// ANOVA on log counts after removing zero counts.
    AnovaLogTrunc,
    /// Lognormal-error model after adding 1 to every count.
    LognoPlus1,
    /// ANOVA on log(count + 1).
    AnovaLogPlus1,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::NbRaw,
        Method::LognoTrunc,
        Method::AnovaLogTrunc,
        Method::LognoPlus1,
        Method::AnovaLogPlus1,
    ];

    /// Stable wire name used in configs, CSV output and charts.
    pub fn name(self) -> &'static str {
        match self {
            Method::NbRaw => "NB_RAW",
            Method::LognoTrunc => "LOGNO_TRUNC",
            Method::AnovaLogTrunc => "ANOVA_LOG_TRUNC",
            Method::LognoPlus1 => "LOGNO_PLUS1",
            Method::AnovaLogPlus1 => "ANOVA_LOG_PLUS1",
        }
    }

    pub fn parse(name: &str) -> Option<Method> {
        Method::ALL.iter().copied().find(|m| m.name() == name)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One simulation scenario.
#[derive(Debug, Clone)]
pub struct SimConfig {
    /// Log mean of group 0.
    pub mu0: f64,
    /// Log mean of group 1.
    pub mu1: f64,
    /// Shared log standard deviation.
    pub sigma: f64,
    /// Total sample size; must be even (half per group) and at least 8.
    pub n: usize,
    pub iterations: usize,
    pub alpha: f64,
    pub master_seed: u64,
    pub methods: Vec<Method>,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            mu0: 0.5,
            mu1: 0.5,
            sigma: 1.0,
            n: 1000,
            iterations: DEFAULT_ITERATIONS,
            alpha: DEFAULT_ALPHA,
            master_seed: DEFAULT_SEED,
            methods: Method::ALL.to_vec(),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !self.n.is_multiple_of(2) {
            problems.push(format!("n: {} is odd; sample sizes must be even", self.n));
        }
        if self.n < 8 {
            problems.push(format!("n: {} is below the minimum of 8", self.n));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            problems.push(format!(
                "alpha: {} must lie strictly between 0 and 1",
                self.alpha
            ));
        }
        if !(self.sigma > MIN_SIGMA) {
            problems.push(format!("sigma: {} must be positive", self.sigma));
        }
        if !self.mu0.is_finite() || !self.mu1.is_finite() {
            problems.push("mu0/mu1: log means must be finite".into());
        }
        if self.iterations == 0 {
            problems.push("iterations: must be at least 1".into());
        }
        if self.methods.is_empty() {
            problems.push("methods: at least one method is required".into());
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[..i].contains(m) {
                problems.push(format!("methods: {} listed more than once", m.name()));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }

    fn with_n(&self, n: usize) -> SimConfig {
        SimConfig {
            n,
            ..self.clone()
        }
    }
}

/// Generate the dataset for one iteration: the first n/2 observations come
/// from `DiscreteLogNormal(mu0, sigma)` with factor 0, the rest from
/// `DiscreteLogNormal(mu1, sigma)` with factor 1, drawn from the substream
/// `(master_seed, iteration)`.
pub fn generate_dataset(c: &SimConfig, iteration: u64) -> Dataset {
    let d0 = DiscreteLogNormal::new(c.mu0, c.sigma).expect("validated sigma");
    let d1 = DiscreteLogNormal::new(c.mu1, c.sigma).expect("validated sigma");
    let mut rng = crate::rng::RngStream::new(c.master_seed, iteration);
    let half = c.n / 2;
    let mut citations = Vec::with_capacity(c.n);
    let mut factor = Vec::with_capacity(c.n);
    for _ in 0..half {
        citations.push(d0.sample(&mut rng));
        factor.push(false);
    }
    for _ in 0..half {
        citations.push(d1.sample(&mut rng));
        factor.push(true);
    }
    Dataset::new(citations, factor).expect("construction is well-formed")
}

/// Outcome of one method on one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodOutcome {
    pub method: Method,
    /// The fit succeeded, converged, and rejected at the given alpha.
    pub detected: bool,
    /// `None` when the fit errored out (degenerate data).
    pub p_value: Option<f64>,
    pub converged: bool,
}

impl MethodOutcome {
    /// A failure is an errored or non-converged fit; always a non-detection.
    pub fn failed(&self) -> bool {
        self.p_value.is_none() || !self.converged
    }
}

/// Run the requested methods on one dataset. A method whose preprocessing
/// or fit degenerates yields a failure record; the battery never aborts.
pub fn run_battery(d: &Dataset, alpha: f64, methods: &[Method]) -> Vec<MethodOutcome> {
    methods
        .iter()
        .map(|&method| {
            let (p_value, converged) = match method {
                Method::NbRaw => match nb_fit(d) {
                    Ok(fit) => (Some(fit.p_value), fit.converged),
                    Err(_) => (None, false),
                },
                Method::LognoTrunc => match logno_fit(d, ZeroHandling::DropZeros) {
                    Ok(fit) => (Some(fit.p_value), true),
                    Err(_) => (None, false),
                },
                Method::LognoPlus1 => match logno_fit(d, ZeroHandling::AddOne) {
                    Ok(fit) => (Some(fit.p_value), true),
                    Err(_) => (None, false),
                },
                Method::AnovaLogTrunc => match log_transform(d, ZeroHandling::DropZeros)
                    .and_then(|t| ols_binary_fit(&t.y, &t.factor))
                {
                    Ok(fit) => (Some(fit.p_value), true),
                    Err(_) => (None, false),
                },
                Method::AnovaLogPlus1 => match log_transform(d, ZeroHandling::AddOne)
                    .and_then(|t| ols_binary_fit(&t.y, &t.factor))
                {
                    Ok(fit) => (Some(fit.p_value), true),
                    Err(_) => (None, false),
                },
            };
            let detected = converged && p_value.is_some_and(|p| p < alpha);
            MethodOutcome {
                method,
                detected,
                p_value,
                converged,
            }
        })
        .collect()
}

/// Per-method Monte Carlo outcome for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionSummary {
    pub method: Method,
    pub n: usize,
    pub mu0: f64,
    pub mu1: f64,
    pub sigma: f64,
    pub iterations: usize,
    /// Iterations in which the method detected the factor.
    pub detections: usize,
    /// Iterations in which the fit errored or failed to converge
    /// (counted as non-detections).
    pub failures: usize,
}

impl DetectionSummary {
    pub fn detection_rate(&self) -> f64 {
        self.detections as f64 / self.iterations as f64
    }

    /// Monte Carlo standard error `sqrt(p (1-p) / iterations)`.
    pub fn mc_se(&self) -> f64 {
        let p = self.detection_rate();
        (p * (1.0 - p) / self.iterations as f64).sqrt()
    }
}

/// How often the lognormal and ANOVA decisions coincided, per zero-handling
/// flavor. Only populated when both members of a pair were requested.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PairAgreement {
    pub iterations: usize,
    pub trunc_agreements: Option<usize>,
    pub plus1_agreements: Option<usize>,
}

impl PairAgreement {
    pub fn trunc_rate(&self) -> Option<f64> {
        self.trunc_agreements
            .map(|a| a as f64 / self.iterations as f64)
    }

    pub fn plus1_rate(&self) -> Option<f64> {
        self.plus1_agreements
            .map(|a| a as f64 / self.iterations as f64)
    }
}

/// Summaries plus decision-agreement counts for one grid point.
#[derive(Debug, Clone)]
pub struct GridPointResult {
    pub summaries: Vec<DetectionSummary>,
    pub agreement: PairAgreement,
}

#[derive(Clone)]
struct Tally {
    detections: Vec<u32>,
    failures: Vec<u32>,
    trunc_agreements: u32,
    plus1_agreements: u32,
}

impl Tally {
    fn zero(k: usize) -> Tally {
        Tally {
            detections: vec![0; k],
            failures: vec![0; k],
            trunc_agreements: 0,
            plus1_agreements: 0,
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.detections.iter_mut().zip(&other.detections) {
            *a += b;
        }
        for (a, b) in self.failures.iter_mut().zip(&other.failures) {
            *a += b;
        }
        self.trunc_agreements += other.trunc_agreements;
        self.plus1_agreements += other.plus1_agreements;
        self
    }
}

fn position(methods: &[Method], m: Method) -> Option<usize> {
    methods.iter().position(|&x| x == m)
}

/// Run `c.iterations` independent datasets through the battery, deriving
/// the iteration substreams starting at `stream_offset`.
fn grid_point(c: &SimConfig, stream_offset: u64) -> Result<GridPointResult> {
    c.validate()?;
    let k = c.methods.len();
    let pair_trunc = position(&c.methods, Method::LognoTrunc)
        .zip(position(&c.methods, Method::AnovaLogTrunc));
    let pair_plus1 = position(&c.methods, Method::LognoPlus1)
        .zip(position(&c.methods, Method::AnovaLogPlus1));

    let tally = (0..c.iterations as u64)
        .into_par_iter()
        .map(|i| {
            let d = generate_dataset(c, stream_offset + i);
            let outcomes = run_battery(&d, c.alpha, &c.methods);
            let mut t = Tally::zero(k);
            for (j, o) in outcomes.iter().enumerate() {
                if o.detected {
                    t.detections[j] = 1;
                }
                if o.failed() {
                    t.failures[j] = 1;
                }
            }
            if let Some((a, b)) = pair_trunc {
                if outcomes[a].detected == outcomes[b].detected {
                    t.trunc_agreements = 1;
                }
            }
            if let Some((a, b)) = pair_plus1 {
                if outcomes[a].detected == outcomes[b].detected {
                    t.plus1_agreements = 1;
                }
            }
            t
        })
        .reduce(|| Tally::zero(k), Tally::merge);

    let summaries = c
        .methods
        .iter()
        .enumerate()
        .map(|(j, &method)| DetectionSummary {
            method,
            n: c.n,
            mu0: c.mu0,
            mu1: c.mu1,
            sigma: c.sigma,
            iterations: c.iterations,
            detections: tally.detections[j] as usize,
            failures: tally.failures[j] as usize,
        })
        .collect();
    let agreement = PairAgreement {
        iterations: c.iterations,
        trunc_agreements: pair_trunc.map(|_| tally.trunc_agreements as usize),
        plus1_agreements: pair_plus1.map(|_| tally.plus1_agreements as usize),
    };
    Ok(GridPointResult {
        summaries,
        agreement,
    })
}

/// Estimate the detection proportion of every requested method for one
/// parameter set. Failures count as non-detections and are reported
/// separately.
pub fn detection_rate(c: &SimConfig) -> Result<Vec<DetectionSummary>> {
    Ok(grid_point(c, 0)?.summaries)
}

/// A full sweep over a sample-size grid.
#[derive(Debug, Clone)]
pub struct SweepResult {
    /// One row per (method, n), ordered by (n, method name).
    pub rows: Vec<DetectionSummary>,
    /// Decision-agreement counts per grid n, in grid order.
    pub agreements: Vec<(usize, PairAgreement)>,
}

/// Run one detection-rate estimate per grid entry. Different grid points
/// use disjoint stream-id ranges so no two iterations anywhere share a
/// random stream.
pub fn sweep(base: &SimConfig, n_grid: &[usize]) -> Result<SweepResult> {
    if n_grid.is_empty() {
        return Err(Error::Validation(vec![
            "n_grid: at least one sample size is required".into(),
        ]));
    }
    for &n in n_grid {
        base.with_n(n).validate()?;
    }
    let mut rows = Vec::with_capacity(n_grid.len() * base.methods.len());
    let mut agreements = Vec::with_capacity(n_grid.len());
    for (g, &n) in n_grid.iter().enumerate() {
        let c = base.with_n(n);
        let offset = g as u64 * base.iterations as u64;
        let point = grid_point(&c, offset)?;
        rows.extend(point.summaries);
        agreements.push((n, point.agreement));
    }
    rows.sort_by(|a, b| (a.n, a.method.name()).cmp(&(b.n, b.method.name())));
    Ok(SweepResult { rows, agreements })
}
