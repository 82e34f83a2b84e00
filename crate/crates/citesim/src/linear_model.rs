//! The general linear (ordinary least squares) model for an intercept plus
//! one binary factor, together with the log-transform preprocessing that
//! defines the ANOVA-style methods.
//!
//! Only the intercept-plus-one-binary-factor design is implemented; with
//! group-constant predictors the least-squares solution is the pair of group
//! means, so everything is computed in closed form. The F-test of the factor
//! with (1, n-2) degrees of freedom is inferentially identical to the
//! pooled-variance two-sample t-test.

use crate::error::{Error, Result};
use crate::numerics::{clamp_p, f_cdf};

/// Paired citation counts and binary factor values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    citations: Vec<u64>,
    factor: Vec<bool>,
}

impl Dataset {
    /// The two vectors must have equal, nonzero length.
    pub fn new(citations: Vec<u64>, factor: Vec<bool>) -> Result<Self> {
        if citations.len() != factor.len() {
            return Err(Error::DegenerateData(format!(
                "citations has {} entries but factor has {}",
                citations.len(),
                factor.len()
            )));
        }
        if citations.is_empty() {
            return Err(Error::DegenerateData("dataset is empty".into()));
        }
        Ok(Dataset { citations, factor })
    }

    pub fn len(&self) -> usize {
        self.citations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.citations.is_empty()
    }

    pub fn citations(&self) -> &[u64] {
        &self.citations
    }

    pub fn factor(&self) -> &[bool] {
        &self.factor
    }

    /// Sizes of groups 0 and 1.
    pub fn group_sizes(&self) -> (usize, usize) {
        let n1 = self.factor.iter().filter(|&&g| g).count();
        (self.len() - n1, n1)
    }

    /// Mean citation count per group. Errors if either group is empty.
    pub fn group_means(&self) -> Result<(f64, f64)> {
        let (n0, n1) = self.group_sizes();
        if n0 == 0 || n1 == 0 {
            return Err(Error::DegenerateData(
                "both factor levels must be present".into(),
            ));
        }
        let (mut s0, mut s1) = (0.0, 0.0);
        for (&c, &g) in self.citations.iter().zip(&self.factor) {
            if g {
                s1 += c as f64;
            } else {
                s0 += c as f64;
            }
        }
        Ok((s0 / n0 as f64, s1 / n1 as f64))
    }

    pub fn zero_count(&self) -> usize {
        self.citations.iter().filter(|&&c| c == 0).count()
    }
}

/// How zero counts are made compatible with the log transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroHandling {
    /// Remove observations with zero citations, then take `ln(C)`.
    DropZeros,
    /// Add one to every count, then take `ln(C + 1)`.
    AddOne,
}

/// Log-transformed responses with the factor filtered in parallel.
#[derive(Debug, Clone)]
pub struct LogData {
    pub y: Vec<f64>,
    pub factor: Vec<bool>,
    pub n_dropped: usize,
}

/// Apply the log transform under the given zero-handling mode.
pub fn log_transform(d: &Dataset, mode: ZeroHandling) -> Result<LogData> {
    let mut y = Vec::with_capacity(d.len());
    let mut factor = Vec::with_capacity(d.len());
    let mut n_dropped = 0;
    for (&c, &g) in d.citations().iter().zip(d.factor()) {
        match mode {
            ZeroHandling::DropZeros => {
                if c == 0 {
                    n_dropped += 1;
                    continue;
                }
                y.push((c as f64).ln());
            }
            ZeroHandling::AddOne => y.push((c as f64 + 1.0).ln()),
        }
        factor.push(g);
    }
    let n1 = factor.iter().filter(|&&g| g).count();
    if factor.is_empty() || n1 == 0 || n1 == factor.len() {
        return Err(Error::DegenerateData(
            "removing zeros left a factor level empty".into(),
        ));
    }
    Ok(LogData {
        y,
        factor,
        n_dropped,
    })
}

/// Least-squares fit of `y = b0 + b1 * factor` with the ANOVA F-test.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    /// Intercept: the group-0 mean of the transformed response.
    pub b0: f64,
    /// Factor effect: group-1 mean minus group-0 mean.
    pub b1: f64,
    pub se_b1: f64,
    pub f_stat: f64,
    pub df1: usize,
    pub df2: usize,
    pub p_value: f64,
    pub n_used: usize,
}

/// Closed-form OLS of a response on an intercept and a binary factor.
///
/// Requires at least two observations per group and positive pooled
/// residual variance.
pub fn ols_binary_fit(y: &[f64], factor: &[bool]) -> Result<LinearFit> {
    if y.len() != factor.len() {
        return Err(Error::DegenerateData(
            "response and factor lengths differ".into(),
        ));
    }
    let n = y.len();
    let n1 = factor.iter().filter(|&&g| g).count();
    let n0 = n - n1;
    if n0 < 2 || n1 < 2 {
        return Err(Error::DegenerateData(format!(
            "each group needs at least 2 observations, got {n0} and {n1}"
        )));
    }
    let (mut s0, mut s1) = (0.0, 0.0);
    for (&v, &g) in y.iter().zip(factor) {
        if g {
            s1 += v;
        } else {
            s0 += v;
        }
    }
    let m0 = s0 / n0 as f64;
    let m1 = s1 / n1 as f64;
    let mut ssw = 0.0;
    for (&v, &g) in y.iter().zip(factor) {
        let r = v - if g { m1 } else { m0 };
        ssw += r * r;
    }
    if ssw <= 0.0 {
        return Err(Error::DegenerateData(
            "zero residual variance within groups".into(),
        ));
    }
    let df2 = n - 2;
    let s2 = ssw / df2 as f64;
    let se_b1 = (s2 * (1.0 / n0 as f64 + 1.0 / n1 as f64)).sqrt();
    let b1 = m1 - m0;
    let f_stat = (b1 / se_b1).powi(2);
    let p_value = clamp_p(1.0 - f_cdf(f_stat, 1.0, df2 as f64)?);
    Ok(LinearFit {
        b0: m0,
        b1,
        se_b1,
        f_stat,
        df1: 1,
        df2,
        p_value,
        n_used: n,
    })
}
