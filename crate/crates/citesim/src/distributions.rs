//! Data-generating and model distributions: the discrete lognormal (the
//! citation model), the negative binomial mass function, and the continuous
//! lognormal density.

use crate::error::{Error, Result};
use crate::numerics::{log_gamma_unchecked, normal_cdf};
use crate::rng::RngStream;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Smallest admissible log-scale standard deviation; values below this are
/// effectively a point mass and are rejected.
pub const MIN_SIGMA: f64 = 1e-12;

/// Distribution of `round(Y)` where `ln Y ~ N(mu, sigma^2)`.
///
/// `mu` is the log mean and `sigma` the log standard deviation of the
/// underlying normal. Rounding is half-away-from-zero; because `Y` is
/// continuous, ties have probability zero and the convention only matters
/// for reproducibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteLogNormal {
    mu: f64,
    sigma: f64,
}

impl DiscreteLogNormal {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::Domain(format!(
                "discrete lognormal requires finite mu, got {mu}"
            )));
        }
        if !(sigma > MIN_SIGMA) {
            return Err(Error::Domain(format!(
                "discrete lognormal requires sigma > {MIN_SIGMA}, got {sigma}"
            )));
        }
        Ok(DiscreteLogNormal { mu, sigma })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Draw `round(exp(mu + sigma * z))` with `z` standard normal.
    pub fn sample(&self, rng: &mut RngStream) -> u64 {
        let z = rng.next_normal();
        (self.mu + self.sigma * z).exp().round() as u64
    }

    /// Probability mass at `k`.
    ///
    /// `P(0) = Phi((ln 1/2 - mu)/sigma)` and for `k >= 1`
    /// `P(k) = Phi((ln(k + 1/2) - mu)/sigma) - Phi((ln(k - 1/2) - mu)/sigma)`,
    /// the exact mass of the rounding cell.
    pub fn pmf(&self, k: u64) -> f64 {
        let upper = normal_cdf(((k as f64 + 0.5).ln() - self.mu) / self.sigma);
        if k == 0 {
            return upper;
        }
        let lower = normal_cdf(((k as f64 - 0.5).ln() - self.mu) / self.sigma);
        (upper - lower).max(0.0)
    }
}

/// Negative binomial parameters: mean `mu` and dispersion (size) `theta`.
/// The variance is `mu + mu^2/theta`, always exceeding the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegBinParams {
    mu: f64,
    theta: f64,
}

impl NegBinParams {
    pub fn new(mu: f64, theta: f64) -> Result<Self> {
        if !(mu > 0.0) {
            return Err(Error::Domain(format!(
                "negative binomial requires mu > 0, got {mu}"
            )));
        }
        if !(theta > 0.0) {
            return Err(Error::Domain(format!(
                "negative binomial requires theta > 0, got {theta}"
            )));
        }
        Ok(NegBinParams { mu, theta })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn variance(&self) -> f64 {
        self.mu + self.mu * self.mu / self.theta
    }

    /// Log probability mass at `k`:
    /// `ln Γ(k+θ) − ln Γ(θ) − ln Γ(k+1) + θ ln(θ/(θ+μ)) + k ln(μ/(θ+μ))`.
    pub fn log_pmf(&self, k: u64) -> f64 {
        let kf = k as f64;
        let (mu, theta) = (self.mu, self.theta);
        let gamma_terms = if k == 0 {
            0.0
        } else {
            log_gamma_unchecked(kf + theta) - log_gamma_unchecked(theta) - log_gamma_unchecked(kf + 1.0)
        };
        // θ ln(θ/(θ+μ)) written through ln_1p so huge θ stays accurate.
        gamma_terms - theta * (mu / theta).ln_1p() + kf * (mu / (theta + mu)).ln()
    }
}

/// Log density of the continuous lognormal at `y > 0`:
/// `-ln(y σ √(2π)) - (ln y - μ)² / (2σ²)`.
pub fn lognormal_log_density(y: f64, mu: f64, sigma: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!(
            "lognormal density requires y > 0, got {y}"
        )));
    }
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!(
            "lognormal density requires sigma > 0, got {sigma}"
        )));
    }
    let z = (y.ln() - mu) / sigma;
    Ok(-y.ln() - sigma.ln() - LN_SQRT_2PI - 0.5 * z * z)
}
