//! Maximum-likelihood fitting for the two generalized-linear-model methods:
//! negative binomial regression with log link (dispersion estimated by ML)
//! and the continuous lognormal-error model.
//!
//! Both fit an intercept plus one binary factor. For that saturated design
//! the score equations force the fitted group means to equal the sample
//! group means at any fixed dispersion, so the coefficient step of the
//! alternating NB optimization converges in a couple of Newton updates and
//! the real work is the dispersion profile.

use crate::distributions::NegBinParams;
use crate::error::{Error, Result};
use crate::linear_model::{log_transform, Dataset, ZeroHandling};
use crate::numerics::{
    clamp_p, digamma_unchecked, normal_cdf, t_cdf, trigamma_unchecked,
};

/// Upper bound for the NB dispersion estimate. Underdispersed data push the
/// ML estimate to infinity; the fit is then reported at the cap with
/// `theta_at_bound` set instead of aborting.
pub const THETA_CAP: f64 = 1e8;

const THETA_FLOOR: f64 = 1e-8;
const MAX_OUTER: usize = 50;
const MAX_INNER: usize = 25;
const OUTER_TOL: f64 = 1e-8;

/// Negative binomial regression result (log link, Wald test of the factor).
#[derive(Debug, Clone)]
pub struct NbFit {
    /// Intercept on the log scale: fitted group-0 mean is `exp(b0)`.
    pub b0: f64,
    /// Factor effect on the log scale: fitted group-1 mean is `exp(b0 + b1)`.
    pub b1: f64,
    /// ML dispersion (size); variance model is `mu + mu^2 / theta`.
    pub theta: f64,
    pub se_b1: f64,
    pub wald_z: f64,
    pub p_value: f64,
    pub converged: bool,
    /// The dispersion estimate ran into [`THETA_CAP`] (near-Poisson data).
    pub theta_at_bound: bool,
    /// Outer alternating iterations used.
    pub iterations: usize,
    pub loglik: f64,
    /// Log-likelihood after each outer iteration (convergence diagnostic;
    /// must be non-decreasing).
    pub loglik_path: Vec<f64>,
}

/// Lognormal-error regression result on the (optionally shifted) counts.
#[derive(Debug, Clone)]
pub struct LognoFit {
    /// Intercept on the log scale (group-0 log mean).
    pub b0: f64,
    /// Factor effect on the log scale.
    pub b1: f64,
    /// ML scale: `sigma_hat^2 = RSS / n`.
    pub sigma_hat: f64,
    pub se_b1: f64,
    pub t_stat: f64,
    pub p_value: f64,
    pub loglik: f64,
    pub n_used: usize,
}

struct Groups {
    counts: Vec<u64>,
    factor: Vec<bool>,
    n0: usize,
    n1: usize,
    ybar0: f64,
    ybar1: f64,
}

fn split_groups(d: &Dataset) -> Result<Groups> {
    let (n0, n1) = d.group_sizes();
    if n0 == 0 || n1 == 0 {
        return Err(Error::DegenerateData(
            "both factor levels must be present".into(),
        ));
    }
    let (ybar0, ybar1) = d.group_means()?;
    if ybar0 == 0.0 || ybar1 == 0.0 {
        return Err(Error::DegenerateData(
            "a group with all-zero counts cannot be fitted on the log link".into(),
        ));
    }
    Ok(Groups {
        counts: d.citations().to_vec(),
        factor: d.factor().to_vec(),
        n0,
        n1,
        ybar0,
        ybar1,
    })
}

/// NB log-likelihood of the data at group means `(mu0, mu1)` and `theta`.
fn nb_loglik(g: &Groups, mu0: f64, mu1: f64, theta: f64) -> f64 {
    let p0 = NegBinParams::new(mu0, theta).expect("positive by construction");
    let p1 = NegBinParams::new(mu1, theta).expect("positive by construction");
    g.counts
        .iter()
        .zip(&g.factor)
        .map(|(&y, &f)| if f { p1.log_pmf(y) } else { p0.log_pmf(y) })
        .sum()
}

/// Dispersion score `S(theta) = d loglik / d theta` and its derivative,
/// at fixed group means.
///
/// The per-observation score is
/// `ψ(y+θ) − ψ(θ) + ln θ + 1 − ln(θ+μ) − (y+θ)/(θ+μ)`.
/// Written naively it cancels catastrophically for large theta, where the
/// whole expression is O(1/θ²), so the polygamma differences use the exact
/// integer recurrence `ψ(y+θ) − ψ(θ) = Σ_{j<y} 1/(θ+j)` for small counts
/// and the log terms go through `ln_1p`.
fn theta_score_info(g: &Groups, mu0: f64, mu1: f64, theta: f64) -> (f64, f64) {
    let psi_theta = digamma_unchecked(theta);
    let psi1_theta = trigamma_unchecked(theta);
    let mut score = 0.0;
    let mut dscore = 0.0;
    for (&y, &f) in g.counts.iter().zip(&g.factor) {
        let yf = y as f64;
        let mu = if f { mu1 } else { mu0 };
        let tm = theta + mu;
        let (psi_diff, psi1_diff) = if y <= 64 {
            let (mut s, mut s2) = (0.0, 0.0);
            for j in 0..y {
                let t = theta + j as f64;
                s += 1.0 / t;
                s2 += 1.0 / (t * t);
            }
            (s, -s2)
        } else {
            (
                digamma_unchecked(yf + theta) - psi_theta,
                trigamma_unchecked(yf + theta) - psi1_theta,
            )
        };
        score += psi_diff - (mu / theta).ln_1p() + (mu - yf) / tm;
        // 1/θ − 2/(θ+μ) + (y+θ)/(θ+μ)² combined over a common denominator.
        dscore += psi1_diff + (mu * mu + theta * yf) / (theta * tm * tm);
    }
    (score, dscore)
}

/// Maximize the profile log-likelihood over theta at fixed means by
/// safeguarded Newton on the score, clamped to `[THETA_FLOOR, THETA_CAP]`.
///
/// When the data are underdispersed the score stays positive for every
/// theta; the solver then climbs all the way to the cap instead of stalling
/// where the score first becomes numerically negligible.
fn solve_theta(g: &Groups, mu0: f64, mu1: f64, start: f64) -> f64 {
    let mut theta = start.clamp(THETA_FLOOR, THETA_CAP);
    let tol = 1e-11 * g.counts.len() as f64;
    // Set once a non-positive score shows the maximum is at or below theta.
    let mut bracketed = false;
    for _ in 0..80 {
        let (score, dscore) = theta_score_info(g, mu0, mu1, theta);
        if score <= 0.0 {
            bracketed = true;
        }
        if score.abs() < tol && bracketed {
            break;
        }
        if theta >= THETA_CAP && score >= 0.0 {
            break; // still climbing at the cap
        }
        if theta <= THETA_FLOOR && score <= 0.0 {
            break;
        }
        let newton = theta - score / dscore;
        let candidate = if newton.is_finite() && newton > 0.0 {
            newton
        } else if score > 0.0 {
            theta * 3.0
        } else {
            theta / 3.0
        };
        // Trust region: never move by more than a factor of 10 per step.
        let candidate = candidate
            .clamp(theta / 10.0, theta * 10.0)
            .clamp(THETA_FLOOR, THETA_CAP);
        let moved = (candidate - theta).abs();
        theta = candidate;
        if moved <= 1e-12 * (1.0 + theta) {
            break;
        }
        if moved <= 1e-10 * (1.0 + theta) && bracketed {
            break;
        }
    }
    theta
}

/// Fit the negative binomial regression of the raw counts on the factor.
///
/// Alternates (a) IRLS updates of `(b0, b1)` at fixed theta under the log
/// link with (b) ML dispersion updates by safeguarded Newton, until both
/// move by less than 1e-8 or the iteration cap is reached. The Wald z-test
/// of `b1` uses the expected information at the optimum.
pub fn nb_fit(d: &Dataset) -> Result<NbFit> {
    let g = split_groups(d)?;

    // Method-of-moments start for theta from the pooled sample moments.
    let n = g.counts.len() as f64;
    let ybar = g.counts.iter().map(|&y| y as f64).sum::<f64>() / n;
    let s2 = g
        .counts
        .iter()
        .map(|&y| (y as f64 - ybar).powi(2))
        .sum::<f64>()
        / (n - 1.0);
    let mut theta = if s2 > ybar {
        (ybar * ybar / (s2 - ybar)).clamp(0.1, 1e4)
    } else {
        1e4
    };

    let mut b0 = (g.ybar0 + 0.1).ln();
    let mut b1 = (g.ybar1 + 0.1).ln() - b0;
    let mut loglik_path = Vec::with_capacity(8);
    let mut converged = false;
    let mut iterations = 0;

    for outer in 1..=MAX_OUTER {
        iterations = outer;
        let (prev_b0, prev_b1, prev_theta) = (b0, b1, theta);

        // (a) IRLS for the coefficients at fixed theta. Within each group
        // the working weights are constant, so the weighted least-squares
        // solve reduces to a per-group Newton step on the linear predictor.
        for _ in 0..MAX_INNER {
            let mu0 = b0.exp();
            let mu1 = (b0 + b1).exp();
            let eta0 = b0 + (g.ybar0 - mu0) / mu0;
            let eta1 = (b0 + b1) + (g.ybar1 - mu1) / mu1;
            let delta = (eta0 - b0).abs().max((eta1 - b0 - b1).abs());
            b0 = eta0;
            b1 = eta1 - eta0;
            if delta < 1e-12 {
                break;
            }
        }
        let mu0 = b0.exp();
        let mu1 = (b0 + b1).exp();

        // (b) ML dispersion at the current means.
        theta = solve_theta(&g, mu0, mu1, theta);

        loglik_path.push(nb_loglik(&g, mu0, mu1, theta));

        let coef_delta = (b0 - prev_b0).abs().max((b1 - prev_b1).abs());
        let theta_delta = (theta - prev_theta).abs() / (1.0 + prev_theta.abs());
        if coef_delta < OUTER_TOL && theta_delta < OUTER_TOL {
            converged = true;
            break;
        }
    }

    let theta_at_bound = theta >= THETA_CAP;
    // At the dispersion bound the data are effectively Poisson and the fit
    // at the cap is the reported maximum.
    let converged = converged || theta_at_bound;

    let mu0 = b0.exp();
    let mu1 = (b0 + b1).exp();
    // Expected information under the log link: per-observation weight
    // w_g = mu_g * theta / (theta + mu_g); var(b1) = 1/(n0 w0) + 1/(n1 w1).
    let w0 = mu0 * theta / (theta + mu0);
    let w1 = mu1 * theta / (theta + mu1);
    let se_b1 = (1.0 / (g.n0 as f64 * w0) + 1.0 / (g.n1 as f64 * w1)).sqrt();
    let wald_z = b1 / se_b1;
    let p_value = clamp_p(2.0 * (1.0 - normal_cdf(wald_z.abs())));
    let loglik = nb_loglik(&g, mu0, mu1, theta);

    Ok(NbFit {
        b0,
        b1,
        theta,
        se_b1,
        wald_z,
        p_value,
        converged,
        theta_at_bound,
        iterations,
        loglik,
        loglik_path,
    })
}

/// Profile log-likelihood in theta: coefficients concentrated out at the
/// group means (the exact ML solution for the saturated binary design).
pub fn nb_profile_loglik(d: &Dataset, theta: f64) -> Result<f64> {
    if !(theta > 0.0) {
        return Err(Error::Domain(format!(
            "nb_profile_loglik requires theta > 0, got {theta}"
        )));
    }
    let g = split_groups(d)?;
    Ok(nb_loglik(&g, g.ybar0, g.ybar1, theta))
}

/// Fit the lognormal-error model to the counts after the given zero
/// preprocessing.
///
/// The ML location estimates coincide with least squares on the logs; the
/// ML scale uses the `RSS/n` denominator and the factor p-value comes from
/// a two-sided t-test with n-2 degrees of freedom.
pub fn logno_fit(d: &Dataset, mode: ZeroHandling) -> Result<LognoFit> {
    let t = log_transform(d, mode)?;
    let n = t.y.len();
    let n1 = t.factor.iter().filter(|&&g| g).count();
    let n0 = n - n1;
    if n0 < 2 || n1 < 2 {
        return Err(Error::DegenerateData(format!(
            "each group needs at least 2 observations after preprocessing, got {n0} and {n1}"
        )));
    }
    let (mut s0, mut s1) = (0.0, 0.0);
    for (&v, &g) in t.y.iter().zip(&t.factor) {
        if g {
            s1 += v;
        } else {
            s0 += v;
        }
    }
    let b0 = s0 / n0 as f64;
    let b1 = s1 / n1 as f64 - b0;
    let mut rss = 0.0;
    for (&v, &g) in t.y.iter().zip(&t.factor) {
        let r = v - if g { b0 + b1 } else { b0 };
        rss += r * r;
    }
    if rss <= 0.0 {
        return Err(Error::DegenerateData(
            "zero residual variance within groups".into(),
        ));
    }
    let sigma_hat = (rss / n as f64).sqrt();
    let se_b1 = sigma_hat * (1.0 / n0 as f64 + 1.0 / n1 as f64).sqrt();
    let t_stat = b1 / se_b1;
    let df = (n - 2) as f64;
    let p_value = clamp_p(2.0 * (1.0 - t_cdf(t_stat.abs(), df)?));

    // Log-likelihood of the lognormal model on the (shifted) responses:
    // ln y is normal, so the density terms are -ln y - ln sigma - ln sqrt(2 pi)
    // - (ln y - mu)^2 / (2 sigma^2); sum of ln y plus the normal loglik of t.y.
    let ln_2pi = (2.0 * std::f64::consts::PI).ln();
    let loglik = -(t.y.iter().sum::<f64>())
        - n as f64 * (sigma_hat.ln() + 0.5 * ln_2pi)
        - rss / (2.0 * sigma_hat * sigma_hat);

    Ok(LognoFit {
        b0,
        b1,
        sigma_hat,
        se_b1,
        t_stat,
        p_value,
        loglik,
        n_used: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::DiscreteLogNormal;
    use crate::linear_model::ols_binary_fit;
    use crate::rng::RngStream;

    fn dataset(citations: &[u64], factor: &[u8]) -> Dataset {
        Dataset::new(
            citations.to_vec(),
            factor.iter().map(|&g| g == 1).collect(),
        )
        .unwrap()
    }

    fn simulate(mu0: f64, mu1: f64, sigma: f64, n_half: usize, seed: u64) -> Dataset {
        let d0 = DiscreteLogNormal::new(mu0, sigma).unwrap();
        let d1 = DiscreteLogNormal::new(mu1, sigma).unwrap();
        let mut rng = RngStream::new(seed, 0);
        let mut counts = Vec::with_capacity(2 * n_half);
        let mut factor = Vec::with_capacity(2 * n_half);
        for _ in 0..n_half {
            counts.push(d0.sample(&mut rng));
            factor.push(false);
        }
        for _ in 0..n_half {
            counts.push(d1.sample(&mut rng));
            factor.push(true);
        }
        Dataset::new(counts, factor).unwrap()
    }

    /// Brute-force profile-likelihood maximizer: coarse log grid over
    /// [0.01, 1e6], then one refinement pass. Independent of the Newton
    /// path inside `nb_fit`.
    fn theta_grid_oracle(d: &Dataset) -> (f64, f64) {
        let coarse = 241usize;
        let (lo, hi) = (0.01f64.ln(), 1e6f64.ln());
        let step = (hi - lo) / (coarse - 1) as f64;
        let best = |a: f64, b: f64, m: usize| -> f64 {
            let mut best_theta = a.exp();
            let mut best_ll = f64::NEG_INFINITY;
            for i in 0..m {
                let t = (a + (b - a) * i as f64 / (m - 1) as f64).exp();
                let ll = nb_profile_loglik(d, t).unwrap();
                if ll > best_ll {
                    best_ll = ll;
                    best_theta = t;
                }
            }
            best_theta
        };
        let t1 = best(lo, hi, coarse);
        let c = t1.ln();
        let refined = best(c - step, c + step, 81);
        (refined, step)
    }

    /// The grid oracle identifies the maximizer only up to its resolution:
    /// either the two estimates are close on the log scale, or both sit at
    /// their upper bounds (underdispersed data), or the profile likelihood
    /// cannot tell them apart.
    fn theta_agrees_with_oracle(d: &Dataset, fitted: f64, grid: f64, resolution: f64) -> bool {
        if (fitted.ln() - grid.ln()).abs() <= resolution {
            return true;
        }
        if fitted >= THETA_CAP && grid >= 0.99e6 {
            return true;
        }
        let ll_fit = nb_profile_loglik(d, fitted).unwrap();
        let ll_grid = nb_profile_loglik(d, grid).unwrap();
        ll_fit >= ll_grid - 1e-9
    }

    #[test]
    fn fitted_means_equal_sample_means() {
        // Group means 2 and 3: exp(b0) = 2 and b1 = ln 1.5 whatever theta is.
        let d = dataset(&[1, 2, 3, 2, 3, 4], &[0, 0, 0, 1, 1, 1]);
        let fit = nb_fit(&d).unwrap();
        assert!(fit.converged);
        assert!((fit.b0.exp() - 2.0).abs() < 1e-8 * 3.0);
        assert!((fit.b1 - 1.5f64.ln()).abs() < 1e-8);
    }

    #[test]
    fn identical_groups_give_null_result() {
        let d = dataset(&[1, 2, 3, 4, 1, 2, 3, 4], &[0, 0, 0, 0, 1, 1, 1, 1]);
        let fit = nb_fit(&d).unwrap();
        assert!(fit.b1.abs() < 1e-10);
        assert!(fit.p_value > 1.0 - 1e-9);
    }

    #[test]
    fn theta_matches_grid_oracle_on_small_dataset() {
        // Within-group variances sit at/below the means here, so the profile
        // climbs forever: the fit must report the cap and the grid oracle its
        // own upper edge.
        let d = dataset(&[1, 2, 3, 4, 8, 9], &[0, 0, 0, 1, 1, 1]);
        let fit = nb_fit(&d).unwrap();
        let (grid_theta, resolution) = theta_grid_oracle(&d);
        assert!(
            theta_agrees_with_oracle(&d, fit.theta, grid_theta, resolution),
            "theta {} vs grid {} (resolution {resolution})",
            fit.theta,
            grid_theta
        );
    }

    #[test]
    fn theta_matches_grid_oracle_on_random_datasets() {
        let mut rng = RngStream::new(4242, 0);
        let mut checked = 0;
        for trial in 0..100 {
            let mu0 = 0.3 + 1.2 * rng.next_uniform();
            let mu1 = 0.3 + 1.2 * rng.next_uniform();
            let sigma = 0.8 + 1.2 * rng.next_uniform();
            let n_half = 4 + (rng.next_uniform() * 12.0) as usize;
            let d = simulate(mu0, mu1, sigma, n_half, 9000 + trial);
            let Ok(fit) = nb_fit(&d) else {
                continue; // all-zero group; skip
            };
            let (grid_theta, resolution) = theta_grid_oracle(&d);
            assert!(
                theta_agrees_with_oracle(&d, fit.theta, grid_theta, resolution),
                "trial {trial}: theta {} vs grid {} (resolution {resolution})",
                fit.theta,
                grid_theta
            );
            checked += 1;
        }
        assert!(checked >= 90, "only {checked} datasets were fittable");
    }

    #[test]
    fn loglik_is_nondecreasing_across_outer_iterations() {
        for seed in 0..20 {
            let d = simulate(0.5, 0.7, 1.5, 100, 777 + seed);
            let fit = nb_fit(&d).unwrap();
            for w in fit.loglik_path.windows(2) {
                assert!(
                    w[1] >= w[0] - 1e-10,
                    "log-likelihood decreased: {} -> {} (seed {seed})",
                    w[0],
                    w[1]
                );
            }
        }
    }

    #[test]
    fn profile_consistency_at_fitted_theta() {
        let d = simulate(0.5, 0.6, 1.0, 200, 31);
        let fit = nb_fit(&d).unwrap();
        let ll = nb_profile_loglik(&d, fit.theta).unwrap();
        assert!((ll - fit.loglik).abs() < 1e-6);
    }

    #[test]
    fn profile_approaches_poisson_limit() {
        use crate::numerics::log_gamma;
        let d = dataset(&[1, 2, 3, 4, 8, 9], &[0, 0, 0, 1, 1, 1]);
        let ll_nb = nb_profile_loglik(&d, 1e8).unwrap();
        // Poisson log-likelihood at the group means.
        let (m0, m1) = d.group_means().unwrap();
        let ll_pois: f64 = d
            .citations()
            .iter()
            .zip(d.factor())
            .map(|(&y, &f)| {
                let mu: f64 = if f { m1 } else { m0 };
                let yf = y as f64;
                yf * mu.ln() - mu - log_gamma(yf + 1.0).unwrap()
            })
            .sum();
        assert!(
            (ll_nb - ll_pois).abs() < 1e-4,
            "NB at theta=1e8: {ll_nb}, Poisson: {ll_pois}"
        );
    }

    #[test]
    fn all_zero_group_is_degenerate() {
        let d = dataset(&[0, 0, 0, 1, 2, 3], &[0, 0, 0, 1, 1, 1]);
        assert!(matches!(nb_fit(&d), Err(Error::DegenerateData(_))));
        assert!(matches!(
            nb_profile_loglik(&d, 1.0),
            Err(Error::DegenerateData(_))
        ));
        assert!(nb_profile_loglik(&d, 0.0).is_err());
    }

    #[test]
    fn underdispersed_data_report_theta_at_bound() {
        // Near-constant counts: variance far below the mean.
        let d = dataset(
            &[5, 5, 5, 5, 5, 6, 6, 6, 6, 6],
            &[0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
        );
        let fit = nb_fit(&d).unwrap();
        assert!(fit.theta_at_bound);
        assert!(fit.converged);
        assert!((fit.theta - THETA_CAP).abs() < 1.0);
    }

    #[test]
    fn nb_relabeling_invariance() {
        let d = simulate(0.5, 0.8, 1.0, 50, 555);
        let swapped = Dataset::new(
            d.citations().to_vec(),
            d.factor().iter().map(|&g| !g).collect(),
        )
        .unwrap();
        let a = nb_fit(&d).unwrap();
        let b = nb_fit(&swapped).unwrap();
        assert!((a.b1 + b.b1).abs() < 1e-8);
        assert!((a.p_value - b.p_value).abs() < 1e-10);
    }

    #[test]
    fn logno_matches_ols_on_logs() {
        // Same numbers as the ANOVA hand example, on the exp scale with a
        // zero thrown in for the +1 variant to keep.
        let y = [1.0f64, 2.0, 3.0, 2.0, 3.0, 4.0];
        let counts: Vec<u64> = y.iter().map(|v| v.exp().round() as u64).collect();
        let d = dataset(&counts, &[0, 0, 0, 1, 1, 1]);
        let logno = logno_fit(&d, ZeroHandling::DropZeros).unwrap();
        let t = log_transform(&d, ZeroHandling::DropZeros).unwrap();
        let ols = ols_binary_fit(&t.y, &t.factor).unwrap();
        assert!((logno.b0 - ols.b0).abs() < 1e-10);
        assert!((logno.b1 - ols.b1).abs() < 1e-10);
        assert_eq!(logno.n_used, ols.n_used);
    }

    #[test]
    fn logno_scale_shift_invariance() {
        // Scaling the responses by e^c shifts b0 by c, leaves b1 and p alone.
        let d = simulate(0.5, 0.9, 1.0, 40, 99);
        let base = logno_fit(&d, ZeroHandling::DropZeros).unwrap();
        let scaled_counts: Vec<u64> = d
            .citations()
            .iter()
            .map(|&c| ((c as f64) * std::f64::consts::E.powi(2)).round() as u64)
            .collect();
        let scaled = Dataset::new(scaled_counts, d.factor().to_vec()).unwrap();
        let fit = logno_fit(&scaled, ZeroHandling::DropZeros).unwrap();
        // Rounding to integer counts perturbs the scaled data slightly, so
        // compare with a loose-but-meaningful tolerance.
        assert!((fit.b0 - base.b0 - 2.0).abs() < 0.02, "b0 {} vs {}", fit.b0, base.b0);
        assert!((fit.b1 - base.b1).abs() < 0.03);
    }

    #[test]
    fn logno_and_anova_decisions_usually_agree() {
        // The two tests differ only in the ML-vs-OLS scale denominator, so
        // their alpha = 0.05 decisions coincide except at the boundary.
        let mut agree = 0;
        let total = 1000;
        for seed in 0..total {
            let d = simulate(0.5, 0.5, 1.0, 250, 100_000 + seed);
            let logno = logno_fit(&d, ZeroHandling::DropZeros).unwrap();
            let t = log_transform(&d, ZeroHandling::DropZeros).unwrap();
            let anova = ols_binary_fit(&t.y, &t.factor).unwrap();
            if (logno.p_value < 0.05) == (anova.p_value < 0.05) {
                agree += 1;
            }
        }
        assert!(
            agree as f64 / total as f64 >= 0.99,
            "decision agreement only {agree}/{total}"
        );
    }

    #[test]
    fn logno_add_one_uses_full_sample() {
        let d = dataset(&[0, 1, 2, 0, 3, 4], &[0, 0, 0, 1, 1, 1]);
        let plus1 = logno_fit(&d, ZeroHandling::AddOne).unwrap();
        assert_eq!(plus1.n_used, 6);
        let trunc = logno_fit(&d, ZeroHandling::DropZeros).unwrap();
        assert_eq!(trunc.n_used, 4);
    }

    #[test]
    fn wald_and_likelihood_ratio_cross_check() {
        // LR statistic from the profile likelihood under the null (common
        // mean) vs the Wald z^2; asymptotically equal, and the alpha = 0.05
        // decisions should almost always match on clear-effect data.
        fn null_profile_loglik(d: &Dataset, theta: f64) -> f64 {
            let ybar = d.citations().iter().map(|&y| y as f64).sum::<f64>()
                / d.len() as f64;
            let p = NegBinParams::new(ybar, theta).unwrap();
            d.citations().iter().map(|&y| p.log_pmf(y)).sum()
        }
        fn null_loglik_max(d: &Dataset) -> f64 {
            let mut best = f64::NEG_INFINITY;
            for i in 0..300 {
                let theta = (0.01f64.ln()
                    + (1e6f64.ln() - 0.01f64.ln()) * i as f64 / 299.0)
                    .exp();
                best = best.max(null_profile_loglik(d, theta));
            }
            best
        }
        let mut agree = 0;
        let total = 60;
        for seed in 0..total {
            let effect = [0.0, 0.05, 0.1][seed as usize % 3];
            let d = simulate(0.5, 0.5 + effect, 1.0, 250, 50_000 + seed);
            let fit = nb_fit(&d).unwrap();
            let lr = 2.0 * (fit.loglik - null_loglik_max(&d));
            let lr_p = 1.0 - crate::numerics::chisq_cdf(lr.max(0.0), 1.0).unwrap();
            if (lr_p < 0.05) == (fit.p_value < 0.05) {
                agree += 1;
            }
        }
        assert!(
            agree >= total * 9 / 10,
            "Wald and LR decisions agree only {agree}/{total}"
        );
    }
}
