//! Simulated photon counting and recovery of (n_i^m, alpha) by weighted
//! nonlinear least squares, with a Monte-Carlo harness that validates the
//! error-propagation covariance.
//!
//! Counts are generated from the state-route occupancy; the fit model goes
//! through the closed-form fringe expression. The two routes agree to the
//! tested equivalence, so the generator and the model share the same physics
//! without sharing code paths.

use crate::config::OpticalConfig;
use crate::error::{Error, Result};
use crate::optics;
use crate::precision::{self, TwoByTwo};
use crate::state;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use rayon::prelude::*;
use serde::Serialize;

/// One simulated acquisition: photon counts per observed angle.
#[derive(Debug, Clone, Serialize)]
pub struct MeasurementRecord {
    /// Signal wavelength (m).
    pub lambda_signal: f64,
    /// Observed emission angles (rad).
    pub angles: Vec<f64>,
    /// Accumulated photon counts per angle.
    pub counts: Vec<u64>,
    /// Repeated-measurement number M.
    pub shots: u64,
    /// Generator truth (n_i^m, alpha in 1/cm), for harness bookkeeping only.
    pub truth: (f64, f64),
}

/// Weighted least-squares fit outcome.
#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    pub n_medium: f64,
    pub alpha_per_cm: f64,
    /// Inverse Gauss-Newton curvature at the optimum, weighted by the count
    /// variances.
    pub covariance: TwoByTwo,
    pub iterations: u32,
    pub converged: bool,
    pub residual_norm: f64,
}

/// Monte-Carlo validation summary over repeated simulate + fit trials.
#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloSummary {
    pub trials: u64,
    /// Trials dropped because the fit did not converge.
    pub excluded: u64,
    pub mean_n_medium: f64,
    pub mean_alpha_per_cm: f64,
    pub bias_n_medium: f64,
    pub bias_alpha_per_cm: f64,
    pub sample_covariance: TwoByTwo,
    /// Error-propagation prediction at the truth.
    pub predicted_covariance: TwoByTwo,
    pub angles: Vec<f64>,
    pub shots: u64,
}

/// Draw one photon count for a Bernoulli occupancy p accumulated over
/// `shots` repetitions: Poisson in the rare-count limit (p < 1e-3, where
/// M p (1-p) is indistinguishable from M p), binomial otherwise.
pub fn sample_photon_count(rng: &mut ChaCha8Rng, shots: u64, p: f64) -> Result<u64> {
    debug_assert!((0.0..=1.0).contains(&p));
    let mean = shots as f64 * p;
    if mean > i64::MAX as f64 {
        return Err(Error::CountOverflow { mean });
    }
    if p == 0.0 || mean == 0.0 {
        return Ok(0);
    }
    if p < 1e-3 {
        let dist = rand_distr::Poisson::new(mean)
            .map_err(|_| Error::CountOverflow { mean })?;
        Ok(dist.sample(rng) as u64)
    } else {
        let dist = rand_distr::Binomial::new(shots, p)
            .map_err(|_| Error::CountOverflow { mean })?;
        Ok(dist.sample(rng))
    }
}

fn counts_with_rng(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    angles: &[f64],
    shots: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<u64>> {
    angles
        .iter()
        .map(|&theta| {
            let ip = state::intensity_point(cfg, lambda_signal, theta)?;
            sample_photon_count(rng, shots, ip.intensity)
        })
        .collect()
}

/// Simulate one acquisition with independent counts per angle. Deterministic
/// under a fixed seed.
pub fn simulate_counts(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    angles: &[f64],
    shots: u64,
    seed: u64,
) -> Result<MeasurementRecord> {
    if angles.len() < 2 {
        return Err(Error::InvalidConfig(
            "a measurement record needs at least 2 angles".into(),
        ));
    }
    if shots < 1 {
        return Err(Error::InvalidConfig("shots must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts = counts_with_rng(cfg, lambda_signal, angles, shots, &mut rng)?;
    Ok(MeasurementRecord {
        lambda_signal,
        angles: angles.to_vec(),
        counts,
        shots,
        truth: (cfg.n_idler_medium, cfg.alpha_per_cm),
    })
}

/// Expected counts and their parameter gradient for the fit model.
fn model_row(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta: f64,
    shots: f64,
) -> Result<(f64, [f64; 2])> {
    let mp = optics::mode_point(cfg, lambda_signal, theta)?;
    let u = state::signal_intensity_closed_form(&mp, cfg);
    let p = u / (1.0 + u);
    let [du_dn, du_da] = precision::intensity_gradient(cfg, &mp);
    let chain = shots / ((1.0 + u) * (1.0 + u));
    Ok((shots * p, [chain * du_dn, chain * du_da]))
}

struct Objective {
    value: f64,
    grad: [f64; 2],
    curvature: TwoByTwo,
}

fn evaluate(
    base: &OpticalConfig,
    record: &MeasurementRecord,
    params: [f64; 2],
) -> Result<Objective> {
    let cfg = base.with_medium_params(params[0], params[1]);
    let shots = record.shots as f64;
    let mut value = 0.0;
    let mut grad = [0.0; 2];
    let mut curv = TwoByTwo::zero();
    for (&theta, &count) in record.angles.iter().zip(&record.counts) {
        let (model, j) = model_row(&cfg, record.lambda_signal, theta, shots)?;
        let w = 1.0 / (count.max(1) as f64);
        let r = count as f64 - model;
        value += w * r * r;
        grad[0] += w * j[0] * r;
        grad[1] += w * j[1] * r;
        curv.nn += w * j[0] * j[0];
        curv.na += w * j[0] * j[1];
        curv.aa += w * j[1] * j[1];
    }
    Ok(Objective {
        value,
        grad,
        curvature: curv,
    })
}

fn solve_damped(h: &TwoByTwo, lambda: f64, g: [f64; 2]) -> Option<[f64; 2]> {
    let a = h.nn * (1.0 + lambda);
    let d = h.aa * (1.0 + lambda);
    let b = h.na;
    let det = a * d - b * b;
    if det <= 0.0 || !det.is_finite() {
        return None;
    }
    Some([(d * g[0] - b * g[1]) / det, (a * g[1] - b * g[0]) / det])
}

const MAX_ITERATIONS: u32 = 200;

/// Recover (n_i^m, alpha) from a measurement record by Levenberg-Marquardt on
/// the count residuals weighted by 1/max(count, 1).
///
/// The fit is only locally identifiable: shifting n_i^m by one fringe period
/// (lambda_i / l0, about 1.7e-4 with the stock geometry) reproduces the same
/// intensities, so the initial guess selects the fringe.
pub fn fit_parameters(
    record: &MeasurementRecord,
    base: &OpticalConfig,
    initial_guess: (f64, f64),
) -> Result<FitResult> {
    if record.angles.len() < 2 || record.angles.len() != record.counts.len() {
        return Err(Error::InvalidConfig(
            "fit needs >= 2 angles with matching counts".into(),
        ));
    }
    let (n0, a0) = initial_guess;
    if !(n0 > 0.9 && n0 < 1.1 && (0.0..=10.0).contains(&a0)) {
        return Err(Error::GuessOutOfRange {
            n_medium: n0,
            alpha_per_cm: a0,
        });
    }

    let mut params = [n0, a0];
    let mut obj = evaluate(base, record, params)?;
    let g0_norm = (obj.grad[0] * obj.grad[0] + obj.grad[1] * obj.grad[1]).sqrt();
    let mut lambda = 1e-3;
    let mut converged = g0_norm == 0.0;
    let mut iterations = 0u32;

    while !converged && iterations < MAX_ITERATIONS {
        iterations += 1;
        let g_norm = (obj.grad[0] * obj.grad[0] + obj.grad[1] * obj.grad[1]).sqrt();
        if g_norm <= 1e-8 * g0_norm {
            converged = true;
            break;
        }
        // A parameter with an identically flat model direction cannot be
        // rescued by damping.
        if obj.curvature.nn == 0.0 || obj.curvature.aa == 0.0 {
            return Err(Error::SingularCurvature);
        }
        let step = match solve_damped(&obj.curvature, lambda, obj.grad) {
            Some(s) => s,
            None => return Err(Error::SingularCurvature),
        };
        let trial = [params[0] + step[0], params[1] + step[1]];
        match evaluate(base, record, trial) {
            Ok(trial_obj) if trial_obj.value <= obj.value => {
                let rel_step = (step[0].abs() / params[0].abs().max(1.0))
                    .max(step[1].abs() / params[1].abs().max(1e-3));
                params = trial;
                obj = trial_obj;
                lambda = (lambda / 3.0).max(1e-14);
                if rel_step < 1e-10 {
                    converged = true;
                }
            }
            _ => {
                lambda *= 3.0;
                if lambda > 1e14 {
                    // Damping exhausted: stationary within floating-point
                    // resolution.
                    converged = true;
                }
            }
        }
    }

    let curv = obj.curvature;
    let scale = curv.nn.abs() * curv.aa.abs() + curv.na * curv.na;
    if !(curv.det() > 1e-24 * scale) || !curv.is_finite() {
        return Err(Error::SingularCurvature);
    }
    let covariance = curv.inverse().ok_or(Error::SingularCurvature)?;
    Ok(FitResult {
        n_medium: params[0],
        alpha_per_cm: params[1],
        covariance,
        iterations,
        converged,
        residual_norm: obj.value.sqrt(),
    })
}

fn sample_covariance(estimates: &[(f64, f64)]) -> ([f64; 2], TwoByTwo) {
    let t = estimates.len() as f64;
    let mean_n = estimates.iter().map(|e| e.0).sum::<f64>() / t;
    let mean_a = estimates.iter().map(|e| e.1).sum::<f64>() / t;
    let mut cov = TwoByTwo::zero();
    for &(n, a) in estimates {
        let dn = n - mean_n;
        let da = a - mean_a;
        cov.nn += dn * dn;
        cov.na += dn * da;
        cov.aa += da * da;
    }
    ([mean_n, mean_a], cov.scale(1.0 / (t - 1.0)))
}

/// Per-trial estimates of the Monte-Carlo harness: simulate + fit with the
/// truth as the initial guess (which pins the central fringe). Trials whose
/// fit fails or does not converge yield `None`.
///
/// Each trial owns its own ChaCha stream derived from the trial index, so the
/// result is bitwise reproducible regardless of thread scheduling.
pub fn monte_carlo_estimates(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    angles: &[f64],
    shots: u64,
    trials: u64,
    seed: u64,
) -> Result<Vec<Option<(f64, f64)>>> {
    if angles.len() < 2 {
        return Err(Error::InvalidConfig(
            "monte carlo needs at least 2 angles".into(),
        ));
    }
    let truth = (cfg.n_idler_medium, cfg.alpha_per_cm);
    Ok((0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial + 1);
            let counts = counts_with_rng(cfg, lambda_signal, angles, shots, &mut rng).ok()?;
            let record = MeasurementRecord {
                lambda_signal,
                angles: angles.to_vec(),
                counts,
                shots,
                truth,
            };
            let fit = fit_parameters(&record, cfg, truth).ok()?;
            fit.converged.then_some((fit.n_medium, fit.alpha_per_cm))
        })
        .collect())
}

/// Run `trials` independent simulate + fit rounds and compare the sample
/// covariance of the estimates with the error-propagation prediction.
pub fn monte_carlo(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    angles: &[f64],
    shots: u64,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloSummary> {
    if trials < 100 {
        return Err(Error::InvalidConfig("monte carlo needs trials >= 100".into()));
    }
    let truth = (cfg.n_idler_medium, cfg.alpha_per_cm);
    let results = monte_carlo_estimates(cfg, lambda_signal, angles, shots, trials, seed)?;
    let estimates: Vec<(f64, f64)> = results.iter().flatten().copied().collect();
    let excluded = trials - estimates.len() as u64;
    if estimates.len() < 2 {
        return Err(Error::SingularCurvature);
    }
    let ([mean_n, mean_a], cov) = sample_covariance(&estimates);

    let predicted = if angles.len() == 2 {
        precision::covariance_matrix(cfg, lambda_signal, angles[0], angles[1], shots)?
    } else {
        precision::classical_fisher_multi(cfg, lambda_signal, angles)?
            .inverse()
            .ok_or(Error::SingularJacobian)?
            .scale(1.0 / shots as f64)
    };

    Ok(MonteCarloSummary {
        trials,
        excluded,
        mean_n_medium: mean_n,
        mean_alpha_per_cm: mean_a,
        bias_n_medium: mean_n - truth.0,
        bias_alpha_per_cm: mean_a - truth.1,
        sample_covariance: cov,
        predicted_covariance: predicted,
        angles: angles.to_vec(),
        shots,
    })
}

/// Bootstrap standard errors of the sample-covariance entries, resampling the
/// per-trial estimates with replacement. Deterministic under the seed.
pub fn bootstrap_covariance_se(
    estimates: &[(f64, f64)],
    resamples: u32,
    seed: u64,
) -> TwoByTwo {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = estimates.len();
    let mut sums = TwoByTwo::zero();
    let mut sq = TwoByTwo::zero();
    let mut draw = Vec::with_capacity(n);
    for _ in 0..resamples {
        draw.clear();
        for _ in 0..n {
            let idx = rand::Rng::random_range(&mut rng, 0..n);
            draw.push(estimates[idx]);
        }
        let (_, cov) = sample_covariance(&draw);
        sums = sums.add(&cov);
        sq.nn += cov.nn * cov.nn;
        sq.na += cov.na * cov.na;
        sq.aa += cov.aa * cov.aa;
    }
    let b = resamples as f64;
    let var = |s2: f64, s: f64| (s2 / b - (s / b) * (s / b)).max(0.0).sqrt();
    TwoByTwo::new(
        var(sq.nn, sums.nn),
        var(sq.na, sums.na),
        var(sq.aa, sums.aa),
    )
}
