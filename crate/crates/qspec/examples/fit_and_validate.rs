//! The measurement procedure in silico: simulate photon counts over a set of
//! emission angles, recover (n_i^m, alpha) by weighted nonlinear least
//! squares, then validate the predicted covariance by Monte Carlo.
//!
//! Run with: cargo run --release --example fit_and_validate

use qspec::config::{MRAD, NM};
use qspec::{estimation, extrema, OpticalConfig};

fn main() -> qspec::Result<()> {
    let cfg = OpticalConfig::default();
    let lambda = 609.16 * NM;
    let shots = 100_000_000;

    // One noisy acquisition over eight angles spanning the working fringe.
    let angles: Vec<f64> = (0..8).map(|i| (1.75 + 0.15 * i as f64) * MRAD).collect();
    let record = estimation::simulate_counts(&cfg, lambda, &angles, shots, 1)?;
    println!("counts: {:?}", record.counts);

    let guess = (cfg.n_idler_medium + 2e-5, 0.2);
    let fit = estimation::fit_parameters(&record, &cfg, guess)?;
    println!(
        "fit: n_i^m = {:.9} (truth {:.9}), alpha = {:.5} 1/cm (truth {:.5})",
        fit.n_medium, cfg.n_idler_medium, fit.alpha_per_cm, cfg.alpha_per_cm
    );
    println!(
        "     {} iterations, converged: {}, sigma(n) = {:.2e}, sigma(alpha) = {:.2e}",
        fit.iterations,
        fit.converged,
        fit.covariance.nn.sqrt(),
        fit.covariance.aa.sqrt()
    );

    // Monte Carlo on the quadrature pair: sample covariance of the estimates
    // against the error-propagation prediction.
    let (q, v) = extrema::quadrature_pair(&cfg, lambda, (0.5 * MRAD, 4.0 * MRAD))?;
    let mc = estimation::monte_carlo(&cfg, lambda, &[q, v], shots, 1000, 42)?;
    println!(
        "\nmonte carlo over {} trials at ({:.4}, {:.4}) mrad ({} excluded):",
        mc.trials,
        q / MRAD,
        v / MRAD,
        mc.excluded
    );
    println!(
        "  bias            = ({:+.3e}, {:+.3e})",
        mc.bias_n_medium, mc.bias_alpha_per_cm
    );
    println!(
        "  sample var      = ({:.4e}, {:.4e})",
        mc.sample_covariance.nn, mc.sample_covariance.aa
    );
    println!(
        "  predicted var   = ({:.4e}, {:.4e})",
        mc.predicted_covariance.nn, mc.predicted_covariance.aa
    );
    Ok(())
}
