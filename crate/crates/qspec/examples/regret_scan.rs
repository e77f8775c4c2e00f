//! Normalized Fisher-information regrets along a refractive-index scan with
//! the observation angles held at the stock peak/valley pair: the two regrets
//! oscillate against each other while their sum stays pinned near 3/2.
//!
//! Run with: cargo run --release --example regret_scan

use qspec::config::{MRAD, NM};
use qspec::{extrema, precision, AngleMode, OpticalConfig};

fn main() -> qspec::Result<()> {
    let alpha = 0.2;
    let base = OpticalConfig::default().with_medium_params(1.0 - 9e-5, alpha);
    let lambda = 609.16 * NM;
    let (t1, t2) = extrema::select_angle_pair(
        &base,
        lambda,
        (0.5 * MRAD, 4.0 * MRAD),
        AngleMode::PeakValley,
        2.09 * MRAD,
        2.73 * MRAD,
    )?;
    println!(
        "angles fixed at ({:.4}, {:.4}) mrad, alpha = {alpha} 1/cm",
        t1 / MRAD,
        t2 / MRAD
    );
    println!(
        "{:>12} {:>9} {:>9} {:>9} {:>9} {:>8} {:>8}",
        "n_i^m", "dn", "dn~", "da", "da~", "sum", "sum~"
    );
    for i in 0..=20 {
        let n = 0.9999 + 1e-4 * i as f64 / 20.0;
        let cfg = base.with_medium_params(n, alpha);
        let r = precision::precision_report(&cfg, lambda, t1, t2)?;
        println!(
            "{:>12.7} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>8.4} {:>8.4}",
            n,
            r.delta_n,
            r.delta_n_approx,
            r.delta_alpha,
            r.delta_alpha_approx,
            r.tradeoff_sum,
            r.tradeoff_sum_approx
        );
    }
    println!("(~ columns are the closed-form approximations)");
    Ok(())
}
