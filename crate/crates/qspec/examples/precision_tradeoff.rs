//! Joint-measurement precision at the fringe extrema: covariance, quantum
//! Fisher information, normalized regrets and the trade-off sums for the
//! three extremum selections.
//!
//! Run with: cargo run --release --example precision_tradeoff

use qspec::config::{MRAD, NM};
use qspec::{extrema, optics, precision, AngleMode, OpticalConfig};

fn main() -> qspec::Result<()> {
    let cfg = OpticalConfig::default();
    let lambda = 609.16 * NM;
    let tau = optics::transmissivity(&cfg);
    let range = (0.5 * MRAD, 4.0 * MRAD);

    println!("tau = {tau:.6}\n");
    println!(
        "{:<14} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "selection", "theta1", "theta2", "delta_n", "delta_a", "sum", "target"
    );
    for (mode, name, target) in [
        (AngleMode::PeakValley, "peak/valley", 1.5),
        (AngleMode::PeakPeak, "peak/peak", 1.5 + tau / 2.0),
        (AngleMode::ValleyValley, "valley/valley", 1.5 - tau / 2.0),
    ] {
        let (t1, t2) =
            extrema::select_angle_pair(&cfg, lambda, range, mode, 2.09 * MRAD, 2.73 * MRAD)?;
        let r = precision::precision_report(&cfg, lambda, t1, t2)?;
        println!(
            "{:<14} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
            name,
            t1 / MRAD,
            t2 / MRAD,
            r.delta_n,
            r.delta_alpha,
            r.tradeoff_sum,
            target
        );
    }

    // Away from the extrema, the covariance is finite in both parameters;
    // print it for a quadrature pair.
    let (q, v) = extrema::quadrature_pair(&cfg, lambda, range)?;
    let report = precision::precision_report(&cfg, lambda, q, v)?;
    println!(
        "\nquadrature pair ({:.4}, {:.4}) mrad at M = 1:",
        q / MRAD,
        v / MRAD
    );
    println!(
        "  var(n)     = {:.4e}\n  var(alpha) = {:.4e} 1/cm^2\n  cov        = {:.4e} 1/cm",
        report.covariance.nn, report.covariance.aa, report.covariance.na
    );
    println!(
        "  QFI diag   = ({:.4e}, {:.4e})",
        report.qfi.nn, report.qfi.aa
    );
    Ok(())
}
