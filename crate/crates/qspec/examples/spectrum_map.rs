//! Two-dimensional wavelength-angle intensity map of the output signal
//! light, written as CSV for plotting.
//!
//! Run with: cargo run --release --example spectrum_map

use qspec::config::{NM, MRAD};
use qspec::{state, OpticalConfig};

fn main() -> qspec::Result<()> {
    let cfg = OpticalConfig::default();

    let lambdas: Vec<f64> = (0..=100).map(|i| (585.0 + 0.5 * i as f64) * NM).collect();
    let thetas: Vec<f64> = (0..=200).map(|i| 0.02 * i as f64 * MRAD).collect();

    let path = std::env::temp_dir().join("qspec_spectrum.csv");
    let mut csv = String::from("lambda_s_nm,theta_mrad,intensity\n");
    let mut brightest = (0.0, 0.0, 0.0f64);
    for &lambda in &lambdas {
        for &theta in &thetas {
            let ip = state::intensity_point(&cfg, lambda, theta)?;
            if ip.intensity > brightest.2 {
                brightest = (lambda, theta, ip.intensity);
            }
            csv.push_str(&format!(
                "{:.6},{:.6},{:.6e}\n",
                lambda / NM,
                theta / MRAD,
                ip.intensity
            ));
        }
    }
    std::fs::write(&path, csv)?;

    println!(
        "wrote {} x {} grid to {}",
        lambdas.len(),
        thetas.len(),
        path.display()
    );
    println!(
        "brightest point: lambda_s = {:.2} nm, theta = {:.3} mrad, occupancy {:.3e}",
        brightest.0 / NM,
        brightest.1 / MRAD,
        brightest.2
    );
    Ok(())
}
