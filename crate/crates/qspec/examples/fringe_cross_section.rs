//! Angular cross-section of the signal intensity at a fixed wavelength:
//! the interference fringe whose peaks and valleys carry the medium's
//! infrared refraction and absorption.
//!
//! Run with: cargo run --release --example fringe_cross_section

use qspec::config::{MRAD, NM};
use qspec::{extrema, optics, OpticalConfig};

fn main() -> qspec::Result<()> {
    let cfg = OpticalConfig::default();
    let lambda = 609.16 * NM;

    let lambda_i = optics::idler_wavelength(&cfg, lambda)?;
    let tau = optics::transmissivity(&cfg);
    println!("signal {:.2} nm -> idler {:.2} nm, tau = {tau:.6}", lambda / NM, lambda_i / NM);

    let list = extrema::find_extrema(&cfg, lambda, 0.5 * MRAD, 4.0 * MRAD)?;
    println!("{:<8} {:>12} {:>14} {:>14}", "kind", "theta_mrad", "occupancy", "phase/pi");
    for e in &list {
        println!(
            "{:<8} {:>12.4} {:>14.4e} {:>14.6}",
            match e.kind {
                extrema::ExtremumKind::Peak => "peak",
                extrema::ExtremumKind::Valley => "valley",
            },
            e.theta / MRAD,
            e.intensity,
            e.total_phase / std::f64::consts::PI
        );
    }

    let peak = list.iter().find(|e| e.kind == extrema::ExtremumKind::Peak).unwrap();
    let valley = list.iter().find(|e| e.kind == extrema::ExtremumKind::Valley).unwrap();
    let visibility = (peak.intensity - valley.intensity) / (peak.intensity + valley.intensity);
    println!("fringe visibility {visibility:.6} (equals tau up to the envelope tilt)");
    Ok(())
}
