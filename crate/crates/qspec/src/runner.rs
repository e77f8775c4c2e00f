//! Scan orchestration: turn a run configuration into CSV/JSON data files.

use crate::config::{AngleMode, RunConfig, ScanParameter, MRAD};
use crate::error::{Error, Result};
use crate::estimation;
use crate::extrema::{self, Extremum};
use crate::optics;
use crate::precision;
use crate::state;
use rayon::prelude::*;
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};

/// Subcommands of the `qspec` binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    CrossSection,
    VarianceMap,
    RegretScan,
    TradeoffCheck,
    MonteCarlo,
}

/// Serialize a float with 17 significant digits so re-ingestion reproduces
/// the value bitwise.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

fn linspace(lo: f64, hi: f64, steps: u64) -> Vec<f64> {
    let n = steps.max(2);
    let h = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + i as f64 * h).collect()
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, contents)?;
    Ok(())
}

/// Observed angle pair resolved from the run configuration.
fn resolve_angles(cfg: &RunConfig) -> Result<(f64, f64)> {
    extrema::select_angle_pair(
        &cfg.optical,
        cfg.lambda_fixed,
        (cfg.theta_min, cfg.theta_max),
        cfg.angle_mode,
        cfg.theta1,
        cfg.theta2,
    )
}

fn spectrum_csv(cfg: &RunConfig) -> Result<String> {
    let lambdas = linspace(cfg.lambda_min, cfg.lambda_max, cfg.lambda_steps);
    let thetas = linspace(cfg.theta_min, cfg.theta_max, cfg.theta_steps);
    let rows: Result<Vec<String>> = lambdas
        .par_iter()
        .map(|&lambda| {
            let mut chunk = String::new();
            for &theta in &thetas {
                let ip = state::intensity_point(&cfg.optical, lambda, theta)?;
                chunk.push_str(&format!(
                    "{},{},{}\n",
                    fmt_f64(lambda / 1e-9),
                    fmt_f64(theta / MRAD),
                    fmt_f64(ip.intensity)
                ));
            }
            Ok(chunk)
        })
        .collect();
    let mut out = String::from("lambda_s_nm,theta_mrad,intensity\n");
    for chunk in rows? {
        out.push_str(&chunk);
    }
    Ok(out)
}

#[derive(Serialize)]
struct ExtremumRecord {
    theta_mrad: f64,
    kind: extrema::ExtremumKind,
    intensity: f64,
    total_phase_rad: f64,
}

fn cross_section_outputs(cfg: &RunConfig) -> Result<(String, String)> {
    let thetas = linspace(cfg.theta_min, cfg.theta_max, cfg.theta_steps);
    let mut csv = String::from("theta_mrad,intensity,delta_rad,delta_m_rad\n");
    for &theta in &thetas {
        let mp = optics::mode_point(&cfg.optical, cfg.lambda_fixed, theta)?;
        let ba = state::branch_amplitudes(&mp, &cfg.optical);
        let (p, _) = state::signal_intensity_from_state(&ba);
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(theta / MRAD),
            fmt_f64(p),
            fmt_f64(mp.delta_crystal),
            fmt_f64(mp.delta_medium)
        ));
    }
    let extrema = match extrema::find_extrema(
        &cfg.optical,
        cfg.lambda_fixed,
        cfg.theta_min,
        cfg.theta_max,
    ) {
        Ok(list) => list,
        Err(Error::NoFringe { .. }) => Vec::new(),
        Err(e) => return Err(e),
    };
    let records: Vec<ExtremumRecord> = extrema
        .iter()
        .map(|e: &Extremum| ExtremumRecord {
            theta_mrad: e.theta / MRAD,
            kind: e.kind,
            intensity: e.intensity,
            total_phase_rad: e.total_phase,
        })
        .collect();
    let json = serde_json::to_string_pretty(&serde_json::json!({
        "lambda_signal_nm": cfg.lambda_fixed / 1e-9,
        "extrema": records,
    }))?;
    Ok((csv, json))
}

fn variance_map_csv(cfg: &RunConfig) -> Result<String> {
    let (theta1, theta2) = resolve_angles(cfg)?;
    let ns = linspace(cfg.n_medium_min, cfg.n_medium_max, cfg.n_medium_steps);
    let alphas = linspace(cfg.alpha_min_per_cm, cfg.alpha_max_per_cm, cfg.alpha_steps);
    let shots = cfg.optical.shots;
    let rows: Result<Vec<String>> = ns
        .par_iter()
        .map(|&n| {
            let mut chunk = String::new();
            for &alpha in &alphas {
                let phys = cfg.optical.with_medium_params(n, alpha);
                let (var_n, var_a, cov, singular) = match precision::covariance_matrix(
                    &phys,
                    cfg.lambda_fixed,
                    theta1,
                    theta2,
                    shots,
                ) {
                    Ok(c) => (c.nn, c.aa, c.na, 0),
                    Err(Error::SingularJacobian) => {
                        (f64::INFINITY, f64::INFINITY, f64::INFINITY, 1)
                    }
                    Err(e) => return Err(e),
                };
                chunk.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt_f64(n),
                    fmt_f64(alpha),
                    fmt_f64(var_n),
                    fmt_f64(var_a),
                    fmt_f64(cov),
                    singular
                ));
            }
            Ok(chunk)
        })
        .collect();
    let mut out = String::from("n_i_m,alpha_per_cm,var_n,var_alpha,cov,singular_flag\n");
    for chunk in rows? {
        out.push_str(&chunk);
    }
    Ok(out)
}

fn regret_scan_csv(cfg: &RunConfig) -> Result<String> {
    let (theta1, theta2) = resolve_angles(cfg)?;
    let values = match cfg.scan_parameter {
        ScanParameter::NMedium => linspace(cfg.n_medium_min, cfg.n_medium_max, cfg.n_medium_steps),
        ScanParameter::Alpha => linspace(cfg.alpha_min_per_cm, cfg.alpha_max_per_cm, cfg.alpha_steps),
    };
    let rows: Result<Vec<String>> = values
        .par_iter()
        .map(|&value| {
            let phys = match cfg.scan_parameter {
                ScanParameter::NMedium => {
                    cfg.optical.with_medium_params(value, cfg.optical.alpha_per_cm)
                }
                ScanParameter::Alpha => {
                    cfg.optical.with_medium_params(cfg.optical.n_idler_medium, value)
                }
            };
            let r = precision::precision_report(&phys, cfg.lambda_fixed, theta1, theta2)?;
            Ok(format!(
                "{},{},{},{},{},{},{}\n",
                fmt_f64(value),
                fmt_f64(r.delta_n),
                fmt_f64(r.delta_alpha),
                fmt_f64(r.delta_n_approx),
                fmt_f64(r.delta_alpha_approx),
                fmt_f64(r.tradeoff_sum),
                fmt_f64(r.tradeoff_sum_approx)
            ))
        })
        .collect();
    let mut out = String::from(
        "scan_value,delta_n,delta_alpha,delta_n_approx,delta_alpha_approx,sum,sum_approx\n",
    );
    for row in rows? {
        out.push_str(&row);
    }
    Ok(out)
}

#[derive(Serialize)]
struct TradeoffSelection {
    mode: &'static str,
    theta1_mrad: f64,
    theta2_mrad: f64,
    tradeoff_sum: f64,
    tradeoff_sum_approx: f64,
    target: f64,
}

/// Trade-off sums for the three extremum selections against their targets
/// 3/2, 3/2 + tau/2 and 3/2 - tau/2.
pub fn tradeoff_report(cfg: &RunConfig) -> Result<serde_json::Value> {
    let tau = optics::transmissivity(&cfg.optical);
    let selections = [
        (AngleMode::PeakValley, "peak-valley", 1.5),
        (AngleMode::PeakPeak, "peak-peak", 1.5 + tau / 2.0),
        (AngleMode::ValleyValley, "valley-valley", 1.5 - tau / 2.0),
    ];
    let mut out = Vec::new();
    for (mode, name, target) in selections {
        let (theta1, theta2) = extrema::select_angle_pair(
            &cfg.optical,
            cfg.lambda_fixed,
            (cfg.theta_min, cfg.theta_max),
            mode,
            cfg.theta1,
            cfg.theta2,
        )?;
        let r = precision::precision_report(&cfg.optical, cfg.lambda_fixed, theta1, theta2)?;
        out.push(TradeoffSelection {
            mode: name,
            theta1_mrad: theta1 / MRAD,
            theta2_mrad: theta2 / MRAD,
            tradeoff_sum: r.tradeoff_sum,
            tradeoff_sum_approx: r.tradeoff_sum_approx,
            target,
        });
    }
    Ok(serde_json::json!({
        "lambda_signal_nm": cfg.lambda_fixed / 1e-9,
        "tau": tau,
        "selections": out,
    }))
}

fn montecarlo_json(cfg: &RunConfig) -> Result<String> {
    let angles = if cfg.angle_mode == AngleMode::Explicit {
        vec![cfg.theta1, cfg.theta2]
    } else {
        let (q, v) = extrema::quadrature_pair(
            &cfg.optical,
            cfg.lambda_fixed,
            (cfg.theta_min, cfg.theta_max),
        )?;
        vec![q, v]
    };
    let summary = estimation::monte_carlo(
        &cfg.optical,
        cfg.lambda_fixed,
        &angles,
        cfg.optical.shots,
        cfg.trials,
        cfg.seed,
    )?;
    Ok(serde_json::to_string_pretty(&summary)?)
}

/// Run one subcommand, writing its data files under `out_dir`. Returns the
/// paths written.
pub fn run_command(cmd: Command, cfg: &RunConfig, out_dir: &Path) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    let mut written = Vec::new();
    match cmd {
        Command::Spectrum => {
            let path = out_dir.join("spectrum.csv");
            write_file(&path, &spectrum_csv(cfg)?)?;
            written.push(path);
        }
        Command::CrossSection => {
            let (csv, json) = cross_section_outputs(cfg)?;
            let csv_path = out_dir.join("cross_section.csv");
            let json_path = out_dir.join("cross_section_extrema.json");
            write_file(&csv_path, &csv)?;
            write_file(&json_path, &json)?;
            written.push(csv_path);
            written.push(json_path);
        }
        Command::VarianceMap => {
            let path = out_dir.join("variance_map.csv");
            write_file(&path, &variance_map_csv(cfg)?)?;
            written.push(path);
        }
        Command::RegretScan => {
            let path = out_dir.join("regret_scan.csv");
            write_file(&path, &regret_scan_csv(cfg)?)?;
            written.push(path);
        }
        Command::TradeoffCheck => {
            let path = out_dir.join("tradeoff_check.json");
            write_file(&path, &serde_json::to_string_pretty(&tradeoff_report(cfg)?)?)?;
            written.push(path);
        }
        Command::MonteCarlo => {
            let path = out_dir.join("montecarlo.json");
            write_file(&path, &montecarlo_json(cfg)?)?;
            written.push(path);
        }
    }
    Ok(written)
}
