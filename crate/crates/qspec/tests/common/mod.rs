//! Shared oracle helpers for the integration tests: Richardson-extrapolated
//! central differences, independent of the analytic derivative paths they
//! check.

use num_complex::Complex64;
use qspec::config::OpticalConfig;
use qspec::precision::TwoByTwo;
use qspec::{optics, state};

/// Central difference with one Richardson step. The plain h^2 truncation is
/// not small enough for the refractive-index direction, whose phase gain is
/// about 4e4 rad per unit n.
pub fn richardson(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

/// Finite-difference gradient of the closed-form intensity with respect to
/// (n_i^m, alpha).
pub fn fd_intensity_gradient(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta: f64,
    rel_step: f64,
) -> [f64; 2] {
    let closed = |c: &OpticalConfig| {
        let mp = optics::mode_point(c, lambda_signal, theta).unwrap();
        state::signal_intensity_closed_form(&mp, c)
    };
    let n0 = cfg.n_idler_medium;
    let a0 = cfg.alpha_per_cm;
    [
        richardson(
            |n| closed(&cfg.with_medium_params(n, a0)),
            n0,
            rel_step * n0.abs().max(1.0),
        ),
        richardson(
            |a| closed(&cfg.with_medium_params(n0, a)),
            a0,
            rel_step * a0.abs().max(0.05),
        ),
    ]
}

fn normalized_state(cfg: &OpticalConfig, lambda_signal: f64, theta: f64) -> [Complex64; 3] {
    let mp = optics::mode_point(cfg, lambda_signal, theta).unwrap();
    let ba = state::branch_amplitudes(&mp, cfg);
    [
        ba.c_vac / ba.norm,
        ba.c_loss / ba.norm,
        ba.c_pair / ba.norm,
    ]
}

fn vec_richardson(
    f: &dyn Fn(f64) -> [Complex64; 3],
    x: f64,
    h: f64,
) -> [Complex64; 3] {
    let d = |h: f64| {
        let up = f(x + h);
        let dn = f(x - h);
        [
            (up[0] - dn[0]) / (2.0 * h),
            (up[1] - dn[1]) / (2.0 * h),
            (up[2] - dn[2]) / (2.0 * h),
        ]
    };
    let d1 = d(h);
    let d2 = d(h / 2.0);
    [
        (4.0 * d2[0] - d1[0]) / 3.0,
        (4.0 * d2[1] - d1[1]) / 3.0,
        (4.0 * d2[2] - d1[2]) / 3.0,
    ]
}

/// Finite-difference QFI of one monitored mode pair, assembled from the
/// normalized amplitude vector.
pub fn fd_qfi_single(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta: f64,
    rel_step: f64,
) -> TwoByTwo {
    let n0 = cfg.n_idler_medium;
    let a0 = cfg.alpha_per_cm;
    let base = normalized_state(cfg, lambda_signal, theta);
    let dn = vec_richardson(
        &|n| normalized_state(&cfg.with_medium_params(n, a0), lambda_signal, theta),
        n0,
        rel_step * n0.abs().max(1.0),
    );
    let da = vec_richardson(
        &|a| normalized_state(&cfg.with_medium_params(n0, a), lambda_signal, theta),
        a0,
        rel_step * a0.abs().max(0.05),
    );
    let inner = |x: &[Complex64; 3], y: &[Complex64; 3]| -> Complex64 {
        x[0].conj() * y[0] + x[1].conj() * y[1] + x[2].conj() * y[2]
    };
    let entry = |du: &[Complex64; 3], dv: &[Complex64; 3]| -> f64 {
        4.0 * (inner(du, dv) - inner(du, &base) * inner(&base, dv)).re
    };
    TwoByTwo::new(entry(&dn, &dn), entry(&dn, &da), entry(&da, &da))
}
