//! Wavelengths, wavenumbers, propagation phases and phase mismatches.
//!
//! The angular model treats each observation point as a single signal/idler
//! plane-wave pair with one conserved transverse wavenumber q fixed by the
//! external signal emission angle. Longitudinal components are the exact
//! k_z = sqrt(k^2 - q^2); Snell refraction at the interfaces then comes out
//! automatically. The pump is a collinear undepleted plane wave.

use crate::config::{MismatchMode, OpticalConfig};
use crate::error::{Error, Result};
use std::f64::consts::TAU;

/// Widest emission angle the small-angle model accepts (rad).
pub const MAX_THETA: f64 = 0.1;

/// One observation point with all derived optical quantities.
///
/// Phases satisfy `phi_p - phi_i - phi_s = delta_crystal + delta_medium`
/// identically; this is what collapses the two-crystal interference into a
/// fringe in the total mismatch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePoint {
    /// Signal wavelength (m).
    pub lambda_signal: f64,
    /// External signal emission angle (rad).
    pub theta_signal: f64,
    /// Idler wavelength from energy conservation (m).
    pub lambda_idler: f64,
    /// Conserved transverse wavenumber (1/m).
    pub q_transverse: f64,
    /// Crystal phase mismatch delta = l * Delta (rad).
    pub delta_crystal: f64,
    /// Medium phase mismatch delta^m = l0 * Delta^m (rad).
    pub delta_medium: f64,
    /// Signal propagation phase (rad).
    pub phi_s: f64,
    /// Idler propagation phase (rad).
    pub phi_i: f64,
    /// Pump propagation phase (rad).
    pub phi_p: f64,
    /// Amplitude transmissivity of the medium for the idler.
    pub tau: f64,
}

impl ModePoint {
    /// Total fringe phase delta + delta^m.
    pub fn total_phase(&self) -> f64 {
        self.delta_crystal + self.delta_medium
    }
}

/// Idler wavelength from energy conservation, 1/lambda_i = 1/lambda_p - 1/lambda_s.
pub fn idler_wavelength(cfg: &OpticalConfig, lambda_signal: f64) -> Result<f64> {
    if !(lambda_signal > cfg.lambda_pump) {
        return Err(Error::NonPhysicalSignalWavelength {
            lambda_signal_nm: lambda_signal * 1e9,
            lambda_pump_nm: cfg.lambda_pump * 1e9,
        });
    }
    Ok(1.0 / (1.0 / cfg.lambda_pump - 1.0 / lambda_signal))
}

/// Amplitude transmissivity tau = exp(-alpha * l0) of the medium.
pub fn transmissivity(cfg: &OpticalConfig) -> f64 {
    (-cfg.alpha_per_cm * cfg.chamber_length_cm()).exp()
}

/// 1 - tau^2 computed without cancellation for small alpha.
pub(crate) fn one_minus_tau_sq(cfg: &OpticalConfig) -> f64 {
    -(-2.0 * cfg.alpha_per_cm * cfg.chamber_length_cm()).exp_m1()
}

/// Collinear crystal mismatch l * (k_p - k_s - k_i) at q = 0 for the given
/// signal wavelength, using the crystal indices.
fn collinear_crystal_mismatch(cfg: &OpticalConfig, lambda_signal: f64) -> Result<f64> {
    let lambda_idler = idler_wavelength(cfg, lambda_signal)?;
    let k_p = TAU * cfg.n_pump_crystal / cfg.lambda_pump;
    let k_s = TAU * cfg.n_signal_crystal / lambda_signal;
    let k_i = TAU * cfg.n_idler_crystal / lambda_idler;
    Ok(cfg.crystal_length * (k_p - k_s - k_i))
}

/// Calibration offset subtracted from the crystal mismatch and the pump phase.
fn mismatch_offset(cfg: &OpticalConfig) -> Result<f64> {
    match cfg.mismatch_mode {
        MismatchMode::Matched { lambda_ref } => collinear_crystal_mismatch(cfg, lambda_ref),
        MismatchMode::TableIndices => Ok(0.0),
    }
}

/// Build the full observation point for one (lambda_s, theta_s).
pub fn mode_point(cfg: &OpticalConfig, lambda_signal: f64, theta_signal: f64) -> Result<ModePoint> {
    if !(theta_signal.abs() < MAX_THETA) {
        return Err(Error::AngleOutOfRange {
            theta_rad: theta_signal,
        });
    }
    let lambda_idler = idler_wavelength(cfg, lambda_signal)?;

    let k_p = TAU * cfg.n_pump_crystal / cfg.lambda_pump;
    let k_s = TAU * cfg.n_signal_crystal / lambda_signal;
    let k_i = TAU * cfg.n_idler_crystal / lambda_idler;
    let k_p_m = TAU * cfg.n_pump_medium / cfg.lambda_pump;
    let k_s_m = TAU * cfg.n_signal_medium / lambda_signal;
    let k_i_m = TAU * cfg.n_idler_medium / lambda_idler;

    // External emission angle fixes q in the medium; it is conserved across
    // every interface.
    let q = k_s_m * theta_signal.sin();
    let q_sq = q * q;

    let longitudinal = |k: f64| -> Result<f64> {
        let k_sq = k * k;
        if q_sq >= k_sq {
            return Err(Error::EvanescentIdler {
                q_transverse: q.abs(),
                k_idler: k,
            });
        }
        Ok((k_sq - q_sq).sqrt())
    };

    let k_sz = longitudinal(k_s)?;
    let k_iz = longitudinal(k_i)?;
    let k_sz_m = longitudinal(k_s_m)?;
    let k_iz_m = longitudinal(k_i_m)?;

    let offset = mismatch_offset(cfg)?;
    let l = cfg.crystal_length;
    let l0 = cfg.chamber_length;

    let delta_crystal = l * (k_p - k_sz - k_iz) - offset;
    let delta_medium = l0 * (k_p_m - k_sz_m - k_iz_m);
    let phi_s = k_sz * l + k_sz_m * l0;
    let phi_i = k_iz * l + k_iz_m * l0;
    let phi_p = (k_p * l + k_p_m * l0) - offset;

    Ok(ModePoint {
        lambda_signal,
        theta_signal,
        lambda_idler,
        q_transverse: q,
        delta_crystal,
        delta_medium,
        phi_s,
        phi_i,
        phi_p,
        tau: transmissivity(cfg),
    })
}

/// Longitudinal idler wavenumber in the medium for this point (1/m).
fn k_iz_medium(cfg: &OpticalConfig, mp: &ModePoint) -> f64 {
    let k_i_m = TAU * cfg.n_idler_medium / mp.lambda_idler;
    (k_i_m * k_i_m - mp.q_transverse * mp.q_transverse).sqrt()
}

/// d(phi_i)/d(n_i^m) at fixed q: the medium leg of the idler phase.
///
/// phi_i contains k_iz^m * l0 with k_iz^m = sqrt((2 pi n / lambda_i)^2 - q^2),
/// so the derivative is l0 * (2 pi / lambda_i)^2 * n / k_iz^m.
pub fn d_phi_i_d_n(cfg: &OpticalConfig, mp: &ModePoint) -> f64 {
    let w = TAU / mp.lambda_idler;
    cfg.chamber_length * w * w * cfg.n_idler_medium / k_iz_medium(cfg, mp)
}

/// d(delta^m)/d(n_i^m) at fixed q; equal to -d(phi_i)/d(n_i^m) because only
/// the idler term of the medium mismatch carries n_i^m.
pub fn d_delta_m_d_n(cfg: &OpticalConfig, mp: &ModePoint) -> f64 {
    -d_phi_i_d_n(cfg, mp)
}
