//! Per-mode output-state amplitudes and the signal-light intensity.
//!
//! Two independent routes to the same intensity are kept side by side: the
//! closed-form fringe expression and the expectation over the three-branch
//! output state. Their agreement is a standing cross-check.

use crate::config::OpticalConfig;
use crate::error::Result;
use crate::optics::{self, ModePoint};
use num_complex::Complex64;

/// Amplitudes of the three branches of the per-mode output state, in the
/// order (vacuum, loss, pair). Returned unnormalized with the norm alongside.
#[derive(Debug, Clone, Copy)]
pub struct BranchAmplitudes {
    /// |0_s 0_i 0_env>
    pub c_vac: Complex64,
    /// |1_s 0_i 1_env>: the first-crystal pair whose idler was absorbed.
    pub c_loss: Complex64,
    /// |1_s 1_i 0_env>: coherent sum of the transmitted first-crystal pair
    /// and the second-crystal pair.
    pub c_pair: Complex64,
    /// Euclidean norm of (c_vac, c_loss, c_pair).
    pub norm: f64,
}

impl BranchAmplitudes {
    pub fn norm_sq(&self) -> f64 {
        self.norm * self.norm
    }
}

/// One sampled intensity with its per-shot photon-number variance.
#[derive(Debug, Clone, Copy)]
pub struct IntensityPoint {
    pub lambda_signal: f64,
    pub theta_signal: f64,
    /// Expected signal photon number per shot.
    pub intensity: f64,
    /// Photon-number variance per shot.
    pub variance: f64,
}

pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Pair-creation amplitude F = A sinc(delta/2) e^{i delta/2}: the half-phase
/// factor comes from integrating the mismatch over the crystal length.
fn pair_creation_amplitude(mp: &ModePoint, cfg: &OpticalConfig) -> Complex64 {
    let half = 0.5 * mp.delta_crystal;
    cfg.pair_amplitude * sinc(half) * Complex64::new(0.0, half).exp()
}

/// Build the branch amplitudes of the per-mode output state.
pub fn branch_amplitudes(mp: &ModePoint, cfg: &OpticalConfig) -> BranchAmplitudes {
    let f = pair_creation_amplitude(mp, cfg);
    let loss_mag = optics::one_minus_tau_sq(cfg).sqrt();
    let c_vac = Complex64::new(1.0, 0.0);
    let c_loss = -Complex64::i() * f * loss_mag * Complex64::new(0.0, mp.phi_s).exp();
    let c_pair = f
        * (mp.tau * Complex64::new(0.0, mp.phi_i + mp.phi_s).exp()
            + Complex64::new(0.0, mp.phi_p).exp());
    let norm = (c_vac.norm_sqr() + c_loss.norm_sqr() + c_pair.norm_sqr()).sqrt();
    BranchAmplitudes {
        c_vac,
        c_loss,
        c_pair,
        norm,
    }
}

/// Closed-form signal intensity 2 A^2 sinc^2(delta/2) [1 + tau cos(delta + delta^m)].
///
/// The prefactor pins the proportionality constant so this equals the
/// unnormalized amplitude-level expectation |c_loss|^2 + |c_pair|^2 exactly.
pub fn signal_intensity_closed_form(mp: &ModePoint, cfg: &OpticalConfig) -> f64 {
    let a = cfg.pair_amplitude;
    let envelope = sinc(0.5 * mp.delta_crystal);
    2.0 * a * a * envelope * envelope * (1.0 + mp.tau * mp.total_phase().cos())
}

/// Expected signal photon number and its variance from the state amplitudes.
///
/// The signal mode holds 0 or 1 photons in the weak-pair state, so the count
/// is Bernoulli with p = (|c_loss|^2 + |c_pair|^2) / norm^2 and variance
/// p (1 - p).
pub fn signal_intensity_from_state(ba: &BranchAmplitudes) -> (f64, f64) {
    let p = (ba.c_loss.norm_sqr() + ba.c_pair.norm_sqr()) / ba.norm_sq();
    (p, p * (1.0 - p))
}

/// Normalized signal occupancy computed through the closed form,
/// p = u / (1 + u). Algebraically identical to the state route; smooth in
/// alpha on the whole real line, which the fitter relies on.
pub fn occupancy_closed_form(mp: &ModePoint, cfg: &OpticalConfig) -> f64 {
    let u = signal_intensity_closed_form(mp, cfg);
    u / (1.0 + u)
}

/// Convenience: build the mode point and return the state-route intensity.
pub fn intensity_point(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta_signal: f64,
) -> Result<IntensityPoint> {
    let mp = optics::mode_point(cfg, lambda_signal, theta_signal)?;
    let ba = branch_amplitudes(&mp, cfg);
    let (intensity, variance) = signal_intensity_from_state(&ba);
    Ok(IntensityPoint {
        lambda_signal,
        theta_signal,
        intensity,
        variance,
    })
}
