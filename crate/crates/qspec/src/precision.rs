//! Error-propagation covariance, quantum Fisher information, regret and the
//! trade-off sums for the two-angle joint measurement of (n_i^m, alpha).
//!
//! The parameter pair is always ordered (n_i^m, alpha) with alpha in 1/cm, so
//! covariance entries carry 1 (dimensionless^2), 1/cm and 1/cm^2.

use crate::config::OpticalConfig;
use crate::error::{Error, Result};
use crate::optics::{self, ModePoint};
use crate::state;
use num_complex::Complex64;
use serde::Serialize;

/// Condition-number ceiling beyond which the intensity Jacobian is treated as
/// singular.
const COND_LIMIT: f64 = 1e12;

/// Parameter labels for indexing the 2x2 matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    NMedium,
    Alpha,
}

/// Symmetric 2x2 real matrix over the parameter pair (n_i^m, alpha).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoByTwo {
    /// (n, n) entry.
    pub nn: f64,
    /// (n, alpha) = (alpha, n) entry.
    pub na: f64,
    /// (alpha, alpha) entry.
    pub aa: f64,
}

impl TwoByTwo {
    pub fn new(nn: f64, na: f64, aa: f64) -> Self {
        TwoByTwo { nn, na, aa }
    }

    pub fn zero() -> Self {
        TwoByTwo::new(0.0, 0.0, 0.0)
    }

    pub fn get(&self, row: Param, col: Param) -> f64 {
        match (row, col) {
            (Param::NMedium, Param::NMedium) => self.nn,
            (Param::Alpha, Param::Alpha) => self.aa,
            _ => self.na,
        }
    }

    pub fn trace(&self) -> f64 {
        self.nn + self.aa
    }

    pub fn det(&self) -> f64 {
        self.nn * self.aa - self.na * self.na
    }

    pub fn is_finite(&self) -> bool {
        self.nn.is_finite() && self.na.is_finite() && self.aa.is_finite()
    }

    /// Eigenvalues of the symmetric matrix, ascending.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mid = 0.5 * (self.nn + self.aa);
        let rad = (0.25 * (self.nn - self.aa) * (self.nn - self.aa) + self.na * self.na).sqrt();
        (mid - rad, mid + rad)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().0
    }

    pub fn inverse(&self) -> Option<TwoByTwo> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() || !self.is_finite() {
            return None;
        }
        Some(TwoByTwo::new(self.aa / det, -self.na / det, self.nn / det))
    }

    pub fn scale(&self, s: f64) -> TwoByTwo {
        TwoByTwo::new(self.nn * s, self.na * s, self.aa * s)
    }

    pub fn add(&self, other: &TwoByTwo) -> TwoByTwo {
        TwoByTwo::new(self.nn + other.nn, self.na + other.na, self.aa + other.aa)
    }

    pub fn sub(&self, other: &TwoByTwo) -> TwoByTwo {
        TwoByTwo::new(self.nn - other.nn, self.na - other.na, self.aa - other.aa)
    }
}

/// Analytic gradient of the closed-form intensity with respect to
/// (n_i^m, alpha): alpha only moves tau (d tau/d alpha = -l0 tau with l0 in
/// cm) and n_i^m only moves the medium mismatch and the idler phase.
pub fn intensity_gradient(cfg: &OpticalConfig, mp: &ModePoint) -> [f64; 2] {
    let a = cfg.pair_amplitude;
    let envelope = state::sinc(0.5 * mp.delta_crystal);
    let base = 2.0 * a * a * envelope * envelope;
    let phi = mp.total_phase();
    let g = optics::d_phi_i_d_n(cfg, mp);
    let l0_cm = cfg.chamber_length_cm();
    // d phi / d n = d delta^m / d n = -g, so the chain through cos picks +sin.
    let du_dn = base * mp.tau * phi.sin() * g;
    let du_da = -base * l0_cm * mp.tau * phi.cos();
    [du_dn, du_da]
}

/// 2x2 intensity Jacobian J[k][mu] = d I_k / d mu over the two angles.
pub fn intensity_jacobian(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta1: f64,
    theta2: f64,
) -> Result<[[f64; 2]; 2]> {
    let mp1 = optics::mode_point(cfg, lambda_signal, theta1)?;
    let mp2 = optics::mode_point(cfg, lambda_signal, theta2)?;
    Ok([intensity_gradient(cfg, &mp1), intensity_gradient(cfg, &mp2)])
}

fn per_shot_variances(cfg: &OpticalConfig, lambda_signal: f64, thetas: [f64; 2]) -> Result<[f64; 2]> {
    let mut out = [0.0; 2];
    for (slot, theta) in out.iter_mut().zip(thetas) {
        let ip = state::intensity_point(cfg, lambda_signal, theta)?;
        *slot = ip.variance;
    }
    Ok(out)
}

fn jacobian_condition_sq(j: &[[f64; 2]; 2]) -> f64 {
    // Squared condition number via the eigenvalues of J^T J.
    let a = j[0][0] * j[0][0] + j[1][0] * j[1][0];
    let b = j[0][0] * j[0][1] + j[1][0] * j[1][1];
    let c = j[0][1] * j[0][1] + j[1][1] * j[1][1];
    let mid = 0.5 * (a + c);
    let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    let lo = mid - rad;
    let hi = mid + rad;
    if lo <= 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}

/// Error-propagation covariance of the two-angle moment estimator,
/// C = M^-1 G diag(sigma_I^2) G^T with G the inverse intensity Jacobian.
pub fn covariance_matrix(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta1: f64,
    theta2: f64,
    shots: u64,
) -> Result<TwoByTwo> {
    let j = intensity_jacobian(cfg, lambda_signal, theta1, theta2)?;
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if det == 0.0 || !det.is_finite() || jacobian_condition_sq(&j) >= COND_LIMIT * COND_LIMIT {
        return Err(Error::SingularJacobian);
    }
    let var = per_shot_variances(cfg, lambda_signal, [theta1, theta2])?;
    // Rows of G map intensity deviations to parameter deviations.
    let g_n = [j[1][1] / det, -j[0][1] / det];
    let g_a = [-j[1][0] / det, j[0][0] / det];
    let m = shots as f64;
    Ok(TwoByTwo::new(
        (g_n[0] * g_n[0] * var[0] + g_n[1] * g_n[1] * var[1]) / m,
        (g_n[0] * g_a[0] * var[0] + g_n[1] * g_a[1] * var[1]) / m,
        (g_a[0] * g_a[0] * var[0] + g_a[1] * g_a[1] * var[1]) / m,
    ))
}

/// Per-shot Fisher information of the two Bernoulli photon counts,
/// J^T diag(1/sigma^2) J. This is the exact inverse of the per-shot Eq.-(6)
/// covariance whenever the Jacobian is invertible, and stays well defined at
/// degenerate angle pairs where the covariance itself blows up.
pub fn classical_fisher(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta1: f64,
    theta2: f64,
) -> Result<TwoByTwo> {
    let j = intensity_jacobian(cfg, lambda_signal, theta1, theta2)?;
    let var = per_shot_variances(cfg, lambda_signal, [theta1, theta2])?;
    let mut f = TwoByTwo::zero();
    for k in 0..2 {
        let [gn, ga] = j[k];
        if var[k] == 0.0 {
            if gn == 0.0 && ga == 0.0 {
                continue; // dark port carries no information
            }
            return Ok(TwoByTwo::new(f64::INFINITY, f64::INFINITY, f64::INFINITY));
        }
        let w = 1.0 / var[k];
        f.nn += gn * gn * w;
        f.na += gn * ga * w;
        f.aa += ga * ga * w;
    }
    Ok(f)
}

/// Per-shot classical Fisher information over an arbitrary angle list; the
/// asymptotic fit covariance is its scaled inverse.
pub fn classical_fisher_multi(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    thetas: &[f64],
) -> Result<TwoByTwo> {
    let mut f = TwoByTwo::zero();
    for &theta in thetas {
        let mp = optics::mode_point(cfg, lambda_signal, theta)?;
        let [gn, ga] = intensity_gradient(cfg, &mp);
        let ip = state::intensity_point(cfg, lambda_signal, theta)?;
        if ip.variance == 0.0 {
            continue;
        }
        let w = 1.0 / ip.variance;
        f.nn += gn * gn * w;
        f.na += gn * ga * w;
        f.aa += ga * ga * w;
    }
    Ok(f)
}

/// Stable per-mode ingredients of the quantum Fisher information.
///
/// With c = (1, c_loss, c_pair), F = A sinc(delta/2) e^{i delta/2} and
/// Phi = delta + delta^m, the inner products reduce to closed scalars:
///
///   <d_n c, d_n c>  = |F|^2 tau^2 g^2
///   <d_a c, d_a c>  = |F|^2 l0^2 tau^2 (tau^2/(1-tau^2) + 1)
///   <d_n c, d_a c>  = i g l0 |F|^2 tau^2
///   <c, d_n c>      = i g tau |F|^2 (tau + e^{-i Phi})
///   <c, d_a c>      = -l0 tau |F|^2 e^{-i Phi}
///   <c, c>          = 1 + 2 |F|^2 (1 + tau cos Phi)
///
/// The would-be 0 * inf product in the loss branch at tau = 1 cancels
/// analytically in <c, d_a c>; only <d_a c, d_a c> diverges there, which is
/// the known divergence of loss estimation at zero absorption.
struct ModeQfi {
    g_nn: f64,
    g_aa: f64,
    g_na: Complex64,
    a_n: Complex64,
    a_a: Complex64,
    norm_sq: f64,
}

fn mode_qfi_pieces(cfg: &OpticalConfig, mp: &ModePoint) -> ModeQfi {
    let amp = cfg.pair_amplitude * state::sinc(0.5 * mp.delta_crystal);
    let f2 = amp * amp;
    let tau = mp.tau;
    let tau_sq = tau * tau;
    let omt2 = optics::one_minus_tau_sq(cfg);
    let l0 = cfg.chamber_length_cm();
    let g = optics::d_phi_i_d_n(cfg, mp);
    let phi = mp.total_phase();
    let e_mphi = Complex64::new(0.0, -phi).exp();

    let loss_term = if tau_sq == 0.0 {
        0.0
    } else {
        f2 * l0 * l0 * tau_sq * tau_sq / omt2 // +inf at tau = 1
    };

    ModeQfi {
        g_nn: f2 * tau_sq * g * g,
        g_aa: loss_term + f2 * l0 * l0 * tau_sq,
        g_na: Complex64::i() * g * l0 * f2 * tau_sq,
        a_n: Complex64::i() * g * tau * f2 * (tau + e_mphi),
        a_a: -l0 * tau * f2 * e_mphi,
        norm_sq: 1.0 + 2.0 * f2 * (1.0 + tau * phi.cos()),
    }
}

/// Quantum Fisher information of the normalized per-mode output state,
/// F_{mu nu} = 4 Re(<d_mu psi | d_nu psi> - <d_mu psi|psi><psi|d_nu psi>).
pub fn qfi_single_angle(cfg: &OpticalConfig, lambda_signal: f64, theta: f64) -> Result<TwoByTwo> {
    let mp = optics::mode_point(cfg, lambda_signal, theta)?;
    let p = mode_qfi_pieces(cfg, &mp);
    let n2 = p.norm_sq;
    let entry = |g_re: f64, a_mu: Complex64, a_nu: Complex64| -> f64 {
        4.0 / n2 * (g_re - (a_mu.conj() * a_nu).re / n2)
    };
    Ok(TwoByTwo::new(
        entry(p.g_nn, p.a_n, p.a_n),
        entry(p.g_na.re, p.a_n, p.a_a),
        entry(p.g_aa, p.a_a, p.a_a),
    ))
}

/// QFI of the composite state over the two monitored mode pairs. The
/// composite is a product state, so the information is the per-mode sum.
pub fn qfi_matrix(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta1: f64,
    theta2: f64,
) -> Result<TwoByTwo> {
    let f1 = qfi_single_angle(cfg, lambda_signal, theta1)?;
    let f2 = qfi_single_angle(cfg, lambda_signal, theta2)?;
    Ok(f1.add(&f2))
}

/// Closed-form small-separation approximations of the normalized regrets and
/// their sum, evaluated from the phase mismatches and transmissivity of the
/// two observed angles.
pub fn regret_approximations(phi1: f64, phi2: f64, tau: f64, one_minus_tau_sq: f64) -> (f64, f64, f64) {
    let term_n = |phi: f64| {
        let s = phi.sin();
        s * s / (4.0 * (1.0 + tau * phi.cos()))
    };
    let term_a = |phi: f64| {
        let c = phi.cos();
        one_minus_tau_sq * c * c / (4.0 * (1.0 + tau * c))
    };
    let delta_n = 1.0 - term_n(phi1) - term_n(phi2);
    let delta_a = 1.0 - term_a(phi1) - term_a(phi2);
    let sum = 1.5 + tau * (phi1.cos() + phi2.cos()) / 4.0;
    (delta_n, delta_a, sum)
}

/// Full precision report for one angle pair at M = 1.
#[derive(Debug, Clone)]
pub struct PrecisionReport {
    pub theta1: f64,
    pub theta2: f64,
    pub intensity1: f64,
    pub intensity2: f64,
    /// Eq.-(6) covariance at M = 1; entries are infinite when the Jacobian is
    /// singular.
    pub covariance: TwoByTwo,
    pub covariance_singular: bool,
    pub qfi: TwoByTwo,
    /// Regret F - C^-1, with C^-1 computed directly as J^T diag(1/sigma^2) J.
    pub regret: TwoByTwo,
    pub delta_n: f64,
    pub delta_alpha: f64,
    pub delta_n_approx: f64,
    pub delta_alpha_approx: f64,
    pub tradeoff_sum: f64,
    pub tradeoff_sum_approx: f64,
}

/// Normalized regret from the diagonal of F and C^-1; saturates at 1 when the
/// measurement extracts nothing (or the QFI entry vanishes or diverges).
fn normalized_regret(qfi_entry: f64, cinv_entry: f64) -> f64 {
    if qfi_entry > 0.0 && qfi_entry.is_finite() {
        1.0 - cinv_entry / qfi_entry
    } else if qfi_entry == f64::INFINITY && cinv_entry.is_finite() {
        1.0
    } else {
        1.0
    }
}

pub fn precision_report(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta1: f64,
    theta2: f64,
) -> Result<PrecisionReport> {
    let mp1 = optics::mode_point(cfg, lambda_signal, theta1)?;
    let mp2 = optics::mode_point(cfg, lambda_signal, theta2)?;
    let ip1 = state::intensity_point(cfg, lambda_signal, theta1)?;
    let ip2 = state::intensity_point(cfg, lambda_signal, theta2)?;

    let qfi = qfi_matrix(cfg, lambda_signal, theta1, theta2)?;
    let cinv = classical_fisher(cfg, lambda_signal, theta1, theta2)?;
    let regret = qfi.sub(&cinv);
    let delta_n = normalized_regret(qfi.nn, cinv.nn);
    let delta_alpha = normalized_regret(qfi.aa, cinv.aa);

    let (covariance, covariance_singular) =
        match covariance_matrix(cfg, lambda_signal, theta1, theta2, 1) {
            Ok(c) => (c, false),
            Err(Error::SingularJacobian) => (
                TwoByTwo::new(f64::INFINITY, f64::INFINITY, f64::INFINITY),
                true,
            ),
            Err(e) => return Err(e),
        };

    let omt2 = optics::one_minus_tau_sq(cfg);
    let (delta_n_approx, delta_alpha_approx, tradeoff_sum_approx) =
        regret_approximations(mp1.total_phase(), mp2.total_phase(), mp1.tau, omt2);

    Ok(PrecisionReport {
        theta1,
        theta2,
        intensity1: ip1.intensity,
        intensity2: ip2.intensity,
        covariance,
        covariance_singular,
        qfi,
        regret,
        delta_n,
        delta_alpha,
        delta_n_approx,
        delta_alpha_approx,
        tradeoff_sum: delta_n + delta_alpha,
        tradeoff_sum_approx,
    })
}

/// Outcome of the quantum Cramer-Rao check C >= (M F)^-1.
#[derive(Debug, Clone, Copy)]
pub enum QcrbCheck {
    /// Smallest eigenvalue of C - (M F)^-1; nonnegative up to rounding.
    Full { min_eigenvalue: f64 },
    /// F (or C) is singular: per-parameter scalar margins
    /// sigma_mu^2 - 1/(M F_mu_mu) where both sides are defined.
    Diagonal {
        margin_n: Option<f64>,
        margin_alpha: Option<f64>,
    },
}

pub fn qcrb_check(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta1: f64,
    theta2: f64,
    shots: u64,
) -> Result<QcrbCheck> {
    let f = qfi_matrix(cfg, lambda_signal, theta1, theta2)?;
    let m = shots as f64;
    let f_scale = f.nn.abs() * f.aa.abs() + f.na * f.na;
    let f_invertible = f.is_finite() && f_scale > 0.0 && f.det().abs() > 1e-12 * f_scale;

    match covariance_matrix(cfg, lambda_signal, theta1, theta2, shots) {
        Ok(c) => {
            if f_invertible {
                let f_inv = f.inverse().ok_or(Error::SingularFisher)?;
                let diff = c.sub(&f_inv.scale(1.0 / m));
                Ok(QcrbCheck::Full {
                    min_eigenvalue: diff.min_eigenvalue(),
                })
            } else {
                let margin = |c_mumu: f64, f_mumu: f64| {
                    (f_mumu > 0.0).then(|| c_mumu - 1.0 / (m * f_mumu))
                };
                Ok(QcrbCheck::Diagonal {
                    margin_n: margin(c.nn, f.nn),
                    margin_alpha: margin(c.aa, f.aa),
                })
            }
        }
        Err(Error::SingularJacobian) => {
            // Single-parameter reduction: treat each parameter alone through
            // the scalar classical information.
            let cinv = classical_fisher(cfg, lambda_signal, theta1, theta2)?;
            let margin = |info: f64, f_mumu: f64| {
                (info > 0.0 && f_mumu > 0.0).then(|| 1.0 / (m * info) - 1.0 / (m * f_mumu))
            };
            Ok(QcrbCheck::Diagonal {
                margin_n: margin(cinv.nn, f.nn),
                margin_alpha: margin(cinv.aa, f.aa),
            })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::NM;
    use crate::state::branch_amplitudes;

    const LAMBDA: f64 = 609.16e-9;
    // Refined extremum angles of the default configuration (from the
    // cross-section fringe at 609.16 nm).
    const THETA_PEAK: f64 = 1.6849e-3;
    const THETA_VALLEY: f64 = 2.4282e-3;

    fn cfg() -> OpticalConfig {
        OpticalConfig::default()
    }

    /// Richardson-extrapolated central difference: kills the h^2 term, which
    /// matters because the phase responds to n with a gain of ~4e4 rad.
    fn fd(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
        (4.0 * d(h / 2.0) - d(h)) / 3.0
    }

    fn closed_intensity(cfg: &OpticalConfig, theta: f64) -> f64 {
        let mp = optics::mode_point(cfg, LAMBDA, theta).unwrap();
        state::signal_intensity_closed_form(&mp, cfg)
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let c = cfg();
        for &theta in &[1.0e-3, 1.9e-3, 2.6e-3, 3.4e-3] {
            let mp = optics::mode_point(&c, LAMBDA, theta).unwrap();
            let [dn, da] = intensity_gradient(&c, &mp);
            let fd_n = fd(
                |n| closed_intensity(&c.with_medium_params(n, c.alpha_per_cm), theta),
                c.n_idler_medium,
                1e-6,
            );
            let fd_a = fd(
                |a| closed_intensity(&c.with_medium_params(c.n_idler_medium, a), theta),
                c.alpha_per_cm,
                1e-6,
            );
            assert!((dn - fd_n).abs() <= 1e-5 * fd_n.abs(), "dn {dn} vs {fd_n}");
            assert!((da - fd_a).abs() <= 1e-5 * fd_a.abs(), "da {da} vs {fd_a}");
        }
    }

    #[test]
    fn refractive_gradient_vanishes_at_extrema() {
        let c = cfg();
        let scale = c.pair_amplitude * c.pair_amplitude;
        for &theta in &[THETA_PEAK, THETA_VALLEY] {
            let mp = optics::mode_point(&c, LAMBDA, theta).unwrap();
            let [dn, _] = intensity_gradient(&c, &mp);
            // sin(total phase) ~ 0 at an extremum; the leftover is the
            // residual of the quoted 4-digit angles.
            assert!(dn.abs() < 1e-2 * scale * optics::d_phi_i_d_n(&c, &mp));
        }
    }

    #[test]
    fn absorption_raises_the_valley_floor() {
        let c = cfg();
        let mp = optics::mode_point(&c, LAMBDA, THETA_VALLEY).unwrap();
        let [_, da] = intensity_gradient(&c, &mp);
        assert!(da > 0.0);
        let mp_peak = optics::mode_point(&c, LAMBDA, THETA_PEAK).unwrap();
        let [_, da_peak] = intensity_gradient(&c, &mp_peak);
        assert!(da_peak < 0.0);
    }

    #[test]
    fn covariance_scales_exactly_with_shots() {
        let c = cfg();
        let c1 = covariance_matrix(&c, LAMBDA, 1.9e-3, 2.4282e-3, 1).unwrap();
        let c100 = covariance_matrix(&c, LAMBDA, 1.9e-3, 2.4282e-3, 100).unwrap();
        for (x, y) in [(c1.nn, c100.nn), (c1.na, c100.na), (c1.aa, c100.aa)] {
            assert!((x / 100.0 - y).abs() <= 1e-15 * x.abs());
        }
    }

    #[test]
    fn opaque_medium_gives_singular_jacobian() {
        let c = cfg().with_medium_params(1.0 - 9e-5, 1e3); // tau underflows to 0
        assert!(matches!(
            covariance_matrix(&c, LAMBDA, 1.9e-3, 2.6e-3, 1),
            Err(Error::SingularJacobian)
        ));
    }

    #[test]
    fn mirror_angles_give_singular_jacobian() {
        // theta and -theta see identical intensities: the rows of J coincide.
        let c = cfg();
        assert!(matches!(
            covariance_matrix(&c, LAMBDA, 2.0e-3, -2.0e-3, 1),
            Err(Error::SingularJacobian)
        ));
    }

    #[test]
    fn classical_fisher_inverts_covariance() {
        let c = cfg();
        let cov = covariance_matrix(&c, LAMBDA, 1.9e-3, 2.4282e-3, 1).unwrap();
        let fisher = classical_fisher(&c, LAMBDA, 1.9e-3, 2.4282e-3).unwrap();
        let prod_nn = cov.nn * fisher.nn + cov.na * fisher.na;
        let prod_aa = cov.na * fisher.na + cov.aa * fisher.aa;
        let prod_na = cov.nn * fisher.na + cov.na * fisher.aa;
        assert!((prod_nn - 1.0).abs() < 1e-9);
        assert!((prod_aa - 1.0).abs() < 1e-9);
        assert!(prod_na.abs() < 1e-9 * (fisher.na.abs() * cov.nn.abs()).max(1.0));
    }

    #[test]
    fn qfi_vanishes_in_n_for_opaque_medium() {
        let c = cfg().with_medium_params(1.0 - 9e-5, 1e3);
        let f = qfi_single_angle(&c, LAMBDA, 2.0e-3).unwrap();
        assert_eq!(f.nn, 0.0);
        assert_eq!(f.aa, 0.0); // a dead channel carries no alpha response either
    }

    #[test]
    fn qfi_diverges_in_alpha_for_lossless_medium() {
        let c = cfg().with_medium_params(1.0 - 9e-5, 0.0);
        let f = qfi_single_angle(&c, LAMBDA, 2.0e-3).unwrap();
        assert_eq!(f.aa, f64::INFINITY);
        assert!(f.nn.is_finite() && f.nn > 0.0);
        assert!(f.na.is_finite());
    }

    /// Finite-difference QFI on the normalized amplitude vector, assembled
    /// independently of the analytic inner-product route.
    fn qfi_fd(c: &OpticalConfig, theta: f64) -> TwoByTwo {
        let psi = |n: f64, a: f64| -> [Complex64; 3] {
            let cc = c.with_medium_params(n, a);
            let mp = optics::mode_point(&cc, LAMBDA, theta).unwrap();
            let ba = branch_amplitudes(&mp, &cc);
            [
                ba.c_vac / ba.norm,
                ba.c_loss / ba.norm,
                ba.c_pair / ba.norm,
            ]
        };
        let diff = |f: &dyn Fn(f64) -> [Complex64; 3], x: f64, h: f64| -> [Complex64; 3] {
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
        };
        let n0 = c.n_idler_medium;
        let a0 = c.alpha_per_cm;
        let base = psi(n0, a0);
        let dn = diff(&|n| psi(n, a0), n0, 1e-6);
        let da = diff(&|a| psi(n0, a), a0, 1e-6);
        let inner = |x: &[Complex64; 3], y: &[Complex64; 3]| -> Complex64 {
            x[0].conj() * y[0] + x[1].conj() * y[1] + x[2].conj() * y[2]
        };
        let entry = |du: &[Complex64; 3], dv: &[Complex64; 3]| -> f64 {
            4.0 * (inner(du, dv) - inner(du, &base) * inner(&base, dv)).re
        };
        TwoByTwo::new(entry(&dn, &dn), entry(&dn, &da), entry(&da, &da))
    }

    #[test]
    fn qfi_matches_finite_difference() {
        let c = cfg();
        for &theta in &[1.2e-3, 1.9e-3, 2.6e-3, 3.3e-3] {
            let f = qfi_single_angle(&c, LAMBDA, theta).unwrap();
            let f_fd = qfi_fd(&c, theta);
            assert!((f.nn - f_fd.nn).abs() <= 1e-5 * f_fd.nn.abs(), "nn {} vs {}", f.nn, f_fd.nn);
            assert!((f.aa - f_fd.aa).abs() <= 1e-5 * f_fd.aa.abs(), "aa {} vs {}", f.aa, f_fd.aa);
            let scale = (f_fd.nn * f_fd.aa).sqrt();
            assert!((f.na - f_fd.na).abs() <= 1e-5 * scale, "na {} vs {}", f.na, f_fd.na);
        }
    }

    #[test]
    fn qfi_positive_at_small_absorption_valley_pair() {
        // Near-lossless medium still responds to alpha through both the loss
        // and interference channels.
        let c = cfg().with_medium_params(1.0 - 9e-5, 0.01);
        let f = qfi_matrix(&c, LAMBDA, THETA_VALLEY, 3.4655e-3).unwrap();
        assert!(f.aa > 0.0 && f.aa.is_finite());
        let f_fd = qfi_fd(&c, THETA_VALLEY).add(&qfi_fd(&c, 3.4655e-3));
        assert!((f.aa - f_fd.aa).abs() <= 1e-5 * f_fd.aa);
    }

    #[test]
    fn qfi_is_additive_over_modes() {
        // Oracle: QFI assembled on the explicit 9-dimensional tensor-product
        // state of the two monitored mode pairs.
        let c = cfg();
        let (t1, t2) = (1.9e-3, 2.7e-3);
        let psi_pair = |cc: &OpticalConfig, theta: f64| -> [Complex64; 3] {
            let mp = optics::mode_point(cc, LAMBDA, theta).unwrap();
            let ba = branch_amplitudes(&mp, cc);
            [
                ba.c_vac / ba.norm,
                ba.c_loss / ba.norm,
                ba.c_pair / ba.norm,
            ]
        };
        let composite = |n: f64, a: f64| -> Vec<Complex64> {
            let cc = c.with_medium_params(n, a);
            let p1 = psi_pair(&cc, t1);
            let p2 = psi_pair(&cc, t2);
            let mut out = Vec::with_capacity(9);
            for x in &p1 {
                for y in &p2 {
                    out.push(x * y);
                }
            }
            out
        };
        let diff = |f: &dyn Fn(f64) -> Vec<Complex64>, x: f64, h: f64| -> Vec<Complex64> {
            let d = |h: f64| -> Vec<Complex64> {
                let up = f(x + h);
                let dn = f(x - h);
                up.iter().zip(&dn).map(|(u, d)| (u - d) / (2.0 * h)).collect()
            };
            let d1 = d(h);
            let d2 = d(h / 2.0);
            d1.iter().zip(&d2).map(|(a, b)| (4.0 * b - a) / 3.0).collect()
        };
        let base = composite(c.n_idler_medium, c.alpha_per_cm);
        let dn = diff(&|n| composite(n, c.alpha_per_cm), c.n_idler_medium, 1e-6);
        let da = diff(&|a| composite(c.n_idler_medium, a), c.alpha_per_cm, 1e-6);
        let inner = |x: &[Complex64], y: &[Complex64]| -> Complex64 {
            x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
        };
        let entry = |du: &[Complex64], dv: &[Complex64]| -> f64 {
            4.0 * (inner(du, dv) - inner(du, &base) * inner(&base, dv)).re
        };
        let f_composite = TwoByTwo::new(entry(&dn, &dn), entry(&dn, &da), entry(&da, &da));
        let f_sum = qfi_matrix(&c, LAMBDA, t1, t2).unwrap();
        assert!((f_sum.nn - f_composite.nn).abs() <= 1e-5 * f_composite.nn);
        assert!((f_sum.aa - f_composite.aa).abs() <= 1e-5 * f_composite.aa);
        // Exact additivity of the analytic route itself:
        let direct = qfi_single_angle(&c, LAMBDA, t1)
            .unwrap()
            .add(&qfi_single_angle(&c, LAMBDA, t2).unwrap());
        assert!((f_sum.nn - direct.nn).abs() <= 1e-10 * direct.nn.abs());
        assert!((f_sum.aa - direct.aa).abs() <= 1e-10 * direct.aa.abs());
    }

    #[test]
    fn peak_valley_report_hits_the_three_halves_tradeoff() {
        let c = cfg();
        let r = precision_report(&c, LAMBDA, THETA_PEAK, THETA_VALLEY).unwrap();
        assert!((r.delta_n_approx - 1.0).abs() < 1e-3);
        assert!((r.delta_alpha_approx - 0.5).abs() < 1e-3);
        assert!((r.tradeoff_sum_approx - 1.5).abs() < 1e-3);
        assert!((r.tradeoff_sum - 1.5).abs() < 0.05);
        assert!(r.delta_n >= 0.0 && r.delta_n <= 1.0 + 1e-12);
        assert!(r.delta_alpha >= 0.0 && r.delta_alpha <= 1.0 + 1e-12);
    }

    #[test]
    fn regrets_are_pair_amplitude_independent() {
        let mut strong = cfg();
        strong.pair_amplitude = 1e-3;
        let mut weak = cfg();
        weak.pair_amplitude = 1e-6;
        for &(t1, t2) in &[(1.9e-3, 2.4282e-3), (1.6849e-3, 2.1e-3), (2.2e-3, 3.0e-3)] {
            let a = precision_report(&strong, LAMBDA, t1, t2).unwrap();
            let b = precision_report(&weak, LAMBDA, t1, t2).unwrap();
            assert!((a.delta_n - b.delta_n).abs() < 1e-4);
            assert!((a.delta_alpha - b.delta_alpha).abs() < 1e-4);
        }
    }

    #[test]
    fn qcrb_full_branch_is_nonnegative() {
        let c = cfg();
        let check = qcrb_check(&c, LAMBDA, 1.9e-3, 2.4282e-3, 1).unwrap();
        match check {
            QcrbCheck::Full { min_eigenvalue } => {
                let cov = covariance_matrix(&c, LAMBDA, 1.9e-3, 2.4282e-3, 1).unwrap();
                assert!(min_eigenvalue >= -1e-12 * cov.trace());
            }
            other => panic!("expected full QCRB check, got {other:?}"),
        }
    }

    #[test]
    fn qcrb_scales_with_shots() {
        let c = cfg();
        let m1 = match qcrb_check(&c, LAMBDA, 1.9e-3, 2.4282e-3, 1).unwrap() {
            QcrbCheck::Full { min_eigenvalue } => min_eigenvalue,
            _ => panic!(),
        };
        let m100 = match qcrb_check(&c, LAMBDA, 1.9e-3, 2.4282e-3, 100).unwrap() {
            QcrbCheck::Full { min_eigenvalue } => min_eigenvalue,
            _ => panic!(),
        };
        assert!(m1 >= 0.0);
        assert!((m1 / 100.0 - m100).abs() <= 1e-9 * m1);
    }

    #[test]
    fn qcrb_falls_back_to_scalar_margins_when_degenerate() {
        // Mirror pair: Eq.-(6) covariance is singular, but the scalar
        // single-parameter bounds still hold.
        let c = cfg();
        match qcrb_check(&c, LAMBDA, 2.0e-3, -2.0e-3, 10).unwrap() {
            QcrbCheck::Diagonal { margin_n, margin_alpha } => {
                assert!(margin_n.unwrap() >= -1e-20);
                assert!(margin_alpha.unwrap() >= -1e-20);
            }
            other => panic!("expected diagonal fallback, got {other:?}"),
        }
        // Fully opaque medium: no information at all, no margins to report.
        let opaque = c.with_medium_params(1.0 - 9e-5, 1e3);
        match qcrb_check(&opaque, LAMBDA, 1.9e-3, 2.6e-3, 1).unwrap() {
            QcrbCheck::Diagonal { margin_n, margin_alpha } => {
                assert!(margin_n.is_none());
                assert!(margin_alpha.is_none());
            }
            other => panic!("expected diagonal fallback, got {other:?}"),
        }
    }
}
