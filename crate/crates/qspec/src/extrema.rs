//! Fringe extremum location and observation-angle selection.

use crate::config::{AngleMode, OpticalConfig};
use crate::error::{Error, Result};
use crate::optics;
use crate::state;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Peak,
    Valley,
}

/// One refined intensity extremum at fixed signal wavelength.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Extremum {
    /// Emission angle (rad).
    pub theta: f64,
    pub kind: ExtremumKind,
    /// Normalized signal occupancy at the extremum.
    pub intensity: f64,
    /// Total fringe phase delta + delta^m (rad).
    pub total_phase: f64,
}

const GOLDEN_RATIO_CONJ: f64 = 0.618_033_988_749_894_8;

/// Golden-section refinement of one bracketed extremum.
fn golden_section(
    f: &dyn Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    maximize: bool,
) -> f64 {
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut x1 = hi - GOLDEN_RATIO_CONJ * (hi - lo);
    let mut x2 = lo + GOLDEN_RATIO_CONJ * (hi - lo);
    let mut f1 = sign * f(x1);
    let mut f2 = sign * f(x2);
    for _ in 0..90 {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN_RATIO_CONJ * (hi - lo);
            f1 = sign * f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN_RATIO_CONJ * (hi - lo);
            f2 = sign * f(x2);
        }
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Locate every fringe extremum of the closed-form intensity in the angular
/// range: sign changes of dI/d(theta) on a dense grid, refined by golden
/// section. Resolves angles far below the reported 1e-3 mrad.
pub fn find_extrema(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta_min: f64,
    theta_max: f64,
) -> Result<Vec<Extremum>> {
    if !(theta_min < theta_max) {
        return Err(Error::InvalidConfig(format!(
            "extremum search range must be ordered, got [{theta_min}, {theta_max}]"
        )));
    }
    let intensity = |theta: f64| -> Result<f64> {
        let mp = optics::mode_point(cfg, lambda_signal, theta)?;
        Ok(state::signal_intensity_closed_form(&mp, cfg))
    };
    // Step well below the narrowest fringe in the range; fringe width shrinks
    // with angle so the widest |theta| governs.
    let span = theta_max - theta_min;
    let steps = ((span / 2e-6).ceil() as usize).clamp(800, 200_000);
    let h = span / steps as f64;
    let mut values = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let theta = theta_min + i as f64 * h;
        values.push((theta, intensity(theta)?));
    }

    let f = |theta: f64| intensity(theta).unwrap_or(f64::NAN);
    let mut out = Vec::new();
    for i in 1..steps {
        let (_, prev) = values[i - 1];
        let (_, here) = values[i];
        let (_, next) = values[i + 1];
        let kind = if here > prev && here > next {
            ExtremumKind::Peak
        } else if here < prev && here < next {
            ExtremumKind::Valley
        } else {
            continue;
        };
        let refined = golden_section(
            &f,
            values[i - 1].0,
            values[i + 1].0,
            kind == ExtremumKind::Peak,
        );
        let mp = optics::mode_point(cfg, lambda_signal, refined)?;
        let ba = state::branch_amplitudes(&mp, cfg);
        let (p, _) = state::signal_intensity_from_state(&ba);
        out.push(Extremum {
            theta: refined,
            kind,
            intensity: p,
            total_phase: mp.total_phase(),
        });
    }
    if out.is_empty() {
        return Err(Error::NoFringe {
            theta_min_rad: theta_min,
            theta_max_rad: theta_max,
        });
    }
    Ok(out)
}

fn nearest(extrema: &[Extremum], kind: ExtremumKind, anchor: f64, exclude: Option<f64>) -> Option<Extremum> {
    extrema
        .iter()
        .filter(|e| e.kind == kind)
        .filter(|e| exclude.map_or(true, |x| e.theta != x))
        .min_by(|a, b| {
            (a.theta - anchor)
                .abs()
                .total_cmp(&(b.theta - anchor).abs())
        })
        .copied()
}

/// Resolve the observed angle pair: explicit angles pass through, automatic
/// modes pick refined extrema nearest the two anchor angles.
pub fn select_angle_pair(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta_range: (f64, f64),
    mode: AngleMode,
    anchor1: f64,
    anchor2: f64,
) -> Result<(f64, f64)> {
    if mode == AngleMode::Explicit {
        return Ok((anchor1, anchor2));
    }
    let extrema = find_extrema(cfg, lambda_signal, theta_range.0, theta_range.1)?;
    let (kind1, kind2) = match mode {
        AngleMode::PeakValley => (ExtremumKind::Peak, ExtremumKind::Valley),
        AngleMode::PeakPeak => (ExtremumKind::Peak, ExtremumKind::Peak),
        AngleMode::ValleyValley => (ExtremumKind::Valley, ExtremumKind::Valley),
        AngleMode::Explicit => unreachable!(),
    };
    let first = nearest(&extrema, kind1, anchor1, None).ok_or(Error::NoFringe {
        theta_min_rad: theta_range.0,
        theta_max_rad: theta_range.1,
    })?;
    let exclude = (kind1 == kind2).then_some(first.theta);
    let second = nearest(&extrema, kind2, anchor2, exclude).ok_or(Error::NoFringe {
        theta_min_rad: theta_range.0,
        theta_max_rad: theta_range.1,
    })?;
    Ok((first.theta, second.theta))
}

/// Angle pair in phase quadrature: the first angle sits a quarter fringe past
/// the peak, the second at the adjacent valley. With phases near (pi/2, pi)
/// one intensity responds mostly to the refractive index and the other mostly
/// to absorption, so the pair identifies both parameters well. Angle pairs
/// separated by exactly half a fringe are useless here: their intensities are
/// perfectly anticorrelated and the Jacobian drops rank.
pub fn quadrature_pair(
    cfg: &OpticalConfig,
    lambda_signal: f64,
    theta_range: (f64, f64),
) -> Result<(f64, f64)> {
    let extrema = find_extrema(cfg, lambda_signal, theta_range.0, theta_range.1)?;
    let pair = extrema.windows(2).find_map(|w| {
        (w[0].kind == ExtremumKind::Peak && w[1].kind == ExtremumKind::Valley)
            .then(|| (w[0], w[1]))
    });
    let (peak, valley) = pair.ok_or(Error::NoFringe {
        theta_min_rad: theta_range.0,
        theta_max_rad: theta_range.1,
    })?;
    // Bisect the monotone total phase to the quarter-fringe point.
    let target = 0.5 * (peak.total_phase + valley.total_phase);
    let phase = |theta: f64| -> Result<f64> {
        Ok(optics::mode_point(cfg, lambda_signal, theta)?.total_phase())
    };
    let mut lo = peak.theta;
    let mut hi = valley.theta;
    let increasing = valley.total_phase > peak.total_phase;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (phase(mid)? > target) == increasing {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
    }
    Ok((0.5 * (lo + hi), valley.theta))
}
