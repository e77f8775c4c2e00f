//! Physical and run configuration.
//!
//! All internal quantities are SI (meters, radians); the text format accepts
//! the bench units `_nm`, `_mm`, `_per_cm`, `_mrad` and converts on parse.
//! The absorption coefficient is kept in 1/cm because it is one of the two
//! estimated parameters and every reported covariance carries that unit.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::HashSet;
use std::fmt::Write as _;

pub const NM: f64 = 1e-9;
pub const MM: f64 = 1e-3;
pub const MRAD: f64 = 1e-3;

/// How the collinear crystal phase mismatch at q = 0 is set.
///
/// Constant refractive indices cannot encode dispersion, so the raw collinear
/// mismatch is hundreds of radians and the sinc envelope would sit far from
/// the working wavelength. `Matched` subtracts the q = 0 crystal mismatch at a
/// reference wavelength so the envelope peaks there; `TableIndices` keeps the
/// raw constant-index value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MismatchMode {
    /// Subtract the collinear crystal mismatch at this reference wavelength (m).
    Matched { lambda_ref: f64 },
    /// Use the raw constant-index mismatch.
    TableIndices,
}

/// Physical constants of one interferometer run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpticalConfig {
    /// Pump wavelength (m).
    pub lambda_pump: f64,
    /// Crystal refractive indices for pump, signal, idler.
    pub n_pump_crystal: f64,
    pub n_signal_crystal: f64,
    pub n_idler_crystal: f64,
    /// Medium refractive indices for pump, signal, idler.
    pub n_pump_medium: f64,
    pub n_signal_medium: f64,
    pub n_idler_medium: f64,
    /// Amplitude absorption coefficient of the medium (1/cm).
    pub alpha_per_cm: f64,
    /// Crystal length l (m).
    pub crystal_length: f64,
    /// Chamber length l0 (m).
    pub chamber_length: f64,
    /// Pair-creation amplitude |F| at perfect phase matching (dimensionless).
    pub pair_amplitude: f64,
    /// Collinear crystal-mismatch convention.
    pub mismatch_mode: MismatchMode,
    /// Repeated-measurement number M.
    pub shots: u64,
}

impl Default for OpticalConfig {
    fn default() -> Self {
        OpticalConfig {
            lambda_pump: 532.0 * NM,
            n_pump_crystal: 2.3232,
            n_signal_crystal: 2.2930,
            n_idler_crystal: 2.1052,
            n_pump_medium: 1.0,
            n_signal_medium: 1.0,
            n_idler_medium: 1.0 - 9e-5,
            alpha_per_cm: 0.15,
            crystal_length: 0.5 * MM,
            chamber_length: 25.0 * MM,
            pair_amplitude: 1e-3,
            mismatch_mode: MismatchMode::Matched {
                lambda_ref: 609.16 * NM,
            },
            shots: 1_000_000,
        }
    }
}

impl OpticalConfig {
    /// Chamber length in cm, the unit in which alpha is expressed.
    pub fn chamber_length_cm(&self) -> f64 {
        self.chamber_length * 100.0
    }

    /// Copy of this configuration with the two estimated medium parameters
    /// replaced. Everything the estimation layer differentiates goes through
    /// this single entry point.
    pub fn with_medium_params(&self, n_idler_medium: f64, alpha_per_cm: f64) -> Self {
        let mut cfg = self.clone();
        cfg.n_idler_medium = n_idler_medium;
        cfg.alpha_per_cm = alpha_per_cm;
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("lambda_pump", self.lambda_pump),
            ("n_pump_crystal", self.n_pump_crystal),
            ("n_signal_crystal", self.n_signal_crystal),
            ("n_idler_crystal", self.n_idler_crystal),
            ("n_pump_medium", self.n_pump_medium),
            ("n_signal_medium", self.n_signal_medium),
            ("n_idler_medium", self.n_idler_medium),
            ("crystal_length", self.crystal_length),
            ("chamber_length", self.chamber_length),
        ];
        for (name, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidConfig(format!("{name} must be > 0, got {value}")));
            }
        }
        if !self.alpha_per_cm.is_finite() || self.alpha_per_cm < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "alpha_per_cm must be >= 0, got {}",
                self.alpha_per_cm
            )));
        }
        let pa = self.pair_amplitude;
        if !pa.is_finite() || pa <= 0.0 || pa >= 1e-2 {
            return Err(Error::InvalidConfig(format!(
                "pair_amplitude must lie in (0, 1e-2), got {pa}"
            )));
        }
        if self.shots < 1 {
            return Err(Error::InvalidConfig("shots must be >= 1".into()));
        }
        if let MismatchMode::Matched { lambda_ref } = self.mismatch_mode {
            if !lambda_ref.is_finite() || lambda_ref <= self.lambda_pump {
                return Err(Error::InvalidConfig(format!(
                    "matched reference wavelength {} m must exceed the pump wavelength",
                    lambda_ref
                )));
            }
        }
        Ok(())
    }
}

/// How the pair of observed emission angles is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AngleMode {
    /// Use `theta1` / `theta2` directly.
    Explicit,
    /// Peak nearest the first anchor, valley nearest the second.
    PeakValley,
    /// Two distinct peaks nearest the anchors.
    PeakPeak,
    /// Two distinct valleys nearest the anchors.
    ValleyValley,
}

/// Which medium parameter a regret scan varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanParameter {
    NMedium,
    Alpha,
}

/// Full run configuration: physics plus scan grids and selection knobs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub optical: OpticalConfig,
    /// Signal wavelength for fixed-wavelength commands (m).
    pub lambda_fixed: f64,
    /// Signal-wavelength grid for `spectrum` (m).
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub lambda_steps: u64,
    /// Emission-angle grid (rad).
    pub theta_min: f64,
    pub theta_max: f64,
    pub theta_steps: u64,
    /// Medium refractive-index grid.
    pub n_medium_min: f64,
    pub n_medium_max: f64,
    pub n_medium_steps: u64,
    /// Absorption grid (1/cm).
    pub alpha_min_per_cm: f64,
    pub alpha_max_per_cm: f64,
    pub alpha_steps: u64,
    pub scan_parameter: ScanParameter,
    pub angle_mode: AngleMode,
    /// Observation angles, or anchors for the automatic modes (rad).
    pub theta1: f64,
    pub theta2: f64,
    pub trials: u64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            optical: OpticalConfig::default(),
            lambda_fixed: 609.16 * NM,
            lambda_min: 585.0 * NM,
            lambda_max: 635.0 * NM,
            lambda_steps: 101,
            theta_min: 0.2 * MRAD,
            theta_max: 4.0 * MRAD,
            theta_steps: 381,
            n_medium_min: 0.9999,
            n_medium_max: 1.0,
            n_medium_steps: 81,
            alpha_min_per_cm: 0.05,
            alpha_max_per_cm: 0.5,
            alpha_steps: 46,
            scan_parameter: ScanParameter::NMedium,
            angle_mode: AngleMode::PeakValley,
            theta1: 2.09 * MRAD,
            theta2: 2.73 * MRAD,
            trials: 1000,
            seed: 7,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.optical.validate()?;
        if !self.lambda_fixed.is_finite() || self.lambda_fixed <= self.optical.lambda_pump {
            return Err(Error::InvalidConfig(
                "lambda_fixed_nm must exceed the pump wavelength".into(),
            ));
        }
        let ranges = [
            ("lambda", self.lambda_min, self.lambda_max, self.lambda_steps),
            ("theta", self.theta_min, self.theta_max, self.theta_steps),
            (
                "n_medium",
                self.n_medium_min,
                self.n_medium_max,
                self.n_medium_steps,
            ),
            (
                "alpha",
                self.alpha_min_per_cm,
                self.alpha_max_per_cm,
                self.alpha_steps,
            ),
        ];
        for (name, lo, hi, steps) in ranges {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidConfig(format!(
                    "{name} range must be ordered: min {lo} < max {hi}"
                )));
            }
            if steps < 2 {
                return Err(Error::InvalidConfig(format!(
                    "{name}_steps must be >= 2, got {steps}"
                )));
            }
        }
        if self.lambda_min <= self.optical.lambda_pump {
            return Err(Error::InvalidConfig(
                "lambda_min_nm must exceed the pump wavelength".into(),
            ));
        }
        if self.theta1 == self.theta2 {
            return Err(Error::InvalidConfig("theta1_mrad and theta2_mrad must differ".into()));
        }
        if self.trials < 1 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        Ok(())
    }

    /// Canonical text form; `parse_run_config` round-trips it bitwise.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let f = |x: f64| format!("{:.16e}", x);
        let _ = writeln!(s, "lambda_pump_nm = {}", f(self.optical.lambda_pump / NM));
        let _ = writeln!(s, "crystal_length_mm = {}", f(self.optical.crystal_length / MM));
        let _ = writeln!(s, "chamber_length_mm = {}", f(self.optical.chamber_length / MM));
        let _ = writeln!(s, "alpha_per_cm = {}", f(self.optical.alpha_per_cm));
        let _ = writeln!(s, "n_pump_crystal = {}", f(self.optical.n_pump_crystal));
        let _ = writeln!(s, "n_signal_crystal = {}", f(self.optical.n_signal_crystal));
        let _ = writeln!(s, "n_idler_crystal = {}", f(self.optical.n_idler_crystal));
        let _ = writeln!(s, "n_pump_medium = {}", f(self.optical.n_pump_medium));
        let _ = writeln!(s, "n_signal_medium = {}", f(self.optical.n_signal_medium));
        let _ = writeln!(s, "n_idler_medium = {}", f(self.optical.n_idler_medium));
        let _ = writeln!(s, "pair_amplitude = {}", f(self.optical.pair_amplitude));
        match self.optical.mismatch_mode {
            MismatchMode::Matched { lambda_ref } => {
                let _ = writeln!(s, "mismatch_mode = matched");
                let _ = writeln!(s, "matched_lambda_nm = {}", f(lambda_ref / NM));
            }
            MismatchMode::TableIndices => {
                let _ = writeln!(s, "mismatch_mode = table");
            }
        }
        let _ = writeln!(s, "shots = {}", self.optical.shots);
        let _ = writeln!(s, "lambda_fixed_nm = {}", f(self.lambda_fixed / NM));
        let _ = writeln!(s, "lambda_min_nm = {}", f(self.lambda_min / NM));
        let _ = writeln!(s, "lambda_max_nm = {}", f(self.lambda_max / NM));
        let _ = writeln!(s, "lambda_steps = {}", self.lambda_steps);
        let _ = writeln!(s, "theta_min_mrad = {}", f(self.theta_min / MRAD));
        let _ = writeln!(s, "theta_max_mrad = {}", f(self.theta_max / MRAD));
        let _ = writeln!(s, "theta_steps = {}", self.theta_steps);
        let _ = writeln!(s, "n_medium_min = {}", f(self.n_medium_min));
        let _ = writeln!(s, "n_medium_max = {}", f(self.n_medium_max));
        let _ = writeln!(s, "n_medium_steps = {}", self.n_medium_steps);
        let _ = writeln!(s, "alpha_min_per_cm = {}", f(self.alpha_min_per_cm));
        let _ = writeln!(s, "alpha_max_per_cm = {}", f(self.alpha_max_per_cm));
        let _ = writeln!(s, "alpha_steps = {}", self.alpha_steps);
        let scan = match self.scan_parameter {
            ScanParameter::NMedium => "n_medium",
            ScanParameter::Alpha => "alpha",
        };
        let _ = writeln!(s, "scan_parameter = {scan}");
        let mode = match self.angle_mode {
            AngleMode::Explicit => "explicit",
            AngleMode::PeakValley => "peak-valley",
            AngleMode::PeakPeak => "peak-peak",
            AngleMode::ValleyValley => "valley-valley",
        };
        let _ = writeln!(s, "angle_mode = {mode}");
        let _ = writeln!(s, "theta1_mrad = {}", f(self.theta1 / MRAD));
        let _ = writeln!(s, "theta2_mrad = {}", f(self.theta2 / MRAD));
        let _ = writeln!(s, "trials = {}", self.trials);
        let _ = writeln!(s, "seed = {}", self.seed);
        s
    }
}

fn parse_f64(line: usize, key: &str, value: &str) -> Result<f64> {
    value.parse::<f64>().map_err(|_| Error::Config {
        line,
        message: format!("key '{key}': cannot parse '{value}' as a number"),
    })
}

fn parse_u64(line: usize, key: &str, value: &str) -> Result<u64> {
    if let Ok(v) = value.parse::<u64>() {
        return Ok(v);
    }
    // Accept integral scientific notation (e.g. 1e8) for counts.
    let v = parse_f64(line, key, value)?;
    if v.fract() == 0.0 && v >= 0.0 && v <= u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(Error::Config {
            line,
            message: format!("key '{key}': '{value}' is not a nonnegative integer"),
        })
    }
}

fn check_range(line: usize, key: &str, value: f64, ok: bool) -> Result<f64> {
    if ok {
        Ok(value)
    } else {
        Err(Error::Config {
            line,
            message: format!("key '{key}': value {value} out of range"),
        })
    }
}

/// Parse the line-oriented `key = value` run configuration.
///
/// Unknown keys, duplicate keys, malformed values and out-of-range values are
/// all errors carrying the 1-based line number. An empty file yields the
/// defaults.
pub fn parse_run_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    let mut seen: HashSet<String> = HashSet::new();
    let mut mode_word: Option<(usize, String)> = None;
    let mut matched_lambda: Option<f64> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Config {
            line,
            message: format!("expected 'key = value', got '{content}'"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(Error::Config {
                line,
                message: format!("key '{key}' has no value"),
            });
        }
        if !seen.insert(key.to_string()) {
            return Err(Error::Config {
                line,
                message: format!("duplicate key '{key}'"),
            });
        }
        match key {
            "lambda_pump_nm" => {
                let v = parse_f64(line, key, value)?;
                cfg.optical.lambda_pump = check_range(line, key, v, v > 0.0)? * NM;
            }
            "crystal_length_mm" => {
                let v = parse_f64(line, key, value)?;
                cfg.optical.crystal_length = check_range(line, key, v, v > 0.0)? * MM;
            }
            "chamber_length_mm" => {
                let v = parse_f64(line, key, value)?;
                cfg.optical.chamber_length = check_range(line, key, v, v > 0.0)? * MM;
            }
            "alpha_per_cm" => {
                let v = parse_f64(line, key, value)?;
                cfg.optical.alpha_per_cm = check_range(line, key, v, v >= 0.0)?;
            }
            "n_pump_crystal" => {
                let v = parse_f64(line, key, value)?;
                cfg.optical.n_pump_crystal = check_range(line, key, v, v > 0.0)?;
            }
            "n_signal_crystal" => {
                let v = parse_f64(line, key, value)?;
                cfg.optical.n_signal_crystal = check_range(line, key, v, v > 0.0)?;
            }
            "n_idler_crystal" => {
                let v = parse_f64(line, key, value)?;
                cfg.optical.n_idler_crystal = check_range(line, key, v, v > 0.0)?;
            }
            "n_pump_medium" => {
                let v = parse_f64(line, key, value)?;
                cfg.optical.n_pump_medium = check_range(line, key, v, v > 0.0)?;
            }
            "n_signal_medium" => {
                let v = parse_f64(line, key, value)?;
                cfg.optical.n_signal_medium = check_range(line, key, v, v > 0.0)?;
            }
            "n_idler_medium" => {
                let v = parse_f64(line, key, value)?;
                cfg.optical.n_idler_medium = check_range(line, key, v, v > 0.0)?;
            }
            "pair_amplitude" => {
                let v = parse_f64(line, key, value)?;
                cfg.optical.pair_amplitude = check_range(line, key, v, v > 0.0 && v < 1e-2)?;
            }
            "mismatch_mode" => {
                mode_word = Some((line, value.to_string()));
            }
            "matched_lambda_nm" => {
                let v = parse_f64(line, key, value)?;
                matched_lambda = Some(check_range(line, key, v, v > 0.0)? * NM);
            }
            "shots" => {
                let v = parse_u64(line, key, value)?;
                if v < 1 {
                    return Err(Error::Config {
                        line,
                        message: format!("key '{key}': value {v} out of range"),
                    });
                }
                cfg.optical.shots = v;
            }
            "lambda_fixed_nm" => {
                let v = parse_f64(line, key, value)?;
                cfg.lambda_fixed = check_range(line, key, v, v > 0.0)? * NM;
            }
            "lambda_min_nm" => {
                let v = parse_f64(line, key, value)?;
                cfg.lambda_min = check_range(line, key, v, v > 0.0)? * NM;
            }
            "lambda_max_nm" => {
                let v = parse_f64(line, key, value)?;
                cfg.lambda_max = check_range(line, key, v, v > 0.0)? * NM;
            }
            "lambda_steps" => cfg.lambda_steps = parse_u64(line, key, value)?,
            "theta_min_mrad" => {
                cfg.theta_min = parse_f64(line, key, value)? * MRAD;
            }
            "theta_max_mrad" => {
                cfg.theta_max = parse_f64(line, key, value)? * MRAD;
            }
            "theta_steps" => cfg.theta_steps = parse_u64(line, key, value)?,
            "n_medium_min" => {
                let v = parse_f64(line, key, value)?;
                cfg.n_medium_min = check_range(line, key, v, v > 0.0)?;
            }
            "n_medium_max" => {
                let v = parse_f64(line, key, value)?;
                cfg.n_medium_max = check_range(line, key, v, v > 0.0)?;
            }
            "n_medium_steps" => cfg.n_medium_steps = parse_u64(line, key, value)?,
            "alpha_min_per_cm" => {
                let v = parse_f64(line, key, value)?;
                cfg.alpha_min_per_cm = check_range(line, key, v, v >= 0.0)?;
            }
            "alpha_max_per_cm" => {
                let v = parse_f64(line, key, value)?;
                cfg.alpha_max_per_cm = check_range(line, key, v, v >= 0.0)?;
            }
            "alpha_steps" => cfg.alpha_steps = parse_u64(line, key, value)?,
            "scan_parameter" => {
                cfg.scan_parameter = match value {
                    "n_medium" => ScanParameter::NMedium,
                    "alpha" => ScanParameter::Alpha,
                    other => {
                        return Err(Error::Config {
                            line,
                            message: format!(
                                "scan_parameter must be 'n_medium' or 'alpha', got '{other}'"
                            ),
                        })
                    }
                };
            }
            "angle_mode" => {
                cfg.angle_mode = match value {
                    "explicit" => AngleMode::Explicit,
                    "peak-valley" => AngleMode::PeakValley,
                    "peak-peak" => AngleMode::PeakPeak,
                    "valley-valley" => AngleMode::ValleyValley,
                    other => {
                        return Err(Error::Config {
                            line,
                            message: format!("unknown angle_mode '{other}'"),
                        })
                    }
                };
            }
            "theta1_mrad" => cfg.theta1 = parse_f64(line, key, value)? * MRAD,
            "theta2_mrad" => cfg.theta2 = parse_f64(line, key, value)? * MRAD,
            "trials" => cfg.trials = parse_u64(line, key, value)?,
            "seed" => cfg.seed = parse_u64(line, key, value)?,
            other => {
                return Err(Error::Config {
                    line,
                    message: format!("unknown key '{other}'"),
                })
            }
        }
    }

    match mode_word {
        None => {
            if let Some(lam) = matched_lambda {
                cfg.optical.mismatch_mode = MismatchMode::Matched { lambda_ref: lam };
            }
        }
        Some((line, word)) => match word.as_str() {
            "matched" => {
                let lambda_ref = matched_lambda.unwrap_or(609.16 * NM);
                cfg.optical.mismatch_mode = MismatchMode::Matched { lambda_ref };
            }
            "table" => {
                if matched_lambda.is_some() {
                    return Err(Error::Config {
                        line,
                        message: "matched_lambda_nm is only valid with mismatch_mode = matched"
                            .into(),
                    });
                }
                cfg.optical.mismatch_mode = MismatchMode::TableIndices;
            }
            other => {
                return Err(Error::Config {
                    line,
                    message: format!("mismatch_mode must be 'matched' or 'table', got '{other}'"),
                })
            }
        },
    }

    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_table_defaults() {
        let cfg = parse_run_config("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.optical.lambda_pump, 532.0 * NM);
        assert_eq!(cfg.optical.crystal_length, 0.5 * MM);
        assert_eq!(cfg.optical.chamber_length, 25.0 * MM);
        assert_eq!(cfg.optical.alpha_per_cm, 0.15);
        assert_eq!(cfg.optical.n_pump_crystal, 2.3232);
        assert_eq!(cfg.optical.n_signal_crystal, 2.2930);
        assert_eq!(cfg.optical.n_idler_crystal, 2.1052);
        assert_eq!(cfg.optical.n_pump_medium, 1.0);
        assert_eq!(cfg.optical.n_signal_medium, 1.0);
        assert_eq!(cfg.optical.n_idler_medium, 1.0 - 9e-5);
    }

    #[test]
    fn negative_alpha_is_a_range_error_with_line_number() {
        let err = parse_run_config("# comment\nalpha_per_cm = -1\n").unwrap_err();
        match err {
            Error::Config { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("alpha_per_cm"));
            }
            other => panic!("expected Config error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_key_is_rejected() {
        let err = parse_run_config("lambda_pump_nm = 532\nlambda_pump_nm = 500\n").unwrap_err();
        match err {
            Error::Config { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("duplicate"));
            }
            other => panic!("expected Config error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_key_is_rejected() {
        let err = parse_run_config("frobnicate = 3\n").unwrap_err();
        match err {
            Error::Config { line, .. } => assert_eq!(line, 1),
            other => panic!("expected Config error, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let cfg = parse_run_config("\n# full comment\nalpha_per_cm = 0.2 # trailing\n\n").unwrap();
        assert_eq!(cfg.optical.alpha_per_cm, 0.2);
    }

    #[test]
    fn table_mode_parses() {
        let cfg = parse_run_config("mismatch_mode = table\n").unwrap();
        assert_eq!(cfg.optical.mismatch_mode, MismatchMode::TableIndices);
    }

    #[test]
    fn serialize_round_trips() {
        let mut cfg = RunConfig::default();
        cfg.optical.alpha_per_cm = 0.3812345678901234;
        cfg.optical.pair_amplitude = 2.5e-4;
        cfg.seed = 123456789;
        cfg.angle_mode = AngleMode::ValleyValley;
        cfg.scan_parameter = ScanParameter::Alpha;
        let text = cfg.serialize();
        let parsed = parse_run_config(&text).unwrap();
        assert_eq!(parsed, cfg);
    }

    #[test]
    fn scientific_notation_shots_accepted() {
        let cfg = parse_run_config("shots = 1e8\n").unwrap();
        assert_eq!(cfg.optical.shots, 100_000_000);
    }
}
