//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Signal wavelength at or below the pump wavelength: the idler frequency
    /// would be zero or negative.
    #[error("non-physical signal wavelength {lambda_signal_nm} nm: must exceed pump {lambda_pump_nm} nm")]
    NonPhysicalSignalWavelength {
        lambda_signal_nm: f64,
        lambda_pump_nm: f64,
    },

    /// Transverse wavenumber exceeds the idler wavenumber; the idler would be
    /// evanescent and the longitudinal-component model does not apply.
    #[error("evanescent idler: q = {q_transverse} 1/m exceeds idler wavenumber {k_idler} 1/m")]
    EvanescentIdler { q_transverse: f64, k_idler: f64 },

    /// Emission angle outside the small-angle domain of the phase model.
    #[error("emission angle {theta_rad} rad outside the small-angle domain (|theta| < 0.1 rad)")]
    AngleOutOfRange { theta_rad: f64 },

    /// Configuration file error, with the 1-based line number when the error
    /// is tied to a specific line.
    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    /// Configuration value violates an invariant (not tied to a single line).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The intensity Jacobian cannot be inverted: the selected angles carry no
    /// independent information about one of the parameters.
    #[error("singular intensity Jacobian: the angle pair does not jointly identify (n_i^m, alpha)")]
    SingularJacobian,

    /// The Gauss-Newton curvature at the fit optimum is not invertible.
    #[error("singular fit curvature: the measured angles do not identify both parameters")]
    SingularCurvature,

    /// The quantum Fisher information matrix is not invertible.
    #[error("singular quantum Fisher information matrix")]
    SingularFisher,

    /// No intensity extremum inside the requested angular range.
    #[error("no fringe extremum in the angular range [{theta_min_rad}, {theta_max_rad}] rad")]
    NoFringe { theta_min_rad: f64, theta_max_rad: f64 },

    /// Expected photon number exceeds the u64 counting range.
    #[error("expected count {mean} overflows the counter range")]
    CountOverflow { mean: f64 },

    /// Fit initial guess outside the physical box.
    #[error("initial guess ({n_medium}, {alpha_per_cm} 1/cm) outside the physical box n in (0.9, 1.1), alpha in [0, 10] 1/cm")]
    GuessOutOfRange { n_medium: f64, alpha_per_cm: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Machine-readable one-line JSON record for the diagnostic stream.
    pub fn to_json_record(&self) -> String {
        let kind = match self {
            Error::NonPhysicalSignalWavelength { .. } => "non_physical_signal_wavelength",
            Error::EvanescentIdler { .. } => "evanescent_idler",
            Error::AngleOutOfRange { .. } => "angle_out_of_range",
            Error::Config { .. } => "config",
            Error::InvalidConfig(_) => "invalid_config",
            Error::SingularJacobian => "singular_jacobian",
            Error::SingularCurvature => "singular_curvature",
            Error::SingularFisher => "singular_fisher",
            Error::NoFringe { .. } => "no_fringe",
            Error::CountOverflow { .. } => "count_overflow",
            Error::GuessOutOfRange { .. } => "guess_out_of_range",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        };
        let line = match self {
            Error::Config { line, .. } => Some(*line),
            _ => None,
        };
        serde_json::json!({
            "error": {
                "kind": kind,
                "message": self.to_string(),
                "line": line,
            }
        })
        .to_string()
    }
}
