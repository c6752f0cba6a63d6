use alloc::string::ToString;

use super::FittedModel;
use crate::features::PREDICTOR_NAMES;
use crate::linalg::Matrix;

/// Coefficient and standard error of one baseline predictor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineRow {
    pub name: &'static str,
    pub coefficient: f64,
    pub std_error: f64,
}

const fn row(name: &'static str, coefficient: f64, std_error: f64) -> BaselineRow {
    BaselineRow {
        name,
        coefficient,
        std_error,
    }
}

/// Baseline shot model for offensive-zone shots with the goalie in net,
/// rounded to 3 decimals. Default ground truth for synthetic seasons.
pub const BASELINE_ROWS: [BaselineRow; 25] = [
    row("(Intercept)", -1.333, 0.083),
    row("Own rebound", -0.531, 0.099),
    row("Rebound", 0.547, 0.063),
    row("Distance", -0.054, 0.001),
    row("Angle", -0.017, 0.000),
    row("Back", 0.687, 0.081),
    row("Slap", 1.411, 0.083),
    row("Snap", 1.135, 0.081),
    row("Tip", 0.803, 0.087),
    row("Wrist", 0.954, 0.079),
    row("EV44", -0.328, 0.057),
    row("PP54", 0.362, 0.021),
    row("PP53", 0.929, 0.061),
    row("SH45", 0.189, 0.048),
    row("SH35", 1.277, 0.501),
    row("Angle Change Left", 0.013, 0.002),
    row("Angle Change Right", 0.014, 0.001),
    row("Shooter fatigue", -0.025, 0.001),
    row("Off Time on ice", 0.022, 0.001),
    row("Def Time on ice", 0.001, 0.001),
    row("Scorediff", 0.031, 0.005),
    row("Byhome", -0.024, 0.016),
    row("Reb:Angle", 0.005, 0.002),
    row("Own:Angle", 0.007, 0.003),
    row("Tip:Angle", 0.014, 0.001),
];

/// The baseline coefficients as a model with diagonal covariance
/// (only standard errors are known).
pub fn baseline_model() -> FittedModel {
    debug_assert!(BASELINE_ROWS
        .iter()
        .zip(PREDICTOR_NAMES)
        .all(|(r, n)| r.name == n));
    let p = BASELINE_ROWS.len();
    let mut covariance = Matrix::zeros(p, p);
    for (i, r) in BASELINE_ROWS.iter().enumerate() {
        covariance[(i, i)] = r.std_error * r.std_error;
    }
    FittedModel {
        predictor_names: BASELINE_ROWS.iter().map(|r| r.name.to_string()).collect(),
        coefficients: BASELINE_ROWS.iter().map(|r| r.coefficient).collect(),
        covariance,
        n_obs: 0,
        log_likelihood: 0.0,
        converged: true,
        iterations: 0,
    }
}
