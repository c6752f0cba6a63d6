//! Binary logistic regression for goal probability.

mod irls;
mod reference;
mod roc;
mod summary;

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::linalg::Matrix;

pub use irls::{fit_irls, log_likelihood, log_likelihood_gradient, logistic, FitOptions};
pub use reference::{baseline_model, BaselineRow, BASELINE_ROWS};
pub use roc::{roc_auc, RocCurve};
pub use summary::{
    normal_two_sided_p, predict, predict_row, significance_stars, summarize, Prediction,
    PredictorSource, SummaryRow,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GlmError {
    #[error("design has {rows} rows but {labels} labels")]
    LengthMismatch { rows: usize, labels: usize },
    #[error("need more observations ({n}) than predictors ({p})")]
    TooFewObservations { n: usize, p: usize },
    #[error("predictor names ({names}) do not match design columns ({cols})")]
    NameMismatch { names: usize, cols: usize },
    #[error("duplicate predictor name {0}")]
    DuplicatePredictor(String),
    #[error("design is rank deficient: column {0} is linearly dependent on earlier columns")]
    RankDeficient(String),
    #[error("complete or quasi-complete separation: linear predictor reached {max_abs_eta:.1}")]
    Separation { max_abs_eta: f64 },
    #[error("model predictor {0} cannot be evaluated for this shot")]
    UnknownPredictor(String),
    #[error("ROC needs both classes; got {positives} goals and {negatives} non-goals")]
    SingleClass { positives: usize, negatives: usize },
}

/// Fitted logistic model.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel {
    pub predictor_names: Vec<String>,
    pub coefficients: Vec<f64>,
    /// Inverse Fisher information at the optimum.
    pub covariance: Matrix,
    pub n_obs: usize,
    pub log_likelihood: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl FittedModel {
    pub fn std_errors(&self) -> Vec<f64> {
        (0..self.coefficients.len())
            .map(|i| libm::sqrt(self.covariance[(i, i)].max(0.0)))
            .collect()
    }

    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.predictor_names
            .iter()
            .position(|n| n == name)
            .map(|i| self.coefficients[i])
    }
}
