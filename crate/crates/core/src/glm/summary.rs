use alloc::string::String;
use alloc::vec::Vec;

use super::{logistic, FittedModel, GlmError};
use crate::features::FeatureVector;
use crate::linalg::dot;

/// One row of the coefficient table.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub name: String,
    pub coefficient: f64,
    pub std_error: f64,
    pub odds: f64,
    pub z: f64,
    pub p_value: f64,
    pub stars: &'static str,
}

/// Two-sided normal tail probability `P(|Z| > |z|)`.
pub fn normal_two_sided_p(z: f64) -> f64 {
    libm::erfc(z.abs() / core::f64::consts::SQRT_2)
}

pub fn significance_stars(p: f64) -> &'static str {
    if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else if p < 0.1 {
        "."
    } else {
        ""
    }
}

pub fn summarize(model: &FittedModel) -> Vec<SummaryRow> {
    model
        .predictor_names
        .iter()
        .zip(&model.coefficients)
        .zip(model.std_errors())
        .map(|((name, &coefficient), std_error)| {
            let z = if coefficient == 0.0 {
                0.0
            } else {
                coefficient / std_error
            };
            let p_value = normal_two_sided_p(z);
            SummaryRow {
                name: name.clone(),
                coefficient,
                std_error,
                odds: libm::exp(coefficient),
                z,
                p_value,
                stars: significance_stars(p_value),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub probability: f64,
    /// Delta-method standard error of `probability`.
    pub std_error: f64,
    pub linear_predictor: f64,
}

/// Anything that can supply named predictor values.
pub trait PredictorSource {
    fn predictor_value(&self, name: &str) -> Option<f64>;
}

impl PredictorSource for FeatureVector {
    fn predictor_value(&self, name: &str) -> Option<f64> {
        FeatureVector::predictor_value(self, name)
    }
}

/// Scores one shot: `p = logistic(xᵀβ)`, `se = p(1−p)·√(xᵀΣx)`.
pub fn predict<S: PredictorSource + ?Sized>(
    model: &FittedModel,
    features: &S,
) -> Result<Prediction, GlmError> {
    let x = model
        .predictor_names
        .iter()
        .map(|n| {
            features
                .predictor_value(n)
                .ok_or_else(|| GlmError::UnknownPredictor(n.clone()))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(predict_row(model, &x))
}

/// Scores a row already aligned with `model.predictor_names`.
pub fn predict_row(model: &FittedModel, x: &[f64]) -> Prediction {
    let linear_predictor = dot(&model.coefficients, x);
    let probability = logistic(linear_predictor);
    let var = model.covariance.quadratic_form(x).max(0.0);
    Prediction {
        probability,
        std_error: probability * (1.0 - probability) * libm::sqrt(var),
        linear_predictor,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glm::baseline_model;
    use crate::linalg::Matrix;
    use alloc::string::ToString;
    use alloc::vec;

    fn single(coef: f64, var: f64) -> FittedModel {
        FittedModel {
            predictor_names: vec!["x".to_string()],
            coefficients: vec![coef],
            covariance: Matrix::from_rows(&[[var]]),
            n_obs: 10,
            log_likelihood: 0.0,
            converged: true,
            iterations: 1,
        }
    }

    #[test]
    fn odds_ratios_round_to_two_places() {
        let r = summarize(&single(0.362, 0.021 * 0.021));
        assert_eq!(alloc::format!("{:.2}", r[0].odds), "1.44");
        let r = summarize(&single(0.929, 0.061 * 0.061));
        assert_eq!(alloc::format!("{:.2}", r[0].odds), "2.53");
    }

    #[test]
    fn zero_coefficient_row() {
        let r = &summarize(&single(0.0, 0.04))[0];
        assert_eq!(r.odds, 1.0);
        assert_eq!(r.z, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.stars, "");
    }

    #[test]
    fn p_value_known_points() {
        assert!((normal_two_sided_p(1.959963984540054) - 0.05).abs() < 1e-12);
        assert!((normal_two_sided_p(-2.55) - 0.010772).abs() < 1e-5);
        assert_eq!(significance_stars(0.0576), ".");
        assert_eq!(significance_stars(0.0460), "*");
        assert_eq!(significance_stars(0.00809), "**");
    }

    #[test]
    fn zero_covariance_gives_zero_error() {
        let m = FittedModel {
            covariance: Matrix::zeros(1, 1),
            ..single(0.3, 0.0)
        };
        let p = predict_row(&m, &[2.0]);
        assert_eq!(p.std_error, 0.0);
        assert_eq!(p.probability, logistic(0.6));
    }

    #[test]
    fn unknown_predictor_is_an_error() {
        struct Empty;
        impl PredictorSource for Empty {
            fn predictor_value(&self, _: &str) -> Option<f64> {
                None
            }
        }
        let m = baseline_model();
        assert_eq!(
            predict(&m, &Empty).unwrap_err(),
            GlmError::UnknownPredictor("(Intercept)".to_string())
        );
    }
}
