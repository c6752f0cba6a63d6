use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{FittedModel, GlmError};
use crate::linalg::{Matrix, Qr};

/// IRLS weights are clipped below at this value.
const MIN_WEIGHT: f64 = 1e-10;
/// `|R_jj| / ‖column j‖` below this marks a dependent column.
const RANK_TOL: f64 = 1e-9;
/// Fitted probabilities this close to 0 or 1 mean the data are separated.
const SEPARATION_ETA: f64 = 30.0;
const MAX_HALVINGS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub max_iter: usize,
    /// Convergence when the largest absolute coefficient change is below this.
    pub tol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            max_iter: 50,
            tol: 1e-8,
        }
    }
}

pub fn logistic(eta: f64) -> f64 {
    if eta >= 0.0 {
        1.0 / (1.0 + libm::exp(-eta))
    } else {
        let e = libm::exp(eta);
        e / (1.0 + e)
    }
}

/// `ln(1 + e^η)` without overflow.
fn softplus(eta: f64) -> f64 {
    eta.max(0.0) + libm::log1p(libm::exp(-eta.abs()))
}

/// Binomial log-likelihood `Σ yη − ln(1 + e^η)`.
pub fn log_likelihood(design: &Matrix, labels: &[bool], beta: &[f64]) -> f64 {
    design
        .mul_vec(beta)
        .iter()
        .zip(labels)
        .map(|(&eta, &y)| if y { eta - softplus(eta) } else { -softplus(eta) })
        .sum()
}

/// Score vector `Xᵀ(y − p)`.
pub fn log_likelihood_gradient(design: &Matrix, labels: &[bool], beta: &[f64]) -> Vec<f64> {
    let resid: Vec<f64> = design
        .mul_vec(beta)
        .iter()
        .zip(labels)
        .map(|(&eta, &y)| if y { 1.0 } else { 0.0 } - logistic(eta))
        .collect();
    design.transpose_mul_vec(&resid)
}

/// `√w ⊙ X` in column-major order plus the scaled working response.
fn weighted_system(design: &Matrix, labels: &[bool], beta: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let (n, p) = (design.rows(), design.cols());
    let mut a = vec![0.0; n * p];
    let mut z = vec![0.0; n];
    for i in 0..n {
        let row = design.row(i);
        let eta: f64 = row.iter().zip(beta).map(|(x, b)| x * b).sum();
        let mu = logistic(eta);
        let w = (mu * (1.0 - mu)).max(MIN_WEIGHT);
        let sw = libm::sqrt(w);
        let y = if labels[i] { 1.0 } else { 0.0 };
        z[i] = sw * (eta + (y - mu) / w);
        for (j, &x) in row.iter().enumerate() {
            a[j * n + i] = sw * x;
        }
    }
    (a, z)
}

fn factorize(design: &Matrix, labels: &[bool], beta: &[f64], names: &[String]) -> Result<(Qr, Vec<f64>), GlmError> {
    let (a, z) = weighted_system(design, labels, beta);
    let qr = Qr::from_column_major(design.rows(), design.cols(), a);
    if let Some(j) = qr.first_dependent_column(RANK_TOL) {
        return Err(GlmError::RankDeficient(names[j].clone()));
    }
    Ok((qr, z))
}

/// Maximum-likelihood logistic regression by iteratively reweighted least
/// squares.
///
/// Each step solves the weighted least-squares problem through a QR
/// factorisation of `√W X`; a step that lowers the likelihood is halved until
/// it does not. The covariance is `(XᵀWX)⁻¹` from the final factorisation.
pub fn fit_irls(
    design: &Matrix,
    names: &[String],
    labels: &[bool],
    options: FitOptions,
) -> Result<FittedModel, GlmError> {
    let (n, p) = (design.rows(), design.cols());
    if labels.len() != n {
        return Err(GlmError::LengthMismatch {
            rows: n,
            labels: labels.len(),
        });
    }
    if names.len() != p {
        return Err(GlmError::NameMismatch {
            names: names.len(),
            cols: p,
        });
    }
    let mut seen = BTreeSet::new();
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(GlmError::DuplicatePredictor(name.to_string()));
        }
    }
    if n <= p {
        return Err(GlmError::TooFewObservations { n, p });
    }

    let mut beta = vec![0.0; p];
    let mut ll = log_likelihood(design, labels, &beta);
    let mut converged = false;
    let mut iterations = 0;
    while iterations < options.max_iter {
        iterations += 1;
        let (qr, z) = factorize(design, labels, &beta, names)?;
        let mut candidate = qr.solve_least_squares(&z);
        let mut ll_new = log_likelihood(design, labels, &candidate);
        let mut halvings = 0;
        // round-off near the optimum must not trigger halving
        let slack = 1e-10 * (1.0 + ll.abs());
        while ll_new < ll - slack && halvings < MAX_HALVINGS {
            for (c, b) in candidate.iter_mut().zip(&beta) {
                *c = b + 0.5 * (*c - b);
            }
            ll_new = log_likelihood(design, labels, &candidate);
            halvings += 1;
        }
        let change = candidate
            .iter()
            .zip(&beta)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        beta = candidate;
        ll = ll_new;
        if change < options.tol {
            converged = true;
            break;
        }
    }

    let max_abs_eta = design
        .mul_vec(&beta)
        .iter()
        .fold(0.0f64, |m, e| m.max(e.abs()));
    if max_abs_eta > SEPARATION_ETA || !max_abs_eta.is_finite() {
        return Err(GlmError::Separation { max_abs_eta });
    }

    let (qr, _) = factorize(design, labels, &beta, names)?;
    Ok(FittedModel {
        predictor_names: names.to_vec(),
        coefficients: beta,
        covariance: qr.inverse_gram(),
        n_obs: n,
        log_likelihood: ll,
        converged,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn symmetric_data_has_no_signal() {
        let x = Matrix::from_rows(&[[1.0, 0.0], [1.0, 0.0], [1.0, 1.0], [1.0, 1.0]]);
        let y = [false, true, true, false];
        let m = fit_irls(&x, &names(&["(Intercept)", "x"]), &y, FitOptions::default()).unwrap();
        assert!(m.converged);
        assert!(m.coefficients[0].abs() < 1e-12);
        assert!(m.coefficients[1].abs() < 1e-12);
    }

    #[test]
    fn intercept_only_is_logit_of_mean() {
        let rows: Vec<[f64; 1]> = (0..100).map(|_| [1.0]).collect();
        let x = Matrix::from_rows(&rows);
        let y: Vec<bool> = (0..100).map(|i| i < 30).collect();
        let m = fit_irls(&x, &names(&["(Intercept)"]), &y, FitOptions::default()).unwrap();
        let expect = libm::log(0.3 / 0.7);
        assert!((m.coefficients[0] - expect).abs() < 1e-10);
        assert!((m.coefficients[0] + 0.8473).abs() < 1e-4);
        // var = 1 / (n p (1-p))
        assert!((m.covariance[(0, 0)] - 1.0 / (100.0 * 0.21)).abs() < 1e-10);
    }

    #[test]
    fn rank_deficiency_names_column() {
        let x = Matrix::from_rows(&[
            [1.0, 1.0, 0.0],
            [1.0, 0.0, 1.0],
            [1.0, 1.0, 0.0],
            [1.0, 0.0, 1.0],
            [1.0, 1.0, 0.0],
        ]);
        let y = [true, false, false, true, false];
        let err = fit_irls(&x, &names(&["(Intercept)", "a", "b"]), &y, FitOptions::default())
            .unwrap_err();
        assert_eq!(err, GlmError::RankDeficient("b".to_string()));
    }

    #[test]
    fn separation_detected() {
        let x = Matrix::from_rows(&[[1.0, 0.0], [1.0, 1.0], [1.0, 2.0], [1.0, 3.0]]);
        let y = [false, false, true, true];
        assert!(matches!(
            fit_irls(&x, &names(&["(Intercept)", "x"]), &y, FitOptions::default()),
            Err(GlmError::Separation { .. })
        ));
    }

    #[test]
    fn duplicate_names_rejected() {
        let x = Matrix::from_rows(&[[1.0, 0.0], [1.0, 1.0], [1.0, 2.0]]);
        assert!(matches!(
            fit_irls(&x, &names(&["a", "a"]), &[true, false, true], FitOptions::default()),
            Err(GlmError::DuplicatePredictor(_))
        ));
    }

    #[test]
    fn logistic_is_stable() {
        assert_eq!(logistic(0.0), 0.5);
        assert!(logistic(-800.0) >= 0.0 && logistic(800.0) <= 1.0);
        assert!((logistic(-1.333) - 0.2086636).abs() < 1e-6);
    }
}
