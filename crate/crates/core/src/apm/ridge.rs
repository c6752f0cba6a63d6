use alloc::vec;
use alloc::vec::Vec;

use super::design::SparseDesign;
use super::ApmError;
use crate::linalg::{Cholesky, Matrix};

/// Relative pivot size below which the normal equations are singular.
const PIVOT_TOL: f64 = 1e-10;

/// `XᵀWX + λ·P` and `XᵀWy`, with `P` the diagonal penalty mask.
pub fn normal_equations(design: &SparseDesign, lambda: f64) -> (Matrix, Vec<f64>) {
    let p = design.n_cols();
    let mut gram = Matrix::zeros(p, p);
    let mut rhs = vec![0.0; p];
    for ((row, &y), &w) in design.rows.iter().zip(&design.response).zip(&design.weights) {
        for (k, &(a, va)) in row.iter().enumerate() {
            let wa = w * va;
            rhs[a] += wa * y;
            for &(b, vb) in &row[k..] {
                gram[(a, b)] += wa * vb;
            }
        }
    }
    for a in 0..p {
        for b in a + 1..p {
            gram[(b, a)] = gram[(a, b)];
        }
        if design.penalized[a] {
            gram[(a, a)] += lambda;
        }
    }
    (gram, rhs)
}

/// Minimises `Σ wᵢ(yᵢ − xᵢᵀβ)² + λ Σ_pen βⱼ²` through the normal equations.
pub fn ridge_fit(design: &SparseDesign, lambda: f64) -> Result<Vec<f64>, ApmError> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(ApmError::InvalidLambda(lambda));
    }
    if design.n_rows() == 0 {
        return Err(ApmError::EmptyDesign);
    }
    let (gram, rhs) = normal_equations(design, lambda);
    let chol = Cholesky::new(&gram, PIVOT_TOL)
        .map_err(|j| ApmError::RankDeficient(design.column_names[j].clone()))?;
    Ok(chol.solve(&rhs))
}

/// Weighted residual sum of squares of `beta` on the design.
pub fn weighted_sse(design: &SparseDesign, beta: &[f64]) -> f64 {
    design
        .rows
        .iter()
        .zip(&design.response)
        .zip(&design.weights)
        .map(|((row, &y), &w)| {
            let fit: f64 = row.iter().map(|&(j, v)| v * beta[j]).sum();
            w * (y - fit) * (y - fit)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_design_interpolates() {
        let rows = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let d = SparseDesign::from_dense(&rows, vec![3.0, -1.0, 0.5], vec![1.0; 3], vec![true; 3]);
        let b = ridge_fit(&d, 0.0).unwrap();
        for (x, y) in b.iter().zip([3.0, -1.0, 0.5]) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn shrinks_to_zero() {
        let rows = vec![vec![1.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]];
        let d = SparseDesign::from_dense(&rows, vec![2.0, 0.0, 3.0], vec![1.0; 3], vec![false, true]);
        let mut last = f64::INFINITY;
        for lambda in [0.0, 1.0, 10.0, 1e3, 1e6, 1e12] {
            let b = ridge_fit(&d, lambda).unwrap();
            assert!(b[1].abs() <= last);
            last = b[1].abs();
        }
        assert!(last < 1e-9);
    }

    #[test]
    fn rank_deficient_without_penalty() {
        let rows = vec![vec![1.0, 1.0], vec![1.0, 1.0], vec![1.0, 1.0]];
        let d = SparseDesign::from_dense(&rows, vec![1.0, 2.0, 3.0], vec![1.0; 3], vec![false, true]);
        assert!(matches!(ridge_fit(&d, 0.0), Err(ApmError::RankDeficient(c)) if c == "x1"));
        assert!(ridge_fit(&d, 1.0).is_ok());
    }
}
