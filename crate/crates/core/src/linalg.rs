//! Small dense linear algebra: a row-major matrix, Householder QR for least
//! squares, and Cholesky for symmetric positive definite systems.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Row-major construction; panics if `data.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `selfᵀ v`.
    pub fn transpose_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi != 0.0 {
                for (o, &a) in out.iter_mut().zip(self.row(i)) {
                    *o += a * vi;
                }
            }
        }
        out
    }

    /// `vᵀ self v` for a square matrix.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        dot(v, &self.mul_vec(v))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol * (1.0 + self[(i, j)].abs()))
            })
    }

    pub(crate) fn column_major(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Householder QR of a tall `n × p` matrix (`n ≥ p`).
///
/// Reflectors are stored below the diagonal of a column-major buffer and
/// `R`'s diagonal is kept apart.
#[derive(Debug, Clone)]
pub struct Qr {
    n: usize,
    p: usize,
    packed: Vec<f64>,
    r_diag: Vec<f64>,
    v_norm2: Vec<f64>,
    col_norms: Vec<f64>,
}

impl Qr {
    /// Factorises a column-major `n × p` buffer.
    pub fn from_column_major(n: usize, p: usize, mut a: Vec<f64>) -> Self {
        assert_eq!(a.len(), n * p);
        assert!(n >= p, "QR needs at least as many rows as columns");
        let col_norms: Vec<f64> = (0..p)
            .map(|j| libm::sqrt(a[j * n..(j + 1) * n].iter().map(|x| x * x).sum()))
            .collect();
        let mut r_diag = vec![0.0; p];
        let mut v_norm2 = vec![0.0; p];
        for k in 0..p {
            let (head, tail) = a.split_at_mut((k + 1) * n);
            let v = &mut head[k * n + k..];
            let norm = libm::sqrt(v.iter().map(|x| x * x).sum());
            if norm == 0.0 {
                continue;
            }
            let alpha = if v[0] > 0.0 { -norm } else { norm };
            v[0] -= alpha;
            let vn2: f64 = v.iter().map(|x| x * x).sum();
            r_diag[k] = alpha;
            v_norm2[k] = vn2;
            for j in 0..(p - k - 1) {
                let col = &mut tail[j * n + k..j * n + n];
                let s = 2.0 * dot(v, col) / vn2;
                for (c, &vi) in col.iter_mut().zip(v.iter()) {
                    *c -= s * vi;
                }
            }
        }
        Self {
            n,
            p,
            packed: a,
            r_diag,
            v_norm2,
            col_norms,
        }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Self::from_column_major(m.rows(), m.cols(), m.column_major())
    }

    /// First column whose `|R_jj|` is negligible against its own norm, i.e.
    /// numerically a combination of the columns before it.
    pub fn first_dependent_column(&self, rel_tol: f64) -> Option<usize> {
        (0..self.p).find(|&j| {
            let scale = self.col_norms[j];
            scale == 0.0 || self.r_diag[j].abs() <= rel_tol * scale
        })
    }

    fn r(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.r_diag[i]
        } else {
            self.packed[j * self.n + i]
        }
    }

    /// `Qᵀ b`, in place.
    pub fn apply_qt(&self, b: &mut [f64]) {
        assert_eq!(b.len(), self.n);
        for k in 0..self.p {
            if self.v_norm2[k] == 0.0 {
                continue;
            }
            let v = &self.packed[k * self.n + k..(k + 1) * self.n];
            let s = 2.0 * dot(v, &b[k..]) / self.v_norm2[k];
            for (bi, &vi) in b[k..].iter_mut().zip(v) {
                *bi -= s * vi;
            }
        }
    }

    /// Least-squares solution of `A x ≈ b`.
    pub fn solve_least_squares(&self, b: &[f64]) -> Vec<f64> {
        let mut qtb = b.to_vec();
        self.apply_qt(&mut qtb);
        let mut x = qtb[..self.p].to_vec();
        for i in (0..self.p).rev() {
            let mut s = x[i];
            for j in i + 1..self.p {
                s -= self.r(i, j) * x[j];
            }
            x[i] = s / self.r_diag[i];
        }
        x
    }

    /// `(AᵀA)⁻¹ = R⁻¹ R⁻ᵀ`.
    pub fn inverse_gram(&self) -> Matrix {
        let p = self.p;
        // R⁻¹ is upper triangular; solve column by column.
        let mut rinv = Matrix::zeros(p, p);
        for c in 0..p {
            for i in (0..=c).rev() {
                let mut s = if i == c { 1.0 } else { 0.0 };
                for j in i + 1..=c {
                    s -= self.r(i, j) * rinv[(j, c)];
                }
                rinv[(i, c)] = s / self.r_diag[i];
            }
        }
        let mut out = Matrix::zeros(p, p);
        for i in 0..p {
            for j in 0..=i {
                let start = i.max(j);
                let s: f64 = (start..p).map(|k| rinv[(i, k)] * rinv[(j, k)]).sum();
                out[(i, j)] = s;
                out[(j, i)] = s;
            }
        }
        out
    }
}

/// Cholesky factor `L` of a symmetric positive definite matrix.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: Matrix,
}

impl Cholesky {
    /// Fails with the index of the first pivot that is not safely positive
    /// relative to the original diagonal entry.
    pub fn new(a: &Matrix, rel_tol: f64) -> Result<Self, usize> {
        let n = a.rows();
        assert_eq!(n, a.cols());
        let mut l = Matrix::zeros(n, n);
        for j in 0..n {
            let mut d = a[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if !(d > rel_tol * a[(j, j)].abs()) || d <= 0.0 {
                return Err(j);
            }
            let djj = libm::sqrt(d);
            l[(j, j)] = djj;
            for i in j + 1..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / djj;
            }
        }
        Ok(Self { l })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.l.rows();
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.l[(i, k)] * y[k];
            }
            y[i] = s / self.l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.l[(k, i)] * y[k];
            }
            y[i] = s / self.l[(i, i)];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qr_solves_exact_system() {
        let a = Matrix::from_rows(&[[2.0, 1.0], [1.0, 3.0], [0.0, 1.0]]);
        let x_true = [1.5, -2.0];
        let b = a.mul_vec(&x_true);
        let x = Qr::from_matrix(&a).solve_least_squares(&b);
        assert!((x[0] - 1.5).abs() < 1e-12 && (x[1] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn qr_least_squares_line() {
        // y = 1 + 2t fitted to points with symmetric noise
        let a = Matrix::from_rows(&[[1.0, 0.0], [1.0, 1.0], [1.0, 2.0], [1.0, 3.0]]);
        let b = [1.1, 2.9, 5.1, 6.9];
        let x = Qr::from_matrix(&a).solve_least_squares(&b);
        assert!((x[0] - 1.06).abs() < 1e-12, "{x:?}");
        assert!((x[1] - 1.96).abs() < 1e-12, "{x:?}");
    }

    #[test]
    fn inverse_gram_matches_2x2_formula() {
        let a = Matrix::from_rows(&[[1.0, 0.0], [1.0, 1.0], [1.0, 2.0]]);
        // AᵀA = [[3,3],[3,5]] -> inverse = 1/6 [[5,-3],[-3,3]]
        let g = Qr::from_matrix(&a).inverse_gram();
        let expect = [[5.0 / 6.0, -0.5], [-0.5, 0.5]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((g[(i, j)] - expect[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dependent_column_detected() {
        let a = Matrix::from_rows(&[[1.0, 1.0, 2.0], [1.0, 0.0, 1.0], [1.0, 1.0, 2.0], [1.0, 0.0, 1.0]]);
        assert_eq!(Qr::from_matrix(&a).first_dependent_column(1e-9), Some(2));
        let b = Matrix::from_rows(&[[1.0, 1.0], [1.0, 0.0], [1.0, 2.0]]);
        assert_eq!(Qr::from_matrix(&b).first_dependent_column(1e-9), None);
    }

    #[test]
    fn cholesky_roundtrip() {
        let a = Matrix::from_rows(&[[4.0, 2.0, 0.4], [2.0, 5.0, 1.0], [0.4, 1.0, 3.0]]);
        let b = [1.0, -2.0, 0.5];
        let x = Cholesky::new(&a, 1e-12).unwrap().solve(&b);
        let back = a.mul_vec(&x);
        for (u, v) in back.iter().zip(b) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn cholesky_rejects_singular() {
        let a = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]);
        assert_eq!(Cholesky::new(&a, 1e-12).unwrap_err(), 1);
    }
}
