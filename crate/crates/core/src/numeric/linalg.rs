//! Small dense matrices: products, LU with partial pivoting, solves and the
//! matrix exponential.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Largest pivot ratio tolerated by [`Lu::new`].
pub const CONDITION_LIMIT: f64 = 1e10;

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Row-major data.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Length { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows<const C: usize>(rows: &[[f64; C]]) -> Self {
        Matrix { rows: rows.len(), cols: C, data: rows.iter().flatten().copied().collect() }
    }

    pub fn column(values: &[f64]) -> Self {
        Matrix { rows: values.len(), cols: 1, data: values.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn scale(&self, s: f64) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, s: f64, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + s * b).collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x * x).sum())
    }

    pub fn norm_one(&self) -> f64 {
        (0..self.cols).map(|c| (0..self.rows).map(|r| libm::fabs(self[(r, c)])).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn determinant(&self) -> f64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut a = self.clone();
        let n = self.rows;
        let mut det = 1.0;
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| libm::fabs(a[(i, k)]).total_cmp(&libm::fabs(a[(j, k)]))).unwrap_or(k);
            if a[(p, k)] == 0.0 {
                return 0.0;
            }
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            det *= a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / a[(k, k)];
                for j in k..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `self⁻¹·rhs` without forming the inverse.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        Lu::new(self)?.solve(rhs)
    }

    /// `self·other⁻¹`, through the transposed system.
    pub fn right_solve(&self, other: &Matrix) -> Result<Matrix> {
        Ok(other.transpose().solve(&self.transpose())?.transpose())
    }

    /// Scaling and squaring with a truncated Taylor series.
    pub fn expm(&self) -> Matrix {
        assert!(self.is_square(), "exponential of a non-square matrix");
        let norm = self.norm_one();
        let mut squarings = 0;
        let mut s = 1.0;
        while norm * s > 0.5 {
            s *= 0.5;
            squarings += 1;
        }
        let a = self.scale(s);
        let mut term = Matrix::identity(self.rows);
        let mut sum = term.clone();
        for k in 1..=20 {
            term = (&term * &a).scale(1.0 / k as f64);
            sum = &sum + &term;
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }

    /// Rank by Gaussian elimination, counting pivots above `tol` relative to
    /// the largest entry.
    pub fn rank(&self, tol: f64) -> usize {
        let mut a = self.clone();
        let scale = self.data.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)));
        if scale == 0.0 {
            return 0;
        }
        let mut rank = 0;
        for c in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let p = (rank..a.rows).max_by(|&i, &j| libm::fabs(a[(i, c)]).total_cmp(&libm::fabs(a[(j, c)]))).unwrap();
            if libm::fabs(a[(p, c)]) <= tol * scale {
                continue;
            }
            a.swap_rows(p, rank);
            for i in rank + 1..a.rows {
                let f = a[(i, c)] / a[(rank, c)];
                for j in c..a.cols {
                    let v = a[(rank, j)];
                    a[(i, j)] -= f * v;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.add_scaled(-1.0, rhs)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                for c in 0..rhs.cols {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

/// `PA = LU` with unit lower `L` stored below the diagonal.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    condition: f64,
}

impl Lu {
    /// Factorizes, refusing matrices whose pivot ratio (a cheap lower bound
    /// on the condition number) exceeds [`CONDITION_LIMIT`].
    pub fn new(a: &Matrix) -> Result<Self> {
        assert!(a.is_square(), "LU of a non-square matrix");
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| libm::fabs(lu[(i, k)]).total_cmp(&libm::fabs(lu[(j, k)]))).unwrap();
            if lu[(p, k)] == 0.0 || !lu[(p, k)].is_finite() {
                return Err(Error::Singular { condition: f64::INFINITY });
            }
            if p != k {
                lu.swap_rows(p, k);
                perm.swap(p, k);
            }
            for i in k + 1..n {
                let f = lu[(i, k)] / lu[(k, k)];
                lu[(i, k)] = f;
                for j in k + 1..n {
                    let v = lu[(k, j)];
                    lu[(i, j)] -= f * v;
                }
            }
        }
        let pivots = (0..n).map(|i| libm::fabs(lu[(i, i)]));
        let (lo, hi) = pivots.fold((f64::INFINITY, 0.0f64), |(lo, hi), p| (lo.min(p), hi.max(p)));
        let condition = if n == 0 { 1.0 } else { hi / lo };
        if condition > CONDITION_LIMIT {
            return Err(Error::Singular { condition });
        }
        Ok(Lu { lu, perm, condition })
    }

    pub fn condition_estimate(&self) -> f64 {
        self.condition
    }

    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        let n = self.lu.rows;
        if rhs.rows != n {
            return Err(Error::Length { expected: n, found: rhs.rows });
        }
        let mut x = Matrix::zeros(n, rhs.cols);
        for c in 0..rhs.cols {
            for i in 0..n {
                let mut v = rhs[(self.perm[i], c)];
                for j in 0..i {
                    v -= self.lu[(i, j)] * x[(j, c)];
                }
                x[(i, c)] = v;
            }
            for i in (0..n).rev() {
                let mut v = x[(i, c)];
                for j in i + 1..n {
                    v -= self.lu[(i, j)] * x[(j, c)];
                }
                x[(i, c)] = v / self.lu[(i, i)];
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_matches_product() {
        let a = Matrix::from_rows(&[[0.0, 2.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 1.0]]);
        let b = Matrix::from_rows(&[[1.0, 0.0], [2.0, 1.0], [0.0, 4.0]]);
        let x = a.solve(&b).unwrap();
        assert!((&(&a * &x) - &b).frobenius() < 1e-14);
        let y = b.transpose().right_solve(&a).unwrap();
        assert!((&(&y * &a) - &b.transpose()).frobenius() < 1e-14);
        assert!((a.determinant() - (-5.0)).abs() < 1e-14);
    }

    #[test]
    fn identity_solve_is_exact() {
        let v = Matrix::from_rows(&[[0.1, -0.3], [1e-17, 7.0]]);
        assert_eq!(Matrix::identity(2).solve(&v).unwrap(), v);
    }

    #[test]
    fn singular_matrices_are_refused() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]);
        assert!(matches!(a.solve(&Matrix::identity(2)), Err(Error::Singular { .. })));
        let b = Matrix::from_rows(&[[1.0, 0.0], [0.0, 1e-12]]);
        assert!(matches!(Lu::new(&b), Err(Error::Singular { .. })));
    }

    #[test]
    fn exponential_of_rotation_generator() {
        let t = 2.5;
        let a = Matrix::from_rows(&[[0.0, -t], [t, 0.0]]);
        let r = a.expm();
        let expected = Matrix::from_rows(&[[libm::cos(t), -libm::sin(t)], [libm::sin(t), libm::cos(t)]]);
        assert!((&r - &expected).frobenius() < 1e-14);
    }

    #[test]
    fn rank_counts_independent_rows() {
        let a = Matrix::from_rows(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 1.0]]);
        assert_eq!(a.rank(1e-12), 2);
        assert_eq!(Matrix::zeros(2, 2).rank(1e-12), 0);
    }
}
