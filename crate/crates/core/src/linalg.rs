//! Small dense square matrices. Every network in this crate has at most a
//! handful of modes, so nothing here tries to be clever about storage.

use std::ops::{Index, IndexMut, Mul};

use crate::scalar::Real;

/// Row-major `n x n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row-major data; panics if `data.len() != n * n`.
    pub fn from_row_major(n: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), n * n, "row-major data has wrong length");
        Self { n, data }
    }

    /// Standard symplectic form for `(X1, Y1, X2, Y2, ...)` ordering.
    pub fn symplectic_form(n_modes: usize) -> Self {
        let mut m = Self::zeros(2 * n_modes);
        for k in 0..n_modes {
            m[(2 * k, 2 * k + 1)] = T::one();
            m[(2 * k + 1, 2 * k)] = -T::one();
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n);
        (0..self.n).map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    /// `v^T M v`.
    pub fn quadratic_form(&self, v: &[T]) -> T {
        assert_eq!(v.len(), self.n);
        let mut acc = T::zero();
        for i in 0..self.n {
            if v[i] == T::zero() {
                continue;
            }
            for j in 0..self.n {
                acc = acc + v[i] * self[(i, j)] * v[j];
            }
        }
        acc
    }

    /// `S M S^T`.
    pub fn congruence(&self, s: &Mat<T>) -> Self {
        &(s * self) * &s.transpose()
    }

    pub fn max_abs_diff(&self, other: &Mat<T>) -> T {
        assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| (*a - *b).abs()).fold(T::zero(), T::max)
    }

    pub fn asymmetry(&self) -> T {
        self.max_abs_diff(&self.transpose())
    }

    /// Lower-triangular Cholesky factor, or `None` if the matrix is not
    /// positive definite.
    pub fn cholesky(&self) -> Option<Mat<T>> {
        let n = self.n;
        let mut l = Mat::zeros(n);
        for j in 0..n {
            let mut d = self[(j, j)];
            for k in 0..j {
                d = d - l[(j, k)] * l[(j, k)];
            }
            if !(d > T::zero()) {
                return None;
            }
            let djj = d.sqrt();
            l[(j, j)] = djj;
            for i in (j + 1)..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s = s - l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / djj;
            }
        }
        Some(l)
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotation, ascending.
    pub fn symmetric_eigenvalues(&self) -> Vec<T> {
        let n = self.n;
        let mut a = self.clone();
        let scale = a.data.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        let tol = T::epsilon() * T::epsilon() * scale * scale;
        for _sweep in 0..100 {
            let mut off = T::zero();
            for i in 0..n {
                for j in (i + 1)..n {
                    off = off + a[(i, j)] * a[(i, j)];
                }
            }
            if off <= tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    if apq == T::zero() {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (T::lit(2.0) * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    let c = T::one() / (t * t + T::one()).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut ev: Vec<T> = (0..n).map(|i| a[(i, i)]).collect();
        ev.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
        ev
    }

    pub fn cast<U: Real>(&self) -> Mat<U> {
        Mat { n: self.n, data: self.data.iter().map(|x| U::lit(x.to_f64_lossy())).collect() }
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Real> Mul for &Mat<T> {
    type Output = Mat<T>;

    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}
