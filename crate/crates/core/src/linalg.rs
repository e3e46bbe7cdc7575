// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrices and a Jacobi eigensolver.
//!
//! Everything here is small: atomic states are at most 16x16 and the oracle
//! Hamiltonians are a few hundred states wide. A row-major `Vec` and
//! cache-friendly loop orders are all the machinery needed.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;
use num_traits::Zero;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from row-major data.
    ///
    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "CMatrix::from_vec: shape/data length mismatch");
        CMatrix { rows, cols, data }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Outer product `|ket><bra|`.
    pub fn outer(ket: &[Complex64], bra: &[Complex64]) -> Self {
        Self::from_fn(ket.len(), bra.len(), |r, c| ket[r] * bra[c].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: Complex64, other: &CMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul: inner dimensions differ");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matvec: dimension mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - self^dagger`.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut worst = 0.0_f64;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// `(self + self^dagger) / 2`.
    pub fn hermitian_part(&self) -> CMatrix {
        Self::from_fn(self.rows, self.cols, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        let mut out = self.clone();
        out.add_scaled(ONE, rhs);
        out
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        let mut out = self.clone();
        out.add_scaled(-ONE, rhs);
        out
    }
}

/// Kronecker product `a ⊗ b`; the row index of `a` is the most significant.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (br, bc) = (b.rows, b.cols);
    let mut out = CMatrix::zeros(a.rows * br, a.cols * bc);
    let out_cols = out.cols;
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let s = a[(ar, ac)];
            if s.is_zero() {
                continue;
            }
            for r in 0..br {
                let base = (ar * br + r) * out_cols + ac * bc;
                for (o, z) in out.data[base..base + bc].iter_mut().zip(b.row(r)) {
                    *o = s * z;
                }
            }
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Column `j` is the unit eigenvector of `values[j]`.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// `V f(Λ) V†`.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let n = self.values.len();
        let fv: Vec<Complex64> = self.values.iter().map(|&x| f(x)).collect();
        let v = &self.vectors;
        CMatrix::from_fn(n, n, |r, c| (0..n).map(|k| v[(r, k)] * fv[k] * v[(c, k)].conj()).sum())
    }
}

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// The input is Hermitized first, so small anti-Hermitian roundoff is ignored.
/// Each rotation first removes the phase of the pivot and then applies the
/// real symmetric Jacobi rotation, so real symmetric input stays real.
pub fn hermitian_eigen(h: &CMatrix) -> HermitianEigen {
    assert!(h.is_square(), "hermitian_eigen: matrix is not square");
    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = CMatrix::identity(n);

    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm();
            }
        }
        if off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.is_zero() {
                    continue;
                }
                let mag = apq.norm();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let g = 100.0 * mag;
                // Negligible relative to both diagonal entries: drop it.
                if app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * mag);
                let mut t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
                if theta < 0.0 {
                    t = -t;
                }
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // e^{-i phi} with apq = |apq| e^{i phi}.
                let phase = apq.conj() / mag;

                for r in 0..n {
                    let x = a[(r, p)];
                    let y = a[(r, q)];
                    a[(r, p)] = x * c - y * phase * s;
                    a[(r, q)] = x * s + y * phase * c;
                }
                for col in 0..n {
                    let x = a[(p, col)];
                    let y = a[(q, col)];
                    a[(p, col)] = x * c - y * phase.conj() * s;
                    a[(q, col)] = x * s + y * phase.conj() * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(app - t * mag, 0.0);
                a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
                for r in 0..n {
                    let x = v[(r, p)];
                    let y = v[(r, q)];
                    v[(r, p)] = x * c - y * phase * s;
                    v[(r, q)] = x * s + y * phase * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&j| a[(j, j)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    hermitian_eigen(h).values
}

/// Applies a real function to a Hermitian matrix through its spectral decomposition.
pub fn hermitian_function(h: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    hermitian_eigen(h).apply(|x| Complex64::new(f(x), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = CMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), CMatrix::identity(4));
    }

    #[test]
    fn kron_places_basis_projector() {
        let p1 = CMatrix::from_real_diagonal(&[0.0, 1.0]);
        let p0 = CMatrix::from_real_diagonal(&[1.0, 0.0]);
        let k = kron(&p1, &p0);
        // |10> is basis index 2.
        assert_eq!(k, CMatrix::from_real_diagonal(&[0.0, 0.0, 1.0, 0.0]));
    }

    #[test]
    fn kron_trace_is_multiplicative() {
        let a = CMatrix::from_fn(2, 2, |r, col| c((r + 2 * col) as f64, r as f64 - 0.5));
        let b = CMatrix::from_fn(3, 3, |r, col| c(1.0 + (r * col) as f64, 0.25));
        let lhs = kron(&a, &b).trace();
        let rhs = a.trace() * b.trace();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn jacobi_two_by_two() {
        let m = CMatrix::from_vec(2, 2, vec![c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let eig = hermitian_eigen(&m);
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
        let s = core::f64::consts::FRAC_1_SQRT_2;
        assert!((eig.vectors[(0, 0)].norm() - s).abs() < 1e-14);
    }

    #[test]
    fn jacobi_reconstructs_complex_matrix() {
        let n = 6;
        let m = CMatrix::from_fn(n, n, |r, col| {
            let x = ((r * 7 + col * 3) % 11) as f64 - 5.0;
            let y = if r == col { 0.0 } else { ((r * col + 1) % 5) as f64 - 2.0 };
            if r <= col { c(x, y) } else { c(((col * 7 + r * 3) % 11) as f64 - 5.0, -(((r * col + 1) % 5) as f64 - 2.0)) }
        });
        let eig = hermitian_eigen(&m);
        assert!(eig.apply(|x| c(x, 0.0)).max_abs_diff(&m) < 1e-12);
        let vv = &eig.vectors.adjoint() * &eig.vectors;
        assert!(vv.max_abs_diff(&CMatrix::identity(n)) < 1e-13);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn hermitian_eigenvalues_of_pauli_y() {
        let sy = CMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let ev = hermitian_eigenvalues(&sy);
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_square_root_squares_back() {
        let h = CMatrix::from_vec(
            2,
            2,
            vec![c(0.7, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(0.3, 0.0)],
        );
        let s = hermitian_function(&h, |x| x.max(0.0).sqrt());
        assert!((&s * &s).max_abs_diff(&h) < 1e-13);
    }
}
