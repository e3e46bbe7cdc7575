// SPDX-License-Identifier: Apache-2.0

//! Wootters concurrence of two-qubit states.
//!
//! [`concurrence_x`] is the closed form for X-shaped density matrices (only
//! the diagonal and anti-diagonal populated), which every pair state of this
//! model keeps. [`concurrence_general`] works for any two-qubit state and is
//! the cross-check.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, CMatrix};
use crate::state::DensityMatrix;

/// Eigenvalues of `rho * rho_tilde` below this are treated as an invalid state.
pub const EIGENVALUE_FAILURE_THRESHOLD: f64 = -1e-8;

/// Nonzero entries of an X-shaped two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XFormMatrix {
    /// `rho_11 .. rho_44` in the basis `|00>, |01>, |10>, |11>`.
    pub diag: [f64; 4],
    /// `rho_14`, coherence between `|00>` and `|11>`.
    pub outer: Complex64,
    /// `rho_23`, coherence between `|01>` and `|10>`.
    pub inner: Complex64,
}

impl XFormMatrix {
    /// Checks nonnegativity, unit trace and positivity of the two 2x2 blocks.
    pub fn is_valid(&self, tol: f64) -> bool {
        let [d1, d2, d3, d4] = self.diag;
        self.diag.iter().all(|&d| d >= -tol)
            && (self.diag.iter().sum::<f64>() - 1.0).abs() <= tol
            && self.outer.norm_sqr() <= d1 * d4 + tol
            && self.inner.norm_sqr() <= d2 * d3 + tol
    }

    pub fn to_matrix(&self) -> CMatrix {
        let mut m = CMatrix::from_real_diagonal(&self.diag);
        m[(0, 3)] = self.outer;
        m[(3, 0)] = self.outer.conj();
        m[(1, 2)] = self.inner;
        m[(2, 1)] = self.inner.conj();
        m
    }
}

fn on_x_pattern(r: usize, c: usize) -> bool {
    r == c || r + c == 3
}

/// Returns the X-form entries when every off-pattern entry of the 4x4 state
/// is at most `tol` in modulus, `None` otherwise (including non-4x4 input).
pub fn is_x_form(rho: &DensityMatrix, tol: f64) -> Option<XFormMatrix> {
    let m = rho.matrix();
    if m.rows() != 4 {
        return None;
    }
    for r in 0..4 {
        for c in 0..4 {
            if !on_x_pattern(r, c) && m[(r, c)].norm() > tol {
                return None;
            }
        }
    }
    Some(XFormMatrix {
        diag: [m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re],
        outer: m[(0, 3)],
        inner: m[(1, 2)],
    })
}

/// `C = 2 max{0, |rho_23| - sqrt(rho_11 rho_44), |rho_14| - sqrt(rho_22 rho_33)}`.
pub fn concurrence_x(x: &XFormMatrix) -> f64 {
    let [d1, d2, d3, d4] = x.diag;
    let a = x.inner.norm() - (d1 * d4).max(0.0).sqrt();
    let b = x.outer.norm() - (d2 * d3).max(0.0).sqrt();
    (2.0 * a.max(b).max(0.0)).min(1.0)
}

/// `sigma_y ⊗ sigma_y` in the standard basis.
fn spin_flip() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 3)] = Complex64::new(-1.0, 0.0);
    m[(1, 2)] = Complex64::new(1.0, 0.0);
    m[(2, 1)] = Complex64::new(1.0, 0.0);
    m[(3, 0)] = Complex64::new(-1.0, 0.0);
    m
}

/// Eigenvalues of `rho` below this (relative to 1) are treated as exact zeros
/// when factoring `rho = B B†`.
const RANK_CUTOFF: f64 = 1e-14;

/// Concurrence from the spectrum of `zeta = rho (σy⊗σy) rho* (σy⊗σy)`.
///
/// With `rho = B B†` (columns of `B` are eigenvectors scaled by the square
/// roots of their eigenvalues), the square roots of the eigenvalues of `zeta`
/// are the singular values of `B† (σy⊗σy) B*`. They are read off the
/// Hermitian dilation `[[0, T], [T†, 0]]`, whose eigenvalues are `±` the
/// singular values, so vanishing values come out with absolute rather than
/// square-root accuracy.
pub fn concurrence_general(rho: &DensityMatrix) -> Result<f64> {
    let m = rho.matrix();
    if m.rows() != 4 {
        return Err(Error::invalid("rho", format!("expected a 4x4 state, got {}x{}", m.rows(), m.cols())));
    }
    let eig = hermitian_eigen(m);
    if eig.values[0] < EIGENVALUE_FAILURE_THRESHOLD {
        return Err(Error::NumericalFailure(format!(
            "state has eigenvalue {:e}; not a density matrix",
            eig.values[0]
        )));
    }
    let kept: Vec<usize> = (0..4).filter(|&k| eig.values[k] > RANK_CUTOFF).collect();
    let rank = kept.len();
    if rank == 0 {
        return Ok(0.0);
    }
    let b = CMatrix::from_fn(4, rank, |r, c| {
        let k = kept[c];
        eig.vectors[(r, k)] * eig.values[k].sqrt()
    });
    let t = &(&b.adjoint() * &spin_flip()) * &b.conj();
    let mut dilation = CMatrix::zeros(2 * rank, 2 * rank);
    for r in 0..rank {
        for c in 0..rank {
            dilation[(r, rank + c)] = t[(r, c)];
            dilation[(rank + c, r)] = t[(r, c)].conj();
        }
    }
    let spectrum = hermitian_eigenvalues(&dilation);
    let mut mu: Vec<f64> = spectrum[rank..].iter().map(|&x| x.max(0.0)).collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    mu.resize(4, 0.0);
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).clamp(0.0, 1.0))
}
