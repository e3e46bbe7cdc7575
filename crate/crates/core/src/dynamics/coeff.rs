// SPDX-License-Identifier: Apache-2.0

//! Closed-form Tavis-Cummings evolution coefficients.
//!
//! For two resonant atoms in one cavity, `U(tau)|ik, m>` expands as
//! `sum_pq X_{ik,pq}(m, tau) |i^p, k^q> |m - (-1)^i p - (-1)^k q>`: flipping a
//! ground atom absorbs a photon, flipping an excited atom emits one. The
//! amplitudes are interaction-picture amplitudes with `g = 1`.

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use super::{check_bit, check_tau};
use crate::error::Result;

/// Arguments of one evolution coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XCoefficientKey {
    pub i: u8,
    pub k: u8,
    pub p: u8,
    pub q: u8,
    pub m: u32,
    pub tau: f64,
}

impl XCoefficientKey {
    pub fn new(i: u8, k: u8, p: u8, q: u8, m: u32, tau: f64) -> Result<Self> {
        let key = XCoefficientKey { i, k, p, q, m, tau };
        key.validate()?;
        Ok(key)
    }

    pub fn validate(&self) -> Result<()> {
        check_bit("i", self.i)?;
        check_bit("k", self.k)?;
        check_bit("p", self.p)?;
        check_bit("q", self.q)?;
        check_tau(self.tau)
    }

    /// Photon number of the output term, or `None` when it would be negative
    /// (such terms never contribute).
    pub fn target_photons(&self) -> Option<u32> {
        let shift = super::photon_shift(self.i, self.k, self.p, self.q);
        let n = self.m as i64 - shift;
        (n >= 0).then_some(n as u32)
    }
}

/// Evolution coefficient `X_{ik,pq}(m, tau)`.
pub fn x_coeff(key: &XCoefficientKey) -> Result<Complex64> {
    key.validate()?;
    Ok(coeff_unchecked(key.i, key.k, key.p, key.q, key.m, key.tau))
}

#[inline]
fn minus_i(x: f64) -> Complex64 {
    Complex64::new(0.0, -x)
}

#[inline]
fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Same as [`x_coeff`] for arguments already known to be valid.
pub(crate) fn coeff_unchecked(i: u8, k: u8, p: u8, q: u8, m: u32, tau: f64) -> Complex64 {
    let m = m as f64;
    match (i, k) {
        (1, 1) => {
            let d = 2.0 * m + 3.0;
            let w = (2.0 * d).sqrt() * tau;
            match (p, q) {
                (0, 0) => real((m + 1.0) / d * (w.cos() - 1.0) + 1.0),
                (1, 1) => real(((m + 1.0) * (m + 2.0)).sqrt() / d * (w.cos() - 1.0)),
                _ => minus_i(((m + 1.0) / (2.0 * d)).sqrt() * w.sin()),
            }
        }
        (0, 0) => {
            // |00, 0> is dark; the general expression has 0/0 and sqrt(-2) here.
            if m == 0.0 {
                return if (p, q) == (0, 0) { real(1.0) } else { real(0.0) };
            }
            let d = 2.0 * m - 1.0;
            let w = (2.0 * d).sqrt() * tau;
            match (p, q) {
                (0, 0) => real(m / d * (w.cos() - 1.0) + 1.0),
                (1, 1) => real((m * (m - 1.0)).sqrt() / d * (w.cos() - 1.0)),
                _ => minus_i((m / (2.0 * d)).sqrt() * w.sin()),
            }
        }
        _ => {
            // One atom excited. `flip_ground` flips only the ground atom
            // (absorbs a photon), `flip_excited` only the excited one.
            let d = 2.0 * m + 1.0;
            let w = (2.0 * d).sqrt() * tau;
            let flip_ground = if i == 0 { (1, 0) } else { (0, 1) };
            match (p, q) {
                (0, 0) => real(0.5 * (w.cos() + 1.0)),
                (1, 1) => real(0.5 * (w.cos() - 1.0)),
                pq if pq == flip_ground => minus_i((m / (2.0 * d)).sqrt() * w.sin()),
                _ => minus_i(((m + 1.0) / (2.0 * d)).sqrt() * w.sin()),
            }
        }
    }
}
