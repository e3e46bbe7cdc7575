// SPDX-License-Identifier: Apache-2.0

//! Resonant single-atom Jaynes-Cummings ladder, the per-cavity model of the
//! double Jaynes-Cummings comparison.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use super::{check_bit, check_tau};
use crate::error::Result;

/// One output term `amplitude |atom, photons>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcTerm {
    pub atom: u8,
    pub photons: u32,
    pub amplitude: Complex64,
}

/// Expansion of `U(tau)|i, n>` for one atom in one cavity (interaction picture, `g = 1`).
pub fn jc_amplitudes(i: u8, n: u32, tau: f64) -> Result<Vec<JcTerm>> {
    check_bit("i", i)?;
    check_tau(tau)?;
    Ok(jc_terms(i, n, tau))
}

pub(crate) fn jc_terms(i: u8, n: u32, tau: f64) -> Vec<JcTerm> {
    if i == 1 {
        let w = ((n + 1) as f64).sqrt() * tau;
        vec![
            JcTerm { atom: 1, photons: n, amplitude: Complex64::new(w.cos(), 0.0) },
            JcTerm { atom: 0, photons: n + 1, amplitude: Complex64::new(0.0, -w.sin()) },
        ]
    } else if n == 0 {
        vec![JcTerm { atom: 0, photons: 0, amplitude: Complex64::new(1.0, 0.0) }]
    } else {
        let w = (n as f64).sqrt() * tau;
        vec![
            JcTerm { atom: 0, photons: n, amplitude: Complex64::new(w.cos(), 0.0) },
            JcTerm { atom: 1, photons: n - 1, amplitude: Complex64::new(0.0, -w.sin()) },
        ]
    }
}
