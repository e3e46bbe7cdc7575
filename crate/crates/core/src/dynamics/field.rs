// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use crate::error::{Error, Result};

pub const DEFAULT_TAIL_MASS_EPSILON: f64 = 1e-10;

/// Initial preparation of one cavity field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    Vacuum,
    Fock(u32),
    /// Thermal field with mean photon number `nbar`. Photon numbers are kept
    /// up to the smallest `N` whose geometric tail mass `(nbar/(1+nbar))^(N+1)`
    /// is at most `tail_mass_epsilon`.
    Thermal { nbar: f64, tail_mass_epsilon: f64 },
}

impl FieldSpec {
    pub fn thermal(nbar: f64) -> Self {
        FieldSpec::Thermal { nbar, tail_mass_epsilon: DEFAULT_TAIL_MASS_EPSILON }
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(self, FieldSpec::Vacuum | FieldSpec::Fock(0))
    }

    /// Resolves the field into a finite list of photon-number weights.
    pub fn resolve(&self) -> Result<PhotonDistribution> {
        match *self {
            FieldSpec::Vacuum => Ok(PhotonDistribution { weights: vec![(0, 1.0)] }),
            FieldSpec::Fock(n) => Ok(PhotonDistribution { weights: vec![(n, 1.0)] }),
            FieldSpec::Thermal { nbar, tail_mass_epsilon } => {
                if !nbar.is_finite() || nbar <= 0.0 {
                    return Err(Error::Configuration(format!(
                        "thermal mean photon number must be positive and finite, got {nbar}"
                    )));
                }
                if !(tail_mass_epsilon > 0.0 && tail_mass_epsilon < 1.0) {
                    return Err(Error::Configuration(format!(
                        "thermal tail mass epsilon must lie in (0, 1), got {tail_mass_epsilon}"
                    )));
                }
                let cutoff = thermal_cutoff(nbar, tail_mass_epsilon);
                let weights = (0..=cutoff).map(|n| (n, thermal_weight(nbar, n))).collect();
                Ok(PhotonDistribution { weights })
            }
        }
    }
}

/// `P_n = nbar^n / (1 + nbar)^(n+1)`.
pub fn thermal_weight(nbar: f64, n: u32) -> f64 {
    let r = nbar / (1.0 + nbar);
    r.powi(n as i32) / (1.0 + nbar)
}

/// Smallest `N` with `(nbar/(1+nbar))^(N+1) <= epsilon`.
pub fn thermal_cutoff(nbar: f64, epsilon: f64) -> u32 {
    let r = nbar / (1.0 + nbar);
    let estimate = (epsilon.ln() / r.ln()).ceil() - 1.0;
    let mut n = if estimate.is_finite() && estimate > 0.0 { estimate as u32 } else { 0 };
    // The logarithm estimate can be off by one either way after rounding.
    while n > 0 && r.powi(n as i32) <= epsilon {
        n -= 1;
    }
    while r.powi(n as i32 + 1) > epsilon {
        n += 1;
    }
    n
}

/// Finite photon-number distribution of a resolved field. Weights of a
/// truncated thermal field are not renormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    weights: Vec<(u32, f64)>,
}

impl PhotonDistribution {
    pub fn weights(&self) -> &[(u32, f64)] {
        &self.weights
    }

    pub fn max_photons(&self) -> u32 {
        self.weights.iter().map(|&(n, _)| n).max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().map(|&(_, w)| w).sum()
    }
}
