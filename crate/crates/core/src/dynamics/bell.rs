// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use core::f64::consts::FRAC_PI_2;

#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use crate::error::{Error, Result};

/// Which Bell-like superposition an atom pair starts in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellType {
    /// `cos(alpha)|10> + sin(alpha)|01>`: exactly one excitation per pair.
    Psi,
    /// `cos(alpha)|11> + sin(alpha)|00>`: zero or two excitations per pair.
    Phi,
}

impl BellType {
    /// Bit of the second atom given the bit of the first one.
    #[inline]
    pub fn partner_bit(self, first: u8) -> u8 {
        match self {
            BellType::Psi => first ^ 1,
            BellType::Phi => first,
        }
    }
}

/// Amplitudes of a pair state indexed by the first atom's bit:
/// `ground` multiplies the term with the first atom in `|0>`, `excited` the one with `|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairAmplitudes {
    pub ground: f64,
    pub excited: f64,
}

impl PairAmplitudes {
    /// `(sin angle, cos angle)` for any real angle, without range checks.
    pub fn from_angle(angle: f64) -> Self {
        PairAmplitudes { ground: angle.sin(), excited: angle.cos() }
    }

    #[inline]
    pub fn get(&self, bit: u8) -> f64 {
        if bit == 0 {
            self.ground
        } else {
            self.excited
        }
    }
}

/// Initial state of one atom pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellPairSpec {
    bell_type: BellType,
    alpha: f64,
}

impl BellPairSpec {
    /// `alpha` must lie in `[0, pi/2]`.
    pub fn new(bell_type: BellType, alpha: f64) -> Result<Self> {
        // Allow a few ulps of slack so grids ending at pi/2 are accepted.
        if !alpha.is_finite() || alpha < 0.0 || alpha > FRAC_PI_2 + 1e-12 {
            return Err(Error::invalid("alpha", format!("must lie in [0, pi/2], got {alpha}")));
        }
        Ok(BellPairSpec { bell_type, alpha: alpha.min(FRAC_PI_2) })
    }

    pub fn bell_type(&self) -> BellType {
        self.bell_type
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn amplitudes(&self) -> PairAmplitudes {
        PairAmplitudes::from_angle(self.alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_alpha() {
        assert!(BellPairSpec::new(BellType::Psi, -0.1).is_err());
        assert!(BellPairSpec::new(BellType::Phi, 1.6).is_err());
        assert!(BellPairSpec::new(BellType::Phi, f64::NAN).is_err());
        assert!(BellPairSpec::new(BellType::Phi, FRAC_PI_2).is_ok());
    }

    #[test]
    fn amplitudes_are_normalized() {
        for k in 0..=20 {
            let a = BellPairSpec::new(BellType::Psi, FRAC_PI_2 * k as f64 / 20.0).unwrap().amplitudes();
            assert!((a.ground * a.ground + a.excited * a.excited - 1.0).abs() < 1e-15);
        }
    }
}
