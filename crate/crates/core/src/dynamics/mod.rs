// SPDX-License-Identifier: Apache-2.0

//! Analytic time evolution of the double Tavis-Cummings model.
//!
//! The path from closed-form evolution coefficients to the reduced atomic
//! state never builds a Hamiltonian and never materializes the cavity
//! fields: each cavity contributes a linear map on two-atom operators, and
//! the four-atom state is a weighted sum of tensor products of those maps.

mod assemble;
mod bell;
mod coeff;
mod field;
mod jc;
mod maps;

pub use assemble::{
    assemble_atomic_state, assemble_with_amplitudes, initial_atomic_state, CavityChannel, Model,
};
pub use bell::{BellPairSpec, BellType, PairAmplitudes};
pub use coeff::{x_coeff, XCoefficientKey};
pub use field::{thermal_cutoff, thermal_weight, FieldSpec, PhotonDistribution, DEFAULT_TAIL_MASS_EPSILON};
pub use jc::{jc_amplitudes, JcTerm};
pub use maps::{pair_map, pair_map_explicit, pair_map_with, photon_shift};


pub(crate) fn check_bit(name: &'static str, b: u8) -> crate::Result<()> {
    if b > 1 {
        Err(crate::Error::invalid(name, alloc::format!("bit must be 0 or 1, got {b}")))
    } else {
        Ok(())
    }
}

pub(crate) fn check_tau(tau: f64) -> crate::Result<()> {
    if !tau.is_finite() || tau < 0.0 {
        Err(crate::Error::invalid("tau", alloc::format!("must be finite and nonnegative, got {tau}")))
    } else {
        Ok(())
    }
}
