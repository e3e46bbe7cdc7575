// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value is outside its admissible domain.
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    /// A field or scenario description cannot be resolved into something computable.
    #[error("configuration error: {0}")]
    Configuration(String),

    /// Qubit labels of an operand do not match what the operation expects.
    #[error("qubit label mismatch: {0}")]
    LabelMismatch(String),

    /// A numerical routine produced a result that signals an invalid input state.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// The oracle photon cutoff is too small for the evolved state.
    #[error("photon cutoff n_max = {n_max} too small: population {population:e} within one photon of the cutoff")]
    CutoffLeakage { n_max: usize, population: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument { name, reason: reason.into() }
    }
}
