// SPDX-License-Identifier: Apache-2.0

//! Exact dynamics of the double Tavis-Cummings model.
//!
//! Two entangled atom pairs `AB` and `CD` are distributed over two lossless
//! single-mode cavities: atoms `A` and `C` sit in cavity `a`, atoms `B` and `D`
//! in cavity `b`. Each cavity evolves under the resonant Tavis-Cummings
//! interaction. The field degrees of freedom are traced out analytically, so
//! the reduced four-atom state at dimensionless time `tau = g t` is assembled
//! from closed-form evolution coefficients without building a Hamiltonian.
//!
//! The crate is `no_std` (it needs `alloc`) and is organized as:
//!
//! * [`linalg`]: a small dense complex matrix type and a Jacobi eigensolver.
//! * [`state`]: density matrices with qubit labels, permutations and partial traces.
//! * [`dynamics`]: evolution coefficients, decoherence maps and state assembly.
//! * [`entanglement`]: Wootters concurrence (X-form and general paths).
//! * [`analysis`]: interaction-regime classification, sweeps, sudden death/birth detection.
//! * [`oracle`]: brute-force truncated-Hamiltonian reference used for cross-checks.
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod state;

pub use analysis::{
    classify_regime, detect_esb, detect_esd, pair_concurrence, sweep_concurrence,
    ConcurrenceCurve, EsdEvents, Pair, RegimeReport, Scenario, Verdict,
};
pub use dynamics::{
    assemble_atomic_state, jc_amplitudes, pair_map, pair_map_explicit, x_coeff, BellPairSpec,
    BellType, FieldSpec, Model, XCoefficientKey,
};
pub use entanglement::{concurrence_general, concurrence_x, is_x_form, XFormMatrix};
pub use error::{Error, Result};
pub use linalg::{kron, CMatrix};
pub use state::{partial_trace, permute_qubits, validate_density, Atom, DensityMatrix, QubitPermutation};

pub use num_complex::Complex64;
