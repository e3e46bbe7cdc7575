// SPDX-License-Identifier: Apache-2.0

//! Assembly of the reduced atomic state from per-cavity maps.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::bell::{BellPairSpec, BellType, PairAmplitudes};
use super::field::{FieldSpec, PhotonDistribution};
use super::jc::jc_terms;
use super::maps::pair_map_with;
use super::check_tau;
use crate::error::{Error, Result};
use crate::linalg::{kron, CMatrix};
use crate::state::{permute_qubits, Atom, DensityMatrix, QubitPermutation};

/// Which cavity model the atoms evolve under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Two atoms per cavity (`A,C` in `a`; `B,D` in `b`), Tavis-Cummings coupling.
    Dtcm,
    /// One atom per cavity (`A` in `a`, `B` in `b`), Jaynes-Cummings coupling.
    Djcm,
}

impl Model {
    pub fn atoms_per_cavity(self) -> usize {
        match self {
            Model::Dtcm => 2,
            Model::Djcm => 1,
        }
    }
}

/// All maps `E(|ket><bra|)` of one cavity at one time.
///
/// The maps depend on the field and `tau` only, so a sweep over initial
/// angles can reuse one channel per cavity.
#[derive(Debug, Clone)]
pub struct CavityChannel {
    model: Model,
    dim: usize,
    maps: Vec<CMatrix>,
}

impl CavityChannel {
    pub fn new(model: Model, field: &FieldSpec, tau: f64) -> Result<Self> {
        check_tau(tau)?;
        Ok(Self::with_distribution(model, &field.resolve()?, tau))
    }

    pub fn with_distribution(model: Model, dist: &PhotonDistribution, tau: f64) -> Self {
        match model {
            Model::Dtcm => {
                let mut maps = Vec::with_capacity(16);
                for ket in 0..4u8 {
                    for bra in 0..4u8 {
                        maps.push(pair_map_with(ket >> 1, ket & 1, bra >> 1, bra & 1, dist, tau));
                    }
                }
                CavityChannel { model, dim: 4, maps }
            }
            Model::Djcm => {
                let mut maps = vec![CMatrix::zeros(2, 2); 4];
                for &(n, weight) in dist.weights() {
                    let terms = [jc_terms(0, n, tau), jc_terms(1, n, tau)];
                    for ket in 0..2 {
                        for bra in 0..2 {
                            let out = &mut maps[ket * 2 + bra];
                            for a in &terms[ket] {
                                for b in terms[bra].iter().filter(|b| b.photons == a.photons) {
                                    out[(a.atom as usize, b.atom as usize)] +=
                                        a.amplitude * b.amplitude.conj() * weight;
                                }
                            }
                        }
                    }
                }
                CavityChannel { model, dim: 2, maps }
            }
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Image of `|ket><bra|`, with the atoms' bits packed most-significant first.
    pub fn map(&self, ket: usize, bra: usize) -> &CMatrix {
        &self.maps[ket * self.dim + bra]
    }
}

fn amplitude_vector(amps: PairAmplitudes) -> [f64; 2] {
    [amps.get(0), amps.get(1)]
}

/// Reduced atomic state from explicit pair amplitudes and precomputed channels.
///
/// `amps_cd` is ignored for the one-atom-per-cavity model. Amplitudes are
/// used as given, so angles outside `[0, pi/2]` can be represented.
pub fn assemble_with_amplitudes(
    bell: BellType,
    amps_ab: PairAmplitudes,
    amps_cd: PairAmplitudes,
    channel_a: &CavityChannel,
    channel_b: &CavityChannel,
) -> Result<DensityMatrix> {
    if channel_a.model != channel_b.model {
        return Err(Error::invalid("channel_b", "both cavities must use the same model"));
    }
    let ab = amplitude_vector(amps_ab);
    match channel_a.model {
        Model::Djcm => {
            let mut rho = CMatrix::zeros(4, 4);
            for i in 0..2u8 {
                for j in 0..2u8 {
                    let w = ab[i as usize] * ab[j as usize];
                    if w == 0.0 {
                        continue;
                    }
                    let (ip, jp) = (bell.partner_bit(i), bell.partner_bit(j));
                    let term = kron(
                        channel_a.map(i as usize, j as usize),
                        channel_b.map(ip as usize, jp as usize),
                    );
                    rho.add_scaled(Complex64::new(w, 0.0), &term);
                }
            }
            DensityMatrix::new(rho, vec![Atom::A, Atom::B])
        }
        Model::Dtcm => {
            let cd = amplitude_vector(amps_cd);
            let mut rho = CMatrix::zeros(16, 16);
            for i in 0..2u8 {
                for j in 0..2u8 {
                    for k in 0..2u8 {
                        for l in 0..2u8 {
                            let w = ab[i as usize] * ab[j as usize] * cd[k as usize] * cd[l as usize];
                            if w == 0.0 {
                                continue;
                            }
                            let ket_a = (2 * i + k) as usize;
                            let bra_a = (2 * j + l) as usize;
                            let ket_b = (2 * bell.partner_bit(i) + bell.partner_bit(k)) as usize;
                            let bra_b = (2 * bell.partner_bit(j) + bell.partner_bit(l)) as usize;
                            let term = kron(channel_a.map(ket_a, bra_a), channel_b.map(ket_b, bra_b));
                            rho.add_scaled(Complex64::new(w, 0.0), &term);
                        }
                    }
                }
            }
            let natural = DensityMatrix::new(rho, vec![Atom::A, Atom::C, Atom::B, Atom::D])?;
            permute_qubits(&natural, &QubitPermutation::to_canonical(natural.labels())?)
        }
    }
}

fn check_homogeneous(model: Model, pair_ab: &BellPairSpec, pair_cd: &BellPairSpec) -> Result<()> {
    if model == Model::Dtcm && pair_ab.bell_type() != pair_cd.bell_type() {
        return Err(Error::invalid(
            "pair_cd",
            "both atom pairs must share the same Bell type",
        ));
    }
    Ok(())
}

/// Reduced atomic state at time `tau`: 16x16 over `A,B,C,D` for [`Model::Dtcm`],
/// 4x4 over `A,B` for [`Model::Djcm`] (where `pair_cd` is ignored).
pub fn assemble_atomic_state(
    pair_ab: &BellPairSpec,
    pair_cd: &BellPairSpec,
    field_a: &FieldSpec,
    field_b: &FieldSpec,
    tau: f64,
    model: Model,
) -> Result<DensityMatrix> {
    check_homogeneous(model, pair_ab, pair_cd)?;
    let ch_a = CavityChannel::new(model, field_a, tau)?;
    let ch_b = CavityChannel::new(model, field_b, tau)?;
    assemble_with_amplitudes(pair_ab.bell_type(), pair_ab.amplitudes(), pair_cd.amplitudes(), &ch_a, &ch_b)
}

/// Exact initial atomic state, built directly from the pair state vectors.
pub fn initial_atomic_state(
    pair_ab: &BellPairSpec,
    pair_cd: &BellPairSpec,
    model: Model,
) -> Result<DensityMatrix> {
    check_homogeneous(model, pair_ab, pair_cd)?;
    let pair_vector = |spec: &BellPairSpec| -> Vec<Complex64> {
        let a = spec.amplitudes();
        let mut v = vec![Complex64::new(0.0, 0.0); 4];
        for bit in 0..2u8 {
            let idx = 2 * bit + spec.bell_type().partner_bit(bit);
            v[idx as usize] = Complex64::new(a.get(bit), 0.0);
        }
        v
    };
    let ab = pair_vector(pair_ab);
    match model {
        Model::Djcm => DensityMatrix::new(CMatrix::outer(&ab, &ab), vec![Atom::A, Atom::B]),
        Model::Dtcm => {
            let cd = pair_vector(pair_cd);
            let v: Vec<Complex64> = ab.iter().flat_map(|x| cd.iter().map(move |y| x * y)).collect();
            let natural = DensityMatrix::new(CMatrix::outer(&v, &v), vec![Atom::A, Atom::B, Atom::C, Atom::D])?;
            Ok(natural)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{partial_trace, validate_density};
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn psi(a: f64) -> BellPairSpec {
        BellPairSpec::new(BellType::Psi, a).unwrap()
    }

    fn phi(a: f64) -> BellPairSpec {
        BellPairSpec::new(BellType::Phi, a).unwrap()
    }

    #[test]
    fn zero_time_is_initial_state() {
        for model in [Model::Dtcm, Model::Djcm] {
            for field in [FieldSpec::Vacuum, FieldSpec::Fock(2), FieldSpec::thermal(1.0)] {
                for (ab, cd) in [(psi(FRAC_PI_4), psi(FRAC_PI_4)), (phi(0.3), phi(1.1))] {
                    let rho = assemble_atomic_state(&ab, &cd, &field, &field, 0.0, model).unwrap();
                    let init = initial_atomic_state(&ab, &cd, model).unwrap();
                    let total = field.resolve().unwrap().total_weight();
                    let expected = init.matrix().scale((total * total).into());
                    assert_eq!(rho.labels(), init.labels());
                    assert!(rho.matrix().max_abs_diff(&expected) < 1e-14);
                }
            }
        }
    }

    #[test]
    fn initial_psi_state_is_pure() {
        let rho = assemble_atomic_state(&psi(FRAC_PI_4), &psi(FRAC_PI_4), &FieldSpec::Vacuum, &FieldSpec::Vacuum, 0.0, Model::Dtcm)
            .unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-14);
        assert!((rho.purity() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn all_ground_vacuum_is_stationary() {
        for tau in [0.0, 0.8, 5.0, 17.0] {
            let rho = assemble_atomic_state(&phi(FRAC_PI_2), &phi(FRAC_PI_2), &FieldSpec::Vacuum, &FieldSpec::Vacuum, tau, Model::Dtcm)
                .unwrap();
            let mut expected = CMatrix::zeros(16, 16);
            expected[(0, 0)] = 1.0.into();
            assert!(rho.matrix().max_abs_diff(&expected) < 1e-14);
        }
    }

    #[test]
    fn mixed_bell_types_rejected() {
        let err = assemble_atomic_state(&psi(0.2), &phi(0.2), &FieldSpec::Vacuum, &FieldSpec::Vacuum, 1.0, Model::Dtcm);
        assert!(matches!(err, Err(Error::InvalidArgument { .. })));
    }

    #[test]
    fn unresolvable_field_is_configuration_error() {
        let bad = FieldSpec::Thermal { nbar: 1.0, tail_mass_epsilon: 2.0 };
        let err = assemble_atomic_state(&psi(0.2), &psi(0.2), &bad, &FieldSpec::Vacuum, 1.0, Model::Dtcm);
        assert!(matches!(err, Err(Error::Configuration(_))));
    }

    #[test]
    fn cross_pair_initial_state_is_diagonal_mixture() {
        let rho = assemble_atomic_state(&psi(FRAC_PI_4), &psi(FRAC_PI_4), &FieldSpec::Vacuum, &FieldSpec::Vacuum, 0.0, Model::Dtcm)
            .unwrap();
        let bd = partial_trace(&rho, &[Atom::B, Atom::D]).unwrap();
        let expected = CMatrix::from_real_diagonal(&[0.25; 4]);
        assert!(bd.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn evolved_states_are_valid() {
        for model in [Model::Dtcm, Model::Djcm] {
            for field in [FieldSpec::Vacuum, FieldSpec::Fock(1), FieldSpec::thermal(1.0)] {
                for tau in [0.3, 2.1, 9.7] {
                    let rho = assemble_atomic_state(&phi(0.4), &phi(0.4), &field, &field, tau, model).unwrap();
                    let r = validate_density(&rho, 1e-12, 1e-9, 1e-9);
                    assert!(r.hermitian_ok() && r.psd_ok(), "{r:?}");
                }
            }
        }
    }
}
