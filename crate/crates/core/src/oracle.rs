// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference dynamics.
//!
//! Builds the truncated interaction Hamiltonian `sum_j (a s_j^+ + a^+ s_j^-)`
//! of one cavity (with `g = 1`), exponentiates it through its
//! eigendecomposition and traces the fields out numerically. Nothing here
//! uses the closed-form coefficients, so it serves as an independent check.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use crate::analysis::{pair_concurrence, Pair, Scenario};
use crate::dynamics::{thermal_weight, BellType, FieldSpec, Model, PairAmplitudes};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, kron, CMatrix, HermitianEigen};
use crate::state::{partial_trace, permute_qubits, Atom, DensityMatrix, QubitPermutation};

/// Population allowed in the top photon level `n = n_max`.
pub const LEAKAGE_TOL: f64 = 1e-8;

/// Interaction Hamiltonian of `n_atoms` atoms in one cavity, photon numbers
/// `0..=n_max`. Basis index is `atoms * (n_max + 1) + n`, with the first
/// atom as the most significant bit of `atoms`.
#[derive(Debug, Clone)]
pub struct TruncatedHamiltonian {
    n_max: usize,
    n_atoms: usize,
    matrix: CMatrix,
}

impl TruncatedHamiltonian {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn index(&self, atoms: usize, photons: usize) -> usize {
        atoms * (self.n_max + 1) + photons
    }

    /// `(atoms, photons)` of a basis index.
    pub fn basis(&self, index: usize) -> (usize, usize) {
        (index / (self.n_max + 1), index % (self.n_max + 1))
    }

    /// Atomic excitations plus photons of a basis state.
    pub fn excitations(&self, index: usize) -> usize {
        let (atoms, n) = self.basis(index);
        atoms.count_ones() as usize + n
    }
}

pub fn build_tc_hamiltonian(n_max: usize, n_atoms: usize) -> Result<TruncatedHamiltonian> {
    if n_max < 1 {
        return Err(Error::invalid("n_max", "must be at least 1"));
    }
    if !(1..=2).contains(&n_atoms) {
        return Err(Error::invalid("n_atoms", format!("must be 1 or 2, got {n_atoms}")));
    }
    let levels = n_max + 1;
    let dim = (1 << n_atoms) * levels;
    let mut h = CMatrix::zeros(dim, dim);
    for atoms in 0..1usize << n_atoms {
        for j in 0..n_atoms {
            let bit = 1 << (n_atoms - 1 - j);
            if atoms & bit != 0 {
                continue;
            }
            // a s_j^+ : |atoms, n> -> sqrt(n) |atoms + bit, n - 1>
            for n in 1..levels {
                let from = atoms * levels + n;
                let to = (atoms | bit) * levels + n - 1;
                let g = Complex64::new((n as f64).sqrt(), 0.0);
                h[(to, from)] += g;
                h[(from, to)] += g;
            }
        }
    }
    Ok(TruncatedHamiltonian { n_max, n_atoms, matrix: h })
}

/// `exp(-i H tau)` for any `tau` from one eigendecomposition of `H`.
#[derive(Debug, Clone)]
pub struct Propagator {
    hamiltonian: TruncatedHamiltonian,
    eigen: HermitianEigen,
}

impl Propagator {
    pub fn new(hamiltonian: TruncatedHamiltonian) -> Self {
        let eigen = hermitian_eigen(hamiltonian.matrix());
        Propagator { hamiltonian, eigen }
    }

    pub fn hamiltonian(&self) -> &TruncatedHamiltonian {
        &self.hamiltonian
    }

    pub fn unitary(&self, tau: f64) -> CMatrix {
        self.eigen.apply(|e| Complex64::from_polar(1.0, -e * tau))
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if !tau.is_finite() || tau < 0.0 {
        return Err(Error::invalid("tau", format!("must be finite and nonnegative, got {tau}")));
    }
    Ok(())
}

fn leakage_of(h: &TruncatedHamiltonian, pops: impl Iterator<Item = (usize, f64)>) -> Result<()> {
    let population: f64 = pops.filter(|&(i, _)| h.basis(i).1 >= h.n_max).map(|(_, p)| p).sum();
    if population > LEAKAGE_TOL {
        return Err(Error::CutoffLeakage { n_max: h.n_max, population });
    }
    Ok(())
}

/// `U rho U^+` for a one-cavity state (`dim == H.dim()`) or a two-cavity state
/// over `cavity a ⊗ cavity b` (`dim == H.dim()^2`, both cavities alike).
pub fn oracle_evolve(initial: &CMatrix, h: &TruncatedHamiltonian, tau: f64) -> Result<CMatrix> {
    check_tau(tau)?;
    let d = h.dim();
    let u = Propagator::new(h.clone()).unitary(tau);
    let n = initial.rows();
    let out = if n == d {
        &(&u * initial) * &u.adjoint()
    } else if n == d * d {
        let uu = kron(&u, &u);
        &(&uu * initial) * &uu.adjoint()
    } else {
        return Err(Error::invalid(
            "initial",
            format!("dimension {n} matches neither {d} nor {}", d * d),
        ));
    };
    if n == d {
        leakage_of(h, (0..d).map(|i| (i, out[(i, i)].re)))?;
    } else {
        // marginal populations of each cavity
        let mut marg_a = vec![0.0; d];
        let mut marg_b = vec![0.0; d];
        for x in 0..d {
            for y in 0..d {
                let p = out[(x * d + y, x * d + y)].re;
                marg_a[x] += p;
                marg_b[y] += p;
            }
        }
        leakage_of(h, marg_a.into_iter().enumerate())?;
        leakage_of(h, marg_b.into_iter().enumerate())?;
    }
    Ok(out)
}

/// Photon-number weights the oracle uses for a field. Thermal fields keep
/// `n <= n_max - 3` so every retained state has room to absorb two photons.
fn oracle_weights(field: &FieldSpec, n_max: usize) -> Result<Vec<(usize, f64)>> {
    let room = n_max.checked_sub(3).ok_or_else(|| Error::invalid("n_max", "must be at least 3"))?;
    match *field {
        FieldSpec::Vacuum => Ok(vec![(0, 1.0)]),
        FieldSpec::Fock(n) if (n as usize) <= room => Ok(vec![(n as usize, 1.0)]),
        FieldSpec::Fock(n) => Err(Error::Configuration(format!(
            "n_max = {n_max} is too small for Fock({n}); need at least {}",
            n + 3
        ))),
        FieldSpec::Thermal { nbar, .. } => {
            if !nbar.is_finite() || nbar <= 0.0 {
                return Err(Error::Configuration(format!("thermal nbar must be positive, got {nbar}")));
            }
            Ok((0..=room).map(|n| (n, thermal_weight(nbar, n as u32))).collect())
        }
    }
}

/// Initial atomic amplitudes `psi[x][y]`, `x` the atoms of cavity `a`, `y` those of `b`.
fn atomic_amplitudes(model: Model, bell: BellType, amps: PairAmplitudes) -> CMatrix {
    let partner = |bit: usize| match bell {
        BellType::Psi => bit ^ 1,
        BellType::Phi => bit,
    };
    match model {
        Model::Djcm => {
            let mut psi = CMatrix::zeros(2, 2);
            for i in 0..2 {
                psi[(i, partner(i))] = Complex64::new(amps.get(i as u8), 0.0);
            }
            psi
        }
        Model::Dtcm => {
            // pair AB gives (A, B) = (i, i'), pair CD gives (C, D) = (k, k')
            let mut psi = CMatrix::zeros(4, 4);
            for i in 0..2 {
                for k in 0..2 {
                    let w = amps.get(i as u8) * amps.get(k as u8);
                    psi[(2 * i + k, 2 * partner(i) + partner(k))] = Complex64::new(w, 0.0);
                }
            }
            psi
        }
    }
}

fn natural_labels(model: Model) -> Vec<Atom> {
    match model {
        Model::Djcm => vec![Atom::A, Atom::B],
        Model::Dtcm => vec![Atom::A, Atom::C, Atom::B, Atom::D],
    }
}

fn to_canonical(model: Model, rho: CMatrix) -> Result<DensityMatrix> {
    let natural = DensityMatrix::new(rho, natural_labels(model))?;
    permute_qubits(&natural, &QubitPermutation::to_canonical(natural.labels())?)
}

/// Reference solver for one scenario at a fixed photon cutoff.
#[derive(Debug, Clone)]
pub struct Oracle {
    scenario: Scenario,
    propagator: Propagator,
    weights_a: Vec<(usize, f64)>,
    weights_b: Vec<(usize, f64)>,
}

impl Oracle {
    pub fn new(scenario: &Scenario, n_max: usize) -> Result<Self> {
        let weights_a = oracle_weights(&scenario.field_a, n_max)?;
        let weights_b = oracle_weights(&scenario.field_b, n_max)?;
        let h = build_tc_hamiltonian(n_max, scenario.model.atoms_per_cavity())?;
        Ok(Oracle { scenario: scenario.clone(), propagator: Propagator::new(h), weights_a, weights_b })
    }

    pub fn hamiltonian(&self) -> &TruncatedHamiltonian {
        self.propagator.hamiltonian()
    }

    pub fn unitary(&self, tau: f64) -> CMatrix {
        self.propagator.unitary(tau)
    }

    fn is_pure_field(&self) -> bool {
        self.weights_a.len() == 1 && self.weights_b.len() == 1
    }

    /// Reduced atomic state in canonical order. Fock and vacuum fields are
    /// evolved as one pure state of both cavities; mixed fields go through
    /// the numerically computed per-cavity channels.
    pub fn state(&self, amps: PairAmplitudes, tau: f64) -> Result<DensityMatrix> {
        check_tau(tau)?;
        let u = self.unitary(tau);
        if self.is_pure_field() {
            self.pure_state(&u, amps)
        } else {
            self.channel_state(&u, amps)
        }
    }

    fn pure_state(&self, u: &CMatrix, amps: PairAmplitudes) -> Result<DensityMatrix> {
        let h = self.hamiltonian();
        let psi = atomic_amplitudes(self.scenario.model, self.scenario.bell_type, amps);
        let na = psi.rows();
        let (ma, mb) = (self.weights_a[0].0, self.weights_b[0].0);
        let ua = CMatrix::from_fn(h.dim(), na, |r, x| u[(r, h.index(x, ma))]);
        let ub = CMatrix::from_fn(h.dim(), na, |r, y| u[(r, h.index(y, mb))]);
        // Psi'[(x, n_a), (y, n_b)]
        let full = &(&ua * &psi) * &ub.transpose();

        let mut pops_a = vec![0.0; h.dim()];
        let mut pops_b = vec![0.0; h.dim()];
        for r in 0..h.dim() {
            for c in 0..h.dim() {
                let p = full[(r, c)].norm_sqr();
                pops_a[r] += p;
                pops_b[c] += p;
            }
        }
        leakage_of(h, pops_a.into_iter().enumerate())?;
        leakage_of(h, pops_b.into_iter().enumerate())?;

        let levels = h.n_max + 1;
        let mut rho = CMatrix::zeros(na * na, na * na);
        for x in 0..na {
            for y in 0..na {
                for xp in 0..na {
                    for yp in 0..na {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for n_a in 0..levels {
                            for n_b in 0..levels {
                                acc += full[(h.index(x, n_a), h.index(y, n_b))]
                                    * full[(h.index(xp, n_a), h.index(yp, n_b))].conj();
                            }
                        }
                        rho[(x * na + y, xp * na + yp)] = acc;
                    }
                }
            }
        }
        to_canonical(self.scenario.model, rho)
    }

    /// `K(|x><x'|) = sum_m P_m Tr_field[U |x,m><x',m| U^+]` for all atomic `x, x'`.
    fn channel(&self, u: &CMatrix, weights: &[(usize, f64)]) -> Result<Vec<CMatrix>> {
        let h = self.hamiltonian();
        let na = 1 << h.n_atoms;
        let levels = h.n_max + 1;
        let mut pops = vec![0.0; h.dim()];
        let mut maps = vec![CMatrix::zeros(na, na); na * na];
        for &(m, p) in weights {
            for x in 0..na {
                let cx = h.index(x, m);
                for r in 0..h.dim() {
                    pops[r] += p * u[(r, cx)].norm_sqr() / na as f64;
                }
                for xp in 0..na {
                    let cxp = h.index(xp, m);
                    let out = &mut maps[x * na + xp];
                    for s in 0..na {
                        for t in 0..na {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for n in 0..levels {
                                acc += u[(h.index(s, n), cx)] * u[(h.index(t, n), cxp)].conj();
                            }
                            out[(s, t)] += acc * p;
                        }
                    }
                }
            }
        }
        leakage_of(h, pops.into_iter().enumerate())?;
        Ok(maps)
    }

    fn channel_state(&self, u: &CMatrix, amps: PairAmplitudes) -> Result<DensityMatrix> {
        let psi = atomic_amplitudes(self.scenario.model, self.scenario.bell_type, amps);
        let na = psi.rows();
        let ka = self.channel(u, &self.weights_a)?;
        let kb = self.channel(u, &self.weights_b)?;
        let mut rho = CMatrix::zeros(na * na, na * na);
        for x in 0..na {
            for y in 0..na {
                let w = psi[(x, y)];
                if w == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for xp in 0..na {
                    for yp in 0..na {
                        let wp = w * psi[(xp, yp)].conj();
                        if wp == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        rho.add_scaled(wp, &kron(&ka[x * na + xp], &kb[y * na + yp]));
                    }
                }
            }
        }
        to_canonical(self.scenario.model, rho)
    }
}

/// Full two-cavity initial density matrix over `(atoms_a, n_a) ⊗ (atoms_b, n_b)`
/// for Fock fields `m_a`, `m_b`.
pub fn full_initial_state(
    scenario: &Scenario,
    amps: PairAmplitudes,
    h: &TruncatedHamiltonian,
    m_a: usize,
    m_b: usize,
) -> Result<CMatrix> {
    if m_a > h.n_max || m_b > h.n_max {
        return Err(Error::invalid("m_a", "photon number exceeds n_max"));
    }
    let psi = atomic_amplitudes(scenario.model, scenario.bell_type, amps);
    let d = h.dim();
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    for x in 0..psi.rows() {
        for y in 0..psi.cols() {
            v[h.index(x, m_a) * d + h.index(y, m_b)] = psi[(x, y)];
        }
    }
    Ok(CMatrix::outer(&v, &v))
}

/// Traces both fields out of a two-cavity density matrix; canonical labels.
pub fn trace_fields(rho: &CMatrix, model: Model, h: &TruncatedHamiltonian) -> Result<DensityMatrix> {
    let d = h.dim();
    if rho.rows() != d * d {
        return Err(Error::invalid("rho", format!("expected dimension {}, got {}", d * d, rho.rows())));
    }
    let na = 1 << h.n_atoms;
    let levels = h.n_max + 1;
    let mut out = CMatrix::zeros(na * na, na * na);
    for x in 0..na {
        for y in 0..na {
            for xp in 0..na {
                for yp in 0..na {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for n_a in 0..levels {
                        for n_b in 0..levels {
                            acc += rho[(
                                h.index(x, n_a) * d + h.index(y, n_b),
                                h.index(xp, n_a) * d + h.index(yp, n_b),
                            )];
                        }
                    }
                    out[(x * na + y, xp * na + yp)] = acc;
                }
            }
        }
    }
    to_canonical(model, out)
}

/// Largest disagreements between the closed-form pipeline and the oracle.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PipelineDeviation {
    /// Max entrywise `|rho_analytic - rho_oracle|` over the atomic states.
    pub state: f64,
    /// Max `|C_analytic - C_oracle|` over every pair the model has.
    pub concurrence: f64,
    /// Number of `(alpha, tau)` points compared.
    pub points: usize,
}

/// Compares the assembled atomic state with the oracle at every `(alpha, tau)`.
pub fn compare_pipelines(
    scenario: &Scenario,
    alphas: &[f64],
    tau_grid: &[f64],
    n_max: usize,
) -> Result<PipelineDeviation> {
    let oracle = Oracle::new(scenario, n_max)?;
    let pairs: &[Pair] = match scenario.model {
        Model::Dtcm => &Pair::ALL,
        Model::Djcm => &[Pair::AB],
    };
    let mut dev = PipelineDeviation::default();
    for &tau in tau_grid {
        let (ch_a, ch_b) = scenario.channels(tau)?;
        for &alpha in alphas {
            let amps = PairAmplitudes::from_angle(alpha);
            let analytic = scenario.state_with(amps, &ch_a, &ch_b)?;
            let reference = oracle.state(amps, tau)?;
            dev.state = dev.state.max(analytic.matrix().max_abs_diff(reference.matrix()));
            for &p in pairs {
                let ca = pair_concurrence(&partial_trace(&analytic, &p.atoms())?)?;
                let co = pair_concurrence(&partial_trace(&reference, &p.atoms())?)?;
                dev.concurrence = dev.concurrence.max((ca - co).abs());
            }
            dev.points += 1;
        }
    }
    Ok(dev)
}
